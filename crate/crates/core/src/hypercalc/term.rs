//! Ladder terms: words of generators applied to the formal variable `x`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use crate::ordinal::{self, Ordinal};
use crate::text::{format_rational, Cursor, ParseError, Rational};

use super::HypercalcError;

/// A single generator. `L` and `E` carry the exponent `μ` of their strength
/// `ω^μ`; `LGamma` carries an arbitrary strength that is not a power of `ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    L(Ordinal),
    E(Ordinal),
    LGamma(Ordinal),
    /// `T_c(u) = u + c`.
    Shift(Rational),
    /// `H_r(u) = r u`, `r > 0`.
    Scale(Rational),
    /// `P_r(u) = u^r`, `r > 0`.
    Power(Rational),
}

impl Gen {
    pub fn inverse(&self) -> Option<Gen> {
        Some(match self {
            Gen::L(m) => Gen::E(m.clone()),
            Gen::E(m) => Gen::L(m.clone()),
            Gen::LGamma(_) => return None,
            Gen::Shift(c) => Gen::Shift(-c),
            Gen::Scale(r) => Gen::Scale(r.recip()),
            Gen::Power(r) => Gen::Power(r.recip()),
        })
    }

    /// `g(u) > u` for every positive infinite `u`.
    pub fn is_expansive(&self) -> bool {
        let one = Rational::one();
        match self {
            Gen::E(_) => true,
            Gen::Shift(c) => c.is_positive(),
            Gen::Scale(r) | Gen::Power(r) => *r > one,
            Gen::L(_) | Gen::LGamma(_) => false,
        }
    }

    /// `g(u) < u` for every positive infinite `u`.
    pub fn is_contractive(&self) -> bool {
        let one = Rational::one();
        match self {
            Gen::L(_) => true,
            Gen::LGamma(g) => !g.is_zero(),
            Gen::Shift(c) => c.is_negative(),
            Gen::Scale(r) | Gen::Power(r) => *r < one,
            Gen::E(_) => false,
        }
    }

    /// Strength below `ω`: plain `log`, `exp` or a finite iterate of `log`.
    fn is_finite_level(&self) -> bool {
        match self {
            Gen::L(m) | Gen::E(m) => m.is_zero(),
            Gen::LGamma(g) => g.is_finite(),
            _ => true,
        }
    }
}

/// `word[0]` is the outermost generator; the empty word is `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Term {
    word: Vec<Gen>,
}

fn omega_exponent(beta: &Ordinal) -> Result<Ordinal, HypercalcError> {
    beta.omega_log()
        .cloned()
        .ok_or_else(|| HypercalcError::NotOmegaPower(beta.to_string()))
}

impl Term {
    pub fn x() -> Self {
        Term { word: Vec::new() }
    }

    /// Builds a term from a word, validating generator parameters.
    pub fn from_word(word: Vec<Gen>) -> Result<Self, HypercalcError> {
        for g in &word {
            match g {
                Gen::Scale(r) | Gen::Power(r) if !r.is_positive() => {
                    return Err(HypercalcError::NonPositiveParameter(format_rational(r)))
                }
                Gen::LGamma(g) if g.omega_log().is_some() || g.is_zero() => {
                    return Err(HypercalcError::NotOmegaPower(format!(
                        "LGamma({g}) must use L for powers of omega"
                    )))
                }
                _ => {}
            }
        }
        Ok(Term { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<Gen>) -> Self {
        Term { word }
    }

    pub fn word(&self) -> &[Gen] {
        &self.word
    }

    pub fn into_word(self) -> Vec<Gen> {
        self.word
    }

    pub fn is_x(&self) -> bool {
        self.word.is_empty()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    fn wrap(mut self, g: Gen) -> Self {
        self.word.insert(0, g);
        self
    }

    /// `L_β(self)` for `β = ω^μ`.
    pub fn apply_l(self, beta: &Ordinal) -> Result<Self, HypercalcError> {
        Ok(self.wrap(Gen::L(omega_exponent(beta)?)))
    }

    /// `E_β(self)` for `β = ω^μ`.
    pub fn apply_e(self, beta: &Ordinal) -> Result<Self, HypercalcError> {
        Ok(self.wrap(Gen::E(omega_exponent(beta)?)))
    }

    /// `L_γ(self)` for arbitrary `γ`.
    pub fn apply_l_gamma(self, gamma: &Ordinal) -> Self {
        if gamma.is_zero() {
            self
        } else if let Some(mu) = gamma.omega_log() {
            let mu = mu.clone();
            self.wrap(Gen::L(mu))
        } else {
            self.wrap(Gen::LGamma(gamma.clone()))
        }
    }

    pub fn add_const(self, c: Rational) -> Self {
        self.wrap(Gen::Shift(c))
    }

    pub fn scale(self, r: Rational) -> Result<Self, HypercalcError> {
        if !r.is_positive() {
            return Err(HypercalcError::NonPositiveParameter(format_rational(&r)));
        }
        Ok(self.wrap(Gen::Scale(r)))
    }

    pub fn power(self, r: Rational) -> Result<Self, HypercalcError> {
        if !r.is_positive() {
            return Err(HypercalcError::NonPositiveParameter(format_rational(&r)));
        }
        Ok(self.wrap(Gen::Power(r)))
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &Term, inner: &Term) -> Term {
        let mut word = outer.word.clone();
        word.extend(inner.word.iter().cloned());
        Term { word }
    }

    /// Compositional inverse; `None` if the word contains `LGamma`.
    pub fn inverse(&self) -> Option<Term> {
        let word = self
            .word
            .iter()
            .rev()
            .map(Gen::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(Term { word })
    }

    /// True when every hyperlogarithmic strength is finite.
    pub fn is_finite_level(&self) -> bool {
        self.word.iter().all(Gen::is_finite_level)
    }
}

fn strength(mu: &Ordinal) -> Ordinal {
    Ordinal::omega_power(mu.clone())
}

// Precedence of the rendered text: 0 sum, 1 product, 2 power, 3 atom.
fn render(word: &[Gen]) -> (String, u8) {
    let Some((g, inner)) = word.split_first() else {
        return ("x".into(), 3);
    };
    let (s, prec) = render(inner);
    let paren = |min: u8| if prec < min { format!("({s})") } else { s.clone() };
    match g {
        Gen::L(mu) => (format!("L[{}]({s})", strength(mu)), 3),
        Gen::E(mu) => (format!("E[{}]({s})", strength(mu)), 3),
        Gen::LGamma(gamma) => (format!("L[{gamma}]({s})"), 3),
        Gen::Shift(c) => {
            let op = if c.is_negative() { '-' } else { '+' };
            (format!("{s} {op} {}", format_rational(&c.abs())), 0)
        }
        Gen::Scale(r) => (format!("{}*{}", format_rational(r), paren(2)), 1),
        Gen::Power(r) => {
            let e = if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("({})", format_rational(r))
            };
            (format!("{}^{e}", paren(3)), 2)
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::L(mu) => write!(f, "L[{}]", strength(mu)),
            Gen::E(mu) => write!(f, "E[{}]", strength(mu)),
            Gen::LGamma(gamma) => write!(f, "L[{gamma}]"),
            Gen::Shift(c) => write!(f, "T[{}]", format_rational(c)),
            Gen::Scale(r) => write!(f, "H[{}]", format_rational(r)),
            Gen::Power(r) => write!(f, "P[{}]", format_rational(r)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.word).0)
    }
}

// sum    := prod (('+' | '-') rational)*
// prod   := rational '*' prod | power
// power  := atom ('^' exponent)?
// atom   := 'x' | ('L' | 'E') '[' ord ']' '(' sum ')' | '(' sum ')'

pub(crate) fn parse_term(cur: &mut Cursor) -> Result<Term, ParseError> {
    let mut t = parse_prod(cur)?;
    loop {
        let neg = match cur.peek() {
            Some('+') => false,
            Some('-') | Some('−') => true,
            _ => return Ok(t),
        };
        cur.bump();
        let c = cur.unsigned_rational()?;
        t = t.add_const(if neg { -c } else { c });
    }
}

fn parse_prod(cur: &mut Cursor) -> Result<Term, ParseError> {
    if cur.peek_digit() {
        let at = cur.pos();
        let r = cur.unsigned_rational()?;
        cur.expect('*')?;
        let inner = parse_prod(cur)?;
        return inner
            .scale(r)
            .map_err(|e| ParseError::new(at, e.to_string()));
    }
    parse_power(cur)
}

fn parse_power(cur: &mut Cursor) -> Result<Term, ParseError> {
    let base = parse_atom(cur)?;
    if !cur.eat('^') {
        return Ok(base);
    }
    let at = cur.pos();
    let r = if cur.eat('(') {
        let r = cur.signed_rational()?;
        cur.expect(')')?;
        r
    } else {
        cur.unsigned_rational()?
    };
    base.power(r).map_err(|e| ParseError::new(at, e.to_string()))
}

fn parse_atom(cur: &mut Cursor) -> Result<Term, ParseError> {
    match cur.peek() {
        Some('x') | Some('X') => {
            cur.bump();
            Ok(Term::x())
        }
        Some(c @ ('L' | 'E')) => {
            let at = cur.pos();
            cur.bump();
            cur.expect('[')?;
            let beta = ordinal::parse_sum(cur)?;
            cur.expect(']')?;
            cur.expect('(')?;
            let inner = parse_term(cur)?;
            cur.expect(')')?;
            if c == 'L' {
                Ok(inner.apply_l_gamma(&beta))
            } else {
                inner
                    .apply_e(&beta)
                    .map_err(|e| ParseError::new(at, e.to_string()))
            }
        }
        Some('(') => {
            cur.bump();
            let t = parse_term(cur)?;
            cur.expect(')')?;
            Ok(t)
        }
        _ => Err(cur.error("expected 'x', 'L[..](..)', 'E[..](..)' or '('")),
    }
}

impl FromStr for Term {
    type Err = ParseError;
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(text);
        let t = parse_term(&mut cur)?;
        cur.finish()?;
        Ok(t)
    }
}
