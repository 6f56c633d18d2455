//! Finite-support series over logarithmic hypermonomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::lhm::Monomial;
use crate::ordinal::{self, Ordinal};
use crate::text::{format_rational, Cursor, ParseError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("the zero series has no dominant monomial")]
    ZeroSeries,
}

/// Terms are keyed by monomial under the dominance order, so iteration in
/// reverse yields the dominant term first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Series {
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub large: Series,
    pub constant: Rational,
    pub small: Series,
}

impl Series {
    pub fn zero() -> Self {
        Series::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Series { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The single `(c, 𝔪)` if the series has exactly one term.
    pub fn as_term(&self) -> Option<(&Rational, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.as_term() {
            None if self.is_zero() => Some(Rational::zero()),
            Some((c, m)) if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Series {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Series {
        if q.is_zero() {
            return Series::zero();
        }
        Series {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * q))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let mut out = Series::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Series {
        Series {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.mul(m), c.clone()))
                .collect(),
        }
    }

    /// `f^n` for `n >= 0`, or for negative `n` when `f` is a single term.
    pub fn pow_int(&self, n: i64) -> Option<Series> {
        if n < 0 {
            let (c, m) = self.as_term()?;
            let k = BigInt::from(-n);
            let c = Rational::new(
                c.denom().pow(k.to_u32()?),
                c.numer().pow(k.to_u32()?),
            );
            return Some(Series::term(c, m.pow(&Rational::from_integer(BigInt::from(n)))));
        }
        let mut out = Series::constant(Rational::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        Some(out)
    }

    /// `𝔡_f`.
    pub fn dominant_monomial(&self) -> Result<&Monomial, SeriesError> {
        self.terms
            .keys()
            .next_back()
            .ok_or(SeriesError::ZeroSeries)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn sign(&self) -> Ordering {
        match self.leading_coefficient() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// Ordered-field comparison.
    pub fn cmp_order(&self, other: &Series) -> Ordering {
        self.sub(other).sign()
    }

    /// Dominance comparison of dominant monomials, with 0 below everything.
    fn cmp_dom(&self, other: &Series) -> Ordering {
        match (self.terms.keys().next_back(), other.terms.keys().next_back()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(b),
        }
    }

    /// `self ≺ other`.
    pub fn prec(&self, other: &Series) -> bool {
        !other.is_zero() && self.cmp_dom(other) == Ordering::Less
    }

    /// `self ≼ other`.
    pub fn preceq(&self, other: &Series) -> bool {
        self.cmp_dom(other) != Ordering::Greater
    }

    /// `self ≍ other`.
    pub fn asymp_eq(&self, other: &Series) -> bool {
        self.cmp_dom(other) == Ordering::Equal
    }

    /// `f_{≻𝔪}`.
    pub fn truncate_above(&self, m: &Monomial) -> Series {
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(n, _)| *n > m)
                .map(|(n, c)| (n.clone(), c.clone()))
                .collect(),
        }
    }

    /// `self ⊴ f`: `self` is an initial (dominant) segment of `f`.
    pub fn is_truncation_of(&self, f: &Series) -> bool {
        let rest = f.sub(self);
        match (self.terms.keys().next(), rest.terms.keys().next_back()) {
            (Some(least_kept), Some(greatest_rest)) => least_kept > greatest_rest,
            _ => true,
        }
    }

    pub fn decompose(&self) -> Decomposition {
        let one = Monomial::one();
        let mut large = Series::zero();
        let mut small = Series::zero();
        for (m, c) in &self.terms {
            match m.cmp(&one) {
                Ordering::Greater => large.add_term(m.clone(), c.clone()),
                Ordering::Less => small.add_term(m.clone(), c.clone()),
                Ordering::Equal => {}
            }
        }
        Decomposition {
            large,
            constant: self.coefficient(&one),
            small,
        }
    }

    pub fn is_purely_large(&self) -> bool {
        self.terms.keys().all(|m| m.cmp_one() == Ordering::Greater)
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.terms.keys().all(|m| m.cmp_one() == Ordering::Less)
    }

    /// `f > ℝ`.
    pub fn is_positive_infinite(&self) -> bool {
        self.sign() == Ordering::Greater
            && self.dominant_monomial().map_or(false, |m| m.cmp_one() == Ordering::Greater)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(m, c)| json!({ "coefficient": format_rational(c), "monomial": m.to_string() }))
                .collect(),
        )
    }
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

// expr   := ['-'] term (('+' | '-') term)*
// term   := factor (('*' factor) | ('/' factor))*
// factor := atom ('^' exp)?
// atom   := rational | 'x' | 'l[' ord ']' | 'L[' ord ',' ord ')' | '(' expr ')'
// exp    := ['-'] nat | '(' ['-'] rational ')'

pub(crate) fn parse_series(cur: &mut Cursor) -> Result<Series, ParseError> {
    let mut acc = if cur.eat_any(&['-', '−']).is_some() {
        parse_term(cur)?.neg()
    } else {
        parse_term(cur)?
    };
    loop {
        match cur.peek() {
            Some('+') => {
                cur.bump();
                acc = acc.add(&parse_term(cur)?);
            }
            Some('-') | Some('−') => {
                cur.bump();
                acc = acc.sub(&parse_term(cur)?);
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(cur: &mut Cursor) -> Result<Series, ParseError> {
    let mut acc = parse_factor(cur)?;
    loop {
        if cur.eat('*') {
            acc = acc.mul(&parse_factor(cur)?);
        } else if cur.peek() == Some('/') {
            let at = cur.pos();
            cur.bump();
            let d = parse_factor(cur)?;
            let inv = d
                .pow_int(-1)
                .ok_or_else(|| ParseError::new(at, "can only divide by a single nonzero term"))?;
            acc = acc.mul(&inv);
        } else {
            return Ok(acc);
        }
    }
}

fn parse_exponent(cur: &mut Cursor) -> Result<Rational, ParseError> {
    if cur.eat('(') {
        let q = cur.signed_rational()?;
        cur.expect(')')?;
        Ok(q)
    } else {
        let neg = cur.eat_any(&['-', '−']).is_some();
        let n = Rational::from_integer(BigInt::from(cur.natural()?));
        Ok(if neg { -n } else { n })
    }
}

fn parse_factor(cur: &mut Cursor) -> Result<Series, ParseError> {
    let base = parse_atom(cur)?;
    if !cur.eat('^') {
        return Ok(base);
    }
    let at = cur.pos();
    let q = parse_exponent(cur)?;
    if let Some((c, m)) = base.as_term() {
        if c.is_one() {
            return Ok(Series::monomial(m.pow(&q)));
        }
    }
    if !q.is_integer() {
        return Err(ParseError::new(
            at,
            "non-integer powers apply to monomials only",
        ));
    }
    let n = q
        .to_integer()
        .to_i64()
        .filter(|n| n.abs() <= 64)
        .ok_or_else(|| ParseError::new(at, "exponent too large"))?;
    base.pow_int(n)
        .ok_or_else(|| ParseError::new(at, "negative powers apply to single terms only"))
}

pub(crate) fn parse_monomial_atom(cur: &mut Cursor) -> Result<Option<Monomial>, ParseError> {
    match cur.peek() {
        Some('x') => {
            cur.bump();
            Ok(Some(Monomial::ell(&Ordinal::zero())))
        }
        Some('l') => {
            cur.bump();
            cur.expect('[')?;
            let g = ordinal::parse_sum(cur)?;
            cur.expect(']')?;
            Ok(Some(Monomial::ell(&g)))
        }
        Some('L') => {
            let save = cur.pos();
            cur.bump();
            if !cur.eat('[') {
                return Err(ParseError::new(save, "expected 'L[lo,hi)'"));
            }
            let lo = ordinal::parse_sum(cur)?;
            cur.expect(',')?;
            let hi = ordinal::parse_sum(cur)?;
            cur.expect(')')?;
            if lo >= hi {
                return Err(ParseError::new(save, "empty interval"));
            }
            Ok(Some(Monomial::interval(&lo, &hi, Rational::one())))
        }
        _ => Ok(None),
    }
}

fn parse_atom(cur: &mut Cursor) -> Result<Series, ParseError> {
    if let Some(m) = parse_monomial_atom(cur)? {
        return Ok(Series::monomial(m));
    }
    if cur.eat('(') {
        let s = parse_series(cur)?;
        cur.expect(')')?;
        return Ok(s);
    }
    if cur.peek_digit() {
        return Ok(Series::constant(cur.unsigned_rational()?));
    }
    Err(cur.error("expected a number, 'x', 'l[..]', 'L[..)' or '('"))
}

impl FromStr for Series {
    type Err = ParseError;
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(text);
        let s = parse_series(&mut cur)?;
        cur.finish()?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::rat;

    fn s(t: &str) -> Series {
        t.parse().unwrap()
    }

    fn m(t: &str) -> Monomial {
        s(t).dominant_monomial().unwrap().clone()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(s("(l[0] + 1)*(l[0] - 1)"), s("l[0]^2 - 1"));
        assert_eq!(s("l[3] + 0"), s("l[3]"));
        assert_eq!(s("(2*l[1])*(3*l[1]^-1)"), s("6"));
        assert_eq!(s("l[0]/2 + l[0]/2"), s("l[0]"));
    }

    #[test]
    fn dominant_monomials() {
        assert_eq!(m("3*l[0] - 5*l[1]"), m("l[0]"));
        assert_eq!(s("7").dominant_monomial().unwrap(), &Monomial::one());
        assert_eq!(m("l[1]^-1 + l[2]^-1"), m("l[2]^-1"));
        assert_eq!(Series::zero().dominant_monomial(), Err(SeriesError::ZeroSeries));
    }

    #[test]
    fn order_examples() {
        assert_eq!(s("l[0] - 1000").cmp_order(&Series::zero()), Ordering::Greater);
        assert_eq!(s("l[4]").cmp_order(&s("l[4]")), Ordering::Equal);
        assert_eq!(s("-l[1] + 5").cmp_order(&Series::zero()), Ordering::Less);
    }

    #[test]
    fn dominance_relations() {
        assert!(s("l[1]").prec(&s("l[0]")));
        assert!(s("3*l[0]").asymp_eq(&s("5*l[0]")));
        assert!(Series::zero().prec(&s("l[2]^-1")));
        assert!(!Series::zero().prec(&Series::zero()));
        assert!(Series::zero().asymp_eq(&Series::zero()));
        assert!(s("l[1]").preceq(&s("2*l[1] + 1")));
    }

    #[test]
    fn truncation() {
        let f = s("l[0] + 2 + l[1]^-1");
        assert_eq!(f.truncate_above(&Monomial::one()), s("l[0]"));
        assert!(f.truncate_above(f.dominant_monomial().unwrap()).is_zero());
        assert!(Series::zero().truncate_above(&m("l[5]")).is_zero());
        assert!(s("l[0]").is_truncation_of(&s("l[0] + l[1]")));
        assert!(Series::zero().is_truncation_of(&f));
        assert!(!s("l[1]").is_truncation_of(&s("l[0] + l[1]")));
        assert!(f.is_truncation_of(&f));
    }

    #[test]
    fn decomposition() {
        let d = s("l[0] + 2 + l[1]^-1").decompose();
        assert_eq!(d.large, s("l[0]"));
        assert_eq!(d.constant, rat(2));
        assert_eq!(d.small, s("l[1]^-1"));
        let d = s("7").decompose();
        assert!(d.large.is_zero() && d.small.is_zero());
        assert_eq!(d.constant, rat(7));
        assert!(s("l[w] - 3").is_positive_infinite());
        assert!(!s("3 - l[w]").is_positive_infinite());
        assert!(s("l[0] + l[1]").is_purely_large());
        assert!(s("l[1]^-1").is_infinitesimal());
    }

    #[test]
    fn text_form() {
        assert_eq!(s("3*l[0] - 5*l[1] + 2").to_string(), "3*l[0] - 5*l[1] + 2");
        assert_eq!(s("2 + l[w^2] - 4").to_string(), "l[w^2] - 2");
        assert_eq!(s("-x").to_string(), "-l[0]");
        assert_eq!(s("l[0]^(1/2)*3/4").to_string(), "3/4*l[0]^(1/2)");
        assert_eq!(s("L[0,w)^-1").to_string(), "L[0,w)^-1");
        assert_eq!(s("0").to_string(), "0");
        assert!("l[0] +".parse::<Series>().is_err());
        assert!("(l[0] + 1)^(1/2)".parse::<Series>().is_err());
        assert!("1/(l[0]+1)".parse::<Series>().is_err());
    }

    #[test]
    fn json_form() {
        let v = s("3*l[0] - 1/2").to_json();
        assert_eq!(
            v,
            json!([
                { "coefficient": "3", "monomial": "l[0]" },
                { "coefficient": "-1/2", "monomial": "1" }
            ])
        );
    }
}
