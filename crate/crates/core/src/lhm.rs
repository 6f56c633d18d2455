//! Logarithmic hypermonomials `∏ ℓ_γ^{e_γ}`.
//!
//! The exponent map `γ ↦ e_γ` is stored as sorted, disjoint, half-open
//! ordinal intervals with constant nonzero rational value, so monomials such
//! as `ℓ_ω† = ∏_{ι≤ω} ℓ_ι^{-1}` are finite data.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ordinal::Ordinal;
use crate::series::Series;
use crate::text::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LhmError {
    #[error("the unit monomial has empty support")]
    UnitMonomial,
    #[error("monomial {0} has infinite support")]
    InfiniteSupport(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Piece {
    pub lo: Ordinal,
    pub hi: Ordinal,
    pub value: Rational,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pieces: Vec<Piece>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { pieces: Vec::new() }
    }

    /// `ℓ_γ`.
    pub fn ell(gamma: &Ordinal) -> Self {
        Self::interval(gamma, &gamma.succ(), Rational::one())
    }

    /// `ℓ_γ† = ∏_{ι≤γ} ℓ_ι^{-1}`.
    pub fn dagger(gamma: &Ordinal) -> Self {
        Self::interval(&Ordinal::zero(), &gamma.succ(), -Rational::one())
    }

    /// Constant exponent `value` on `[lo, hi)`.
    pub fn interval(lo: &Ordinal, hi: &Ordinal, value: Rational) -> Self {
        if lo >= hi || value.is_zero() {
            return Self::one();
        }
        Monomial {
            pieces: vec![Piece {
                lo: lo.clone(),
                hi: hi.clone(),
                value,
            }],
        }
    }

    /// Builds a monomial from arbitrary (possibly overlapping) pieces; values
    /// on overlaps add up.
    pub fn from_pieces<I: IntoIterator<Item = Piece>>(pieces: I) -> Self {
        pieces.into_iter().fold(Self::one(), |acc, p| {
            acc.mul(&Self::interval(&p.lo, &p.hi, p.value))
        })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_one(&self) -> bool {
        self.pieces.is_empty()
    }

    fn value_at(&self, gamma: &Ordinal) -> Rational {
        self.pieces
            .iter()
            .find(|p| &p.lo <= gamma && gamma < &p.hi)
            .map_or_else(Rational::zero, |p| p.value.clone())
    }

    pub fn exponent_at(&self, gamma: &Ordinal) -> Rational {
        self.value_at(gamma)
    }

    fn overlay(&self, other: &Monomial, f: impl Fn(&Rational, &Rational) -> Rational) -> Monomial {
        let mut cuts: Vec<&Ordinal> = self
            .pieces
            .iter()
            .chain(&other.pieces)
            .flat_map(|p| [&p.lo, &p.hi])
            .collect();
        cuts.sort();
        cuts.dedup();
        let mut out: Vec<Piece> = Vec::new();
        for w in cuts.windows(2) {
            let v = f(&self.value_at(w[0]), &other.value_at(w[0]));
            if v.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(last) if &last.hi == w[0] && last.value == v => last.hi = w[1].clone(),
                _ => out.push(Piece {
                    lo: w[0].clone(),
                    hi: w[1].clone(),
                    value: v,
                }),
            }
        }
        Monomial { pieces: out }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        self.overlay(other, |a, b| a + b)
    }

    pub fn inv(&self) -> Monomial {
        self.pow(&-Rational::one())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.overlay(other, |a, b| a - b)
    }

    pub fn pow(&self, q: &Rational) -> Monomial {
        if q.is_zero() {
            return Self::one();
        }
        Monomial {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece {
                    value: &p.value * q,
                    ..p.clone()
                })
                .collect(),
        }
    }

    /// Sign of `e_β` at `β = min supp`: `Greater` means `self ≻ 1`.
    pub fn cmp_one(&self) -> Ordering {
        match self.pieces.first() {
            None => Ordering::Equal,
            Some(p) if p.value.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// Dominance order: `Greater` iff `self ≻ other`.
    pub fn cmp_dominance(&self, other: &Monomial) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let mut cuts: Vec<&Ordinal> = self
            .pieces
            .iter()
            .chain(&other.pieces)
            .map(|p| &p.lo)
            .chain(self.pieces.iter().chain(&other.pieces).map(|p| &p.hi))
            .collect();
        cuts.sort();
        cuts.dedup();
        let zero = Rational::zero();
        for g in cuts {
            let a = self.value_ref(g).unwrap_or(&zero);
            let b = other.value_ref(g).unwrap_or(&zero);
            if a != b {
                return a.cmp(b);
            }
        }
        Ordering::Equal
    }

    fn value_ref(&self, gamma: &Ordinal) -> Option<&Rational> {
        self.pieces
            .iter()
            .find(|p| &p.lo <= gamma && gamma < &p.hi)
            .map(|p| &p.value)
    }

    pub fn min_support(&self) -> Result<&Ordinal, LhmError> {
        self.pieces
            .first()
            .map(|p| &p.lo)
            .ok_or(LhmError::UnitMonomial)
    }

    pub fn is_finite_support(&self) -> bool {
        self.pieces
            .iter()
            .all(|p| p.lo.left_sub(&p.hi).is_some_and(|w| w.is_finite()))
    }

    /// Support points with their exponents, ascending.
    pub fn support_points(&self) -> Result<Vec<(Ordinal, Rational)>, LhmError> {
        let mut out = Vec::new();
        for p in &self.pieces {
            let width = p
                .lo
                .left_sub(&p.hi)
                .and_then(|w| w.to_u64())
                .ok_or_else(|| LhmError::InfiniteSupport(self.to_string()))?;
            let mut g = p.lo.clone();
            for _ in 0..width {
                out.push((g.clone(), p.value.clone()));
                g = g.succ();
            }
        }
        Ok(out)
    }

    /// `log ∏ ℓ_γ^{e_γ} = Σ e_γ ℓ_{γ+1}`.
    pub fn log_monomial(&self) -> Result<Series, LhmError> {
        let mut s = Series::zero();
        for (g, e) in self.support_points()? {
            s = s.add(&Series::term(e, Monomial::ell(&g.succ())));
        }
        Ok(s)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_dominance(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Exponent<'a>(&'a Rational);

impl fmt::Display for Exponent<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.0;
        if q.is_one() {
            Ok(())
        } else if q.is_integer() {
            write!(f, "^{}", q.numer())
        } else {
            write!(f, "^({})", format_rational(q))
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if p.hi == p.lo.succ() {
                write!(f, "l[{}]{}", p.lo, Exponent(&p.value))?;
            } else {
                write!(f, "L[{},{}){}", p.lo, p.hi, Exponent(&p.value))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}
