//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a list of `(exponent, coefficient)` pairs with strictly
//! decreasing exponents and positive coefficients; the empty list is `0`.
//! Exponents are themselves ordinals, so the representation nests. Ordinal
//! sum, the natural (Hessenberg) sum and product, `ω^γ`, predecessors and
//! `α/ω` are provided. Ordinal multiplication is deliberately absent.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::text::{Cursor, ParseError};

/// Default cap on exponent nesting accepted from text input.
pub const DEFAULT_DEPTH_GUARD: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("{0} is not a power of omega")]
    NotOmegaPower(Ordinal),
    #[error("ordinal nesting depth {depth} exceeds the guard {guard}")]
    DepthExceeded { depth: usize, guard: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfTerm {
    pub exponent: Ordinal,
    pub coefficient: BigUint,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<CnfTerm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from(1u64)
    }

    pub fn omega() -> Self {
        Self::omega_power(Self::one())
    }

    pub fn natural(n: BigUint) -> Self {
        Self::monomial(Self::zero(), n)
    }

    /// `ω^exponent`.
    pub fn omega_power(exponent: Ordinal) -> Self {
        Self::monomial(exponent, BigUint::one())
    }

    /// `ω^exponent · coefficient` (zero if the coefficient is zero).
    pub fn monomial(exponent: Ordinal, coefficient: BigUint) -> Self {
        if coefficient.is_zero() {
            return Self::zero();
        }
        Ordinal {
            terms: vec![CnfTerm {
                exponent,
                coefficient,
            }],
        }
    }

    /// Builds an ordinal from terms that must already be in Cantor normal form.
    pub fn from_terms(terms: Vec<CnfTerm>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coefficient.is_zero()));
        debug_assert!(terms.windows(2).all(|w| w[0].exponent > w[1].exponent));
        Ordinal { terms }
    }

    pub fn terms(&self) -> &[CnfTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [t] => t.exponent.is_zero(),
            _ => false,
        }
    }

    /// The natural number this ordinal equals, if finite.
    pub fn as_natural(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [t] if t.exponent.is_zero() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.as_natural()?.to_u64()
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    /// Exponent of the last (smallest) Cantor term.
    pub fn trailing_exponent(&self) -> Option<&Ordinal> {
        self.terms.last().map(|t| &t.exponent)
    }

    /// If `self = ω^μ`, returns `μ`.
    pub fn omega_log(&self) -> Option<&Ordinal> {
        match self.terms.as_slice() {
            [t] if t.coefficient.is_one() => Some(&t.exponent),
            _ => None,
        }
    }

    /// Nesting depth of the exponent tree: 0 for `0`, 1 for naturals,
    /// 2 for `ω`, 3 for `ω^ω`, ...
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| 1 + t.exponent.depth())
            .max()
            .unwrap_or(0)
    }

    pub fn check_depth(&self, guard: usize) -> Result<(), OrdinalError> {
        let depth = self.depth();
        if depth > guard {
            Err(OrdinalError::DepthExceeded { depth, guard })
        } else {
            Ok(())
        }
    }

    pub fn succ(&self) -> Self {
        self + &Self::one()
    }

    /// Ordinal (non-commutative) sum `self + other`.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<CnfTerm> = self
            .terms
            .iter()
            .take_while(|t| t.exponent >= lead.exponent)
            .cloned()
            .collect();
        let mut rest = other.terms.iter();
        if let Some(last) = terms.last_mut() {
            if last.exponent == lead.exponent {
                last.coefficient += &lead.coefficient;
                rest.next();
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// Hessenberg natural sum: coefficientwise addition of Cantor forms.
    pub fn nat_sum(&self, other: &Ordinal) -> Ordinal {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.exponent.cmp(&b.exponent) {
                Ordering::Greater => {
                    terms.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    terms.push(CnfTerm {
                        exponent: a.exponent.clone(),
                        coefficient: &a.coefficient + &b.coefficient,
                    });
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Ordinal { terms }
    }

    /// Hessenberg natural product: distribute, combining exponents with the
    /// natural sum.
    pub fn nat_prod(&self, other: &Ordinal) -> Ordinal {
        let mut acc = Ordinal::zero();
        for a in &self.terms {
            for b in &other.terms {
                let t = Ordinal::monomial(
                    a.exponent.nat_sum(&b.exponent),
                    &a.coefficient * &b.coefficient,
                );
                acc = acc.nat_sum(&t);
            }
        }
        acc
    }

    /// `self · n` for a natural `n` (right multiplication).
    pub fn mul_natural(&self, n: &BigUint) -> Ordinal {
        if n.is_zero() || self.is_zero() {
            return Ordinal::zero();
        }
        let mut terms = self.terms.clone();
        terms[0].coefficient *= n;
        Ordinal { terms }
    }

    /// Classifies `self` and returns `μ_-`: the predecessor for successors,
    /// `self` itself for limits and zero.
    pub fn pred_info(&self) -> (OrdinalKind, Ordinal) {
        match self.terms.last() {
            None => (OrdinalKind::Zero, Ordinal::zero()),
            Some(t) if t.exponent.is_zero() => {
                let mut terms = self.terms.clone();
                let last = terms.last_mut().unwrap();
                last.coefficient -= 1u32;
                if last.coefficient.is_zero() {
                    terms.pop();
                }
                (OrdinalKind::Successor, Ordinal { terms })
            }
            Some(_) => (OrdinalKind::Limit, self.clone()),
        }
    }

    pub fn kind(&self) -> OrdinalKind {
        match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exponent.is_zero() => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.kind() == OrdinalKind::Successor
    }

    /// `α_{/ω} = ω^{μ_-}` for `α = ω^μ`.
    pub fn div_omega(&self) -> Result<Ordinal, OrdinalError> {
        let mu = self
            .omega_log()
            .ok_or_else(|| OrdinalError::NotOmegaPower(self.clone()))?;
        Ok(Ordinal::omega_power(mu.pred_info().1))
    }

    /// The unique `δ` with `self + δ = other`, when `self <= other`.
    pub fn left_sub(&self, other: &Ordinal) -> Option<Ordinal> {
        if self > other {
            return None;
        }
        let mut i = 0;
        while i < self.terms.len() && i < other.terms.len() && self.terms[i] == other.terms[i] {
            i += 1;
        }
        if i == other.terms.len() {
            return Some(Ordinal::zero());
        }
        let b = &other.terms[i];
        let mut terms = Vec::with_capacity(other.terms.len() - i);
        match self.terms.get(i) {
            Some(a) if a.exponent == b.exponent => {
                // a.coefficient < b.coefficient since self <= other
                terms.push(CnfTerm {
                    exponent: b.exponent.clone(),
                    coefficient: &b.coefficient - &a.coefficient,
                });
            }
            _ => terms.push(b.clone()),
        }
        terms.extend_from_slice(&other.terms[i + 1..]);
        Some(Ordinal { terms })
    }

    pub fn parse_with_guard(text: &str, guard: usize) -> Result<Ordinal, ParseError> {
        let mut cur = Cursor::new(text);
        let ord = parse_sum(&mut cur)?;
        cur.finish()?;
        if let Err(e) = ord.check_depth(guard) {
            return Err(ParseError::new(0, e.to_string()));
        }
        Ok(ord)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::natural(BigUint::from(n))
    }
}

impl Add<&Ordinal> for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::add(self, rhs)
    }
}

impl Add for Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: Ordinal) -> Ordinal {
        Ordinal::add(&self, &rhs)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = a
                .exponent
                .cmp(&b.exponent)
                .then_with(|| a.coefficient.cmp(&b.coefficient));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// grammar:
//   sum     := product ('+' product)*
//   product := primary ('*' nat)*
//   primary := nat | 'w' ('^' primary)? | '(' sum ')'
pub(crate) fn parse_sum(cur: &mut Cursor) -> Result<Ordinal, ParseError> {
    let mut acc = parse_product(cur)?;
    while cur.eat('+') {
        let rhs = parse_product(cur)?;
        acc = &acc + &rhs;
    }
    Ok(acc)
}

fn parse_product(cur: &mut Cursor) -> Result<Ordinal, ParseError> {
    let mut acc = parse_primary(cur)?;
    while cur.eat('*') {
        let n = cur.natural()?;
        acc = acc.mul_natural(&n);
    }
    Ok(acc)
}

pub(crate) fn parse_primary(cur: &mut Cursor) -> Result<Ordinal, ParseError> {
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => Ok(Ordinal::natural(cur.natural()?)),
        Some('w') | Some('ω') => {
            cur.bump();
            let exponent = if cur.eat('^') {
                parse_primary(cur)?
            } else {
                Ordinal::one()
            };
            Ok(Ordinal::omega_power(exponent))
        }
        Some('(') => {
            cur.bump();
            let inner = parse_sum(cur)?;
            cur.expect(')')?;
            Ok(inner)
        }
        _ => Err(cur.error("expected an ordinal")),
    }
}

impl FromStr for Ordinal {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ordinal::parse_with_guard(s, DEFAULT_DEPTH_GUARD)
    }
}

impl Ordinal {
    /// Formatting usable after `^`: bare when unambiguous, else parenthesised.
    pub fn fmt_atom(&self) -> String {
        let plain = self.to_string();
        if self.is_finite() || (self.terms.len() == 1 && self.terms[0].coefficient.is_one()) {
            plain
        } else {
            format!("({plain})")
        }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            f.write_str("w")?;
            if t.exponent != Ordinal::one() {
                write!(f, "^{}", t.exponent.fmt_atom())?;
            }
            if !t.coefficient.is_one() {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl serde::Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn pairs(a: &Ordinal) -> Vec<(String, u64)> {
        a.terms()
            .iter()
            .map(|t| (t.exponent.to_string(), t.coefficient.to_u64().unwrap()))
            .collect()
    }

    #[test]
    fn comparisons() {
        assert_eq!(o("w").cmp(&o("5")), Ordering::Greater);
        assert_eq!(o("w^2").cmp(&o("w*9+3")), Ordering::Greater);
        assert_eq!(o("0").cmp(&o("0")), Ordering::Equal);
        assert!(o("w^w") > o("w^100*7"));
        assert!(o("w*2") > o("w+1000"));
    }

    #[test]
    fn ordinal_sum_absorbs() {
        assert_eq!(o("1") + o("w"), o("w"));
        assert_eq!((o("w") + o("1")).to_string(), "w+1");
        assert_eq!(o("w+1") + o("w"), o("w*2"));
        assert_eq!(o("w^2+w*3+5") + o("w^2"), o("w^2*2"));
    }

    #[test]
    fn natural_operations() {
        assert_eq!(o("w").nat_sum(&o("1")), o("w+1"));
        assert_eq!(o("w+1").nat_sum(&o("w")).to_string(), "w*2+1");
        assert_eq!(Ordinal::zero().nat_sum(&o("w^3+2")), o("w^3+2"));
        assert_eq!(o("w").nat_prod(&o("w")), o("w^2"));
        assert_eq!(o("w+1").nat_prod(&o("2")).to_string(), "w*2+2");
        assert!(o("w^w+4").nat_prod(&Ordinal::zero()).is_zero());
        assert_eq!(o("w+1").nat_prod(&o("w+1")), o("w^2+w*2+1"));
    }

    #[test]
    fn omega_powers() {
        assert_eq!(Ordinal::omega_power(Ordinal::zero()), o("1"));
        assert_eq!(Ordinal::omega_power(o("1")), o("w"));
        let p = Ordinal::omega_power(o("w+1"));
        assert_eq!(pairs(&p), vec![("w+1".to_string(), 1)]);
    }

    #[test]
    fn predecessors() {
        assert_eq!(o("3").pred_info(), (OrdinalKind::Successor, o("2")));
        assert_eq!(o("w").pred_info(), (OrdinalKind::Limit, o("w")));
        assert_eq!(o("w+1").pred_info(), (OrdinalKind::Successor, o("w")));
        assert_eq!(o("0").pred_info(), (OrdinalKind::Zero, o("0")));
    }

    #[test]
    fn divide_by_omega() {
        assert_eq!(o("w").div_omega().unwrap(), o("1"));
        assert_eq!(o("w^2").div_omega().unwrap(), o("w"));
        assert_eq!(o("w^w").div_omega().unwrap(), o("w^w"));
        assert!(matches!(
            o("w*2").div_omega(),
            Err(OrdinalError::NotOmegaPower(_))
        ));
        assert!(o("w^2+1").div_omega().is_err());
    }

    #[test]
    fn grammar() {
        assert_eq!(
            pairs(&o("w^2*3+w+5")),
            vec![("2".into(), 3), ("1".into(), 1), ("0".into(), 5)]
        );
        assert!(o("0").is_zero());
        assert_eq!(pairs(&o("w^(w)")), vec![("w".into(), 1)]);
        assert_eq!(o("w^w^2").to_string(), "w^w^2");
        assert_eq!(o("w^(w+1)*2").to_string(), "w^(w+1)*2");
        assert_eq!(o("w + 1 + w").to_string(), "w*2");
        let err = "w^".parse::<Ordinal>().unwrap_err();
        assert_eq!(err.position, 2);
        assert!("w+".parse::<Ordinal>().is_err());
        assert!("w)".parse::<Ordinal>().is_err());
    }

    #[test]
    fn depth_guard() {
        assert_eq!(o("7").depth(), 1);
        assert_eq!(o("w^w").depth(), 3);
        assert!(Ordinal::parse_with_guard("w^w^w", 3).is_err());
        assert!(Ordinal::parse_with_guard("w^w^w", 4).is_ok());
    }

    #[test]
    fn left_subtraction() {
        assert_eq!(o("3").left_sub(&o("w")).unwrap(), o("w"));
        assert_eq!(o("w").left_sub(&o("w*2+1")).unwrap(), o("w+1"));
        assert_eq!(o("w+2").left_sub(&o("w+5")).unwrap(), o("3"));
        assert!(o("w").left_sub(&o("5")).is_none());
    }
}
