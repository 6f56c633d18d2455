//! Conway field operations on the computable fragment.
//!
//! Sums and products of finite sign sequences are computed by the genuine
//! Conway recursions over canonical options (memoised), not by converting to
//! rationals; the rational route exists only as a cross-check. Gonshor's
//! exponential is validated rather than represented: [`gonshor_exp_cut`]
//! evaluates finitely many of its option families to an exact rational
//! interval around `exp a`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ordinal::Ordinal;
use crate::signseq::{Sign, SignSeq, SignSeqError};
use crate::text::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConwayError {
    #[error("operand has a transfinite run; only finite sign sequences are supported")]
    NotFinite,
    #[error("degenerate cut: depth must be at least 1")]
    DegenerateCut,
    #[error(transparent)]
    SignSeq(#[from] SignSeqError),
}

fn require_finite(a: &SignSeq) -> Result<(), ConwayError> {
    if a.is_finite() {
        Ok(())
    } else {
        Err(ConwayError::NotFinite)
    }
}

/// A finite sign sequence as plain signs, `true` for `+`.
type Signs = Vec<bool>;

fn to_signs(a: &SignSeq) -> Result<Signs, ConwayError> {
    require_finite(a)?;
    Ok(a.signs()?.into_iter().map(|s| s == Sign::Plus).collect())
}

fn from_signs(s: &[bool]) -> SignSeq {
    let signs: Vec<Sign> = s.iter().map(|&p| if p { Sign::Plus } else { Sign::Minus }).collect();
    SignSeq::from_signs(&signs)
}

/// `-` sorts below the end of a sequence, `+` above it.
fn slot(s: Option<&bool>) -> i8 {
    match s {
        Some(false) => -1,
        None => 0,
        Some(true) => 1,
    }
}

fn cmp_signs(a: &[bool], b: &[bool]) -> Ordering {
    let c = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    slot(a.get(c)).cmp(&slot(b.get(c)))
}

/// Shortest prefix of `s` of length at least `from` followed by `sign`, or
/// `s` extended by the opposite sign.
fn cut_before(s: &[bool], sign: bool, from: usize) -> Signs {
    match (from..s.len()).find(|&i| s[i] == sign) {
        Some(i) => s[..i].to_vec(),
        None => {
            let mut v = s.to_vec();
            v.push(!sign);
            v
        }
    }
}

/// Simplest sequence strictly between the largest left and smallest right
/// option.
fn bracket_signs(left: &[Signs], right: &[Signs]) -> Signs {
    let lo = left.iter().max_by(|a, b| cmp_signs(a, b));
    let hi = right.iter().min_by(|a, b| cmp_signs(a, b));
    match (lo, hi) {
        (None, None) => Vec::new(),
        (Some(lo), None) => cut_before(lo, false, 0),
        (None, Some(hi)) => cut_before(hi, true, 0),
        (Some(lo), Some(hi)) => {
            assert_eq!(cmp_signs(lo, hi), Ordering::Less, "cut is empty");
            let c = lo.iter().zip(hi).take_while(|(x, y)| x == y).count();
            match (lo.get(c), hi.get(c)) {
                (Some(false), Some(true)) => lo[..c].to_vec(),
                (None, Some(true)) => cut_before(hi, true, c + 1),
                (Some(false), None) => cut_before(lo, false, c + 1),
                _ => unreachable!("lo < hi"),
            }
        }
    }
}

fn negate_signs(s: &[bool]) -> Signs {
    s.iter().map(|p| !p).collect()
}

/// Left and right canonical options: proper prefixes below and above.
fn options(s: &[bool]) -> (Vec<Signs>, Vec<Signs>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (k, &p) in s.iter().enumerate() {
        if p {
            left.push(s[..k].to_vec());
        } else {
            right.push(s[..k].to_vec());
        }
    }
    (left, right)
}

/// Key of a commutative operation.
fn key(x: &[bool], y: &[bool]) -> (Signs, Signs) {
    if x <= y {
        (x.to_vec(), y.to_vec())
    } else {
        (y.to_vec(), x.to_vec())
    }
}

/// Memoising evaluator for the Conway sum and product recursions.
///
/// The memo tables live in the calculator, so one instance can be reused
/// across many calls (the brute-force oracles rely on this).
#[derive(Default)]
pub struct ConwayCalculator {
    sums: HashMap<(Signs, Signs), Signs>,
    products: HashMap<(Signs, Signs), Signs>,
}

impl ConwayCalculator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: &SignSeq, y: &SignSeq) -> Result<SignSeq, ConwayError> {
        let (x, y) = (to_signs(x)?, to_signs(y)?);
        Ok(from_signs(&self.add_rec(&x, &y)))
    }

    /// `x + y` where `x` and `y` are presented by arbitrary option sets
    /// `{xl | xr}` and `{yl | yr}` (which must denote `x` and `y`). Options
    /// of options use the canonical representation.
    pub fn add_via_cuts(
        &mut self,
        x: &SignSeq,
        (xl, xr): (&[SignSeq], &[SignSeq]),
        y: &SignSeq,
        (yl, yr): (&[SignSeq], &[SignSeq]),
    ) -> Result<SignSeq, ConwayError> {
        let conv = |v: &[SignSeq]| v.iter().map(to_signs).collect::<Result<Vec<_>, _>>();
        let (x, y) = (to_signs(x)?, to_signs(y)?);
        let (xl, xr, yl, yr) = (conv(xl)?, conv(xr)?, conv(yl)?, conv(yr)?);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for a in &xl {
            left.push(self.add_rec(a, &y));
        }
        for b in &yl {
            left.push(self.add_rec(&x, b));
        }
        for a in &xr {
            right.push(self.add_rec(a, &y));
        }
        for b in &yr {
            right.push(self.add_rec(&x, b));
        }
        if let (Some(lo), Some(hi)) = (
            left.iter().max_by(|a, b| cmp_signs(a, b)),
            right.iter().min_by(|a, b| cmp_signs(a, b)),
        ) {
            if cmp_signs(lo, hi) != Ordering::Less {
                return Err(SignSeqError::EmptyCut.into());
            }
        }
        Ok(from_signs(&bracket_signs(&left, &right)))
    }

    fn add_rec(&mut self, x: &[bool], y: &[bool]) -> Signs {
        if x.is_empty() {
            return y.to_vec();
        }
        if y.is_empty() {
            return x.to_vec();
        }
        let k = key(x, y);
        if let Some(r) = self.sums.get(&k) {
            return r.clone();
        }
        let (xl, xr) = options(x);
        let (yl, yr) = options(y);
        let mut left = Vec::with_capacity(xl.len() + yl.len());
        let mut right = Vec::with_capacity(xr.len() + yr.len());
        for a in &xl {
            left.push(self.add_rec(a, y));
        }
        for b in &yl {
            left.push(self.add_rec(x, b));
        }
        for a in &xr {
            right.push(self.add_rec(a, y));
        }
        for b in &yr {
            right.push(self.add_rec(x, b));
        }
        let r = bracket_signs(&left, &right);
        self.sums.insert(k, r.clone());
        r
    }

    fn sub_rec(&mut self, x: &[bool], y: &[bool]) -> Signs {
        self.add_rec(x, &negate_signs(y))
    }

    pub fn mul(&mut self, x: &SignSeq, y: &SignSeq) -> Result<SignSeq, ConwayError> {
        let (x, y) = (to_signs(x)?, to_signs(y)?);
        Ok(from_signs(&self.mul_rec(&x, &y)))
    }

    // xy = { xL y + x yL - xL yL, xR y + x yR - xR yR
    //      | xL y + x yR - xL yR, xR y + x yL - xR yL }
    fn mul_rec(&mut self, x: &[bool], y: &[bool]) -> Signs {
        if x.is_empty() || y.is_empty() {
            return Vec::new();
        }
        let k = key(x, y);
        if let Some(r) = self.products.get(&k) {
            return r.clone();
        }
        let (xl, xr) = options(x);
        let (yl, yr) = options(y);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (xs, ys, is_left) in [(&xl, &yl, true), (&xr, &yr, true), (&xl, &yr, false), (&xr, &yl, false)] {
            for a in xs.iter() {
                let ay = self.mul_rec(a, y);
                for b in ys.iter() {
                    let xb = self.mul_rec(x, b);
                    let ab = self.mul_rec(a, b);
                    let s = self.add_rec(&ay, &xb);
                    let opt = self.sub_rec(&s, &ab);
                    if is_left {
                        left.push(opt);
                    } else {
                        right.push(opt);
                    }
                }
            }
        }
        let r = bracket_signs(&left, &right);
        self.products.insert(k, r.clone());
        r
    }
}

pub fn add_dyadic(a: &SignSeq, b: &SignSeq) -> Result<SignSeq, ConwayError> {
    ConwayCalculator::new().add(a, b)
}

pub fn mul_dyadic(a: &SignSeq, b: &SignSeq) -> Result<SignSeq, ConwayError> {
    ConwayCalculator::new().mul(a, b)
}

pub fn negate(a: &SignSeq) -> SignSeq {
    a.neg()
}

/// Conway sum of two ordinals, which is their natural sum.
pub fn add_ordinal(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.nat_sum(b)
}

/// `[a]_n = Σ_{k≤n} a^k / k!`.
pub fn taylor_bracket(a: &Rational, n: u32) -> Rational {
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 1..=n {
        term = term * a / Rational::from_integer(BigInt::from(k));
        sum += &term;
    }
    sum
}

/// Upper end of a cut interval; `Infinity` when no right option was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpperBound {
    Finite(Rational),
    Infinity,
}

impl UpperBound {
    fn min_with(&mut self, q: Rational) {
        match self {
            UpperBound::Finite(h) if *h <= q => {}
            _ => *self = UpperBound::Finite(q),
        }
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            UpperBound::Finite(q) => Some(q),
            UpperBound::Infinity => None,
        }
    }
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperBound::Finite(q) => f.write_str(&format_rational(q)),
            UpperBound::Infinity => f.write_str("inf"),
        }
    }
}

/// Open interval `(lo, hi)` with exact rational ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: Rational,
    pub hi: UpperBound,
}

impl RationalInterval {
    pub fn width(&self) -> Option<Rational> {
        self.hi.finite().map(|h| h - &self.lo)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && self.hi.finite().map_or(true, |h| x < h)
    }
}

struct ExpEnclosures {
    depth: u32,
    memo: HashMap<SignSeq, RationalInterval>,
}

impl ExpEnclosures {
    /// Closed enclosure of `exp b` used when `b` appears as an option.
    /// `exp 0 = {0 |} = 1` exactly.
    fn enclosure(&mut self, b: &SignSeq) -> Result<RationalInterval, ConwayError> {
        if b.is_zero() {
            return Ok(RationalInterval {
                lo: Rational::one(),
                hi: UpperBound::Finite(Rational::one()),
            });
        }
        if let Some(e) = self.memo.get(b) {
            return Ok(e.clone());
        }
        let e = self.cut(b)?;
        self.memo.insert(b.clone(), e.clone());
        Ok(e)
    }

    // exp a = { 0, exp(aL)[a-aL]_n, exp(aR)[a-aR]_{2n+1}
    //         | exp(aR)/[aR-a]_n, exp(aL)/[aL-a]_{2n+1} }
    fn cut(&mut self, a: &SignSeq) -> Result<RationalInterval, ConwayError> {
        let av = a.to_dyadic()?;
        let (al, ar) = a.canonical_options()?;
        let mut lo = Rational::zero();
        let mut hi = UpperBound::Infinity;
        let raise = |lo: &mut Rational, q: Rational| {
            if q > *lo {
                *lo = q;
            }
        };
        for b in &al {
            let bv = b.to_dyadic()?;
            let enc = self.enclosure(b)?;
            for n in 0..=self.depth {
                let t = taylor_bracket(&(&av - &bv), n);
                raise(&mut lo, &enc.lo * &t);
                if n % 2 == 1 {
                    let t = taylor_bracket(&(&bv - &av), n);
                    if let (true, Some(h)) = (t.is_positive(), enc.hi.finite()) {
                        hi.min_with(h / &t);
                    }
                }
            }
        }
        for b in &ar {
            let bv = b.to_dyadic()?;
            let enc = self.enclosure(b)?;
            for n in 0..=self.depth {
                if n % 2 == 1 {
                    let t = taylor_bracket(&(&av - &bv), n);
                    if t.is_positive() {
                        raise(&mut lo, &enc.lo * &t);
                    }
                }
                let t = taylor_bracket(&(&bv - &av), n);
                if let Some(h) = enc.hi.finite() {
                    hi.min_with(h / &t);
                }
            }
        }
        Ok(RationalInterval { lo, hi })
    }
}

/// The cut of Gonshor's exponential recursion at `a`, with Taylor indices up
/// to `depth`, evaluated on exact rationals. For `a = 0` both option families
/// are empty and the interval is `(0, ∞)`.
pub fn gonshor_exp_cut(a: &SignSeq, depth: u32) -> Result<RationalInterval, ConwayError> {
    require_finite(a)?;
    if depth == 0 {
        return Err(ConwayError::DegenerateCut);
    }
    if a.is_zero() {
        return Ok(RationalInterval {
            lo: Rational::zero(),
            hi: UpperBound::Infinity,
        });
    }
    ExpEnclosures {
        depth,
        memo: HashMap::new(),
    }
    .cut(a)
}

/// Rational enclosure `[lo, hi]` of `e^a` of width below `10^-digits`, from
/// the Taylor series with an explicit tail bound.
pub fn exp_enclosure(a: &Rational, digits: u32) -> (Rational, Rational) {
    if a.is_negative() {
        let (lo, hi) = exp_enclosure(&-a, digits + 2);
        return (hi.recip(), lo.recip());
    }
    let eps = Rational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let mut term = Rational::one();
    let mut sum = Rational::one();
    let mut k = 1u32;
    loop {
        term = term * a / Rational::from_integer(BigInt::from(k));
        sum += &term;
        // tail after index k is at most 2 * next term once k + 2 > 2a
        let next = &term * a / Rational::from_integer(BigInt::from(k + 1));
        let tail = next * Rational::from_integer(BigInt::from(2));
        if Rational::from_integer(BigInt::from(k + 2)) > a * Rational::from_integer(BigInt::from(2))
            && tail < eps
        {
            return (sum.clone(), sum + tail);
        }
        k += 1;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpCheck {
    pub a: String,
    pub depth: u32,
    pub lo: String,
    pub hi: String,
    pub contains_exp: bool,
}

/// Runs [`gonshor_exp_cut`] and checks the interval against a 60-digit
/// enclosure of `e^a`.
pub fn exp_check(a: &SignSeq, depth: u32) -> Result<ExpCheck, ConwayError> {
    let cut = gonshor_exp_cut(a, depth)?;
    let av = a.to_dyadic()?;
    let (elo, ehi) = exp_enclosure(&av, 60);
    let contains = cut.lo < elo && cut.hi.finite().map_or(true, |h| &ehi < h);
    Ok(ExpCheck {
        a: format_rational(&av),
        depth,
        lo: format_rational(&cut.lo),
        hi: cut.hi.to_string(),
        contains_exp: contains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{rat, rat_frac};

    fn d(n: i64, den: i64) -> SignSeq {
        SignSeq::from_dyadic(&rat_frac(n, den)).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(add_dyadic(&d(1, 2), &d(1, 2)).unwrap(), d(1, 1));
        assert_eq!(add_dyadic(&SignSeq::zero(), &d(-5, 4)).unwrap(), d(-5, 4));
        assert_eq!(add_dyadic(&d(1, 1), &d(1, 1)).unwrap(), d(2, 1));
        assert_eq!(add_dyadic(&d(3, 4), &d(-5, 8)).unwrap(), d(1, 8));
    }

    #[test]
    fn negation_examples() {
        assert_eq!(negate(&d(1, 1)), d(-1, 1));
        assert_eq!(negate(&SignSeq::zero()), SignSeq::zero());
        assert_eq!(negate(&"(+ -)".parse().unwrap()).to_string(), "(- +)");
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(mul_dyadic(&d(1, 2), &d(2, 1)).unwrap(), d(1, 1));
        assert_eq!(mul_dyadic(&SignSeq::zero(), &d(7, 4)).unwrap(), SignSeq::zero());
        assert_eq!(mul_dyadic(&d(-1, 1), &d(3, 8)).unwrap(), negate(&d(3, 8)));
        assert_eq!(mul_dyadic(&d(3, 2), &d(-3, 4)).unwrap(), d(-9, 8));
    }

    #[test]
    fn transfinite_operands_rejected() {
        let w: SignSeq = "(+^w)".parse().unwrap();
        assert_eq!(add_dyadic(&w, &d(1, 1)), Err(ConwayError::NotFinite));
        assert_eq!(mul_dyadic(&d(1, 1), &w), Err(ConwayError::NotFinite));
        assert_eq!(gonshor_exp_cut(&w, 3), Err(ConwayError::NotFinite));
    }

    #[test]
    fn ordinal_sum_is_natural() {
        let o = |s: &str| s.parse::<Ordinal>().unwrap();
        assert_eq!(add_ordinal(&o("w"), &o("1")), o("w+1"));
        assert_eq!(add_ordinal(&o("w+1"), &o("w")), o("w*2+1"));
        assert_eq!(add_ordinal(&o("2"), &o("3")), o("5"));
    }

    #[test]
    fn taylor_brackets() {
        assert_eq!(taylor_bracket(&rat(0), 7), rat(1));
        assert_eq!(taylor_bracket(&rat(1), 2), rat_frac(5, 2));
        assert_eq!(taylor_bracket(&rat(2), 1), rat(3));
        assert_eq!(taylor_bracket(&rat(-1), 1), rat(0));
    }

    #[test]
    fn exp_cut_at_zero_is_the_empty_cut() {
        let c = gonshor_exp_cut(&SignSeq::zero(), 4).unwrap();
        assert_eq!(c.lo, rat(0));
        assert_eq!(c.hi, UpperBound::Infinity);
        assert_eq!(gonshor_exp_cut(&d(1, 1), 0), Err(ConwayError::DegenerateCut));
    }

    #[test]
    fn exp_cut_at_one() {
        let c = gonshor_exp_cut(&d(1, 1), 5).unwrap();
        let (elo, ehi) = exp_enclosure(&rat(1), 30);
        assert!(c.lo < elo && &ehi < c.hi.finite().unwrap());
        assert!(c.width().unwrap() < rat_frac(1, 10));
        // lower end is [1]_5, upper end 1/[-1]_5
        assert_eq!(c.lo, rat_frac(163, 60));
        assert_eq!(c.hi, UpperBound::Finite(rat_frac(30, 11)));
    }

    #[test]
    fn exp_cut_at_minus_one() {
        let c = gonshor_exp_cut(&d(-1, 1), 8).unwrap();
        let (elo, ehi) = exp_enclosure(&rat(-1), 30);
        assert!(c.lo < elo && &ehi < c.hi.finite().unwrap());
    }

    #[test]
    fn exp_enclosure_is_tight() {
        let (lo, hi) = exp_enclosure(&rat_frac(-3, 2), 50);
        assert!(&hi - &lo < Rational::new(BigInt::one(), BigInt::from(10u32).pow(50)));
        assert!(lo < hi);
    }

    #[test]
    fn exp_check_report() {
        let r = exp_check(&d(1, 2), 8).unwrap();
        assert_eq!(r.a, "1/2");
        assert!(r.contains_exp);
    }
}
