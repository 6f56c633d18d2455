//! High-precision evaluation of finite-level terms.
//!
//! Values are kept as towers `exp^k(y)` so iterated exponentials stay
//! representable. A tower at level `k ≥ 1` always has `ln T ≤ y < T`.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use super::{Gen, HypercalcError, Term};
use crate::ordinal::Ordinal;
use crate::text::Rational;

const RM: RoundingMode = RoundingMode::ToEven;
pub const DEFAULT_PRECISION: usize = 320;
const THRESHOLD: f64 = 1e8;
/// Largest level-0 value whose `exp(-v)` is still representable.
const UNDERFLOW: f64 = 1e9;

/// `exp^level(value)`.
#[derive(Debug, Clone)]
pub struct Tower {
    level: u32,
    value: BigFloat,
    lossy: bool,
    precision: usize,
}

impl Tower {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn value(&self) -> &BigFloat {
        &self.value
    }

    /// Set when a perturbation was below working precision and dropped.
    pub fn is_lossy(&self) -> bool {
        self.lossy
    }

    /// Approximate `f64` value; `inf` for towers above level 0.
    pub fn to_f64(&self) -> f64 {
        if self.level > 0 {
            return f64::INFINITY;
        }
        let mut cc = Consts::new().expect("constants cache");
        self.value
            .format(Radix::Dec, RM, &mut cc)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(f64::NAN)
    }

    /// Order at working precision; `None` for ties that cannot be resolved.
    pub fn compare(&self, other: &Tower) -> Option<Ordering> {
        if self.level != other.level {
            return Some(self.level.cmp(&other.level));
        }
        let ord = sign(self.value.cmp(&other.value)?);
        if ord == Ordering::Equal {
            return (!self.lossy && !other.lossy).then_some(Ordering::Equal);
        }
        let p = self.precision.min(other.precision);
        let diff = self.value.sub(&other.value, p, RM).abs();
        let scale = max_abs(&self.value, &other.value, p);
        // 2^-(p-48), built directly since it underflows f64 at high precision
        let mut eps = BigFloat::from_i64(1, p);
        eps.set_exponent(1 - (p as i32 - 48));
        let tol = scale.mul(&eps, p, RM);
        match diff.cmp(&tol) {
            Some(c) if c > 0 => Some(ord),
            _ => None,
        }
    }
}

fn sign<T: Ord + Default>(c: T) -> Ordering {
    c.cmp(&T::default())
}

fn max_abs(a: &BigFloat, b: &BigFloat, p: usize) -> BigFloat {
    let one = BigFloat::from_i64(1, p);
    [a.abs(), b.abs()]
        .into_iter()
        .fold(one, |m, v| if v.cmp(&m).is_some_and(|c| c > 0) { v } else { m })
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut cc = Consts::new().map_err(|_| fmt::Error)?;
        let mut short = self.value.clone();
        short.set_precision(96, RM).map_err(|_| fmt::Error)?;
        let s = short.format(Radix::Dec, RM, &mut cc).map_err(|_| fmt::Error)?;
        let s = trim_decimal(&s);
        match self.level {
            0 => f.write_str(&s),
            1 => write!(f, "exp({s})"),
            k => write!(f, "exp^{k}({s})"),
        }
    }
}

/// Shortens `d.ddddde±n` to a readable form.
fn trim_decimal(s: &str) -> String {
    let (mant, exp) = s.split_once('e').unwrap_or((s, "0"));
    let exp: i32 = exp.parse().unwrap_or(0);
    let (neg, digits) = mant.strip_prefix('-').map_or((false, mant), |m| (true, m));
    let digits: String = digits.chars().filter(|c| *c != '.').take(20).collect();
    let sign = if neg { "-" } else { "" };
    if (-6..20).contains(&exp) {
        let point = exp + 1;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        } else if (point as usize) >= digits.len() {
            format!("{digits}{}", "0".repeat(point as usize - digits.len()))
        } else {
            format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
        };
        let body = if body.contains('.') {
            body.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            body
        };
        format!("{sign}{body}")
    } else {
        let (h, t) = digits.split_at(1);
        let t = t.trim_end_matches('0');
        let dot = if t.is_empty() { "" } else { "." };
        format!("{sign}{h}{dot}{t}e{exp}")
    }
}

struct Evaluator {
    p: usize,
    cc: Consts,
    threshold: BigFloat,
    ln_threshold: BigFloat,
    lossy: bool,
}

impl Evaluator {
    fn new(p: usize) -> Self {
        let mut cc = Consts::new().expect("constants cache");
        let threshold = BigFloat::from_f64(THRESHOLD, p);
        let ln_threshold = threshold.ln(p, RM, &mut cc);
        Evaluator { p, cc, threshold, ln_threshold, lossy: false }
    }

    fn bf(&self, q: &Rational) -> BigFloat {
        let mut cc = Consts::new().expect("constants cache");
        let n = BigFloat::parse(&q.numer().to_string(), Radix::Dec, self.p, RM, &mut cc);
        let d = BigFloat::parse(&q.denom().to_string(), Radix::Dec, self.p, RM, &mut cc);
        n.div(&d, self.p, RM)
    }

    fn ln(&mut self, v: &BigFloat) -> BigFloat {
        v.ln(self.p, RM, &mut self.cc)
    }

    fn exp(&mut self, v: &BigFloat) -> BigFloat {
        v.exp(self.p, RM, &mut self.cc)
    }

    fn ge(a: &BigFloat, b: &BigFloat) -> bool {
        a.cmp(b).is_some_and(|c| c >= 0)
    }

    fn normalize(&mut self, level: &mut u32, y: &mut BigFloat) {
        while Self::ge(y, &self.threshold) {
            *y = self.ln(y);
            *level += 1;
        }
        while *level >= 1 && !Self::ge(y, &self.ln_threshold) {
            *y = self.exp(y);
            *level -= 1;
        }
    }

    /// `exp^k(y) + c`, expressed again at level `k`.
    fn add_at(&mut self, k: u32, y: &BigFloat, c: &BigFloat) -> BigFloat {
        if c.is_zero() {
            return y.clone();
        }
        if k == 0 {
            return y.add(c, self.p, RM);
        }
        // exp(V) + c = exp(V + ln(1 + c·exp(-V))) with V = exp^{k-1}(y).
        let v = match k - 1 {
            0 => y.clone(),
            1 if y.cmp(&BigFloat::from_f64(UNDERFLOW.ln(), self.p)).is_some_and(|c| c < 0) => self.exp(y),
            _ => {
                self.lossy = true;
                return y.clone();
            }
        };
        if v.cmp(&BigFloat::from_f64(UNDERFLOW, self.p)).is_some_and(|c| c > 0) {
            self.lossy = true;
            return y.clone();
        }
        let eps = c.mul(&self.exp(&v.neg()), self.p, RM);
        let one = BigFloat::from_i64(1, self.p);
        let delta = self.ln(&one.add(&eps, self.p, RM));
        if delta.is_zero() {
            self.lossy = true;
            return y.clone();
        }
        let out = self.add_at(k - 1, y, &delta);
        if out.cmp(y) == Some(0) {
            self.lossy = true;
        }
        out
    }

    /// `r · exp^k(y)`, expressed again at level `k`.
    fn mul_at(&mut self, k: u32, y: &BigFloat, r: &BigFloat) -> BigFloat {
        if k == 0 {
            return y.mul(r, self.p, RM);
        }
        let ln_r = self.ln(r);
        self.add_at(k - 1, y, &ln_r)
    }

    fn apply(&mut self, g: &Gen, level: &mut u32, y: &mut BigFloat) -> Result<(), HypercalcError> {
        match g {
            Gen::L(_) => {
                if *level >= 1 {
                    *level -= 1;
                } else {
                    let one = BigFloat::from_i64(1, self.p);
                    if !y.cmp(&one).is_some_and(|c| c > 0) {
                        return Err(HypercalcError::DomainError(format!(
                            "logarithm of {}",
                            Tower { level: 0, value: y.clone(), lossy: false, precision: self.p }
                        )));
                    }
                    *y = self.ln(y);
                }
            }
            Gen::E(_) => {
                if *level >= 1 || Self::ge(y, &self.ln_threshold) {
                    *level += 1;
                } else {
                    *y = self.exp(y);
                }
            }
            Gen::Shift(c) => {
                let c = self.bf(c);
                *y = self.add_at(*level, y, &c);
            }
            Gen::Scale(r) => {
                let r = self.bf(r);
                *y = self.mul_at(*level, y, &r);
            }
            Gen::Power(r) => {
                let r = self.bf(r);
                if *level == 0 {
                    if !y.is_positive() || y.is_zero() {
                        return Err(HypercalcError::DomainError("power of a non-positive value".into()));
                    }
                    // y^r = exp(r ln y)
                    let z = self.ln(y).mul(&r, self.p, RM);
                    *y = z;
                    return self.apply(&Gen::E(Ordinal::zero()), level, y);
                }
                *y = self.mul_at(*level - 1, y, &r);
            }
            Gen::LGamma(_) => unreachable!("expanded before evaluation"),
        }
        if y.is_nan() || y.is_inf() {
            return Err(HypercalcError::DomainError("value out of range".into()));
        }
        self.normalize(level, y);
        Ok(())
    }
}

/// Finite-level word with `LGamma(n)` expanded to `L_1^n`.
fn finite_word(t: &Term) -> Result<Vec<Gen>, HypercalcError> {
    let mut out = Vec::new();
    for g in t.word() {
        match g {
            Gen::L(mu) | Gen::E(mu) if !mu.is_zero() => {
                return Err(HypercalcError::TransfiniteLevel(g.to_string()));
            }
            Gen::LGamma(gamma) => {
                let n = gamma
                    .to_u64()
                    .ok_or_else(|| HypercalcError::TransfiniteLevel(g.to_string()))?;
                out.extend((0..n).map(|_| Gen::L(Ordinal::zero())));
            }
            _ => out.push(g.clone()),
        }
    }
    Ok(out)
}

/// Evaluates `t` at `x = x0` with the default precision.
pub fn numeric_check(t: &Term, x0: &Rational) -> Result<Tower, HypercalcError> {
    numeric_check_with(t, x0, DEFAULT_PRECISION)
}

/// Evaluates `t` at `x = x0` with `bits` of working precision.
pub fn numeric_check_with(t: &Term, x0: &Rational, bits: usize) -> Result<Tower, HypercalcError> {
    let word = finite_word(t)?;
    let mut ev = Evaluator::new(bits);
    let mut level = 0;
    let mut y = ev.bf(x0);
    ev.normalize(&mut level, &mut y);
    for g in word.iter().rev() {
        ev.apply(g, &mut level, &mut y)?;
    }
    Ok(Tower { level, value: y, lossy: ev.lossy, precision: bits })
}

/// Compares `a` and `b` at `x0`, raising precision while the towers are too
/// close to separate. `Ok(None)` means still unresolved at the top precision.
pub fn numeric_cmp(a: &Term, b: &Term, x0: &Rational) -> Result<Option<Ordering>, HypercalcError> {
    for bits in [DEFAULT_PRECISION, 2048, 8192] {
        let ta = numeric_check_with(a, x0, bits)?;
        let tb = numeric_check_with(b, x0, bits)?;
        if let Some(o) = ta.compare(&tb) {
            return Ok(Some(o));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_rational, rat};

    fn eval(t: &str, x0: &str) -> Tower {
        numeric_check(&t.parse().unwrap(), &parse_rational(x0).unwrap()).unwrap()
    }

    #[test]
    fn simple_values() {
        let v = eval("L[1](x)", &format!("{}", 5f64.exp())).to_f64();
        assert!((v - 5.0).abs() < 1e-12, "{v}");
        assert_eq!(eval("x + 3", "10").to_string(), "13");
        let v = eval("E[1](x)", "2").to_f64();
        assert!((v - 2f64.exp()).abs() < 1e-12, "{v}");
        assert_eq!(eval("L[2](x)", "1000").to_f64(), 1000f64.ln().ln());
    }

    #[test]
    fn towers() {
        let t = eval("E[1](E[1](E[1](x)))", "10");
        assert_eq!(t.level(), 2);
        // exp(exp(10)) has level 1 payload exp(10)
        let inner = eval("E[1](x)", "10").to_f64();
        let y: f64 = t.value().format(Radix::Dec, RM, &mut Consts::new().unwrap()).unwrap().parse().unwrap();
        assert!((y - inner).abs() / inner < 1e-12);
        let back = eval("L[1](L[1](E[1](E[1](E[1](x)))))", "10");
        assert!((back.to_f64() - inner).abs() / inner < 1e-12);
    }

    #[test]
    fn perturbations_at_height() {
        let a = eval("E[1](E[1](x))", "3");
        let b = eval("E[1](E[1](x)) + 1", "3");
        assert_eq!(a.compare(&b), Some(Ordering::Less));
        let c = eval("2*E[1](E[1](E[1](x)))", "3");
        let d = eval("E[1](E[1](E[1](x)))", "3");
        assert_eq!(d.level(), 2);
        assert_eq!(d.compare(&c), Some(Ordering::Less));
        // beyond working precision the difference is dropped
        let c = eval("2*E[1](E[1](E[1](x)))", "10");
        let d = eval("E[1](E[1](E[1](x)))", "10");
        assert!(c.is_lossy());
        assert_eq!(d.compare(&c), None);
        let e = eval("E[1](E[1](E[1](x))) + 1", "10");
        let d = eval("E[1](E[1](E[1](x)))", "10");
        assert!(e.is_lossy());
        assert_eq!(e.compare(&d), None);
        let p = eval("E[1](E[1](x))^2", "10");
        let q = eval("E[1](2*E[1](x))", "10");
        assert!(p.compare(&q).is_none() || p.compare(&q) == Some(Ordering::Equal));
    }

    #[test]
    fn errors() {
        let x0 = rat(1);
        assert!(matches!(
            numeric_check(&"L[1](x)".parse().unwrap(), &x0),
            Err(HypercalcError::DomainError(_))
        ));
        assert!(matches!(
            numeric_check(&"L[w](x)".parse().unwrap(), &rat(10)),
            Err(HypercalcError::TransfiniteLevel(_))
        ));
        assert!(matches!(
            numeric_check(&"L[w+1](x)".parse().unwrap(), &rat(10)),
            Err(HypercalcError::TransfiniteLevel(_))
        ));
        assert!(numeric_check(&"L[3](x)".parse().unwrap(), &rat(100)).is_ok());
    }

    #[test]
    fn escalating_precision() {
        let x0 = rat(1000);
        let a: Term = "E[1](x)".parse().unwrap();
        let b: Term = "E[1](x) + 1".parse().unwrap();
        assert_eq!(
            numeric_check(&a, &x0).unwrap().compare(&numeric_check(&b, &x0).unwrap()),
            None
        );
        assert_eq!(numeric_cmp(&a, &b, &x0).unwrap(), Some(Ordering::Less));
    }

    #[test]
    fn rounding_noise_is_not_a_difference() {
        // exp(exp(log x)) carries rounding error, while the dropped shift
        // on the other side is far below working precision
        let a: Term = "E[1](E[1](L[1](x)))".parse().unwrap();
        let b: Term = "E[1](x) - 5/2".parse().unwrap();
        assert_ne!(numeric_cmp(&a, &b, &rat(1_000_000)).unwrap(), Some(Ordering::Less));
        assert_eq!(numeric_cmp(&a, &b, &rat(1000)).unwrap(), Some(Ordering::Greater));
    }

    #[test]
    fn equal_terms_compare_equal() {
        let a = eval("L[1](x)", "1000");
        assert_eq!(a.compare(&a.clone()), Some(Ordering::Equal));
    }
}
