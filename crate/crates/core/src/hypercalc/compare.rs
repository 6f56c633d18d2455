//! Sound, partial asymptotic comparison of ladder terms.
//!
//! Two layers. Terms in the log-exp fragment are first evaluated into coarse
//! asymptotic classes over `ℓ`-series (exact series, series up to a bounded
//! error, a monomial up to a constant factor, or an exponential of such a
//! class). When that does not decide, structural rules apply:
//!
//! - a common outer generator is peeled (every generator is increasing);
//! - a common inner word is stripped, and heads compare directly or through
//!   their inverses (`A < B` iff `A⁻¹ > B⁻¹`);
//! - `L_β u < L_γ v` for `γ < β`, `u ≤ v`, and dually `E_γ u < E_β v`;
//! - `E_γ H_r L_γ < E_ρ H_s L_ρ` for `γ < ρ`, `s > 1`;
//! - `g(u) > u` for expansive `g`, `g(u) < u` for contractive `g`;
//! - an outer `E_β` moves across as `L_β` on the other side.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{apply_l, apply_power, Gen, RuleSet, Term};
use crate::lhm::Monomial;
use crate::ordinal::Ordinal;
use crate::series::Series;
use crate::text::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Less,
    Equal,
    Greater,
    Unknown,
}

impl Verdict {
    pub fn reverse(self) -> Verdict {
        match self {
            Verdict::Less => Verdict::Greater,
            Verdict::Greater => Verdict::Less,
            v => v,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Verdict::Less | Verdict::Greater)
    }

    pub fn ordering(self) -> Option<Ordering> {
        match self {
            Verdict::Less => Some(Ordering::Less),
            Verdict::Equal => Some(Ordering::Equal),
            Verdict::Greater => Some(Ordering::Greater),
            Verdict::Unknown => None,
        }
    }
}

impl From<Ordering> for Verdict {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Verdict::Less,
            Ordering::Equal => Verdict::Equal,
            Ordering::Greater => Verdict::Greater,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Coarse class of a positive infinite value.
#[derive(Debug, Clone)]
enum Asym {
    Exact(Series),
    /// `p + O(1)` with `p` purely large.
    Bounded(Series),
    /// `C·m·(1 + o(1))` for some real `C > 0`, `m ≻ 1`.
    Monomial(Monomial),
    /// `exp(v + O(1))`.
    Exp(Box<Asym>),
}

fn large(s: &Series) -> Series {
    s.decompose().large
}

fn ell_zero() -> Series {
    Series::monomial(Monomial::ell(&Ordinal::zero()))
}

impl Asym {
    fn positive_infinite(&self) -> bool {
        match self {
            Asym::Exact(s) | Asym::Bounded(s) => s.is_positive_infinite(),
            Asym::Monomial(m) => m.cmp_one() == Ordering::Greater,
            Asym::Exp(_) => true,
        }
    }

    /// Dominant monomial of a class that is not an exponential.
    fn dominant(&self) -> Option<Monomial> {
        match self {
            Asym::Exact(s) | Asym::Bounded(s) => s.dominant_monomial().ok().cloned(),
            Asym::Monomial(m) => Some(m.clone()),
            Asym::Exp(_) => None,
        }
    }

    /// Forgets any bounded additive part.
    fn coarsen(self) -> Asym {
        match self {
            Asym::Exact(s) => Asym::Bounded(large(&s)),
            other => other,
        }
    }

    fn log(&self) -> Option<Asym> {
        match self {
            Asym::Exact(s) => {
                if let Some((c, m)) = s.as_term() {
                    if c.is_one() {
                        return m.log_monomial().ok().map(Asym::Exact);
                    }
                }
                let m = s.dominant_monomial().ok()?;
                Some(Asym::Bounded(large(&m.log_monomial().ok()?)))
            }
            Asym::Bounded(_) | Asym::Monomial(_) => {
                let m = self.dominant()?;
                Some(Asym::Bounded(large(&m.log_monomial().ok()?)))
            }
            Asym::Exp(v) => Some(v.as_ref().clone().coarsen()),
        }
    }

    fn exp(self) -> Asym {
        let (s, exact) = match &self {
            Asym::Exact(s) => (s, true),
            Asym::Bounded(s) => (s, false),
            _ => return Asym::Exp(Box::new(self)),
        };
        // exp(Σ c ℓ_{δ+1}) = ∏ ℓ_δ^c
        let d = s.decompose();
        let mut m = Monomial::one();
        for (mono, c) in d.large.terms() {
            match mono.pieces() {
                [p] if p.hi == p.lo.succ() && p.value.is_one() && p.lo.is_successor() => {
                    let delta = p.lo.pred_info().1;
                    m = m.mul(&Monomial::ell(&delta).pow(c));
                }
                _ => return Asym::Exp(Box::new(self)),
            }
        }
        if exact && d.constant.is_zero() && d.small.is_zero() {
            Asym::Exact(Series::monomial(m))
        } else {
            Asym::Monomial(m)
        }
    }

    fn shift(self, c: &Rational) -> Asym {
        match self {
            Asym::Exact(s) => Asym::Exact(s.add(&Series::constant(c.clone()))),
            other => other,
        }
    }

    fn scale(self, r: &Rational) -> Asym {
        match self {
            Asym::Exact(s) => Asym::Exact(s.scale(r)),
            Asym::Bounded(s) => Asym::Bounded(s.scale(r)),
            other => other,
        }
    }

    fn power(self, r: &Rational) -> Option<Asym> {
        match self {
            Asym::Exact(s) => match apply_power(r, &s) {
                Ok(p) => Some(Asym::Exact(p)),
                Err(_) => Some(Asym::Monomial(s.dominant_monomial().ok()?.pow(r))),
            },
            Asym::Bounded(_) | Asym::Monomial(_) => Some(Asym::Monomial(self.dominant()?.pow(r))),
            Asym::Exp(v) => Some(Asym::Exp(Box::new(v.scale(r)))),
        }
    }
}

/// Evaluates a normalized word on `x = ℓ₀`.
fn eval(word: &[Gen]) -> Option<Asym> {
    let mut v = Asym::Exact(ell_zero());
    for g in word.iter().rev() {
        v = match g {
            Gen::L(mu) if mu.is_zero() => v.log()?,
            Gen::L(mu) => match &v {
                Asym::Exact(s) => Asym::Exact(apply_l(mu, s).ok()?),
                _ => return None,
            },
            Gen::E(mu) if mu.is_zero() => v.exp(),
            Gen::E(_) | Gen::LGamma(_) => return None,
            Gen::Shift(c) => v.shift(c),
            Gen::Scale(r) => v.scale(r),
            Gen::Power(r) => v.power(r)?,
        };
        if !v.positive_infinite() {
            return None;
        }
    }
    Some(v)
}

fn series_order(a: &Series, b: &Series) -> Ordering {
    a.sub(b).sign()
}

/// Order of two classes, `Equal` only for identical exact series.
fn cmp_asym(a: &Asym, b: &Asym) -> Option<Ordering> {
    use Asym::*;
    match (a, b) {
        (Exact(x), Exact(y)) => Some(series_order(x, y)),
        (Exp(_), _) | (_, Exp(_)) => gap(a, b),
        (Monomial(_), _) | (_, Monomial(_)) => {
            let (ma, mb) = (a.dominant()?, b.dominant()?);
            match ma.cmp(&mb) {
                Ordering::Equal => None,
                o => Some(o),
            }
        }
        _ => gap(a, b),
    }
}

/// Sign of `a − b` when that difference is provably infinite.
fn gap(a: &Asym, b: &Asym) -> Option<Ordering> {
    use Asym::*;
    match (a, b) {
        (Exp(v), Exp(w)) => gap(v, w),
        (Exp(v), other) => gap(v, &other.log()?),
        (other, Exp(w)) => gap(&other.log()?, w),
        (Monomial(_), _) | (_, Monomial(_)) => cmp_asym(a, b),
        (Exact(x) | Bounded(x), Exact(y) | Bounded(y)) => {
            let d = large(x).sub(&large(y));
            (!d.is_zero()).then(|| d.sign())
        }
    }
}

const FUEL: u32 = 6;
const BUDGET: usize = 4000;

struct Comparator<'a> {
    rules: &'a RuleSet,
    memo: HashMap<(Vec<Gen>, Vec<Gen>), Verdict>,
    calls: usize,
}

/// Decides `a` against `b` at `x → ∞`, or `Unknown`.
pub fn cmp_terms(a: &Term, b: &Term) -> Verdict {
    cmp_terms_with(a, b, &RuleSet::default())
}

pub fn cmp_terms_with(a: &Term, b: &Term, rules: &RuleSet) -> Verdict {
    let (Ok(a), Ok(b)) = (rules.normalize(a), rules.normalize(b)) else {
        return Verdict::Unknown;
    };
    let run = |x: &Term, y: &Term| {
        let mut c = Comparator {
            rules,
            memo: HashMap::new(),
            calls: 0,
        };
        c.cmp(x.word().to_vec(), y.word().to_vec(), FUEL)
    };
    // the search depends on argument order; fixing the order on normal forms
    // makes the verdict antisymmetric and independent of presentation
    let (x, y, flip) = if a.word() <= b.word() { (&a, &b, false) } else { (&b, &a, true) };
    let mut v = run(x, y);
    if v == Verdict::Unknown {
        v = run(y, x).reverse();
    }
    if flip {
        v.reverse()
    } else {
        v
    }
}

fn is_pos(q: &Rational) -> bool {
    q.is_positive()
}

/// `(μ, r)` for a head `E_{ω^μ} H_r L_{ω^μ}`; `μ = None` stands for strength 0.
fn conjugate_scale(w: &[Gen]) -> Option<(Option<&Ordinal>, Rational)> {
    match w {
        [] => Some((None, Rational::one())),
        [Gen::Scale(r)] => Some((None, r.clone())),
        [Gen::E(m1), Gen::Scale(r), Gen::L(m2)] if m1 == m2 => Some((Some(m1), r.clone())),
        _ => None,
    }
}

fn lt_strength(a: Option<&Ordinal>, b: Option<&Ordinal>) -> bool {
    match (a, b) {
        (_, None) => false,
        (None, Some(_)) => true,
        (Some(x), Some(y)) => x < y,
    }
}

impl Comparator<'_> {
    fn normal(&self, w: Vec<Gen>) -> Option<Vec<Gen>> {
        self.rules
            .normalize(&Term::from_word_unchecked(w))
            .ok()
            .map(Term::into_word)
    }

    fn cmp(&mut self, a: Vec<Gen>, b: Vec<Gen>, fuel: u32) -> Verdict {
        let (Some(a), Some(b)) = (self.normal(a), self.normal(b)) else {
            return Verdict::Unknown;
        };
        if a == b {
            return Verdict::Equal;
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        // provisional entry guards against cycles
        self.memo.insert(key.clone(), Verdict::Unknown);
        let v = self.decide(&a, &b, fuel);
        self.memo.insert(key, v);
        v
    }

    fn decide(&mut self, a: &[Gen], b: &[Gen], fuel: u32) -> Verdict {
        if let (Some(x), Some(y)) = (eval(a), eval(b)) {
            if let Some(o) = cmp_asym(&x, &y) {
                return o.into();
            }
        }
        self.calls += 1;
        if fuel == 0 || self.calls > BUDGET {
            return Verdict::Unknown;
        }
        let f = fuel - 1;

        // common outer generator
        if let (Some(g), Some(h)) = (a.first(), b.first()) {
            if g == h {
                return self.cmp(a[1..].to_vec(), b[1..].to_vec(), f);
            }
        }

        // common inner word
        let k = a.iter().rev().zip(b.iter().rev()).take_while(|(x, y)| x == y).count();
        let (ha, hb) = (&a[..a.len() - k], &b[..b.len() - k]);
        if k > 0 {
            let v = self.cmp(ha.to_vec(), hb.to_vec(), f);
            if v.is_strict() {
                return v;
            }
        }
        if let Some(v) = self.heads(ha, hb) {
            return v;
        }
        if ha.iter().chain(hb).any(|g| matches!(g, Gen::E(_))) {
            if let (Some(ia), Some(ib)) = (inverse(ha), inverse(hb)) {
                let v = self.cmp(ia, ib, f).reverse();
                if v.is_strict() {
                    return v;
                }
            }
        }

        // L_β u < L_γ v for γ < β, u ≤ v; E_γ u < E_β v for γ < β, u ≤ v
        if let (Some(g), Some(h)) = (a.first(), b.first()) {
            let mono = match (g, h) {
                (Gen::L(m), Gen::L(n)) if m != n => Some(if m > n { Ordering::Less } else { Ordering::Greater }),
                (Gen::E(m), Gen::E(n)) if m != n => Some(if m < n { Ordering::Less } else { Ordering::Greater }),
                _ => None,
            };
            if let Some(o) = mono {
                let inner = self.cmp(a[1..].to_vec(), b[1..].to_vec(), f);
                let want = Verdict::from(o);
                if inner == want || inner == Verdict::Equal {
                    return want;
                }
            }
        }

        // expansive or contractive outer generator
        for (x, y, flip) in [(a, b, false), (b, a, true)] {
            let Some(g) = x.first() else { continue };
            let want = if g.is_expansive() {
                Verdict::Greater
            } else if g.is_contractive() {
                Verdict::Less
            } else {
                continue;
            };
            let inner = self.cmp(x[1..].to_vec(), y.to_vec(), f);
            if inner == want || inner == Verdict::Equal {
                return if flip { want.reverse() } else { want };
            }
        }

        // move an outer hyperexponential across
        for (x, y, flip) in [(a, b, false), (b, a, true)] {
            if let Some(Gen::E(mu)) = x.first() {
                let mut ly = vec![Gen::L(mu.clone())];
                ly.extend_from_slice(y);
                let v = self.cmp(x[1..].to_vec(), ly, f);
                if v.is_strict() {
                    return if flip { v.reverse() } else { v };
                }
            }
        }
        Verdict::Unknown
    }

    /// Comparisons decided by the shape of two heads alone.
    fn heads(&mut self, a: &[Gen], b: &[Gen]) -> Option<Verdict> {
        let (ma, ra) = conjugate_scale(a)?;
        let (mb, rb) = conjugate_scale(b)?;
        let one = Rational::one();
        if lt_strength(ma, mb) && rb > one && is_pos(&ra) {
            return Some(Verdict::Less);
        }
        if lt_strength(mb, ma) && ra > one && is_pos(&rb) {
            return Some(Verdict::Greater);
        }
        None
    }
}

fn inverse(w: &[Gen]) -> Option<Vec<Gen>> {
    w.iter().rev().map(Gen::inverse).collect()
}
