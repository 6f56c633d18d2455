//! Sampled audits of the skeleton axioms `FE_μ`, `A_μ`, `M_μ`, `R_μ` and the
//! level-0 axioms in the field of logarithmic hyperseries.
//!
//! Atomic monomials at level `β = ω^μ` are sampled as `ℓ_γ` with
//! `γ = ω^{μ_-}·ξ`, and test strengths `δ < β` as `ξ` restricted below `β`,
//! where `ξ` ranges over `n`, `ω·n`, `ω^k·n` and `ω^k·n + m`. Every instance
//! serializes to plain text and [`replay`] recomputes its verdict.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypercalc::{hyperlog_of_atomic_with, is_atomic, to_series_with, RuleSet, Term};
use crate::lhm::Monomial;
use crate::ordinal::{CnfTerm, Ordinal};
use crate::series::Series;
use crate::text::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    FE,
    A,
    M,
    R,
    L0,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Axiom {
    type Err = AuditError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "FE" => Axiom::FE,
            "A" => Axiom::A,
            "M" => Axiom::M,
            "R" => Axiom::R,
            "L0" | "LEVEL0" => Axiom::L0,
            _ => return Err(AuditError::UnknownAxiom(s.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("unknown axiom {0}; expected FE, A, M, R or L0")]
    UnknownAxiom(String),
    #[error("FE needs a successor strength exponent, got {0}")]
    NotSuccessor(String),
    #[error("strength exponent must be at least 1, got {0}")]
    ZeroStrength(String),
    #[error("strength exponent {mu} is deeper than the guard {guard}")]
    TooDeep { mu: String, guard: usize },
    #[error("malformed instance: {0}")]
    BadInstance(String),
}

/// One sampled case; ordinals and monomials are stored in their text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Instance {
    Fe { gamma: String },
    A { gamma: String, delta: String },
    M { a: String, b: String, delta: String },
    R { gamma: String, delta: String },
    L0 { m: String, n: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: Instance,
    pub lhs: String,
    pub rhs: String,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Failure),
    /// A side could not be computed; the message says which.
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub axiom: Axiom,
    pub mu: String,
    pub samples: usize,
    pub failures: Vec<Failure>,
    pub unknowns: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unknowns == 0
    }
}

#[derive(Debug, Clone)]
pub struct AuditConfig {
    pub samples: usize,
    pub seed: u64,
    /// Bound on the coefficients `n`, `m` of sampled ordinals.
    pub max_coefficient: u64,
    /// Bound on the exponent `k` of sampled ordinals.
    pub max_exponent: u64,
    pub depth_guard: usize,
    pub rules: RuleSet,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            samples: 200,
            seed: 0,
            max_coefficient: 5,
            max_exponent: 3,
            depth_guard: 16,
            rules: RuleSet::default(),
        }
    }
}

/// `ω^a · ξ`.
fn omega_times(a: &Ordinal, xi: &Ordinal) -> Ordinal {
    Ordinal::from_terms(
        xi.terms()
            .iter()
            .map(|t| CnfTerm {
                exponent: a + &t.exponent,
                coefficient: t.coefficient.clone(),
            })
            .collect(),
    )
}

fn nat(n: u64) -> Ordinal {
    Ordinal::from(n)
}

fn monomial_ordinal(k: u64, n: u64) -> Ordinal {
    Ordinal::monomial(nat(k), BigUint::from(n))
}

struct Sampler<'a> {
    rng: ChaCha8Rng,
    cfg: &'a AuditConfig,
}

impl Sampler<'_> {
    fn coefficient(&mut self) -> u64 {
        self.rng.gen_range(1..=self.cfg.max_coefficient.max(1))
    }

    /// A shape from the grammar whose leading exponent is below `limit`
    /// (no bound when `limit` is `None`); `0` has a small weight.
    fn shape(&mut self, limit: Option<&Ordinal>) -> Ordinal {
        let max_k = self.cfg.max_exponent.max(2);
        let below = |k: u64| limit.is_none_or(|l| &nat(k) < l);
        loop {
            let n = self.coefficient();
            let xi = match self.rng.gen_range(0..9) {
                0 => Ordinal::zero(),
                1 | 2 => nat(n),
                3 | 4 if below(1) => monomial_ordinal(1, n),
                5 | 6 => {
                    let k = self.rng.gen_range(2..=max_k);
                    if !below(k) {
                        continue;
                    }
                    monomial_ordinal(k, n)
                }
                7 | 8 => {
                    let k = self.rng.gen_range(1..=max_k);
                    if !below(k) {
                        continue;
                    }
                    let m = self.coefficient();
                    &monomial_ordinal(k, n) + &nat(m)
                }
                _ => continue,
            };
            return xi;
        }
    }

    /// `γ` with `ℓ_γ` atomic at `ω^μ`.
    fn atomic(&mut self, mu: &Ordinal) -> Ordinal {
        let mu_minus = mu.pred_info().1;
        omega_times(&mu_minus, &self.shape(None))
    }

    /// `δ < ω^μ`.
    fn below(&mut self, mu: &Ordinal) -> Ordinal {
        self.shape(Some(mu))
    }

    fn level0_monomial(&mut self) -> Monomial {
        loop {
            let mut m = Monomial::one();
            for _ in 0..self.rng.gen_range(1..=3) {
                let at = match self.rng.gen_range(0..3) {
                    0 => nat(self.rng.gen_range(0..4)),
                    1 => &Ordinal::omega() + &nat(self.rng.gen_range(0..3)),
                    _ => monomial_ordinal(self.rng.gen_range(1..=2), self.rng.gen_range(1..=2)),
                };
                let num: i64 = self.rng.gen_range(-4..=4);
                let den: i64 = self.rng.gen_range(1..=3);
                m = m.mul(&Monomial::ell(&at).pow(&Rational::new(num.into(), den.into())));
            }
            if m.cmp_one() == std::cmp::Ordering::Greater {
                return m;
            }
        }
    }

    fn instance(&mut self, axiom: Axiom, mu: &Ordinal) -> Instance {
        match axiom {
            Axiom::FE => Instance::Fe {
                gamma: self.atomic(mu).to_string(),
            },
            Axiom::A => Instance::A {
                gamma: self.atomic(mu).to_string(),
                delta: self.below(mu).to_string(),
            },
            Axiom::R => Instance::R {
                gamma: self.atomic(mu).to_string(),
                delta: self.below(mu).to_string(),
            },
            Axiom::M => loop {
                let (x, y) = (self.atomic(mu), self.atomic(mu));
                if x == y {
                    continue;
                }
                // ℓ_x ≺ ℓ_y iff x > y
                let (a, b) = if x > y { (x, y) } else { (y, x) };
                break Instance::M {
                    a: a.to_string(),
                    b: b.to_string(),
                    delta: self.below(mu).to_string(),
                };
            },
            Axiom::L0 => loop {
                let (m, n) = (self.level0_monomial(), self.level0_monomial());
                if m == n {
                    continue;
                }
                let (m, n) = if m < n { (m, n) } else { (n, m) };
                break Instance::L0 {
                    m: m.to_string(),
                    n: n.to_string(),
                };
            },
        }
    }
}

fn check_strength(axiom: Axiom, mu: &Ordinal, guard: usize) -> Result<(), AuditError> {
    if axiom == Axiom::L0 {
        return Ok(());
    }
    if mu.check_depth(guard).is_err() {
        return Err(AuditError::TooDeep {
            mu: mu.to_string(),
            guard,
        });
    }
    if mu.is_zero() {
        return Err(AuditError::ZeroStrength(mu.to_string()));
    }
    if axiom == Axiom::FE && !mu.is_successor() {
        return Err(AuditError::NotSuccessor(mu.to_string()));
    }
    Ok(())
}

/// Runs `cfg.samples` sampled instances of `axiom` at strength `ω^mu`.
pub fn audit(axiom: Axiom, mu: &Ordinal, cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    check_strength(axiom, mu, cfg.depth_guard)?;
    let mut sampler = Sampler {
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        cfg,
    };
    let mut failures = Vec::new();
    let mut unknowns = 0;
    for _ in 0..cfg.samples {
        let inst = sampler.instance(axiom, mu);
        match replay_with(mu, &inst, &cfg.rules)? {
            Outcome::Pass => {}
            Outcome::Fail(f) => failures.push(f),
            Outcome::Unknown(_) => unknowns += 1,
        }
    }
    Ok(AuditReport {
        axiom,
        mu: mu.to_string(),
        samples: cfg.samples,
        failures,
        unknowns,
    })
}

fn config(samples: usize, seed: u64) -> AuditConfig {
    AuditConfig {
        samples,
        seed,
        ..AuditConfig::default()
    }
}

pub fn audit_fe(mu: &Ordinal, samples: usize, seed: u64) -> Result<AuditReport, AuditError> {
    audit(Axiom::FE, mu, &config(samples, seed))
}

pub fn audit_a(mu: &Ordinal, samples: usize, seed: u64) -> Result<AuditReport, AuditError> {
    audit(Axiom::A, mu, &config(samples, seed))
}

pub fn audit_m(mu: &Ordinal, samples: usize, seed: u64) -> Result<AuditReport, AuditError> {
    audit(Axiom::M, mu, &config(samples, seed))
}

pub fn audit_r(mu: &Ordinal, samples: usize, seed: u64) -> Result<AuditReport, AuditError> {
    audit(Axiom::R, mu, &config(samples, seed))
}

pub fn audit_level0(samples: usize, seed: u64) -> Result<AuditReport, AuditError> {
    audit(Axiom::L0, &Ordinal::zero(), &config(samples, seed))
}

/// Recomputes the verdict of a serialized instance with the default rules.
pub fn replay(mu: &Ordinal, inst: &Instance) -> Result<Outcome, AuditError> {
    replay_with(mu, inst, &RuleSet::default())
}

fn ord(s: &str) -> Result<Ordinal, AuditError> {
    s.parse().map_err(|e| AuditError::BadInstance(format!("{s}: {e}")))
}

fn mono(s: &str) -> Result<Monomial, AuditError> {
    let bad = || AuditError::BadInstance(format!("{s} is not a monomial"));
    let series: Series = s.parse().map_err(|_| bad())?;
    match series.as_term() {
        Some((c, m)) if c.is_one() => Ok(m.clone()),
        _ => Err(bad()),
    }
}

/// `L_δ ℓ_γ` as a series.
fn hyperlog(gamma: &Ordinal, delta: &Ordinal, rules: &RuleSet) -> Result<Series, String> {
    let t = Term::x().apply_l_gamma(gamma).apply_l_gamma(delta);
    to_series_with(&t, rules).map_err(|e| format!("L[{delta}](l[{gamma}]): {e}"))
}

/// The monomial of a series `1·𝔪`.
fn as_monomial(s: &Series) -> Result<Monomial, String> {
    match s.as_term() {
        Some((c, m)) if c.is_one() => Ok(m.clone()),
        _ => Err(format!("{s} is not a monomial")),
    }
}

/// `γ` for the monomial `ℓ_γ`.
fn ell_index(m: &Monomial) -> Result<Ordinal, String> {
    match m.pieces() {
        [p] if p.hi == p.lo.succ() && p.value.is_one() => Ok(p.lo.clone()),
        _ => Err(format!("{m} is not of the form l[γ]")),
    }
}

fn fail(inst: &Instance, lhs: impl fmt::Display, rhs: impl fmt::Display, verdict: impl Into<String>) -> Outcome {
    Outcome::Fail(Failure {
        instance: inst.clone(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        verdict: verdict.into(),
    })
}

fn order_word(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "Less",
        std::cmp::Ordering::Equal => "Equal",
        std::cmp::Ordering::Greater => "Greater",
    }
}

pub fn replay_with(mu: &Ordinal, inst: &Instance, rules: &RuleSet) -> Result<Outcome, AuditError> {
    let beta = Ordinal::omega_power(mu.clone());
    let level = |g: &Ordinal| -> Result<(), AuditError> {
        match is_atomic(g, &beta) {
            Ok(true) => Ok(()),
            _ => Err(AuditError::BadInstance(format!("l[{g}] is not atomic at {beta}"))),
        }
    };
    let below = |d: &Ordinal| -> Result<(), AuditError> {
        if d < &beta {
            Ok(())
        } else {
            Err(AuditError::BadInstance(format!("{d} is not below {beta}")))
        }
    };
    let computed = |r: Result<Outcome, String>| r.unwrap_or_else(Outcome::Unknown);
    Ok(match inst {
        Instance::Fe { gamma } => {
            let g = ord(gamma)?;
            level(&g)?;
            let below_beta = beta.div_omega().map_err(|e| AuditError::BadInstance(e.to_string()))?;
            computed((|| {
                // L_β L_{β/ω} 𝔞 against L_β 𝔞 − 1
                let inner = as_monomial(&hyperlog(&g, &below_beta, rules)?)?;
                let g2 = ell_index(&inner)?;
                let lhs = hyperlog_of_atomic_with(&g2, &beta, rules).map_err(|e| e.to_string())?;
                let rhs = hyperlog_of_atomic_with(&g, &beta, rules)
                    .map_err(|e| e.to_string())?
                    .sub(&Series::constant(Rational::one()));
                Ok(if lhs == rhs {
                    Outcome::Pass
                } else {
                    fail(inst, &lhs, &rhs, "NotEqual")
                })
            })())
        }
        Instance::A { gamma, delta } => {
            let (g, d) = (ord(gamma)?, ord(delta)?);
            level(&g)?;
            below(&d)?;
            computed((|| {
                let lhs = hyperlog_of_atomic_with(&g, &beta, rules).map_err(|e| e.to_string())?;
                let rhs = hyperlog(&g, &d, rules)?;
                let o = lhs.sub(&rhs).sign();
                Ok(if o == std::cmp::Ordering::Less {
                    Outcome::Pass
                } else {
                    fail(inst, &lhs, &rhs, order_word(o))
                })
            })())
        }
        Instance::M { a, b, delta } => {
            let (ga, gb, d) = (ord(a)?, ord(b)?, ord(delta)?);
            level(&ga)?;
            level(&gb)?;
            below(&d)?;
            if ga <= gb {
                return Err(AuditError::BadInstance(format!("l[{ga}] is not below l[{gb}]")));
            }
            computed((|| {
                let inv = |g: &Ordinal| -> Result<Series, String> {
                    Ok(Series::monomial(as_monomial(&hyperlog(g, &d, rules)?)?.inv()))
                };
                let la = hyperlog_of_atomic_with(&ga, &beta, rules).map_err(|e| e.to_string())?;
                let lb = hyperlog_of_atomic_with(&gb, &beta, rules).map_err(|e| e.to_string())?;
                let lhs = la.add(&inv(&ga)?);
                let rhs = lb.sub(&inv(&gb)?);
                let o = lhs.sub(&rhs).sign();
                Ok(if o == std::cmp::Ordering::Less {
                    Outcome::Pass
                } else {
                    fail(inst, &lhs, &rhs, order_word(o))
                })
            })())
        }
        Instance::R { gamma, delta } => {
            let (g, d) = (ord(gamma)?, ord(delta)?);
            level(&g)?;
            below(&d)?;
            computed((|| {
                let lhs = hyperlog_of_atomic_with(&g, &beta, rules).map_err(|e| e.to_string())?;
                let ld = hyperlog(&g, &d, rules)?;
                let bound = ld.dominant_monomial().map_err(|e| e.to_string())?.inv();
                let low = lhs.terms().map(|(m, _)| m).find(|m| **m <= bound).cloned();
                Ok(match low {
                    None => Outcome::Pass,
                    Some(m) => fail(inst, m, &bound, "NotDominating"),
                })
            })())
        }
        Instance::L0 { m, n } => {
            let (m, n) = (mono(m)?, mono(n)?);
            computed(level0(inst, &m, &n))
        }
    })
}

fn level0(inst: &Instance, m: &Monomial, n: &Monomial) -> Result<Outcome, String> {
    let log = |x: &Monomial| x.log_monomial().map_err(|e| e.to_string());
    let (lm, ln) = (log(m)?, log(n)?);
    // FE₀: L₁(𝔪𝔫) = L₁𝔪 + L₁𝔫
    let lmn = log(&m.mul(n))?;
    if lmn != lm.add(&ln) {
        return Ok(fail(inst, &lmn, lm.add(&ln), "FE0"));
    }
    // A₀: L₁𝔪 ≺ 𝔪
    for (x, lx) in [(m, &lm), (n, &ln)] {
        let d = lx.dominant_monomial().map_err(|e| e.to_string())?;
        if d >= x {
            return Ok(fail(inst, lx, x, "A0"));
        }
    }
    // M₀: 𝔪 ≺ 𝔫 ⟹ L₁𝔪 < L₁𝔫
    if m < n && lm.sub(&ln).sign() != std::cmp::Ordering::Less {
        return Ok(fail(inst, &lm, &ln, "M0"));
    }
    // R₀: supp L₁𝔪 ≻ 1
    for lx in [&lm, &ln] {
        if let Some((mono, _)) = lx.terms().find(|(mono, _)| mono.cmp_one() != std::cmp::Ordering::Greater) {
            return Ok(fail(inst, lx, mono, "R0"));
        }
    }
    Ok(Outcome::Pass)
}
