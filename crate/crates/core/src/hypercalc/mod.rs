//! Hyperlogarithm and hyperexponential ladder expressions.
//!
//! A [`Term`] is a word of generators applied to the formal variable `x`.
//! Words are normalized by a small rewrite system built from the functional
//! equations; pure logarithmic normal forms are folded into finite-support
//! series, and a sound but partial comparator decides asymptotic order.

mod compare;
mod ladder;
mod numeric;
mod rewrite;
mod term;

use num_traits::One;
use thiserror::Error;

use crate::lhm::Monomial;
use crate::ordinal::Ordinal;
use crate::series::Series;
use crate::text::{format_rational, Rational};

pub use compare::{cmp_terms, cmp_terms_with, Verdict};
pub use ladder::{ladder_chains, ChainLink, ChainReport, SandwichResult};
pub use numeric::{numeric_check, numeric_check_with, numeric_cmp, Tower};
pub use rewrite::{expand_l_gamma, normalize, Rule, RuleSet};
pub use term::{Gen, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypercalcError {
    #[error("rewriting did not terminate within {steps} steps")]
    DepthExceeded { steps: usize },
    #[error("{0} is not a power of omega")]
    NotOmegaPower(String),
    #[error("parameter {0} must be positive")]
    NonPositiveParameter(String),
    #[error("term contains a hyperexponential and has no logarithmic expansion")]
    NotLogarithmic,
    #[error("no finite series expansion: {0}")]
    NoFiniteExpansion(String),
    #[error("l[{gamma}] is not atomic at level {level}")]
    NotAtomic { gamma: String, level: String },
    #[error("numeric evaluation needs finite levels, found {0}")]
    TransfiniteLevel(String),
    #[error("domain error: {0}")]
    DomainError(String),
}

/// `L_{ω^μ}` applied to a series, when the result is again a finite series.
fn apply_l(mu: &Ordinal, f: &Series) -> Result<Series, HypercalcError> {
    let fail = || HypercalcError::NoFiniteExpansion(format!("L[{}]({f})", Ordinal::omega_power(mu.clone())));
    let (c, m) = f.as_term().ok_or_else(fail)?;
    if !c.is_one() {
        return Err(fail());
    }
    if mu.is_zero() {
        return m.log_monomial().map_err(|_| fail());
    }
    // L_{ω^μ} ℓ_δ = ℓ_{δ+ω^μ} when δ + ω^μ is in Cantor form.
    match m.pieces() {
        [p] if p.hi == p.lo.succ() && p.value.is_one() => {
            let delta = &p.lo;
            if delta.is_zero() || delta.trailing_exponent().is_some_and(|e| e >= mu) {
                Ok(Series::monomial(Monomial::ell(&(delta + &Ordinal::omega_power(mu.clone())))))
            } else {
                Err(fail())
            }
        }
        _ => Err(fail()),
    }
}

fn apply_power(r: &Rational, f: &Series) -> Result<Series, HypercalcError> {
    if let Some((c, m)) = f.as_term() {
        if c.is_one() {
            return Ok(Series::monomial(m.pow(r)));
        }
    }
    let fail = || HypercalcError::NoFiniteExpansion(format!("({f})^{}", format_rational(r)));
    if !r.is_integer() {
        return Err(fail());
    }
    let n = r.to_integer().try_into().ok().filter(|n: &i64| *n <= 64).ok_or_else(fail)?;
    f.pow_int(n).ok_or_else(fail)
}

/// Series of an already normalized word.
fn fold_series(t: &Term) -> Result<Series, HypercalcError> {
    let mut f = Series::monomial(Monomial::ell(&Ordinal::zero()));
    for g in t.word().iter().rev() {
        f = match g {
            Gen::L(mu) => apply_l(mu, &f)?,
            Gen::E(_) => return Err(HypercalcError::NotLogarithmic),
            Gen::LGamma(_) => unreachable!("normal forms contain no LGamma"),
            Gen::Shift(c) => f.add(&Series::constant(c.clone())),
            Gen::Scale(r) => f.scale(r),
            Gen::Power(r) => apply_power(r, &f)?,
        };
    }
    Ok(f)
}

/// Normalizes `t` and folds it into a series in `ℓ`-monomials.
pub fn to_series(t: &Term) -> Result<Series, HypercalcError> {
    to_series_with(t, &RuleSet::default())
}

pub fn to_series_with(t: &Term, rules: &RuleSet) -> Result<Series, HypercalcError> {
    fold_series(&rules.normalize(t)?)
}

/// Whether `ℓ_γ` is `L_{<level}`-atomic: `L_δ ℓ_γ` is a monomial for every
/// `δ < level = ω^μ`. Holds iff `γ = 0` or the last Cantor exponent of `γ`
/// is at least `μ_-`.
pub fn is_atomic(gamma: &Ordinal, level: &Ordinal) -> Result<bool, HypercalcError> {
    let mu = level
        .omega_log()
        .ok_or_else(|| HypercalcError::NotOmegaPower(level.to_string()))?;
    let mu_minus = mu.pred_info().1;
    Ok(match gamma.trailing_exponent() {
        None => true,
        Some(e) => e >= &mu_minus,
    })
}

/// `L_β ℓ_γ` for atomic `ℓ_γ`, computed by rewriting.
pub fn hyperlog_of_atomic(gamma: &Ordinal, beta: &Ordinal) -> Result<Series, HypercalcError> {
    hyperlog_of_atomic_with(gamma, beta, &RuleSet::default())
}

pub fn hyperlog_of_atomic_with(
    gamma: &Ordinal,
    beta: &Ordinal,
    rules: &RuleSet,
) -> Result<Series, HypercalcError> {
    if !is_atomic(gamma, beta)? {
        return Err(HypercalcError::NotAtomic {
            gamma: gamma.to_string(),
            level: beta.to_string(),
        });
    }
    let t = Term::x().apply_l_gamma(gamma).apply_l(beta)?;
    to_series_with(&t, rules)
}
