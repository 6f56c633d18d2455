//! The derivation `∂` on finite-support series.

use thiserror::Error;

use crate::lhm::Monomial;
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("cannot differentiate {0}: its support is infinite")]
    InfiniteSupportDerivative(String),
}

/// `∂𝔩 = (Σ_γ 𝔩_γ ℓ_γ†) 𝔩`.
pub fn derive_monomial(m: &Monomial) -> Result<Series, DerivationError> {
    let points = m
        .support_points()
        .map_err(|_| DerivationError::InfiniteSupportDerivative(m.to_string()))?;
    let mut out = Series::zero();
    for (gamma, e) in points {
        out = out.add(&Series::term(e, Monomial::dagger(&gamma).mul(m)));
    }
    Ok(out)
}

pub fn derive(f: &Series) -> Result<Series, DerivationError> {
    let mut out = Series::zero();
    for (m, c) in f.terms() {
        out = out.add(&derive_monomial(m)?.scale(c));
    }
    Ok(out)
}

/// `f^{(k)}`.
pub fn derive_k(f: &Series, k: u32) -> Result<Series, DerivationError> {
    let mut out = f.clone();
    for _ in 0..k {
        out = derive(&out)?;
    }
    Ok(out)
}
