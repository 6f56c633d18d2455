//! Monotone ladder chains `E_{ω^ν}(x)` and `L_{ω^ν}(x)`.

use serde::Serialize;

use super::{cmp_terms, HypercalcError, Term, Verdict};
use crate::ordinal::Ordinal;

const MAX_NU: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub lower: String,
    pub upper: String,
    pub verdict: Verdict,
}

/// Position of a sampled term among the chain elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichResult {
    pub term: String,
    pub below: Option<String>,
    pub above: Option<String>,
    pub unknown: Vec<String>,
    /// No chain element is both below and above the term.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub nu_max: u64,
    /// `E_{ω^ν}(x)` against `E_{ω^{ν+1}}(x)`, expected `Less`.
    pub e_chain: Vec<ChainLink>,
    /// `L_{ω^ν}(x)` against `L_{ω^{ν+1}}(x)`, expected `Greater`.
    pub l_chain: Vec<ChainLink>,
    pub e_increasing: bool,
    pub l_decreasing: bool,
    pub self_equal: bool,
    pub sandwiches: Vec<SandwichResult>,
    pub unknowns: Vec<String>,
}

impl ChainReport {
    pub fn ok(&self) -> bool {
        self.e_increasing
            && self.l_decreasing
            && self.self_equal
            && self.sandwiches.iter().all(|s| s.consistent)
    }
}

fn level(nu: u64) -> Ordinal {
    Ordinal::omega_power(Ordinal::from(nu))
}

fn link(lower: &Term, upper: &Term, unknowns: &mut Vec<String>) -> ChainLink {
    let verdict = cmp_terms(lower, upper);
    if verdict == Verdict::Unknown {
        unknowns.push(format!("{lower} vs {upper}"));
    }
    ChainLink {
        lower: lower.to_string(),
        upper: upper.to_string(),
        verdict,
    }
}

/// Builds both chains for `ν ≤ nu_max` and places each of `points` between
/// chain elements.
pub fn ladder_chains(nu_max: &Ordinal, points: &[Term]) -> Result<ChainReport, HypercalcError> {
    let n = nu_max
        .to_u64()
        .filter(|n| *n <= MAX_NU)
        .ok_or_else(|| HypercalcError::DomainError(format!("chain bound {nu_max} exceeds {MAX_NU}")))?;
    let es: Vec<Term> = (0..=n).map(|nu| Term::x().apply_e(&level(nu))).collect::<Result<_, _>>()?;
    let ls: Vec<Term> = (0..=n).map(|nu| Term::x().apply_l(&level(nu))).collect::<Result<_, _>>()?;
    let mut unknowns = Vec::new();
    let e_chain: Vec<ChainLink> = es.windows(2).map(|w| link(&w[0], &w[1], &mut unknowns)).collect();
    let l_chain: Vec<ChainLink> = ls.windows(2).map(|w| link(&w[0], &w[1], &mut unknowns)).collect();
    let self_equal = es
        .iter()
        .chain(&ls)
        .all(|t| cmp_terms(t, t) == Verdict::Equal);

    // ascending: L_{ω^n}(x) < … < L_1(x) < x < E_1(x) < … < E_{ω^n}(x)
    let ladder: Vec<Term> = ls
        .iter()
        .rev()
        .cloned()
        .chain(std::iter::once(Term::x()))
        .chain(es.iter().cloned())
        .collect();
    let sandwiches = points
        .iter()
        .map(|t| sandwich(t, &ladder, &mut unknowns))
        .collect();

    Ok(ChainReport {
        nu_max: n,
        e_increasing: e_chain.iter().all(|l| l.verdict == Verdict::Less),
        l_decreasing: l_chain.iter().all(|l| l.verdict == Verdict::Greater),
        e_chain,
        l_chain,
        self_equal,
        sandwiches,
        unknowns,
    })
}

fn sandwich(t: &Term, ladder: &[Term], unknowns: &mut Vec<String>) -> SandwichResult {
    let verdicts: Vec<Verdict> = ladder.iter().map(|c| cmp_terms(t, c)).collect();
    let mut unknown = Vec::new();
    for (c, v) in ladder.iter().zip(&verdicts) {
        if *v == Verdict::Unknown {
            unknown.push(c.to_string());
            unknowns.push(format!("{t} vs {c}"));
        }
    }
    let below = verdicts
        .iter()
        .rposition(|v| matches!(v, Verdict::Greater | Verdict::Equal));
    let above = verdicts
        .iter()
        .position(|v| matches!(v, Verdict::Less | Verdict::Equal));
    // every element above the term must come after every element below it
    let last_below = verdicts.iter().rposition(|v| *v == Verdict::Greater);
    let first_above = verdicts.iter().position(|v| *v == Verdict::Less);
    let consistent = match (last_below, first_above) {
        (Some(b), Some(a)) => b < a,
        _ => true,
    };
    SandwichResult {
        term: t.to_string(),
        below: below.map(|i| ladder[i].to_string()),
        above: above.map(|i| ladder[i].to_string()),
        unknown,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_up_to_three() {
        let r = ladder_chains(&Ordinal::from(3u64), &[]).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.e_chain.len(), 3);
        assert_eq!(r.e_chain[0].lower, "E[1](x)");
        assert_eq!(r.e_chain[0].upper, "E[w](x)");
        assert_eq!(r.l_chain[0].verdict, Verdict::Greater);
        assert!(r.unknowns.is_empty());
    }

    #[test]
    fn sandwiches() {
        let pts: Vec<Term> = ["L[1](x)^2", "E[1](x) + 1", "L[w](x) - 1", "x"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let r = ladder_chains(&Ordinal::from(2u64), &pts).unwrap();
        assert!(r.ok(), "{r:?}");
        let s = &r.sandwiches;
        assert_eq!(s[0].below.as_deref(), Some("L[1](x)"));
        assert_eq!(s[0].above.as_deref(), Some("x"));
        assert_eq!(s[1].below.as_deref(), Some("E[1](x)"));
        assert_eq!(s[1].above.as_deref(), Some("E[w](x)"));
        assert_eq!(s[2].below.as_deref(), Some("L[w^2](x)"));
        assert_eq!(s[2].above.as_deref(), Some("L[w](x)"));
        assert_eq!(s[3].below.as_deref(), Some("x"));
        assert_eq!(s[3].above.as_deref(), Some("x"));
    }

    #[test]
    fn bound_is_checked() {
        assert!(ladder_chains(&Ordinal::omega(), &[]).is_err());
    }
}
