//! Fixed workloads shared by the benchmarks.

use hyperion_core::hypercalc::Term;
use hyperion_core::{Series, Sign, SignSeq};

/// All sign sequences of length at most `n`.
pub fn sign_seqs(n: usize) -> Vec<SignSeq> {
    let mut out = Vec::new();
    for len in 0..=n {
        for bits in 0..1u32 << len {
            let signs: Vec<Sign> = (0..len)
                .map(|i| if bits >> i & 1 == 1 { Sign::Plus } else { Sign::Minus })
                .collect();
            out.push(SignSeq::from_signs(&signs));
        }
    }
    out
}

pub fn terms() -> Vec<Term> {
    [
        "E[1](L[1](x)^2 + 3)",
        "L[w](L[1](x) - 1/2)",
        "(x^(1/2) + 3)^2",
        "E[1](3*L[w](E[1](x)))",
        "L[w^2](E[w](x) + 1)",
    ]
    .iter()
    .map(|s| s.parse().expect("fixture parses"))
    .collect()
}

pub fn series() -> Vec<Series> {
    [
        "x^3*l[1]^(1/2) - 2*x + l[2]^-1 + 7",
        "l[1]^2*l[3]^-1 + x*l[2] - 1/3",
        "x*l[1]*l[2]*l[3] + x^(1/2)",
    ]
    .iter()
    .map(|s| s.parse().expect("fixture parses"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        assert_eq!(terms().len(), 5);
        assert_eq!(series().len(), 3);
        assert_eq!(sign_seqs(3).len(), 15);
    }
}
