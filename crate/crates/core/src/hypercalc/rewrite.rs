//! The rewrite system on ladder words.
//!
//! Rules (`μ⁻` is the predecessor of a successor `μ`; `k` is the rule set's
//! `fe_shift`, normally 1):
//!
//! * R1 `L_γ → L_{ω^{η_r}}^{n_r} ∘ … ∘ L_{ω^{η_1}}^{n_1}` for `γ = Σ ω^{η_j} n_j`
//! * R2 `L_{ω^μ} L_{ω^{μ⁻}} → T_{-k} L_{ω^μ}`
//! * R3 `E_{ω^μ} T_c → E_{ω^{μ⁻}} E_{ω^μ} T_{c-1}` for `c >= 1`, and
//!   `E_{ω^μ} T_c → L_{ω^{μ⁻}} E_{ω^μ} T_{c+1}` for `c < 0`; the shift left
//!   under `E_{ω^μ}` ends up in `[0, 1)`
//! * R4 `L_β E_β → id`, `E_β L_β → id`
//! * R5 folding of `T∘T`, `H∘H`, `P∘P` and removal of identities
//! * R6 `L_{ω^μ} T_{∓n} L_{ω^{μ⁻}} → T_{-k} L_{ω^μ} L_{ω^{μ⁻⁻}}^n` (resp. `E^n`)
//!   for successor `μ⁻`, the joint of two overlapping R2 redexes.
//! * R7 `L_{ω^μ} E_{ω^{μ⁻⁻}}^n E_{ω^{μ⁻}} → T_k L_{ω^μ} T_n` (resp. `L^n`, `T_{-n}`),
//!   the dual of R2 together with its overlaps with R3; `n = 0` is the plain
//!   dual `L_{ω^μ} E_{ω^{μ⁻}} → T_k L_{ω^μ}`.

use rand::Rng;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ordinal::{Ordinal, OrdinalKind};
use crate::text::Rational;

use super::term::{Gen, Term};
use super::HypercalcError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    /// Constant removed by one application of the functional equation.
    pub fe_shift: i64,
    /// Maximum number of rewrite steps before giving up.
    pub step_guard: usize,
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet {
            fe_shift: 1,
            step_guard: 100_000,
        }
    }
}

fn pred(mu: &Ordinal) -> Option<Ordinal> {
    match mu.pred_info() {
        (OrdinalKind::Successor, p) => Some(p),
        _ => None,
    }
}

fn is_pred(p: &Ordinal, mu: &Ordinal) -> bool {
    mu.is_successor() && &p.succ() == mu
}

fn small_int(c: &Rational) -> Option<i64> {
    if c.is_integer() {
        c.to_integer().to_i64().filter(|n| n.abs() <= 1 << 20)
    } else {
        None
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Matches `L_{ω^μ} G^n E_{ω^{μ⁻}}` at `pos`, where `G` is `E_{ω^{μ⁻⁻}}`
/// (sign +1) or `L_{ω^{μ⁻⁻}}` (sign -1). Returns `(n, sign)`.
fn dual_fe_span(w: &[Gen], pos: usize, mu: &Ordinal) -> Option<(usize, i64)> {
    let p = pred(mu)?;
    let run_gen = w.get(pos + 1)?;
    let (n, sign) = match (run_gen, pred(&p)) {
        (Gen::E(q), Some(pp)) | (Gen::L(q), Some(pp)) if *q == pp => {
            let n = w[pos + 1..].iter().take_while(|g| *g == run_gen).count();
            (n, if matches!(run_gen, Gen::E(_)) { 1 } else { -1 })
        }
        _ => (0, 1),
    };
    match w.get(pos + 1 + n) {
        Some(Gen::E(q)) if *q == p => Some((n, sign)),
        _ => None,
    }
}

/// `L_γ` as an outer-to-inner word over `L_{ω^η}`.
pub fn expand_l_gamma(gamma: &Ordinal) -> Vec<Gen> {
    let mut out = Vec::new();
    for t in gamma.terms().iter().rev() {
        let n = t.coefficient.to_usize().expect("coefficient fits in memory");
        out.extend(std::iter::repeat(Gen::L(t.exponent.clone())).take(n));
    }
    out
}

impl RuleSet {
    /// Rule applicable at `pos` (rules are tried in a fixed order).
    fn rule_at(&self, w: &[Gen], pos: usize) -> Option<Rule> {
        let a = &w[pos];
        let b = w.get(pos + 1);
        let c = w.get(pos + 2);
        match a {
            Gen::LGamma(_) => return Some(Rule::R1),
            Gen::Shift(x) if x.is_zero() => return Some(Rule::R5),
            Gen::Scale(x) | Gen::Power(x) if x.is_one() => return Some(Rule::R5),
            _ => {}
        }
        match (a, b) {
            (Gen::L(m), Some(Gen::L(p))) if is_pred(p, m) => Some(Rule::R2),
            (Gen::L(m), Some(_)) if dual_fe_span(w, pos, m).is_some() => Some(Rule::R7),
            (Gen::L(m), Some(Gen::E(p))) | (Gen::E(m), Some(Gen::L(p))) if m == p => {
                Some(Rule::R4)
            }
            (Gen::Shift(_), Some(Gen::Shift(_)))
            | (Gen::Scale(_), Some(Gen::Scale(_)))
            | (Gen::Power(_), Some(Gen::Power(_))) => Some(Rule::R5),
            (Gen::E(m), Some(Gen::Shift(x)))
                if m.is_successor()
                    && (*x >= Rational::one() || x.is_negative())
                    && !matches!(c, Some(Gen::Shift(_))) =>
            {
                Some(Rule::R3)
            }
            (Gen::L(m), Some(Gen::Shift(x))) => match c {
                Some(Gen::L(p))
                    if is_pred(p, m) && p.is_successor() && small_int(x).is_some() =>
                {
                    Some(Rule::R6)
                }
                _ => None,
            },
            _ => None,
        }
    }

    pub fn redexes(&self, w: &[Gen]) -> Vec<(usize, Rule)> {
        (0..w.len())
            .filter_map(|i| self.rule_at(w, i).map(|r| (i, r)))
            .collect()
    }

    fn apply(&self, w: &mut Vec<Gen>, pos: usize, rule: Rule) {
        let k = rat(self.fe_shift);
        let replacement: (usize, Vec<Gen>) = match rule {
            Rule::R1 => {
                let Gen::LGamma(g) = &w[pos] else { unreachable!() };
                (1, expand_l_gamma(g))
            }
            Rule::R2 => {
                let Gen::L(m) = &w[pos] else { unreachable!() };
                (2, vec![Gen::Shift(-k), Gen::L(m.clone())])
            }
            Rule::R3 => {
                let (Gen::E(m), Gen::Shift(x)) = (&w[pos], &w[pos + 1]) else { unreachable!() };
                let p = pred(m).unwrap();
                if x.is_positive() {
                    (2, vec![Gen::E(p), Gen::E(m.clone()), Gen::Shift(x - Rational::one())])
                } else {
                    (2, vec![Gen::L(p), Gen::E(m.clone()), Gen::Shift(x + Rational::one())])
                }
            }
            Rule::R4 => (2, vec![]),
            Rule::R7 => {
                let Gen::L(m) = &w[pos] else { unreachable!() };
                let (n, sign) = dual_fe_span(w, pos, m).unwrap();
                let mut r = vec![Gen::Shift(k), Gen::L(m.clone())];
                if n > 0 {
                    r.push(Gen::Shift(rat(sign * n as i64)));
                }
                (n + 2, r)
            }
            Rule::R5 => match (&w[pos], w.get(pos + 1)) {
                (Gen::Shift(x), _) if x.is_zero() => (1, vec![]),
                (Gen::Scale(x), _) | (Gen::Power(x), _) if x.is_one() => (1, vec![]),
                (Gen::Shift(x), Some(Gen::Shift(y))) => (2, vec![Gen::Shift(x + y)]),
                (Gen::Scale(x), Some(Gen::Scale(y))) => (2, vec![Gen::Scale(x * y)]),
                (Gen::Power(x), Some(Gen::Power(y))) => (2, vec![Gen::Power(x * y)]),
                _ => unreachable!(),
            },
            Rule::R6 => {
                let (Gen::L(m), Gen::Shift(x), Gen::L(p)) = (&w[pos], &w[pos + 1], &w[pos + 2])
                else {
                    unreachable!()
                };
                let n = small_int(x).unwrap();
                let pp = pred(p).unwrap();
                let g = if n < 0 { Gen::L(pp) } else { Gen::E(pp) };
                let mut r = vec![Gen::Shift(-k), Gen::L(m.clone())];
                r.extend(std::iter::repeat(g).take(n.unsigned_abs() as usize));
                (3, r)
            }
        };
        w.splice(pos..pos + replacement.0, replacement.1);
    }

    /// Rewrites to normal form, always reducing the outermost redex first.
    pub fn normalize(&self, t: &Term) -> Result<Term, HypercalcError> {
        let mut w = t.word().to_vec();
        let mut steps = 0;
        loop {
            let next = (0..w.len()).find_map(|i| self.rule_at(&w, i).map(|r| (i, r)));
            let Some((pos, rule)) = next else {
                return Ok(Term::from_word_unchecked(w));
            };
            steps += 1;
            if steps > self.step_guard {
                return Err(HypercalcError::DepthExceeded { steps });
            }
            self.apply(&mut w, pos, rule);
        }
    }

    /// Rewrites to normal form choosing a uniformly random redex each step.
    pub fn normalize_randomized<R: Rng>(&self, t: &Term, rng: &mut R) -> Result<Term, HypercalcError> {
        let mut w = t.word().to_vec();
        for _ in 0..self.step_guard {
            let rs = self.redexes(&w);
            if rs.is_empty() {
                return Ok(Term::from_word_unchecked(w));
            }
            let (pos, rule) = rs[rng.gen_range(0..rs.len())];
            self.apply(&mut w, pos, rule);
        }
        Err(HypercalcError::DepthExceeded {
            steps: self.step_guard,
        })
    }

    /// One rewrite step at the given redex; for exhaustive exploration.
    pub fn step(&self, t: &Term, pos: usize) -> Option<Term> {
        let mut w = t.word().to_vec();
        let rule = self.rule_at(&w, pos)?;
        self.apply(&mut w, pos, rule);
        Some(Term::from_word_unchecked(w))
    }

    pub fn is_normal(&self, t: &Term) -> bool {
        self.redexes(t.word()).is_empty()
    }
}

pub fn normalize(t: &Term) -> Result<Term, HypercalcError> {
    RuleSet::default().normalize(t)
}
