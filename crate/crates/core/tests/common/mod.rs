//! Shared random generators and oracles for the integration tests.
#![allow(dead_code)]

use hyperion_core::hypercalc::{Gen, Term};
use hyperion_core::ordinal::CnfTerm;
use hyperion_core::{Monomial, Ordinal, Rational, Series, Sign, SignSeq};
use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ord(s: &str) -> Ordinal {
    s.parse().unwrap()
}

/// Nonzero ordinal below `ω^max_exp` with finite exponents.
pub fn ordinal_below(rng: &mut impl Rng, max_exp: u64, max_coeff: u32) -> Ordinal {
    let mut exps: Vec<u64> = (0..max_exp).filter(|_| rng.gen_bool(0.5)).collect();
    if exps.is_empty() {
        exps.push(rng.gen_range(0..max_exp));
    }
    exps.reverse();
    Ordinal::from_terms(
        exps.into_iter()
            .map(|e| CnfTerm {
                exponent: Ordinal::from(e),
                coefficient: BigUint::from(rng.gen_range(1..=max_coeff)),
            })
            .collect(),
    )
}

/// Possibly zero ordinal below `ω^ω`.
pub fn ordinal_omega_omega(rng: &mut impl Rng) -> Ordinal {
    if rng.gen_bool(0.1) {
        return Ordinal::zero();
    }
    ordinal_below(rng, 5, 4)
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(-4i64..=4);
    let n = if n == 0 { 1 } else { n };
    q(n, rng.gen_range(1..=3))
}

/// Finite-support monomial built from a few `ℓ_γ^q`.
pub fn finite_monomial(rng: &mut impl Rng) -> Monomial {
    monomial_over(rng, &["0", "1", "2", "w", "w+1", "w*2", "w^2", "w^2+3"])
}

/// Monomial in `ℓ_0, …, ℓ_3`, closed under repeated differentiation.
pub fn level0_monomial(rng: &mut impl Rng) -> Monomial {
    monomial_over(rng, &["0", "1", "2", "3"])
}

fn monomial_over(rng: &mut impl Rng, pts: &[&str]) -> Monomial {
    (0..rng.gen_range(0..=3)).fold(Monomial::one(), |m, _| {
        let g = ord(pts.choose(rng).unwrap());
        m.mul(&Monomial::ell(&g).pow(&small_rational(rng)))
    })
}

/// Monomial that may carry transfinite intervals.
pub fn monomial(rng: &mut impl Rng) -> Monomial {
    let m = finite_monomial(rng);
    if rng.gen_bool(0.4) {
        let bounds = ["0", "1", "w", "w+2", "w*2", "w^2", "w^3"];
        let mut a = ord(bounds.choose(rng).unwrap());
        let mut b = ord(bounds.choose(rng).unwrap());
        if b < a {
            std::mem::swap(&mut a, &mut b);
        }
        m.mul(&Monomial::interval(&a, &b, small_rational(rng)))
    } else {
        m
    }
}

/// Series with up to `n` terms over the given monomial generator.
pub fn series_with(rng: &mut impl Rng, n: usize, mono: fn(&mut ChaCha8Rng) -> Monomial) -> Series {
    let mut r = ChaCha8Rng::seed_from_u64(rng.gen());
    (0..rng.gen_range(0..=n)).fold(Series::zero(), |s, _| {
        let c = small_rational(&mut r);
        s.add(&Series::term(c, mono(&mut r)))
    })
}

pub fn finite_series(rng: &mut impl Rng) -> Series {
    series_with(rng, 4, |r| finite_monomial(r))
}

pub fn level0_series(rng: &mut impl Rng) -> Series {
    series_with(rng, 3, |r| level0_monomial(r))
}

pub fn series(rng: &mut impl Rng) -> Series {
    series_with(rng, 4, |r| monomial(r))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    small_rational(rng)
}

/// All finite sign sequences of length at most `n`.
pub fn all_sign_seqs(n: usize) -> Vec<SignSeq> {
    let mut out = vec![SignSeq::zero()];
    let mut layer = vec![Vec::<Sign>::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for w in &layer {
            for s in [Sign::Minus, Sign::Plus] {
                let mut v = w.clone();
                v.push(s);
                out.push(SignSeq::from_signs(&v));
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

pub fn random_signs(rng: &mut impl Rng, max_len: usize) -> SignSeq {
    let n = rng.gen_range(0..=max_len);
    let v: Vec<Sign> = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
        .collect();
    SignSeq::from_signs(&v)
}

/// Generator over the full ladder alphabet.
pub fn gen(rng: &mut impl Rng) -> Gen {
    let strengths = ["0", "0", "1", "2", "w"];
    let mu = ord(strengths.choose(rng).unwrap());
    match rng.gen_range(0..8) {
        0 | 1 => Gen::L(mu),
        2 | 3 => Gen::E(mu),
        4 => Gen::Shift([q(-2, 1), q(-1, 1), q(1, 1), q(2, 1), q(1, 2), q(-3, 2)].choose(rng).unwrap().clone()),
        5 => Gen::Scale([q(1, 2), q(2, 1), q(3, 1)].choose(rng).unwrap().clone()),
        6 => Gen::Power([q(1, 2), q(2, 1), q(3, 1)].choose(rng).unwrap().clone()),
        _ => Gen::LGamma(ord(["2", "3", "w+1", "w*2", "w^2+w"].choose(rng).unwrap())),
    }
}

pub fn term(rng: &mut impl Rng, max_len: usize) -> Term {
    let n = rng.gen_range(1..=max_len);
    Term::from_word((0..n).map(|_| gen(rng)).collect()).unwrap()
}

/// Generator over the finite-level alphabet (logarithm, exponential, affine
/// maps and powers).
pub fn finite_gen(rng: &mut impl Rng) -> Gen {
    match rng.gen_range(0..5) {
        0 => Gen::L(Ordinal::zero()),
        1 => Gen::E(Ordinal::zero()),
        2 => Gen::Shift([q(-2, 1), q(-1, 1), q(1, 1), q(2, 1), q(1, 2), q(-1, 2)].choose(rng).unwrap().clone()),
        3 => Gen::Scale([q(1, 2), q(2, 1), q(3, 1)].choose(rng).unwrap().clone()),
        _ => Gen::Power([q(1, 2), q(2, 1), q(3, 1)].choose(rng).unwrap().clone()),
    }
}

pub fn finite_term(rng: &mut impl Rng, max_len: usize) -> Term {
    let n = rng.gen_range(1..=max_len);
    Term::from_word((0..n).map(|_| finite_gen(rng)).collect()).unwrap()
}

/// `e^a` rounded to `digits` significant decimal digits, computed with
/// binary floating point independently of the exact kernel.
pub fn exp_reference(a: &Rational, digits: usize) -> Rational {
    use astro_float::{BigFloat, Consts, Radix, RoundingMode};
    let rm = RoundingMode::ToEven;
    let p = 512;
    let mut cc = Consts::new().unwrap();
    let n = BigFloat::parse(&a.numer().to_string(), Radix::Dec, p, rm, &mut cc);
    let d = BigFloat::parse(&a.denom().to_string(), Radix::Dec, p, rm, &mut cc);
    let e = n.div(&d, p, rm).exp(p, rm, &mut cc);
    let s = e.format(Radix::Dec, rm, &mut cc).unwrap();
    let (mant, exp) = s.split_once('e').unwrap();
    let exp: i64 = exp.trim_start_matches('+').parse().unwrap();
    let digits_only: String = mant.chars().filter(|c| c.is_ascii_digit()).take(digits).collect();
    // mantissa is d.ddd, so the value is 0.dddd * 10^(exp + 1)
    let int: BigInt = digits_only.parse().unwrap();
    let shift = exp + 1 - digits_only.len() as i64;
    let ten = BigInt::from(10);
    if shift >= 0 {
        Rational::from_integer(int * ten.pow(shift as u32))
    } else {
        Rational::new(int, ten.pow((-shift) as u32))
    }
}
