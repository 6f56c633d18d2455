mod common;

use common::{all_sign_seqs, exp_reference, random_signs, rng};
use hyperion_core::conway::{gonshor_exp_cut, negate};
use hyperion_core::{ConwayCalculator, Rational, SignSeq};
use proptest::prelude::*;
use rand::Rng;

fn val(s: &SignSeq) -> Rational {
    s.to_dyadic().unwrap()
}

#[test]
fn arithmetic_matches_rationals_up_to_length_five() {
    let all = all_sign_seqs(5);
    let mut calc = ConwayCalculator::new();
    for a in &all {
        for b in &all {
            assert_eq!(val(&calc.add(a, b).unwrap()), val(a) + val(b), "{a} + {b}");
            assert_eq!(val(&calc.mul(a, b).unwrap()), val(a) * val(b), "{a} * {b}");
        }
    }
}

#[test]
fn distributivity_on_the_grid() {
    let all = all_sign_seqs(3);
    let mut calc = ConwayCalculator::new();
    for a in &all {
        for b in &all {
            for c in &all {
                let bc = calc.add(b, c).unwrap();
                let lhs = calc.mul(a, &bc).unwrap();
                let ab = calc.mul(a, b).unwrap();
                let ac = calc.mul(a, c).unwrap();
                assert_eq!(lhs, calc.add(&ab, &ac).unwrap());
            }
        }
    }
}

#[test]
fn negation_is_an_involution() {
    for a in all_sign_seqs(8) {
        assert_eq!(negate(&negate(&a)), a);
        assert_eq!(val(&negate(&a)), -val(&a));
    }
}

/// A cofinal thinning of the canonical options of `x`, padded with extra
/// numbers on the correct side.
fn thinned(r: &mut impl Rng, x: &SignSeq) -> (Vec<SignSeq>, Vec<SignSeq>) {
    let (l, rt) = x.canonical_options().unwrap();
    let max_l = l.iter().max_by(|a, b| a.cmp_num(b)).cloned();
    let min_r = rt.iter().min_by(|a, b| a.cmp_num(b)).cloned();
    let mut left: Vec<SignSeq> = max_l.into_iter().collect();
    let mut right: Vec<SignSeq> = min_r.into_iter().collect();
    for _ in 0..3 {
        let y = random_signs(r, 8);
        let yv = val(&y);
        if let Some(m) = left.first() {
            if yv < val(m) {
                left.push(y.clone());
            }
        }
        if let Some(m) = right.first() {
            if yv > val(m) {
                right.push(y);
            }
        }
    }
    (left, right)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn sum_is_independent_of_the_cut_presentation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_signs(&mut r, 6);
        let y = random_signs(&mut r, 6);
        let (xl, xr) = thinned(&mut r, &x);
        let (yl, yr) = thinned(&mut r, &y);
        let mut calc = ConwayCalculator::new();
        let via = calc.add_via_cuts(&x, (&xl, &xr), &y, (&yl, &yr)).unwrap();
        prop_assert_eq!(&via, &calc.add(&x, &y).unwrap());
        prop_assert_eq!(val(&via), val(&x) + val(&y));
    }
}

#[test]
fn reference_exponential() {
    let e: Rational = hyperion_core::parse_rational("2.7182818284590452353602874713526624977572470936999").unwrap();
    assert_eq!(exp_reference(&Rational::from_integer(1.into()), 50), e);
}

#[test]
fn exponential_cuts_are_nested_and_contain_exp() {
    for a in all_sign_seqs(4).iter().filter(|a| !a.is_zero()) {
        let e = exp_reference(&val(a), 50);
        let mut prev: Option<hyperion_core::RationalInterval> = None;
        for depth in 1..=8 {
            let cut = gonshor_exp_cut(a, depth).unwrap();
            assert!(cut.contains(&e), "{a} depth {depth}");
            if let Some(p) = &prev {
                assert!(p.lo <= cut.lo);
                if let (Some(ph), Some(h)) = (p.hi.finite(), cut.hi.finite()) {
                    assert!(h <= ph);
                }
            }
            prev = Some(cut);
        }
    }
}
