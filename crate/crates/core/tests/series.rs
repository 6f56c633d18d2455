mod common;

use std::cmp::Ordering;

use common::{monomial, nonzero_rational, ord, rng, series};
use hyperion_core::{Monomial, Series};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn monomial_group_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (monomial(&mut r), monomial(&mut r), monomial(&mut r));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.mul(&a.inv()).is_one());
        prop_assert!(a.inv().mul(&a).is_one());
        let (p, q) = (nonzero_rational(&mut r), nonzero_rational(&mut r));
        prop_assert_eq!(a.pow(&p).pow(&q), a.pow(&(&p * &q)));
    }

    #[test]
    fn monomial_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (monomial(&mut r), monomial(&mut r));
        if a.cmp_one() == Ordering::Greater && b.cmp_one() == Ordering::Greater {
            prop_assert_eq!(a.mul(&b).cmp_one(), Ordering::Greater);
        }
        prop_assert_eq!(a.cmp(&b), a.mul(&b.inv()).cmp_one());
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        let canon = Monomial::from_pieces(a.pieces().to_vec());
        prop_assert_eq!(canon, a);
    }

    #[test]
    fn logarithm_is_a_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (monomial(&mut r), monomial(&mut r));
        if a.is_finite_support() && b.is_finite_support() {
            let lhs = a.mul(&b).log_monomial().unwrap();
            prop_assert_eq!(lhs, a.log_monomial().unwrap().add(&b.log_monomial().unwrap()));
        }
    }

    #[test]
    fn ordered_field_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g, h) = (series(&mut r), series(&mut r), series(&mut r));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
        let (fg, gh) = (f.cmp_order(&g), g.cmp_order(&h));
        prop_assert_eq!(f.add(&h).cmp_order(&g.add(&h)), fg);
        if h.sign() == Ordering::Greater {
            prop_assert_eq!(f.mul(&h).cmp_order(&g.mul(&h)), fg);
        }
        if fg == Ordering::Less && gh == Ordering::Less {
            prop_assert_eq!(f.cmp_order(&h), Ordering::Less);
        }
    }

    #[test]
    fn dominance_relations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g, h) = (series(&mut r), series(&mut r), series(&mut r));
        if f.prec(&g) && g.prec(&h) {
            prop_assert!(f.prec(&h));
        }
        if !f.is_zero() && !g.is_zero() {
            prop_assert!(f.prec(&g) ^ g.preceq(&f));
            prop_assert!(f.asymp_eq(&f));
            prop_assert_eq!(f.asymp_eq(&g), g.asymp_eq(&f));
            if f.asymp_eq(&g) && g.asymp_eq(&h) && !h.is_zero() {
                prop_assert!(f.asymp_eq(&h));
            }
        }
    }

    #[test]
    fn decomposition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = series(&mut r);
        let d = f.decompose();
        prop_assert!(d.large.terms().all(|(m, _)| m.cmp_one() == Ordering::Greater));
        prop_assert!(d.small.terms().all(|(m, _)| m.cmp_one() == Ordering::Less));
        let back = d.large.add(&Series::constant(d.constant.clone())).add(&d.small);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn truncation_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = series(&mut r);
        let g = if r.gen_bool(0.5) {
            series(&mut r)
        } else {
            let supp: Vec<&Monomial> = f.terms().map(|(m, _)| m).collect();
            match supp.get(r.gen_range(0..=supp.len())) {
                Some(m) => f.truncate_above(m),
                None => f.clone(),
            }
        };
        let below_all = f
            .terms()
            .last()
            .map_or(Monomial::one(), |(m, _)| m.mul(&Monomial::ell(&ord("0")).inv()));
        let brute = f
            .terms()
            .map(|(m, _)| m.clone())
            .chain([below_all, Monomial::one()])
            .any(|m| f.truncate_above(&m) == g);
        prop_assert_eq!(g.is_truncation_of(&f), brute);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = series(&mut r);
        prop_assert_eq!(f.to_string().parse::<Series>().unwrap(), f);
    }
}
