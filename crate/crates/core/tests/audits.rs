use hyperion_core::axiom_audit::{replay, replay_with, Outcome};
use hyperion_core::hypercalc::RuleSet;
use hyperion_core::{audit, AuditConfig, AuditReport, Axiom, Ordinal};

fn cfg(samples: usize, seed: u64) -> AuditConfig {
    AuditConfig { samples, seed, ..AuditConfig::default() }
}

#[test]
fn every_axiom_passes_on_fresh_seeds() {
    for seed in [101, 202] {
        for mu in 1..=3u64 {
            let mu = Ordinal::from(mu);
            for axiom in [Axiom::FE, Axiom::A, Axiom::M, Axiom::R] {
                let r = audit(axiom, &mu, &cfg(60, seed)).unwrap();
                assert!(r.passed(), "{axiom} at {mu}: {r:?}");
            }
        }
        assert!(audit(Axiom::L0, &Ordinal::zero(), &cfg(200, seed)).unwrap().passed());
    }
}

#[test]
fn reports_round_trip_through_json() {
    let r = audit(Axiom::R, &Ordinal::from(2u64), &cfg(20, 3)).unwrap();
    let back: AuditReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn any_corrupted_shift_is_detected() {
    for k in [0, 2, 3] {
        let rules = RuleSet { fe_shift: k, ..RuleSet::default() };
        for mu in 1..=3u64 {
            let c = AuditConfig { rules: rules.clone(), ..cfg(40, 9) };
            let r = audit(Axiom::FE, &Ordinal::from(mu), &c).unwrap();
            assert_eq!(r.failures.len(), 40, "shift {k} at {mu}");
            for f in &r.failures {
                let mu = Ordinal::from(mu);
                assert_eq!(replay_with(&mu, &f.instance, &rules).unwrap(), Outcome::Fail(f.clone()));
                assert_eq!(replay(&mu, &f.instance).unwrap(), Outcome::Pass);
            }
        }
    }
}

#[test]
fn invalid_strengths_are_rejected() {
    assert!(audit(Axiom::FE, &Ordinal::omega(), &cfg(5, 0)).is_err());
    assert!(audit(Axiom::A, &Ordinal::zero(), &cfg(5, 0)).is_err());
    let deep = AuditConfig { depth_guard: 1, ..cfg(5, 0) };
    assert!(audit(Axiom::M, &"w^w".parse().unwrap(), &deep).is_err());
}
