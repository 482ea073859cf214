mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use ontolabel::{
    check_axiom, enumerate_systems, infer_scales, theorem_macro_distinct, theorem_unitary_x_micro,
    validate, AxiomId, CandidateLabel, CandidateParticle, CandidateSystem, Rational, Scale,
};
use proptest::prelude::*;

use common::{normalize, oracle_axiom};

fn arb_candidate() -> impl Strategy<Value = CandidateSystem> {
    let labels = prop::collection::vec((0usize..6, 0i64..3), 0..5).prop_map(|raw| {
        raw.into_iter()
            .enumerate()
            .map(|(k, (jitter, v))| CandidateLabel {
                // Mostly 1..=n in order, sometimes off.
                index: if jitter < 4 { k + 1 } else { jitter },
                value: Rational::from_integer(BigInt::from(v)),
            })
            .collect::<Vec<_>>()
    });
    let states = prop::sample::subsequence(vec!["a", "b", "c"], 0..=3);
    let particles = prop::collection::vec(
        (
            prop::sample::select(vec!["a", "b", "c", "d"]),
            1usize..6,
            any::<bool>(),
            any::<bool>(),
        ),
        0..6,
    );
    (labels, states, particles).prop_map(|(labels, states, particles)| CandidateSystem {
        labels,
        states: states.into_iter().map(String::from).collect(),
        particles: particles
            .into_iter()
            .enumerate()
            .map(|(k, (state, label, micro, macro_))| CandidateParticle {
                name: format!("p{}", k + 1),
                state: state.to_string(),
                label,
                micro,
                macro_,
            })
            .collect(),
    })
}

fn checker_witnesses(c: &CandidateSystem, a: AxiomId) -> (bool, BTreeSet<ontolabel::Witness>) {
    let r = check_axiom(c, a);
    (r.holds, r.witnesses.iter().map(normalize).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn checker_agrees_with_oracle_on_random_candidates(c in arb_candidate()) {
        for a in AxiomId::ALL {
            let (holds, got) = checker_witnesses(&c, a);
            let expected = oracle_axiom(&c, a);
            prop_assert_eq!(holds, expected.is_empty(), "{}", a);
            prop_assert_eq!(got, expected, "{}", a);
        }
    }

    #[test]
    fn validate_succeeds_iff_all_axioms_hold(c in arb_candidate()) {
        let all_hold = AxiomId::ALL.iter().all(|&a| check_axiom(&c, a).holds);
        prop_assert_eq!(validate(&c).is_ok(), all_hold);
    }

    #[test]
    fn infer_scales_is_idempotent(c in arb_candidate()) {
        let once = infer_scales(&c);
        prop_assert_eq!(infer_scales(&once), once);
    }

    #[test]
    fn report_witnesses_are_empty_iff_holds(c in arb_candidate()) {
        for a in AxiomId::ALL {
            let r = check_axiom(&c, a);
            prop_assert_eq!(r.holds, r.witnesses.is_empty());
        }
    }
}

#[test]
fn valid_systems_have_identity_onto_matrix() {
    for c in enumerate_systems(3, 2).unwrap() {
        let Ok(s) = validate(&c) else { continue };
        let (onto, phys) = s.identity_matrices();
        let n = s.particle_count();
        assert_eq!(n, s.n());
        let values: BTreeSet<_> = s.labels().iter().map(|l| l.value().clone()).collect();
        assert_eq!(values.len(), n);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(onto[i][j], i == j);
                assert_eq!(phys[i][j], phys[j][i]);
                // ≡ refines ≐.
                assert!(!onto[i][j] || phys[i][j]);
            }
            assert!(phys[i][i]);
        }
    }
}

#[test]
fn theorems_hold_on_exhaustive_small_universe() {
    let mut validated = 0;
    let mut unitary = 0;
    for c in enumerate_systems(4, 3).unwrap() {
        let Ok(s) = validate(&c) else { continue };
        validated += 1;
        let outcome = theorem_macro_distinct(&s);
        assert!(outcome.holds && outcome.witnesses.is_empty());
        if s.states().len() == 1 && s.n() >= 2 {
            unitary += 1;
            assert_eq!(theorem_unitary_x_micro(&s), Ok(true));
            assert!(s.particles().iter().all(|p| p.scale() == Scale::Micro));
        }
    }
    assert!(validated > 0 && unitary > 0);
}

#[test]
fn inference_then_validation_on_stream() {
    // After inference, any remaining D6 failure needs a macro particle.
    for c in enumerate_systems(3, 2).unwrap() {
        let inferred = infer_scales(&c);
        let r = check_axiom(&inferred, AxiomId::D6);
        if !r.holds {
            assert!(inferred.particles.iter().any(|p| p.macro_));
        }
    }
}
