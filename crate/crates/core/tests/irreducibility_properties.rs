mod common;

use common::integer_coefficient;
use proptest::prelude::*;
use yagzhev_core::irreducibility::{
    decide_coordinate, homogenized_coordinate, oracle_factor_search, theorem_check, verify_parametrization_conditions,
    FactorParametrization, TheoremOutcome, Verdict,
};
use yagzhev_core::yagzhev::{generate_isotropic_potential, generate_planted_reducible, map_from_potential, YagzhevData};
use yagzhev_core::{Degree, Monomial, Polynomial};

fn cubic(n: usize) -> impl Strategy<Value = Polynomial> {
    let monomial = prop::collection::vec(0u32..=3, n).prop_filter("cubic", |e| e.iter().sum::<u32>() == 3);
    prop::collection::vec((monomial, integer_coefficient(3)), 0..=4).prop_map(move |raw| {
        let mut p = Polynomial::zero(n);
        for (e, c) in raw {
            p = &p + &Polynomial::monomial(Monomial::new(e), c);
        }
        p
    })
}

fn random_data() -> impl Strategy<Value = (YagzhevData, usize)> {
    (1usize..=4)
        .prop_flat_map(|n| (prop::collection::vec(cubic(n), n), 0..n))
        .prop_map(|(parts, k)| (YagzhevData::new(parts).unwrap(), k))
}

fn planted_data() -> impl Strategy<Value = (YagzhevData, usize)> {
    (1usize..=4, any::<u64>())
        .prop_flat_map(|(n, seed)| (Just(n), 0..n, Just(seed)))
        .prop_map(|(n, k, seed)| (generate_planted_reducible(n, k, seed).unwrap(), k))
}

fn data() -> impl Strategy<Value = (YagzhevData, usize)> {
    prop_oneof![random_data(), planted_data()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn witnesses_multiply_back((data, k) in data()) {
        let verdict = decide_coordinate(&data, k).unwrap();
        if let Some(w) = &verdict.witness {
            prop_assert_eq!(verdict.verdict, Verdict::ReducibleWithWitness);
            prop_assert_eq!(&w.p1 * &w.p2, data.coordinate(k));
            prop_assert!(matches!(w.p1.degree(), Degree::Finite(d) if d > 0));
            prop_assert!(matches!(w.p2.degree(), Degree::Finite(d) if d > 0));
            prop_assert_eq!(
                &w.homogeneous_p1 * &w.homogeneous_p2,
                homogenized_coordinate(k, data.cubic_part(k)).unwrap()
            );
        } else {
            prop_assert!(!verdict.is_reducible());
        }
    }

    #[test]
    fn criterion_agrees_with_oracle((data, k) in data()) {
        let verdict = decide_coordinate(&data, k).unwrap();
        let found = oracle_factor_search(&data.coordinate(k), 3).unwrap();
        match verdict.verdict {
            Verdict::ReducibleWithWitness => {
                let factor = found.expect("oracle misses a planted factor");
                let g = homogenized_coordinate(k, data.cubic_part(k)).unwrap();
                prop_assert_eq!(&factor.linear * &factor.quotient, g);
            }
            Verdict::IrreducibleCubicCoordinate => prop_assert!(found.is_none()),
            Verdict::TrivialLinear => prop_assert!(found.is_some()),
        }
    }

    #[test]
    fn witnesses_satisfy_the_parametrization((data, k) in planted_data()) {
        let verdict = decide_coordinate(&data, k).unwrap();
        let param = FactorParametrization::from_witness(&verdict).expect("planted coordinate");
        prop_assert_eq!(&param.l1, &Polynomial::variable(data.arity(), k));
        let conditions = verify_parametrization_conditions(&param, k, data.cubic_part(k)).unwrap();
        prop_assert!(conditions.all_hold());
        prop_assert!(conditions.product_matches);
    }

    #[test]
    fn valid_instances_are_never_counterexamples(n in 2usize..=5, seed in any::<u64>(), richness in 1u32..=4) {
        let map = map_from_potential(&generate_isotropic_potential(n, seed, richness).unwrap());
        let report = theorem_check(&map).unwrap();
        prop_assert_eq!(report.outcome, TheoremOutcome::Verified);
    }
}
