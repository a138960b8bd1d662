mod common;

use common::{naive_verify, vcsp_optimum};
use homlab_core::poly::{is_persistent_triple, Triple};
use homlab_core::sa::solve_sa;
use homlab_core::vcsp::{CostFunction, CrispLanguage, VcspInstance};
use homlab_core::{Budgets, ExtRational};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = VcspInstance> {
    (2usize..=3, 1usize..=4).prop_flat_map(|(d, n)| {
        let term = (1usize..=2).prop_flat_map(move |arity| {
            (
                proptest::collection::vec(0..n, arity),
                proptest::collection::vec(proptest::option::weighted(0.8, -3i64..=5), d.pow(arity as u32)),
            )
        });
        proptest::collection::vec(term, 1..=5).prop_map(move |terms| {
            let mut inst = VcspInstance::new(d, n);
            for (scope, table) in terms {
                let table = table
                    .into_iter()
                    .map(|c| c.map_or(ExtRational::Infinite, ExtRational::from_integer))
                    .collect();
                inst.add_term(scope.clone(), CostFunction::new(d, scope.len(), table).unwrap())
                    .unwrap();
            }
            inst
        })
    })
}

fn language_and_triple() -> impl Strategy<Value = (CrispLanguage, Triple)> {
    (1usize..=3).prop_flat_map(|d| {
        (
            proptest::collection::vec(proptest::collection::vec((1..=d, 1..=d), 0..=4), 1..=2),
            proptest::collection::vec(0usize..6, d * d * d),
        )
            .prop_map(move |(rels, perms)| {
                let mut lang = CrispLanguage::new(d);
                for (i, pairs) in rels.into_iter().enumerate() {
                    let mut pairs = pairs;
                    pairs.sort();
                    pairs.dedup();
                    lang.add_relation(format!("R{i}"), pairs).unwrap();
                }
                let mut k = 0;
                let f = Triple::from_fn(d, |a, b, c| {
                    let t = [a, b, c];
                    let p = homlab_core::poly::CoordinatePermutation::ALL[perms[k]];
                    k += 1;
                    p.apply(t)
                })
                .unwrap();
                (lang, f)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relaxation_never_exceeds_optimum(inst in instance()) {
        let sa = solve_sa(&inst, 2, 3, &Budgets::default()).unwrap().optimum;
        prop_assert!(sa <= vcsp_optimum(&inst));
    }

    #[test]
    fn verifier_matches_naive((lang, f) in language_and_triple()) {
        prop_assert_eq!(is_persistent_triple(&lang, &f).unwrap(), naive_verify(&lang, &f));
    }
}
