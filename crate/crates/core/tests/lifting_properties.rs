mod common;

use std::sync::Arc;

use proptest::prelude::*;
use simploc::acceptance::corpus::{elements, functors, left_fibrations_over_simplex, subcomplexes};
use simploc::lifting::{bounded_factorization, classify_fibration, has_rlp, replay, FamilyKind, FibrationKind, GeneratingFamily};
use simploc::sset::standard::{generalized_horn, horn, simplex, spine};
use simploc::sset::SimplicialMap;
use simploc::Witness;

const KINDS: [FibrationKind; 5] = [FibrationKind::Left, FibrationKind::Right, FibrationKind::Inner, FibrationKind::Kan, FibrationKind::Trivial];

/// A category of elements over `Δ[1]` or `Δ[2]`, or an inclusion into `Δ[2]`.
fn test_map() -> impl Strategy<Value = SimplicialMap> {
    let over1 = functors(1, 2);
    let over2 = functors(2, 1);
    let subs = subcomplexes(&Arc::new(simplex(2)));
    prop_oneof![
        prop::sample::select(over1).prop_map(|f| elements(&f).unwrap()),
        prop::sample::select(over2).prop_map(|f| elements(&f).unwrap()),
        prop::sample::select(subs),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn certificates_replay(p in test_map(), kind in prop::sample::select(KINDS.to_vec())) {
        let fam = kind.family(3);
        let v = classify_fibration(&p, kind, 3).unwrap();
        prop_assert!(!v.is_inconclusive());
        prop_assert!(replay(&p, &fam, &v).unwrap(), "{}", v);
    }

    #[test]
    fn failures_persist_at_higher_bounds(p in test_map(), kind in prop::sample::select(KINDS.to_vec()), d in 1..3usize) {
        let low = has_rlp(&p, &kind.family(d)).unwrap();
        if let Witness::Unfillable(prob) = &low.witness {
            let high = has_rlp(&p, &kind.family(d + 1)).unwrap();
            prop_assert!(high.is_no());
            match &high.witness {
                Witness::Unfillable(prob2) => prop_assert_eq!(prob, prob2),
                other => prop_assert!(false, "{other:?}"),
            }
        }
    }

    #[test]
    fn factorizations_compose_to_the_map(u in test_map(), bound in 1..3usize, cells in 0..12usize) {
        let f = bounded_factorization(&u, &GeneratingFamily::left_horns(bound), cells).unwrap();
        prop_assert!(f.right.after(&f.left).unwrap().same_as(&u));
        prop_assert!(f.cells.len() <= cells);
    }
}

/// `v` with `u` and `v ∘ u` left anodyne; left fibrations lift against `v`.
#[test]
fn right_cancellation_instances() {
    let cases = [
        ("Λ^0[2] ⊂ Δ[2]", horn(2, 0).unwrap().1),
        ("I_2 ⊂ Δ[2]", spine(2).unwrap().1),
        ("I_3 ⊂ Δ[3]", spine(3).unwrap().1),
        ("Λ^{0,1}[3] ⊂ Δ[3]", generalized_horn(3, &[0, 1]).unwrap().1),
    ];
    let mut fibrations = vec![];
    for n in 0..=2 {
        fibrations.extend(left_fibrations_over_simplex(n, 2, 12).unwrap());
    }
    for (name, v) in &cases {
        let fam = GeneratingFamily::new(FamilyKind::Custom(vec![(name.to_string(), v.clone())]), 3);
        for p in &fibrations {
            let r = has_rlp(&p.value, &fam).unwrap();
            assert!(r.is_yes(), "{} against {name}: {r}", p.name);
        }
    }
}
