mod common;

use std::sync::Arc;

use proptest::prelude::*;
use simploc::delta::MonotoneMap;
use simploc::lifting::is_left_fibration;
use simploc::acceptance::corpus::quasi_category_targets;
use simploc::sset::standard::simplex;
use simploc::sset::{hom_enumerate, mapping_space, opposite, product, find_isomorphism, slice, SliceSide};

fn monotone(cod: usize) -> impl Strategy<Value = MonotoneMap> {
    (0..=3usize).prop_flat_map(move |dom| prop::collection::vec(0..=cod, dom + 1)).prop_map(move |mut v| {
        v.sort();
        MonotoneMap::new(cod, v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Operators act compatibly with composition on normal forms.
    #[test]
    fn operators_compose(x in common::complex(4, 2, 4), pick in any::<prop::sample::Index>(), f in monotone(2), g_seed in any::<u64>()) {
        let simplices: Vec<_> = (0..=x.dim().unwrap()).flat_map(|n| x.simplices(n)).collect();
        let s = pick.get(&simplices).clone();
        let n = s.dim();
        // f: [m] -> [n], g: [k] -> [m]
        let f = MonotoneMap::new(n, f.values().map(|v| v.min(n)).collect::<Vec<_>>()).unwrap();
        let m = f.dom();
        let k = (g_seed % 3) as usize;
        let mut gv: Vec<usize> = (0..=k).map(|i| ((g_seed >> (8 * i)) as usize) % (m + 1)).collect();
        gv.sort();
        let g = MonotoneMap::new(m, gv).unwrap();
        let lhs = x.apply(&x.apply(&s, &f), &g);
        let rhs = x.apply(&s, &f.after(&g));
        prop_assert_eq!(lhs.clone(), rhs);
        // normal forms are fixed points
        prop_assert_eq!(x.apply(&lhs, &MonotoneMap::identity(lhs.dim())), lhs);
    }

    /// The opposite is an involution.
    #[test]
    fn opposite_is_involutive(x in common::complex(4, 2, 4)) {
        let xx = Arc::new(opposite(&opposite(&x)));
        prop_assert!(find_isomorphism(&xx, &x).unwrap().is_some());
    }

    /// `Hom(K × L, X) ≅ Hom(K, map(L, X))` at the level of counts.
    #[test]
    fn product_mapping_space_adjunction(k in common::complex(2, 1, 2), l in common::complex(2, 1, 2), x in common::complex(3, 2, 2)) {
        let trunc = k.dim().unwrap().max(1);
        let kl = product(&k, &l);
        let lhs = hom_enumerate(&kl.set, &x, None).unwrap().maps.len();
        let m = mapping_space(&l, &x, trunc).unwrap();
        let rhs = hom_enumerate(&k, &m.set, None).unwrap().maps.len();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn under_slices_of_quasi_categories_are_left_fibrations() {
    for t in quasi_category_targets().unwrap() {
        for v in t.value.vertices() {
            let s = slice(&t.value, v, SliceSide::Under).unwrap();
            assert!(is_left_fibration(&s.projection, 3).unwrap().is_yes(), "{} at {v:?}", t.name);
        }
    }
    let d3 = Arc::new(simplex(3));
    for v in d3.vertices() {
        let s = slice(&d3, v, SliceSide::Under).unwrap();
        assert!(is_left_fibration(&s.projection, 3).unwrap().is_yes());
    }
}
