mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use simploc::acceptance::corpus::monos_into_quasi_categories;
use simploc::homotopy::chains::determinant;
use simploc::homotopy::{
    homology, is_L_cofinal, is_left_cofinal, is_right_cofinal, mapping_cone, normalized_chains, smith_normal_form, Budget, CofinalityMode,
    Matrix,
};
use simploc::sset::SimplicialMap;

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundaries_square_to_zero(x in common::complex(5, 3, 4)) {
        prop_assert!(normalized_chains(&x, 4).is_complex());
    }

    #[test]
    fn mapping_cones_are_complexes(x in common::complex(4, 2, 3)) {
        let id = SimplicialMap::identity(x.clone());
        prop_assert!(mapping_cone(&id, 3).is_complex());
    }

    /// Homology ranks and simplex counts have the same alternating sum.
    #[test]
    fn euler_characteristic_agrees(x in common::complex(5, 3, 4)) {
        let counts = x.counts();
        let chi: i64 = counts.iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        let h = homology(&x, counts.len());
        let betti: i64 = h.degrees.iter().enumerate().map(|(n, d)| if n % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) }).sum();
        prop_assert_eq!(chi, betti);
    }

    /// `U·A·V` is the diagonal form, with `U` and `V` unimodular.
    #[test]
    fn smith_normal_form_is_a_decomposition(rows in 1..5usize, cols in 1..5usize, seed in prop::collection::vec(-4i64..=4, 25)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
        let a = Matrix::from_rows(data.clone());
        let snf = smith_normal_form(&a, true);
        let (u, v) = (snf.u.clone().unwrap(), snf.v.clone().unwrap());
        let one = BigInt::from(1);
        let (du, dv) = (determinant(&u), determinant(&v));
        prop_assert_eq!(du.magnitude(), one.magnitude());
        prop_assert_eq!(dv.magnitude(), one.magnitude());
        let big: Vec<Vec<BigInt>> = data.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let d = matmul(&matmul(&u, &big), &v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expected = if i == j && i < snf.diagonal.len() { snf.diagonal[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(x, &expected);
            }
        }
        for w in snf.diagonal.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
    }
}

#[test]
fn l_cofinal_maps_are_left_and_right_cofinal() {
    let budget = Budget::default();
    let mut positives = 0;
    for m in monos_into_quasi_categories(8).unwrap() {
        if !is_L_cofinal(&m.value, &budget).unwrap().is_yes() {
            continue;
        }
        positives += 1;
        assert!(is_right_cofinal(&m.value, CofinalityMode::Joyal, &budget).unwrap().is_yes(), "{}", m.name);
        assert!(is_left_cofinal(&m.value, CofinalityMode::Joyal, &budget).unwrap().is_yes(), "{}", m.name);
    }
    assert!(positives > 0);
}
