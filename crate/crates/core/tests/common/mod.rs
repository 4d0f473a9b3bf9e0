#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use simploc::sset::standard::ordered_complex;
use simploc::sset::SimplicialSet;

/// Ordered simplicial complexes on the vertices `0..vertices`, spanned by at most
/// `faces` faces of dimension at most `max_dim`.
pub fn complex(vertices: usize, max_dim: usize, faces: usize) -> impl Strategy<Value = Arc<SimplicialSet>> {
    prop::collection::vec(prop::collection::btree_set(0..vertices, 1..=max_dim + 1), 1..=faces)
        .prop_map(|fs| Arc::new(ordered_complex(fs.into_iter().map(|f| f.into_iter().collect())).expect("valid complex")))
}

/// Nonempty subsets of the generators of `Δ[n]`-sized sets, as index masks.
pub fn mask(bits: usize) -> impl Strategy<Value = u64> {
    1u64..(1u64 << bits)
}
