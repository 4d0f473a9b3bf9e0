//! `d_*X` for `X` over `B`: the bisimplicial set with rows `X^{Δ[n]}` over `B`.
//!
//! An `(m,n)`-bisimplex is a simplex `σ ∈ B_m` together with a map
//! `Δ[n] × Δ[m] -> X` lying over `σ ∘ pr2`, so column `m` is the coproduct over
//! `σ ∈ B_m` of `map_B(Δ[m], X)`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{box_product_to, build_columns, BisimplicialMap, BisimplicialSet, BoxProduct, Built, Elements};
use crate::delta::MonotoneMap;
use crate::error::Result;
use crate::sset::{
    delta_simplex_as_map, delta_simplex_from_map, product, standard, GenId, MapSearch, Product, SimplexRef, SimplicialMap,
    SimplicialSet,
};

type Elt = (SimplexRef, Vec<SimplexRef>);

/// Which product operator a reindexing table implements.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    VFace,
    VDegen,
    HFace,
    HDegen,
}

struct DStarOps<'a> {
    x: &'a SimplicialSet,
    b: &'a SimplicialSet,
    /// `(op, n, m, i)` -> generators of the source product as simplices of `Δ[n] × Δ[m]`.
    tables: HashMap<(Op, usize, usize, usize), Vec<SimplexRef>>,
}

impl DStarOps<'_> {
    fn pull(&self, key: (Op, usize, usize, usize), f: &[SimplexRef]) -> Vec<SimplexRef> {
        self.tables[&key].iter().map(|r| self.x.apply(&f[r.gen.index()], &r.deg)).collect()
    }
}

impl Elements for DStarOps<'_> {
    type T = Elt;
    fn vface(&self, m: usize, n: usize, (s, f): &Elt, j: usize) -> Elt {
        (s.clone(), self.pull((Op::VFace, n, m, j), f))
    }
    fn vdegen(&self, m: usize, n: usize, (s, f): &Elt, j: usize) -> Elt {
        (s.clone(), self.pull((Op::VDegen, n, m, j), f))
    }
    fn hface(&self, m: usize, n: usize, (s, f): &Elt, i: usize) -> Elt {
        (self.b.face(s, i), self.pull((Op::HFace, n, m, i), f))
    }
    fn hdegen(&self, m: usize, n: usize, (s, f): &Elt, i: usize) -> Elt {
        (s.degenerate(i), self.pull((Op::HDegen, n, m, i), f))
    }
}

/// `d_*X` together with its structure map to `B□1`.
#[derive(Clone, Debug)]
pub struct DStar {
    pub set: Arc<BisimplicialSet>,
    pub base: BoxProduct,
    pub to_base: BisimplicialMap,
}

/// `d_*X` with rows and columns `0..=trunc`.
pub fn d_star(p: &SimplicialMap, trunc: usize) -> Result<DStar> {
    let x = p.source();
    let b = p.target();
    b.check_level(trunc, "d_* base")?;
    let deltas: Vec<Arc<SimplicialSet>> = (0..=trunc + 1).map(|n| Arc::new(standard::simplex(n))).collect();
    // prods[n][m] = Δ[n] × Δ[m]
    let prods: Vec<Vec<Product>> = (0..=trunc + 1).map(|n| (0..=trunc + 1).map(|m| product(&deltas[n], &deltas[m])).collect()).collect();
    let reindex = |from: (usize, usize), to: (usize, usize), theta: &MonotoneMap, phi: &MonotoneMap| -> Vec<SimplexRef> {
        prods[from.0][from.1]
            .index
            .pairs
            .iter()
            .map(|(d, e)| {
                let d2 = delta_simplex_from_map(&deltas[to.0], &theta.after(&delta_simplex_as_map(&deltas[from.0], d)));
                let e2 = delta_simplex_from_map(&deltas[to.1], &phi.after(&delta_simplex_as_map(&deltas[from.1], e)));
                prods[to.0][to.1].pair(&d2, &e2)
            })
            .collect()
    };
    let mut tables = HashMap::new();
    for n in 0..=trunc {
        for m in 0..=trunc {
            let (idn, idm) = (MonotoneMap::identity(n), MonotoneMap::identity(m));
            for i in 0..=n {
                if n > 0 {
                    tables.insert((Op::VFace, n, m, i), reindex((n - 1, m), (n, m), &MonotoneMap::coface(n, i), &idm));
                }
                tables.insert((Op::VDegen, n, m, i), reindex((n + 1, m), (n, m), &MonotoneMap::codegeneracy(n, i), &idm));
            }
            for i in 0..=m {
                if m > 0 {
                    tables.insert((Op::HFace, n, m, i), reindex((n, m - 1), (n, m), &idn, &MonotoneMap::coface(m, i)));
                }
                tables.insert((Op::HDegen, n, m, i), reindex((n, m + 1), (n, m), &idn, &MonotoneMap::codegeneracy(m, i)));
            }
        }
    }
    let ops = DStarOps { x, b, tables };
    let mut levels: Vec<Vec<Vec<Elt>>> = Vec::new();
    for m in 0..=trunc {
        let mut col = Vec::new();
        for n in 0..=trunc {
            let prod = &prods[n][m];
            let mut level = Vec::new();
            for sigma in b.simplices(m) {
                let expected: Vec<SimplexRef> =
                    prod.index.pairs.iter().map(|(_, e)| b.apply(&sigma, &delta_simplex_as_map(&deltas[m], e))).collect();
                let filter = |g: GenId, c: &SimplexRef| p.image(c) == expected[g.index()];
                MapSearch::new(&prod.set, x).filter(&filter).run(|imgs| {
                    level.push((sigma.clone(), imgs.to_vec()));
                    std::ops::ControlFlow::Continue(())
                })?;
            }
            col.push(level);
        }
        levels.push(col);
    }
    let built: Built<Elt> = build_columns(&ops, levels, Some(trunc), None)?;
    let base = box_product_to(b, &deltas[0], trunc)?;
    let pt = |n: usize| deltas[0].simplices(n).remove(0);
    let to_base = base.map_from(&built, |_, n, (s, _)| (s.clone(), pt(n)))?;
    Ok(DStar { set: built.set, base, to_base })
}

#[cfg(test)]
mod tests {
    use super::super::row;
    use super::*;
    use crate::sset::{cotensor, find_isomorphism};

    #[test]
    fn point_over_point() {
        let p0 = Arc::new(standard::simplex(0));
        let d = d_star(&SimplicialMap::identity(p0.clone()), 2).unwrap();
        for n in 0..=2 {
            let r = row(&d.set, n).unwrap();
            assert_eq!(r.num_generators(), 1, "row {n}");
        }
    }

    #[test]
    fn identity_of_an_edge() {
        let d1 = Arc::new(standard::simplex(1));
        let p = SimplicialMap::identity(d1.clone());
        let d = d_star(&p, 2).unwrap();
        let c0 = d.set.column(0);
        assert_eq!(c0.counts(), vec![2]);
        for n in 0..=2 {
            let r = row(&d.set, n).unwrap();
            let c = cotensor(&Arc::new(standard::simplex(n)), &p, 2).unwrap();
            assert!(find_isomorphism(&r, &c.set).unwrap().is_some(), "row {n}");
        }
    }
}
