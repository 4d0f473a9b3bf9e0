//! Horizontal Reedy left fibrations and their strong variant.
//!
//! A lifting problem of `∂Δ[m]□Δ[n] ∪ Δ[m]□Λᵏ[n] ⊂ Δ[m,n]` against `p: X -> Y`
//! is the same as a lifting problem of `Λᵏ[n] ⊂ Δ[n]` against the relative
//! matching map `X_{m*} -> ∂Δ[m]\X ×_{∂Δ[m]\Y} Y_{m*}`, so the checks run the
//! simplicial lifting search on those maps instead of on the cells themselves.

use std::sync::Arc;

use super::{backslash, backslash_map, box_product_filtered, column_restriction, BisimplicialMap};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::lifting::{classify_fibration, FibrationKind};
use crate::sset::{delta_simplex_as_map, pullback, standard, SimplicialMap};
use crate::verdict::{Verdict, Witness};

/// The cell `∂Δ[m]□Δ[n] ∪ Δ[m]□Λᵏ[n] -> Δ[m,n]`, with columns up to `m + n`.
pub fn generating_cell(m: usize, n: usize, k: usize) -> Result<BisimplicialMap> {
    if n == 0 || k > n {
        return Err(Error::OutOfRange(format!("no horn Λ^{k}[{n}]")));
    }
    let dm = Arc::new(standard::simplex(m));
    let dn = Arc::new(standard::simplex(n));
    let vertices = |d: &crate::sset::SimplicialSet, s: &crate::sset::SimplexRef| -> Vec<usize> {
        let mut vs: Vec<usize> = delta_simplex_as_map(d, s).values().collect();
        vs.dedup();
        vs
    };
    let in_boundary = |a: &crate::sset::SimplexRef| vertices(&dm, a).len() < m + 1;
    let in_horn = |b: &crate::sset::SimplexRef| {
        let mut vs = vertices(&dn, b);
        vs.push(k);
        vs.sort_unstable();
        vs.dedup();
        vs.len() < n + 1
    };
    let top = m + n;
    let sub = box_product_filtered(&dm, &dn, top, |a, b| in_boundary(a) || in_horn(b))?;
    let full = box_product_filtered(&dm, &dn, top, |_, _| true)?;
    full.map_from(&sub.built, |_, _, e| e.clone())
}

/// `X_{m*} -> ∂Δ[m]\X ×_{∂Δ[m]\Y} Y_{m*}`, with the matching objects computed to level `bound`.
pub fn matching_comparison(p: &BisimplicialMap, m: usize, bound: usize) -> Result<SimplicialMap> {
    if m == 0 {
        return Ok(p.column(0).clone());
    }
    let (x, y) = (p.source(), p.target());
    let (bd, i) = standard::boundary(m)?;
    let mx = backslash(x, &bd, bound)?;
    let my = backslash(y, &bd, bound)?;
    let mp = backslash_map(p, &mx, &my)?;
    let rx = column_restriction(x, m, &i, &mx)?;
    let ry = column_restriction(y, m, &i, &my)?;
    let pb = pullback(&mp, &ry);
    pb.lift(&rx, p.column(m))
}

fn check_bounds(p: &BisimplicialMap, bound: usize) -> Result<()> {
    for z in [p.source(), p.target()] {
        if z.h_top() < bound {
            return Err(Error::Truncation(format!("bound {bound} needs columns up to {bound}, have 0..={}", z.h_top())));
        }
        if let Some(t) = z.v_truncation() {
            if t < bound {
                return Err(Error::Truncation(format!("bound {bound} exceeds the vertical truncation {t}")));
            }
        }
    }
    Ok(())
}

/// `(n, k)` of the `index`-th left horn, in the order the lifting family lists them.
fn left_horn_at(index: usize, bound: usize) -> (usize, usize) {
    (1..=bound).flat_map(|n| (0..n).map(move |k| (n, k))).nth(index).expect("member index within the family")
}

/// Exhaustive lifting against the cells with `m, n <= bound`.
pub fn is_horizontal_reedy_left_fibration(p: &BisimplicialMap, bound: usize) -> Result<Verdict> {
    check_bounds(p, bound)?;
    let scope = format!("horizontal Reedy left fibration, cells with m, n ≤ {bound}");
    let mut parts = Vec::new();
    for m in 0..=bound {
        let cmp = matching_comparison(p, m, bound)?;
        let v = classify_fibration(&cmp, FibrationKind::Left, bound)?;
        if v.is_no() {
            let k_n = match &v.witness {
                Witness::Unfillable(prob) => Some(left_horn_at(prob.member_index, bound)),
                _ => None,
            };
            let (n, k) = k_n.map_or((0, None), |(n, k)| (n, Some(k)));
            return Ok(Verdict::no(scope, Witness::Cell { m, n, k, detail: Box::new(v) }));
        }
        parts.push(v.with_scope(format!("column {m}")));
    }
    Ok(Verdict::all(scope, parts))
}

/// The Reedy check, then trivial fibrations `X_{n*} -> X_{0*} ×_{Y_{0*}} Y_{n*}` for `1 <= n <= bound`.
pub fn is_strong(p: &BisimplicialMap, bound: usize) -> Result<Verdict> {
    let reedy = is_horizontal_reedy_left_fibration(p, bound)?;
    let scope = format!("strong horizontal Reedy left fibration, m, n ≤ {bound}");
    if !reedy.is_yes() {
        return Ok(reedy.with_scope(scope));
    }
    let (x, y) = (p.source(), p.target());
    let mut parts = vec![reedy];
    for n in 1..=bound {
        let v0 = MonotoneMap::constant(0, n, 0);
        let vx = x.h_operator(&v0)?;
        let vy = y.h_operator(&v0)?;
        let pb = pullback(p.column(0), &vy);
        let cmp = pb.lift(&vx, p.column(n))?;
        let v = classify_fibration(&cmp, FibrationKind::Trivial, bound)?;
        if v.is_no() {
            let dim = match &v.witness {
                Witness::Unfillable(prob) => prob.member_index,
                _ => 0,
            };
            return Ok(Verdict::no(scope, Witness::Cell { m: n, n: dim, k: None, detail: Box::new(v) }));
        }
        parts.push(v.with_scope(format!("column comparison {n}")));
    }
    Ok(Verdict::all(scope, parts))
}

#[cfg(test)]
mod tests {
    use super::super::{box_product_map, box_product_to, diagonal_of_map};
    use super::*;
    use crate::homotopy::{is_right_cofinal, Budget, CofinalityMode};
    use crate::sset::coproduct;

    fn const_over_point(x: &Arc<crate::sset::SimplicialSet>, top: usize) -> BisimplicialMap {
        let p0 = Arc::new(standard::simplex(0));
        let src = box_product_to(&p0, x, top).unwrap();
        let tgt = box_product_to(&p0, &p0, top).unwrap();
        let f = SimplicialMap::identity(p0.clone());
        let g = SimplicialMap::constant(x.clone(), p0.clone(), crate::sset::GenId(0));
        box_product_map(&f, &g, &src, &tgt).unwrap()
    }

    #[test]
    fn identity_is_strong() {
        let b = super::super::standard_bisimplex(1, 1).unwrap();
        let id = BisimplicialMap::identity(b.set.clone());
        assert!(is_horizontal_reedy_left_fibration(&id, 2).unwrap().is_yes());
        assert!(is_strong(&id, 2).unwrap().is_yes());
    }

    #[test]
    fn edge_over_point_fails_at_a_horn() {
        let p = const_over_point(&Arc::new(standard::simplex(1)), 3);
        let v = is_horizontal_reedy_left_fibration(&p, 2).unwrap();
        assert!(v.is_no());
        match v.witness {
            Witness::Cell { m, n, k, .. } => assert_eq!((m, n, k), (0, 2, Some(0))),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn discrete_over_point_is_strong() {
        let p0 = Arc::new(standard::simplex(0));
        let (two, _, _) = coproduct(&p0, &p0);
        let p = const_over_point(&two, 3);
        assert!(is_horizontal_reedy_left_fibration(&p, 3).unwrap().is_yes());
        assert!(is_strong(&p, 3).unwrap().is_yes());
    }

    #[test]
    fn cells_are_columnwise_and_diagonally_left_anodyne() {
        let budget = Budget::default();
        for (m, n, k) in [(0, 1, 0), (1, 1, 0), (1, 2, 1), (0, 2, 0)] {
            let c = generating_cell(m, n, k).unwrap();
            assert!(c.is_mono());
            for col in 0..=m + n {
                let v = is_right_cofinal(c.column(col), CofinalityMode::Definition, &budget).unwrap();
                assert!(v.is_yes(), "column {col} of cell ({m},{n},{k}): {v}");
            }
            let (_, _, d) = diagonal_of_map(&c).unwrap();
            assert!(d.is_mono());
            let v = is_right_cofinal(&d, CofinalityMode::Definition, &budget).unwrap();
            assert!(v.is_yes(), "diagonal of cell ({m},{n},{k}): {v}");
        }
    }
}
