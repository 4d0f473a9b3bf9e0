//! Homology, path components and `π₁`, and the cofinality criteria built on them.
//!
//! Weak equivalences cannot be decided in general; the checks here compare
//! `π₀`, `π₁` (within a coset budget) and integral homology (within the trusted
//! range) and every verdict lists the conditions it rests on.

pub mod chains;
pub mod fundamental;

use crate::error::{Error, Result};
use crate::lifting::{
    bounded_factorization, classify_fibration, default_bound, is_quasi_category, right_resolution, FactorizationStatus,
    FibrationKind, GeneratingFamily, ResolutionKind,
};
use crate::sset::category::DEFAULT_WORD_BUDGET;
use crate::sset::{fiber, opposite_of_map, pullback, slice, GenId, SimplicialMap, SimplicialSet, SliceSide};
use crate::verdict::{Verdict, Witness};

pub use chains::{
    complex_homology, homology, mapping_cone, normalized_chains, smith_normal_form, ChainComplex, DegreeHomology,
    HomologyReport, Matrix, Snf,
};
pub use fundamental::{components, edge_path_group, pi0_count, pi0_map, pi1_triviality, GroupPresentation, Pi1};

/// Bounds shared by the criteria.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Coset enumeration limit for `π₁` and `τ₁`.
    pub cosets: usize,
    /// Cells attached by a factorization before giving up.
    pub max_cells: usize,
    /// Horn dimension for fibration checks; `None` uses the default bound.
    pub dim_bound: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { cosets: DEFAULT_WORD_BUDGET, max_cells: 64, dim_bound: None }
    }
}

impl Budget {
    fn bound_for(&self, p: &SimplicialMap) -> usize {
        self.dim_bound.unwrap_or_else(|| default_bound(p))
    }

    fn bound_for_set(&self, x: &SimplicialSet) -> usize {
        self.dim_bound.unwrap_or(x.dim().unwrap_or(0) + 1)
    }
}

/// Highest degree whose homology is meaningful for `x`.
fn homology_top(x: &SimplicialSet) -> Option<usize> {
    match x.truncation() {
        Some(0) => None,
        Some(t) => Some(t - 1),
        None => Some(x.dim().unwrap_or(0)),
    }
}

/// Whether `f` induces isomorphisms on `H_k` for `k <= max_degree`, via its mapping cone.
pub fn induces_homology_iso(f: &SimplicialMap, max_degree: usize) -> Verdict {
    let trusted = match (f.source().truncation(), f.target().truncation()) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(usize::MAX).min(b.unwrap_or(usize::MAX))),
    };
    let m = match trusted {
        Some(0) => return Verdict::inconclusive("homology iso", "truncation 0 leaves no trusted degree"),
        Some(t) => max_degree.min(t - 1),
        None => max_degree,
    };
    let scope = if m < max_degree {
        format!("H_k for k <= {m} (clamped from {max_degree} by truncation)")
    } else {
        format!("H_k for k <= {m}")
    };
    let cone = mapping_cone(f, m + 2);
    let h = complex_homology(&cone, m + 1, trusted);
    if let Some(k) = (0..=m).find(|&k| !h.degrees[k].is_zero()) {
        // name the lowest degree where the groups themselves differ, if any
        let hx = homology(f.source(), m);
        let hy = homology(f.target(), m);
        let witness = match (0..=m).find(|&j| !hx.degrees[j].same_group(&hy.degrees[j])) {
            Some(j) => Witness::Degree { degree: j, detail: format!("H_{j}: {} vs {}", hx.degrees[j], hy.degrees[j]) },
            None => Witness::Degree { degree: k, detail: format!("mapping cone has H_{k} = {}", h.degrees[k]) },
        };
        return Verdict::no(scope, witness);
    }
    // cone H_{m+1} only matters for injectivity on H_m
    if h.degrees[m + 1].trusted && h.degrees[m + 1].is_zero() {
        return Verdict::yes(scope, Witness::Checks(vec![format!("mapping cone acyclic through degree {}", m + 1)]));
    }
    let hx = homology(f.source(), m);
    let hy = homology(f.target(), m);
    if hx.degrees[m].same_group(&hy.degrees[m]) {
        Verdict::yes(
            scope,
            Witness::Checks(vec![
                format!("mapping cone acyclic through degree {m}"),
                format!("H_{m} surjects between isomorphic groups {}", hy.degrees[m]),
            ]),
        )
    } else {
        Verdict::no(scope, Witness::Degree { degree: m, detail: format!("H_{m}: {} vs {}", hx.degrees[m], hy.degrees[m]) })
    }
}

pub fn is_weakly_contractible(x: &SimplicialSet, budget: usize) -> Verdict {
    let Some(top) = homology_top(x) else {
        return Verdict::inconclusive("weak contractibility", "truncation 0");
    };
    let scope = format!("π₀, π₁ (coset budget {budget}), reduced H_k for k <= {top}");
    let verts = x.vertices();
    if verts.is_empty() {
        return Verdict::no(scope, Witness::Datum("empty".into()));
    }
    let n0 = pi0_count(x);
    if n0 != 1 {
        return Verdict::no(scope, Witness::Datum(format!("{n0} path components")));
    }
    let h = homology(x, top);
    for k in 1..=top {
        if !h.degrees[k].is_zero() {
            return Verdict::no(scope, Witness::Degree { degree: k, detail: format!("H_{k} = {}", h.degrees[k]) });
        }
    }
    if x.valid_up_to() < 2 {
        return Verdict::inconclusive(scope, "no 2-simplices available for π₁");
    }
    match pi1_triviality(x, verts[0], budget) {
        Pi1::Trivial => Verdict::yes(
            scope,
            Witness::Checks(vec!["nonempty".into(), "connected".into(), "π₁ trivial".into(), format!("reduced homology 0 through degree {top}")]),
        ),
        Pi1::Nontrivial(why) => Verdict::no(scope, Witness::Datum(format!("π₁ nontrivial: {why}"))),
        Pi1::Unknown => Verdict::inconclusive(scope, format!("π₁ coset enumeration exceeded {budget}")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CofinalityMode {
    /// Factor with left horns and test the right part as a trivial fibration.
    Definition,
    /// Contractibility of `A ×_B B_{/b}`; needs `B` a quasi-category.
    TheoremA,
    /// Contractibility of `Rb ×_B A` for a right resolution `Rb` of each vertex.
    Joyal,
}

impl CofinalityMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "definition" => Some(CofinalityMode::Definition),
            "theorem_a" | "theorem-a" => Some(CofinalityMode::TheoremA),
            "joyal" => Some(CofinalityMode::Joyal),
            _ => None,
        }
    }
}

/// Runs a per-vertex check and merges: smallest vertex with `No` wins, then any `Inconclusive`.
fn per_vertex(
    scope: String,
    vertices: &[GenId],
    mut check: impl FnMut(GenId) -> Result<Verdict>,
) -> Result<Verdict> {
    let mut inconclusive = None;
    let mut parts = Vec::new();
    for &b in vertices {
        let v = check(b)?;
        if v.is_no() {
            return Ok(Verdict::no(scope, Witness::AtVertex { vertex: b, detail: Box::new(v) }));
        }
        if v.is_inconclusive() && inconclusive.is_none() {
            inconclusive = Some(Verdict { outcome: v.outcome, scope: scope.clone(), witness: Witness::AtVertex { vertex: b, detail: Box::new(v.clone()) } });
        }
        parts.push(v);
    }
    Ok(inconclusive.unwrap_or_else(|| Verdict::yes(scope, Witness::Parts(parts))))
}

pub fn is_right_cofinal(u: &SimplicialMap, mode: CofinalityMode, budget: &Budget) -> Result<Verdict> {
    let b_set = u.target();
    match mode {
        CofinalityMode::Definition => {
            let bound = budget.bound_for(u);
            let f = bounded_factorization(u, &GeneratingFamily::left_horns(bound), budget.max_cells)?;
            let scope = format!("right cofinal by factorization, left horns up to dimension {bound}, {} cells", budget.max_cells);
            if f.status == FactorizationStatus::BudgetExhausted {
                return Ok(Verdict::inconclusive(scope, format!("factorization attached {} cells without saturating", f.cells.len())));
            }
            let v = classify_fibration(&f.right, FibrationKind::Trivial, bound)?;
            Ok(Verdict { scope, ..v })
        }
        CofinalityMode::TheoremA => {
            let bound = budget.bound_for_set(b_set);
            let q = is_quasi_category(b_set, bound)?;
            if !q.is_yes() {
                return Err(Error::DomainMismatch(format!("Theorem A mode needs a quasi-category target; {}", q.summary())));
            }
            let scope = format!("right cofinal by slices A ×_B B_/b, target checked up to dimension {bound}");
            per_vertex(scope, &b_set.vertices(), |b| {
                let s = slice(b_set, b, SliceSide::Over)?;
                let pb = pullback(u, &s.projection);
                Ok(is_weakly_contractible(&pb.set, budget.cosets))
            })
        }
        CofinalityMode::Joyal => {
            let bound = budget.bound_for_set(b_set);
            let scope = format!("right cofinal by right resolutions, horns up to dimension {bound}");
            per_vertex(scope, &b_set.vertices(), |b| {
                let r = right_resolution(b_set, b, bound, budget.max_cells)?;
                if r.kind == ResolutionKind::Factorization(FactorizationStatus::BudgetExhausted) {
                    return Ok(Verdict::inconclusive("right resolution", "factorization budget exhausted"));
                }
                let pb = pullback(&r.proj, u);
                Ok(is_weakly_contractible(&pb.set, budget.cosets))
            })
        }
    }
}

pub fn is_left_cofinal(u: &SimplicialMap, mode: CofinalityMode, budget: &Budget) -> Result<Verdict> {
    let op = opposite_of_map(u);
    is_right_cofinal(&op, mode, budget).map(|v| {
        let scope = format!("left cofinal via the opposite map: {}", v.scope);
        v.with_scope(scope)
    })
}

/// Picks Theorem A when the target is a quasi-category and Joyal's criterion otherwise.
pub fn is_right_cofinal_auto(u: &SimplicialMap, budget: &Budget) -> Result<Verdict> {
    let bound = budget.bound_for_set(u.target());
    if is_quasi_category(u.target(), bound)?.is_yes() {
        is_right_cofinal(u, CofinalityMode::TheoremA, budget)
    } else {
        is_right_cofinal(u, CofinalityMode::Joyal, budget)
    }
}

/// Necessary conditions for `f` to be a weak homotopy equivalence: `π₀`, homology
/// through `top`, and `π₁` triviality agreeing componentwise.
pub fn weak_equivalence_check(f: &SimplicialMap, budget: usize) -> Verdict {
    let top = match (homology_top(f.source()), homology_top(f.target())) {
        (Some(a), Some(b)) => a.min(b),
        _ => return Verdict::inconclusive("weak equivalence", "truncation 0"),
    };
    let scope = format!("π₀, H_k for k <= {top}, π₁ triviality (coset budget {budget})");
    let m = pi0_map(f);
    let ny = pi0_count(f.target());
    let mut hit = vec![false; ny];
    for &c in &m {
        if hit[c] {
            return Verdict::no(scope, Witness::Datum(format!("two components map to component {c}")));
        }
        hit[c] = true;
    }
    if let Some(c) = hit.iter().position(|h| !h) {
        return Verdict::no(scope, Witness::Datum(format!("component {c} of the target is not hit")));
    }
    let h = induces_homology_iso(f, top);
    if !h.is_yes() {
        return Verdict { scope, ..h };
    }
    // compare π₁ triviality on each component
    let cx = components(f.source());
    let mut reps: Vec<Option<GenId>> = vec![None; m.len()];
    for v in f.source().vertices() {
        reps[cx[&v]].get_or_insert(v);
    }
    if f.source().valid_up_to() >= 2 && f.target().valid_up_to() >= 2 {
        for rep in reps.into_iter().flatten() {
            let a = pi1_triviality(f.source(), rep, budget);
            let b = pi1_triviality(f.target(), f.of_generator(rep).gen, budget);
            match (a, b) {
                (Pi1::Trivial, Pi1::Nontrivial(w)) | (Pi1::Nontrivial(w), Pi1::Trivial) => {
                    return Verdict::no(scope, Witness::Datum(format!("π₁ differs at vertex {}: {w}", f.source().name(rep))));
                }
                (Pi1::Unknown, _) | (_, Pi1::Unknown) => {
                    return Verdict::inconclusive(scope, "π₁ coset enumeration exceeded the budget");
                }
                _ => {}
            }
        }
    }
    Verdict::yes(scope, Witness::Checks(vec!["π₀ bijective".into(), format!("homology iso through degree {top}"), "π₁ triviality agrees".into()]))
}

/// `f: X -> Y` over `B`, with structure maps `p_x`, `p_y`.
pub fn is_covariant_equivalence(f: &SimplicialMap, p_x: &SimplicialMap, p_y: &SimplicialMap, budget: &Budget) -> Result<Verdict> {
    if !p_y.after(f)?.same_as(p_x) {
        return Err(Error::DomainMismatch("the map does not commute with the structure maps".into()));
    }
    let b_set = p_x.target();
    let bound = budget.bound_for_set(b_set);
    let scope = format!("covariant equivalence via Rb ×_B -, horns up to dimension {bound}");
    per_vertex(scope, &b_set.vertices(), |b| {
        let r = right_resolution(b_set, b, bound, budget.max_cells)?;
        if r.kind == ResolutionKind::Factorization(FactorizationStatus::BudgetExhausted) {
            return Ok(Verdict::inconclusive("right resolution", "factorization budget exhausted"));
        }
        let px = pullback(&r.proj, p_x);
        let py = pullback(&r.proj, p_y);
        let g = py.lift(&px.pr1, &f.after(&px.pr2)?)?;
        Ok(weak_equivalence_check(&g, budget.cosets))
    })
}

/// Both conditions per vertex: contractible fibers, and the fiber including left cofinally into `A ×_B Rb`.
#[allow(non_snake_case)]
pub fn is_L_cofinal(u: &SimplicialMap, budget: &Budget) -> Result<Verdict> {
    let b_set = u.target();
    let bound = budget.bound_for_set(b_set);
    let scope = format!("L-cofinal, horns up to dimension {bound}, coset budget {}", budget.cosets);
    per_vertex(scope, &b_set.vertices(), |b| {
        let (fib, incl) = fiber(u, b);
        let c = is_weakly_contractible(&fib, budget.cosets);
        if !c.is_yes() {
            return Ok(c.with_scope(format!("fiber over {} contractible", b_set.name(b))));
        }
        let r = right_resolution(b_set, b, bound, budget.max_cells)?;
        let pb = pullback(u, &r.proj);
        let to_r = SimplicialMap::constant(fib.clone(), r.rb.clone(), r.incl.of_generator(GenId(0)).gen);
        let g = pb.lift(&incl, &to_r)?;
        is_left_cofinal(&g, CofinalityMode::Joyal, budget).map(|v| {
            let scope = format!("fiber over {} → A ×_B Rb: {}", b_set.name(b), v.scope);
            v.with_scope(scope)
        })
    })
}

pub fn describe_homology(h: &HomologyReport) -> String {
    h.degrees.iter().enumerate().map(|(k, d)| format!("H_{k} = {d}")).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::sset::standard::{boundary, generalized_horn, simplex};
    use crate::sset::{coproduct, SimplicialMap};

    fn vertex_in(n: usize, v: u32) -> SimplicialMap {
        SimplicialMap::constant(Arc::new(simplex(0)), Arc::new(simplex(n)), GenId(v))
    }

    #[test]
    fn homology_iso_examples() {
        let d2 = Arc::new(simplex(2));
        assert!(induces_homology_iso(&SimplicialMap::identity(d2), 3).is_yes());
        assert!(induces_homology_iso(&vertex_in(1, 0), 5).is_yes());
        let (_, inc) = boundary(2).unwrap();
        let v = induces_homology_iso(&inc, 2);
        assert!(v.is_no());
        assert!(matches!(v.witness, Witness::Degree { degree: 1, .. }), "{v}");
    }

    #[test]
    fn contractibility_examples() {
        for n in 0..4 {
            assert!(is_weakly_contractible(&simplex(n), 100).is_yes());
        }
        let (b, _) = boundary(2).unwrap();
        assert!(is_weakly_contractible(&b, 100).is_no());
        let (h, _) = generalized_horn(3, &[0, 1]).unwrap();
        assert!(is_weakly_contractible(&h, 100).is_yes());
        assert!(is_weakly_contractible(&SimplicialSet::empty(), 100).is_no());
    }

    #[test]
    fn cofinality_examples() {
        let budget = Budget::default();
        for mode in [CofinalityMode::Definition, CofinalityMode::TheoremA, CofinalityMode::Joyal] {
            let id = SimplicialMap::identity(Arc::new(simplex(2)));
            assert!(is_right_cofinal(&id, mode, &budget).unwrap().is_yes(), "{mode:?}");
            assert!(is_right_cofinal(&vertex_in(2, 0), mode, &budget).unwrap().is_yes(), "{mode:?}");
            let v = is_right_cofinal(&vertex_in(1, 1), mode, &budget).unwrap();
            assert!(v.is_no(), "{mode:?}");
        }
        let v = is_right_cofinal(&vertex_in(1, 1), CofinalityMode::TheoremA, &budget).unwrap();
        let Witness::AtVertex { vertex, .. } = v.witness else { panic!() };
        assert_eq!(vertex, GenId(0));
    }

    #[test]
    fn covariant_equivalence_examples() {
        let budget = Budget::default();
        let d1 = Arc::new(simplex(1));
        let id = SimplicialMap::identity(d1.clone());
        assert!(is_covariant_equivalence(&id, &id, &id, &budget).unwrap().is_yes());
        let zero = vertex_in(1, 0);
        assert!(is_covariant_equivalence(&zero, &zero, &id, &budget).unwrap().is_yes());
        let one = vertex_in(1, 1);
        let v = is_covariant_equivalence(&one, &one, &id, &budget).unwrap();
        assert!(v.is_no());
        let Witness::AtVertex { vertex, .. } = v.witness else { panic!() };
        assert_eq!(vertex, GenId(0));
    }

    #[test]
    fn l_cofinal_examples() {
        let budget = Budget::default();
        let id = SimplicialMap::identity(Arc::new(simplex(2)));
        assert!(is_L_cofinal(&id, &budget).unwrap().is_yes());
        // Δ[2] has a terminal object
        let to_pt = SimplicialMap::constant(Arc::new(simplex(2)), Arc::new(simplex(0)), GenId(0));
        assert!(is_L_cofinal(&to_pt, &budget).unwrap().is_yes());
        let pt = Arc::new(simplex(0));
        let (sum, i0, i1) = coproduct(&pt, &pt);
        let u = crate::sset::copair(&sum, &[i0, i1], &[vertex_in(1, 0), vertex_in(1, 1)]).unwrap();
        let v = is_L_cofinal(&u, &budget).unwrap();
        assert!(v.is_no());
        let Witness::AtVertex { vertex, .. } = v.witness else { panic!() };
        assert_eq!(vertex, GenId(1));
    }
}
