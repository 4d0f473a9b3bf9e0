//! S-local left fibrations: every marked edge `s: a -> b` must act on fibers by a
//! homotopy equivalence.
//!
//! Two formulations are checked. The restriction form asks that
//! `map_A(Δ[1], X) -> map_A({1}, X)` over `s` be a trivial fibration; it is the one
//! the combined verdict rests on. The transport form lifts each vertex of `X_a`
//! along `s` and compares `π₀` and homology of the fibers. Under truncation the two
//! can disagree, and such marks are listed.

use std::sync::Arc;

use super::presheaf::precompose;
use crate::error::Result;
use crate::homotopy::{components, homology, Budget};
use crate::lifting::{classify_fibration, is_left_fibration, FibrationKind};
use crate::sset::standard::simplex;
use crate::sset::{fiber, mapping_space_over, simplex_map, GenId, SimplexRef, SimplicialMap};
use crate::verdict::{Outcome, Verdict, Witness};

#[derive(Clone, Debug)]
pub struct SLocality {
    pub left_fibration: Verdict,
    /// Restriction form, one verdict per mark.
    pub restriction: Vec<Verdict>,
    /// Transport form, one verdict per mark.
    pub transport: Vec<Verdict>,
    /// Marks where the two forms reach opposite conclusions.
    pub disagreements: Vec<usize>,
    pub verdict: Verdict,
}

fn restriction_form(p: &SimplicialMap, s: &SimplexRef, trunc: usize) -> Result<Verdict> {
    let a = p.target();
    let d0 = Arc::new(simplex(0));
    let d1 = Arc::new(simplex(1));
    let over_s = mapping_space_over(&simplex_map(a, s, &d1), p, trunc)?;
    let end = a.simplex(a.vertex(s, 1));
    let over_b = mapping_space_over(&simplex_map(a, &end, &d0), p, trunc)?;
    let at_one = SimplicialMap::new(d0.clone(), d1.clone(), vec![d1.simplex(GenId(1))])?;
    let restrict = precompose(&over_s, &over_b, &at_one, p.source())?;
    let v = classify_fibration(&restrict, FibrationKind::Trivial, trunc)?;
    Ok(v.with_scope(format!("map_A(Δ[1], X) -> map_A({{1}}, X) trivial fibration up to dimension {trunc}")))
}

fn transport_form(p: &SimplicialMap, s: &SimplexRef, trunc: usize) -> Verdict {
    let (x, a) = (p.source(), p.target());
    let scope = format!("fiber transport on π₀ and homology through degree {}", trunc.saturating_sub(1));
    let (va, vb) = (a.vertex(s, 0), a.vertex(s, 1));
    let (fa, inc_a) = fiber(p, va);
    let (fb, inc_b) = fiber(p, vb);
    let comp_b = components(&fb);
    let edges = x.simplices(1);
    let mut hit = vec![false; comp_b.values().copied().max().map_or(0, |m| m + 1)];
    let comp_a = components(&fa);
    let mut image_of_component: Vec<Option<usize>> = vec![None; comp_a.values().copied().max().map_or(0, |m| m + 1)];
    for v in fa.vertices() {
        let xv = inc_a.of_generator(v).gen;
        let lift = edges.iter().find(|e| p.image(e) == *s && x.vertex(e, 0) == xv);
        let Some(e) = lift else {
            return Verdict::no(scope, Witness::Datum(format!("no edge over s starts at {}", x.name(xv))));
        };
        let y = x.vertex(e, 1);
        let yb = fb.vertices().into_iter().find(|&w| inc_b.of_generator(w).gen == y).expect("target lies in the fiber");
        let c = comp_b[&yb];
        match image_of_component[comp_a[&v]] {
            Some(prev) if prev != c => {
                return Verdict::inconclusive(scope, "lifts from one component land in different components");
            }
            _ => image_of_component[comp_a[&v]] = Some(c),
        }
    }
    for c in image_of_component.iter().flatten() {
        if hit[*c] {
            return Verdict::no(scope, Witness::Datum("transport identifies two components of the source fiber".into()));
        }
        hit[*c] = true;
    }
    if hit.iter().any(|h| !h) {
        return Verdict::no(scope, Witness::Datum("transport misses a component of the target fiber".into()));
    }
    let top = trunc.saturating_sub(1);
    let (ha, hb) = (homology(&fa, top), homology(&fb, top));
    for n in 0..=top {
        if let (Some(x), Some(y)) = (ha.degree(n), hb.degree(n)) {
            if !x.same_group(y) {
                return Verdict::no(scope, Witness::Degree { degree: n, detail: "fiber homology differs".into() });
            }
        }
    }
    Verdict::yes(scope, Witness::Checks(vec!["π₀ bijection".into(), format!("fiber homology agrees through degree {top}")]))
}

/// Left fibration up to `trunc + 1`, then both formulations for every mark.
pub fn s_local_check(p: &SimplicialMap, marks: &[SimplexRef], trunc: usize, budget: &Budget) -> Result<SLocality> {
    let bound = budget.dim_bound.unwrap_or(trunc + 1);
    let left_fibration = is_left_fibration(p, bound)?;
    let mut restriction = Vec::new();
    let mut transport = Vec::new();
    let mut disagreements = Vec::new();
    for (i, s) in marks.iter().enumerate() {
        let r = restriction_form(p, s, trunc)?;
        let t = transport_form(p, s, trunc);
        if matches!((r.outcome, t.outcome), (Outcome::Yes, Outcome::No) | (Outcome::No, Outcome::Yes)) {
            disagreements.push(i);
        }
        restriction.push(r);
        transport.push(t);
    }
    let mut scope = format!("S-local left fibration, horns up to dimension {bound}, mapping spaces to level {trunc}, restriction form");
    if !disagreements.is_empty() {
        scope.push_str(&format!("; transport form disagrees at marks {disagreements:?}"));
    }
    let mut parts = vec![left_fibration.clone()];
    parts.extend(restriction.iter().cloned());
    let verdict = Verdict::all(scope, parts);
    Ok(SLocality { left_fibration, restriction, transport, disagreements, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{coproduct, copair, slice, SliceSide};

    #[test]
    fn slice_projection_is_s_local() {
        let d1 = Arc::new(simplex(1));
        let s = slice(&d1, GenId(0), SliceSide::Under).unwrap();
        let edge = d1.simplex(GenId(2));
        let r = s_local_check(&s.projection, &[edge], 2, &Budget::default()).unwrap();
        assert!(r.verdict.is_yes(), "{}", r.verdict);
        assert!(r.transport[0].is_yes());
        assert!(r.disagreements.is_empty());
    }

    #[test]
    fn fibers_of_different_size_are_not_s_local() {
        // Δ[1] ⊔ {1} over Δ[1]: one point over 0, two over 1
        let d1 = Arc::new(simplex(1));
        let d0 = Arc::new(simplex(0));
        let (x, i1, i2) = coproduct(&d1, &d0);
        let legs = [SimplicialMap::identity(d1.clone()), SimplicialMap::new(d0.clone(), d1.clone(), vec![d1.simplex(GenId(1))]).unwrap()];
        let p = copair(&x, &[i1, i2], &legs).unwrap();
        let r = s_local_check(&p, &[d1.simplex(GenId(2))], 2, &Budget::default()).unwrap();
        assert!(r.left_fibration.is_yes());
        assert!(r.verdict.is_no());
        assert!(r.transport[0].is_no());
        // no marks: only the left fibration condition
        let r = s_local_check(&p, &[], 2, &Budget::default()).unwrap();
        assert!(r.verdict.is_yes());
    }
}
