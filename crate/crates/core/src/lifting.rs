//! Bounded right lifting property checks and a small-object factorization engine.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sset::category::{tau1, DEFAULT_WORD_BUDGET};
use crate::sset::standard::{boundary, horn, simplex};
use crate::sset::{pushout, slice, GenId, MapSearch, SimplexRef, SimplicialMap, SimplicialSet, SliceSide};
use crate::verdict::{Verdict, Witness};

#[derive(Clone, Debug)]
pub enum FamilyKind {
    LeftHorns,
    RightHorns,
    InnerHorns,
    AllHorns,
    Boundaries,
    /// Named monomorphisms `A -> B`.
    Custom(Vec<(String, SimplicialMap)>),
}

#[derive(Clone, Debug)]
pub struct GeneratingFamily {
    pub kind: FamilyKind,
    pub dim_bound: usize,
}

/// One inclusion of a generating family.
#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub inclusion: SimplicialMap,
}

impl GeneratingFamily {
    pub fn new(kind: FamilyKind, dim_bound: usize) -> Self {
        GeneratingFamily { kind, dim_bound }
    }

    pub fn left_horns(dim_bound: usize) -> Self {
        Self::new(FamilyKind::LeftHorns, dim_bound)
    }

    pub fn right_horns(dim_bound: usize) -> Self {
        Self::new(FamilyKind::RightHorns, dim_bound)
    }

    pub fn inner_horns(dim_bound: usize) -> Self {
        Self::new(FamilyKind::InnerHorns, dim_bound)
    }

    pub fn boundaries(dim_bound: usize) -> Self {
        Self::new(FamilyKind::Boundaries, dim_bound)
    }

    /// Members in order of dimension, then horn index.
    pub fn members(&self) -> Result<Vec<Member>> {
        let horns = |keep: &dyn Fn(usize, usize) -> bool| -> Result<Vec<Member>> {
            let mut out = Vec::new();
            for n in 1..=self.dim_bound {
                for k in 0..=n {
                    if keep(n, k) {
                        let (_, inc) = horn(n, k)?;
                        out.push(Member { name: format!("Λ^{k}[{n}] ⊂ Δ[{n}]"), inclusion: inc });
                    }
                }
            }
            Ok(out)
        };
        match &self.kind {
            FamilyKind::LeftHorns => horns(&|n, k| k < n),
            FamilyKind::RightHorns => horns(&|_, k| k > 0),
            FamilyKind::InnerHorns => horns(&|n, k| 0 < k && k < n),
            FamilyKind::AllHorns => horns(&|_, _| true),
            FamilyKind::Boundaries => (0..=self.dim_bound)
                .map(|n| {
                    let (_, inc) = boundary(n)?;
                    Ok(Member { name: format!("∂Δ[{n}] ⊂ Δ[{n}]"), inclusion: inc })
                })
                .collect(),
            FamilyKind::Custom(list) => Ok(list
                .iter()
                .filter(|(_, m)| m.target().dim().unwrap_or(0) <= self.dim_bound)
                .map(|(name, m)| Member { name: name.clone(), inclusion: m.clone() })
                .collect()),
        }
    }

    pub fn describe(&self) -> String {
        let kind = match &self.kind {
            FamilyKind::LeftHorns => "left horns",
            FamilyKind::RightHorns => "right horns",
            FamilyKind::InnerHorns => "inner horns",
            FamilyKind::AllHorns => "all horns",
            FamilyKind::Boundaries => "boundaries",
            FamilyKind::Custom(_) => "custom family",
        };
        format!("{kind} up to dimension {}", self.dim_bound)
    }
}

/// A commutative square from a family member `A -> B` to `p: X -> Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftProblem {
    pub member: String,
    pub member_index: usize,
    /// `A -> X`, per generator of `A`.
    pub top: Vec<SimplexRef>,
    /// `B -> Y`, per generator of `B`.
    pub bottom: Vec<SimplexRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftRecord {
    pub problem: LiftProblem,
    /// `B -> X`, per generator of `B`.
    pub lift: Vec<SimplexRef>,
}

/// `max(dim source, dim target) + 1`.
pub fn default_bound(p: &SimplicialMap) -> usize {
    p.source().dim().unwrap_or(0).max(p.target().dim().unwrap_or(0)) + 1
}

fn check_levels(p: &SimplicialMap, bound: usize) -> Result<()> {
    p.source().check_level(bound, "lifting check")?;
    p.target().check_level(bound, "lifting check")
}

/// Generators of `B` hit by the mono `i`, with the generator of `A` they come from.
fn fixed_part(i: &SimplicialMap) -> Vec<Option<GenId>> {
    let mut out = vec![None; i.target().num_generators()];
    for (g, _) in i.source().generators() {
        let img = i.of_generator(g);
        debug_assert!(img.is_nondegenerate());
        out[img.gen.index()] = Some(g);
    }
    out
}

/// Calls `visit` on every lifting problem for member `i` against `p`.
fn for_each_problem(
    p: &SimplicialMap,
    i: &SimplicialMap,
    mut visit: impl FnMut(Vec<SimplexRef>, Vec<SimplexRef>) -> ControlFlow<()>,
) -> Result<bool> {
    let (a, b) = (i.source(), i.target());
    let (x, y) = (p.source(), p.target());
    let from_a = fixed_part(i);
    let mut tops = Vec::new();
    MapSearch::new(a, x).run(|imgs| {
        tops.push(imgs.to_vec());
        ControlFlow::Continue(())
    })?;
    // bottoms depend on the top only through p ∘ top
    let mut by_image: BTreeMap<Vec<SimplexRef>, Vec<Vec<SimplexRef>>> = BTreeMap::new();
    for t in tops {
        let key: Vec<SimplexRef> = t.iter().map(|s| p.image(s)).collect();
        by_image.entry(key).or_default().push(t);
    }
    for (pa, group) in by_image {
        let fixed: Vec<Option<SimplexRef>> = from_a.iter().map(|o| o.map(|g| pa[g.index()].clone())).collect();
        let mut bottoms = Vec::new();
        MapSearch::new(b, y).fix_all(fixed).run(|imgs| {
            bottoms.push(imgs.to_vec());
            ControlFlow::Continue(())
        })?;
        for bot in bottoms {
            for t in &group {
                if visit(t.clone(), bot.clone()).is_break() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A diagonal filler for the square, if one exists.
pub fn solve(p: &SimplicialMap, i: &SimplicialMap, top: &[SimplexRef], bottom: &[SimplexRef]) -> Result<Option<Vec<SimplexRef>>> {
    let from_a = fixed_part(i);
    let fixed: Vec<Option<SimplexRef>> = from_a.iter().map(|o| o.map(|g| top[g.index()].clone())).collect();
    let over = |g: GenId, c: &SimplexRef| p.image(c) == bottom[g.index()];
    MapSearch::new(i.target(), p.source()).fix_all(fixed).filter(&over).first()
}

/// Checks `p` against every member of the family, exhaustively.
pub fn has_rlp(p: &SimplicialMap, fam: &GeneratingFamily) -> Result<Verdict> {
    check_levels(p, fam.dim_bound)?;
    let scope = fam.describe();
    let members = fam.members()?;
    let mut records = Vec::new();
    for (idx, m) in members.iter().enumerate() {
        let mut failure: Option<Result<LiftProblem>> = None;
        for_each_problem(p, &m.inclusion, |top, bottom| match solve(p, &m.inclusion, &top, &bottom) {
            Err(e) => {
                failure = Some(Err(e));
                ControlFlow::Break(())
            }
            Ok(None) => {
                failure = Some(Ok(LiftProblem { member: m.name.clone(), member_index: idx, top, bottom }));
                ControlFlow::Break(())
            }
            Ok(Some(lift)) => {
                records.push(LiftRecord {
                    problem: LiftProblem { member: m.name.clone(), member_index: idx, top, bottom },
                    lift,
                });
                ControlFlow::Continue(())
            }
        })?;
        match failure {
            Some(Err(e)) => return Err(e),
            Some(Ok(problem)) => return Ok(Verdict::no(scope, Witness::Unfillable(problem))),
            None => {}
        }
    }
    Ok(Verdict::yes(scope, Witness::Lifts(records)))
}

/// Re-checks the witness of a verdict produced by [`has_rlp`].
pub fn replay(p: &SimplicialMap, fam: &GeneratingFamily, verdict: &Verdict) -> Result<bool> {
    let members = fam.members()?;
    let square_ok = |prob: &LiftProblem| -> Result<bool> {
        let m = members.get(prob.member_index).ok_or_else(|| Error::Invalid("member index out of range".into()))?;
        let i = &m.inclusion;
        let top = SimplicialMap::new(i.source().clone(), p.source().clone(), prob.top.clone())?;
        let bottom = SimplicialMap::new(i.target().clone(), p.target().clone(), prob.bottom.clone())?;
        Ok(p.after(&top)?.same_as(&bottom.after(i)?))
    };
    match &verdict.witness {
        Witness::Lifts(records) => {
            for r in records {
                if !square_ok(&r.problem)? {
                    return Ok(false);
                }
                let i = &members[r.problem.member_index].inclusion;
                let lift = match SimplicialMap::new(i.target().clone(), p.source().clone(), r.lift.clone()) {
                    Ok(l) => l,
                    Err(_) => return Ok(false),
                };
                let top_ok = lift.after(i)?.images() == r.problem.top.as_slice();
                let bottom_ok = p.after(&lift)?.images() == r.problem.bottom.as_slice();
                if !top_ok || !bottom_ok {
                    return Ok(false);
                }
            }
            Ok(verdict.is_yes())
        }
        Witness::Unfillable(prob) => {
            if !square_ok(prob)? {
                return Ok(false);
            }
            let i = &members[prob.member_index].inclusion;
            Ok(verdict.is_no() && solve(p, i, &prob.top, &prob.bottom)?.is_none())
        }
        _ => Ok(false),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FibrationKind {
    Left,
    Right,
    Inner,
    Kan,
    Trivial,
}

impl FibrationKind {
    pub fn family(self, dim_bound: usize) -> GeneratingFamily {
        let kind = match self {
            FibrationKind::Left => FamilyKind::LeftHorns,
            FibrationKind::Right => FamilyKind::RightHorns,
            FibrationKind::Inner => FamilyKind::InnerHorns,
            FibrationKind::Kan => FamilyKind::AllHorns,
            FibrationKind::Trivial => FamilyKind::Boundaries,
        };
        GeneratingFamily::new(kind, dim_bound)
    }

    pub fn name(self) -> &'static str {
        match self {
            FibrationKind::Left => "left fibration",
            FibrationKind::Right => "right fibration",
            FibrationKind::Inner => "inner fibration",
            FibrationKind::Kan => "Kan fibration",
            FibrationKind::Trivial => "trivial fibration",
        }
    }
}

pub fn classify_fibration(p: &SimplicialMap, kind: FibrationKind, dim_bound: usize) -> Result<Verdict> {
    let v = has_rlp(p, &kind.family(dim_bound))?;
    Ok(v.with_scope(format!("{} up to dimension {dim_bound}", kind.name())))
}

pub fn is_left_fibration(p: &SimplicialMap, dim_bound: usize) -> Result<Verdict> {
    classify_fibration(p, FibrationKind::Left, dim_bound)
}

pub fn is_quasi_category(x: &Arc<SimplicialSet>, bound: usize) -> Result<Verdict> {
    let pt = Arc::new(simplex(0));
    let p = SimplicialMap::constant(x.clone(), pt, GenId(0));
    classify_fibration(&p, FibrationKind::Inner, bound).map(|v| v.with_scope(format!("quasi-category up to dimension {bound}")))
}

/// Whether the edge `e` becomes invertible in `τ₁(B)`.
pub fn is_equivalence_edge(b: &SimplicialSet, e: &SimplexRef, budget: usize) -> Result<Verdict> {
    let scope = format!("τ₁ inverse search, coset budget {budget}");
    if e.dim() != 1 {
        return Err(Error::DomainMismatch(format!("expected an edge, got a {}-simplex", e.dim())));
    }
    if !e.is_nondegenerate() {
        return Ok(Verdict::yes(scope, Witness::Datum("degenerate edge, inverse is itself".into())));
    }
    let t = tau1(b)?;
    let mut p = t.presentation.clone();
    p.word_budget = budget;
    let arrow = t.word_of(e)[0];
    match p.enumerate() {
        Ok(c) => {
            let f = c.generators.as_ref().unwrap()[arrow];
            match c.inverse(f) {
                Some(g) => Ok(Verdict::yes(scope, Witness::Datum(format!("inverse {}", c.morphisms[g].name)))),
                None => Ok(Verdict::no(
                    scope,
                    Witness::Datum(format!("no morphism of the {}-element category inverts {}", c.morphisms.len(), c.morphisms[f].name)),
                )),
            }
        }
        Err(_) => Ok(Verdict::inconclusive(scope, format!("τ₁ has more than {budget} morphisms"))),
    }
}

pub fn is_equivalence_edge_default(b: &SimplicialSet, e: &SimplexRef) -> Result<Verdict> {
    is_equivalence_edge(b, e, DEFAULT_WORD_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorizationStatus {
    Saturated,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pub status: FactorizationStatus,
    /// The attached cells, in order.
    pub cells: Vec<String>,
}

/// The first unfilled problem, trying higher-dimensional members first so that a
/// horn is filled through existing faces before a fresh edge is attached below it.
fn first_unfilled(p: &SimplicialMap, members: &[Member]) -> Result<Option<(usize, Vec<SimplexRef>, Vec<SimplexRef>)>> {
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(members[i].inclusion.target().dim().unwrap_or(0)));
    for idx in order {
        let m = &members[idx];
        let mut found = None;
        let mut err = None;
        for_each_problem(p, &m.inclusion, |top, bottom| match solve(p, &m.inclusion, &top, &bottom) {
            Ok(Some(_)) => ControlFlow::Continue(()),
            Ok(None) => {
                found = Some((idx, top, bottom));
                ControlFlow::Break(())
            }
            Err(e) => {
                err = Some(e);
                ControlFlow::Break(())
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Attaches cells of `class` along unfilled problems until none remain or `max_cells` is hit.
pub fn bounded_factorization(u: &SimplicialMap, class: &GeneratingFamily, max_cells: usize) -> Result<Factorization> {
    let members = class.members()?;
    let mut left = SimplicialMap::identity(u.source().clone());
    let mut right = u.clone();
    let mut cells = Vec::new();
    loop {
        let Some((idx, top, bottom)) = first_unfilled(&right, &members)? else {
            return Ok(Factorization { left, right, status: FactorizationStatus::Saturated, cells });
        };
        if cells.len() >= max_cells {
            return Ok(Factorization { left, right, status: FactorizationStatus::BudgetExhausted, cells });
        }
        let i = &members[idx].inclusion;
        let z = right.source().clone();
        let a = SimplicialMap::new_unchecked(i.source().clone(), z.clone(), top);
        let b = SimplicialMap::new_unchecked(i.target().clone(), right.target().clone(), bottom);
        let po = pushout(i, &a);
        let new_right = po.mediate(i, &a, &b, &right)?;
        left = po.inr.after(&left)?;
        right = new_right;
        cells.push(members[idx].name.clone());
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolutionKind {
    /// `B_{/b}` with the identity of `b`.
    OverSlice,
    Factorization(FactorizationStatus),
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub rb: Arc<SimplicialSet>,
    pub incl: SimplicialMap,
    pub proj: SimplicialMap,
    pub kind: ResolutionKind,
}

/// A factorization of `b: 1 -> B` into a right anodyne map followed by a right fibration.
pub fn right_resolution(b_set: &Arc<SimplicialSet>, b: GenId, bound: usize, max_cells: usize) -> Result<Resolution> {
    if is_quasi_category(b_set, bound)?.is_yes() {
        let s = slice(b_set, b, SliceSide::Over)?;
        let pt = Arc::new(simplex(0));
        let incl = SimplicialMap::constant(pt, s.set.clone(), s.identity_vertex);
        return Ok(Resolution { rb: s.set, incl, proj: s.projection, kind: ResolutionKind::OverSlice });
    }
    let pt = Arc::new(simplex(0));
    let u = SimplicialMap::constant(pt, b_set.clone(), b);
    let f = bounded_factorization(&u, &GeneratingFamily::right_horns(bound), max_cells)?;
    Ok(Resolution { rb: f.right.source().clone(), incl: f.left, proj: f.right, kind: ResolutionKind::Factorization(f.status) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::horn;

    fn to_point(x: Arc<SimplicialSet>) -> SimplicialMap {
        SimplicialMap::constant(x, Arc::new(simplex(0)), GenId(0))
    }

    #[test]
    fn isomorphisms_lift() {
        let d2 = Arc::new(simplex(2));
        let id = SimplicialMap::identity(d2);
        for kind in [FibrationKind::Left, FibrationKind::Right, FibrationKind::Inner, FibrationKind::Kan, FibrationKind::Trivial] {
            let v = classify_fibration(&id, kind, 3).unwrap();
            assert!(v.is_yes(), "{kind:?}");
            assert!(replay(&id, &kind.family(3), &v).unwrap());
        }
    }

    #[test]
    fn interval_examples() {
        let p = to_point(Arc::new(simplex(1)));
        let (_, l01) = horn(1, 0).unwrap();
        let fam = GeneratingFamily::new(FamilyKind::Custom(vec![("Λ^0[1]".into(), l01)]), 1);
        assert!(has_rlp(&p, &fam).unwrap().is_yes());
        let v = classify_fibration(&p, FibrationKind::Left, 2).unwrap();
        assert!(v.is_no());
        let Witness::Unfillable(prob) = &v.witness else { panic!() };
        assert_eq!(prob.member, "Λ^0[2] ⊂ Δ[2]");
        assert!(replay(&p, &FibrationKind::Left.family(2), &v).unwrap());
    }

    #[test]
    fn horn_is_not_connected_by_edges() {
        let (h, _) = horn(2, 1).unwrap();
        let p = to_point(h);
        let v = has_rlp(&p, &GeneratingFamily::boundaries(1)).unwrap();
        assert!(v.is_no());
        let Witness::Unfillable(prob) = &v.witness else { panic!() };
        assert_eq!(prob.member_index, 1);
        let v = is_quasi_category(p.source(), 2).unwrap();
        assert!(v.is_no());
    }

    #[test]
    fn simplices_are_quasi_categories() {
        for n in 0..3 {
            assert!(is_quasi_category(&Arc::new(simplex(n)), 3).unwrap().is_yes());
        }
    }

    #[test]
    fn slice_projection_is_left_fibration() {
        let d2 = Arc::new(simplex(2));
        let s = slice(&d2, GenId(0), SliceSide::Under).unwrap();
        assert!(is_left_fibration(&s.projection, 3).unwrap().is_yes());
    }

    #[test]
    fn equivalence_edges() {
        let d1 = simplex(1);
        let e = d1.simplex(d1.find_generator("01").unwrap());
        assert!(is_equivalence_edge(&d1, &e, 100).unwrap().is_no());
        let v = d1.simplex(GenId(0)).degenerate(0);
        assert!(is_equivalence_edge(&d1, &v, 100).unwrap().is_yes());
        let j = crate::sset::standard::sk_j(2);
        let e = crate::sset::standard::sk_j_edge(&j);
        assert!(is_equivalence_edge(&j, &e, 100).unwrap().is_yes());
    }

    #[test]
    fn factorizations() {
        let d1 = Arc::new(simplex(1));
        let id = SimplicialMap::identity(d1.clone());
        let f = bounded_factorization(&id, &GeneratingFamily::left_horns(2), 10).unwrap();
        assert_eq!(f.status, FactorizationStatus::Saturated);
        assert!(f.cells.is_empty());

        let pt = Arc::new(simplex(0));
        let zero = SimplicialMap::constant(pt.clone(), d1.clone(), GenId(0));
        let f = bounded_factorization(&zero, &GeneratingFamily::left_horns(2), 10).unwrap();
        assert_eq!(f.status, FactorizationStatus::Saturated);
        assert_eq!(f.cells[0], "Λ^0[1] ⊂ Δ[1]");
        assert!(f.right.after(&f.left).unwrap().same_as(&zero));
        assert!(is_left_fibration(&f.right, 2).unwrap().is_yes());

        let one = SimplicialMap::constant(pt, d1.clone(), GenId(1));
        let f = bounded_factorization(&one, &GeneratingFamily::left_horns(2), 10).unwrap();
        assert_eq!(f.status, FactorizationStatus::Saturated);
        assert!(f.right.fiber_vertices(GenId(0)).is_empty());
    }

    #[test]
    fn resolutions() {
        let pt = Arc::new(simplex(0));
        let r = right_resolution(&pt, GenId(0), 2, 10).unwrap();
        assert_eq!(r.rb.counts(), vec![1]);
        let d2 = Arc::new(simplex(2));
        let r = right_resolution(&d2, GenId(2), 3, 10).unwrap();
        assert_eq!(r.kind, ResolutionKind::OverSlice);
        assert_eq!(r.rb.counts(), d2.counts());
        let d1 = Arc::new(simplex(1));
        let r = right_resolution(&d1, GenId(0), 2, 10).unwrap();
        assert_eq!(r.rb.counts(), vec![1]);
    }
}
