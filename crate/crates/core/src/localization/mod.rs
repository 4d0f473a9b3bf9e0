//! Simplex categories, last- and initial-vertex maps, quasi-localization and
//! the delocalization checks built from them.

mod presheaf;
mod slocal;

use std::collections::HashMap;
use std::sync::Arc;

use crate::bisimplicial::{IndexCategory, Variant};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::homotopy::{induces_homology_iso, Budget};
use crate::sset::category::{nerve_of, tau1, tau1_equivalence, tau1_localize, Chain, FiniteCategory, Functor, Morphism, Nerve};
use crate::sset::standard::{simplex, sk_j, sk_j_edge};
use crate::sset::{copair, coproduct_many, opposite, pushout, simplex_map, SimplexRef, SimplicialMap, SimplicialSet};
use crate::verdict::{Verdict, Witness};

pub use presheaf::{
    mapping_simplex, presheaf_re, presheaf_sing, re_sing_counit, representable, w_local_check, Diagram, Realization,
    SimplicialPresheaf, SingPresheaf,
};
pub use slocal::{s_local_check, SLocality};

/// The category of simplices of `B` in one of its finite variants, with the
/// arrow classes `W` (`u(0) = 0`) and `S` (`u(m) = n`) marked.
#[derive(Clone, Debug)]
pub struct SimplexCategory {
    pub base: Arc<SimplicialSet>,
    pub variant: Variant,
    pub index: IndexCategory,
    pub category: FiniteCategory,
    /// `(u, source, target)` for each morphism, with `target ∘ u = source`.
    pub arrows: Vec<(MonotoneMap, usize, usize)>,
    arrow_of: HashMap<(MonotoneMap, usize), usize>,
    pub w: Vec<bool>,
    pub s: Vec<bool>,
}

pub fn simplex_category(b: &Arc<SimplicialSet>, variant: Variant) -> Result<SimplexCategory> {
    let index = IndexCategory::new(b, variant)?;
    let mut arrows = Vec::new();
    let mut arrow_of = HashMap::new();
    let mut identities = vec![0; index.objects.len()];
    for (s, outs) in index.from.iter().enumerate() {
        for (u, t) in outs {
            if *t == s && u.is_identity() {
                identities[s] = arrows.len();
            }
            arrow_of.insert((u.clone(), *t), arrows.len());
            arrows.push((u.clone(), s, *t));
        }
    }
    let names: Vec<String> = index.objects.iter().map(|o| b.describe(o)).collect();
    let morphisms: Vec<Morphism> = arrows
        .iter()
        .map(|(u, s, t)| Morphism { source: *s, target: *t, name: format!("{:?}:{}->{}", u, names[*s], names[*t]) })
        .collect();
    let category = FiniteCategory::from_composition(names, morphisms, identities, |f, g| {
        let (u, _, _) = &arrows[f];
        let (v, _, t) = &arrows[g];
        arrow_of[&(v.after(u), *t)]
    });
    let w = arrows.iter().map(|(u, _, _)| u.at(0) == 0).collect();
    let s = arrows.iter().map(|(u, _, _)| u.at(u.dom()) == u.cod()).collect();
    Ok(SimplexCategory { base: b.clone(), variant, index, category, arrows, arrow_of, w, s })
}

/// Which vertex of each simplex the vertex map evaluates at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexDirection {
    /// `p_B: N(Δ/B) -> B`.
    Last,
    /// `q_B: N(Δ/B)^op -> B`.
    Initial,
}

impl SimplexCategory {
    pub fn num_objects(&self) -> usize {
        self.index.objects.len()
    }

    pub fn object(&self, o: usize) -> &SimplexRef {
        &self.index.objects[o]
    }

    /// The morphism `u: σ -> τ`, if `σ` and `τ` are objects and `τ ∘ u = σ`.
    pub fn arrow(&self, u: &MonotoneMap, target: usize) -> Option<usize> {
        self.arrow_of.get(&(u.clone(), target)).copied()
    }

    /// The nerve, exact when every chain of non-identities is shorter than `trunc + 1`.
    pub fn nerve(&self, trunc: usize) -> Nerve {
        nerve_of(&self.category, trunc)
    }

    /// The nerve at the smallest exact level for the nondegenerate variant.
    pub fn nerve_exact(&self) -> Result<Nerve> {
        if self.variant != Variant::Nondegenerate {
            return Err(Error::Truncation("the truncated full variant has an infinite nerve".into()));
        }
        Ok(self.nerve(self.base.dim().unwrap_or(0)))
    }

    /// Objects of the chain underlying a nerve generator.
    fn chain_objects(&self, ch: &Chain) -> Vec<usize> {
        let mut objs = vec![ch.start as usize];
        objs.extend(ch.morphs.iter().map(|&m| self.arrows[m as usize].2));
        objs
    }

    /// For the chain `σ₀ -> ⋯ -> σₖ`, the image in `σₖ` of a chosen vertex of each `σᵢ`.
    fn vertex_images(&self, ch: &Chain, pick: impl Fn(&MonotoneMap) -> usize) -> Vec<usize> {
        let objs = self.chain_objects(ch);
        let k = ch.morphs.len();
        let top = self.object(objs[k]).dim();
        let mut comp = MonotoneMap::identity(top);
        let mut out = vec![0; k + 1];
        for i in (0..=k).rev() {
            if i < k {
                comp = comp.after(&self.arrows[ch.morphs[i] as usize].0);
            }
            out[i] = pick(&comp);
        }
        out
    }

    /// `p_B` or `q_B` on a nerve of this category.
    pub fn vertex_map(&self, nerve: &Nerve, direction: VertexDirection) -> Result<SimplicialMap> {
        let b = &self.base;
        let mut images = Vec::with_capacity(nerve.chains.len());
        for ch in &nerve.chains {
            let objs = self.chain_objects(ch);
            let top = self.object(*objs.last().unwrap());
            let values = match direction {
                VertexDirection::Last => self.vertex_images(ch, |c| c.at(c.dom())),
                VertexDirection::Initial => {
                    let mut v = self.vertex_images(ch, |c| c.at(0));
                    v.reverse();
                    v
                }
            };
            images.push(b.apply(top, &MonotoneMap::new(top.dim(), values)?));
        }
        let source = match direction {
            VertexDirection::Last => nerve.set.clone(),
            VertexDirection::Initial => Arc::new(opposite(&nerve.set)),
        };
        SimplicialMap::new(source, b.clone(), images)
    }

    /// Non-identity arrows of `S` as edges of the nerve.
    pub fn s_edges(&self, nerve: &Nerve) -> Vec<SimplexRef> {
        self.marked_edges(nerve, &self.s)
    }

    pub fn w_edges(&self, nerve: &Nerve) -> Vec<SimplexRef> {
        self.marked_edges(nerve, &self.w)
    }

    fn marked_edges(&self, nerve: &Nerve, marks: &[bool]) -> Vec<SimplexRef> {
        (0..self.arrows.len())
            .filter(|&m| marks[m] && !self.category.is_identity(m))
            .filter_map(|m| {
                let ch = Chain { start: self.arrows[m].1 as u32, morphs: std::iter::once(m as u32).collect() };
                nerve.simplex_of(&ch)
            })
            .collect()
    }
}

/// `p_B` or `q_B`, with the category and the nerve it is defined on.
pub fn vertex_map_nerve(b: &Arc<SimplicialSet>, variant: Variant, direction: VertexDirection, trunc: usize) -> Result<(SimplexCategory, Nerve, SimplicialMap)> {
    let sc = simplex_category(b, variant)?;
    let nerve = sc.nerve(trunc);
    let map = sc.vertex_map(&nerve, direction)?;
    Ok((sc, nerve, map))
}

/// A simplicial set with a set of marked edges.
#[derive(Clone, Debug)]
pub struct MarkedSSet {
    pub carrier: Arc<SimplicialSet>,
    pub marks: Vec<SimplexRef>,
}

impl MarkedSSet {
    pub fn new(carrier: Arc<SimplicialSet>, marks: Vec<SimplexRef>) -> Result<Self> {
        for m in &marks {
            if m.dim() != 1 || m.gen.index() >= carrier.num_generators() || carrier.generator(m.gen).dim != m.deg.cod() {
                return Err(Error::Invalid(format!("mark {m:?} is not an edge of the carrier")));
            }
        }
        Ok(MarkedSSet { carrier, marks })
    }
}

/// `L(X, S)`: one copy of `sk_t J` glued along each marked edge.
#[derive(Clone, Debug)]
pub struct QuasiLocalization {
    pub set: Arc<SimplicialSet>,
    /// `X -> L(X, S)`.
    pub map: SimplicialMap,
    /// `sk_t J -> L(X, S)` for each mark.
    pub intervals: Vec<SimplicialMap>,
    pub j_trunc: usize,
    /// `⊔I -> ⊔ sk_t J` and `⊔I -> X`, when `S` is nonempty.
    attaching: Option<(SimplicialMap, SimplicialMap)>,
    interval_sum: Option<(Arc<SimplicialSet>, Vec<SimplicialMap>)>,
    origin: Option<crate::sset::Pushout>,
}

impl QuasiLocalization {
    /// Homology of `L(X, S)` stands for the localization only below this degree.
    pub fn trusted_below(&self) -> usize {
        self.j_trunc
    }

    /// The map out of `L(X, S)` given on `X` and on each interval.
    pub fn mediate(&self, on_x: &SimplicialMap, on_intervals: &[SimplicialMap]) -> Result<SimplicialMap> {
        match (&self.attaching, &self.interval_sum, &self.origin) {
            (Some((f, g)), Some((sum, incs)), Some(po)) => {
                let hj = copair(sum, incs, on_intervals)?;
                po.mediate(f, g, &hj, on_x)
            }
            _ => Ok(on_x.clone()),
        }
    }
}

pub fn quasi_localize(m: &MarkedSSet, j_trunc: usize) -> Result<QuasiLocalization> {
    if j_trunc == 0 {
        return Err(Error::OutOfRange("sk_0 J has no edge to glue".into()));
    }
    let x = &m.carrier;
    if m.marks.is_empty() {
        return Ok(QuasiLocalization {
            set: x.clone(),
            map: SimplicialMap::identity(x.clone()),
            intervals: vec![],
            j_trunc,
            attaching: None,
            interval_sum: None,
            origin: None,
        });
    }
    let d1 = Arc::new(simplex(1));
    let j = Arc::new(sk_j(j_trunc));
    let k = m.marks.len();
    let (i_sum, i_incs) = coproduct_many(&vec![d1.clone(); k]);
    let (j_sum, j_incs) = coproduct_many(&vec![j.clone(); k]);
    let edge = sk_j_edge(&j);
    let to_j: Vec<SimplicialMap> = j_incs.iter().map(|inc| simplex_map(&j_sum, &inc.image(&edge), &d1)).collect();
    let to_x: Vec<SimplicialMap> = m.marks.iter().map(|s| simplex_map(x, s, &d1)).collect();
    let f = copair(&i_sum, &i_incs, &to_j)?;
    let g = copair(&i_sum, &i_incs, &to_x)?;
    let po = pushout(&f, &g);
    let intervals = j_incs.iter().map(|inc| po.inl.after(inc)).collect::<Result<Vec<_>>>()?;
    Ok(QuasiLocalization {
        set: po.set.clone(),
        map: po.inr.clone(),
        intervals,
        j_trunc,
        attaching: Some((f, g)),
        interval_sum: Some((j_sum, j_incs)),
        origin: Some(po),
    })
}

/// `τ₁(L(X, S))` against `τ₁(X)[S⁻¹]`, through the functor fixing `X` and sending
/// each formal inverse to the reverse edge of its interval.
pub fn tau1_localization_agrees(m: &MarkedSSet, ql: &QuasiLocalization, budget: usize) -> Result<Verdict> {
    let scope = format!("τ₁(L(X,S)) ≅ τ₁(X)[S⁻¹], coset budget {budget}");
    let tx = tau1(&m.carrier)?;
    let tl = tau1(&ql.set)?;
    let marked: Vec<(usize, usize)> = m
        .marks
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_nondegenerate())
        .map(|(i, s)| (i, tx.edge.iter().position(|&e| e == s.gen).expect("marked edge of X")))
        .collect();
    let mut loc = tau1_localize(&tx.presentation, &marked.iter().map(|&(_, a)| a).collect::<Vec<_>>());
    let mut pl = tl.presentation.clone();
    loc.word_budget = budget;
    pl.word_budget = budget;
    let (cx, cl) = match (loc.enumerate(), pl.enumerate()) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(Verdict::inconclusive(scope, "coset enumeration exceeded the budget")),
    };
    let objs = tx.vertex.iter().map(|&v| tl.object_of(ql.map.of_generator(v).gen)).collect();
    let j = sk_j(ql.j_trunc);
    let back = j.simplex(j.find_generator("10").expect("sk_t J has the edge 10"));
    let mut arrows: Vec<Vec<usize>> = tx.edge.iter().map(|&e| tl.word_of(ql.map.of_generator(e))).collect();
    for &(i, _) in &marked {
        arrows.push(tl.word_of(&ql.intervals[i].image(&back)));
    }
    let functor = Functor::from_generators(&cx, &cl, objs, &arrows);
    Ok(match functor.is_isomorphism(&cx, &cl) {
        Ok(()) => Verdict::yes(scope, Witness::Datum(format!("isomorphism of categories with {} morphisms", cx.morphisms.len()))),
        Err(e) => Verdict::no(scope, Witness::Datum(e)),
    })
}

/// The two delocalization checks for `B`, over the nondegenerate simplex category:
/// `p_B` is a homology isomorphism through degree 2, and `τ₁(L(N(Δ/B), S))`
/// is equivalent to `τ₁(B)` through the map induced by `p_B`.
pub fn delocalization_check(b: &Arc<SimplicialSet>, j_trunc: usize, budget: &Budget) -> Result<Verdict> {
    let sc = simplex_category(b, Variant::Nondegenerate)?;
    let nerve = sc.nerve_exact()?;
    let p = sc.vertex_map(&nerve, VertexDirection::Last)?;
    let scope = format!("delocalization over nondegenerate simplices, sk_{j_trunc} J intervals");
    let homology = induces_homology_iso(&p, 2).with_scope("p_B homology isomorphism through degree 2");
    let marked = MarkedSSet::new(nerve.set.clone(), sc.s_edges(&nerve))?;
    let ql = quasi_localize(&marked, j_trunc)?;
    let collapse: Vec<SimplicialMap> = marked
        .marks
        .iter()
        .zip(&ql.intervals)
        .map(|(s, inc)| SimplicialMap::constant(inc.source().clone(), b.clone(), p.image(s).gen))
        .collect();
    let pbar = ql.mediate(&p, &collapse)?;
    let tau = tau1_equivalence(&pbar, budget.cosets).with_scope("τ₁(L(N(Δ/B), S)) -> τ₁(B) equivalence");
    Ok(Verdict::all(scope, vec![homology, tau]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::homology;
    use crate::sset::standard::{boundary, horn};
    use crate::sset::{hom_enumerate, op_simplex, GenId};

    fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(x)
    }

    fn bases() -> Vec<(&'static str, Arc<SimplicialSet>)> {
        vec![
            ("Δ[0]", arc(simplex(0))),
            ("Δ[1]", arc(simplex(1))),
            ("Δ[2]", arc(simplex(2))),
            ("∂Δ[2]", boundary(2).unwrap().0),
            ("Λ¹[2]", horn(2, 1).unwrap().0),
        ]
    }

    #[test]
    fn simplex_category_examples() {
        let sc = simplex_category(&arc(simplex(0)), Variant::Nondegenerate).unwrap();
        assert_eq!((sc.num_objects(), sc.arrows.len()), (1, 1));
        let d1 = arc(simplex(1));
        let sc = simplex_category(&d1, Variant::Nondegenerate).unwrap();
        assert_eq!(sc.num_objects(), 3);
        let non_id: Vec<usize> = (0..sc.arrows.len()).filter(|&m| !sc.category.is_identity(m)).collect();
        assert_eq!(non_id.len(), 2);
        for &m in &non_id {
            let (_, s, _) = &sc.arrows[m];
            let v = sc.base.vertex(sc.object(*s), 0);
            // {1} -> {01} is final-vertex, {0} -> {01} is initial-vertex
            assert_eq!(sc.s[m], v == GenId(1));
            assert_eq!(sc.w[m], v == GenId(0));
        }
        // Δ[0], full up to 1: the vertex and its degenerate edge; maps [0]->[0], [0]->[1] (two), [1]->[0], [1]->[1] (three)
        let sc = simplex_category(&arc(simplex(0)), Variant::TruncatedFull(1)).unwrap();
        assert_eq!(sc.num_objects(), 2);
        assert_eq!(sc.arrows.len(), 1 + 2 + 1 + 3);
    }

    #[test]
    fn w_and_s_are_wide_subcategories() {
        for (name, b) in bases() {
            for variant in [Variant::Nondegenerate, Variant::TruncatedFull(1)] {
                let sc = simplex_category(&b, variant).unwrap();
                let c = &sc.category;
                for o in 0..sc.num_objects() {
                    assert!(sc.w[c.identities[o]] && sc.s[c.identities[o]], "{name}");
                }
                for f in 0..sc.arrows.len() {
                    let (u, s, t) = &sc.arrows[f];
                    assert_eq!(&sc.base.apply(sc.object(*t), u), sc.object(*s), "{name}");
                    for &g in &c.from[*t] {
                        let h = c.compose(f, g);
                        assert!(!(sc.w[f] && sc.w[g]) || sc.w[h], "{name}: W not closed");
                        assert!(!(sc.s[f] && sc.s[g]) || sc.s[h], "{name}: S not closed");
                    }
                }
            }
        }
    }

    #[test]
    fn last_vertex_map_examples() {
        let d0 = arc(simplex(0));
        let (_, n, p) = vertex_map_nerve(&d0, Variant::Nondegenerate, VertexDirection::Last, 2).unwrap();
        assert_eq!(n.set.counts(), vec![1]);
        assert_eq!(p.images().len(), 1);
        let d1 = arc(simplex(1));
        let sc = simplex_category(&d1, Variant::Nondegenerate).unwrap();
        let n = sc.nerve_exact().unwrap();
        let p = sc.vertex_map(&n, VertexDirection::Last).unwrap();
        let edge = d1.simplex(GenId(2));
        let top = sc.index.object(&edge).unwrap();
        assert_eq!(p.of_generator(n.object_vertex(top)), &d1.simplex(GenId(1)));
        // the chain {0} -> {01} goes to the edge
        let zero = sc.index.object(&d1.simplex(GenId(0))).unwrap();
        let u = MonotoneMap::new(1, [0]).unwrap();
        let m = sc.arrow(&u, top).unwrap();
        let ch = Chain { start: zero as u32, morphs: std::iter::once(m as u32).collect() };
        assert_eq!(p.image(&n.simplex_of(&ch).unwrap()), edge);
    }

    #[test]
    fn last_vertex_map_collapses_s() {
        for (name, b) in bases() {
            let sc = simplex_category(&b, Variant::Nondegenerate).unwrap();
            let n = sc.nerve_exact().unwrap();
            let p = sc.vertex_map(&n, VertexDirection::Last).unwrap();
            for e in sc.s_edges(&n) {
                assert!(!p.image(&e).is_nondegenerate(), "{name}");
            }
        }
    }

    #[test]
    fn initial_vertex_map_is_conjugate_to_last_vertex_of_the_opposite() {
        for (name, b) in bases() {
            let bop = arc(opposite(&b));
            let sc = simplex_category(&b, Variant::Nondegenerate).unwrap();
            let so = simplex_category(&bop, Variant::Nondegenerate).unwrap();
            let n = sc.nerve_exact().unwrap();
            let no = so.nerve_exact().unwrap();
            let q = sc.vertex_map(&n, VertexDirection::Initial).unwrap();
            let p_op = so.vertex_map(&no, VertexDirection::Last).unwrap();
            // Δ/B ≅ Δ/B^op: σ ↦ σ^op, u ↦ reversed u
            for (g, ch) in n.chains.iter().enumerate() {
                let start = so.index.object(&op_simplex(sc.object(ch.start as usize))).unwrap();
                let morphs = ch
                    .morphs
                    .iter()
                    .map(|&m| {
                        let (u, _, t) = &sc.arrows[m as usize];
                        let t2 = so.index.object(&op_simplex(sc.object(*t))).unwrap();
                        so.arrow(&u.reversed(), t2).unwrap() as u32
                    })
                    .collect();
                let image = no.simplex_of(&Chain { start: start as u32, morphs }).unwrap();
                assert!(image.is_nondegenerate());
                let expected = op_simplex(p_op.of_generator(image.gen));
                assert_eq!(q.of_generator(GenId(g as u32)), &expected, "{name}, generator {g}");
            }
        }
    }

    #[test]
    fn subdivision_homology_matches() {
        for n in 0..=3 {
            let b = arc(simplex(n));
            let sc = simplex_category(&b, Variant::Nondegenerate).unwrap();
            let nerve = sc.nerve_exact().unwrap();
            let h = homology(&nerve.set, 3);
            assert!(h.degree(0).unwrap().same_group(homology(&b, 0).degree(0).unwrap()));
            let p = sc.vertex_map(&nerve, VertexDirection::Last).unwrap();
            assert!(induces_homology_iso(&p, 3).is_yes(), "Δ[{n}]");
        }
    }

    #[test]
    fn quasi_localize_examples() {
        let d1 = arc(simplex(1));
        let m = MarkedSSet::new(d1.clone(), vec![]).unwrap();
        let ql = quasi_localize(&m, 2).unwrap();
        assert!(ql.set.same_structure(&d1));
        let m = MarkedSSet::new(d1.clone(), vec![d1.simplex(GenId(2))]).unwrap();
        let ql = quasi_localize(&m, 2).unwrap();
        // sk_2 J glued to Δ[1] along 01: vertices 2, edges 01 and 10, two triangles
        assert_eq!(ql.set.counts(), vec![2, 2, 2]);
        let c = tau1(&ql.set).unwrap().presentation.enumerate().unwrap();
        assert!(c.is_groupoid());
        assert_eq!(c.morphisms.len(), 4);
        assert!(tau1_localization_agrees(&m, &ql, 1000).unwrap().is_yes());
        assert!(MarkedSSet::new(d1.clone(), vec![d1.simplex(GenId(0))]).is_err());
    }

    #[test]
    fn quasi_localization_is_a_pushout() {
        // cocones (h_X, h_J) into Z against maps L -> Z, for X = Λ⁰[2] with one marked edge
        let (x, _) = horn(2, 0).unwrap();
        let e = x.simplex(x.generators_of_dim(1)[0]);
        let m = MarkedSSet::new(x.clone(), vec![e.clone()]).unwrap();
        let ql = quasi_localize(&m, 2).unwrap();
        let j = ql.intervals[0].source().clone();
        let je = sk_j_edge(&j);
        for z in [arc(simplex(1)), arc(sk_j(2)), boundary(2).unwrap().0] {
            let from_l = hom_enumerate(&ql.set, &z, None).unwrap().maps;
            let from_x = hom_enumerate(&x, &z, None).unwrap().maps;
            let from_j = hom_enumerate(&j, &z, None).unwrap().maps;
            let mut cocones = 0;
            for hx in &from_x {
                for hj in &from_j {
                    if hx.image(&e) == hj.image(&je) {
                        cocones += 1;
                        let h = ql.mediate(hx, std::slice::from_ref(hj)).unwrap();
                        assert!(h.after(&ql.map).unwrap().same_as(hx));
                        assert!(h.after(&ql.intervals[0]).unwrap().same_as(hj));
                    }
                }
            }
            assert_eq!(cocones, from_l.len());
        }
    }

    #[test]
    fn delocalization_instances() {
        let budget = Budget::default();
        for (name, b) in bases() {
            let v = delocalization_check(&b, 2, &budget).unwrap();
            assert!(v.is_yes(), "{name}: {v}");
        }
    }

    #[test]
    fn tau1_of_localized_nerves() {
        for (name, b) in bases() {
            let sc = simplex_category(&b, Variant::Nondegenerate).unwrap();
            let n = sc.nerve_exact().unwrap();
            let m = MarkedSSet::new(n.set.clone(), sc.s_edges(&n)).unwrap();
            let ql = quasi_localize(&m, 2).unwrap();
            assert!(tau1_localization_agrees(&m, &ql, 10_000).unwrap().is_yes(), "{name}");
        }
    }
}
