//! Simplicial presheaves on a simplex category: `Sing`, `Re`, W-locality and the
//! mapping simplex.
//!
//! `Re F` is computed as the coend `∫^σ F(σ) × Δ[dim σ]`, which is the diagonal of
//! the bisimplicial set `(y/B)_! F`. Simplices are triples `(σ, a, b)` with
//! `a ∈ F(σ)_k` and `b: [k] -> [dim σ]`, identified along
//! `(σ, F(u)a, b) ~ (τ, a, u ∘ b)` by a union-find per level.

use std::collections::HashMap;
use std::sync::Arc;

use super::SimplexCategory;
use crate::delta::{monotone_maps, MonotoneMap};
use crate::error::{Error, Result};
use crate::homotopy::{weak_equivalence_check, Budget};
use crate::lifting::{classify_fibration, FibrationKind};
use crate::sset::standard::simplex;
use crate::sset::{
    delta_simplex_as_map, delta_simplex_from_map, mapping_space_over, simplex_map, GenId, MappingSpace, SimplexRef,
    SimplicialMap, SimplicialSet,
};
use crate::verdict::Verdict;

/// A functor `C^op -> sSet` on a simplex category `C`.
#[derive(Clone, Debug)]
pub struct SimplicialPresheaf {
    pub domain: Arc<SimplexCategory>,
    pub values: Vec<Arc<SimplicialSet>>,
    /// `F(u): F(τ) -> F(σ)` for each morphism `u: σ -> τ`.
    pub restrictions: Vec<SimplicialMap>,
}

impl SimplicialPresheaf {
    pub fn new(domain: Arc<SimplexCategory>, values: Vec<Arc<SimplicialSet>>, restrictions: Vec<SimplicialMap>) -> Result<Self> {
        let f = SimplicialPresheaf { domain, values, restrictions };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.domain.category;
        if self.values.len() != c.objects.len() || self.restrictions.len() != c.morphisms.len() {
            return Err(Error::Invalid("presheaf data does not match its domain".into()));
        }
        for (m, r) in self.restrictions.iter().enumerate() {
            let mm = &c.morphisms[m];
            if !r.source().same_structure(&self.values[mm.target]) || !r.target().same_structure(&self.values[mm.source]) {
                return Err(Error::DomainMismatch(format!("restriction along {} has the wrong endpoints", mm.name)));
            }
            if c.is_identity(m) && !r.same_as(&SimplicialMap::identity(r.source().clone())) {
                return Err(Error::Invalid(format!("restriction along the identity of {} is not the identity", c.objects[mm.source])));
            }
            for &g in &c.from[mm.target] {
                let fg = c.compose(m, g);
                if !r.after(&self.restrictions[g])?.same_as(&self.restrictions[fg]) {
                    return Err(Error::Invalid(format!("restrictions along {} and {} do not compose", mm.name, c.morphisms[g].name)));
                }
            }
        }
        Ok(())
    }

    /// The least truncation among the values.
    pub fn truncation(&self) -> Option<usize> {
        self.values.iter().filter_map(|v| v.truncation()).min()
    }
}

fn discrete(n: usize, name: impl Fn(usize) -> String) -> Arc<SimplicialSet> {
    let mut x = SimplicialSet::empty();
    for i in 0..n {
        x.push_generator(name(i), 0, vec![]);
    }
    Arc::new(x)
}

/// The representable presheaf `C(-, σ)` with discrete values.
pub fn representable(domain: &Arc<SimplexCategory>, o: usize) -> Result<SimplicialPresheaf> {
    let c = &domain.category;
    let homs: Vec<Vec<usize>> = (0..c.objects.len()).map(|t| c.hom(t, o)).collect();
    let values: Vec<Arc<SimplicialSet>> = homs.iter().map(|h| discrete(h.len(), |i| c.morphisms[h[i]].name.clone())).collect();
    let restrictions = (0..c.morphisms.len())
        .map(|m| {
            let mm = &c.morphisms[m];
            let images = homs[mm.target]
                .iter()
                .map(|&v| {
                    let pos = homs[mm.source].iter().position(|&w| w == c.compose(m, v)).expect("composite lies in the hom-set");
                    SimplexRef::nondegenerate(GenId(pos as u32), 0)
                })
                .collect();
            SimplicialMap::new(values[mm.target].clone(), values[mm.source].clone(), images)
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialPresheaf::new(domain.clone(), values, restrictions)
}

/// Precomposition `map(K, X) -> map(K', X)` along `k: K' -> K`.
pub(super) fn precompose(from: &MappingSpace, to: &MappingSpace, k: &SimplicialMap, x: &SimplicialSet) -> Result<SimplicialMap> {
    let mut images = Vec::with_capacity(from.data.len());
    for (g, (base, f)) in from.data.iter().enumerate() {
        let j = from.set.generator(GenId(g as u32)).dim;
        let src = &from.products[j];
        let restricted: Vec<SimplexRef> = to.products[j]
            .index
            .pairs
            .iter()
            .map(|(d, kk)| {
                let r = src.pair(d, &k.image(kk));
                x.apply(&f[r.gen.index()], &r.deg)
            })
            .collect();
        let img = to
            .lookup(base.clone(), restricted, j)
            .ok_or_else(|| Error::Invalid(format!("restriction of a {j}-simplex is not in the target mapping space")))?;
        images.push(img);
    }
    SimplicialMap::new(from.set.clone(), to.set.clone(), images)
}

/// `Sing(X)` with the mapping spaces it was evaluated from.
#[derive(Clone, Debug)]
pub struct SingPresheaf {
    pub presheaf: SimplicialPresheaf,
    /// `map_B(Δ[dim σ], X)` for each object `σ`.
    pub spaces: Vec<MappingSpace>,
    pub structure: SimplicialMap,
}

/// `Sing(X)(σ) = map_B(Δ[dim σ], X)`, restricted by precomposition, up to level `trunc`.
pub fn presheaf_sing(p: &SimplicialMap, domain: &Arc<SimplexCategory>, trunc: usize) -> Result<SingPresheaf> {
    let b = &domain.base;
    if !p.target().same_structure(b) {
        return Err(Error::DomainMismatch("X is not over the base of the simplex category".into()));
    }
    let top = domain.index.objects.iter().map(|o| o.dim()).max().unwrap_or(0);
    let deltas: Vec<Arc<SimplicialSet>> = (0..=top).map(|n| Arc::new(simplex(n))).collect();
    let spaces = domain
        .index
        .objects
        .iter()
        .map(|o| mapping_space_over(&simplex_map(p.target(), o, &deltas[o.dim()]), p, trunc))
        .collect::<Result<Vec<_>>>()?;
    let restrictions = domain
        .arrows
        .iter()
        .map(|(u, s, t)| {
            let (ds, dt) = (&deltas[u.dom()], &deltas[u.cod()]);
            let images = ds.generators().map(|(g, _)| delta_simplex_from_map(dt, &u.after(&delta_simplex_as_map(ds, &ds.simplex(g))))).collect();
            let k = SimplicialMap::new(ds.clone(), dt.clone(), images)?;
            precompose(&spaces[*t], &spaces[*s], &k, p.source())
        })
        .collect::<Result<Vec<_>>>()?;
    let values = spaces.iter().map(|m| m.set.clone()).collect();
    let presheaf = SimplicialPresheaf::new(domain.clone(), values, restrictions)?;
    Ok(SingPresheaf { presheaf, spaces, structure: p.clone() })
}

type Triple = (usize, SimplexRef, MonotoneMap);

/// `Re F` over `B`, with a representative triple for each generator.
#[derive(Clone, Debug)]
pub struct Realization {
    pub set: Arc<SimplicialSet>,
    pub to_base: SimplicialMap,
    /// `(σ, a, b)` with `a ∈ F(σ)` and `b: [k] -> [dim σ]`.
    pub representatives: Vec<Triple>,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// `Re F = ∫^σ F(σ) × Δ[dim σ]`, with levels capped at `cap` when given.
pub fn presheaf_re(f: &SimplicialPresheaf, cap: Option<usize>) -> Result<Realization> {
    let dom = &f.domain;
    let natural = match f.truncation() {
        Some(t) => (t, true),
        None => {
            let top = (0..dom.num_objects())
                .filter_map(|o| f.values[o].dim().map(|d| d + dom.object(o).dim()))
                .max()
                .unwrap_or(0);
            (top, false)
        }
    };
    let (top, truncated) = match cap {
        Some(c) if c < natural.0 => (c, true),
        _ => natural,
    };
    let mut triples: Vec<Vec<Triple>> = Vec::new();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut positions: Vec<HashMap<Triple, usize>> = Vec::new();
    for k in 0..=top {
        let mut level: Vec<Triple> = Vec::new();
        for o in 0..dom.num_objects() {
            let n = dom.object(o).dim();
            let bs = monotone_maps(k, n);
            for a in f.values[o].simplices(k) {
                for b in &bs {
                    level.push((o, a.clone(), b.clone()));
                }
            }
        }
        let pos: HashMap<Triple, usize> = level.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut parent: Vec<usize> = (0..level.len()).collect();
        for (m, (u, s, t)) in dom.arrows.iter().enumerate() {
            if dom.category.is_identity(m) {
                continue;
            }
            let r = &f.restrictions[m];
            for a in f.values[*t].simplices(k) {
                for b in monotone_maps(k, u.dom()) {
                    let lhs = pos[&(*s, r.image(&a), b.clone())];
                    let rhs = pos[&(*t, a.clone(), u.after(&b))];
                    let (x, y) = (find(&mut parent, lhs), find(&mut parent, rhs));
                    if x != y {
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
        let rep: Vec<usize> = (0..level.len()).map(|i| find(&mut parent, i)).collect();
        triples.push(level);
        reps.push(rep);
        positions.push(pos);
    }
    let levels: Vec<Vec<usize>> = reps.iter().map(|r| (0..r.len()).filter(|&i| r[i] == i).collect()).collect();
    let canon = |k: usize, t: &Triple| reps[k][positions[k][t]];
    let (set, index) = crate::sset::build_levelwise(
        levels,
        |k, &y, i| {
            let (o, a, b) = &triples[k][y];
            canon(k - 1, &(*o, f.values[*o].face(a, i), b.after(&MonotoneMap::coface(k, i))))
        },
        |k, &z, i| {
            let (o, a, b) = &triples[k][z];
            canon(k + 1, &(*o, a.degenerate(i), b.after(&MonotoneMap::codegeneracy(k, i))))
        },
        |_| String::new(),
        if truncated { Some(top) } else { None },
    )?;
    let mut set = set;
    let mut representatives = vec![None; set.num_generators()];
    for (k, level) in index.iter().enumerate() {
        for (&y, r) in level {
            if r.is_nondegenerate() {
                representatives[r.gen.index()] = Some(triples[k][y].clone());
            }
        }
    }
    let representatives: Vec<Triple> = representatives.into_iter().map(Option::unwrap).collect();
    for (g, (o, a, b)) in representatives.iter().enumerate() {
        let name = format!("{}|{}|{:?}", dom.category.objects[*o], f.values[*o].describe(a), b);
        set.rename(GenId(g as u32), name);
    }
    let set = Arc::new(set);
    let images = representatives.iter().map(|(o, _, b)| dom.base.apply(dom.object(*o), b)).collect();
    let to_base = SimplicialMap::new(set.clone(), dom.base.clone(), images)?;
    Ok(Realization { set, to_base, representatives })
}

/// The counit `Re Sing(X) -> X`: `(σ, a, b)` goes to `a` evaluated at `(ι, b)`.
pub fn re_sing_counit(sing: &SingPresheaf, re: &Realization) -> Result<SimplicialMap> {
    let x = sing.structure.source();
    let images = re
        .representatives
        .iter()
        .map(|(o, a, b)| {
            let ms = &sing.spaces[*o];
            let j = ms.set.generator(a.gen).dim;
            let (_, f) = &ms.data[a.gen.index()];
            let prod = &ms.products[j];
            let d = delta_simplex_from_map(prod.pr1.target(), &a.deg);
            let e = delta_simplex_from_map(prod.pr2.target(), b);
            let r = prod.pair(&d, &e);
            x.apply(&f[r.gen.index()], &r.deg)
        })
        .collect();
    SimplicialMap::new(re.set.clone(), x.clone(), images)
}

/// Kan values, and weak equivalences `F(σ) -> F(σ(0))` along the initial-vertex arrows.
///
/// Every arrow of `W` factors the initial-vertex arrow of its target through that
/// of its source, so by two-out-of-three these arrows suffice.
pub fn w_local_check(f: &SimplicialPresheaf, budget: &Budget) -> Result<Verdict> {
    let dom = &f.domain;
    let names = &dom.category.objects;
    let mut parts = Vec::new();
    let mut bound_used = 0;
    for (o, v) in f.values.iter().enumerate() {
        let natural = v.dim().unwrap_or(0) + 1;
        let bound = budget.dim_bound.unwrap_or(natural).min(v.valid_up_to());
        bound_used = bound_used.max(bound);
        let point = Arc::new(simplex(0));
        let to_point = SimplicialMap::constant(v.clone(), point, GenId(0));
        let kan = classify_fibration(&to_point, FibrationKind::Kan, bound)?;
        parts.push(kan.with_scope(format!("F({}) Kan up to dimension {bound}", names[o])));
    }
    for o in 0..dom.num_objects() {
        let sigma = dom.object(o);
        let n = sigma.dim();
        if n == 0 {
            continue;
        }
        let u = MonotoneMap::constant(0, n, 0);
        let m = dom.arrow(&u, o).ok_or_else(|| Error::Invalid(format!("initial vertex of {} is not an object", names[o])))?;
        let v = weak_equivalence_check(&f.restrictions[m], budget.cosets);
        parts.push(v.with_scope(format!("F({}) -> F({}) weak equivalence", names[o], names[dom.arrows[m].1])));
    }
    let scope = format!(
        "W-local over {}: Kan values up to dimension {bound_used}, initial-vertex comparisons, coset budget {}",
        dom.variant.describe(),
        budget.cosets
    );
    Ok(Verdict::all(scope, parts))
}

/// A functor `[n] -> sSet`: sets `φ₀, …, φₙ` and maps `φᵢ -> φᵢ₊₁`.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub values: Vec<Arc<SimplicialSet>>,
    pub maps: Vec<SimplicialMap>,
}

impl Diagram {
    pub fn new(values: Vec<Arc<SimplicialSet>>, maps: Vec<SimplicialMap>) -> Result<Self> {
        if values.is_empty() || maps.len() + 1 != values.len() {
            return Err(Error::Invalid("a diagram on [n] needs n + 1 sets and n maps".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if !m.source().same_structure(&values[i]) || !m.target().same_structure(&values[i + 1]) {
                return Err(Error::DomainMismatch(format!("map {i} does not go from φ{i} to φ{}", i + 1)));
            }
        }
        Ok(Diagram { values, maps })
    }

    /// `φ(i <= j)`.
    pub fn transport(&self, i: usize, j: usize) -> Result<SimplicialMap> {
        let mut m = SimplicialMap::identity(self.values[i].clone());
        for k in i..j {
            m = self.maps[k].after(&m)?.with_target(self.values[k + 1].clone());
        }
        Ok(m)
    }

    /// `q*φ` on a simplex category of `Δ[n]`: `σ ↦ φ_{σ(0)}`.
    pub fn along_initial_vertex(&self, domain: &Arc<SimplexCategory>) -> Result<SimplicialPresheaf> {
        let b = &domain.base;
        if b.vertices().len() != self.values.len() {
            return Err(Error::DomainMismatch(format!("a diagram on [{}] over a base with {} vertices", self.values.len() - 1, b.vertices().len())));
        }
        let first = |o: usize| b.vertex(domain.object(o), 0).index();
        let values = (0..domain.num_objects()).map(|o| self.values[first(o)].clone()).collect();
        let restrictions = domain
            .arrows
            .iter()
            .map(|(_, s, t)| self.transport(first(*t), first(*s)))
            .collect::<Result<Vec<_>>>()?;
        SimplicialPresheaf::new(domain.clone(), values, restrictions)
    }
}

/// `M(φ) = Re(q*φ)` over `Δ[n]`, using the nondegenerate simplex category.
pub fn mapping_simplex(phi: &Diagram, trunc: Option<usize>) -> Result<Realization> {
    let n = phi.values.len() - 1;
    let b = Arc::new(simplex(n));
    let domain = Arc::new(super::simplex_category(&b, crate::bisimplicial::Variant::Nondegenerate)?);
    presheaf_re(&phi.along_initial_vertex(&domain)?, trunc)
}

#[cfg(test)]
mod tests {
    use super::super::simplex_category;
    use super::*;
    use crate::bisimplicial::Variant;
    use crate::homotopy::is_covariant_equivalence;
    use crate::lifting::is_left_fibration;
    use crate::sset::standard::boundary;
    use crate::sset::{coproduct, fiber, find_isomorphism, product, product_map, pushout, slice, SliceSide};

    fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(x)
    }

    fn category(b: &Arc<SimplicialSet>, variant: Variant) -> Arc<SimplexCategory> {
        Arc::new(simplex_category(b, variant).unwrap())
    }

    #[test]
    fn re_of_representables_is_the_simplex() {
        for (b, variant) in [(arc(simplex(1)), Variant::Nondegenerate), (arc(simplex(2)), Variant::Nondegenerate), (arc(simplex(1)), Variant::TruncatedFull(1))] {
            let c = category(&b, variant);
            for o in 0..c.num_objects() {
                let f = representable(&c, o).unwrap();
                let re = presheaf_re(&f, None).unwrap();
                let d = arc(simplex(c.object(o).dim()));
                assert!(find_isomorphism(&re.set, &d).unwrap().is_some(), "object {}", c.category.objects[o]);
                // the structure map is σ itself
                let top = re.set.generators().max_by_key(|(_, g)| g.dim).map(|(g, _)| g).unwrap();
                assert_eq!(re.to_base.of_generator(top), c.object(o));
            }
        }
    }

    #[test]
    fn presheaf_functoriality_is_enforced() {
        // φ on [2] with two points everywhere and both maps the swap
        let p0 = arc(simplex(0));
        let (two, _, _) = coproduct(&p0, &p0);
        let swap = SimplicialMap::new(two.clone(), two.clone(), vec![two.simplex(GenId(1)), two.simplex(GenId(0))]).unwrap();
        let phi = Diagram::new(vec![two.clone(); 3], vec![swap.clone(), swap.clone()]).unwrap();
        let d2 = arc(simplex(2));
        let c = category(&d2, Variant::Nondegenerate);
        let f = phi.along_initial_vertex(&c).unwrap();
        // {1} -> {012} restricts by the swap; replacing it by the identity breaks {1} -> {12} -> {012}
        let m = (0..c.arrows.len())
            .find(|&m| {
                let (_, s, t) = &c.arrows[m];
                c.object(*s) == &d2.simplex(GenId(1)) && c.object(*t).dim() == 2
            })
            .unwrap();
        assert!(f.restrictions[m].same_as(&swap));
        let mut broken = f.clone();
        broken.restrictions[m] = SimplicialMap::identity(two.clone());
        assert!(broken.validate().is_err());
        let mut broken = f.clone();
        broken.restrictions[c.category.identities[0]] = swap.clone();
        assert!(broken.validate().is_err());
    }

    #[test]
    fn sing_values_are_mapping_spaces() {
        let d2 = arc(simplex(2));
        let s = slice(&d2, GenId(0), SliceSide::Under).unwrap();
        let c = category(&d2, Variant::Nondegenerate);
        let sing = presheaf_sing(&s.projection, &c, 2).unwrap();
        for o in 0..c.num_objects() {
            let sigma = c.object(o);
            let delta = arc(simplex(sigma.dim()));
            let direct = mapping_space_over(&simplex_map(&d2, sigma, &delta), &s.projection, 2).unwrap();
            assert_eq!(sing.presheaf.values[o].counts(), direct.set.counts());
        }
    }

    #[test]
    fn w_local_examples() {
        let d1 = arc(simplex(1));
        let c = category(&d1, Variant::Nondegenerate);
        let budget = Budget::default();
        // representable at the vertex 0: F(01) is empty but F(0) is not
        let v0 = c.index.object(&d1.simplex(GenId(0))).unwrap();
        let v = w_local_check(&representable(&c, v0).unwrap(), &budget).unwrap();
        assert!(v.is_no(), "{v}");
        // representable at the edge corresponds to id: Δ[1] -> Δ[1], a left fibration
        let e = c.index.object(&d1.simplex(GenId(2))).unwrap();
        assert!(w_local_check(&representable(&c, e).unwrap(), &budget).unwrap().is_yes());
        // over a point every Kan presheaf is local
        let p0 = arc(simplex(0));
        let c0 = category(&p0, Variant::Nondegenerate);
        assert!(w_local_check(&representable(&c0, 0).unwrap(), &budget).unwrap().is_yes());
        // Sing of a left fibration over Δ[1]
        let id = SimplicialMap::identity(d1.clone());
        let sing = presheaf_sing(&id, &c, 2).unwrap();
        assert!(w_local_check(&sing.presheaf, &budget).unwrap().is_yes());
    }

    #[test]
    fn mapping_simplex_examples() {
        let p0 = arc(simplex(0));
        let phi = Diagram::new(vec![p0.clone()], vec![]).unwrap();
        let m = mapping_simplex(&phi, None).unwrap();
        assert!(find_isomorphism(&m.set, &p0).unwrap().is_some());
        let phi = Diagram::new(vec![p0.clone(), p0.clone()], vec![SimplicialMap::identity(p0.clone())]).unwrap();
        let m = mapping_simplex(&phi, None).unwrap();
        assert!(find_isomorphism(&m.set, &arc(simplex(1))).unwrap().is_some());
        // the mapping cylinder of the fold Δ[0] ⊔ Δ[0] -> Δ[0]
        let (two, _, _) = coproduct(&p0, &p0);
        let fold = SimplicialMap::constant(two.clone(), p0.clone(), GenId(0));
        let phi = Diagram::new(vec![two.clone(), p0.clone()], vec![fold]).unwrap();
        let m = mapping_simplex(&phi, None).unwrap();
        assert_eq!(m.set.counts(), vec![3, 2]);
        for (i, value) in phi.values.iter().enumerate() {
            let (fib, _) = fiber(&m.to_base, GenId(i as u32));
            assert!(find_isomorphism(&fib, value).unwrap().is_some(), "fiber over {i}");
        }
    }

    #[test]
    fn mapping_simplex_is_re_of_the_pullback() {
        let (bd, _) = boundary(2).unwrap();
        let p0 = arc(simplex(0));
        let to_pt = SimplicialMap::constant(bd.clone(), p0.clone(), GenId(0));
        let phi = Diagram::new(vec![bd.clone(), p0.clone()], vec![to_pt]).unwrap();
        let m = mapping_simplex(&phi, None).unwrap();
        let c = category(&arc(simplex(1)), Variant::Nondegenerate);
        let re = presheaf_re(&phi.along_initial_vertex(&c).unwrap(), None).unwrap();
        assert!(m.set.same_structure(&re.set));
        // oracle: the mapping cylinder ∂Δ[2] × Δ[1] ⊔_{∂Δ[2] × {1}} Δ[0]
        let d1 = arc(simplex(1));
        let cyl = product(&bd, &d1);
        let end = product(&bd, &p0);
        let at_one = SimplicialMap::new(p0.clone(), d1.clone(), vec![d1.simplex(GenId(1))]).unwrap();
        let inc = product_map(&SimplicialMap::identity(bd.clone()), &at_one, &end, &cyl);
        let collapse = SimplicialMap::constant(end.set.clone(), p0.clone(), GenId(0));
        let po = pushout(&inc, &collapse);
        assert_eq!(m.set.counts(), vec![4, 9, 6]);
        assert!(find_isomorphism(&m.set, &po.set).unwrap().is_some());
    }

    #[test]
    fn counit_is_a_covariant_equivalence() {
        let d1 = arc(simplex(1));
        let c = category(&d1, Variant::Nondegenerate);
        let budget = Budget::default();
        let fibrations: Vec<SimplicialMap> = vec![
            SimplicialMap::identity(d1.clone()),
            slice(&d1, GenId(0), SliceSide::Under).unwrap().projection,
            SimplicialMap::new(arc(simplex(0)), d1.clone(), vec![d1.simplex(GenId(1))]).unwrap(),
        ];
        for p in fibrations {
            assert!(is_left_fibration(&p, 3).unwrap().is_yes());
            let sing = presheaf_sing(&p, &c, 2).unwrap();
            let re = presheaf_re(&sing.presheaf, None).unwrap();
            let eps = re_sing_counit(&sing, &re).unwrap();
            let v = is_covariant_equivalence(&eps, &re.to_base, &p, &budget).unwrap();
            assert!(v.is_yes(), "{v}");
        }
    }
}
