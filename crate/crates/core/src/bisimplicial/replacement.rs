//! Simplicial replacement over a finite index category of simplices of `B`.
//!
//! An `(m,n)`-bisimplex of `s(X)` is a chain `σ₀ -> ⋯ -> σₙ` of index objects, a
//! simplex `y ∈ Δ[dim σ₀]_m`, and `x ∈ X_m` with `p(x) = σ₀ ∘ y`. The presheaf
//! form `s_!X` instead carries `x ∈ X` lying exactly over `σₙ`.

use std::collections::HashMap;
use std::sync::Arc;

use smallvec::SmallVec;

use super::{box_product_to, build_columns, diagonal, BisimplicialMap, BisimplicialSet, BoxProduct, Built, Elements};
use crate::delta::{injections, monotone_maps, MonotoneMap};
use crate::error::{Error, Result};
use crate::homotopy::{is_covariant_equivalence, Budget};
use crate::sset::{standard, SimplexRef, SimplicialMap, SimplicialSet};
use crate::verdict::{Verdict, Witness};

/// Which finite part of the category of simplices of `B` indexes the chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// All simplices of dimension at most `d`, with all maps between them.
    TruncatedFull(usize),
    /// Nondegenerate simplices and the face maps between them.
    Nondegenerate,
}

impl Variant {
    pub fn describe(&self) -> String {
        match self {
            Variant::TruncatedFull(d) => format!("full simplex category truncated at dimension {d}"),
            Variant::Nondegenerate => "nondegenerate simplices".into(),
        }
    }

    /// `nondegenerate` or `full:<d>`.
    pub fn parse(s: &str) -> Option<Variant> {
        if s == "nondegenerate" || s == "nd" {
            return Some(Variant::Nondegenerate);
        }
        s.strip_prefix("full:").and_then(|d| d.parse().ok()).map(Variant::TruncatedFull)
    }
}

/// Objects are simplices of `B`; a morphism `σ -> τ` is `u` with `τ ∘ u = σ`.
#[derive(Clone, Debug)]
pub struct IndexCategory {
    pub objects: Vec<SimplexRef>,
    /// Morphisms out of each object, as `(u, target)`.
    pub from: Vec<Vec<(MonotoneMap, usize)>>,
    position: HashMap<SimplexRef, usize>,
}

impl IndexCategory {
    pub fn new(b: &SimplicialSet, variant: Variant) -> Result<Self> {
        let objects: Vec<SimplexRef> = match variant {
            Variant::Nondegenerate => b.generators().map(|(g, gen)| SimplexRef::nondegenerate(g, gen.dim)).collect(),
            Variant::TruncatedFull(d) => {
                b.check_level(d, "index category")?;
                (0..=d).flat_map(|k| b.simplices(k)).collect()
            }
        };
        let position: HashMap<SimplexRef, usize> = objects.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut from = vec![Vec::new(); objects.len()];
        for (t, tau) in objects.iter().enumerate() {
            let l = tau.dim();
            let maps: Vec<MonotoneMap> = match variant {
                Variant::Nondegenerate => (0..=l).flat_map(|k| injections(k, l)).collect(),
                Variant::TruncatedFull(d) => (0..=d).flat_map(|k| monotone_maps(k, l)).collect(),
            };
            for u in maps {
                let sigma = b.apply(tau, &u);
                if let Some(&s) = position.get(&sigma) {
                    from[s].push((u, t));
                }
            }
        }
        Ok(IndexCategory { objects, from, position })
    }

    pub fn object(&self, s: &SimplexRef) -> Option<usize> {
        self.position.get(s).copied()
    }

    fn dim(&self, o: u32) -> usize {
        self.objects[o as usize].dim()
    }

    pub fn num_morphisms(&self) -> usize {
        self.from.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// `s(X) = s(y/B) ×_{B□1} X□1`.
    Pullback,
    /// `s_!X`.
    Presheaf,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct ChainElt {
    x: SimplexRef,
    y: MonotoneMap,
    objs: SmallVec<[u32; 6]>,
    /// `us[i]: σᵢ -> σᵢ₊₁`.
    us: SmallVec<[MonotoneMap; 5]>,
}

struct ReplOps<'a> {
    x: &'a SimplicialSet,
    cat: &'a IndexCategory,
    form: Form,
}

impl Elements for ReplOps<'_> {
    type T = ChainElt;
    fn vface(&self, _: usize, n: usize, t: &ChainElt, j: usize) -> ChainElt {
        let mut t = t.clone();
        if j == 0 {
            t.y = t.us[0].after(&t.y);
            t.objs.remove(0);
            t.us.remove(0);
        } else if j == n {
            t.objs.pop();
            let u = t.us.pop().expect("chain of positive length");
            if self.form == Form::Presheaf {
                t.x = self.x.apply(&t.x, &u);
            }
        } else {
            let u = t.us.remove(j);
            t.us[j - 1] = u.after(&t.us[j - 1]);
            t.objs.remove(j);
        }
        t
    }
    fn vdegen(&self, _: usize, _: usize, t: &ChainElt, j: usize) -> ChainElt {
        let mut t = t.clone();
        let o = t.objs[j];
        t.objs.insert(j, o);
        t.us.insert(j, MonotoneMap::identity(self.cat.dim(o)));
        t
    }
    fn hface(&self, m: usize, _: usize, t: &ChainElt, i: usize) -> ChainElt {
        let mut t = t.clone();
        t.y = t.y.after(&MonotoneMap::coface(m, i));
        if self.form == Form::Pullback {
            t.x = self.x.face(&t.x, i);
        }
        t
    }
    fn hdegen(&self, m: usize, _: usize, t: &ChainElt, i: usize) -> ChainElt {
        let mut t = t.clone();
        t.y = t.y.after(&MonotoneMap::codegeneracy(m, i));
        if self.form == Form::Pullback {
            t.x = t.x.degenerate(i);
        }
        t
    }
}

/// `s(X)` or `s_!X`, with the structure map to `B□1`.
#[derive(Clone, Debug)]
pub struct Replacement {
    pub set: Arc<BisimplicialSet>,
    pub variant: Variant,
    pub form: Form,
    pub category: IndexCategory,
    pub base: BoxProduct,
    /// `(chain, y, x) ↦ σ₀ ∘ y`.
    pub to_base: BisimplicialMap,
    pub(crate) built: Built<ChainElt>,
}

impl Replacement {
    /// The `x` carried by a bisimplex of column `m`.
    pub fn x_of(&self, m: usize, s: &SimplexRef) -> &SimplexRef {
        &self.built.elements[m][s.gen.index()].x
    }

    /// Object chain and `y` of a generator of column `m`.
    pub fn chain_of(&self, m: usize, s: &SimplexRef) -> (Vec<usize>, MonotoneMap) {
        let e = &self.built.elements[m][s.gen.index()];
        (e.objs.iter().map(|&o| o as usize).collect(), e.y.clone())
    }
}

/// Columns `0..=h_top`, vertical levels `0..=v_top` (or fewer when the chains stop).
pub fn simplicial_replacement(p: &SimplicialMap, variant: Variant, h_top: usize, v_top: usize) -> Result<Replacement> {
    build_replacement(p, variant, Form::Pullback, h_top, v_top)
}

/// The presheaf form, whose row `n` is the coproduct of `Δ[dim σ₀]` over chains
/// `σ₀ -> ⋯ -> σₙ` together with a simplex of `X` over `σₙ`.
pub fn s_shriek(p: &SimplicialMap, variant: Variant, h_top: usize, v_top: usize) -> Result<Replacement> {
    build_replacement(p, variant, Form::Presheaf, h_top, v_top)
}

fn build_replacement(p: &SimplicialMap, variant: Variant, form: Form, h_top: usize, v_top: usize) -> Result<Replacement> {
    let x = p.source();
    let b = p.target();
    if x.truncation().is_some() || b.truncation().is_some() {
        return Err(Error::Truncation("simplicial replacement needs untruncated X and B".into()));
    }
    let cat = IndexCategory::new(b, variant)?;
    let obj_top = cat.objects.iter().map(|s| s.dim()).max().unwrap_or(0);
    // chains of non-identity morphisms are bounded only for the nondegenerate variant
    let (levels_top, v_exact) = match variant {
        Variant::Nondegenerate if v_top >= obj_top => (obj_top, true),
        _ => (v_top, false),
    };
    let ops = ReplOps { x, cat: &cat, form };
    let mut over: HashMap<SimplexRef, Vec<SimplexRef>> = HashMap::new();
    if form == Form::Presheaf {
        for k in 0..=obj_top {
            for s in x.simplices(k) {
                over.entry(p.image(&s)).or_default().push(s);
            }
        }
    }
    let mut levels: Vec<Vec<Vec<ChainElt>>> = Vec::new();
    for m in 0..=h_top {
        if form == Form::Presheaf {
            levels.push(presheaf_levels(&cat, &over, m, levels_top));
            continue;
        }
        let mut by_image: HashMap<SimplexRef, Vec<(u32, MonotoneMap)>> = HashMap::new();
        for (o, sigma) in cat.objects.iter().enumerate() {
            for y in monotone_maps(m, sigma.dim()) {
                by_image.entry(b.apply(sigma, &y)).or_default().push((o as u32, y));
            }
        }
        let mut base_level = Vec::new();
        for xs in x.simplices(m) {
            for (o, y) in by_image.get(&p.image(&xs)).map(Vec::as_slice).unwrap_or(&[]) {
                base_level.push(ChainElt { x: xs.clone(), y: y.clone(), objs: SmallVec::from_slice(&[*o]), us: SmallVec::new() });
            }
        }
        let mut col = vec![base_level];
        for n in 1..=levels_top {
            let mut next = Vec::new();
            for t in &col[n - 1] {
                let last = *t.objs.last().unwrap() as usize;
                for (u, tgt) in &cat.from[last] {
                    let mut t2 = t.clone();
                    t2.objs.push(*tgt as u32);
                    t2.us.push(u.clone());
                    next.push(t2);
                }
            }
            col.push(next);
        }
        levels.push(col);
    }
    let h_generated = match form {
        Form::Pullback => Some(x.dim().unwrap_or(0) + obj_top),
        Form::Presheaf => Some(obj_top),
    };
    let built = build_columns(&ops, levels, if v_exact { None } else { Some(levels_top) }, h_generated)?;
    let p0 = Arc::new(standard::simplex(0));
    let base = box_product_to(b, &p0, h_top)?;
    let pt = |n: usize| p0.simplices(n).remove(0);
    let to_base = base.map_from(&built, |_, n, t| (b.apply(&cat.objects[t.objs[0] as usize], &t.y), pt(n)))?;
    Ok(Replacement { set: built.set.clone(), variant, form, category: cat, base, to_base, built })
}

/// Chains `(y, σ₀ -> ⋯ -> σₙ, x)` with `x` over `σₙ`, built by extending at the front.
fn presheaf_levels(cat: &IndexCategory, over: &HashMap<SimplexRef, Vec<SimplexRef>>, m: usize, top: usize) -> Vec<Vec<ChainElt>> {
    let mut into: Vec<Vec<(MonotoneMap, usize)>> = vec![Vec::new(); cat.objects.len()];
    for (s, outs) in cat.from.iter().enumerate() {
        for (u, t) in outs {
            into[*t].push((u.clone(), s));
        }
    }
    // partial chains without y: (objs, us, x)
    let mut partial: Vec<Vec<(SmallVec<[u32; 6]>, SmallVec<[MonotoneMap; 5]>, SimplexRef)>> = vec![Vec::new()];
    for (o, sigma) in cat.objects.iter().enumerate() {
        for xs in over.get(sigma).map(Vec::as_slice).unwrap_or(&[]) {
            partial[0].push((SmallVec::from_slice(&[o as u32]), SmallVec::new(), xs.clone()));
        }
    }
    for n in 1..=top {
        let mut next = Vec::new();
        for (objs, us, xs) in &partial[n - 1] {
            for (u, s) in &into[objs[0] as usize] {
                let mut o2 = objs.clone();
                o2.insert(0, *s as u32);
                let mut u2 = us.clone();
                u2.insert(0, u.clone());
                next.push((o2, u2, xs.clone()));
            }
        }
        partial.push(next);
    }
    partial
        .into_iter()
        .map(|level| {
            level
                .into_iter()
                .flat_map(|(objs, us, xs)| {
                    monotone_maps(m, cat.dim(objs[0]))
                        .into_iter()
                        .map(move |y| ChainElt { x: xs.clone(), y, objs: objs.clone(), us: us.clone() })
                })
                .collect()
        })
        .collect()
}

/// Default column and level bounds for the augmentation check.
pub fn default_tops(x: &SimplicialSet, b: &SimplicialSet, variant: Variant) -> (usize, usize) {
    let dx = x.dim().unwrap_or(0);
    match variant {
        Variant::Nondegenerate => {
            let db = b.dim().unwrap_or(0);
            (dx + 2 * db, db)
        }
        Variant::TruncatedFull(d) => (d.max(1) + 1, d.max(1) + 1),
    }
}

/// The diagonal of `s(X) -> X□1`, i.e. `ds(X) -> X`, and whether it is a
/// covariant equivalence over `B`.
pub fn replacement_augmentation(p: &SimplicialMap, variant: Variant, budget: &Budget) -> Result<(SimplicialMap, Verdict)> {
    let (h, v) = default_tops(p.source(), p.target(), variant);
    replacement_augmentation_with(p, variant, h, v, budget)
}

pub fn replacement_augmentation_with(
    p: &SimplicialMap,
    variant: Variant,
    h_top: usize,
    v_top: usize,
    budget: &Budget,
) -> Result<(SimplicialMap, Verdict)> {
    let r = simplicial_replacement(p, variant, h_top, v_top)?;
    let d = diagonal(&r.set)?;
    let images = d.elements.iter().map(|s| r.x_of(s.dim(), s).clone()).collect();
    let aug = SimplicialMap::new(d.set.clone(), p.source().clone(), images)?;
    let p_ds = p.after(&aug)?;
    let v = is_covariant_equivalence(&aug, &p_ds, p, budget)?;
    let trunc = match d.set.truncation() {
        Some(t) => format!("diagonal truncated at {t}"),
        None => "exact diagonal".into(),
    };
    let scope = format!("{}; {}; {}", variant.describe(), trunc, v.scope);
    Ok((aug, v.with_scope(scope)))
}

/// In column `m` of `s(X)`, the fiber over `x` has the expected initial object:
/// `(p(x), id)` for the truncated full variant, `(z, e)` with `p(x) = z ∘ e` for the
/// nondegenerate one.
pub fn initial_object_check(p: &SimplicialMap, variant: Variant, x: &SimplexRef) -> Result<Verdict> {
    let b = p.target();
    let m = x.dim();
    let cat = IndexCategory::new(b, variant)?;
    let px = p.image(x);
    let (cand, y0) = match variant {
        Variant::TruncatedFull(d) => {
            if m > d {
                return Err(Error::OutOfRange(format!("simplex of dimension {m} above the index truncation {d}")));
            }
            (cat.object(&px).expect("every simplex up to d is an object"), MonotoneMap::identity(m))
        }
        Variant::Nondegenerate => (cat.object(&SimplexRef::nondegenerate(px.gen, b.generator(px.gen).dim)).unwrap(), px.deg.clone()),
    };
    let scope = format!("initial object of the fiber over a {m}-simplex, {}", variant.describe());
    let mut count = 0;
    for (o, sigma) in cat.objects.iter().enumerate() {
        for y in monotone_maps(m, sigma.dim()) {
            if b.apply(sigma, &y) != px {
                continue;
            }
            count += 1;
            let n = cat.from[cand].iter().filter(|(u, t)| *t == o && u.after(&y0) == y).count();
            if n != 1 {
                return Ok(Verdict::no(
                    scope,
                    Witness::Datum(format!("{n} morphisms from the candidate to ({}, {:?})", b.describe(sigma), y)),
                ));
            }
        }
    }
    Ok(Verdict::yes(scope, Witness::Datum(format!("({}, {:?}) is initial among {count} objects", b.describe(&cat.objects[cand]), y0))))
}

#[cfg(test)]
mod tests {
    use super::super::row;
    use super::*;
    use crate::sset::standard::{horn, simplex};

    fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(x)
    }

    #[test]
    fn point_over_point() {
        let p0 = arc(simplex(0));
        let id = SimplicialMap::identity(p0.clone());
        let r = simplicial_replacement(&id, Variant::Nondegenerate, 2, 2).unwrap();
        for n in 0..=2 {
            let rw = row(&r.set, n).unwrap();
            assert_eq!(rw.num_generators(), 1);
        }
        let (aug, v) = replacement_augmentation(&id, Variant::Nondegenerate, &Budget::default()).unwrap();
        assert!(aug.is_iso());
        assert!(v.is_yes(), "{v}");
    }

    /// Independent count: sum over `n`-chains of `|Δ[dim σ₀]_m|`, chains of
    /// monotone maps between simplices of `Δ[1]` of dimension `<= 1`.
    fn chain_count(n: usize, m: usize) -> usize {
        let b = simplex(1);
        let objs: Vec<SimplexRef> = (0..=1).flat_map(|k| b.simplices(k)).collect();
        let arrows = |s: &SimplexRef, t: &SimplexRef| monotone_maps(s.dim(), t.dim()).into_iter().filter(|u| b.apply(t, u) == *s).count();
        let mut ways: Vec<usize> = vec![1; objs.len()];
        // ways[i]: chains of the remaining length starting at objs[i]
        for _ in 0..n {
            ways = (0..objs.len()).map(|i| (0..objs.len()).map(|j| arrows(&objs[i], &objs[j]) * ways[j]).sum()).collect();
        }
        (0..objs.len()).map(|i| ways[i] * monotone_maps(m, objs[i].dim()).len()).sum()
    }

    #[test]
    fn rows_match_the_coproduct_formula() {
        let d1 = arc(simplex(1));
        let id = SimplicialMap::identity(d1.clone());
        let r = simplicial_replacement(&id, Variant::TruncatedFull(1), 2, 2).unwrap();
        for n in 0..=2 {
            for m in 0..=2 {
                assert_eq!(r.set.count(m, n), chain_count(n, m), "(m,n)=({m},{n})");
            }
        }
        let s = s_shriek(&id, Variant::TruncatedFull(1), 2, 2).unwrap();
        for n in 0..=2 {
            for m in 0..=2 {
                assert_eq!(s.set.count(m, n), chain_count(n, m));
            }
        }
    }

    #[test]
    fn initial_objects() {
        let d1 = arc(simplex(1));
        let id = SimplicialMap::identity(d1.clone());
        for m in 0..=2 {
            for x in d1.simplices(m) {
                assert!(initial_object_check(&id, Variant::TruncatedFull(2), &x).unwrap().is_yes());
                assert!(initial_object_check(&id, Variant::Nondegenerate, &x).unwrap().is_yes());
            }
        }
    }

    #[test]
    fn augmentation_over_an_edge() {
        let d1 = arc(simplex(1));
        let id = SimplicialMap::identity(d1.clone());
        let (_, v) = replacement_augmentation(&id, Variant::TruncatedFull(1), &Budget::default()).unwrap();
        assert!(v.is_yes(), "{v}");
    }

    #[test]
    fn augmentation_of_a_horn() {
        let (_, i) = horn(2, 0).unwrap();
        let (_, v) = replacement_augmentation(&i, Variant::Nondegenerate, &Budget::default()).unwrap();
        assert!(v.is_yes(), "{v}");
    }
}
