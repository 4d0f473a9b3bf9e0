//! Limits, colimits, joins, slices and mapping spaces.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{build_levelwise, standard, GenId, MapSearch, SimplexRef, SimplicialMap, SimplicialSet};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};

fn min_trunc(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn cap(top: usize, t: Option<usize>) -> usize {
    t.map_or(top, |t| top.min(t))
}

/// Splits a pair of simplices of equal dimension into `(a', b') ∘ e`, with the
/// pair `(a', b')` jointly nondegenerate and `e` surjective.
fn joint_reduction(a: &SimplexRef, b: &SimplexRef) -> (SimplexRef, SimplexRef, MonotoneMap) {
    let n = a.dim();
    let mut e = smallvec::SmallVec::<[u8; 8]>::new();
    let mut keep = Vec::new();
    for i in 0..=n {
        if i > 0 && a.deg.at(i) == a.deg.at(i - 1) && b.deg.at(i) == b.deg.at(i - 1) {
            e.push((keep.len() - 1) as u8);
        } else {
            keep.push(i);
            e.push((keep.len() - 1) as u8);
        }
    }
    let m = keep.len() - 1;
    let restrict = |s: &SimplexRef| SimplexRef {
        gen: s.gen,
        deg: MonotoneMap::from_raw(s.deg.cod(), keep.iter().map(|&i| s.deg.raw()[i]).collect()),
    };
    (restrict(a), restrict(b), MonotoneMap::from_raw(m, e))
}

/// Normal forms of pairs of simplices in a product or pullback.
#[derive(Clone, Debug, Default)]
pub struct PairIndex {
    levels: Vec<HashMap<(SimplexRef, SimplexRef), SimplexRef>>,
    /// The pair each generator stands for.
    pub pairs: Vec<(SimplexRef, SimplexRef)>,
}

impl PairIndex {
    fn from_levels(levels: Vec<HashMap<(SimplexRef, SimplexRef), SimplexRef>>, set: &SimplicialSet) -> Self {
        let mut pairs = vec![None; set.num_generators()];
        for level in &levels {
            for (k, v) in level {
                if v.is_nondegenerate() {
                    pairs[v.gen.index()] = Some(k.clone());
                }
            }
        }
        PairIndex { levels, pairs: pairs.into_iter().map(|p| p.expect("every generator has a pair")).collect() }
    }

    pub fn pair(&self, a: &SimplexRef, b: &SimplexRef) -> Option<SimplexRef> {
        let (a1, b1, e) = joint_reduction(a, b);
        let r = self.levels.get(a1.dim())?.get(&(a1, b1))?;
        Some(r.degenerate_by(&e))
    }
}

/// `X × Y` with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub set: Arc<SimplicialSet>,
    pub pr1: SimplicialMap,
    pub pr2: SimplicialMap,
    pub index: PairIndex,
}

impl Product {
    pub fn pair(&self, a: &SimplexRef, b: &SimplexRef) -> SimplexRef {
        self.index.pair(a, b).expect("pair of simplices of equal dimension")
    }

    /// The map `(f, g): Z -> X × Y`.
    pub fn lift(&self, f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
        let images = f.images().iter().zip(g.images()).map(|(a, b)| self.pair(a, b)).collect();
        SimplicialMap::new_unchecked(f.source().clone(), self.set.clone(), images)
    }
}

fn pair_levels_to_set(
    levels: Vec<Vec<(SimplexRef, SimplexRef)>>,
    x: &SimplicialSet,
    y: &SimplicialSet,
    truncation: Option<usize>,
) -> (SimplicialSet, Vec<HashMap<(SimplexRef, SimplexRef), SimplexRef>>) {
    build_levelwise(
        levels,
        |n, (a, b), i| {
            let d = MonotoneMap::coface(n, i);
            (x.apply(a, &d), y.apply(b, &d))
        },
        |_, (a, b), i| (a.degenerate(i), b.degenerate(i)),
        |(a, b)| format!("({},{})", x.describe(a), y.describe(b)),
        truncation,
    )
    .expect("pair levels are closed")
}

pub fn product(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Product {
    let truncation = min_trunc(x.truncation(), y.truncation());
    let top = match (x.dim(), y.dim()) {
        (Some(a), Some(b)) => cap(a + b, truncation),
        _ => 0,
    };
    let levels: Vec<Vec<(SimplexRef, SimplexRef)>> = if x.is_empty() || y.is_empty() {
        vec![]
    } else {
        (0..=top)
            .map(|n| {
                let ys = y.simplices(n);
                x.simplices(n).into_iter().flat_map(|a| ys.iter().map(move |b| (a.clone(), b.clone()))).collect()
            })
            .collect()
    };
    let (set, index) = pair_levels_to_set(levels, x, y, truncation);
    let set = Arc::new(set);
    let index = PairIndex::from_levels(index, &set);
    let pr1 = SimplicialMap::new_unchecked(set.clone(), x.clone(), index.pairs.iter().map(|p| p.0.clone()).collect());
    let pr2 = SimplicialMap::new_unchecked(set.clone(), y.clone(), index.pairs.iter().map(|p| p.1.clone()).collect());
    Product { set, pr1, pr2, index }
}

/// `f × g: A × C -> B × D`.
pub fn product_map(f: &SimplicialMap, g: &SimplicialMap, source: &Product, target: &Product) -> SimplicialMap {
    let images = source.index.pairs.iter().map(|(a, c)| target.pair(&f.image(a), &g.image(c))).collect();
    SimplicialMap::new_unchecked(source.set.clone(), target.set.clone(), images)
}

/// Fiber product `X ×_B Y` with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub set: Arc<SimplicialSet>,
    pub pr1: SimplicialMap,
    pub pr2: SimplicialMap,
    pub index: PairIndex,
}

impl Pullback {
    pub fn pair(&self, a: &SimplexRef, b: &SimplexRef) -> Option<SimplexRef> {
        self.index.pair(a, b)
    }

    /// The mediating map `Z -> X ×_B Y` of a commuting cone.
    pub fn lift(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        let images = f
            .images()
            .iter()
            .zip(g.images())
            .map(|(a, b)| self.pair(a, b).ok_or_else(|| Error::Invalid("cone over the pullback does not commute".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap::new_unchecked(f.source().clone(), self.set.clone(), images))
    }

    /// The composite `X ×_B Y -> B`.
    pub fn to_base(&self, f: &SimplicialMap) -> SimplicialMap {
        f.after(&self.pr1).expect("projection lands in the source of f")
    }
}

pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Pullback {
    let x = f.source();
    let y = g.source();
    let truncation = min_trunc(min_trunc(x.truncation(), y.truncation()), f.target().truncation());
    let levels: Vec<Vec<(SimplexRef, SimplexRef)>> = match (x.dim(), y.dim()) {
        (Some(a), Some(b)) => (0..=cap(a + b, truncation))
            .map(|n| {
                let mut over: HashMap<SimplexRef, Vec<SimplexRef>> = HashMap::new();
                for b in y.simplices(n) {
                    over.entry(g.image(&b)).or_default().push(b);
                }
                let mut level = Vec::new();
                for a in x.simplices(n) {
                    if let Some(bs) = over.get(&f.image(&a)) {
                        level.extend(bs.iter().map(|b| (a.clone(), b.clone())));
                    }
                }
                level
            })
            .collect(),
        _ => vec![],
    };
    let (set, index) = pair_levels_to_set(levels, x, y, truncation);
    let set = Arc::new(set);
    let index = PairIndex::from_levels(index, &set);
    let pr1 = SimplicialMap::new_unchecked(set.clone(), x.clone(), index.pairs.iter().map(|p| p.0.clone()).collect());
    let pr2 = SimplicialMap::new_unchecked(set.clone(), y.clone(), index.pairs.iter().map(|p| p.1.clone()).collect());
    Pullback { set, pr1, pr2, index }
}

/// Where a generator of a pushout comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Left(SimplexRef),
    Right(SimplexRef),
}

/// `B ⊔_A C` with its two legs.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub set: Arc<SimplicialSet>,
    pub inl: SimplicialMap,
    pub inr: SimplicialMap,
    pub origin: Vec<Origin>,
}

impl Pushout {
    /// The map `B ⊔_A C -> Z` induced by a cocone `(h_B, h_C)`.
    pub fn mediate(&self, f: &SimplicialMap, g: &SimplicialMap, hb: &SimplicialMap, hc: &SimplicialMap) -> Result<SimplicialMap> {
        let a = f.source();
        for (ga, _) in a.generators() {
            let s = a.simplex(ga);
            if hb.image(&f.image(&s)) != hc.image(&g.image(&s)) {
                return Err(Error::Invalid("cocone legs disagree on the shared object".into()));
            }
        }
        let images = self
            .origin
            .iter()
            .map(|o| match o {
                Origin::Left(s) => hb.image(s),
                Origin::Right(s) => hc.image(s),
            })
            .collect();
        SimplicialMap::new(self.set.clone(), hb.target().clone(), images)
    }
}

/// Pushout of `B <-f- A -g-> C`. Monomorphic legs take a direct route; otherwise
/// simplices are identified levelwise by union-find and renormalized.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Pushout {
    if f.is_mono() {
        return pushout_along_mono(f, g, false);
    }
    if g.is_mono() {
        return pushout_along_mono(g, f, true);
    }
    pushout_general(f, g)
}

/// `i: A -> B` mono, `g: A -> C`; the result is `C` with the generators of `B`
/// outside the image of `i` attached. With `swapped`, the legs are reported in the
/// order `(g-side, i-side)`.
fn pushout_along_mono(i: &SimplicialMap, g: &SimplicialMap, swapped: bool) -> Pushout {
    let b = i.target();
    let c = g.target();
    let mut preimage: HashMap<GenId, GenId> = HashMap::new();
    for (ga, _) in i.source().generators() {
        preimage.insert(i.of_generator(ga).gen, ga);
    }
    let mut set = (**c).clone();
    set.set_truncation(min_trunc(b.truncation(), c.truncation()));
    let mut origin: Vec<Origin> = c.generators().map(|(gc, _)| Origin::Right(c.simplex(gc))).collect();
    let mut new_id: HashMap<GenId, GenId> = HashMap::new();
    let mut order: Vec<GenId> = b.generators().map(|(gb, _)| gb).collect();
    order.sort_by_key(|gb| (b.generator(*gb).dim, *gb));
    let image_of = |s: &SimplexRef, new_id: &HashMap<GenId, GenId>| -> SimplexRef {
        match preimage.get(&s.gen) {
            Some(ga) => g.image(&i.source().simplex(*ga)).degenerate_by(&s.deg),
            None => SimplexRef { gen: new_id[&s.gen], deg: s.deg.clone() },
        }
    };
    for gb in order {
        if preimage.contains_key(&gb) {
            continue;
        }
        let gen = b.generator(gb);
        let faces = gen.faces.iter().map(|f| image_of(f, &new_id)).collect();
        let id = set.push_generator(gen.name.clone(), gen.dim, faces);
        new_id.insert(gb, id);
        origin.push(Origin::Left(b.simplex(gb)));
    }
    let set = Arc::new(set);
    let leg_b = SimplicialMap::new_unchecked(
        b.clone(),
        set.clone(),
        b.generators().map(|(gb, _)| image_of(&b.simplex(gb), &new_id)).collect(),
    );
    let leg_c = SimplicialMap::new_unchecked(c.clone(), set.clone(), c.generators().map(|(gc, _)| c.simplex(gc)).collect());
    if swapped {
        let origin = origin
            .into_iter()
            .map(|o| match o {
                Origin::Left(s) => Origin::Right(s),
                Origin::Right(s) => Origin::Left(s),
            })
            .collect();
        Pushout { set, inl: leg_c, inr: leg_b, origin }
    } else {
        Pushout { set, inl: leg_b, inr: leg_c, origin }
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

pub(crate) fn pushout_general(f: &SimplicialMap, g: &SimplicialMap) -> Pushout {
    let a = f.source();
    let b = f.target();
    let c = g.target();
    let truncation = min_trunc(b.truncation(), c.truncation());
    let top = cap(b.dim().unwrap_or(0).max(c.dim().unwrap_or(0)), truncation);
    // per level: the simplices of B then of C, and the class of each
    let mut elems: Vec<Vec<Origin>> = Vec::new();
    let mut class_of: Vec<HashMap<Origin, u32>> = Vec::new();
    for n in 0..=top {
        let bs = b.simplices(n);
        let cs = c.simplices(n);
        let mut all: Vec<Origin> = bs.into_iter().map(Origin::Left).collect();
        all.extend(cs.into_iter().map(Origin::Right));
        let pos: HashMap<Origin, u32> = all.iter().cloned().enumerate().map(|(i, o)| (o, i as u32)).collect();
        let mut parent: Vec<u32> = (0..all.len() as u32).collect();
        if n <= a.valid_up_to() {
            for s in a.simplices(n) {
                let x = find(&mut parent, pos[&Origin::Left(f.image(&s))]);
                let y = find(&mut parent, pos[&Origin::Right(g.image(&s))]);
                if x != y {
                    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                    parent[hi as usize] = lo;
                }
            }
        }
        let classes: HashMap<Origin, u32> =
            all.iter().enumerate().map(|(i, o)| (o.clone(), find(&mut parent, i as u32))).collect();
        elems.push(all);
        class_of.push(classes);
    }
    let levels: Vec<Vec<u32>> = class_of
        .iter()
        .map(|m| {
            let s: BTreeSet<u32> = m.values().copied().collect();
            s.into_iter().collect()
        })
        .collect();
    let apply = |o: &Origin, op: &MonotoneMap| match o {
        Origin::Left(s) => Origin::Left(b.apply(s, op)),
        Origin::Right(s) => Origin::Right(c.apply(s, op)),
    };
    let (set, index) = build_levelwise(
        levels,
        |n, &r, i| class_of[n - 1][&apply(&elems[n][r as usize], &MonotoneMap::coface(n, i))],
        |n, &r, i| class_of[n + 1][&apply(&elems[n][r as usize], &MonotoneMap::codegeneracy(n, i))],
        |_| String::new(),
        truncation,
    )
    .expect("quotient levels are closed");
    let mut set = set;
    let mut origin = vec![None; set.num_generators()];
    for (n, level) in index.iter().enumerate() {
        for (&r, s) in level {
            if s.is_nondegenerate() {
                origin[s.gen.index()] = Some(elems[n][r as usize].clone());
            }
        }
    }
    let origin: Vec<Origin> = origin.into_iter().map(|o| o.expect("generator has a representative")).collect();
    for (i, o) in origin.iter().enumerate() {
        let name = match o {
            Origin::Left(s) => b.describe(s),
            Origin::Right(s) => c.describe(s),
        };
        set.rename(GenId(i as u32), name);
    }
    let set = Arc::new(set);
    let leg = |o: Origin, n: usize| index[n][&class_of[n][&o]].clone();
    let inl = SimplicialMap::new_unchecked(
        b.clone(),
        set.clone(),
        b.generators().map(|(gb, gen)| leg(Origin::Left(b.simplex(gb)), gen.dim)).collect(),
    );
    let inr = SimplicialMap::new_unchecked(
        c.clone(),
        set.clone(),
        c.generators().map(|(gc, gen)| leg(Origin::Right(c.simplex(gc)), gen.dim)).collect(),
    );
    Pushout { set, inl, inr, origin }
}

/// `X ⊔ Y` with its inclusions.
pub fn coproduct(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> (Arc<SimplicialSet>, SimplicialMap, SimplicialMap) {
    let (set, incs) = coproduct_many(&[x.clone(), y.clone()]);
    let mut incs = incs.into_iter();
    (set, incs.next().unwrap(), incs.next().unwrap())
}

pub fn coproduct_many(parts: &[Arc<SimplicialSet>]) -> (Arc<SimplicialSet>, Vec<SimplicialMap>) {
    let truncation = parts.iter().fold(None, |t, p| min_trunc(t, p.truncation()));
    let mut set = SimplicialSet::with_truncation(truncation);
    let mut offsets = Vec::new();
    // generators are added in dimension order so that each block stays sorted
    let mut ids: Vec<HashMap<GenId, GenId>> = vec![HashMap::new(); parts.len()];
    let top = parts.iter().filter_map(|p| p.dim()).max();
    if let Some(top) = top {
        for d in 0..=top {
            for (k, p) in parts.iter().enumerate() {
                for &g in p.generators_of_dim(d) {
                    let gen = p.generator(g);
                    let faces = gen.faces.iter().map(|f| SimplexRef { gen: ids[k][&f.gen], deg: f.deg.clone() }).collect();
                    let name = if parts.len() > 1 { format!("{}.{}", k, gen.name) } else { gen.name.clone() };
                    let id = set.push_generator(name, d, faces);
                    ids[k].insert(g, id);
                }
            }
        }
    }
    offsets.extend(ids);
    let set = Arc::new(set);
    let incs = parts
        .iter()
        .zip(offsets)
        .map(|(p, ids)| {
            let images = p.generators().map(|(g, gen)| SimplexRef::nondegenerate(ids[&g], gen.dim)).collect();
            SimplicialMap::new_unchecked(p.clone(), set.clone(), images)
        })
        .collect();
    (set, incs)
}

/// The map `X ⊔ Y -> Z` out of a coproduct.
pub fn copair(sum: &Arc<SimplicialSet>, incs: &[SimplicialMap], legs: &[SimplicialMap]) -> Result<SimplicialMap> {
    let mut images = vec![None; sum.num_generators()];
    for (inc, leg) in incs.iter().zip(legs) {
        for (g, _) in inc.source().generators() {
            images[inc.of_generator(g).gen.index()] = Some(leg.of_generator(g).clone());
        }
    }
    let target = legs.first().map(|l| l.target().clone()).unwrap_or_else(|| Arc::new(SimplicialSet::empty()));
    SimplicialMap::new(sum.clone(), target, images.into_iter().map(|x| x.expect("coproduct covered")).collect())
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum JoinElt {
    L(SimplexRef),
    R(SimplexRef),
    P(SimplexRef, SimplexRef),
}

/// `X ⋆ Y`, with the inclusions of both ends.
pub fn join(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> (Arc<SimplicialSet>, SimplicialMap, SimplicialMap) {
    let truncation = min_trunc(x.truncation(), y.truncation());
    let dx = x.dim();
    let dy = y.dim();
    let top = match (dx, dy) {
        (Some(a), Some(b)) => a + b + 1,
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => 0,
    };
    let top = cap(top, truncation);
    let levels: Vec<Vec<JoinElt>> = if x.is_empty() && y.is_empty() {
        vec![]
    } else {
        (0..=top)
            .map(|n| {
                let mut level: Vec<JoinElt> = x.simplices(n).into_iter().map(JoinElt::L).collect();
                level.extend(y.simplices(n).into_iter().map(JoinElt::R));
                for i in 0..n {
                    let ys = y.simplices(n - 1 - i);
                    for a in x.simplices(i) {
                        level.extend(ys.iter().map(|b| JoinElt::P(a.clone(), b.clone())));
                    }
                }
                level
            })
            .collect()
    };
    let (set, index) = build_levelwise(
        levels,
        |n, e, k| match e {
            JoinElt::L(a) => JoinElt::L(x.face(a, k)),
            JoinElt::R(b) => JoinElt::R(y.face(b, k)),
            JoinElt::P(a, b) => {
                let i = a.dim();
                if k <= i {
                    if i == 0 {
                        JoinElt::R(b.clone())
                    } else {
                        JoinElt::P(x.face(a, k), b.clone())
                    }
                } else if b.dim() == 0 {
                    JoinElt::L(a.clone())
                } else {
                    let _ = n;
                    JoinElt::P(a.clone(), y.face(b, k - i - 1))
                }
            }
        },
        |_, e, k| match e {
            JoinElt::L(a) => JoinElt::L(a.degenerate(k)),
            JoinElt::R(b) => JoinElt::R(b.degenerate(k)),
            JoinElt::P(a, b) => {
                let i = a.dim();
                if k <= i {
                    JoinElt::P(a.degenerate(k), b.clone())
                } else {
                    JoinElt::P(a.clone(), b.degenerate(k - i - 1))
                }
            }
        },
        |e| match e {
            JoinElt::L(a) => x.describe(a),
            JoinElt::R(b) => format!("'{}", y.describe(b)),
            JoinElt::P(a, b) => format!("{}*{}", x.describe(a), y.describe(b)),
        },
        truncation,
    )
    .expect("join levels are closed");
    let set = Arc::new(set);
    let look = |e: JoinElt, n: usize| index[n][&e].clone();
    let inl = SimplicialMap::new_unchecked(
        x.clone(),
        set.clone(),
        x.generators().map(|(g, gen)| look(JoinElt::L(x.simplex(g)), gen.dim)).collect(),
    );
    let inr = SimplicialMap::new_unchecked(
        y.clone(),
        set.clone(),
        y.generators().map(|(g, gen)| look(JoinElt::R(y.simplex(g)), gen.dim)).collect(),
    );
    (set, inl, inr)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceSide {
    /// `B_{b/}`: simplices starting at `b`.
    Under,
    /// `B_{/b}`: simplices ending at `b`.
    Over,
}

/// A slice `B_{b/}` or `B_{/b}` with its projection to `B` and the vertex `s_0 b`.
#[derive(Clone, Debug)]
pub struct Slice {
    pub set: Arc<SimplicialSet>,
    pub projection: SimplicialMap,
    /// The vertex given by the identity at `b`.
    pub identity_vertex: GenId,
}

pub fn slice(b_set: &Arc<SimplicialSet>, b: GenId, side: SliceSide) -> Result<Slice> {
    if b_set.generator(b).dim != 0 {
        return Err(Error::OutOfRange(format!("slice point {} is not a vertex", b_set.name(b))));
    }
    let truncation = b_set.truncation().map(|t| t.saturating_sub(1));
    let top = cap(b_set.dim().unwrap_or(0), truncation);
    let levels: Vec<Vec<SimplexRef>> = (0..=top)
        .map(|n| {
            b_set
                .simplices(n + 1)
                .into_iter()
                .filter(|s| match side {
                    SliceSide::Under => b_set.vertex(s, 0) == b,
                    SliceSide::Over => b_set.vertex(s, n + 1) == b,
                })
                .collect()
        })
        .collect();
    let shift = match side {
        SliceSide::Under => 1,
        SliceSide::Over => 0,
    };
    let (set, index) = build_levelwise(
        levels,
        |_, s, i| b_set.face(s, i + shift),
        |_, s, i| s.degenerate(i + shift),
        |s| b_set.describe(s),
        truncation,
    )?;
    let set = Arc::new(set);
    let mut images = vec![None; set.num_generators()];
    for level in &index {
        for (s, r) in level {
            if r.is_nondegenerate() {
                let proj = match side {
                    SliceSide::Under => b_set.face(s, 0),
                    SliceSide::Over => b_set.face(s, s.dim()),
                };
                images[r.gen.index()] = Some(proj);
            }
        }
    }
    let projection = SimplicialMap::new_unchecked(set.clone(), b_set.clone(), images.into_iter().map(Option::unwrap).collect());
    let identity_vertex = index[0][&b_set.simplex(b).degenerate(0)].gen;
    Ok(Slice { set, projection, identity_vertex })
}

/// The opposite simplicial set; generator ids are preserved.
pub fn opposite(x: &SimplicialSet) -> SimplicialSet {
    let mut out = SimplicialSet::with_truncation(x.truncation());
    for (_, gen) in x.generators() {
        let n = gen.dim;
        let faces = (0..gen.faces.len())
            .map(|i| {
                let f = &gen.faces[n - i];
                SimplexRef { gen: f.gen, deg: f.deg.reversed() }
            })
            .collect();
        out.push_generator(gen.name.clone(), n, faces);
    }
    out
}

pub fn op_simplex(s: &SimplexRef) -> SimplexRef {
    SimplexRef { gen: s.gen, deg: s.deg.reversed() }
}

pub fn opposite_map(f: &SimplicialMap, source: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> SimplicialMap {
    SimplicialMap::new_unchecked(source, target, f.images().iter().map(op_simplex).collect())
}

/// Opposite of a map together with freshly built opposite endpoints.
pub fn opposite_of_map(f: &SimplicialMap) -> SimplicialMap {
    let s = Arc::new(opposite(f.source()));
    let t = Arc::new(opposite(f.target()));
    opposite_map(f, s, t)
}

/// The subcomplex generated by some generators, with its inclusion.
pub fn subcomplex(x: &Arc<SimplicialSet>, gens: &[GenId]) -> (Arc<SimplicialSet>, SimplicialMap) {
    let mut keep: BTreeSet<GenId> = BTreeSet::new();
    let mut stack: Vec<GenId> = gens.to_vec();
    while let Some(g) = stack.pop() {
        if keep.insert(g) {
            stack.extend(x.generator(g).faces.iter().map(|f| f.gen));
        }
    }
    let mut order: Vec<GenId> = keep.into_iter().collect();
    order.sort_by_key(|g| (x.generator(*g).dim, *g));
    let mut set = SimplicialSet::with_truncation(x.truncation());
    let mut ids: HashMap<GenId, GenId> = HashMap::new();
    for &g in &order {
        let gen = x.generator(g);
        let faces = gen.faces.iter().map(|f| SimplexRef { gen: ids[&f.gen], deg: f.deg.clone() }).collect();
        ids.insert(g, set.push_generator(gen.name.clone(), gen.dim, faces));
    }
    let set = Arc::new(set);
    let images = order.iter().map(|&g| x.simplex(g)).collect();
    (set.clone(), SimplicialMap::new_unchecked(set, x.clone(), images))
}

/// The fiber `p^{-1}(b)` over a vertex, as a subcomplex of the source.
pub fn fiber(p: &SimplicialMap, b: GenId) -> (Arc<SimplicialSet>, SimplicialMap) {
    let gens: Vec<GenId> = p.source().generators().filter(|(g, _)| p.of_generator(*g).gen == b).map(|(g, _)| g).collect();
    subcomplex(p.source(), &gens)
}

/// Drops generators above dimension `t` and records the truncation.
pub fn truncate(x: &Arc<SimplicialSet>, t: usize) -> Arc<SimplicialSet> {
    let gens: Vec<GenId> = x.generators().filter(|(_, g)| g.dim <= t).map(|(g, _)| g).collect();
    let (sub, _) = subcomplex(x, &gens);
    let mut sub = (*sub).clone();
    sub.set_truncation(min_trunc(Some(t), x.truncation()));
    Arc::new(sub)
}

/// The map `Δ[n] -> X` picking out an `n`-simplex.
pub fn simplex_map(x: &Arc<SimplicialSet>, s: &SimplexRef, delta: &Arc<SimplicialSet>) -> SimplicialMap {
    let images = delta.generators().map(|(g, _)| x.apply(s, &delta_simplex_as_map(delta, &delta.simplex(g)))).collect();
    SimplicialMap::new_unchecked(delta.clone(), x.clone(), images)
}

/// A simplex of `Δ[n]` as the monotone map listing its vertices.
pub fn delta_simplex_as_map(delta: &SimplicialSet, s: &SimplexRef) -> MonotoneMap {
    let n = delta.generators_of_dim(0).len() - 1;
    MonotoneMap::from_raw(n, delta.vertex_list(s).iter().map(|v| v.0 as u8).collect())
}

/// The simplex of `Δ[n]` with the given vertex sequence.
pub fn delta_simplex_from_map(delta: &SimplicialSet, f: &MonotoneMap) -> SimplexRef {
    let (e, m) = f.epi_mono_factor();
    let name: Vec<usize> = m.values().collect();
    let label = if name.iter().all(|&v| v < 10) {
        name.iter().map(|v| v.to_string()).collect::<String>()
    } else {
        name.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
    };
    let g = delta.find_generator(&label).expect("face of the standard simplex");
    SimplexRef { gen: g, deg: e }
}

/// Mapping spaces `map(K, X)`, their relative versions, and cotensors.
///
/// An `n`-simplex is a map `Δ[n] × K -> X`, optionally together with a simplex of
/// the base it lies over.
#[derive(Clone, Debug)]
pub struct MappingSpace {
    pub set: Arc<SimplicialSet>,
    /// `Δ[n] × K` for `n <= trunc`.
    pub products: Vec<Product>,
    index: Vec<HashMap<(Option<SimplexRef>, Vec<SimplexRef>), SimplexRef>>,
    /// For each generator: its base simplex and its map `Δ[n] × K -> X`.
    pub data: Vec<(Option<SimplexRef>, Vec<SimplexRef>)>,
    /// The projection to the base, for cotensors.
    pub to_base: Option<SimplicialMap>,
}

impl MappingSpace {
    pub fn lookup(&self, base: Option<SimplexRef>, f: Vec<SimplexRef>, n: usize) -> Option<SimplexRef> {
        self.index.get(n)?.get(&(base, f)).cloned()
    }
}

/// Which maps `Δ[n] × K -> X` count as `n`-simplices.
pub enum MappingKind<'a> {
    /// All maps.
    Plain,
    /// Maps over `B`: `p_X ∘ f == p_K ∘ pr2`.
    Over { p_k: &'a SimplicialMap, p_x: &'a SimplicialMap },
    /// Cotensor over `B`: `p_X ∘ f == β ∘ pr1` for some `β ∈ B_n`.
    Cotensor { p_x: &'a SimplicialMap },
}

pub fn mapping_space(k: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, trunc: usize) -> Result<MappingSpace> {
    mapping_space_general(k, x, trunc, MappingKind::Plain)
}

/// `map_B(X, Y)` for `X, Y` over `B`.
pub fn mapping_space_over(p_x: &SimplicialMap, p_y: &SimplicialMap, trunc: usize) -> Result<MappingSpace> {
    mapping_space_general(p_x.source(), p_y.source(), trunc, MappingKind::Over { p_k: p_x, p_x: p_y })
}

/// The cotensor `Y^K` over `B`.
pub fn cotensor(k: &Arc<SimplicialSet>, p_y: &SimplicialMap, trunc: usize) -> Result<MappingSpace> {
    mapping_space_general(k, p_y.source(), trunc, MappingKind::Cotensor { p_x: p_y })
}

pub fn mapping_space_general(k: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, trunc: usize, kind: MappingKind<'_>) -> Result<MappingSpace> {
    let deltas: Vec<Arc<SimplicialSet>> = (0..=trunc).map(|n| Arc::new(standard::simplex(n))).collect();
    let products: Vec<Product> = deltas.iter().map(|d| product(d, k)).collect();
    let base = match &kind {
        MappingKind::Cotensor { p_x } => Some(p_x.target().clone()),
        _ => None,
    };
    let mut levels: Vec<Vec<(Option<SimplexRef>, Vec<SimplexRef>)>> = Vec::new();
    for n in 0..=trunc {
        let prod = &products[n];
        let mut level = Vec::new();
        match &kind {
            MappingKind::Plain => {
                MapSearch::new(&prod.set, x).run(|imgs| {
                    level.push((None, imgs.to_vec()));
                    std::ops::ControlFlow::Continue(())
                })?;
            }
            MappingKind::Over { p_k, p_x } => {
                let expected: Vec<SimplexRef> = prod.index.pairs.iter().map(|(_, kk)| p_k.image(kk)).collect();
                let filter = |g: GenId, c: &SimplexRef| p_x.image(c) == expected[g.index()];
                MapSearch::new(&prod.set, x).filter(&filter).run(|imgs| {
                    level.push((None, imgs.to_vec()));
                    std::ops::ControlFlow::Continue(())
                })?;
            }
            MappingKind::Cotensor { p_x } => {
                let b = p_x.target();
                b.check_level(n, "cotensor")?;
                for beta in b.simplices(n) {
                    let expected: Vec<SimplexRef> = prod
                        .index
                        .pairs
                        .iter()
                        .map(|(d, _)| b.apply(&beta, &delta_simplex_as_map(&deltas[n], d)))
                        .collect();
                    let filter = |g: GenId, c: &SimplexRef| p_x.image(c) == expected[g.index()];
                    MapSearch::new(&prod.set, x).filter(&filter).run(|imgs| {
                        level.push((Some(beta.clone()), imgs.to_vec()));
                        std::ops::ControlFlow::Continue(())
                    })?;
                }
            }
        }
        levels.push(level);
    }
    // reindexing tables: generators of Δ[n∓1] × K as simplices of Δ[n] × K
    let reindex = |from: usize, to: usize, op: &MonotoneMap| -> Vec<SimplexRef> {
        products[from]
            .index
            .pairs
            .iter()
            .map(|(d, kk)| {
                let dm = delta_simplex_as_map(&deltas[from], d);
                let moved = delta_simplex_from_map(&deltas[to], &op.after(&dm));
                products[to].pair(&moved, kk)
            })
            .collect()
    };
    let face_tables: Vec<Vec<Vec<SimplexRef>>> =
        (0..=trunc).map(|n| if n == 0 { vec![] } else { (0..=n).map(|i| reindex(n - 1, n, &MonotoneMap::coface(n, i))).collect() }).collect();
    let degen_tables: Vec<Vec<Vec<SimplexRef>>> =
        (0..=trunc).map(|n| if n == trunc { vec![] } else { (0..=n).map(|i| reindex(n + 1, n, &MonotoneMap::codegeneracy(n, i))).collect() }).collect();
    let pull = |table: &[SimplexRef], f: &[SimplexRef]| -> Vec<SimplexRef> { table.iter().map(|r| x.apply(&f[r.gen.index()], &r.deg)).collect() };
    let base_ref = base.clone();
    let (set, index) = build_levelwise(
        levels,
        |n, (beta, f), i| {
            let b2 = beta.as_ref().map(|bt| base_ref.as_ref().unwrap().face(bt, i));
            (b2, pull(&face_tables[n][i], f))
        },
        |n, (beta, f), i| (beta.as_ref().map(|bt| bt.degenerate(i)), pull(&degen_tables[n][i], f)),
        |_| String::new(),
        Some(trunc),
    )?;
    let mut set = set;
    let mut data = vec![None; set.num_generators()];
    for level in &index {
        for (key, r) in level {
            if r.is_nondegenerate() {
                data[r.gen.index()] = Some(key.clone());
            }
        }
    }
    let data: Vec<(Option<SimplexRef>, Vec<SimplexRef>)> = data.into_iter().map(Option::unwrap).collect();
    for i in 0..data.len() {
        set.rename(GenId(i as u32), format!("m{i}"));
    }
    let set = Arc::new(set);
    let to_base = base.map(|b| {
        SimplicialMap::new_unchecked(set.clone(), b, data.iter().map(|(beta, _)| beta.clone().unwrap()).collect())
    });
    Ok(MappingSpace { set, products, index, data, to_base })
}

#[cfg(test)]
mod tests {
    use super::super::standard::{boundary, horn, simplex};
    use super::super::{find_isomorphism, hom_enumerate};
    use super::*;

    fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(x)
    }

    #[test]
    fn product_counts() {
        let d0 = arc(simplex(0));
        let d1 = arc(simplex(1));
        let d2 = arc(simplex(2));
        let p = product(&d1, &d1);
        assert_eq!(p.set.counts(), vec![4, 5, 2]);
        p.set.validate().unwrap();
        let p = product(&d1, &d2);
        assert_eq!(p.set.counts()[3], 3);
        let p = product(&d2, &d0);
        assert!(find_isomorphism(&p.set, &d2).unwrap().is_some());
    }

    #[test]
    fn pair_of_degenerate_simplices_normalizes() {
        let d1 = arc(simplex(1));
        let p = product(&d1, &d1);
        let e = d1.simplex(d1.generators_of_dim(1)[0]);
        let v0 = d1.simplex(d1.generators_of_dim(0)[0]);
        // (s0 e, s1 e) is the nondegenerate 2-simplex; (s0 e, s0 e) is degenerate
        let x = p.pair(&e.degenerate(0), &e.degenerate(1));
        assert!(x.is_nondegenerate());
        let y = p.pair(&e.degenerate(0), &e.degenerate(0));
        assert_eq!(y, p.pair(&e, &e).degenerate(0));
        let z = p.pair(&v0.degenerate(0).degenerate(0), &e.degenerate(1));
        assert_eq!(z.dim(), 2);
        assert_eq!(p.pr2.image(&z), e.degenerate(1));
    }

    #[test]
    fn join_examples() {
        let d0 = arc(simplex(0));
        let d1 = arc(simplex(1));
        let empty = arc(SimplicialSet::empty());
        let (j, _, _) = join(&d0, &d0);
        assert!(find_isomorphism(&j, &d1).unwrap().is_some());
        let (j, _, _) = join(&d1, &d0);
        assert!(find_isomorphism(&j, &arc(simplex(2))).unwrap().is_some());
        j.validate().unwrap();
        let (j, _, _) = join(&d1, &empty);
        assert!(find_isomorphism(&j, &d1).unwrap().is_some());
        let (j, _, _) = join(&d1, &d1);
        assert!(find_isomorphism(&j, &arc(simplex(3))).unwrap().is_some());
    }

    #[test]
    fn slice_examples() {
        let d0 = arc(simplex(0));
        let s = slice(&d0, GenId(0), SliceSide::Under).unwrap();
        assert_eq!(s.set.counts(), vec![1]);
        let d2 = arc(simplex(2));
        let s = slice(&d2, GenId(0), SliceSide::Under).unwrap();
        assert_eq!(s.set.counts(), vec![3, 3, 1]);
        s.projection.validate().unwrap();
        let d1 = arc(simplex(1));
        let s = slice(&d1, GenId(1), SliceSide::Under).unwrap();
        assert_eq!(s.set.counts(), vec![1]);
        let s = slice(&d2, GenId(2), SliceSide::Over).unwrap();
        assert!(find_isomorphism(&s.set, &d2).unwrap().is_some());
        let s = slice(&d1, GenId(0), SliceSide::Over).unwrap();
        assert_eq!(s.set.counts(), vec![1]);
    }

    #[test]
    fn opposite_examples() {
        let (h0, _) = horn(2, 0).unwrap();
        let (h2, _) = horn(2, 2).unwrap();
        let op = arc(opposite(&h0));
        assert!(find_isomorphism(&op, &h2).unwrap().is_some());
        assert!(opposite(&op).same_structure(&h0));
        let d3 = simplex(3);
        let op = arc(opposite(&d3));
        op.validate().unwrap();
        assert!(find_isomorphism(&op, &arc(d3)).unwrap().is_some());
    }

    #[test]
    fn pullback_fiber() {
        let d2 = arc(simplex(2));
        let s = slice(&d2, GenId(0), SliceSide::Under).unwrap();
        let d0 = arc(simplex(0));
        let b = SimplicialMap::new(d0.clone(), d2.clone(), vec![d2.simplex(GenId(1))]).unwrap();
        let pb = pullback(&b, &s.projection);
        let (f, _) = fiber(&s.projection, GenId(1));
        assert_eq!(pb.set.counts(), f.counts());
        assert_eq!(pb.set.counts(), vec![1]);
    }

    #[test]
    fn pushout_wedge_and_identity() {
        let d0 = arc(simplex(0));
        let d1 = arc(simplex(1));
        let a = SimplicialMap::new(d0.clone(), d1.clone(), vec![d1.simplex(GenId(1))]).unwrap();
        let b = SimplicialMap::new(d0.clone(), d1.clone(), vec![d1.simplex(GenId(0))]).unwrap();
        let po = pushout(&a, &b);
        assert_eq!(po.set.counts(), vec![3, 2]);
        let po2 = pushout_general(&a, &b);
        assert_eq!(po2.set.counts(), vec![3, 2]);
        let id = SimplicialMap::identity(d1.clone());
        let (bd, inc) = boundary(1).unwrap();
        let g = inc.clone();
        let po = pushout(&SimplicialMap::identity(bd.clone()), &g);
        assert!(find_isomorphism(&po.set, &d1).unwrap().is_some());
        let _ = id;
    }

    #[test]
    fn general_pushout_collapses_edge() {
        // collapsing the edge of Δ[1] to a point: Δ[1] <- Δ[1] -> Δ[0]
        let d0 = arc(simplex(0));
        let d1 = arc(simplex(1));
        let (bd, inc) = boundary(1).unwrap();
        let to_pt = SimplicialMap::constant(bd.clone(), d0.clone(), GenId(0));
        let po = pushout(&inc, &to_pt);
        assert_eq!(po.set.counts(), vec![1, 1]);
        let squash = SimplicialMap::constant(d1.clone(), d0.clone(), GenId(0));
        let po = pushout_general(&SimplicialMap::identity(d1.clone()), &squash);
        assert_eq!(po.set.counts(), vec![1]);
    }

    #[test]
    fn mapping_space_examples() {
        let d0 = arc(simplex(0));
        let d1 = arc(simplex(1));
        let m = mapping_space(&d1, &d1, 2).unwrap();
        assert_eq!(m.set.counts()[0], 3);
        let m = mapping_space(&d0, &arc(simplex(2)), 3).unwrap();
        assert_eq!(m.set.counts(), vec![3, 3, 1]);
        m.set.validate().unwrap();
        // vertices of map(L, X) are maps L -> X
        let (b, _) = boundary(2).unwrap();
        let m = mapping_space(&b, &arc(simplex(2)), 1).unwrap();
        assert_eq!(m.set.counts()[0], hom_enumerate(&b, &arc(simplex(2)), None).unwrap().maps.len());
    }
}
