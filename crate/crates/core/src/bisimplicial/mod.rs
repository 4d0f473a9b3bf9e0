//! Finite bisimplicial sets.
//!
//! A bisimplicial set is stored by columns: the simplicial sets `X_{m*}` for
//! `m <= M`, together with the horizontal face and degeneracy maps between them.
//! Vertical structure lives inside each column. Columns above `M` are not stored;
//! when every bisimplex with `m` above some `G <= M` is horizontally degenerate,
//! they are determined and the set counts as horizontally complete.

pub mod dstar;
pub mod reedy;
pub mod replacement;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::delta::{monotone_maps, MonotoneMap};
use crate::error::{Error, Result};
use crate::sset::{build_levelwise, delta_simplex_as_map, standard, GenId, SimplexRef, SimplicialMap, SimplicialSet};

pub use dstar::{d_star, DStar};
pub use reedy::{generating_cell, is_horizontal_reedy_left_fibration, is_strong, matching_comparison};
pub use replacement::{
    default_tops, initial_object_check, replacement_augmentation, replacement_augmentation_with, s_shriek, simplicial_replacement, IndexCategory, Replacement, Variant,
};

fn min_trunc(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Clone, Debug)]
pub struct BisimplicialSet {
    columns: Vec<Arc<SimplicialSet>>,
    /// `hface[m][i]: X_{m*} -> X_{m-1,*}`; empty for `m = 0`.
    hface: Vec<Vec<SimplicialMap>>,
    /// `hdegen[m][i]: X_{m*} -> X_{m+1,*}`; empty for `m = M`.
    hdegen: Vec<Vec<SimplicialMap>>,
    /// Every bisimplex in a column above this index is horizontally degenerate.
    h_generated: Option<usize>,
}

impl BisimplicialSet {
    /// Assembles and validates a bisimplicial set from its columns.
    pub fn from_parts(
        columns: Vec<Arc<SimplicialSet>>,
        hface: Vec<Vec<SimplicialMap>>,
        hdegen: Vec<Vec<SimplicialMap>>,
        h_generated: Option<usize>,
    ) -> Result<Self> {
        let x = BisimplicialSet { columns, hface, hdegen, h_generated };
        x.validate()?;
        Ok(x)
    }

    /// Highest stored column index `M`.
    pub fn h_top(&self) -> usize {
        self.columns.len().saturating_sub(1)
    }

    pub fn column(&self, m: usize) -> &Arc<SimplicialSet> {
        &self.columns[m]
    }

    pub fn columns(&self) -> &[Arc<SimplicialSet>] {
        &self.columns
    }

    pub fn hface(&self, m: usize, i: usize) -> &SimplicialMap {
        &self.hface[m][i]
    }

    pub fn hdegen(&self, m: usize, i: usize) -> &SimplicialMap {
        &self.hdegen[m][i]
    }

    pub fn h_generated(&self) -> Option<usize> {
        self.h_generated
    }

    /// `(t_h, t_v)`; `None` means exact in that direction.
    pub fn truncation(&self) -> (Option<usize>, Option<usize>) {
        let th = match self.h_generated {
            Some(g) if g <= self.h_top() => None,
            _ => Some(self.h_top()),
        };
        (th, self.v_truncation())
    }

    pub fn v_truncation(&self) -> Option<usize> {
        self.columns.iter().fold(None, |t, c| min_trunc(t, c.truncation()))
    }

    /// Largest vertical level that is known in every column.
    fn v_known(&self) -> usize {
        let top = self.columns.iter().filter_map(|c| c.dim()).max().unwrap_or(0);
        self.v_truncation().unwrap_or(top)
    }

    pub fn is_empty(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// All `(m,n)`-bisimplices, as simplices of column `m`.
    pub fn bisimplices(&self, m: usize, n: usize) -> Vec<SimplexRef> {
        self.columns[m].simplices(n)
    }

    pub fn count(&self, m: usize, n: usize) -> usize {
        self.columns[m].count_simplices(n)
    }

    /// Whether a bisimplex of column `m` is in the image of some horizontal degeneracy.
    pub fn is_h_degenerate(&self, m: usize, s: &SimplexRef) -> bool {
        m > 0 && (0..m).any(|i| self.hdegen[m - 1][i].image(&self.hface[m][i].image(s)) == *s)
    }

    /// Bisimplices nondegenerate in both directions, at bidegree `(m,n)`.
    pub fn binondegenerate(&self, m: usize, n: usize) -> Vec<GenId> {
        if n >= self.columns[m].counts().len() {
            return vec![];
        }
        self.columns[m]
            .generators_of_dim(n)
            .iter()
            .copied()
            .filter(|&g| !self.is_h_degenerate(m, &SimplexRef::nondegenerate(g, n)))
            .collect()
    }

    /// The horizontal operator `θ^*: X_{m*} -> X_{m'*}` of `θ: [m'] -> [m]`.
    pub fn h_operator(&self, theta: &MonotoneMap) -> Result<SimplicialMap> {
        let (m, m2) = (theta.cod(), theta.dom());
        if m > self.h_top() || m2 > self.h_top() {
            return Err(Error::Truncation(format!("horizontal operator {theta:?} needs column {}", m.max(m2))));
        }
        let (epi, mono) = theta.epi_mono_factor();
        let mut f = SimplicialMap::identity(self.columns[m].clone());
        let mut mono = mono;
        while let Some(i) = mono.largest_missed() {
            f = self.hface[mono.cod()][i].after(&f)?;
            mono = mono.factor_through_coface(i);
        }
        // epi = s_{j_1} ... applied from the smallest column upwards
        let mut e = epi;
        let mut degens = Vec::new();
        while !e.is_identity() {
            let j = (0..e.dom()).find(|&j| e.at(j) == e.at(j + 1)).expect("non-identity surjection repeats a value");
            let rest: Vec<usize> = e.values().enumerate().filter(|&(k, _)| k != j + 1).map(|(_, v)| v).collect();
            degens.push((e.dom() - 1, j));
            e = MonotoneMap::new(e.cod(), rest)?;
        }
        for &(col, j) in degens.iter().rev() {
            f = self.hdegen[col][j].after(&f)?;
        }
        Ok(f)
    }

    /// Checks the horizontal simplicial identities on every generator.
    pub fn validate(&self) -> Result<()> {
        let mm = self.h_top();
        if self.hface.len() != self.columns.len() || self.hdegen.len() != self.columns.len() {
            return Err(Error::Invalid("one list of horizontal maps per column is required".into()));
        }
        for m in 0..=mm {
            let want_f = if m == 0 { 0 } else { m + 1 };
            let want_d = if m == mm { 0 } else { m + 1 };
            if self.hface[m].len() != want_f || self.hdegen[m].len() != want_d {
                return Err(Error::Invalid(format!("column {m} has the wrong number of horizontal maps")));
            }
            for (i, f) in self.hface[m].iter().enumerate() {
                if !f.source().same_structure(&self.columns[m]) || !f.target().same_structure(&self.columns[m - 1]) {
                    return Err(Error::Invalid(format!("horizontal face d_{i} of column {m} has the wrong ends")));
                }
            }
        }
        let fail = |what: String| Err(Error::Invalid(format!("horizontal identity fails: {what}")));
        for m in 0..=mm {
            let col = &self.columns[m];
            for (g, gen) in col.generators() {
                let s = SimplexRef::nondegenerate(g, gen.dim);
                // d_i d_j = d_{j-1} d_i for i < j
                if m >= 2 {
                    for j in 0..=m {
                        for i in 0..j {
                            let a = self.hface[m - 1][i].image(&self.hface[m][j].image(&s));
                            let b = self.hface[m - 1][j - 1].image(&self.hface[m][i].image(&s));
                            if a != b {
                                return fail(format!("d_{i} d_{j} on {} in column {m}", col.name(g)));
                            }
                        }
                    }
                }
                if m < mm {
                    for j in 0..=m {
                        let t = self.hdegen[m][j].image(&s);
                        for i in 0..=m + 1 {
                            let lhs = self.hface[m + 1][i].image(&t);
                            let rhs = if i == j || i == j + 1 {
                                s.clone()
                            } else if i < j {
                                self.hdegen[m - 1][j - 1].image(&self.hface[m][i].image(&s))
                            } else {
                                self.hdegen[m - 1][j].image(&self.hface[m][i - 1].image(&s))
                            };
                            if lhs != rhs {
                                return fail(format!("d_{i} s_{j} on {} in column {m}", col.name(g)));
                            }
                        }
                        if m + 1 < mm {
                            for i in 0..=j {
                                let a = self.hdegen[m + 1][i].image(&t);
                                let b = self.hdegen[m + 1][j + 1].image(&self.hdegen[m][i].image(&s));
                                if a != b {
                                    return fail(format!("s_{i} s_{j} on {} in column {m}", col.name(g)));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct BisimplicialMap {
    source: Arc<BisimplicialSet>,
    target: Arc<BisimplicialSet>,
    components: Vec<SimplicialMap>,
}

impl BisimplicialMap {
    /// Validates that the column maps commute with the horizontal structure.
    pub fn new(source: Arc<BisimplicialSet>, target: Arc<BisimplicialSet>, components: Vec<SimplicialMap>) -> Result<Self> {
        if components.len() != source.columns.len() || target.columns.len() < source.columns.len() {
            return Err(Error::DomainMismatch("one column map per source column is required".into()));
        }
        for (m, f) in components.iter().enumerate() {
            f.validate()?;
            for i in 0..source.hface[m].len() {
                for (g, gen) in source.columns[m].generators() {
                    let s = SimplexRef::nondegenerate(g, gen.dim);
                    if components[m - 1].image(&source.hface[m][i].image(&s)) != target.hface[m][i].image(&f.image(&s)) {
                        return Err(Error::Invalid(format!("column map {m} does not commute with d_{i}")));
                    }
                }
            }
            for i in 0..source.hdegen[m].len() {
                for (g, gen) in source.columns[m].generators() {
                    let s = SimplexRef::nondegenerate(g, gen.dim);
                    if components[m + 1].image(&source.hdegen[m][i].image(&s)) != target.hdegen[m][i].image(&f.image(&s)) {
                        return Err(Error::Invalid(format!("column map {m} does not commute with s_{i}")));
                    }
                }
            }
        }
        Ok(BisimplicialMap { source, target, components })
    }

    pub fn identity(x: Arc<BisimplicialSet>) -> Self {
        let components = x.columns.iter().map(|c| SimplicialMap::identity(c.clone())).collect();
        BisimplicialMap { source: x.clone(), target: x, components }
    }

    pub fn source(&self) -> &Arc<BisimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BisimplicialSet> {
        &self.target
    }

    pub fn column(&self, m: usize) -> &SimplicialMap {
        &self.components[m]
    }

    pub fn after(&self, f: &BisimplicialMap) -> Result<BisimplicialMap> {
        let components = f.components.iter().zip(&self.components).map(|(a, b)| b.after(a)).collect::<Result<Vec<_>>>()?;
        Ok(BisimplicialMap { source: f.source.clone(), target: self.target.clone(), components })
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|c| c.is_mono())
    }
}

/// A bisimplicial set assembled from explicit elements, with the lookup tables.
#[derive(Clone, Debug)]
pub(crate) struct Built<T> {
    pub set: Arc<BisimplicialSet>,
    /// `index[m][n]`: every `(m,n)`-element and its simplex in column `m`.
    pub index: Vec<Vec<HashMap<T, SimplexRef>>>,
    /// `elements[m][g]`: the element behind generator `g` of column `m`.
    pub elements: Vec<Vec<T>>,
}

impl<T: Clone + Eq + Hash> Built<T> {
    pub fn lookup(&self, m: usize, n: usize, t: &T) -> Result<SimplexRef> {
        self.index
            .get(m)
            .and_then(|c| c.get(n))
            .and_then(|l| l.get(t))
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("no ({m},{n})-bisimplex for the requested element")))
    }

    /// Like `lookup`, but also finds elements above the stored levels of an exact
    /// column, which are necessarily vertically degenerate.
    pub fn lookup_with<E: Elements<T = T>>(&self, ops: &E, m: usize, n: usize, t: &T) -> Result<SimplexRef> {
        let stored = self.index.get(m).map_or(0, Vec::len);
        if n < stored || n == 0 || self.set.columns[m].truncation().is_some() {
            return self.lookup(m, n, t);
        }
        for j in 0..n {
            let z = ops.vface(m, n, t, j);
            if ops.vdegen(m, n - 1, &z, j) == *t {
                return Ok(self.lookup_with(ops, m, n - 1, &z)?.degenerate(j));
            }
        }
        self.lookup(m, n, t)
    }

    /// The map induced by an elementwise function into another built set.
    pub fn map_to<E: Elements>(&self, target: &Built<E::T>, ops: &E, f: impl Fn(usize, usize, &T) -> E::T) -> Result<BisimplicialMap> {
        let mut components = Vec::new();
        for (m, elts) in self.elements.iter().enumerate() {
            let col = &self.set.columns[m];
            let images = elts
                .iter()
                .enumerate()
                .map(|(g, e)| {
                    let n = col.generator(GenId(g as u32)).dim;
                    target.lookup_with(ops, m, n, &f(m, n, e))
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(SimplicialMap::new(col.clone(), target.set.columns[m].clone(), images)?);
        }
        BisimplicialMap::new(self.set.clone(), target.set.clone(), components)
    }
}

/// Elementwise operations of a bisimplicial set; `n` is always the vertical level
/// of the argument and `m` its column.
pub(crate) trait Elements {
    type T: Clone + Eq + Hash;
    fn vface(&self, m: usize, n: usize, t: &Self::T, j: usize) -> Self::T;
    fn vdegen(&self, m: usize, n: usize, t: &Self::T, j: usize) -> Self::T;
    fn hface(&self, m: usize, n: usize, t: &Self::T, i: usize) -> Self::T;
    fn hdegen(&self, m: usize, n: usize, t: &Self::T, i: usize) -> Self::T;
    fn name(&self, _t: &Self::T) -> String {
        String::new()
    }
}

/// Builds columns from complete levels `levels[m][n]` of elements.
pub(crate) fn build_columns<E: Elements>(
    ops: &E,
    levels: Vec<Vec<Vec<E::T>>>,
    v_truncation: Option<usize>,
    h_generated: Option<usize>,
) -> Result<Built<E::T>> {
    let mut columns = Vec::new();
    let mut index = Vec::new();
    let mut elements = Vec::new();
    for (m, lv) in levels.into_iter().enumerate() {
        let (set, idx) = build_levelwise(
            lv,
            |n, t, j| ops.vface(m, n, t, j),
            |n, t, j| ops.vdegen(m, n, t, j),
            |t| ops.name(t),
            v_truncation,
        )?;
        let mut elts: Vec<Option<E::T>> = vec![None; set.num_generators()];
        for level in &idx {
            for (t, r) in level {
                if r.is_nondegenerate() {
                    elts[r.gen.index()] = Some(t.clone());
                }
            }
        }
        columns.push(Arc::new(set));
        index.push(idx);
        elements.push(elts.into_iter().map(|e| e.expect("every generator has an element")).collect::<Vec<_>>());
    }
    let mm = columns.len().saturating_sub(1);
    let lookup = |m: usize, n: usize, t: &E::T| -> Result<SimplexRef> {
        index[m]
            .get(n)
            .and_then(|l: &HashMap<E::T, SimplexRef>| l.get(t))
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("column {m} is not closed under horizontal operators at level {n}")))
    };
    let mut hface = Vec::new();
    let mut hdegen = Vec::new();
    for m in 0..columns.len() {
        let col = &columns[m];
        let gen_dim = |g: usize| col.generator(GenId(g as u32)).dim;
        let mut faces = Vec::new();
        if m > 0 {
            for i in 0..=m {
                let images = elements[m]
                    .iter()
                    .enumerate()
                    .map(|(g, t)| lookup(m - 1, gen_dim(g), &ops.hface(m, gen_dim(g), t, i)))
                    .collect::<Result<Vec<_>>>()?;
                faces.push(SimplicialMap::new_unchecked(col.clone(), columns[m - 1].clone(), images));
            }
        }
        let mut degens = Vec::new();
        if m < mm {
            for i in 0..=m {
                let images = elements[m]
                    .iter()
                    .enumerate()
                    .map(|(g, t)| lookup(m + 1, gen_dim(g), &ops.hdegen(m, gen_dim(g), t, i)))
                    .collect::<Result<Vec<_>>>()?;
                degens.push(SimplicialMap::new_unchecked(col.clone(), columns[m + 1].clone(), images));
            }
        }
        hface.push(faces);
        hdegen.push(degens);
    }
    let set = BisimplicialSet { columns, hface, hdegen, h_generated };
    debug_assert!(set.validate().is_ok());
    Ok(Built { set: Arc::new(set), index, elements })
}

/// Levels `0..=top` of a simplicial set, or fewer if it is truncated lower.
fn vertical_top(x: &SimplicialSet) -> usize {
    let d = x.dim().unwrap_or(0);
    x.truncation().map_or(d, |t| d.min(t))
}

pub(crate) struct BoxOps<'a> {
    k: &'a SimplicialSet,
    l: &'a SimplicialSet,
}

impl Elements for BoxOps<'_> {
    type T = (SimplexRef, SimplexRef);
    fn vface(&self, _: usize, _: usize, (a, b): &Self::T, j: usize) -> Self::T {
        (a.clone(), self.l.face(b, j))
    }
    fn vdegen(&self, _: usize, _: usize, (a, b): &Self::T, j: usize) -> Self::T {
        (a.clone(), b.degenerate(j))
    }
    fn hface(&self, _: usize, _: usize, (a, b): &Self::T, i: usize) -> Self::T {
        (self.k.face(a, i), b.clone())
    }
    fn hdegen(&self, _: usize, _: usize, (a, b): &Self::T, i: usize) -> Self::T {
        (a.degenerate(i), b.clone())
    }
    fn name(&self, (a, b): &Self::T) -> String {
        format!("{}□{}", self.k.describe(a), self.l.describe(b))
    }
}

/// `K□L`, or a sub-bisimplicial set of it cut out by a predicate closed under all operators.
#[derive(Clone, Debug)]
pub struct BoxProduct {
    pub set: Arc<BisimplicialSet>,
    pub k: Arc<SimplicialSet>,
    pub l: Arc<SimplicialSet>,
    pub(crate) built: Built<(SimplexRef, SimplexRef)>,
}

impl BoxProduct {
    pub(crate) fn ops(&self) -> BoxOps<'_> {
        BoxOps { k: &self.k, l: &self.l }
    }

    /// `map_to` into this box product.
    pub(crate) fn map_from<T: Clone + Eq + Hash>(
        &self,
        source: &Built<T>,
        f: impl Fn(usize, usize, &T) -> (SimplexRef, SimplexRef),
    ) -> Result<BisimplicialMap> {
        source.map_to(&self.built, &self.ops(), f)
    }

    /// The bisimplex `(a, b)` with `a ∈ K_m`, `b ∈ L_n`.
    pub fn bisimplex(&self, a: &SimplexRef, b: &SimplexRef) -> Option<SimplexRef> {
        self.built.lookup(a.dim(), b.dim(), &(a.clone(), b.clone())).ok()
    }
}

/// `K□L` with columns up to `dim K + dim L`, so that its diagonal is exact.
pub fn box_product(k: &Arc<SimplicialSet>, l: &Arc<SimplicialSet>) -> Result<BoxProduct> {
    let top = k.dim().unwrap_or(0) + l.dim().unwrap_or(0);
    box_product_to(k, l, top)
}

/// `K□L` with columns `0..=h_top`.
pub fn box_product_to(k: &Arc<SimplicialSet>, l: &Arc<SimplicialSet>, h_top: usize) -> Result<BoxProduct> {
    box_product_filtered(k, l, h_top, |_, _| true)
}

pub(crate) fn box_product_filtered(
    k: &Arc<SimplicialSet>,
    l: &Arc<SimplicialSet>,
    h_top: usize,
    keep: impl Fn(&SimplexRef, &SimplexRef) -> bool,
) -> Result<BoxProduct> {
    k.check_level(h_top, "box product columns")?;
    let ops = BoxOps { k, l };
    let vtop = vertical_top(l);
    let levels = (0..=h_top)
        .map(|m| {
            let ks = k.simplices(m);
            if l.is_empty() {
                return vec![];
            }
            (0..=vtop)
                .map(|n| {
                    let ls = l.simplices(n);
                    ks.iter().flat_map(|a| ls.iter().map(move |b| (a.clone(), b.clone()))).filter(|(a, b)| keep(a, b)).collect()
                })
                .collect()
        })
        .collect();
    let gen = if k.truncation().is_none() { k.dim().or(Some(0)) } else { None };
    let built = build_columns(&ops, levels, l.truncation(), gen)?;
    Ok(BoxProduct { set: built.set.clone(), k: k.clone(), l: l.clone(), built })
}

/// `f□g: K□L -> K'□L'`.
pub fn box_product_map(f: &SimplicialMap, g: &SimplicialMap, source: &BoxProduct, target: &BoxProduct) -> Result<BisimplicialMap> {
    target.map_from(&source.built, |_, _, (a, b)| (f.image(a), g.image(b)))
}

/// `Δ[m,n] = Δ[m]□Δ[n]`.
pub fn standard_bisimplex(m: usize, n: usize) -> Result<BoxProduct> {
    box_product(&Arc::new(standard::simplex(m)), &Arc::new(standard::simplex(n)))
}

/// The diagonal, with the column simplex behind each simplex.
#[derive(Clone, Debug)]
pub struct Diagonal {
    pub set: Arc<SimplicialSet>,
    index: Vec<HashMap<SimplexRef, SimplexRef>>,
    /// For each generator of the diagonal: its `(n,n)`-bisimplex in column `n`.
    pub elements: Vec<SimplexRef>,
}

impl Diagonal {
    /// The simplex of `dX` given by an `(n,n)`-bisimplex.
    pub fn simplex(&self, s: &SimplexRef) -> Option<SimplexRef> {
        self.index.get(s.dim())?.get(s).cloned()
    }
}

/// `dX` with `(dX)_n = X_{n,n}`. Exact when `X` is horizontally complete and every
/// column is exact with enough columns stored; otherwise truncated at
/// `min(t_h, t_v)`.
pub fn diagonal(x: &BisimplicialSet) -> Result<Diagonal> {
    let mm = x.h_top();
    let vk = x.v_known();
    let v_exact = x.v_truncation().is_none();
    let (top, exact) = match x.h_generated {
        Some(g) if v_exact && g + vk <= mm => (g + vk, true),
        _ => (mm.min(vk), false),
    };
    let levels: Vec<Vec<SimplexRef>> = if x.is_empty() { vec![] } else { (0..=top).map(|n| x.columns[n].simplices(n)).collect() };
    let (set, index) = build_levelwise(
        levels,
        |n, s, i| x.hface[n][i].image(&x.columns[n].face(s, i)),
        |n, s, i| x.hdegen[n][i].image(&s.degenerate(i)),
        |s| x.columns[s.dim()].describe(s).to_string(),
        if exact { None } else { Some(top) },
    )?;
    let mut elements = vec![None; set.num_generators()];
    for level in &index {
        for (s, r) in level {
            if r.is_nondegenerate() {
                elements[r.gen.index()] = Some(s.clone());
            }
        }
    }
    Ok(Diagonal { set: Arc::new(set), index, elements: elements.into_iter().map(Option::unwrap).collect() })
}

/// `df: dX -> dY` between already computed diagonals.
pub fn diagonal_map(f: &BisimplicialMap, source: &Diagonal, target: &Diagonal) -> Result<SimplicialMap> {
    let images = source
        .elements
        .iter()
        .map(|s| {
            let n = s.dim();
            target.simplex(&f.components[n].image(s)).ok_or_else(|| Error::Truncation(format!("target diagonal lacks level {n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(source.set.clone(), target.set.clone(), images)
}

/// `d` applied to a map, computing both diagonals.
pub fn diagonal_of_map(f: &BisimplicialMap) -> Result<(Diagonal, Diagonal, SimplicialMap)> {
    let ds = diagonal(&f.source)?;
    let dt = diagonal(&f.target)?;
    let df = diagonal_map(f, &ds, &dt)?;
    Ok((ds, dt, df))
}

/// Normal forms `(a, α, β)` of `δ_!A`: `a` a generator of dimension `k`, and
/// `α: [m] -> [k]`, `β: [n] -> [k]` jointly surjective.
type ShriekElt = (GenId, MonotoneMap, MonotoneMap);

fn shriek_normalize(a_set: &SimplicialSet, a: &SimplexRef, alpha: &MonotoneMap, beta: &MonotoneMap) -> ShriekElt {
    let mut gen = a.gen;
    let mut al = a.deg.after(alpha);
    let mut be = a.deg.after(beta);
    loop {
        let k = al.cod();
        let mut image = vec![false; k + 1];
        for v in al.values().chain(be.values()) {
            image[v] = true;
        }
        if image.iter().all(|&b| b) {
            return (gen, al, be);
        }
        let keep: Vec<usize> = (0..=k).filter(|&v| image[v]).collect();
        let iota = MonotoneMap::new(k, keep.iter().copied()).expect("increasing");
        let pos = |v: usize| keep.iter().position(|&w| w == v).unwrap();
        let s = keep.len() - 1;
        let al2 = MonotoneMap::new(s, al.values().map(pos)).expect("monotone");
        let be2 = MonotoneMap::new(s, be.values().map(pos)).expect("monotone");
        let face = a_set.apply(&a_set.simplex(gen), &iota);
        gen = face.gen;
        al = face.deg.after(&al2);
        be = face.deg.after(&be2);
    }
}

struct ShriekOps<'a> {
    a: &'a SimplicialSet,
}

impl ShriekOps<'_> {
    fn norm(&self, t: &ShriekElt, al: MonotoneMap, be: MonotoneMap) -> ShriekElt {
        shriek_normalize(self.a, &self.a.simplex(t.0), &al, &be)
    }
}

impl Elements for ShriekOps<'_> {
    type T = ShriekElt;
    fn vface(&self, _: usize, n: usize, t: &ShriekElt, j: usize) -> ShriekElt {
        self.norm(t, t.1.clone(), t.2.after(&MonotoneMap::coface(n, j)))
    }
    fn vdegen(&self, _: usize, n: usize, t: &ShriekElt, j: usize) -> ShriekElt {
        self.norm(t, t.1.clone(), t.2.after(&MonotoneMap::codegeneracy(n, j)))
    }
    fn hface(&self, m: usize, _: usize, t: &ShriekElt, i: usize) -> ShriekElt {
        self.norm(t, t.1.after(&MonotoneMap::coface(m, i)), t.2.clone())
    }
    fn hdegen(&self, m: usize, _: usize, t: &ShriekElt, i: usize) -> ShriekElt {
        self.norm(t, t.1.after(&MonotoneMap::codegeneracy(m, i)), t.2.clone())
    }
    fn name(&self, (g, al, be): &ShriekElt) -> String {
        format!("{}{:?}{:?}", self.a.name(*g), al.values().collect::<Vec<_>>(), be.values().collect::<Vec<_>>())
    }
}

/// `δ_!A`, the left Kan extension of `[n] ↦ Δ[n,n]` along the simplices of `A`.
#[derive(Clone, Debug)]
pub struct DeltaShriek {
    pub set: Arc<BisimplicialSet>,
    pub(crate) built: Built<ShriekElt>,
    a: Arc<SimplicialSet>,
}

/// `δ_!A` with columns up to `2 dim A`, enough for an exact diagonal.
pub fn delta_shriek(a: &Arc<SimplicialSet>) -> Result<DeltaShriek> {
    delta_shriek_to(a, 2 * a.dim().unwrap_or(0))
}

pub fn delta_shriek_to(a: &Arc<SimplicialSet>, h_top: usize) -> Result<DeltaShriek> {
    if a.truncation().is_some() {
        return Err(Error::Truncation("δ_! needs an untruncated simplicial set".into()));
    }
    let d = a.dim().unwrap_or(0);
    let ops = ShriekOps { a };
    let levels: Vec<Vec<Vec<ShriekElt>>> = (0..=h_top)
        .map(|m| {
            if a.is_empty() {
                return vec![];
            }
            (0..=d)
                .map(|n| {
                    let mut level = Vec::new();
                    for (g, gen) in a.generators() {
                        let k = gen.dim;
                        for al in monotone_maps(m, k) {
                            for be in monotone_maps(n, k) {
                                let mut hit = vec![false; k + 1];
                                for v in al.values().chain(be.values()) {
                                    hit[v] = true;
                                }
                                if hit.iter().all(|&b| b) {
                                    level.push((g, al.clone(), be));
                                }
                            }
                        }
                    }
                    level
                })
                .collect()
        })
        .collect();
    let built = build_columns(&ops, levels, None, Some(d))?;
    Ok(DeltaShriek { set: built.set.clone(), built, a: a.clone() })
}

/// `δ_!f`.
pub fn delta_shriek_map(f: &SimplicialMap, source: &DeltaShriek, target: &DeltaShriek) -> Result<BisimplicialMap> {
    let b = target.a.clone();
    source.built.map_to(&target.built, &ShriekOps { a: &b }, |_, _, (g, al, be)| shriek_normalize(&b, &f.image(&source.a.simplex(*g)), al, be))
}

/// What to extract from a bisimplicial set.
#[derive(Clone, Debug)]
pub enum Extract {
    Row(usize),
    Column(usize),
    /// `K\X`, whose `n`-simplices are the maps `K□Δ[n] -> X`; levels up to the bound.
    Backslash(Arc<SimplicialSet>, usize),
}

pub fn extract(x: &BisimplicialSet, what: &Extract) -> Result<Arc<SimplicialSet>> {
    match what {
        Extract::Column(m) => {
            if *m > x.h_top() {
                return Err(Error::Truncation(format!("column {m} is above the stored columns 0..={}", x.h_top())));
            }
            Ok(x.columns[*m].clone())
        }
        Extract::Row(n) => row(x, *n),
        Extract::Backslash(k, bound) => Ok(backslash(x, k, *bound)?.set),
    }
}

/// Row `n`: the simplicial set `m ↦ X_{m,n}`.
pub fn row(x: &BisimplicialSet, n: usize) -> Result<Arc<SimplicialSet>> {
    if let Some(t) = x.v_truncation() {
        if n > t {
            return Err(Error::Truncation(format!("row {n} is above the vertical truncation {t}")));
        }
    }
    let (th, _) = x.truncation();
    let levels: Vec<Vec<SimplexRef>> = if x.is_empty() { vec![] } else { (0..=x.h_top()).map(|m| x.columns[m].simplices(n)).collect() };
    let (set, _) = build_levelwise(
        levels,
        |m, s, i| x.hface[m][i].image(s),
        |m, s, i| x.hdegen[m][i].image(s),
        |_| String::new(),
        th,
    )?;
    let mut set = set;
    for g in 0..set.num_generators() {
        set.rename(GenId(g as u32), format!("r{g}"));
    }
    Ok(Arc::new(set))
}

/// `K\X` with the family of bisimplices behind each simplex.
#[derive(Clone, Debug)]
pub struct Backslash {
    pub set: Arc<SimplicialSet>,
    pub k: Arc<SimplicialSet>,
    index: Vec<HashMap<Vec<SimplexRef>, SimplexRef>>,
    /// For each generator: the bisimplex `x_g ∈ X_{dim g, n}` for every generator `g` of `K`.
    pub families: Vec<Vec<SimplexRef>>,
}

impl Backslash {
    pub fn simplex(&self, family: &[SimplexRef], n: usize) -> Option<SimplexRef> {
        self.index.get(n)?.get(family).cloned()
    }
}

/// Horizontal operators needed by the faces of `K`, keyed by the surjection.
fn operator_cache(x: &BisimplicialSet, k: &SimplicialSet) -> Result<HashMap<MonotoneMap, SimplicialMap>> {
    let mut ops = HashMap::new();
    for (_, gen) in k.generators() {
        for f in &gen.faces {
            if !ops.contains_key(&f.deg) {
                ops.insert(f.deg.clone(), x.h_operator(&f.deg)?);
            }
        }
    }
    Ok(ops)
}

pub fn backslash(x: &BisimplicialSet, k: &Arc<SimplicialSet>, bound: usize) -> Result<Backslash> {
    let kd = k.dim().unwrap_or(0);
    if !k.is_empty() && kd > x.h_top() {
        return Err(Error::Truncation(format!("K has dimension {kd} but only columns 0..={} are stored", x.h_top())));
    }
    if k.truncation().is_some() {
        return Err(Error::Truncation("K\\X needs an untruncated K".into()));
    }
    let ops = operator_cache(x, k)?;
    let gens: Vec<(GenId, usize)> = k.generators().map(|(g, gen)| (g, gen.dim)).collect();
    let exact_top: usize = gens.iter().map(|&(_, d)| vertical_top(&x.columns[d])).sum();
    let v_exact = x.v_truncation().is_none() && exact_top <= bound;
    let top = if v_exact { exact_top } else { bound };
    if let Some(t) = x.v_truncation() {
        if top > t {
            return Err(Error::Truncation(format!("K\\X to level {top} needs vertical truncation at least {top}, have {t}")));
        }
    }
    let mut levels: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
    for n in 0..=top {
        let cands: Vec<Vec<SimplexRef>> = (0..=kd.min(x.h_top())).map(|d| x.columns[d].simplices(n)).collect();
        let mut level = Vec::new();
        let mut chosen: Vec<SimplexRef> = Vec::with_capacity(gens.len());
        fn rec(
            i: usize,
            gens: &[(GenId, usize)],
            k: &SimplicialSet,
            x: &BisimplicialSet,
            ops: &HashMap<MonotoneMap, SimplicialMap>,
            cands: &[Vec<SimplexRef>],
            chosen: &mut Vec<SimplexRef>,
            out: &mut Vec<Vec<SimplexRef>>,
        ) {
            if i == gens.len() {
                out.push(chosen.clone());
                return;
            }
            let (g, d) = gens[i];
            let faces = &k.generator(g).faces;
            for c in &cands[d] {
                let ok = faces.iter().enumerate().all(|(fi, f)| x.hface[d][fi].image(c) == ops[&f.deg].image(&chosen[f.gen.index()]));
                if ok {
                    chosen.push(c.clone());
                    rec(i + 1, gens, k, x, ops, cands, chosen, out);
                    chosen.pop();
                }
            }
        }
        if !x.is_empty() || gens.is_empty() {
            rec(0, &gens, k, x, &ops, &cands, &mut chosen, &mut level);
        }
        levels.push(level);
    }
    let (set, index) = build_levelwise(
        levels,
        |_, fam, j| fam.iter().enumerate().map(|(g, s)| x.columns[gens[g].1].face(s, j)).collect(),
        |_, fam, j| fam.iter().map(|s| s.degenerate(j)).collect(),
        |_| String::new(),
        if v_exact { None } else { Some(top) },
    )?;
    let mut families = vec![None; set.num_generators()];
    for level in &index {
        for (fam, r) in level {
            if r.is_nondegenerate() {
                families[r.gen.index()] = Some(fam.clone());
            }
        }
    }
    let mut set = set;
    for g in 0..families.len() {
        set.rename(GenId(g as u32), format!("f{g}"));
    }
    Ok(Backslash { set: Arc::new(set), k: k.clone(), index, families: families.into_iter().map(Option::unwrap).collect() })
}

/// `K\f: K\X -> K\Y`.
pub fn backslash_map(f: &BisimplicialMap, source: &Backslash, target: &Backslash) -> Result<SimplicialMap> {
    let k = &source.k;
    let images = source
        .families
        .iter()
        .enumerate()
        .map(|(g, fam)| {
            let n = source.set.generator(GenId(g as u32)).dim;
            let img: Vec<SimplexRef> = fam.iter().enumerate().map(|(kg, s)| f.components[k.generator(GenId(kg as u32)).dim].image(s)).collect();
            target.simplex(&img, n).ok_or_else(|| Error::Truncation(format!("K\\Y lacks level {n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(source.set.clone(), target.set.clone(), images)
}

/// Restriction `X_{m*} = Δ[m]\X -> K\X` along a map `i: K -> Δ[m]`.
pub fn column_restriction(x: &BisimplicialSet, m: usize, i: &SimplicialMap, target: &Backslash) -> Result<SimplicialMap> {
    let delta = i.target();
    let ops: Vec<SimplicialMap> =
        i.images().iter().map(|s| x.h_operator(&delta_simplex_as_map(delta, s))).collect::<Result<Vec<_>>>()?;
    let col = &x.columns[m];
    let images = col
        .generators()
        .map(|(g, gen)| {
            let s = SimplexRef::nondegenerate(g, gen.dim);
            let fam: Vec<SimplexRef> = ops.iter().map(|op| op.image(&s)).collect();
            target.simplex(&fam, gen.dim).ok_or_else(|| Error::Truncation(format!("K\\X lacks level {}", gen.dim)))
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(col.clone(), target.set.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::{boundary, simplex};
    use crate::sset::{coproduct, find_isomorphism, product};

    fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
        Arc::new(x)
    }

    #[test]
    fn box_product_counts() {
        let b = standard_bisimplex(0, 0).unwrap();
        assert_eq!(b.set.h_top(), 0);
        assert_eq!(b.set.count(0, 0), 1);
        assert_eq!(b.set.truncation(), (None, None));
        let b = standard_bisimplex(1, 1).unwrap();
        // Δ[1]_1 × Δ[1]_1
        assert_eq!(b.set.count(1, 1), 9);
        assert_eq!(b.set.binondegenerate(1, 1).len(), 1);
        assert_eq!(b.set.binondegenerate(0, 0).len(), 4);
        assert_eq!(b.set.binondegenerate(2, 1).len(), 0);
        b.set.validate().unwrap();
    }

    #[test]
    fn diagonal_of_box_is_product() {
        let d1 = arc(simplex(1));
        let d2 = arc(simplex(2));
        for (k, l) in [(&d1, &d1), (&d1, &d2), (&d2, &d1)] {
            let b = box_product(k, l).unwrap();
            let d = diagonal(&b.set).unwrap();
            assert_eq!(d.set.truncation(), None);
            let p = product(k, l);
            assert!(find_isomorphism(&d.set, &p.set).unwrap().is_some());
        }
        let d = diagonal(&standard_bisimplex(1, 1).unwrap().set).unwrap();
        assert_eq!(d.set.counts(), vec![4, 5, 2]);
    }

    #[test]
    fn vertically_constant_diagonal() {
        let (x, _) = boundary(2).unwrap();
        let b = box_product(&x, &arc(simplex(0))).unwrap();
        let d = diagonal(&b.set).unwrap();
        assert!(find_isomorphism(&d.set, &x).unwrap().is_some());
    }

    #[test]
    fn delta_shriek_of_representables() {
        for n in 0..=2 {
            let dn = arc(simplex(n));
            let s = delta_shriek(&dn).unwrap();
            let b = standard_bisimplex(n, n).unwrap();
            // (a, α, β) ↦ (a∘α, a∘β)
            let f = b.map_from(&s.built, |_, _, (g, al, be)| (dn.apply(&dn.simplex(*g), al), dn.apply(&dn.simplex(*g), be))).unwrap();
            for m in 0..=2 * n {
                assert!(f.column(m).is_iso(), "column {m} of δ_!Δ[{n}]");
            }
        }
        let p0 = arc(simplex(0));
        let (two, _, _) = coproduct(&p0, &p0);
        let s = delta_shriek_to(&two, 1).unwrap();
        assert_eq!(s.set.count(0, 0), 2);
        assert_eq!(s.set.count(1, 1), 2);
        let (bd, i) = boundary(1).unwrap();
        let sb = delta_shriek_to(&bd, 2).unwrap();
        let st = delta_shriek_to(&arc(simplex(1)), 2).unwrap();
        assert!(delta_shriek_map(&i, &sb, &st).unwrap().is_mono());
    }

    #[test]
    fn horizontal_operators_compose() {
        let b = standard_bisimplex(2, 1).unwrap();
        let theta = MonotoneMap::new(2, [0, 0, 2]).unwrap();
        let op = b.set.h_operator(&theta).unwrap();
        let direct = b.set.hdegen(1, 0).after(b.set.hface(2, 1)).unwrap();
        assert!(op.same_as(&direct));
    }

    #[test]
    fn backslash_of_a_simplex_is_the_column() {
        let b = standard_bisimplex(1, 1).unwrap();
        for m in 0..=2 {
            let k = arc(simplex(m));
            let bs = backslash(&b.set, &k, 3).unwrap();
            let col = match bs.set.truncation() {
                Some(t) => crate::sset::truncate(b.set.column(m), t),
                None => b.set.column(m).clone(),
            };
            assert!(find_isomorphism(&bs.set, &col).unwrap().is_some());
        }
        let (bd, i) = boundary(1).unwrap();
        let bs = backslash(&b.set, &bd, 3).unwrap();
        let r = column_restriction(&b.set, 1, &i, &bs).unwrap();
        r.validate().unwrap();
        // ∂Δ[1]\(Δ[1]□Δ[1]) = (Δ[1] ⊔ Δ[1])^2
        assert_eq!(bs.set.counts()[0], 16);
    }

    #[test]
    fn rows_of_a_box() {
        let d1 = arc(simplex(1));
        let d2 = arc(simplex(2));
        let b = box_product(&d2, &d1).unwrap();
        for n in 0..=1 {
            let r = row(&b.set, n).unwrap();
            assert_eq!(r.counts()[0], 3 * d1.count_simplices(n));
        }
    }
}
