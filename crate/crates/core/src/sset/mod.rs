//! Finite simplicial sets presented by nondegenerate generators.
//!
//! A simplex is stored in Eilenberg–Zilber normal form as a [`SimplexRef`]: a
//! nondegenerate generator together with a surjection `[n] -> [dim g]`. Every
//! operator is applied by factoring it and restricting the generator along the
//! injective part through its stored faces.

mod builder;
pub mod category;
mod constructions;
mod map;
mod search;
pub mod standard;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::delta::{surjections, MonotoneMap};
use crate::error::{Error, Result};

pub(crate) use builder::build_levelwise;
pub use constructions::*;
pub use map::SimplicialMap;
pub use search::{find_isomorphism, hom_enumerate, Filter, HomEnumeration, MapSearch};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// A simplex `g ∘ deg` with `g` nondegenerate and `deg` surjective.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub gen: GenId,
    pub deg: MonotoneMap,
}

impl SimplexRef {
    pub fn nondegenerate(gen: GenId, dim: usize) -> Self {
        SimplexRef { gen, deg: MonotoneMap::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.deg.dom()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.deg.is_identity()
    }

    /// `s_i` of this simplex.
    pub fn degenerate(&self, i: usize) -> SimplexRef {
        SimplexRef { gen: self.gen, deg: self.deg.after(&MonotoneMap::codegeneracy(self.dim(), i)) }
    }

    /// Precomposition with a surjection, which never changes the generator.
    pub fn degenerate_by(&self, e: &MonotoneMap) -> SimplexRef {
        SimplexRef { gen: self.gen, deg: self.deg.after(e) }
    }
}

impl fmt::Debug for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg.is_identity() {
            write!(f, "{:?}", self.gen)
        } else {
            write!(f, "{:?}{:?}", self.gen, self.deg.raw())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub dim: usize,
    pub faces: Vec<SimplexRef>,
}

/// All `n`-simplices of a set, with an index by face tuple for the map search.
pub(crate) struct LevelTable {
    pub all: Vec<SimplexRef>,
    pub by_faces: HashMap<Vec<SimplexRef>, Vec<u32>>,
}

#[derive(Default)]
struct LevelCache(Mutex<HashMap<usize, Arc<LevelTable>>>);

impl Clone for LevelCache {
    fn clone(&self) -> Self {
        LevelCache::default()
    }
}

#[derive(Clone, Default)]
pub struct SimplicialSet {
    gens: Vec<Generator>,
    by_dim: Vec<Vec<GenId>>,
    truncation: Option<usize>,
    cache: LevelCache,
}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialSet{:?}", self.counts())?;
        if let Some(t) = self.truncation {
            write!(f, "[trunc {t}]")?;
        }
        Ok(())
    }
}

impl SimplicialSet {
    pub fn empty() -> Self {
        SimplicialSet::default()
    }

    pub fn with_truncation(truncation: Option<usize>) -> Self {
        SimplicialSet { truncation, ..Default::default() }
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub(crate) fn set_truncation(&mut self, t: Option<usize>) {
        self.truncation = t;
    }

    /// Largest dimension for which the presheaf data is complete.
    pub fn valid_up_to(&self) -> usize {
        self.truncation.unwrap_or(usize::MAX)
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Largest dimension of a generator; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        (0..self.by_dim.len()).rev().find(|&d| !self.by_dim[d].is_empty())
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.gens[g.index()]
    }

    pub fn generators(&self) -> impl Iterator<Item = (GenId, &Generator)> {
        self.gens.iter().enumerate().map(|(i, g)| (GenId(i as u32), g))
    }

    pub fn generators_of_dim(&self, n: usize) -> &[GenId] {
        self.by_dim.get(n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Generator counts per dimension.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.dim().map(|d| d + 1).unwrap_or(0);
        (0..top).map(|d| self.by_dim[d].len()).collect()
    }

    pub fn find_generator(&self, name: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.name == name).map(|i| GenId(i as u32))
    }

    pub fn vertices(&self) -> Vec<GenId> {
        self.generators_of_dim(0).to_vec()
    }

    pub fn simplex(&self, g: GenId) -> SimplexRef {
        SimplexRef::nondegenerate(g, self.gens[g.index()].dim)
    }

    /// Appends a generator after validating its faces and the simplicial identities.
    pub fn add_generator(&mut self, name: impl Into<String>, dim: usize, faces: Vec<SimplexRef>) -> Result<GenId> {
        let name = name.into();
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::Load {
                generator: name,
                index: None,
                message: format!("expected {expected} faces, found {}", faces.len()),
            });
        }
        for (i, f) in faces.iter().enumerate() {
            let bad = |message: String| Error::Load { generator: name.clone(), index: Some(i), message };
            if f.gen.index() >= self.gens.len() {
                return Err(bad(format!("face refers to unknown generator {:?}", f.gen)));
            }
            if f.dim() != dim - 1 {
                return Err(bad(format!("face has dimension {}, expected {}", f.dim(), dim - 1)));
            }
            if !f.deg.is_surjective() || f.deg.cod() != self.gens[f.gen.index()].dim {
                return Err(bad("face degeneracy is not a surjection onto its generator".into()));
            }
        }
        for j in 0..faces.len() {
            for i in 0..j {
                if dim >= 2 && self.face(&faces[j], i) != self.face(&faces[i], j - 1) {
                    return Err(Error::Load {
                        generator: name,
                        index: Some(j),
                        message: format!("simplicial identity d{i} d{j} = d{} d{i} fails", j - 1),
                    });
                }
            }
        }
        Ok(self.push_generator(name, dim, faces))
    }

    pub(crate) fn push_generator(&mut self, name: String, dim: usize, faces: Vec<SimplexRef>) -> GenId {
        let id = GenId(self.gens.len() as u32);
        self.gens.push(Generator { name, dim, faces });
        if self.by_dim.len() <= dim {
            self.by_dim.resize(dim + 1, Vec::new());
        }
        self.by_dim[dim].push(id);
        self.cache = LevelCache::default();
        id
    }

    /// `s ∘ f` in normal form.
    pub fn apply(&self, s: &SimplexRef, f: &MonotoneMap) -> SimplexRef {
        let c = s.deg.after(f);
        let (e, m) = c.epi_mono_factor();
        let r = self.restrict(s.gen, &m);
        r.degenerate_by(&e)
    }

    /// The generator `g` precomposed with an injection.
    fn restrict(&self, g: GenId, m: &MonotoneMap) -> SimplexRef {
        match m.largest_missed() {
            None => SimplexRef::nondegenerate(g, m.dom()),
            Some(i) => {
                let rest = m.factor_through_coface(i);
                let face = &self.gens[g.index()].faces[i];
                self.apply(face, &rest)
            }
        }
    }

    pub fn face(&self, s: &SimplexRef, i: usize) -> SimplexRef {
        self.apply(s, &MonotoneMap::coface(s.dim(), i))
    }

    pub fn faces(&self, s: &SimplexRef) -> Vec<SimplexRef> {
        (0..=s.dim()).map(|i| self.face(s, i)).collect()
    }

    /// The `i`-th vertex of a simplex.
    pub fn vertex(&self, s: &SimplexRef, i: usize) -> GenId {
        let v = s.deg.at(i);
        let g = &self.gens[s.gen.index()];
        if g.dim == 0 {
            return s.gen;
        }
        self.restrict(s.gen, &MonotoneMap::constant(0, g.dim, v)).gen
    }

    pub fn vertex_list(&self, s: &SimplexRef) -> Vec<GenId> {
        (0..=s.dim()).map(|i| self.vertex(s, i)).collect()
    }

    /// Every `n`-simplex, degenerate ones included, in (generator, surjection) order.
    pub fn simplices(&self, n: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for k in 0..self.by_dim.len().min(n + 1) {
            if self.by_dim[k].is_empty() {
                continue;
            }
            let surj = surjections(n, k);
            for &g in &self.by_dim[k] {
                for s in surj.iter() {
                    out.push(SimplexRef { gen: g, deg: s.clone() });
                }
            }
        }
        out
    }

    pub fn count_simplices(&self, n: usize) -> usize {
        (0..self.by_dim.len().min(n + 1))
            .map(|k| self.by_dim[k].len() * surjections(n, k).len())
            .sum()
    }

    pub fn check_level(&self, n: usize, what: &str) -> Result<()> {
        match self.truncation {
            Some(t) if n > t => Err(Error::Truncation(format!("{what} needs dimension {n}, data truncated at {t}"))),
            _ => Ok(()),
        }
    }

    pub(crate) fn level_table(&self, n: usize) -> Arc<LevelTable> {
        if let Some(t) = self.cache.0.lock().unwrap().get(&n) {
            return t.clone();
        }
        let all = self.simplices(n);
        let mut by_faces: HashMap<Vec<SimplexRef>, Vec<u32>> = HashMap::new();
        if n > 0 {
            for (i, s) in all.iter().enumerate() {
                by_faces.entry(self.faces(s)).or_default().push(i as u32);
            }
        }
        let table = Arc::new(LevelTable { all, by_faces });
        self.cache.0.lock().unwrap().insert(n, table.clone());
        table
    }

    /// Checks every face table entry and every simplicial identity.
    pub fn validate(&self) -> Result<()> {
        let mut copy = SimplicialSet::with_truncation(self.truncation);
        for g in &self.gens {
            copy.add_generator(g.name.clone(), g.dim, g.faces.clone())?;
        }
        Ok(())
    }

    /// Equality of generator and face data, ignoring names.
    pub fn same_structure(&self, other: &SimplicialSet) -> bool {
        self.truncation == other.truncation
            && self.gens.len() == other.gens.len()
            && self.gens.iter().zip(&other.gens).all(|(a, b)| a.dim == b.dim && a.faces == b.faces)
    }

    pub fn rename(&mut self, g: GenId, name: impl Into<String>) {
        self.gens[g.index()].name = name.into();
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.gens[g.index()].name
    }

    /// A readable rendering of a simplex such as `e01` or `s0(v2)`.
    pub fn describe(&self, s: &SimplexRef) -> String {
        let name = self.name(s.gen);
        if s.is_nondegenerate() {
            name.to_string()
        } else {
            format!("{name}{:?}", s.deg.raw())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::standard;
    use super::*;

    #[test]
    fn faces_of_simplex_match_vertex_lists() {
        let d3 = standard::simplex(3);
        let top = d3.simplex(d3.generators_of_dim(3)[0]);
        for i in 0..=3 {
            let f = d3.face(&top, i);
            let verts: Vec<usize> = d3.vertex_list(&f).iter().map(|g| d3.name(*g).parse().unwrap()).collect();
            let expected: Vec<usize> = (0..=3).filter(|&j| j != i).collect();
            assert_eq!(verts, expected);
        }
        d3.validate().unwrap();
    }

    #[test]
    fn simplex_counts() {
        let d2 = standard::simplex(2);
        // monotone maps [n] -> [2]
        assert_eq!(d2.count_simplices(0), 3);
        assert_eq!(d2.count_simplices(1), 6);
        assert_eq!(d2.count_simplices(3), 15);
        assert_eq!(d2.simplices(3).len(), 15);
        assert!(SimplicialSet::empty().simplices(2).is_empty());
    }

    #[test]
    fn degenerate_face_normalizes() {
        let d1 = standard::simplex(1);
        let e = d1.simplex(d1.generators_of_dim(1)[0]);
        let s0e = e.degenerate(0);
        // d0 s0 = id, d1 s0 = id, d2 s0 = s0 d1
        assert_eq!(d1.face(&s0e, 0), e);
        assert_eq!(d1.face(&s0e, 1), e);
        let d2 = d1.face(&s0e, 2);
        assert_eq!(d2, d1.face(&e, 1).degenerate(0));
    }

    #[test]
    fn add_generator_rejects_bad_faces() {
        let mut x = SimplicialSet::empty();
        let a = x.add_generator("a", 0, vec![]).unwrap();
        let b = x.add_generator("b", 0, vec![]).unwrap();
        let e = x.add_generator("e", 1, vec![SimplexRef::nondegenerate(b, 0), SimplexRef::nondegenerate(a, 0)]).unwrap();
        let f = x.add_generator("f", 1, vec![SimplexRef::nondegenerate(a, 0), SimplexRef::nondegenerate(b, 0)]).unwrap();
        // d0 of the d1 face is a, d0 of the d0 face is b
        let err = x
            .add_generator("t", 2, vec![SimplexRef::nondegenerate(e, 1), SimplexRef::nondegenerate(f, 1), SimplexRef::nondegenerate(e, 1)])
            .unwrap_err();
        assert!(matches!(err, Error::Load { ref generator, .. } if generator == "t"));
        let err = x.add_generator("u", 1, vec![SimplexRef::nondegenerate(GenId(99), 0), SimplexRef::nondegenerate(a, 0)]).unwrap_err();
        assert!(matches!(err, Error::Load { index: Some(0), .. }));
    }
}
