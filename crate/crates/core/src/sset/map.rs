use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::{GenId, SimplexRef, SimplicialSet};
use crate::error::{Error, Result};

/// A simplicial map, given by the image of each source generator.
#[derive(Clone)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    images: Vec<SimplexRef>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialMap({:?} -> {:?}, {:?})", self.source, self.target, self.images)
    }
}

impl SimplicialMap {
    /// Checks dimensions and compatibility with every face before accepting.
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, images: Vec<SimplexRef>) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::Invalid(format!(
                "map assigns {} images to {} generators",
                images.len(),
                source.num_generators()
            )));
        }
        let m = SimplicialMap { source, target, images };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, images: Vec<SimplexRef>) -> Self {
        let m = SimplicialMap { source, target, images };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    pub fn validate(&self) -> Result<()> {
        for (g, gen) in self.source.generators() {
            let img = &self.images[g.index()];
            let err = |message: String| Error::Load { generator: gen.name.clone(), index: None, message };
            if img.gen.index() >= self.target.num_generators() {
                return Err(err("image refers to an unknown generator".into()));
            }
            if img.dim() != gen.dim || !img.deg.is_surjective() || img.deg.cod() != self.target.generator(img.gen).dim {
                return Err(err(format!("image {img:?} is not a {}-simplex in normal form", gen.dim)));
            }
            for (i, f) in gen.faces.iter().enumerate() {
                if self.image(f) != self.target.face(img, i) {
                    return Err(Error::Load {
                        generator: gen.name.clone(),
                        index: Some(i),
                        message: "map does not commute with this face".into(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let images = x.generators().map(|(g, _)| x.simplex(g)).collect();
        SimplicialMap { source: x.clone(), target: x, images }
    }

    /// The unique map into a set with a single vertex and no other generators,
    /// or more generally the map sending everything to a degeneracy of `v`.
    pub fn constant(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, v: GenId) -> Self {
        let images = source
            .generators()
            .map(|(_, g)| SimplexRef { gen: v, deg: crate::delta::MonotoneMap::constant(g.dim, 0, 0) })
            .collect();
        SimplicialMap { source, target, images }
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn images(&self) -> &[SimplexRef] {
        &self.images
    }

    pub fn of_generator(&self, g: GenId) -> &SimplexRef {
        &self.images[g.index()]
    }

    pub fn image(&self, s: &SimplexRef) -> SimplexRef {
        self.target.apply(&self.images[s.gen.index()], &s.deg)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &SimplicialMap) -> Result<SimplicialMap> {
        if !Arc::ptr_eq(&f.target, &self.source) && !f.target.same_structure(&self.source) {
            return Err(Error::DomainMismatch("composite of maps with mismatched middle object".into()));
        }
        let images = f.images.iter().map(|s| self.image(s)).collect();
        Ok(SimplicialMap { source: f.source.clone(), target: self.target.clone(), images })
    }

    /// Injective in every degree: generators go to distinct nondegenerate simplices.
    pub fn is_mono(&self) -> bool {
        let mut seen = HashSet::new();
        self.images.iter().all(|s| s.is_nondegenerate() && seen.insert(s.gen))
    }

    /// Bijective on generators onto nondegenerate generators.
    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.images.len() == self.target.num_generators()
    }

    pub fn same_as(&self, other: &SimplicialMap) -> bool {
        self.images == other.images
    }

    pub fn with_target(&self, target: Arc<SimplicialSet>) -> SimplicialMap {
        SimplicialMap { source: self.source.clone(), target, images: self.images.clone() }
    }

    pub fn with_source(&self, source: Arc<SimplicialSet>) -> SimplicialMap {
        SimplicialMap { source, target: self.target.clone(), images: self.images.clone() }
    }

    /// Generators of the source lying over a vertex `b` of the target.
    pub fn fiber_vertices(&self, b: GenId) -> Vec<GenId> {
        self.source.vertices().into_iter().filter(|v| self.images[v.index()].gen == b).collect()
    }
}
