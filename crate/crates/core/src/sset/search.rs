//! Backtracking enumeration of simplicial maps.
//!
//! Generators of the source are assigned in order of dimension. A generator of
//! positive dimension can only go to a simplex whose face tuple equals the images
//! of its own faces, so candidates come straight out of the target's face index.

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::{GenId, SimplexRef, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

pub type Filter<'a> = dyn Fn(GenId, &SimplexRef) -> bool + 'a;

pub struct MapSearch<'a> {
    source: &'a SimplicialSet,
    target: &'a SimplicialSet,
    fixed: Vec<Option<SimplexRef>>,
    filter: Option<&'a Filter<'a>>,
    injective: bool,
}

/// Result of a bounded enumeration.
#[derive(Clone, Debug)]
pub struct HomEnumeration {
    pub maps: Vec<SimplicialMap>,
    /// False when the limit stopped the search before it was exhausted.
    pub complete: bool,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a SimplicialSet, target: &'a SimplicialSet) -> Self {
        MapSearch { source, target, fixed: vec![None; source.num_generators()], filter: None, injective: false }
    }

    pub fn fix(mut self, g: GenId, image: SimplexRef) -> Self {
        self.fixed[g.index()] = Some(image);
        self
    }

    pub fn fix_all(mut self, fixed: Vec<Option<SimplexRef>>) -> Self {
        assert_eq!(fixed.len(), self.source.num_generators());
        self.fixed = fixed;
        self
    }

    pub fn filter(mut self, f: &'a Filter<'a>) -> Self {
        self.filter = Some(f);
        self
    }

    /// Only injective maps (nondegenerate, pairwise distinct images).
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    fn check_truncation(&self) -> Result<()> {
        if let Some(d) = self.source.dim() {
            self.target.check_level(d, "map enumeration")?;
        }
        Ok(())
    }

    /// Calls `visit` on every map; `visit` may stop the search early.
    /// Returns whether the search ran to exhaustion.
    pub fn run(&self, mut visit: impl FnMut(&[SimplexRef]) -> ControlFlow<()>) -> Result<bool> {
        self.check_truncation()?;
        let order: Vec<GenId> = {
            let mut v: Vec<GenId> = self.source.generators().map(|(g, _)| g).collect();
            v.sort_by_key(|g| (self.source.generator(*g).dim, *g));
            v
        };
        let tables: Vec<_> = (0..=self.source.dim().unwrap_or(0)).map(|n| self.target.level_table(n)).collect();
        let mut images: Vec<Option<SimplexRef>> = vec![None; self.source.num_generators()];
        let mut used: HashSet<GenId> = HashSet::new();
        // candidate lists per depth, with the index of the next one to try
        let mut stack: Vec<(Vec<SimplexRef>, usize)> = Vec::with_capacity(order.len());
        if order.is_empty() {
            let _ = visit(&[]);
            return Ok(true);
        }
        stack.push((self.candidates(order[0], &images, &tables), 0));
        loop {
            let depth = stack.len() - 1;
            let g = order[depth];
            if let Some(prev) = images[g.index()].take() {
                if self.injective {
                    used.remove(&prev.gen);
                }
            }
            let (cands, next) = stack.last_mut().unwrap();
            let mut chosen = None;
            while *next < cands.len() {
                let c = &cands[*next];
                *next += 1;
                if self.injective && (!c.is_nondegenerate() || used.contains(&c.gen)) {
                    continue;
                }
                chosen = Some(c.clone());
                break;
            }
            match chosen {
                None => {
                    stack.pop();
                    if stack.is_empty() {
                        return Ok(true);
                    }
                }
                Some(c) => {
                    if self.injective {
                        used.insert(c.gen);
                    }
                    images[g.index()] = Some(c);
                    if depth + 1 == order.len() {
                        let full: Vec<SimplexRef> = images.iter().map(|x| x.clone().unwrap()).collect();
                        if visit(&full).is_break() {
                            return Ok(false);
                        }
                    } else {
                        let next_g = order[depth + 1];
                        stack.push((self.candidates(next_g, &images, &tables), 0));
                    }
                }
            }
        }
    }

    fn candidates(
        &self,
        g: GenId,
        images: &[Option<SimplexRef>],
        tables: &[Arc<super::LevelTable>],
    ) -> Vec<SimplexRef> {
        let gen = self.source.generator(g);
        let allowed = |c: &SimplexRef| self.filter.is_none_or(|f| f(g, c));
        let face_images: Vec<SimplexRef> = gen
            .faces
            .iter()
            .map(|f| self.target.apply(images[f.gen.index()].as_ref().expect("faces assigned first"), &f.deg))
            .collect();
        if let Some(c) = &self.fixed[g.index()] {
            let ok = c.dim() == gen.dim && (gen.dim == 0 || self.target.faces(c) == face_images) && allowed(c);
            return if ok { vec![c.clone()] } else { vec![] };
        }
        let table = &tables[gen.dim];
        if gen.dim == 0 {
            return table.all.iter().filter(|c| allowed(c)).cloned().collect();
        }
        match table.by_faces.get(&face_images) {
            None => vec![],
            Some(ix) => ix.iter().map(|&i| &table.all[i as usize]).filter(|c| allowed(c)).cloned().collect(),
        }
    }

    /// Collects up to `limit` maps.
    pub fn collect(&self, source: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>, limit: Option<usize>) -> Result<HomEnumeration> {
        let mut maps = Vec::new();
        let complete = self.run(|imgs| {
            if limit.is_some_and(|l| maps.len() >= l) {
                return ControlFlow::Break(());
            }
            maps.push(SimplicialMap::new_unchecked(source.clone(), target.clone(), imgs.to_vec()));
            ControlFlow::Continue(())
        })?;
        Ok(HomEnumeration { maps, complete })
    }

    pub fn count(&self, limit: Option<usize>) -> Result<(usize, bool)> {
        let mut n = 0usize;
        let complete = self.run(|_| {
            if limit.is_some_and(|l| n >= l) {
                return ControlFlow::Break(());
            }
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok((n, complete))
    }

    pub fn first(&self) -> Result<Option<Vec<SimplexRef>>> {
        let mut found = None;
        self.run(|imgs| {
            found = Some(imgs.to_vec());
            ControlFlow::Break(())
        })?;
        Ok(found)
    }
}

/// All simplicial maps `K -> X`, in deterministic order, stopping at `limit`.
pub fn hom_enumerate(k: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, limit: Option<usize>) -> Result<HomEnumeration> {
    MapSearch::new(k, x).collect(k, x, limit)
}

/// An isomorphism `X -> Y`, if one exists.
pub fn find_isomorphism(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Result<Option<SimplicialMap>> {
    if x.counts() != y.counts() {
        return Ok(None);
    }
    if x.truncation() != y.truncation() {
        return Err(Error::Truncation("isomorphism test between differently truncated sets".into()));
    }
    let found = MapSearch::new(x, y).injective().first()?;
    Ok(found.map(|imgs| SimplicialMap::new_unchecked(x.clone(), y.clone(), imgs)))
}

#[cfg(test)]
mod tests {
    use super::super::standard::{horn, simplex};
    use super::*;

    #[test]
    fn hom_counts() {
        let d0 = Arc::new(simplex(0));
        let d1 = Arc::new(simplex(1));
        let d2 = Arc::new(simplex(2));
        assert_eq!(hom_enumerate(&d0, &d2, None).unwrap().maps.len(), 3);
        assert_eq!(hom_enumerate(&d1, &d1, None).unwrap().maps.len(), 3);
        assert_eq!(hom_enumerate(&d1, &d2, None).unwrap().maps.len(), 6);
        // monotone maps [2] -> [2]
        assert_eq!(hom_enumerate(&d2, &d2, None).unwrap().maps.len(), 10);
    }

    #[test]
    fn limit_is_reported() {
        let d1 = Arc::new(simplex(1));
        let d2 = Arc::new(simplex(2));
        let e = hom_enumerate(&d1, &d2, Some(4)).unwrap();
        assert_eq!(e.maps.len(), 4);
        assert!(!e.complete);
        let e = hom_enumerate(&d1, &d2, Some(6)).unwrap();
        assert!(e.complete || e.maps.len() == 6);
    }

    #[test]
    fn horn_maps_match_pairs_of_edges() {
        // a map Λ^1[2] -> Δ[2] is a composable pair of monotone edges: vertex triples a <= b <= c
        let (h, _) = horn(2, 1).unwrap();
        let d2 = Arc::new(simplex(2));
        assert_eq!(hom_enumerate(&h, &d2, None).unwrap().maps.len(), 10);
        let (h, _) = horn(2, 0).unwrap();
        // pairs of edges out of a common vertex: sum over a of (3-a)^2
        assert_eq!(hom_enumerate(&h, &d2, None).unwrap().maps.len(), 9 + 4 + 1);
    }

    #[test]
    fn isomorphisms() {
        let d2 = Arc::new(simplex(2));
        let iso = find_isomorphism(&d2, &d2).unwrap().unwrap();
        assert!(iso.is_iso());
        let (h, _) = horn(2, 1).unwrap();
        assert!(find_isomorphism(&h, &d2).unwrap().is_none());
    }
}
