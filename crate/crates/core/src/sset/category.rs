//! Finitely presented categories, their enumeration, nerves and `τ₁`.
//!
//! A presentation is enumerated by coset enumeration adapted to categories: the
//! elements are morphisms out of each object, generators act on the right, and
//! every relation is imposed at every element. Coincidences are merged with a
//! union-find. Words are written in diagrammatic order (first arrow first).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use smallvec::SmallVec;

use super::{build_levelwise, GenId, SimplexRef, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};
use crate::verdict::{Verdict, Witness};

pub const DEFAULT_WORD_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// `lhs == rhs` as morphisms `source -> target`; either side may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryPresentation {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub word_budget: usize,
}

impl CategoryPresentation {
    pub fn new(objects: Vec<String>) -> Self {
        CategoryPresentation { objects, arrows: vec![], relations: vec![], word_budget: DEFAULT_WORD_BUDGET }
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, source: usize, target: usize) -> usize {
        self.arrows.push(Arrow { name: name.into(), source, target });
        self.arrows.len() - 1
    }

    pub fn add_relation(&mut self, source: usize, target: usize, lhs: Vec<usize>, rhs: Vec<usize>) -> Result<()> {
        let r = Relation { source, target, lhs, rhs };
        self.check_word(source, target, &r.lhs)?;
        self.check_word(source, target, &r.rhs)?;
        self.relations.push(r);
        Ok(())
    }

    fn check_word(&self, source: usize, target: usize, word: &[usize]) -> Result<()> {
        let mut at = source;
        for &a in word {
            let arrow = self.arrows.get(a).ok_or_else(|| Error::Invalid(format!("unknown arrow {a}")))?;
            if arrow.source != at {
                return Err(Error::Invalid(format!("word is not composable at arrow {}", arrow.name)));
            }
            at = arrow.target;
        }
        if at != target {
            return Err(Error::Invalid(format!("word ends at object {at}, expected {target}")));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for a in &self.arrows {
            if a.source >= self.objects.len() || a.target >= self.objects.len() {
                return Err(Error::Invalid(format!("arrow {} has an unknown endpoint", a.name)));
            }
        }
        for r in &self.relations {
            self.check_word(r.source, r.target, &r.lhs)?;
            self.check_word(r.source, r.target, &r.rhs)?;
        }
        Ok(())
    }

    fn out_arrows(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            out[a.source].push(i);
        }
        out
    }

    /// Enumerates the category, or reports the budget as exhausted.
    pub fn enumerate(&self) -> std::result::Result<FiniteCategory, PartialEnumeration> {
        Enumerator::new(self).run()
    }

    /// Whether two words from `source` denote the same morphism.
    pub fn words_equal(&self, source: usize, w1: &[usize], w2: &[usize]) -> Verdict {
        let scope = format!("coset enumeration, budget {}", self.word_budget);
        match self.enumerate() {
            Ok(c) => {
                let a = c.evaluate(source, w1);
                let b = c.evaluate(source, w2);
                if a == b {
                    Verdict::yes(scope, Witness::Datum(format!("both words denote {}", c.morphisms[a].name)))
                } else {
                    Verdict::no(scope, Witness::Datum(format!("{} != {}", c.morphisms[a].name, c.morphisms[b].name)))
                }
            }
            Err(partial) => match (partial.trace(source, w1), partial.trace(source, w2)) {
                (Some(a), Some(b)) if a == b => Verdict::yes(scope, Witness::Datum("words coincide in the partial table".into())),
                _ => Verdict::inconclusive(scope, format!("more than {} elements", self.word_budget)),
            },
        }
    }

    /// Adjoins formal inverses of the arrows in `s`.
    pub fn localize(&self, s: &[usize]) -> CategoryPresentation {
        let mut out = self.clone();
        for &a in s {
            let arrow = self.arrows[a].clone();
            let inv = out.add_arrow(format!("{}^-1", arrow.name), arrow.target, arrow.source);
            out.relations.push(Relation { source: arrow.source, target: arrow.source, lhs: vec![a, inv], rhs: vec![] });
            out.relations.push(Relation { source: arrow.target, target: arrow.target, lhs: vec![inv, a], rhs: vec![] });
        }
        out
    }
}

pub fn tau1_localize(c: &CategoryPresentation, s: &[usize]) -> CategoryPresentation {
    c.localize(s)
}

/// State left behind when the element budget runs out.
#[derive(Clone, Debug)]
pub struct PartialEnumeration {
    table: Vec<Vec<Option<u32>>>,
    parent: Vec<u32>,
    identity: Vec<u32>,
    slot: Vec<usize>,
}

impl PartialEnumeration {
    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    pub fn trace(&self, source: usize, word: &[usize]) -> Option<u32> {
        let mut e = self.find(self.identity[source]);
        for &a in word {
            e = self.find(self.table[e as usize][self.slot[a]]?);
        }
        Some(e)
    }
}

struct Enumerator<'a> {
    p: &'a CategoryPresentation,
    out: Vec<Vec<usize>>,
    slot: Vec<usize>,
    src: Vec<u32>,
    tgt: Vec<u32>,
    table: Vec<Vec<Option<u32>>>,
    parent: Vec<u32>,
    rels_at: Vec<Vec<usize>>,
    alive: usize,
}

impl<'a> Enumerator<'a> {
    fn new(p: &'a CategoryPresentation) -> Self {
        let out = p.out_arrows();
        let mut slot = vec![0; p.arrows.len()];
        for list in &out {
            for (i, &a) in list.iter().enumerate() {
                slot[a] = i;
            }
        }
        let mut rels_at = vec![Vec::new(); p.objects.len()];
        for (i, r) in p.relations.iter().enumerate() {
            rels_at[r.source].push(i);
        }
        Enumerator { p, out, slot, src: vec![], tgt: vec![], table: vec![], parent: vec![], rels_at, alive: 0 }
    }

    fn new_elem(&mut self, src: u32, tgt: u32) -> u32 {
        let id = self.src.len() as u32;
        self.src.push(src);
        self.tgt.push(tgt);
        self.table.push(vec![None; self.out[tgt as usize].len()]);
        self.parent.push(id);
        self.alive += 1;
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn step(&mut self, e: u32, arrow: usize) -> u32 {
        let e = self.find(e);
        let k = self.slot[arrow];
        match self.table[e as usize][k] {
            Some(x) => self.find(x),
            None => {
                let n = self.new_elem(self.src[e as usize], self.p.arrows[arrow].target as u32);
                self.table[e as usize][k] = Some(n);
                n
            }
        }
    }

    fn trace(&mut self, e: u32, word: &[usize]) -> u32 {
        word.iter().fold(e, |e, &a| self.step(e, a))
    }

    fn coincide(&mut self, a: u32, b: u32) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((a, b)) = queue.pop_front() {
            let x = self.find(a);
            let y = self.find(b);
            if x == y {
                continue;
            }
            let (keep, drop) = if x < y { (x, y) } else { (y, x) };
            self.parent[drop as usize] = keep;
            self.alive -= 1;
            let row = std::mem::take(&mut self.table[drop as usize]);
            for (k, z) in row.into_iter().enumerate() {
                if let Some(z) = z {
                    match self.table[keep as usize][k] {
                        Some(w) => queue.push_back((z, w)),
                        None => self.table[keep as usize][k] = Some(z),
                    }
                }
            }
        }
    }

    fn run(mut self) -> std::result::Result<FiniteCategory, PartialEnumeration> {
        let identity: Vec<u32> = (0..self.p.objects.len()).map(|o| self.new_elem(o as u32, o as u32)).collect();
        let mut i = 0usize;
        while i < self.src.len() {
            if self.alive > self.p.word_budget {
                return Err(PartialEnumeration { table: self.table, parent: self.parent, identity, slot: self.slot });
            }
            let e = i as u32;
            i += 1;
            if self.find(e) != e {
                continue;
            }
            let obj = self.tgt[e as usize] as usize;
            for r in self.rels_at[obj].clone() {
                let rel = &self.p.relations[r];
                let (lhs, rhs) = (rel.lhs.clone(), rel.rhs.clone());
                let a = self.trace(e, &lhs);
                let b = self.trace(e, &rhs);
                self.coincide(a, b);
                if self.find(e) != e {
                    break;
                }
            }
            let e = self.find(e);
            for a in self.out[self.tgt[e as usize] as usize].clone() {
                self.step(e, a);
            }
        }
        Ok(self.finish(identity))
    }

    fn finish(mut self, identity: Vec<u32>) -> FiniteCategory {
        // number the surviving elements breadth-first from the identities
        let mut id_of: HashMap<u32, usize> = HashMap::new();
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut elems: Vec<u32> = Vec::new();
        let mut queue = VecDeque::new();
        for &e in &identity {
            let e = self.find(e);
            if let std::collections::hash_map::Entry::Vacant(v) = id_of.entry(e) {
                v.insert(elems.len());
                elems.push(e);
                words.push(vec![]);
                queue.push_back(e);
            }
        }
        while let Some(e) = queue.pop_front() {
            let base = words[id_of[&e]].clone();
            for a in self.out[self.tgt[e as usize] as usize].clone() {
                let x = self.table[e as usize][self.slot[a]].expect("complete table");
                let x = self.find(x);
                if let std::collections::hash_map::Entry::Vacant(v) = id_of.entry(x) {
                    v.insert(elems.len());
                    elems.push(x);
                    let mut w = base.clone();
                    w.push(a);
                    words.push(w);
                    queue.push_back(x);
                }
            }
        }
        let morphisms: Vec<Morphism> = elems
            .iter()
            .zip(&words)
            .map(|(&e, w)| Morphism {
                source: self.src[e as usize] as usize,
                target: self.tgt[e as usize] as usize,
                name: if w.is_empty() {
                    format!("id_{}", self.p.objects[self.src[e as usize] as usize])
                } else {
                    w.iter().map(|&a| self.p.arrows[a].name.as_str()).collect::<Vec<_>>().join(";")
                },
            })
            .collect();
        let act: Vec<Vec<usize>> = elems
            .iter()
            .map(|&e| {
                self.out[self.tgt[e as usize] as usize]
                    .clone()
                    .into_iter()
                    .map(|a| {
                        let x = self.table[e as usize][self.slot[a]].unwrap();
                        id_of[&self.find(x)]
                    })
                    .collect()
            })
            .collect();
        let identities: Vec<usize> = identity.iter().map(|&e| id_of[&self.find(e)]).collect();
        let generators: Vec<usize> = (0..self.p.arrows.len()).map(|a| act[identities[self.p.arrows[a].source]][self.slot[a]]).collect();
        let mut c = FiniteCategory::from_parts(self.p.objects.clone(), morphisms, identities);
        // composite f;g is f acted on by any word for g
        c.comp = (0..elems.len())
            .map(|f| {
                c.from[c.morphisms[f].target]
                    .iter()
                    .map(|&g| words[g].iter().fold(f, |m, &a| act[m][self.slot[a]]))
                    .collect()
            })
            .collect();
        c.generators = Some(generators);
        c.words = Some(words);
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub name: String,
}

/// A finite category with an explicit composition table.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    /// Morphisms with a given source.
    pub from: Vec<Vec<usize>>,
    pos_in_from: Vec<usize>,
    /// `comp[f][i]` is `f;g` for `g = from[target f][i]`.
    comp: Vec<Vec<usize>>,
    /// For enumerated presentations: the morphism of each generating arrow.
    pub generators: Option<Vec<usize>>,
    pub words: Option<Vec<Vec<usize>>>,
}

impl FiniteCategory {
    fn from_parts(objects: Vec<String>, morphisms: Vec<Morphism>, identities: Vec<usize>) -> Self {
        let mut from = vec![Vec::new(); objects.len()];
        let mut pos_in_from = vec![0; morphisms.len()];
        for (i, m) in morphisms.iter().enumerate() {
            pos_in_from[i] = from[m.source].len();
            from[m.source].push(i);
        }
        FiniteCategory { objects, morphisms, identities, from, pos_in_from, comp: vec![], generators: None, words: None }
    }

    /// Builds a category from morphisms and a composition function for composable pairs.
    pub fn from_composition(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut c = FiniteCategory::from_parts(objects, morphisms, identities);
        c.comp = (0..c.morphisms.len()).map(|f| c.from[c.morphisms[f].target].iter().map(|&g| compose(f, g)).collect()).collect();
        c
    }

    /// `f ; g` (first `f`).
    pub fn compose(&self, f: usize, g: usize) -> usize {
        debug_assert_eq!(self.morphisms[f].target, self.morphisms[g].source);
        self.comp[f][self.pos_in_from[g]]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        self.from[x].iter().copied().filter(|&m| self.morphisms[m].target == y).collect()
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].source] == m
    }

    pub fn evaluate(&self, source: usize, word: &[usize]) -> usize {
        let gens = self.generators.as_ref().expect("category from a presentation");
        word.iter().fold(self.identities[source], |m, &a| self.compose(m, gens[a]))
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let m = &self.morphisms[f];
        self.hom(m.target, m.source)
            .into_iter()
            .find(|&g| self.compose(f, g) == self.identities[m.source] && self.compose(g, f) == self.identities[m.target])
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.morphisms.len()).all(|f| self.inverse(f).is_some())
    }

    /// Whether some chain of `len` composable non-identity morphisms exists.
    pub fn has_nondegenerate_chain(&self, len: usize) -> bool {
        // longest chain ending at each object, capped at len
        let non_id: Vec<usize> = (0..self.morphisms.len()).filter(|&m| !self.is_identity(m)).collect();
        let mut best = vec![0usize; self.objects.len()];
        for _ in 0..len {
            let mut next = best.clone();
            for &m in &non_id {
                let mm = &self.morphisms[m];
                next[mm.target] = next[mm.target].max(best[mm.source] + 1);
            }
            best = next;
        }
        best.iter().any(|&b| b >= len)
    }
}

/// A functor given on objects and on morphisms.
#[derive(Clone, Debug)]
pub struct Functor {
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

impl Functor {
    /// Extends an assignment on generating arrows (as words in the target) to all morphisms.
    pub fn from_generators(
        c: &FiniteCategory,
        d: &FiniteCategory,
        on_objects: Vec<usize>,
        on_arrows: &[Vec<usize>],
    ) -> Functor {
        let words = c.words.as_ref().expect("source from a presentation");
        let on_morphisms = (0..c.morphisms.len())
            .map(|m| {
                let word: Vec<usize> = words[m].iter().flat_map(|&a| on_arrows[a].iter().copied()).collect();
                d.evaluate(on_objects[c.morphisms[m].source], &word)
            })
            .collect();
        Functor { on_objects, on_morphisms }
    }

    /// Fully faithful and essentially surjective, checked hom-set by hom-set.
    pub fn is_equivalence(&self, c: &FiniteCategory, d: &FiniteCategory) -> std::result::Result<(), String> {
        for x in 0..c.objects.len() {
            for y in 0..c.objects.len() {
                let images: BTreeSet<usize> = c.hom(x, y).iter().map(|&m| self.on_morphisms[m]).collect();
                let hc = c.hom(x, y).len();
                let hd = d.hom(self.on_objects[x], self.on_objects[y]).len();
                if images.len() != hc || hc != hd {
                    return Err(format!(
                        "hom({}, {}) has {} morphisms, its image has {}, target hom has {}",
                        c.objects[x], c.objects[y], hc, images.len(), hd
                    ));
                }
            }
        }
        for t in 0..d.objects.len() {
            let reached = (0..c.objects.len()).any(|x| {
                d.hom(self.on_objects[x], t).into_iter().any(|m| d.inverse(m).is_some())
            });
            if !reached {
                return Err(format!("object {} is not isomorphic to an image", d.objects[t]));
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self, c: &FiniteCategory, d: &FiniteCategory) -> std::result::Result<(), String> {
        let objs: BTreeSet<usize> = self.on_objects.iter().copied().collect();
        if objs.len() != c.objects.len() || objs.len() != d.objects.len() {
            return Err("not bijective on objects".into());
        }
        self.is_equivalence(c, d)
    }
}

/// A `k`-chain of composable morphisms starting at `start`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chain {
    pub start: u32,
    pub morphs: SmallVec<[u32; 6]>,
}

/// The nerve of a finite category, as a simplicial set with the chain of each generator.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub set: Arc<SimplicialSet>,
    pub chains: Vec<Chain>,
    pub index: Vec<HashMap<Chain, SimplexRef>>,
}

impl Nerve {
    pub fn simplex_of(&self, c: &Chain) -> Option<SimplexRef> {
        self.index.get(c.morphs.len())?.get(c).cloned()
    }

    pub fn object_vertex(&self, o: usize) -> GenId {
        self.simplex_of(&Chain { start: o as u32, morphs: SmallVec::new() }).unwrap().gen
    }
}

pub fn nerve_of(c: &FiniteCategory, trunc: usize) -> Nerve {
    let exact = !c.has_nondegenerate_chain(trunc + 1);
    let mut levels: Vec<Vec<Chain>> = vec![(0..c.objects.len()).map(|o| Chain { start: o as u32, morphs: SmallVec::new() }).collect()];
    for k in 1..=trunc {
        let mut next = Vec::new();
        for ch in &levels[k - 1] {
            let end = match ch.morphs.last() {
                Some(&m) => c.morphisms[m as usize].target,
                None => ch.start as usize,
            };
            for &m in &c.from[end] {
                let mut morphs = ch.morphs.clone();
                morphs.push(m as u32);
                next.push(Chain { start: ch.start, morphs });
            }
        }
        levels.push(next);
    }
    let obj_at = |ch: &Chain, i: usize| -> usize {
        if i == 0 {
            ch.start as usize
        } else {
            c.morphisms[ch.morphs[i - 1] as usize].target
        }
    };
    let (set, index) = build_levelwise(
        levels,
        |n, ch, i| {
            let mut morphs = ch.morphs.clone();
            if i == 0 {
                let first = morphs.remove(0);
                Chain { start: c.morphisms[first as usize].target as u32, morphs }
            } else if i == n {
                morphs.pop();
                Chain { start: ch.start, morphs }
            } else {
                let g = morphs.remove(i);
                morphs[i - 1] = c.compose(morphs[i - 1] as usize, g as usize) as u32;
                Chain { start: ch.start, morphs }
            }
        },
        |_, ch, i| {
            let mut morphs = ch.morphs.clone();
            morphs.insert(i, c.identities[obj_at(ch, i)] as u32);
            Chain { start: ch.start, morphs }
        },
        |ch| {
            if ch.morphs.is_empty() {
                c.objects[ch.start as usize].clone()
            } else {
                ch.morphs.iter().map(|&m| c.morphisms[m as usize].name.as_str()).collect::<Vec<_>>().join("|")
            }
        },
        if exact { None } else { Some(trunc) },
    )
    .expect("chains are closed under faces");
    let mut chains = vec![None; set.num_generators()];
    for level in &index {
        for (ch, r) in level {
            if r.is_nondegenerate() {
                chains[r.gen.index()] = Some(ch.clone());
            }
        }
    }
    Nerve { set: Arc::new(set), chains: chains.into_iter().map(Option::unwrap).collect(), index }
}

/// The nerve of a presented category; fails if the enumeration exhausts its budget.
pub fn nerve(p: &CategoryPresentation, trunc: usize) -> Result<Nerve> {
    let c = p.enumerate().map_err(|_| Error::Budget(format!("enumeration exceeded {} elements", p.word_budget)))?;
    Ok(nerve_of(&c, trunc))
}

/// `τ₁(X)` with the edge each arrow comes from.
#[derive(Clone, Debug)]
pub struct Tau1 {
    pub presentation: CategoryPresentation,
    /// Vertex generator of each object.
    pub vertex: Vec<GenId>,
    /// Edge generator of each arrow.
    pub edge: Vec<GenId>,
}

impl Tau1 {
    pub fn object_of(&self, v: GenId) -> usize {
        self.vertex.iter().position(|&w| w == v).expect("vertex of the set")
    }

    /// The word for an edge: empty for degenerate edges.
    pub fn word_of(&self, e: &SimplexRef) -> Vec<usize> {
        if e.is_nondegenerate() {
            vec![self.edge.iter().position(|&g| g == e.gen).expect("edge of the set")]
        } else {
            vec![]
        }
    }
}

pub fn tau1(x: &SimplicialSet) -> Result<Tau1> {
    x.check_level(2, "τ₁")?;
    let vertex = x.vertices();
    let obj: HashMap<GenId, usize> = vertex.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut p = CategoryPresentation::new(vertex.iter().map(|&v| x.name(v).to_string()).collect());
    let edge: Vec<GenId> = x.generators_of_dim(1).to_vec();
    for &e in &edge {
        let gen = x.generator(e);
        p.add_arrow(gen.name.clone(), obj[&gen.faces[1].gen], obj[&gen.faces[0].gen]);
    }
    let arrow_of: HashMap<GenId, usize> = edge.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let word = |s: &SimplexRef| if s.is_nondegenerate() { vec![arrow_of[&s.gen]] } else { vec![] };
    for &t in x.generators_of_dim(2) {
        let s = x.simplex(t);
        let (d0, d1, d2) = (x.face(&s, 0), x.face(&s, 1), x.face(&s, 2));
        let mut lhs = word(&d2);
        lhs.extend(word(&d0));
        let rhs = word(&d1);
        if lhs != rhs {
            p.add_relation(obj[&x.vertex(&s, 0)], obj[&x.vertex(&s, 2)], lhs, rhs)?;
        }
    }
    Ok(Tau1 { presentation: p, vertex, edge })
}

/// The functor `τ₁(X) -> τ₁(Y)` induced by a map, as words on generators.
pub fn tau1_of_map(f: &SimplicialMap, tx: &Tau1, ty: &Tau1) -> (Vec<usize>, Vec<Vec<usize>>) {
    let objs = tx.vertex.iter().map(|&v| ty.object_of(f.of_generator(v).gen)).collect();
    let arrows = tx.edge.iter().map(|&e| ty.word_of(f.of_generator(e))).collect();
    (objs, arrows)
}

/// Whether the functor induced by `f` on `τ₁` is an equivalence of categories.
pub fn tau1_equivalence(f: &SimplicialMap, budget: usize) -> Verdict {
    let scope = format!("τ₁ equivalence, coset budget {budget}");
    let (tx, ty) = match (tau1(f.source()), tau1(f.target())) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Verdict::inconclusive(scope, e.to_string()),
    };
    let mut px = tx.presentation.clone();
    let mut py = ty.presentation.clone();
    px.word_budget = budget;
    py.word_budget = budget;
    let (cx, cy) = match (px.enumerate(), py.enumerate()) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Verdict::inconclusive(scope, "τ₁ enumeration exceeded the budget"),
    };
    let (objs, arrows) = tau1_of_map(f, &tx, &ty);
    let functor = Functor::from_generators(&cx, &cy, objs, &arrows);
    match functor.is_equivalence(&cx, &cy) {
        Ok(()) => Verdict::yes(scope, Witness::Checks(vec![
            format!("{} and {} morphisms", cx.morphisms.len(), cy.morphisms.len()),
            "fully faithful".into(),
            "essentially surjective".into(),
        ])),
        Err(e) => Verdict::no(scope, Witness::Datum(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::standard::{boundary, simplex, sk_j};
    use super::*;

    fn poset_1() -> CategoryPresentation {
        let mut p = CategoryPresentation::new(vec!["0".into(), "1".into()]);
        p.add_arrow("f", 0, 1);
        p
    }

    fn free_iso() -> CategoryPresentation {
        let p = poset_1();
        p.localize(&[0])
    }

    #[test]
    fn enumerates_small_categories() {
        let c = poset_1().enumerate().unwrap();
        assert_eq!(c.morphisms.len(), 3);
        let c = free_iso().enumerate().unwrap();
        assert_eq!(c.morphisms.len(), 4);
        assert!(c.is_groupoid());
        // free monoid on one idempotent: {1, e}
        let mut p = CategoryPresentation::new(vec!["*".into()]);
        let e = p.add_arrow("e", 0, 0);
        p.add_relation(0, 0, vec![e, e], vec![e]).unwrap();
        assert_eq!(p.enumerate().unwrap().morphisms.len(), 2);
        // cyclic group of order 5 as a monoid
        let mut p = CategoryPresentation::new(vec!["*".into()]);
        let g = p.add_arrow("g", 0, 0);
        p.add_relation(0, 0, vec![g; 5], vec![]).unwrap();
        let c = p.enumerate().unwrap();
        assert_eq!(c.morphisms.len(), 5);
        assert!(c.is_groupoid());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let mut p = CategoryPresentation::new(vec!["*".into()]);
        p.add_arrow("g", 0, 0);
        p.word_budget = 50;
        assert!(p.enumerate().is_err());
        let v = p.words_equal(0, &[0], &[0, 0]);
        assert!(v.is_inconclusive());
        let v = p.words_equal(0, &[0, 0], &[0, 0]);
        assert!(v.is_yes());
    }

    #[test]
    fn word_equality() {
        let p = free_iso();
        assert!(p.words_equal(0, &[0, 1], &[]).is_yes());
        assert!(p.words_equal(0, &[0, 1, 0], &[0]).is_yes());
        assert!(poset_1().words_equal(0, &[0], &[]).is_no());
    }

    #[test]
    fn nerve_examples() {
        let mut t = CategoryPresentation::new(vec!["*".into()]);
        t.word_budget = 10;
        let n = nerve(&t, 3).unwrap();
        assert_eq!(n.set.counts(), vec![1]);
        assert_eq!(n.set.truncation(), None);
        let n = nerve(&poset_1(), 3).unwrap();
        assert_eq!(n.set.counts(), vec![2, 1]);
        let n = nerve(&free_iso(), 2).unwrap();
        assert_eq!(n.set.truncation(), Some(2));
        assert_eq!(n.set.counts(), sk_j(2).counts());
    }

    #[test]
    fn tau1_examples() {
        let d1 = simplex(1);
        let t = tau1(&d1).unwrap();
        assert_eq!(t.presentation.enumerate().unwrap().morphisms.len(), 3);
        let (b, _) = boundary(2).unwrap();
        let t = tau1(&b).unwrap();
        assert!(t.presentation.relations.is_empty());
        assert_eq!(t.presentation.arrows.len(), 3);
        // 3 identities, 3 generators, one composite 0 -> 1 -> 2
        assert_eq!(t.presentation.enumerate().unwrap().morphisms.len(), 7);
        let j = sk_j(2);
        let c = tau1(&j).unwrap().presentation.enumerate().unwrap();
        assert!(c.is_groupoid());
        assert_eq!(c.morphisms.len(), 4);
    }

    #[test]
    fn tau1_of_nerve_is_the_category() {
        // the commutative square 0 -> 1 -> 3, 0 -> 2 -> 3
        let mut p = CategoryPresentation::new(vec!["0".into(), "1".into(), "2".into(), "3".into()]);
        let a = p.add_arrow("a", 0, 1);
        let b = p.add_arrow("b", 1, 3);
        let c = p.add_arrow("c", 0, 2);
        let d = p.add_arrow("d", 2, 3);
        p.add_relation(0, 3, vec![a, b], vec![c, d]).unwrap();
        let cat = p.enumerate().unwrap();
        assert_eq!(cat.morphisms.len(), 4 + 4 + 1);
        let n = nerve_of(&cat, 3);
        let t = tau1(&n.set).unwrap();
        let tc = t.presentation.enumerate().unwrap();
        let objs: Vec<usize> = t.vertex.iter().map(|v| n.chains[v.index()].start as usize).collect();
        let arrows: Vec<Vec<usize>> = t
            .edge
            .iter()
            .map(|e| {
                let m = n.chains[e.index()].morphs[0] as usize;
                cat.words.as_ref().unwrap()[m].clone()
            })
            .collect();
        let f = Functor::from_generators(&tc, &cat, objs, &arrows);
        f.is_isomorphism(&tc, &cat).unwrap();
    }
}
