//! Path components and edge-path groups.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::sset::category::CategoryPresentation;
use crate::sset::{GenId, SimplicialMap, SimplicialSet};

use super::chains::{smith_normal_form, Matrix};

/// Component label of every vertex, labels numbered by first vertex.
pub fn components(x: &SimplicialSet) -> HashMap<GenId, usize> {
    let verts = x.vertices();
    let mut parent: HashMap<GenId, GenId> = verts.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut HashMap<GenId, GenId>, v: GenId) -> GenId {
        let mut r = v;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(v, r);
        r
    }
    for &e in x.generators_of_dim(1) {
        let f = &x.generator(e).faces;
        let a = find(&mut parent, f[0].gen);
        let b = find(&mut parent, f[1].gen);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent.insert(hi, lo);
        }
    }
    let mut label: HashMap<GenId, usize> = HashMap::new();
    let mut out = HashMap::new();
    for &v in &verts {
        let r = find(&mut parent, v);
        let n = label.len();
        let l = *label.entry(r).or_insert(n);
        out.insert(v, l);
    }
    out
}

pub fn pi0_count(x: &SimplicialSet) -> usize {
    components(x).values().copied().max().map_or(0, |m| m + 1)
}

/// The map on components induced by `f`, as a vector indexed by source component.
pub fn pi0_map(f: &SimplicialMap) -> Vec<usize> {
    let cx = components(f.source());
    let cy = components(f.target());
    let mut out = vec![usize::MAX; pi0_count(f.source())];
    for (v, c) in cx {
        out[c] = cy[&f.of_generator(v).gen];
    }
    out
}

/// A group presentation; a letter `±(g+1)` is generator `g` or its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

fn free_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic reduction
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == -out[end - 1] {
        start += 1;
        end -= 1;
    }
    out[start..end].to_vec()
}

fn invert(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|&l| -l).collect()
}

impl GroupPresentation {
    /// Removes generators that some relator expresses in terms of the others, as
    /// long as that does not lengthen the presentation much.
    pub fn simplify(&mut self) {
        loop {
            self.relators = self.relators.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect();
            self.relators.sort();
            self.relators.dedup();
            // a relator containing some generator exactly once lets us eliminate it
            let mut pick = None;
            for (ri, r) in self.relators.iter().enumerate() {
                for &l in r {
                    let g = l.abs();
                    if r.iter().filter(|&&m| m.abs() == g).count() == 1 {
                        let better = pick.is_none_or(|(_, _, len)| r.len() < len);
                        if better {
                            pick = Some((ri, l, r.len()));
                        }
                    }
                }
            }
            let Some((ri, l, len)) = pick else { return };
            if len > 8 {
                return;
            }
            let r = self.relators.remove(ri);
            let pos = r.iter().position(|&m| m == l).unwrap();
            // r = a l b  =>  l = a^-1 b^-1
            let mut value = invert(&r[..pos]);
            value.extend(invert(&r[pos + 1..]));
            if l < 0 {
                value = invert(&value);
            }
            let g = l.abs();
            let sub = |w: &Vec<i32>| -> Vec<i32> {
                let mut out = Vec::new();
                for &m in w {
                    if m == g {
                        out.extend(value.iter().copied());
                    } else if m == -g {
                        out.extend(invert(&value));
                    } else {
                        out.push(m);
                    }
                }
                out
            };
            self.relators = self.relators.iter().map(sub).collect();
            // renumber: the last generator takes the place of g
            let last = self.generators as i32;
            if g != last {
                for r in self.relators.iter_mut() {
                    for m in r.iter_mut() {
                        if m.abs() == last {
                            *m = m.signum() * g;
                        }
                    }
                }
            }
            self.generators -= 1;
        }
    }

    /// Free rank and torsion of the abelianization.
    pub fn abelianization(&self) -> (usize, Vec<num_bigint::BigInt>) {
        let mut m = Matrix::zeros(self.relators.len(), self.generators);
        for (i, r) in self.relators.iter().enumerate() {
            for &l in r {
                m.add_to(i, l.unsigned_abs() as usize - 1, l.signum() as i64);
            }
        }
        let s = smith_normal_form(&m, false);
        let one = num_bigint::BigInt::from(1);
        (self.generators - s.rank(), s.diagonal.into_iter().filter(|d| *d > one).collect())
    }

    /// The order of the group, by coset enumeration over the trivial subgroup.
    pub fn order(&self, budget: usize) -> Option<usize> {
        let mut p = CategoryPresentation::new(vec!["*".into()]);
        p.word_budget = budget;
        for g in 0..self.generators {
            p.add_arrow(format!("x{g}"), 0, 0);
        }
        for g in 0..self.generators {
            p.add_arrow(format!("X{g}"), 0, 0);
        }
        let letter = |l: i32| -> usize {
            let g = l.unsigned_abs() as usize - 1;
            if l > 0 { g } else { self.generators + g }
        };
        for g in 0..self.generators {
            p.relations.push(crate::sset::category::Relation { source: 0, target: 0, lhs: vec![g, self.generators + g], rhs: vec![] });
            p.relations.push(crate::sset::category::Relation { source: 0, target: 0, lhs: vec![self.generators + g, g], rhs: vec![] });
        }
        for r in &self.relators {
            p.relations.push(crate::sset::category::Relation { source: 0, target: 0, lhs: r.iter().map(|&l| letter(l)).collect(), rhs: vec![] });
        }
        p.enumerate().ok().map(|c| c.morphisms.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi1 {
    Trivial,
    /// Nontrivial, with a reason.
    Nontrivial(String),
    /// Abelianization vanishes but the enumeration ran out.
    Unknown,
}

/// The edge-path presentation of `π₁(x, base)`: generators are the edges outside a
/// spanning tree of the component, relators come from the 2-simplices.
pub fn edge_path_group(x: &SimplicialSet, base: GenId) -> GroupPresentation {
    let comp = components(x);
    let c = comp[&base];
    let mut in_tree: HashMap<GenId, bool> = HashMap::new();
    let mut seen: HashMap<GenId, bool> = HashMap::from([(base, true)]);
    let mut adj: HashMap<GenId, Vec<(GenId, GenId)>> = HashMap::new();
    for &e in x.generators_of_dim(1) {
        let f = &x.generator(e).faces;
        let (s, t) = (f[1].gen, f[0].gen);
        if comp[&s] == c {
            adj.entry(s).or_default().push((e, t));
            adj.entry(t).or_default().push((e, s));
        }
    }
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for &(e, w) in adj.get(&v).map(|v| v.as_slice()).unwrap_or(&[]) {
            if let Entry::Vacant(slot) = seen.entry(w) {
                slot.insert(true);
                in_tree.insert(e, true);
                queue.push_back(w);
            }
        }
    }
    let mut gen_of: HashMap<GenId, i32> = HashMap::new();
    for &e in x.generators_of_dim(1) {
        let s = x.generator(e).faces[1].gen;
        if comp[&s] == c && !in_tree.contains_key(&e) {
            let n = gen_of.len() as i32 + 1;
            gen_of.insert(e, n);
        }
    }
    let letter = |s: &crate::sset::SimplexRef| -> Option<i32> {
        if s.is_nondegenerate() {
            gen_of.get(&s.gen).copied()
        } else {
            None
        }
    };
    let mut relators = Vec::new();
    if x.valid_up_to() >= 2 {
        for &t in x.generators_of_dim(2) {
            let f = &x.generator(t).faces;
            if comp[&x.vertex(&f[0], 0)] != c {
                continue;
            }
            let mut r = Vec::new();
            r.extend(letter(&f[2]));
            r.extend(letter(&f[0]));
            r.extend(letter(&f[1]).map(|l| -l));
            relators.push(r);
        }
    }
    GroupPresentation { generators: gen_of.len(), relators }
}

pub fn pi1_triviality(x: &SimplicialSet, base: GenId, budget: usize) -> Pi1 {
    let mut g = edge_path_group(x, base);
    g.simplify();
    if g.generators == 0 {
        return Pi1::Trivial;
    }
    let (rank, torsion) = g.abelianization();
    if rank > 0 || !torsion.is_empty() {
        let mut parts = vec![format!("Z^{rank}")];
        parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
        return Pi1::Nontrivial(format!("abelianization {}", parts.join(" + ")));
    }
    match g.order(budget) {
        Some(1) => Pi1::Trivial,
        Some(n) => Pi1::Nontrivial(format!("perfect group of order {n}")),
        None => Pi1::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::{boundary, simplex, sk_j};

    #[test]
    fn components_of_small_sets() {
        assert_eq!(pi0_count(&simplex(2)), 1);
        let (b, _) = boundary(1).unwrap();
        assert_eq!(pi0_count(&b), 2);
    }

    #[test]
    fn fundamental_groups() {
        assert_eq!(pi1_triviality(&simplex(3), GenId(0), 100), Pi1::Trivial);
        let (b, _) = boundary(2).unwrap();
        assert!(matches!(pi1_triviality(&b, GenId(0), 100), Pi1::Nontrivial(_)));
        let (b, _) = boundary(3).unwrap();
        assert_eq!(pi1_triviality(&b, GenId(0), 100), Pi1::Trivial);
        // J is contractible
        assert_eq!(pi1_triviality(&sk_j(3), GenId(0), 100), Pi1::Trivial);
    }

    #[test]
    fn coset_order_of_a_finite_group() {
        // symmetric group S3 = <a, b | a^2, b^3, (ab)^2>
        let g = GroupPresentation { generators: 2, relators: vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]] };
        assert_eq!(g.order(1000), Some(6));
        assert_eq!(g.abelianization(), (0, vec![num_bigint::BigInt::from(2)]));
    }

    #[test]
    fn simplification_eliminates_generators() {
        let mut g = GroupPresentation { generators: 3, relators: vec![vec![1, 2], vec![2, -3], vec![3, 3, 3]] };
        g.simplify();
        assert_eq!(g.generators, 1);
        assert_eq!(g.abelianization().1, vec![num_bigint::BigInt::from(3)]);
    }
}
