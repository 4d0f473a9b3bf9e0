//! Standard simplices, their boundaries and horns, spines, and skeleta of `J`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{build_levelwise, SimplexRef, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

/// A standard object together with its inclusion into `Δ[n]`, when it has one.
#[derive(Clone, Debug)]
pub struct Standard {
    pub set: Arc<SimplicialSet>,
    pub inclusion: Option<SimplicialMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Simplex { n: usize },
    Boundary { n: usize },
    Horn { n: usize, k: usize },
    GeneralizedHorn { n: usize, s: Vec<usize> },
    SkJ { t: usize },
}

pub fn build(kind: &Kind) -> Result<Standard> {
    match kind {
        Kind::Simplex { n } => Ok(Standard { set: Arc::new(simplex(*n)), inclusion: None }),
        Kind::Boundary { n } => {
            let (set, inc) = boundary(*n)?;
            Ok(Standard { set, inclusion: Some(inc) })
        }
        Kind::Horn { n, k } => {
            let (set, inc) = horn(*n, *k)?;
            Ok(Standard { set, inclusion: Some(inc) })
        }
        Kind::GeneralizedHorn { n, s } => {
            let (set, inc) = generalized_horn(*n, s)?;
            Ok(Standard { set, inclusion: Some(inc) })
        }
        Kind::SkJ { t } => Ok(Standard { set: Arc::new(sk_j(*t)), inclusion: None }),
    }
}

fn label(face: &[usize]) -> String {
    if face.iter().all(|&v| v < 10) {
        face.iter().map(|v| v.to_string()).collect()
    } else {
        face.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// An ordered simplicial complex: a downward closed family of finite vertex sets.
///
/// Generators are listed by dimension and then lexicographically; the `i`-th face
/// of `{a_0 < … < a_k}` omits `a_i`.
pub fn ordered_complex(faces: impl IntoIterator<Item = Vec<usize>>) -> Result<SimplicialSet> {
    let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for mut f in faces {
        f.sort();
        f.dedup();
        if f.is_empty() {
            continue;
        }
        // close downward
        let k = f.len();
        for mask in 1u64..(1u64 << k) {
            let sub: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            all.insert((sub.len() - 1, sub));
        }
    }
    let mut x = SimplicialSet::empty();
    let mut ids: HashMap<Vec<usize>, SimplexRef> = HashMap::new();
    for (dim, f) in all {
        let faces = if dim == 0 {
            vec![]
        } else {
            (0..=dim)
                .map(|i| {
                    let mut g = f.clone();
                    g.remove(i);
                    ids[&g].clone()
                })
                .collect()
        };
        let g = x.push_generator(label(&f), dim, faces);
        ids.insert(f, SimplexRef::nondegenerate(g, dim));
    }
    Ok(x)
}

fn subsets_of(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1u64 << (n + 1))).map(move |mask| (0..=n).filter(|i| mask >> i & 1 == 1).collect())
}

pub fn simplex(n: usize) -> SimplicialSet {
    ordered_complex(std::iter::once((0..=n).collect())).expect("Δ[n] is a valid complex")
}

pub fn point() -> SimplicialSet {
    simplex(0)
}

/// The inclusion of the subcomplex of `Δ[n]` spanned by the given vertex sets.
pub fn sub_simplex(n: usize, faces: Vec<Vec<usize>>) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    if let Some(v) = faces.iter().flatten().find(|&&v| v > n) {
        return Err(Error::OutOfRange(format!("vertex {v} is not in Δ[{n}]")));
    }
    let sub = Arc::new(ordered_complex(faces)?);
    let full = Arc::new(simplex(n));
    let images = sub
        .generators()
        .map(|(_, g)| {
            let id = full.find_generator(&g.name).expect("subcomplex face present in the simplex");
            full.simplex(id)
        })
        .collect();
    Ok((sub.clone(), SimplicialMap::new_unchecked(sub, full, images)))
}

pub fn boundary(n: usize) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    if n == 0 {
        let full = Arc::new(simplex(0));
        let empty = Arc::new(SimplicialSet::empty());
        return Ok((empty.clone(), SimplicialMap::new_unchecked(empty, full, vec![])));
    }
    sub_simplex(n, subsets_of(n).filter(|f| f.len() == n).collect())
}

pub fn horn(n: usize, k: usize) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    if n == 0 || k > n {
        return Err(Error::OutOfRange(format!("horn Λ^{k}[{n}] needs 0 <= k <= n and n >= 1")));
    }
    generalized_horn(n, &[k])
}

/// `Λ^S[n]`: the union of the faces `d^i Δ[n-1]` for `i ∉ S`.
pub fn generalized_horn(n: usize, s: &[usize]) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    let s: BTreeSet<usize> = s.iter().copied().collect();
    if s.is_empty() || s.len() > n || s.iter().any(|&i| i > n) {
        return Err(Error::OutOfRange(format!("Λ^S[{n}] needs S a nonempty proper subset of [{n}], got {s:?}")));
    }
    let faces = (0..=n).filter(|i| !s.contains(i)).map(|i| (0..=n).filter(|&j| j != i).collect()).collect();
    sub_simplex(n, faces)
}

/// The spine `I_n`: the chain of edges `i -> i+1`.
pub fn spine(n: usize) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    if n == 0 {
        return sub_simplex(0, vec![vec![0]]);
    }
    sub_simplex(n, (0..n).map(|i| vec![i, i + 1]).collect())
}

/// The skeleton `sk_t J` of the nerve of the free-living isomorphism.
///
/// `J` is the nerve of the contractible groupoid on `{0, 1}`, so its simplices are
/// all words in `{0, 1}`; the nondegenerate ones alternate.
pub fn sk_j(t: usize) -> SimplicialSet {
    let levels: Vec<Vec<Vec<u8>>> = (0..=t)
        .map(|n| (0u64..(1u64 << (n + 1))).map(|m| (0..=n).map(|i| (m >> i & 1) as u8).collect()).collect())
        .collect();
    let (x, _) = build_levelwise(
        levels,
        |_, w: &Vec<u8>, i| {
            let mut v = w.clone();
            v.remove(i);
            v
        },
        |_, w, i| {
            let mut v = w.clone();
            v.insert(i, w[i]);
            v
        },
        |w| w.iter().map(|b| b.to_string()).collect(),
        None,
    )
    .expect("words form a closed family");
    x
}

/// The edge `0 -> 1` of `sk_t J`, as the generator named `01`.
pub fn sk_j_edge(j: &SimplicialSet) -> SimplexRef {
    j.simplex(j.find_generator("01").expect("sk_t J with t >= 1 has the edge 01"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_has_one_vertex() {
        assert_eq!(simplex(0).counts(), vec![1]);
    }

    #[test]
    fn generalized_horn_matches_horn() {
        let (x, inc) = generalized_horn(2, &[0]).unwrap();
        assert_eq!(x.counts(), vec![3, 2]);
        let names: Vec<&str> = x.generators_of_dim(1).iter().map(|&g| x.name(g)).collect();
        assert_eq!(names, vec!["01", "02"]);
        let (h, _) = horn(2, 0).unwrap();
        assert!(h.same_structure(&x));
        assert!(inc.is_mono());
        inc.validate().unwrap();
    }

    #[test]
    fn boundary_and_horn_counts() {
        let (b, _) = boundary(3).unwrap();
        assert_eq!(b.counts(), vec![4, 6, 4]);
        let (h, _) = horn(3, 1).unwrap();
        assert_eq!(h.counts(), vec![4, 6, 3]);
        assert!(horn(2, 3).is_err());
        assert!(generalized_horn(2, &[0, 1, 2]).is_err());
        assert!(generalized_horn(2, &[]).is_err());
    }

    #[test]
    fn sk_j_counts() {
        let j = sk_j(2);
        assert_eq!(j.counts(), vec![2, 2, 2]);
        j.validate().unwrap();
        assert_eq!(sk_j(4).counts(), vec![2, 2, 2, 2, 2]);
    }

    #[test]
    fn spine_counts() {
        let (i3, inc) = spine(3).unwrap();
        assert_eq!(i3.counts(), vec![4, 3]);
        assert!(inc.is_mono());
    }
}
