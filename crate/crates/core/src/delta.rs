//! Arithmetic in the simplex category: monotone maps `[m] -> [n]`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A monotone map `[dom] -> [cod]`, stored as its value sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    cod: u8,
    values: SmallVec<[u8; 8]>,
}

/// Which end of `[n]` a vertex map picks out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexEnd {
    Initial,
    Final,
}

impl MonotoneMap {
    pub fn new(cod: usize, values: impl IntoIterator<Item = usize>) -> Result<Self> {
        let values: SmallVec<[u8; 8]> = values
            .into_iter()
            .map(|v| u8::try_from(v).map_err(|_| Error::OutOfRange(format!("value {v} too large"))))
            .collect::<Result<_>>()?;
        if values.is_empty() {
            return Err(Error::OutOfRange("a monotone map needs a nonempty domain".into()));
        }
        let cod = u8::try_from(cod).map_err(|_| Error::OutOfRange(format!("codomain {cod} too large")))?;
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::OutOfRange(format!("values {values:?} are not nondecreasing")));
        }
        if values.iter().any(|&v| v > cod) {
            return Err(Error::OutOfRange(format!("values {values:?} exceed codomain [{cod}]")));
        }
        Ok(MonotoneMap { cod, values })
    }

    /// Builds a map without validation; callers guarantee monotonicity.
    pub(crate) fn from_raw(cod: usize, values: SmallVec<[u8; 8]>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| (v as usize) <= cod));
        MonotoneMap { cod: cod as u8, values }
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap::from_raw(n, (0..=n as u8).collect())
    }

    /// The coface `δ_i: [n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n, "coface δ_{i} into [{n}] out of range");
        MonotoneMap::from_raw(n, (0..n as u8).map(|j| if (j as usize) < i { j } else { j + 1 }).collect())
    }

    /// The codegeneracy `σ_i: [n+1] -> [n]` hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n, "codegeneracy σ_{i} onto [{n}] out of range");
        MonotoneMap::from_raw(n, (0..=n as u8 + 1).map(|j| if (j as usize) <= i { j } else { j - 1 }).collect())
    }

    pub fn constant(dom: usize, cod: usize, v: usize) -> Self {
        assert!(v <= cod);
        MonotoneMap::from_raw(cod, std::iter::repeat_n(v as u8, dom + 1).collect())
    }

    pub fn vertex(n: usize, which: VertexEnd) -> Self {
        match which {
            VertexEnd::Initial => MonotoneMap::constant(0, n, 0),
            VertexEnd::Final => MonotoneMap::constant(0, n, n),
        }
    }

    pub fn dom(&self) -> usize {
        self.values.len() - 1
    }

    pub fn cod(&self) -> usize {
        self.cod as usize
    }

    pub fn at(&self, i: usize) -> usize {
        self.values[i] as usize
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.values.iter().map(|&v| v as usize)
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.dom() == self.cod() && self.values.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.dom()] == self.cod
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ f`, i.e. first `f`, then `self`.
    pub fn after(&self, f: &MonotoneMap) -> MonotoneMap {
        debug_assert_eq!(f.cod(), self.dom());
        MonotoneMap::from_raw(self.cod(), f.values.iter().map(|&v| self.values[v as usize]).collect())
    }

    /// Unique factorization `self = mono ∘ epi`.
    pub fn epi_mono_factor(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image: SmallVec<[u8; 8]> = SmallVec::new();
        let mut epi: SmallVec<[u8; 8]> = SmallVec::new();
        for &v in &self.values {
            if image.last() != Some(&v) {
                image.push(v);
            }
            epi.push((image.len() - 1) as u8);
        }
        let k = image.len() - 1;
        (MonotoneMap::from_raw(k, epi), MonotoneMap::from_raw(self.cod(), image))
    }

    /// For an injective non-identity map, the largest index of the codomain it misses.
    pub(crate) fn largest_missed(&self) -> Option<usize> {
        let mut j = self.values.len();
        for i in (0..=self.cod()).rev() {
            if j > 0 && self.values[j - 1] as usize == i {
                j -= 1;
            } else {
                return Some(i);
            }
        }
        None
    }

    /// For an injective map missing `i`, the map `g` with `self = δ_i ∘ g`.
    pub(crate) fn factor_through_coface(&self, i: usize) -> MonotoneMap {
        MonotoneMap::from_raw(
            self.cod() - 1,
            self.values.iter().map(|&v| if (v as usize) < i { v } else { v - 1 }).collect(),
        )
    }

    /// Conjugate by order reversal on both ends: `i ↦ cod - f(dom - i)`.
    pub fn reversed(&self) -> MonotoneMap {
        let n = self.dom();
        MonotoneMap::from_raw(self.cod(), (0..=n).map(|i| self.cod - self.values[n - i]).collect())
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "):[{}]->[{}]", self.dom(), self.cod)
    }
}

pub fn compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
    if f.cod() != g.dom() {
        return Err(Error::DomainMismatch(format!(
            "cannot compose {g:?} after {f:?}: codomain [{}] vs domain [{}]",
            f.cod(),
            g.dom()
        )));
    }
    Ok(g.after(f))
}

pub fn epi_mono_factor(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    f.epi_mono_factor()
}

pub fn vertex_map(n: usize, which: VertexEnd) -> MonotoneMap {
    MonotoneMap::vertex(n, which)
}

/// All monotone maps `[m] -> [n]` in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur: SmallVec<[u8; 8]> = SmallVec::new();
    fn rec(m: usize, n: usize, lo: u8, cur: &mut SmallVec<[u8; 8]>, out: &mut Vec<MonotoneMap>) {
        if cur.len() == m + 1 {
            out.push(MonotoneMap::from_raw(n, cur.clone()));
            return;
        }
        for v in lo..=n as u8 {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    rec(m, n, 0, &mut cur, &mut out);
    out
}

type Cache = Mutex<HashMap<(usize, usize), Arc<Vec<MonotoneMap>>>>;

fn surjection_cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All surjections `[n] -> [k]`, cached.
pub fn surjections(n: usize, k: usize) -> Arc<Vec<MonotoneMap>> {
    if let Some(v) = surjection_cache().lock().unwrap().get(&(n, k)) {
        return v.clone();
    }
    let list: Vec<MonotoneMap> = if k > n {
        Vec::new()
    } else {
        monotone_maps(n, k).into_iter().filter(|f| f.is_surjective()).collect()
    };
    let list = Arc::new(list);
    surjection_cache().lock().unwrap().insert((n, k), list.clone());
    list
}

/// All injections `[m] -> [n]`.
pub fn injections(m: usize, n: usize) -> Vec<MonotoneMap> {
    if m > n {
        return Vec::new();
    }
    monotone_maps(m, n).into_iter().filter(|f| f.is_injective()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mm(cod: usize, v: &[usize]) -> MonotoneMap {
        MonotoneMap::new(cod, v.iter().copied()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let f = mm(2, &[0, 2, 2]);
        assert_eq!(compose(&MonotoneMap::identity(2), &f).unwrap(), f);
        let c = compose(&MonotoneMap::coface(2, 1), &MonotoneMap::coface(1, 0)).unwrap();
        assert_eq!(c, mm(2, &[2]));
        let c = compose(&MonotoneMap::codegeneracy(0, 0), &MonotoneMap::coface(1, 0)).unwrap();
        assert_eq!(c, MonotoneMap::identity(0));
        assert!(compose(&MonotoneMap::identity(1), &MonotoneMap::identity(2)).is_err());
    }

    #[test]
    fn factor_examples() {
        let id = MonotoneMap::identity(3);
        assert_eq!(id.epi_mono_factor(), (id.clone(), id.clone()));
        let (e, m) = mm(2, &[0, 0, 2]).epi_mono_factor();
        assert_eq!(e, mm(1, &[0, 0, 1]));
        assert_eq!(m, mm(2, &[0, 2]));
        let (e, m) = mm(1, &[1, 1]).epi_mono_factor();
        assert_eq!(e, mm(0, &[0, 0]));
        assert_eq!(m, mm(1, &[1]));
    }

    #[test]
    fn vertex_examples() {
        assert_eq!(vertex_map(3, VertexEnd::Initial), mm(3, &[0]));
        assert_eq!(vertex_map(0, VertexEnd::Final), MonotoneMap::identity(0));
        assert_eq!(vertex_map(2, VertexEnd::Final), mm(2, &[2]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MonotoneMap::new(2, [1, 0]).is_err());
        assert!(MonotoneMap::new(1, [0, 2]).is_err());
        assert!(MonotoneMap::new(1, []).is_err());
    }

    #[test]
    fn counts() {
        // C(m+n+1, m+1) monotone maps [m] -> [n]
        assert_eq!(monotone_maps(1, 2).len(), 6);
        assert_eq!(monotone_maps(2, 2).len(), 10);
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(injections(1, 3).len(), 6);
    }

    #[test]
    fn largest_missed_and_coface_factor() {
        let f = mm(3, &[0, 2]);
        assert_eq!(f.largest_missed(), Some(3));
        let g = f.factor_through_coface(3);
        assert_eq!(MonotoneMap::coface(3, 3).after(&g), f);
        assert_eq!(MonotoneMap::identity(2).largest_missed(), None);
    }

    #[test]
    fn simplicial_identities_up_to_dim_6() {
        let d = MonotoneMap::coface;
        let s = MonotoneMap::codegeneracy;
        for n in 2..=6 {
            // δ_j δ_i = δ_i δ_{j-1} for i < j, as maps [n-2] -> [n]
            for j in 0..=n {
                for i in 0..j {
                    assert_eq!(d(n, j).after(&d(n - 1, i)), d(n, i).after(&d(n - 1, j - 1)));
                }
            }
        }
        for n in 0..=5 {
            // σ_j σ_i = σ_i σ_{j+1} for i <= j, as maps [n+2] -> [n]
            for j in 0..=n {
                for i in 0..=j {
                    assert_eq!(s(n, j).after(&s(n + 1, i)), s(n, i).after(&s(n + 1, j + 1)));
                }
            }
        }
        for n in 1..=6 {
            // mixed identities for σ_j δ_i : [n] -> [n]
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = s(n, j).after(&d(n + 1, i));
                    if i < j {
                        assert_eq!(lhs, d(n, i).after(&s(n - 1, j - 1)));
                    } else if i == j || i == j + 1 {
                        assert!(lhs.is_identity());
                    } else {
                        assert_eq!(lhs, d(n, i - 1).after(&s(n - 1, j)));
                    }
                }
            }
        }
    }

    fn arb_map(max: usize) -> impl Strategy<Value = MonotoneMap> {
        (0..=max, 0..=max).prop_flat_map(|(m, n)| {
            proptest::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
                v.sort();
                MonotoneMap::new(n, v).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn associativity(f in arb_map(5), seed in proptest::collection::vec(0usize..100, 16)) {
            // build g: [cod f] -> [a], h: [a] -> [b] from the seed
            let a = seed[0] % 5;
            let b = seed[1] % 5;
            let mut gv: Vec<usize> = (0..=f.cod()).map(|i| seed[2 + i % 7] % (a + 1)).collect();
            gv.sort();
            let mut hv: Vec<usize> = (0..=a).map(|i| seed[9 + i % 7] % (b + 1)).collect();
            hv.sort();
            let g = MonotoneMap::new(a, gv).unwrap();
            let h = MonotoneMap::new(b, hv).unwrap();
            prop_assert_eq!(h.after(&g.after(&f)), h.after(&g).after(&f));
        }

        #[test]
        fn factorization_laws(f in arb_map(7)) {
            let (e, m) = f.epi_mono_factor();
            prop_assert_eq!(m.after(&e), f.clone());
            prop_assert!(e.is_surjective());
            prop_assert!(m.is_injective());
            let (e2, m2) = e.epi_mono_factor();
            prop_assert_eq!(e2, e.clone());
            prop_assert!(m2.is_identity());
            prop_assert_eq!(f.reversed().reversed(), f);
        }
    }
}
