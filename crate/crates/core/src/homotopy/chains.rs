//! Normalized chains, Smith normal form and integral homology.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::sset::{GenId, SimplicialMap, SimplicialSet};

/// A dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    for j in 0..other.cols {
                        out.add_to(i, j, a * other.get(k, j));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| BigInt::from(self.get(i, j))).collect()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<i64>> = (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// Normalized chains: one basis element per nondegenerate generator.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// Generator of each basis element, per degree.
    pub basis: Vec<Vec<GenId>>,
    /// `boundaries[n]: C_n -> C_{n-1}` (rows indexed by `C_{n-1}`); `boundaries[0]` is `0 x rank C_0`.
    pub boundaries: Vec<Matrix>,
}

impl ChainComplex {
    pub fn rank(&self, n: usize) -> usize {
        self.basis.get(n).map_or(0, |b| b.len())
    }

    pub fn top(&self) -> usize {
        self.basis.len().saturating_sub(1)
    }

    /// `∂_{n-1} ∘ ∂_n == 0` in every degree.
    pub fn is_complex(&self) -> bool {
        (2..self.boundaries.len()).all(|n| self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero())
    }
}

/// Chains of `x` in degrees `0..=top`, where `top` is capped by the data `x` carries.
pub fn normalized_chains(x: &SimplicialSet, top: usize) -> ChainComplex {
    let top = top.min(x.valid_up_to());
    let basis: Vec<Vec<GenId>> = (0..=top).map(|n| x.generators_of_dim(n).to_vec()).collect();
    let mut boundaries = vec![Matrix::zeros(0, basis[0].len())];
    for n in 1..=top {
        let pos: std::collections::HashMap<GenId, usize> = basis[n - 1].iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut m = Matrix::zeros(basis[n - 1].len(), basis[n].len());
        for (j, &g) in basis[n].iter().enumerate() {
            for (i, f) in x.generator(g).faces.iter().enumerate() {
                if f.is_nondegenerate() {
                    m.add_to(pos[&f.gen], j, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex { basis, boundaries }
}

/// The chain map of `f` in degree `n`, as a matrix `C_n(X) -> C_n(Y)`.
pub fn chain_map(f: &SimplicialMap, cx: &ChainComplex, cy: &ChainComplex, n: usize) -> Matrix {
    let pos: std::collections::HashMap<GenId, usize> = cy.basis[n].iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut m = Matrix::zeros(cy.rank(n), cx.rank(n));
    for (j, &g) in cx.basis[n].iter().enumerate() {
        let img = f.of_generator(g);
        if img.is_nondegenerate() {
            m.add_to(pos[&img.gen], j, 1);
        }
    }
    m
}

/// The mapping cone of `f`: `Cone_n = C_n(Y) ⊕ C_{n-1}(X)`, `∂(y, x) = (∂y + f x, -∂x)`.
pub fn mapping_cone(f: &SimplicialMap, top: usize) -> ChainComplex {
    let cx = normalized_chains(f.source(), top.saturating_sub(1));
    let cy = normalized_chains(f.target(), top);
    let top = cy.top().min(cx.top() + 1);
    let mut basis = Vec::new();
    for n in 0..=top {
        let mut b = cy.basis[n].clone();
        if n >= 1 {
            b.extend(cx.basis[n - 1].iter().copied());
        }
        basis.push(b);
    }
    let mut boundaries = vec![Matrix::zeros(0, basis[0].len())];
    for n in 1..=top {
        let (ry1, ry) = (cy.rank(n - 1), cy.rank(n));
        let rx1 = if n >= 2 { cx.rank(n - 2) } else { 0 };
        let rx = cx.rank(n - 1);
        let mut m = Matrix::zeros(ry1 + rx1, ry + rx);
        let dy = &cy.boundaries[n];
        for i in 0..ry1 {
            for j in 0..ry {
                m.set(i, j, dy.get(i, j));
            }
        }
        let fm = chain_map(f, &cx, &cy, n - 1);
        for i in 0..ry1 {
            for j in 0..rx {
                m.set(i, ry + j, fm.get(i, j));
            }
        }
        if n >= 2 {
            let dx = &cx.boundaries[n - 1];
            for i in 0..rx1 {
                for j in 0..rx {
                    m.set(ry1 + i, ry + j, -dx.get(i, j));
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex { basis, boundaries }
}

/// Integers the elimination can run on; `i64` reports overflow, `BigInt` never does.
trait SnfInt: Clone + PartialEq + fmt::Debug {
    type Key: Ord;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_key(&self) -> Self::Key;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn quot(&self, o: &Self) -> Self;
    fn is_negative(&self) -> bool;
}

impl SnfInt for i64 {
    type Key = u64;
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_key(&self) -> u64 {
        self.unsigned_abs()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl SnfInt for BigInt {
    type Key = BigInt;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_key(&self) -> BigInt {
        self.abs()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// `U · A · V = D` with `D` diagonal, each entry dividing the next.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero diagonal entries, positive and in divisibility order.
    pub diagonal: Vec<BigInt>,
    pub u: Option<Vec<Vec<BigInt>>>,
    pub v: Option<Vec<Vec<BigInt>>>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Checks `U·A·V == D` and `det U, det V = ±1`.
    pub fn verify(&self, a: &Matrix) -> bool {
        let (Some(u), Some(v)) = (&self.u, &self.v) else { return false };
        let a = a.to_big();
        let ua = big_mul(u, &a, a.len(), a.first().map_or(v.len(), |r| r.len()));
        let uav = big_mul(&ua, v, ua.len(), v.len());
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expected = if i == j && i < self.diagonal.len() { self.diagonal[i].clone() } else { <BigInt as Zero>::zero() };
                if *x != expected {
                    return false;
                }
            }
        }
        let unit = |m: &Vec<Vec<BigInt>>| determinant(m).abs() == <BigInt as One>::one();
        unit(u) && unit(v)
    }
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
    let _ = inner;
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b.iter()).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Bareiss fraction-free elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return <BigInt as One>::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = <BigInt as One>::one();
    let mut prev = <BigInt as One>::one();
    for k in 0..n - 1 {
        if Zero::is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !Zero::is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return <BigInt as Zero>::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

struct Elim<T> {
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
}

impl<T: SnfInt> Elim<T> {
    fn ident(n: usize) -> Vec<Vec<T>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
    }

    /// row_i += c * row_k
    fn row_add(&mut self, i: usize, k: usize, c: &T) -> Option<()> {
        for mat in [Some(&mut self.a), self.u.as_mut()].into_iter().flatten() {
            for j in 0..mat[0].len() {
                let t = mat[k][j].mul(c)?;
                mat[i][j] = mat[i][j].add(&t)?;
            }
        }
        Some(())
    }

    /// col_j += c * col_k
    fn col_add(&mut self, j: usize, k: usize, c: &T) -> Option<()> {
        for mat in [Some(&mut self.a), self.v.as_mut()].into_iter().flatten() {
            for row in mat.iter_mut() {
                let t = row[k].mul(c)?;
                row[j] = row[j].add(&t)?;
            }
        }
        Some(())
    }

    fn row_swap(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        if let Some(u) = &mut self.u {
            u.swap(i, k);
        }
    }

    fn col_swap(&mut self, j: usize, k: usize) {
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(j, k);
            }
        }
    }

    fn row_neg(&mut self, i: usize) -> Option<()> {
        for mat in [Some(&mut self.a), self.u.as_mut()].into_iter().flatten() {
            for x in mat[i].iter_mut() {
                *x = x.neg()?;
            }
        }
        Some(())
    }

    fn run(&mut self) -> Option<Vec<T>> {
        let rows = self.a.len();
        let cols = if rows == 0 { 0 } else { self.a[0].len() };
        let mut diag = Vec::new();
        for t in 0..rows.min(cols) {
            // smallest nonzero entry of the remaining block
            let mut best: Option<(T::Key, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !self.a[i][j].is_zero() {
                        let k = self.a[i][j].abs_key();
                        if best.as_ref().is_none_or(|b| k < b.0) {
                            best = Some((k, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].quot(&self.a[t][t]).neg()?;
                        self.row_add(i, t, &q)?;
                        if !self.a[i][t].is_zero() {
                            self.row_swap(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].quot(&self.a[t][t]).neg()?;
                        self.col_add(j, t, &q)?;
                        if !self.a[t][j].is_zero() {
                            self.col_swap(t, j);
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a[i][j].quot(&self.a[t][t]).mul(&self.a[t][t]).is_some_and(|p| p == self.a[i][j]))
                });
                match bad {
                    Some(i) => {
                        self.row_add(t, i, &T::one())?;
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.row_neg(t)?;
            }
            diag.push(self.a[t][t].clone());
        }
        Some(diag)
    }
}

fn to_big_rows<T: SnfInt>(m: Vec<Vec<T>>, conv: impl Fn(&T) -> BigInt) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(&conv).collect()).collect()
}

/// Smith normal form, on `i64` while it fits and on `BigInt` otherwise.
pub fn smith_normal_form(a: &Matrix, transforms: bool) -> Snf {
    let rows: Vec<Vec<i64>> = (0..a.rows).map(|i| (0..a.cols).map(|j| a.get(i, j)).collect()).collect();
    let mut e = Elim {
        a: rows,
        u: transforms.then(|| Elim::<i64>::ident(a.rows)),
        v: transforms.then(|| Elim::<i64>::ident(a.cols)),
    };
    if let Some(d) = e.run() {
        return Snf {
            diagonal: d.into_iter().map(BigInt::from).collect(),
            u: e.u.map(|m| to_big_rows(m, |x| BigInt::from(*x))),
            v: e.v.map(|m| to_big_rows(m, |x| BigInt::from(*x))),
        };
    }
    let mut e = Elim {
        a: a.to_big(),
        u: transforms.then(|| Elim::<BigInt>::ident(a.rows)),
        v: transforms.then(|| Elim::<BigInt>::ident(a.cols)),
    };
    let d = e.run().expect("BigInt elimination cannot overflow");
    Snf { diagonal: d, u: e.u, v: e.v }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub betti: usize,
    /// Torsion coefficients greater than one.
    pub torsion: Vec<BigInt>,
    pub trusted: bool,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn same_group(&self, other: &DegreeHomology) -> bool {
        self.betti == other.betti && self.torsion == other.torsion
    }
}

impl fmt::Display for DegreeHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 { "Z".to_string() } else { format!("Z^{}", self.betti) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))?;
        if !self.trusted {
            write!(f, " (untrusted)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub degrees: Vec<DegreeHomology>,
    /// Degrees below this are trusted; `None` when every degree is.
    pub trusted_below: Option<usize>,
}

impl HomologyReport {
    pub fn is_trusted(&self, n: usize) -> bool {
        self.trusted_below.is_none_or(|t| n < t)
    }

    pub fn degree(&self, n: usize) -> Option<&DegreeHomology> {
        self.degrees.get(n)
    }
}

/// Homology of a chain complex in degrees `0..=max_degree`; degrees at or above
/// `trusted_below` are reported but marked untrusted.
pub fn complex_homology(c: &ChainComplex, max_degree: usize, trusted_below: Option<usize>) -> HomologyReport {
    let snfs: Vec<Snf> = c.boundaries.iter().map(|m| smith_normal_form(m, false)).collect();
    let rank_of = |n: usize| snfs.get(n).map_or(0, |s| s.rank());
    let mut degrees = Vec::new();
    for n in 0..=max_degree {
        let kernel = c.rank(n) - rank_of(n);
        let image = rank_of(n + 1);
        let torsion = snfs
            .get(n + 1)
            .map(|s| s.diagonal.iter().filter(|d| **d > <BigInt as One>::one()).cloned().collect())
            .unwrap_or_default();
        // degrees whose incoming boundary was never computed are not known
        let computed = n < c.top() || c.rank(n) == 0;
        let trusted = trusted_below.is_none_or(|t| n < t) && computed;
        degrees.push(DegreeHomology { betti: kernel.saturating_sub(image), torsion, trusted });
    }
    HomologyReport { degrees, trusted_below }
}

/// Integral homology of `x` in degrees `0..=max_degree`.
pub fn homology(x: &SimplicialSet, max_degree: usize) -> HomologyReport {
    let trusted_below = x.truncation();
    let top = match x.truncation() {
        Some(t) => (max_degree + 1).min(t),
        None => (max_degree + 1).min(x.dim().unwrap_or(0)),
    };
    let c = normalized_chains(x, top);
    let mut r = complex_homology(&c, max_degree, trusted_below);
    if x.truncation().is_none() {
        // untruncated: the complex is complete in every degree
        for d in r.degrees.iter_mut() {
            d.trusted = true;
        }
    }
    r
}

pub fn euler_characteristic(x: &SimplicialSet) -> Option<i64> {
    if x.truncation().is_some() {
        return None;
    }
    Some(x.counts().iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum())
}
