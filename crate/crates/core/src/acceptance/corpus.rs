//! Deterministic families of small simplicial objects used by the acceptance suite.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::delta::MonotoneMap;
use crate::error::Result;
use crate::lifting::{default_bound, is_left_fibration, is_quasi_category};
use crate::sset::standard::{boundary, generalized_horn, horn, ordered_complex, simplex, sub_simplex};
use crate::sset::{coproduct, copair, delta_simplex_from_map, pullback, subcomplex, GenId, SimplicialMap, SimplicialSet};

#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

impl<T> Named<T> {
    pub fn new(name: impl Into<String>, value: T) -> Self {
        Named { name: name.into(), value }
    }
}

fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
    Arc::new(x)
}

/// A functor `[n] -> FinSet`: the size of each set and the maps `F(i) -> F(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

impl FinFunctor {
    fn name(&self) -> String {
        let maps: Vec<String> = self.maps.iter().map(|m| m.iter().map(|v| v.to_string()).collect()).collect();
        format!("el{:?}[{}]", self.sizes, maps.join("|"))
    }

    /// `F(i <= j)(x)`.
    fn transport(&self, i: usize, j: usize, mut x: usize) -> usize {
        for k in i..j {
            x = self.maps[k][x];
        }
        x
    }
}

/// The nerve of the category of elements of `f`, with its projection to `Δ[n]`.
pub fn elements(f: &FinFunctor) -> Result<SimplicialMap> {
    let n = f.sizes.len() - 1;
    // vertices numbered by (level, element)
    let offsets: Vec<usize> = f.sizes.iter().scan(0, |acc, &s| {
        let o = *acc;
        *acc += s;
        Some(o)
    }).collect();
    let mut faces = Vec::new();
    for mask in 1u64..(1u64 << (n + 1)) {
        let levels: Vec<usize> = (0..=n).filter(|i| mask >> i & 1 == 1).collect();
        for x in 0..f.sizes[levels[0]] {
            faces.push(levels.iter().map(|&l| offsets[l] + f.transport(levels[0], l, x)).collect::<Vec<_>>());
        }
    }
    let mut level_of = Vec::new();
    for (l, &s) in f.sizes.iter().enumerate() {
        level_of.extend(std::iter::repeat_n(l, s));
    }
    let x = arc(ordered_complex(faces)?);
    let dn = arc(simplex(n));
    map_by_vertex_levels(&x, &dn, |v| level_of[v])
}

/// The map from an ordered complex to `Δ[n]` determined on vertices.
fn map_by_vertex_levels(x: &Arc<SimplicialSet>, dn: &Arc<SimplicialSet>, level: impl Fn(usize) -> usize) -> Result<SimplicialMap> {
    let n = dn.dim().unwrap_or(0);
    let vertex_index = |g: GenId| -> usize { x.name(g).replace('.', "").parse().expect("ordered complex vertex labels are numerals") };
    let images = x
        .generators()
        .map(|(g, _)| {
            let s = x.simplex(g);
            let values: Vec<usize> = x.vertex_list(&s).into_iter().map(|v| level(vertex_index(v))).collect();
            MonotoneMap::new(n, values).map(|m| delta_simplex_from_map(dn, &m))
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(x.clone(), dn.clone(), images)
}

/// Functors `[n] -> FinSet` with every `F(i)` of size at most `max_size`.
pub fn functors(n: usize, max_size: usize) -> Vec<FinFunctor> {
    let mut out = vec![];
    let mut sizes = vec![0; n + 1];
    loop {
        if sizes.iter().any(|&s| s > 0) {
            let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![]];
            for i in 0..n {
                let mut next = vec![];
                for prefix in &acc {
                    for m in all_functions(sizes[i], sizes[i + 1]) {
                        let mut p = prefix.clone();
                        p.push(m);
                        next.push(p);
                    }
                }
                acc = next;
            }
            out.extend(acc.into_iter().map(|maps| FinFunctor { sizes: sizes.clone(), maps }));
        }
        let mut i = 0;
        loop {
            if i > n {
                return out;
            }
            sizes[i] += 1;
            if sizes[i] <= max_size {
                break;
            }
            sizes[i] = 0;
            i += 1;
        }
    }
}

fn all_functions(a: usize, b: usize) -> Vec<Vec<usize>> {
    if a == 0 {
        return vec![vec![]];
    }
    if b == 0 {
        return vec![];
    }
    let mut out = vec![];
    let mut f = vec![0; a];
    loop {
        out.push(f.clone());
        let mut i = 0;
        loop {
            if i == a {
                return out;
            }
            f[i] += 1;
            if f[i] < b {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Checked left fibrations over `Δ[n]`: categories of elements of small functors.
pub fn left_fibrations_over_simplex(n: usize, max_size: usize, limit: usize) -> Result<Vec<Named<SimplicialMap>>> {
    let mut out = vec![];
    for f in functors(n, max_size) {
        if out.len() >= limit {
            break;
        }
        let p = elements(&f)?;
        if is_left_fibration(&p, default_bound(&p))?.is_yes() {
            out.push(Named::new(f.name(), p));
        }
    }
    Ok(out)
}

/// Maps into `Δ[n]` that are not left fibrations.
pub fn non_left_fibrations_over_simplex(n: usize) -> Result<Vec<Named<SimplicialMap>>> {
    let dn = arc(simplex(n));
    let mut out = vec![];
    if n >= 1 {
        out.push(Named::new(format!("{{0}} -> Δ[{n}]"), SimplicialMap::constant(arc(simplex(0)), dn.clone(), GenId(0))));
        out.push(Named::new(format!("∂Δ[{n}] -> Δ[{n}]"), boundary(n)?.1));
    }
    if n >= 2 {
        out.push(Named::new(format!("Λ^{n}[{n}] -> Δ[{n}]"), horn(n, n)?.1));
        out.push(Named::new(format!("Λ^1[{n}] -> Δ[{n}]"), horn(n, 1)?.1));
    }
    let mut kept = vec![];
    for c in out {
        if !is_left_fibration(&c.value, default_bound(&c.value))?.is_yes() {
            kept.push(c);
        }
    }
    Ok(kept)
}

/// Left fibrations over `Λ^1[2]`, pulled back from `Δ[2]`.
pub fn left_fibrations_over_inner_horn(limit: usize) -> Result<Vec<Named<SimplicialMap>>> {
    let (_, inc) = horn(2, 1)?;
    left_fibrations_over_simplex(2, 2, limit)?
        .into_iter()
        .map(|p| {
            let pb = pullback(&inc, &p.value);
            Ok(Named::new(format!("{} restricted to Λ^1[2]", p.name), pb.pr1))
        })
        .collect()
}

/// Targets for the cofinality corpus: small quasi-categories.
pub fn quasi_category_targets() -> Result<Vec<Named<Arc<SimplicialSet>>>> {
    let p0 = arc(simplex(0));
    let d1 = arc(simplex(1));
    let mut out = vec![
        Named::new("Δ[1]", d1.clone()),
        Named::new("Δ[2]", arc(simplex(2))),
        Named::new("Λ^0[2]", horn(2, 0)?.0),
        Named::new("Λ^2[2]", horn(2, 2)?.0),
        Named::new("Δ[1] ⊔ Δ[0]", coproduct(&d1, &p0).0),
        Named::new("Δ[1] ⊔ Δ[1]", coproduct(&d1, &d1).0),
        Named::new("square 0<1,0<2,1<3,2<3", arc(ordered_complex([vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]])?)),
        Named::new("two triangles", arc(ordered_complex([vec![0, 1, 3], vec![0, 2, 3]])?)),
    ];
    let bound = 3;
    let mut kept = vec![];
    for t in out.drain(..) {
        if is_quasi_category(&t.value, bound)?.is_yes() {
            kept.push(t);
        }
    }
    Ok(kept)
}

/// Every nonempty proper subcomplex of `x` (as generated by a set of generators),
/// with its inclusion.
pub fn subcomplexes(x: &Arc<SimplicialSet>) -> Vec<SimplicialMap> {
    let n = x.num_generators();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = vec![];
    for mask in 1u64..(1u64 << n) {
        let gens: Vec<GenId> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| GenId(i as u32)).collect();
        let (sub, inc) = subcomplex(x, &gens);
        let key: Vec<usize> = inc.images().iter().map(|s| s.gen.index()).collect::<BTreeSet<_>>().into_iter().collect();
        if key.len() == n || !seen.insert(key) {
            continue;
        }
        let _ = sub;
        out.push(inc);
    }
    out
}

/// Monomorphisms into the quasi-category targets, at most `per_target` each.
pub fn monos_into_quasi_categories(per_target: usize) -> Result<Vec<Named<SimplicialMap>>> {
    let mut out = vec![];
    for t in quasi_category_targets()? {
        if t.value.num_generators() > 10 {
            continue;
        }
        let mut subs = subcomplexes(&t.value);
        subs.push(SimplicialMap::identity(t.value.clone()));
        for (i, inc) in subs.into_iter().take(per_target).enumerate() {
            out.push(Named::new(format!("{} #{i}", t.name), inc));
        }
    }
    Ok(out)
}

/// Monomorphisms among small standard objects, for the `δ_!` check.
pub fn standard_monos() -> Result<Vec<Named<SimplicialMap>>> {
    let mut out = vec![];
    for n in 1..=2 {
        out.push(Named::new(format!("∂Δ[{n}] ⊂ Δ[{n}]"), boundary(n)?.1));
        for k in 0..=n {
            if n >= 2 {
                out.push(Named::new(format!("Λ^{k}[{n}] ⊂ Δ[{n}]"), horn(n, k)?.1));
            }
            out.push(Named::new(format!("{{{k}}} ⊂ Δ[{n}]"), sub_simplex(n, vec![vec![k]])?.1));
        }
    }
    out.push(Named::new("Λ^{0,1}[2] ⊂ Δ[2]", generalized_horn(2, &[0, 1])?.1));
    out.push(Named::new("spine ⊂ Δ[2]", sub_simplex(2, vec![vec![0, 1], vec![1, 2]])?.1));
    out.push(Named::new("{0,2} ⊂ Δ[2]", sub_simplex(2, vec![vec![0], vec![2]])?.1));
    let p0 = arc(simplex(0));
    let d1 = arc(simplex(1));
    let (sum, i, j) = coproduct(&d1, &p0);
    out.push(Named::new("Δ[1] ⊂ Δ[1] ⊔ Δ[0]", i));
    out.push(Named::new("Δ[0] ⊂ Δ[1] ⊔ Δ[0]", j));
    let (two, a, b) = coproduct(&p0, &p0);
    let to_edge = copair(&two, &[a, b], &[
        SimplicialMap::constant(p0.clone(), d1.clone(), GenId(0)),
        SimplicialMap::constant(p0.clone(), d1.clone(), GenId(1)),
    ])?;
    out.push(Named::new("{0} ⊔ {1} ⊂ Δ[1]", to_edge));
    let _ = sum;
    Ok(out)
}
