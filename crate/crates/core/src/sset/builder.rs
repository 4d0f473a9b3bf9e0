use std::collections::HashMap;
use std::hash::Hash;

use super::{SimplexRef, SimplicialSet};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};

/// Assembles a simplicial set from complete levels of simplices.
///
/// `levels[n]` must list every `n`-simplex exactly once, and the levels must be
/// closed under `face` and `degen`. A simplex `y` is degenerate iff
/// `y = s_i d_i y` for some `i`; the nondegenerate ones become generators and
/// every simplex is mapped to its normal form.
pub(crate) fn build_levelwise<T, F, D, N>(
    levels: Vec<Vec<T>>,
    face: F,
    degen: D,
    name: N,
    truncation: Option<usize>,
) -> Result<(SimplicialSet, Vec<HashMap<T, SimplexRef>>)>
where
    T: Clone + Eq + Hash,
    F: Fn(usize, &T, usize) -> T,
    D: Fn(usize, &T, usize) -> T,
    N: Fn(&T) -> String,
{
    let mut out = SimplicialSet::with_truncation(truncation);
    let mut index: Vec<HashMap<T, SimplexRef>> = Vec::with_capacity(levels.len());
    for (n, level) in levels.into_iter().enumerate() {
        let mut map: HashMap<T, SimplexRef> = HashMap::with_capacity(level.len());
        for y in level {
            if n == 0 {
                let g = out.push_generator(name(&y), 0, vec![]);
                map.insert(y, SimplexRef::nondegenerate(g, 0));
                continue;
            }
            let prev = &index[n - 1];
            let lookup = |z: &T| -> Result<SimplexRef> {
                prev.get(z).cloned().ok_or_else(|| Error::Invalid(format!("level {} is not closed under faces", n - 1)))
            };
            let mut degenerate = None;
            let mut faces = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let z = face(n, &y, i);
                if degenerate.is_none() && i < n && degen(n - 1, &z, i) == y {
                    degenerate = Some((i, lookup(&z)?));
                    break;
                }
                faces.push(z);
            }
            let r = match degenerate {
                Some((i, z)) => z.degenerate_by(&MonotoneMap::codegeneracy(n - 1, i)),
                None => {
                    let faces = faces.iter().map(&lookup).collect::<Result<Vec<_>>>()?;
                    let g = out.push_generator(name(&y), n, faces);
                    SimplexRef::nondegenerate(g, n)
                }
            };
            map.insert(y, r);
        }
        index.push(map);
    }
    Ok((out, index))
}
