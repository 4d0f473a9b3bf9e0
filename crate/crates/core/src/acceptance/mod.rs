//! The ten acceptance criteria, shared by the `acceptance` test target and the
//! `accept` command.
//!
//! Each criterion runs to completion on a fixed corpus and reports whether it held,
//! with counts. Nothing here relaxes a criterion: a failure is reported as a failure.

pub mod corpus;

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use self::corpus::{
    left_fibrations_over_inner_horn, left_fibrations_over_simplex, monos_into_quasi_categories, non_left_fibrations_over_simplex,
    standard_monos, subcomplexes, Named,
};
use crate::bisimplicial::{
    box_product, box_product_map, box_product_to, d_star, delta_shriek, delta_shriek_map, delta_shriek_to, diagonal, diagonal_of_map,
    initial_object_check, is_strong, replacement_augmentation, standard_bisimplex, BisimplicialMap, Variant,
};
use crate::error::Result;
use crate::homotopy::{induces_homology_iso, is_covariant_equivalence, is_right_cofinal, is_right_cofinal_auto, pi0_count, pi0_map, Budget, CofinalityMode};
use crate::lifting::{classify_fibration, FibrationKind};
use crate::localization::delocalization_check;
use crate::sset::standard::{boundary, generalized_horn, horn, simplex, spine};
use crate::sset::{
    coproduct, cotensor, delta_simplex_as_map, Filter, find_isomorphism, hom_enumerate, mapping_space_over, product, pullback, slice, GenId,
    MapSearch, SimplexRef, SimplicialMap, SimplicialSet, SliceSide,
};
use crate::verdict::Outcome;

pub const CRITERIA: usize = 10;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub number: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {}: {} ({}; {:.1}s)",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

pub fn title(n: usize) -> &'static str {
    match n {
        1 => "generalized horns are right cofinal",
        2 => "cofinality oracles agree",
        3 => "diagonal of a strong Reedy left fibration",
        4 => "column-wise right cofinal implies diagonal right cofinal",
        5 => "ds(X) -> X and initial objects",
        6 => "delocalization instances",
        7 => "fiberwise criterion for covariant equivalence",
        8 => "enrichment adjunctions",
        9 => "box and diagonal identities",
        10 => "spine pullbacks into left fibrations are right cofinal",
        _ => "unknown criterion",
    }
}

/// Runs criterion `n` (1-based).
pub fn run(n: usize) -> CriterionReport {
    let start = Instant::now();
    let outcome = match n {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        _ => Ok((false, format!("no criterion {n}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionReport { number: n, title: title(n), passed, detail, elapsed: start.elapsed() }
}

/// Runs all criteria on separate threads; reports come back in order.
pub fn run_all() -> Vec<CriterionReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=CRITERIA).map(|n| s.spawn(move || run(n))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    })
}

type Outcome2 = Result<(bool, String)>;

fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
    Arc::new(x)
}

fn criterion_1() -> Outcome2 {
    let budget = Budget::default();
    let mut failures = vec![];
    let mut total = 0;
    for n in 1..=4usize {
        for mask in 1u64..(1u64 << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let (_, inc) = generalized_horn(n, &s)?;
            total += 1;
            let v = is_right_cofinal(&inc, CofinalityMode::TheoremA, &budget)?;
            if !v.is_yes() {
                failures.push(format!("Λ^{s:?}[{n}]: {}", v.summary()));
            }
        }
    }
    Ok((failures.is_empty(), format!("{total} inclusions, {} not Yes {failures:?}", failures.len())))
}

fn criterion_2() -> Outcome2 {
    let budget = Budget::default();
    let monos = monos_into_quasi_categories(12)?;
    let modes = [CofinalityMode::Definition, CofinalityMode::TheoremA, CofinalityMode::Joyal];
    let mut contradictions = vec![];
    let mut inconclusive = 0;
    for m in &monos {
        let outcomes = modes.iter().map(|&mode| is_right_cofinal(&m.value, mode, &budget).map(|v| v.outcome)).collect::<Result<Vec<_>>>()?;
        inconclusive += outcomes.iter().filter(|o| **o == Outcome::Inconclusive).count();
        if outcomes.contains(&Outcome::Yes) && outcomes.contains(&Outcome::No) {
            contradictions.push(format!("{}: {outcomes:?}", m.name));
        }
    }
    let runs = monos.len() * modes.len();
    let rate = inconclusive as f64 / runs as f64;
    let passed = monos.len() >= 40 && contradictions.is_empty() && rate <= 0.2;
    Ok((passed, format!("{} monos, {} contradictions {contradictions:?}, inconclusive {inconclusive}/{runs} = {:.1}%", monos.len(), contradictions.len(), 100.0 * rate)))
}

/// Maps to `B□1` for criterion 3, with what kind of example each is.
fn reedy_corpus() -> Result<Vec<Named<BisimplicialMap>>> {
    const TOP: usize = 3;
    let p0 = arc(simplex(0));
    let bases: Vec<(String, Vec<Named<SimplicialMap>>, Vec<Named<SimplicialMap>>)> = vec![
        ("Δ[0]".into(), left_fibrations_over_simplex(0, 3, 3)?, vec![]),
        ("Δ[1]".into(), left_fibrations_over_simplex(1, 2, 4)?, non_left_fibrations_over_simplex(1)?),
        ("Δ[2]".into(), left_fibrations_over_simplex(2, 1, 3)?, non_left_fibrations_over_simplex(2)?),
        ("Λ^1[2]".into(), left_fibrations_over_inner_horn(2)?, vec![]),
    ];
    let mut out = vec![];
    let two = coproduct(&p0, &p0).0;
    let d1 = arc(simplex(1));
    for (b, lefts, others) in bases {
        for p in lefts.iter().chain(&others) {
            let d = d_star(&p.value, TOP)?;
            out.push(Named::new(format!("d_* of {} over {b}", p.name), d.to_base));
        }
        for p in lefts.iter().take(2).chain(others.iter().take(1)) {
            for (lname, l) in [("Δ[0]", &p0), ("Δ[0] ⊔ Δ[0]", &two), ("Δ[1]", &d1)] {
                let src = box_product_to(p.value.source(), l, TOP)?;
                let tgt = box_product_to(p.value.target(), &p0, TOP)?;
                let c = SimplicialMap::constant(l.clone(), p0.clone(), GenId(0));
                out.push(Named::new(format!("constant columns {} □ ({lname} -> Δ[0]) over {b}", p.name), box_product_map(&p.value, &c, &src, &tgt)?));
            }
        }
    }
    Ok(out)
}

fn criterion_3() -> Outcome2 {
    const BOUND: usize = 3;
    let corpus = reedy_corpus()?;
    let mut strong = 0;
    let (mut strong_dstar, mut strong_const) = (0, 0);
    let mut counterexamples = vec![];
    for m in &corpus {
        if !is_strong(&m.value, BOUND)?.is_yes() {
            continue;
        }
        strong += 1;
        if m.name.starts_with("d_*") {
            strong_dstar += 1;
        } else {
            strong_const += 1;
        }
        let (_, _, d) = diagonal_of_map(&m.value)?;
        let v = classify_fibration(&d, FibrationKind::Left, BOUND)?;
        if !v.is_yes() {
            counterexamples.push(format!("{}: {}", m.name, v.summary()));
        }
    }
    let passed = corpus.len() >= 30 && strong >= 5 && strong_dstar > 0 && strong_const > 0 && counterexamples.is_empty();
    Ok((
        passed,
        format!(
            "{} maps, {strong} strong ({strong_dstar} d_*, {strong_const} constant-column), {} counterexamples {counterexamples:?}",
            corpus.len(),
            counterexamples.len()
        ),
    ))
}

fn criterion_4() -> Outcome2 {
    let budget = Budget::default();
    let p0 = arc(simplex(0));
    let d1 = arc(simplex(1));
    let mut maps = monos_into_quasi_categories(usize::MAX)?;
    for (name, x) in [("Δ[1]", d1.clone()), ("Δ[2]", arc(simplex(2))), ("Λ^0[2]", horn(2, 0)?.0), ("Λ^2[2]", horn(2, 2)?.0), ("∂Δ[1]", boundary(1)?.0)] {
        maps.push(Named::new(format!("{name} -> Δ[0]"), SimplicialMap::constant(x, p0.clone(), GenId(0))));
    }
    let mut eligible = 0;
    let mut inconclusive = 0;
    let mut counterexamples = vec![];
    let mut skipped = 0;
    for (kname, k) in [("Δ[0]", &p0), ("Δ[1]", &d1)] {
        for g in &maps {
            let t = g.value.target();
            let h = k.dim().unwrap_or(0) + t.dim().unwrap_or(0);
            let src = box_product_to(k, g.value.source(), h)?;
            let tgt = box_product_to(k, t, h)?;
            let f = box_product_map(&SimplicialMap::identity(k.clone()), &g.value, &src, &tgt)?;
            let mut columns_ok = true;
            for m in 0..=h {
                if !is_right_cofinal_auto(f.column(m), &budget)?.is_yes() {
                    columns_ok = false;
                    break;
                }
            }
            if !columns_ok {
                skipped += 1;
                continue;
            }
            eligible += 1;
            let (_, _, d) = diagonal_of_map(&f)?;
            let v = is_right_cofinal_auto(&d, &budget)?;
            match v.outcome {
                Outcome::Yes => {}
                Outcome::Inconclusive => inconclusive += 1,
                Outcome::No => counterexamples.push(format!("{kname} □ {}: {}", g.name, v.summary())),
            }
        }
    }
    let passed = eligible >= 20 && counterexamples.is_empty();
    Ok((
        passed,
        format!("{eligible} column-wise cofinal maps ({skipped} others skipped), {} counterexamples {counterexamples:?}, {inconclusive} inconclusive", counterexamples.len()),
    ))
}

fn criterion_5() -> Outcome2 {
    let budget = Budget::default();
    let d2 = arc(simplex(2));
    let mut cases: Vec<Named<SimplicialMap>> = (0..=2).map(|n| Named::new(format!("id Δ[{n}]"), SimplicialMap::identity(arc(simplex(n))))).collect();
    cases.push(Named::new("Λ^0[2] -> Δ[2]", horn(2, 0)?.1));
    cases.push(Named::new("∂Δ[2] -> Δ[2]", boundary(2)?.1));
    for v in 0..3 {
        for side in [SliceSide::Under, SliceSide::Over] {
            let s = slice(&d2, GenId(v), side)?;
            cases.push(Named::new(format!("slice {side:?} {v} of Δ[2]"), s.projection));
        }
    }
    let mut failures = vec![];
    let mut witnesses = 0;
    for c in &cases {
        let (_, v) = replacement_augmentation(&c.value, Variant::Nondegenerate, &budget)?;
        if !v.is_yes() {
            failures.push(format!("{}: {}", c.name, v.summary()));
        }
        let x = c.value.source();
        for m in 0..=x.dim().unwrap_or(0) {
            for s in x.simplices(m) {
                witnesses += 1;
                let w = initial_object_check(&c.value, Variant::Nondegenerate, &s)?;
                if !w.is_yes() {
                    failures.push(format!("{} at {}: {}", c.name, x.describe(&s), w.summary()));
                }
            }
        }
    }
    Ok((failures.is_empty(), format!("{} maps, {witnesses} initial-object checks, {} failures {failures:?}", cases.len(), failures.len())))
}

fn criterion_6() -> Outcome2 {
    let budget = Budget::default();
    let bases = vec![
        ("Δ[0]", arc(simplex(0))),
        ("Δ[1]", arc(simplex(1))),
        ("Δ[2]", arc(simplex(2))),
        ("∂Δ[2]", boundary(2)?.0),
        ("Λ^1[2]", horn(2, 1)?.0),
    ];
    let mut failures = vec![];
    for (name, b) in &bases {
        let v = delocalization_check(b, 2, &budget)?;
        if !v.is_yes() {
            failures.push(format!("{name}: {}", v.summary()));
        }
    }
    Ok((failures.is_empty(), format!("{} bases, {} failures {failures:?}", bases.len(), failures.len())))
}

/// Maps `X -> Y` over the base, up to `limit`.
fn maps_over(p_x: &SimplicialMap, p_y: &SimplicialMap, limit: usize) -> Result<Vec<SimplicialMap>> {
    let (x, y) = (p_x.source(), p_y.source());
    let filter = |g: GenId, c: &SimplexRef| p_y.image(c) == *p_x.of_generator(g);
    let filter: &Filter = &filter;
    Ok(MapSearch::new(x, y).filter(filter).collect(x, y, Some(limit))?.maps)
}

/// π₀ bijection and homology isomorphism through degree 2 on every fiber.
fn fiberwise_equivalence(f: &SimplicialMap, p_x: &SimplicialMap, p_y: &SimplicialMap) -> Result<bool> {
    let b = p_x.target();
    let p0 = arc(simplex(0));
    for v in b.vertices() {
        let at = SimplicialMap::constant(p0.clone(), b.clone(), v);
        let fx = pullback(p_x, &at);
        let fy = pullback(p_y, &at);
        let fb = fy.lift(&f.after(&fx.pr1)?, &fx.pr2)?;
        let pi = pi0_map(&fb);
        let mut seen = pi.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != pi.len() || pi.len() != pi0_count(&fy.set) {
            return Ok(false);
        }
        if !induces_homology_iso(&fb, 2).is_yes() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_7() -> Outcome2 {
    let budget = Budget::default();
    let mut total = 0;
    let (mut yes, mut no, mut inconclusive) = (0, 0, 0);
    let mut disagreements = vec![];
    for (n, size, count) in [(1, 2, 6), (2, 1, 4)] {
        let fibs = left_fibrations_over_simplex(n, size, count)?;
        for px in &fibs {
            for py in &fibs {
                for f in maps_over(&px.value, &py.value, 3)? {
                    total += 1;
                    let v = is_covariant_equivalence(&f, &px.value, &py.value, &budget)?;
                    let fiberwise = fiberwise_equivalence(&f, &px.value, &py.value)?;
                    match v.outcome {
                        Outcome::Yes => yes += 1,
                        Outcome::No => no += 1,
                        Outcome::Inconclusive => inconclusive += 1,
                    }
                    if (v.is_yes() && !fiberwise) || (v.is_no() && fiberwise) {
                        disagreements.push(format!("{} -> {} over Δ[{n}]", px.name, py.name));
                    }
                }
            }
        }
    }
    let passed = total >= 10 && disagreements.is_empty();
    Ok((passed, format!("{total} maps ({yes} yes, {no} no, {inconclusive} inconclusive), {} disagreements {disagreements:?}", disagreements.len())))
}

struct AdjunctionCase {
    name: String,
    p_x: SimplicialMap,
    p_y: SimplicialMap,
    k: Arc<SimplicialSet>,
}

fn adjunction_cases() -> Result<Vec<AdjunctionCase>> {
    let p0 = arc(simplex(0));
    let d1 = arc(simplex(1));
    let d2 = arc(simplex(2));
    let (bd1, _) = boundary(1)?;
    let to_point = |x: &Arc<SimplicialSet>| SimplicialMap::constant(x.clone(), p0.clone(), GenId(0));
    let mut cases = vec![];
    for (xn, x) in [("Δ[0]", &p0), ("Δ[1]", &d1)] {
        for (yn, y) in [("Δ[1]", &d1), ("Δ[2]", &d2)] {
            for (kn, k) in [("Δ[0]", &p0), ("Δ[1]", &d1), ("∂Δ[1]", &bd1)] {
                if x.num_generators() + k.num_generators() > 8 && xn == "Δ[1]" && kn != "Δ[0]" && yn == "Δ[2]" {
                    continue;
                }
                cases.push(AdjunctionCase { name: format!("X={xn}, Y={yn}, K={kn} over Δ[0]"), p_x: to_point(x), p_y: to_point(y), k: k.clone() });
            }
        }
    }
    let id1 = SimplicialMap::identity(d1.clone());
    let under = left_fibrations_over_simplex(1, 2, 4)?;
    for py in under.iter().take(3) {
        cases.push(AdjunctionCase { name: format!("X=Δ[1], Y={}, K=Δ[1] over Δ[1]", py.name), p_x: id1.clone(), p_y: py.value.clone(), k: d1.clone() });
    }
    let one = SimplicialMap::constant(p0.clone(), d1.clone(), GenId(1));
    cases.push(AdjunctionCase { name: "X={1}, Y=Δ[1], K=∂Δ[1] over Δ[1]".into(), p_x: one, p_y: id1, k: bd1 });
    Ok(cases)
}

/// Counts of the three hom-sets, and whether the constructed maps out of the first
/// are injective into the other two.
fn adjunction_instance(c: &AdjunctionCase) -> Result<(usize, usize, usize, bool)> {
    const TRUNC: usize = 2;
    let (x, k) = (c.p_x.source(), &c.k);
    let xk = product(x, k);
    let p_xk = c.p_x.after(&xk.pr1)?;
    let tensor_maps = maps_over(&p_xk, &c.p_y, usize::MAX)?;
    let mb = mapping_space_over(&c.p_x, &c.p_y, TRUNC)?;
    let via_map = hom_enumerate(k, &mb.set, None)?.maps.len();
    let cot = cotensor(k, &c.p_y, TRUNC)?;
    let cot_base = cot.to_base.clone().expect("cotensors carry their projection");
    let via_cotensor = maps_over(&c.p_x, &cot_base, usize::MAX)?.len();
    let deltas: Vec<Arc<SimplicialSet>> = (0..=TRUNC).map(|n| arc(simplex(n))).collect();
    let mut left_images = std::collections::HashSet::new();
    let mut right_images = std::collections::HashSet::new();
    for f in &tensor_maps {
        // K -> map_B(X, Y): k ↦ ((δ, x) ↦ F(x, k∘δ))
        let images = k
            .generators()
            .map(|(g, gen)| {
                let n = gen.dim;
                let ks = k.simplex(g);
                let imgs: Vec<SimplexRef> = mb.products[n]
                    .index
                    .pairs
                    .iter()
                    .map(|(d, xx)| f.image(&xk.pair(xx, &k.apply(&ks, &delta_simplex_as_map(&deltas[n], d)))))
                    .collect();
                mb.lookup(None, imgs, n).ok_or_else(|| crate::Error::Invalid("transpose is not a simplex of map_B(X, Y)".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let left = SimplicialMap::new(k.clone(), mb.set.clone(), images)?;
        left_images.insert(left.images().to_vec());
        // X -> Y^K over B: x ↦ (p(x), (δ, κ) ↦ F(x∘δ, κ))
        let images = x
            .generators()
            .map(|(g, gen)| {
                let n = gen.dim;
                let xs = x.simplex(g);
                let imgs: Vec<SimplexRef> = cot.products[n]
                    .index
                    .pairs
                    .iter()
                    .map(|(d, kk)| f.image(&xk.pair(&x.apply(&xs, &delta_simplex_as_map(&deltas[n], d)), kk)))
                    .collect();
                cot.lookup(Some(c.p_x.image(&xs)), imgs, n).ok_or_else(|| crate::Error::Invalid("transpose is not a simplex of Y^K".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let right = SimplicialMap::new(x.clone(), cot.set.clone(), images)?;
        if !cot_base.after(&right)?.same_as(&c.p_x) {
            return Ok((tensor_maps.len(), via_map, via_cotensor, false));
        }
        right_images.insert(right.images().to_vec());
    }
    let injective = left_images.len() == tensor_maps.len() && right_images.len() == tensor_maps.len();
    Ok((tensor_maps.len(), via_map, via_cotensor, injective))
}

fn criterion_8() -> Outcome2 {
    let cases = adjunction_cases()?;
    let mut failures = vec![];
    let mut counts = vec![];
    for c in &cases {
        let sizes = [c.p_x.source().num_generators(), c.p_y.source().num_generators(), c.k.num_generators()];
        if sizes.iter().any(|&s| s > 8) {
            failures.push(format!("{}: more than 8 generators", c.name));
            continue;
        }
        let (a, b, cc, bij) = adjunction_instance(c)?;
        counts.push(a);
        if a != b || b != cc || !bij {
            failures.push(format!("{}: counts {a}, {b}, {cc}, bijection {bij}", c.name));
        }
    }
    let passed = cases.len() >= 10 && failures.is_empty();
    Ok((passed, format!("{} instances, hom-set sizes {counts:?}, {} failures {failures:?}", cases.len(), failures.len())))
}

fn criterion_9() -> Outcome2 {
    let sets: Vec<(&str, Arc<SimplicialSet>)> =
        vec![("Δ[0]", arc(simplex(0))), ("Δ[1]", arc(simplex(1))), ("Δ[2]", arc(simplex(2))), ("∂Δ[2]", boundary(2)?.0), ("Λ^0[2]", horn(2, 0)?.0)];
    let mut failures = vec![];
    let mut pairs = 0;
    for (kn, k) in &sets {
        for (ln, l) in &sets {
            if k.dim().unwrap_or(0) + l.dim().unwrap_or(0) > 3 {
                continue;
            }
            pairs += 1;
            let b = box_product(k, l)?;
            let d = diagonal(&b.set)?;
            let p = product(k, l);
            if find_isomorphism(&d.set, &p.set)?.is_none() {
                failures.push(format!("d({kn} □ {ln}) ≇ {kn} × {ln}"));
            }
        }
    }
    for n in 0..=2 {
        let dn = arc(simplex(n));
        let s = delta_shriek(&dn)?;
        let b = standard_bisimplex(n, n)?;
        let f = b.map_from(&s.built, |_, _, (g, al, be)| (dn.apply(&dn.simplex(*g), al), dn.apply(&dn.simplex(*g), be)))?;
        if !(0..=2 * n).all(|m| f.column(m).is_iso()) {
            failures.push(format!("δ_!Δ[{n}] ≇ Δ[{n},{n}]"));
        }
    }
    let mut monos = standard_monos()?;
    for (i, inc) in subcomplexes(&arc(simplex(2))).into_iter().enumerate().take(8) {
        monos.push(Named::new(format!("subcomplex #{i} of Δ[2]"), inc));
    }
    for m in &monos {
        let h = 2;
        let sa = delta_shriek_to(m.value.source(), h)?;
        let sx = delta_shriek_to(m.value.target(), h)?;
        if !delta_shriek_map(&m.value, &sa, &sx)?.is_mono() {
            failures.push(format!("δ_! of {} is not mono", m.name));
        }
    }
    let passed = monos.len() >= 20 && failures.is_empty();
    Ok((passed, format!("{pairs} box/product pairs, 3 representables, {} monos, {} failures {failures:?}", monos.len(), failures.len())))
}

fn criterion_10() -> Outcome2 {
    let budget = Budget::default();
    let mut failures = vec![];
    let mut total = 0;
    for (n, size, limit) in [(2, 2, 10), (3, 1, 10)] {
        let (_, i_n) = spine(n)?;
        for p in left_fibrations_over_simplex(n, size, limit)? {
            total += 1;
            let pb = pullback(&i_n, &p.value);
            let inc = pb.pr2.clone();
            if !inc.is_mono() {
                failures.push(format!("{}: not mono", p.name));
                continue;
            }
            let v = is_right_cofinal_auto(&inc, &budget)?;
            if !v.is_yes() {
                failures.push(format!("{} over Δ[{n}]: {}", p.name, v.summary()));
            }
        }
    }
    Ok((failures.is_empty(), format!("{total} left fibrations, {} failures {failures:?}", failures.len())))
}
