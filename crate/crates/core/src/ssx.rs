//! SSX: the JSON exchange format for simplicial data.
//!
//! A document is an object with `format: "ssx"`, `version`, `kind`, and a body.
//! Generators are referred to by name; a simplex is either a generator name or
//! `{"gen": name, "deg": [..]}` with `deg` a surjection onto the generator's
//! dimension. Output sorts object keys and lists generators by `(dim, name)`, and
//! input is read in dimension order, so re-serializing a parsed document
//! reproduces it byte for byte.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::bisimplicial::{BisimplicialMap, BisimplicialSet, Variant};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::localization::{simplex_category, MarkedSSet, SimplicialPresheaf};
use crate::sset::category::CategoryPresentation;
use crate::sset::{GenId, SimplexRef, SimplicialMap, SimplicialSet};

pub const VERSION: u64 = 1;

#[derive(Clone, Debug)]
pub enum Document {
    SSet(Arc<SimplicialSet>),
    SMap(SimplicialMap),
    BisSet(Arc<BisimplicialSet>),
    BisMap(BisimplicialMap),
    Marked(MarkedSSet),
    Presheaf(SimplicialPresheaf),
    Category(CategoryPresentation),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::SSet(_) => "sset",
            Document::SMap(_) => "smap",
            Document::BisSet(_) => "bisset",
            Document::BisMap(_) => "bismap",
            Document::Marked(_) => "marked",
            Document::Presheaf(_) => "presheaf-bundle",
            Document::Category(_) => "category",
        }
    }
}

fn field_err(path: &str, message: impl Into<String>) -> Error {
    Error::Field { path: path.to_string(), message: message.into() }
}

/// Distinct names for the generators, keeping the given ones where possible.
fn unique_names(x: &SimplicialSet) -> Vec<String> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for (_, g) in x.generators() {
        *count.entry(g.name.as_str()).or_default() += 1;
    }
    let mut used: HashSet<String> = x.generators().filter(|(_, g)| count[g.name.as_str()] == 1 && !g.name.is_empty()).map(|(_, g)| g.name.clone()).collect();
    x.generators()
        .map(|(id, g)| {
            if count[g.name.as_str()] == 1 && !g.name.is_empty() {
                return g.name.clone();
            }
            let mut candidate = format!("{}#{}", g.name, id.0);
            while used.contains(&candidate) {
                candidate.push('\'');
            }
            used.insert(candidate.clone());
            candidate
        })
        .collect()
}

struct Names {
    names: Vec<String>,
}

impl Names {
    fn of(x: &SimplicialSet) -> Self {
        Names { names: unique_names(x) }
    }

    fn simplex(&self, s: &SimplexRef) -> Value {
        let name = &self.names[s.gen.index()];
        if s.is_nondegenerate() {
            json!(name)
        } else {
            json!({"gen": name, "deg": s.deg.values().collect::<Vec<_>>()})
        }
    }
}

fn sset_value(x: &SimplicialSet) -> Value {
    let names = Names::of(x);
    let mut gens: Vec<(usize, &str, GenId)> = x.generators().map(|(g, gen)| (gen.dim, names.names[g.index()].as_str(), g)).collect();
    gens.sort();
    let generators: Vec<Value> = gens
        .iter()
        .map(|&(dim, name, g)| {
            let faces: Vec<Value> = x.generator(g).faces.iter().map(|f| names.simplex(f)).collect();
            json!({"id": name, "dim": dim, "faces": faces})
        })
        .collect();
    json!({"generators": generators, "truncation": x.truncation()})
}

fn images_value(f: &SimplicialMap) -> Value {
    let src = Names::of(f.source());
    let tgt = Names::of(f.target());
    let map: Map<String, Value> = f.source().generators().map(|(g, _)| (src.names[g.index()].clone(), tgt.simplex(f.of_generator(g)))).collect();
    Value::Object(map)
}

fn body(doc: &Document) -> Value {
    match doc {
        Document::SSet(x) => sset_value(x),
        Document::SMap(f) => json!({"source": sset_value(f.source()), "target": sset_value(f.target()), "images": images_value(f)}),
        Document::BisSet(x) => bisset_value(x),
        Document::BisMap(f) => {
            let comps: Vec<Value> = (0..=f.source().h_top()).map(|m| images_value(f.column(m))).collect();
            json!({"source": bisset_value(f.source()), "target": bisset_value(f.target()), "components": comps})
        }
        Document::Marked(m) => {
            let names = Names::of(&m.carrier);
            json!({"carrier": sset_value(&m.carrier), "marks": m.marks.iter().map(|s| names.simplex(s)).collect::<Vec<_>>()})
        }
        Document::Presheaf(f) => {
            let dom = &f.domain;
            let objects = &dom.category.objects;
            let values: Map<String, Value> = f.values.iter().enumerate().map(|(o, v)| (objects[o].clone(), sset_value(v))).collect();
            let restrictions: Vec<Value> = dom
                .arrows
                .iter()
                .zip(&f.restrictions)
                .map(|((u, s, t), r)| {
                    json!({"source": objects[*s], "target": objects[*t], "u": u.values().collect::<Vec<_>>(), "images": images_value(r)})
                })
                .collect();
            json!({"base": sset_value(&dom.base), "variant": variant_name(dom.variant), "values": values, "restrictions": restrictions})
        }
        Document::Category(c) => {
            let arrows: Vec<Value> = c.arrows.iter().map(|a| json!({"name": a.name, "source": c.objects[a.source], "target": c.objects[a.target]})).collect();
            let word = |w: &[usize]| w.iter().map(|&a| c.arrows[a].name.clone()).collect::<Vec<_>>();
            let relations: Vec<Value> = c
                .relations
                .iter()
                .map(|r| json!({"source": c.objects[r.source], "target": c.objects[r.target], "lhs": word(&r.lhs), "rhs": word(&r.rhs)}))
                .collect();
            json!({"objects": c.objects, "arrows": arrows, "relations": relations, "word_budget": c.word_budget})
        }
    }
}

fn variant_name(v: Variant) -> String {
    match v {
        Variant::Nondegenerate => "nondegenerate".into(),
        Variant::TruncatedFull(d) => format!("full:{d}"),
    }
}

fn bisset_value(x: &BisimplicialSet) -> Value {
    let mm = x.h_top();
    let columns: Vec<Value> = x.columns().iter().map(|c| sset_value(c)).collect();
    let hface: Vec<Vec<Value>> = (0..=mm).map(|m| if m == 0 { vec![] } else { (0..=m).map(|i| images_value(x.hface(m, i))).collect() }).collect();
    let hdegen: Vec<Vec<Value>> = (0..=mm).map(|m| if m == mm { vec![] } else { (0..=m).map(|i| images_value(x.hdegen(m, i))).collect() }).collect();
    json!({"columns": columns, "hface": hface, "hdegen": hdegen, "h_generated": x.h_generated()})
}

/// Canonical text of a document, ending in a newline.
pub fn serialize(doc: &Document) -> String {
    let mut v = body(doc);
    let obj = v.as_object_mut().expect("bodies are objects");
    obj.insert("format".into(), json!("ssx"));
    obj.insert("version".into(), json!(VERSION));
    obj.insert("kind".into(), json!(doc.kind()));
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse(bytes: &[u8]) -> Result<Document> {
    let v: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let r = Reader;
    let format = r.str(&v, "format", "")?;
    if format != "ssx" {
        return Err(field_err("format", format!("expected \"ssx\", found {format:?}")));
    }
    let version = r.field(&v, "version", "")?.as_u64().ok_or_else(|| field_err("version", "expected an integer"))?;
    if version != VERSION {
        return Err(field_err("version", format!("unsupported version {version}")));
    }
    match r.str(&v, "kind", "")? {
        "sset" => Ok(Document::SSet(Arc::new(r.sset(&v, "")?.0))),
        "smap" => Ok(Document::SMap(r.smap(&v, "")?)),
        "bisset" => Ok(Document::BisSet(Arc::new(r.bisset(&v, "")?.0))),
        "bismap" => {
            let (src, src_names) = r.bisset(r.field(&v, "source", "")?, "source")?;
            let (tgt, tgt_names) = r.bisset(r.field(&v, "target", "")?, "target")?;
            let (src, tgt) = (Arc::new(src), Arc::new(tgt));
            let comps = r.array(&v, "components", "")?;
            let maps = comps
                .iter()
                .enumerate()
                .map(|(m, c)| {
                    let path = format!("components[{m}]");
                    let (sc, tc) = (src.columns().get(m), tgt.columns().get(m));
                    match (sc, tc) {
                        (Some(sc), Some(tc)) => r.images(c, &path, sc, &src_names[m], tc, &tgt_names[m]),
                        _ => Err(field_err(&path, "no such column")),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Document::BisMap(BisimplicialMap::new(src, tgt, maps)?))
        }
        "marked" => {
            let (x, names) = r.sset(r.field(&v, "carrier", "")?, "carrier")?;
            let x = Arc::new(x);
            let marks = r
                .array(&v, "marks", "")?
                .iter()
                .enumerate()
                .map(|(i, m)| r.simplex(m, &format!("marks[{i}]"), &x, &names))
                .collect::<Result<Vec<_>>>()?;
            Ok(Document::Marked(MarkedSSet::new(x, marks)?))
        }
        "presheaf-bundle" => Ok(Document::Presheaf(r.presheaf(&v)?)),
        "category" => Ok(Document::Category(r.category(&v)?)),
        other => Err(field_err("kind", format!("unknown kind {other:?}"))),
    }
}

pub fn parse_str(s: &str) -> Result<Document> {
    parse(s.as_bytes())
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

struct Reader;

impl Reader {
    fn field<'a>(&self, v: &'a Value, key: &str, prefix: &str) -> Result<&'a Value> {
        v.get(key).ok_or_else(|| field_err(&join(prefix, key), "missing"))
    }

    fn str<'a>(&self, v: &'a Value, key: &str, prefix: &str) -> Result<&'a str> {
        self.field(v, key, prefix)?.as_str().ok_or_else(|| field_err(&join(prefix, key), "expected a string"))
    }

    fn array<'a>(&self, v: &'a Value, key: &str, prefix: &str) -> Result<&'a Vec<Value>> {
        self.field(v, key, prefix)?.as_array().ok_or_else(|| field_err(&join(prefix, key), "expected an array"))
    }

    fn usize_of(&self, v: &Value, path: &str) -> Result<usize> {
        v.as_u64().map(|n| n as usize).ok_or_else(|| field_err(path, "expected a non-negative integer"))
    }

    fn opt_usize(&self, v: &Value, key: &str, prefix: &str) -> Result<Option<usize>> {
        match v.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(n) => self.usize_of(n, &join(prefix, key)).map(Some),
        }
    }

    fn simplex(&self, v: &Value, path: &str, x: &SimplicialSet, names: &HashMap<String, GenId>) -> Result<SimplexRef> {
        let lookup = |name: &str| names.get(name).copied().ok_or_else(|| field_err(path, format!("unknown generator {name:?}")));
        match v {
            Value::String(name) => {
                let g = lookup(name)?;
                Ok(x.simplex(g))
            }
            Value::Object(_) => {
                let g = lookup(self.str(v, "gen", path)?)?;
                let deg: Vec<usize> =
                    self.array(v, "deg", path)?.iter().map(|d| self.usize_of(d, &join(path, "deg"))).collect::<Result<_>>()?;
                if deg.is_empty() {
                    return Err(field_err(&join(path, "deg"), "empty degeneracy"));
                }
                let deg = MonotoneMap::new(x.generator(g).dim, deg).map_err(|e| field_err(&join(path, "deg"), e.to_string()))?;
                if !deg.is_surjective() {
                    return Err(field_err(&join(path, "deg"), "not a surjection onto the generator"));
                }
                Ok(SimplexRef { gen: g, deg })
            }
            _ => Err(field_err(path, "expected a generator name or {gen, deg}")),
        }
    }

    fn sset(&self, v: &Value, prefix: &str) -> Result<(SimplicialSet, HashMap<String, GenId>)> {
        let truncation = self.opt_usize(v, "truncation", prefix)?;
        let gens = self.array(v, "generators", prefix)?;
        let mut entries: Vec<(usize, usize, &str, &Vec<Value>)> = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            let path = format!("{}[{i}]", join(prefix, "generators"));
            let id = self.str(g, "id", &path)?;
            let dim = self.usize_of(self.field(g, "dim", &path)?, &join(&path, "dim"))?;
            let faces = self.array(g, "faces", &path)?;
            entries.push((dim, i, id, faces));
        }
        entries.sort_by_key(|&(dim, i, _, _)| (dim, i));
        let mut x = SimplicialSet::with_truncation(truncation);
        let mut names: HashMap<String, GenId> = HashMap::new();
        for (dim, _, id, faces) in entries {
            if names.contains_key(id) {
                return Err(Error::Load { generator: id.to_string(), index: None, message: "duplicate generator id".into() });
            }
            let faces = faces
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    self.simplex(f, "", &x, &names).map_err(|e| Error::Load {
                        generator: id.to_string(),
                        index: Some(k),
                        message: match e {
                            Error::Field { message, .. } => message,
                            other => other.to_string(),
                        },
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let g = x.add_generator(id, dim, faces)?;
            names.insert(id.to_string(), g);
        }
        Ok((x, names))
    }

    fn images(
        &self,
        v: &Value,
        path: &str,
        source: &Arc<SimplicialSet>,
        src_names: &HashMap<String, GenId>,
        target: &Arc<SimplicialSet>,
        tgt_names: &HashMap<String, GenId>,
    ) -> Result<SimplicialMap> {
        let obj = v.as_object().ok_or_else(|| field_err(path, "expected an object of images"))?;
        let mut images: Vec<Option<SimplexRef>> = vec![None; source.num_generators()];
        for (name, img) in obj {
            let g = src_names.get(name).ok_or_else(|| field_err(path, format!("unknown source generator {name:?}")))?;
            images[g.index()] = Some(self.simplex(img, &format!("{path}.{name}"), target, tgt_names)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| field_err(path, format!("no image for generator {:?}", source.name(GenId(i as u32))))))
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(source.clone(), target.clone(), images)
    }

    fn smap(&self, v: &Value, prefix: &str) -> Result<SimplicialMap> {
        let (src, sn) = self.sset(self.field(v, "source", prefix)?, &join(prefix, "source"))?;
        let (tgt, tn) = self.sset(self.field(v, "target", prefix)?, &join(prefix, "target"))?;
        self.images(self.field(v, "images", prefix)?, &join(prefix, "images"), &Arc::new(src), &sn, &Arc::new(tgt), &tn)
    }

    #[allow(clippy::type_complexity)]
    fn bisset(&self, v: &Value, prefix: &str) -> Result<(BisimplicialSet, Vec<HashMap<String, GenId>>)> {
        let mut columns = Vec::new();
        let mut names = Vec::new();
        for (m, c) in self.array(v, "columns", prefix)?.iter().enumerate() {
            let (x, n) = self.sset(c, &format!("{}[{m}]", join(prefix, "columns")))?;
            columns.push(Arc::new(x));
            names.push(n);
        }
        let maps = |key: &str, shift: isize| -> Result<Vec<Vec<SimplicialMap>>> {
            let outer = self.array(v, key, prefix)?;
            if outer.len() != columns.len() {
                return Err(field_err(&join(prefix, key), "one list per column is required"));
            }
            outer
                .iter()
                .enumerate()
                .map(|(m, list)| {
                    let path = format!("{}[{m}]", join(prefix, key));
                    let list = list.as_array().ok_or_else(|| field_err(&path, "expected an array"))?;
                    let t = m as isize + shift;
                    if !list.is_empty() && (t < 0 || t as usize >= columns.len()) {
                        return Err(field_err(&path, "maps to a column that does not exist"));
                    }
                    list.iter()
                        .enumerate()
                        .map(|(i, img)| {
                            let t = t as usize;
                            self.images(img, &format!("{path}[{i}]"), &columns[m], &names[m], &columns[t], &names[t])
                        })
                        .collect()
                })
                .collect()
        };
        let hface = maps("hface", -1)?;
        let hdegen = maps("hdegen", 1)?;
        let h_generated = self.opt_usize(v, "h_generated", prefix)?;
        Ok((BisimplicialSet::from_parts(columns, hface, hdegen, h_generated)?, names))
    }

    fn presheaf(&self, v: &Value) -> Result<SimplicialPresheaf> {
        let (base, _) = self.sset(self.field(v, "base", "")?, "base")?;
        let base = Arc::new(base);
        let vname = self.str(v, "variant", "")?;
        let variant = Variant::parse(vname).ok_or_else(|| field_err("variant", format!("unknown variant {vname:?}")))?;
        let dom = Arc::new(simplex_category(&base, variant)?);
        let objects = &dom.category.objects;
        let values_obj = self.field(v, "values", "")?.as_object().ok_or_else(|| field_err("values", "expected an object"))?;
        let mut values = Vec::new();
        let mut names = Vec::new();
        for o in objects {
            let path = format!("values.{o}");
            let value = values_obj.get(o).ok_or_else(|| field_err(&path, "missing value for this object"))?;
            let (x, n) = self.sset(value, &path)?;
            values.push(Arc::new(x));
            names.push(n);
        }
        let position: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mut restrictions: BTreeMap<usize, SimplicialMap> = BTreeMap::new();
        for (k, r) in self.array(v, "restrictions", "")?.iter().enumerate() {
            let path = format!("restrictions[{k}]");
            let obj = |key: &str| -> Result<usize> {
                let name = self.str(r, key, &path)?;
                position.get(name).copied().ok_or_else(|| field_err(&join(&path, key), format!("unknown object {name:?}")))
            };
            let (s, t) = (obj("source")?, obj("target")?);
            let u: Vec<usize> = self.array(r, "u", &path)?.iter().map(|x| self.usize_of(x, &join(&path, "u"))).collect::<Result<_>>()?;
            let u = MonotoneMap::new(dom.object(t).dim(), u).map_err(|e| field_err(&join(&path, "u"), e.to_string()))?;
            let m = dom.arrow(&u, t).filter(|&m| dom.arrows[m].1 == s).ok_or_else(|| field_err(&path, "not a morphism of the simplex category"))?;
            let map = self.images(self.field(r, "images", &path)?, &join(&path, "images"), &values[t], &names[t], &values[s], &names[s])?;
            restrictions.insert(m, map);
        }
        let restrictions = (0..dom.arrows.len())
            .map(|m| restrictions.remove(&m).ok_or_else(|| field_err("restrictions", format!("missing restriction along {}", dom.category.morphisms[m].name))))
            .collect::<Result<Vec<_>>>()?;
        SimplicialPresheaf::new(dom, values, restrictions)
    }

    fn category(&self, v: &Value) -> Result<CategoryPresentation> {
        let objects: Vec<String> = self
            .array(v, "objects", "")?
            .iter()
            .enumerate()
            .map(|(i, o)| o.as_str().map(String::from).ok_or_else(|| field_err(&format!("objects[{i}]"), "expected a string")))
            .collect::<Result<_>>()?;
        let mut p = CategoryPresentation::new(objects.clone());
        if let Some(b) = v.get("word_budget") {
            p.word_budget = self.usize_of(b, "word_budget")?;
        }
        let obj_of = |name: &str, path: &str| objects.iter().position(|o| o == name).ok_or_else(|| field_err(path, format!("unknown object {name:?}")));
        for (i, a) in self.array(v, "arrows", "")?.iter().enumerate() {
            let path = format!("arrows[{i}]");
            let s = obj_of(self.str(a, "source", &path)?, &join(&path, "source"))?;
            let t = obj_of(self.str(a, "target", &path)?, &join(&path, "target"))?;
            p.add_arrow(self.str(a, "name", &path)?, s, t);
        }
        let arrow_of = |name: &str, path: &str| p.arrows.iter().position(|a| a.name == name).ok_or_else(|| field_err(path, format!("unknown arrow {name:?}")));
        let mut relations = Vec::new();
        for (i, r) in self.array(v, "relations", "")?.iter().enumerate() {
            let path = format!("relations[{i}]");
            let s = obj_of(self.str(r, "source", &path)?, &join(&path, "source"))?;
            let t = obj_of(self.str(r, "target", &path)?, &join(&path, "target"))?;
            let word = |key: &str| -> Result<Vec<usize>> {
                self.array(r, key, &path)?
                    .iter()
                    .map(|a| a.as_str().ok_or_else(|| field_err(&join(&path, key), "expected arrow names")).and_then(|n| arrow_of(n, &join(&path, key))))
                    .collect()
            };
            relations.push((s, t, word("lhs")?, word("rhs")?));
        }
        for (s, t, lhs, rhs) in relations {
            p.add_relation(s, t, lhs, rhs)?;
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisimplicial::box_product;
    use crate::localization::representable;
    use crate::sset::standard::{boundary, horn, simplex};
    use crate::sset::{find_isomorphism, slice, SliceSide};

    fn round_trip(doc: &Document) -> Document {
        let text = serialize(doc);
        let back = parse_str(&text).unwrap();
        assert_eq!(serialize(&back), text, "re-serialization is byte-stable");
        back
    }

    #[test]
    fn sset_round_trip() {
        let d2 = Arc::new(simplex(2));
        match round_trip(&Document::SSet(d2.clone())) {
            Document::SSet(x) => assert!(find_isomorphism(&x, &d2).unwrap().is_some()),
            _ => panic!("kind changed"),
        }
        let (b, _) = boundary(2).unwrap();
        match round_trip(&Document::SSet(b)) {
            Document::SSet(x) => assert_eq!(x.counts(), vec![3, 3]),
            _ => panic!("kind changed"),
        }
    }

    #[test]
    fn degenerate_faces_and_duplicate_names_survive() {
        // a 2-simplex with a degenerate face, and two vertices sharing a name
        let mut x = SimplicialSet::empty();
        let a = x.add_generator("v", 0, vec![]).unwrap();
        let b = x.add_generator("v", 0, vec![]).unwrap();
        let e = x.add_generator("e", 1, vec![x.simplex(b), x.simplex(a)]).unwrap();
        let _ = x.add_generator("t", 2, vec![x.simplex(b).degenerate(0), x.simplex(e), x.simplex(e)]).unwrap();
        let x = Arc::new(x);
        match round_trip(&Document::SSet(x.clone())) {
            Document::SSet(y) => assert!(find_isomorphism(&y, &x).unwrap().is_some()),
            _ => panic!("kind changed"),
        }
    }

    #[test]
    fn map_marked_and_category_round_trip() {
        let d2 = Arc::new(simplex(2));
        let s = slice(&d2, GenId(0), SliceSide::Under).unwrap();
        round_trip(&Document::SMap(s.projection.clone()));
        assert!(MarkedSSet::new(d2.clone(), vec![d2.simplex(d2.generators_of_dim(1)[0]).degenerate(1)]).is_err());
        let m = MarkedSSet::new(d2.clone(), vec![d2.simplex(d2.generators_of_dim(1)[0])]).unwrap();
        round_trip(&Document::Marked(m));
        let mut c = CategoryPresentation::new(vec!["a".into(), "b".into()]);
        let f = c.add_arrow("f", 0, 1);
        let g = c.add_arrow("g", 1, 0);
        c.add_relation(0, 0, vec![f, g], vec![]).unwrap();
        match round_trip(&Document::Category(c.clone())) {
            Document::Category(d) => assert_eq!(d, c),
            _ => panic!("kind changed"),
        }
    }

    #[test]
    fn bisimplicial_and_presheaf_round_trip() {
        let d1 = Arc::new(simplex(1));
        let (h, _) = horn(2, 0).unwrap();
        let b = box_product(&d1, &h).unwrap();
        match round_trip(&Document::BisSet(b.set.clone())) {
            Document::BisSet(y) => assert_eq!(y.h_top(), b.set.h_top()),
            _ => panic!("kind changed"),
        }
        let id = crate::bisimplicial::BisimplicialMap::identity(b.set.clone());
        round_trip(&Document::BisMap(id));
        let c = Arc::new(simplex_category(&d1, Variant::Nondegenerate).unwrap());
        round_trip(&Document::Presheaf(representable(&c, 2).unwrap()));
    }

    #[test]
    fn load_errors_name_the_generator() {
        let text = r#"{"format":"ssx","version":1,"kind":"sset","truncation":null,
            "generators":[{"id":"a","dim":0,"faces":[]},{"id":"e","dim":1,"faces":["a","zz"]}]}"#;
        match parse_str(text) {
            Err(Error::Load { generator, index, .. }) => assert_eq!((generator.as_str(), index), ("e", Some(1))),
            other => panic!("{other:?}"),
        }
        match parse_str("{\"format\": \"ssx\",\n \"version\": 1,\n oops}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let text = r#"{"format":"ssx","version":1,"kind":"sset","generators":[{"id":"a","faces":[]}]}"#;
        match parse_str(text) {
            Err(Error::Field { path, .. }) => assert_eq!(path, "generators[0].dim"),
            other => panic!("{other:?}"),
        }
        // a face violating the simplicial identities
        let text = r#"{"format":"ssx","version":1,"kind":"sset","generators":[
            {"id":"a","dim":0,"faces":[]},{"id":"b","dim":0,"faces":[]},
            {"id":"e","dim":1,"faces":["b","a"]},
            {"id":"t","dim":2,"faces":["e","e","e"]}]}"#;
        assert!(matches!(parse_str(text), Err(Error::Load { .. })));
    }
}
