//! Regenerates the SSX fixtures: `cargo run -p simploc --example make_fixtures -- fixtures`.

use std::path::PathBuf;
use std::sync::Arc;

use simploc::bisimplicial::d_star;
use simploc::localization::MarkedSSet;
use simploc::sset::category::CategoryPresentation;
use simploc::sset::standard::{boundary, horn, simplex};
use simploc::sset::{slice, GenId, SimplicialMap, SliceSide};
use simploc::ssx::{serialize, Document};

fn main() -> simploc::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir).map_err(|e| simploc::Error::Invalid(e.to_string()))?;
    let d0 = Arc::new(simplex(0));
    let d1 = Arc::new(simplex(1));
    let d2 = Arc::new(simplex(2));
    let mut docs: Vec<(&str, Document)> = vec![
        ("simplex2.ssx", Document::SSet(d2.clone())),
        ("boundary2.ssx", Document::SSet(boundary(2)?.0)),
        ("horn0_2.ssx", Document::SMap(horn(2, 0)?.1)),
        ("horn1_2.ssx", Document::SMap(horn(2, 1)?.1)),
        ("slice_projection.ssx", Document::SMap(slice(&d2, GenId(1), SliceSide::Under)?.projection)),
        ("id_edge.ssx", Document::SMap(SimplicialMap::identity(d1.clone()))),
        ("vertex0_in_edge.ssx", Document::SMap(SimplicialMap::constant(d0.clone(), d1.clone(), GenId(0)))),
        ("vertex1_in_edge.ssx", Document::SMap(SimplicialMap::constant(d0.clone(), d1.clone(), GenId(1)))),
        ("marked_edge.ssx", Document::Marked(MarkedSSet::new(d1.clone(), vec![d1.simplex(GenId(2))])?)),
        ("dstar_edge.ssx", Document::BisMap(d_star(&SimplicialMap::identity(d1.clone()), 3)?.to_base)),
    ];
    let mut iso = CategoryPresentation::new(vec!["a".into(), "b".into()]);
    let f = iso.add_arrow("f", 0, 1);
    let g = iso.add_arrow("g", 1, 0);
    iso.add_relation(0, 0, vec![f, g], vec![])?;
    iso.add_relation(1, 1, vec![g, f], vec![])?;
    docs.push(("free_isomorphism.ssx", Document::Category(iso)));
    for (name, doc) in docs {
        std::fs::write(dir.join(name), serialize(&doc)).map_err(|e| simploc::Error::Invalid(e.to_string()))?;
    }
    Ok(())
}
