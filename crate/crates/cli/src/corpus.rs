use serde_json::{json, Value};

use bfacet::classifier::{classify_facet, detect_exotic_subtype, ExoticSubtype, FacetTag, CROSS_POLYTOPE};
use bfacet::predicates::{is_b_facet, is_b_simplex};
use bfacet::{Error, PointConfig};

struct Entry {
    name: &'static str,
    origin: &'static str,
    points: &'static [[i64; 4]],
    tag: FacetTag,
    b_facet: bool,
    subtype: ExoticSubtype,
    simplices: Option<usize>,
}

const ENTRIES: &[Entry] = &[
    Entry {
        name: "flat border that is not a B-facet",
        origin: "reference",
        points: &[[0, 0, 0, 5], [0, 0, 1, 4], [1, 1, 0, 3], [1, 0, 2, 2], [0, 1, 2, 2]],
        tag: FacetTag::FlatBorder,
        b_facet: false,
        subtype: ExoticSubtype::None,
        simplices: None,
    },
    Entry {
        name: "standard cross-polytope",
        origin: "reference",
        points: &CROSS_POLYTOPE,
        tag: FacetTag::CrossPolytope,
        b_facet: true,
        subtype: ExoticSubtype::None,
        simplices: Some(12),
    },
    Entry {
        name: "flat B-border pyramid, a = 2",
        origin: "derived by template search",
        points: &[[0, 0, 0, 3], [0, 0, 2, 1], [2, 0, 0, 1], [0, 1, 1, 1], [1, 1, 0, 1]],
        tag: FacetTag::FlatBorder,
        b_facet: true,
        subtype: ExoticSubtype::Pyramid,
        simplices: None,
    },
    Entry {
        name: "flat B-border circuit",
        origin: "derived by template search",
        points: &[[0, 0, 0, 2], [1, 1, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 0, 2, 0]],
        tag: FacetTag::FlatBorder,
        b_facet: true,
        subtype: ExoticSubtype::Circuit,
        simplices: None,
    },
];

/// Re-checks every corpus entry; returns the report and whether all held.
pub fn verify() -> Result<(Value, bool), Error> {
    let mut all_ok = true;
    let mut entries = Vec::new();
    for e in ENTRIES {
        let config = PointConfig::from_coords(e.points)?;
        let class = classify_facet(&config)?;
        let verdict = is_b_facet(&config)?;
        let subtype = detect_exotic_subtype(&config);
        let counterexample_fails = verdict.counterexample.as_ref().is_none_or(|s| is_b_simplex(s).is_none());
        let ok = class.tag() == e.tag
            && verdict.holds == e.b_facet
            && subtype == e.subtype
            && counterexample_fails
            && e.simplices.is_none_or(|n| n == verdict.simplices_checked);
        all_ok &= ok;
        let h = config.positive_hyperplane().expect("corpus entries lie on positive hyperplanes");
        entries.push(json!({
            "name": e.name,
            "origin": e.origin,
            "points": config,
            "hyperplane": { "covector": h.covector(), "offset": h.offset() },
            "expected": { "class": e.tag.name(), "b_facet": e.b_facet, "subtype": e.subtype },
            "class": class,
            "b_facet": verdict.holds,
            "simplices_checked": verdict.simplices_checked,
            "counterexample": verdict.counterexample.as_ref().map(|s| s.vertices().to_vec()),
            "subtype": subtype,
            "verified": ok,
        }));
    }
    Ok((json!({ "command": "examples", "entries": entries, "all_verified": all_ok }), all_ok))
}
