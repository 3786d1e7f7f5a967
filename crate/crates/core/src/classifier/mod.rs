//! Pattern classification of 4-dimensional facets, planar B-polytopes and
//! marked B-polygons.

mod facet;
mod planar;

pub use facet::{
    classify_facet, classify_facet_with, detect_exotic_subtype, is_broken_pyramid, match_b1, match_b2,
    match_cross_polytope, match_flat_border, permutations, B1Witness, B2Witness, ExoticSubtype, FacetClass, FacetTag,
    FlatBorderWitness, CROSS_POLYTOPE,
};
pub use planar::{
    canonical_map_2d, classify_b_polytope_2d, classify_marked_polygon, unimodular_canonical_form_2d,
    MarkedPolygonClass, PolytopeClass2D, UnimodularMap2,
};
