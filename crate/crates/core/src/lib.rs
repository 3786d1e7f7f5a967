//! Exact lattice geometry for B-facets of Newton polyhedra.
//!
//! The crate decides the B-facet, B-polytope and marked B-polytope
//! properties of finite lattice point configurations, classifies B-facets
//! of 4-dimensional polyhedra, and verifies the classification and its
//! supporting lemmas by exhaustive census at bounded scale.

pub mod census;
pub mod classifier;
mod comb;
pub mod config;
pub mod error;
pub mod faces;
pub mod format;
pub mod lattice;
pub mod linalg;
pub mod predicates;
pub mod reductions;

pub use config::PointConfig;
pub use error::{Error, Result};
pub use faces::{enumerate_faces, facets_of, internal_v_faces, is_v_face, Face};
pub use lattice::{
    affine_dim, hyperplane_through, lattice_height, lattice_length, positive_hyperplane_of, primitive,
    span_contains_origin, AffineSpan, Hyperplane, LatticePoint, LatticeVector,
};
pub use predicates::{
    is_b_face, is_b_facet, is_b_polytope, is_b_segment, is_b_simplex, is_marked_b_polytope, is_marked_b_simplex,
    BWitness, MarkedPolytope, Simplex, Verdict,
};
