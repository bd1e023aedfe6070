//! Finite projective planes over `F_q`, point–line bijections with the
//! two incidence properties, and the triangle and polygon complexes built
//! from them.

pub mod complex;
mod digest;
pub mod gf;
pub mod plane;
pub mod pointline;
pub mod presentation;
mod text;
pub mod triples;

pub use complex::{analyze, assemble, classify_curvature, ComplexReport, Curvature, Polyhedron};
pub use gf::{make_tower, tower_for_order, FieldElement, FieldTower, GfError, TowerExt};
pub use plane::{build_pg2, validate_plane, Plane, PlaneError, PlaneReport};
pub use pointline::{
    search_bijection, trace_bijection, verify_properties, Certification, PointLineBijection,
    PointLineError, SearchConfig, SearchOutcome,
};
pub use presentation::{
    build_euclidean, build_hyperbolic, validate_word, verify_presentation, Presentation, Word,
};
pub use text::ParseError;
pub use triples::{enumerate_triples, verify_crucial_lemma, TripleSet};

/// Short content hash of a text, as embedded in derived files.
pub fn text_hash(text: &str) -> String {
    digest::short_hash([text.as_bytes()])
}

/// Version of the plain-text file formats.
pub const FORMAT_VERSION: u32 = 1;
