//! Sectionable tournaments: construction, acyclic-subset complexes, discrete
//! Morse cell structures via pivot matchings, closed-form depth/dimension
//! recursions, integral homology, and acyclic colorings with a chromatic
//! bound.
//!
//! The crate is organised bottom-up:
//!
//! * [`tournament`] — tournaments, highly regular quotients, compositions,
//!   and the recursive [`SectionableSpec`] description with canonical
//!   labelling.
//! * [`complex`] — the simplicial complex of acyclic vertex sets, face
//!   enumeration, circuits, and the `sigma`/generated-family combinatorics.
//! * [`morse`] — pivot matchings on face families, critical-cell extraction,
//!   and the closed-form cell-structure recursions that they realise.
//! * [`structure`] — depth/dimension/width formulas on specs, normalization,
//!   and deep-triangle bookkeeping.
//! * [`homology`] — exact reduced Betti numbers of face families over the
//!   rationals, and the consistency report against critical-cell counts.
//! * [`coloring`] — acyclic colorings of sectionable tournaments, the exact
//!   dichromatic number by search, and the chromatic upper bound.
//! * [`corpus`] — seeded random spec generation for batch testing.

pub mod coloring;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod homology;
pub mod morse;
pub mod structure;
pub mod tournament;

#[cfg(test)]
pub(crate) mod testutil;

pub use coloring::{
    ceil_identity, constructive_coloring, chromatic_bound, chromatic_exact, chromatic_exact_with_limit,
    color_equal_blocks, color_unequal_blocks, funct_max_check, root_arity, validate_coloring,
    verify_bound, verify_bound_with_limit,
    BoundReport, Coloring, FunctMaxCheck, BOUND_EVAL_TOLERANCE, DEFAULT_COLOR_SEARCH_LIMIT,
    FUNCT_MAX_SLACK,
};
pub use complex::{
    acyclic_complex, acyclic_complex_with_limit, canonical_face_cmp, circuits, contract_edge,
    face_to_braces, generated_family, generated_family_parts, sigma, sigma_within, Dimension,
    Face, FaceFamily, DEFAULT_ENUMERATION_LIMIT, MAX_GROUND_VERTICES,
};
pub use corpus::{generate_corpus, DEFAULT_CORPUS_MAX_N};
pub use error::{Error, Result};
pub use homology::{
    betti_numbers, betti_numbers_with_limit, morse_consistency, ChainComplexSummary,
    MorseHomologyReport, MAX_HOMOLOGY_FACES,
};
pub use morse::{
    canonical_pivots, critical_cells_of_spec, cs_recursive, cs_sigma, cyclic_pairs, dot_join,
    equivalent, pivot_obstructions, pivot_step, run_pivots, split_by_deep_triangle,
    verify_acyclic, CellHistogram, CriticalCells, MatchedPair, MorseMatching,
};
pub use structure::{
    deep_triangles, depth_eq_dim, depth_formula, dim_formula, is_elementary, normalize,
    structure_report, width, DepthDimReport, StructureReport,
};
pub use tournament::{
    compose, highly_regular, mask_to_vertices, realize, replace_block, resolve_block,
    transitive_tournament, vertices_to_mask, BlockSequence, SectionableSpec, Tournament, Vertex,
    MAX_TOURNAMENT_VERTICES,
};
