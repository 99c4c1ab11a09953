//! Exact arithmetic in the square-free edge algebra of a loopless
//! multigraph and its tree quotient: distinguished vertex generators,
//! graded and filtered Hilbert series, defining-relation checks, graph
//! reconstruction from generator data, and small-graph search for
//! series-separated pairs.

pub mod enumeration;
pub mod error;
pub mod generators;
pub mod hilbert;
pub mod invariants;
pub mod multigraph;
pub mod relations;
pub mod search;
pub mod squarefree;

pub use error::{GalgError, Result};
pub use multigraph::{
    are_isomorphic, EdgeSet, Multigraph, TuttePolynomial, VertexSet, DEFAULT_ENUMERATION_BOUND,
    DEFAULT_ISOMORPHISM_BOUND, MAX_EDGES, MAX_VERTICES,
};
pub use squarefree::{Algebra, AlgebraElement, Ambient, Rational};
pub use generators::{coeff_c, gen_f, gen_x, gen_y, gen_y_tilde, UniPoly};
pub use hilbert::{
    filtered_scan, filtered_series, generic_series, graded_series, majorize, sample_generic_poly,
    FilteredScan, GenericSeries, HilbertSeries, Majorization, SpanBasis,
};
pub use relations::{
    check_p_relations, check_q_relations, check_tree_relations, RelationEntry, RelationReport,
    TreeRelationReport, DEFAULT_SUBSET_BOUND,
};
pub use invariants::{degree_d, incident_edge_count, multiplicity, reconstruct};
pub use enumeration::{canonical_key, canonical_multigraphs};
pub use search::{
    search, PairReport, SearchMode, SearchOptions, SearchReport, DEFAULT_SEARCH_EDGE_BOUND,
    DEFAULT_SEARCH_VERTEX_BOUND,
};
