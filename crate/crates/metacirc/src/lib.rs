//! Metacirculant graphs and the self-dual additive GF(4) codes they
//! generate.
//!
//! A metacirculant spec (m, n, alpha, S_0..S_(m/2)) describes a vertex set
//! Z_m x Z_n with adjacency twisted layer to layer by powers of alpha.
//! Every finite simple graph yields an additive code over GF(4) spanned by
//! the rows of A + wI, and that code is always self-dual under the
//! trace-Hermitian form, so each graph on l vertices stands for an
//! [[l, 0, d]] qubit stabilizer state. This crate covers the full round
//! trip: spec validation, graph construction, code analysis (weight
//! distributions, minimum distances, Type I/II), graph invariants,
//! parameter propagation through secondary constructions, and seeded or
//! exhaustive searches over spec space.
//!
//! Weight distributions and distances come from a bit-packed Gray-code
//! sweep over all 2^l codewords: one XOR and one popcount per codeword,
//! partitioned over threads by fixed selection prefixes so results are
//! identical for any worker count. Full sweeps are guarded by an explicit
//! length budget (default 40) because costs double per vertex.

pub mod bits;
pub mod code;
mod error;
pub mod gf4;
pub mod graph;
pub mod invariants;
pub mod quantum;
pub mod search;

pub use code::{
    classify_type, code_from_graph, is_symplectic_self_dual, low_support_min_weight, min_distance,
    weight_distribution, AdditiveCode, DistanceOutcome, SweepBudget, TypeClass, TypeReport,
    WeightDistribution,
};
pub use error::Error;
pub use gf4::{gf4_mul, symplectic_form, trace_hermitian, F4Vector, GF4};
pub use graph::{
    build_circulant, build_graph, build_graph_override, circulant_isomorphism_guaranteed,
    is_multipartite, valence, validate_spec, BitGraph, MetacirculantSpec, Violation,
};
pub use invariants::{
    automorphism_order, clique_number, diameter, girth, graph_invariants, AutMode, AutOutcome,
    Diameter, Girth, GraphInvariants,
};
pub use quantum::{derive_q78_family, from_self_dual_code, propagate, QuantumParams, Rule};
pub use search::{
    class_by_enumerator, enumerate_specs, evaluate_spec, exhaustive_range, exhaustive_search,
    random_search, units, EnumeratorClass, SearchHit, SearchMode, SearchTask, SpecEnumerator,
};
