//! Kernels and quasi-kernels of finite digraphs.
//!
//! Provides the digraph value type with its text formats and generators,
//! the domination predicates (kernels, quasi-kernels, inward domination,
//! external private out-neighbors), brute-force oracles, a recursive
//! quasi-kernel construction, a certified procedure that shrinks a kernel of
//! a source-free digraph into a quasi-kernel on at most half the vertices,
//! and an exhaustive/randomized explorer that checks all of these on small
//! digraphs.

pub mod cycles;
pub mod digraph;
pub mod domination;
pub mod error;
pub mod explorer;
pub mod fixtures;
pub mod generate;
pub mod io;
pub mod solvers;
pub mod vertex_set;

pub use cycles::{has_odd_directed_cycle, strongly_connected_components};
pub use digraph::{enumerate_all, Digraph, Direction, GraphEncoding};
pub use domination::{
    epon_injection, epons, is_independent, is_inward_dominated, is_kernel, is_quasi_kernel,
    non_epon_members, EponWitnessMap, Injection, Violation,
};
pub use error::GraphError;
pub use generate::{generate, GeneratorKind, SplitMix64};
pub use io::{parse_edge_list, serialize_edge_list, to_dot};
pub use solvers::{
    chvatal_quasi_kernel, enumerate_kernels, find_kernel, min_quasi_kernel, shrink_kernel,
    verify_certificate, ShrinkCertificate, ShrinkError, ShrinkOptions, SolveLimits,
};
pub use vertex_set::{VertexId, VertexSet};
