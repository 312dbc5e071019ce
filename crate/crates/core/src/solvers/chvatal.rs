use crate::digraph::Digraph;
use crate::vertex_set::{VertexId, VertexSet};

/// Quasi-kernel by the classical recursion: take the lowest vertex `v`,
/// solve the subgraph induced by `V - ({v} ∪ out(v))`, and add `v` unless
/// the returned set already has an arc into `v`.
///
/// Runs on vertex sets of the original graph, which is equivalent to
/// recursing on relabelled induced subgraphs.
pub fn chvatal_quasi_kernel(g: &Digraph) -> VertexSet {
    // peel the chosen vertices top-down, then resolve bottom-up
    let mut chosen: Vec<VertexId> = Vec::new();
    let mut remaining = g.vertices();
    while let Some(v) = remaining.first() {
        chosen.push(v);
        remaining.remove(v);
        remaining.difference_with(g.out(v));
    }
    let mut q = VertexSet::new(g.n());
    for &v in chosen.iter().rev() {
        if q.is_disjoint(g.inn(v)) {
            q.insert(v);
        }
    }
    q
}
