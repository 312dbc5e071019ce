//! Small named digraphs used throughout the docs and tests.

use crate::digraph::Digraph;

/// Directed 2-cycle `0 <-> 1`.
pub fn c2() -> Digraph {
    Digraph::build(2, [(0, 1), (1, 0)]).unwrap()
}

/// Directed 3-cycle `0 -> 1 -> 2 -> 0`; has no kernel.
pub fn c3() -> Digraph {
    Digraph::build(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
}

/// Directed 4-cycle `0 -> 1 -> 2 -> 3 -> 0`.
pub fn c4() -> Digraph {
    Digraph::build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
}

/// Vertices 0 and 1 share the out-neighbor 2, which points back at both.
pub fn shared_sink() -> Digraph {
    Digraph::build(3, [(0, 2), (1, 2), (2, 0), (2, 1)]).unwrap()
}

/// A 3-cycle on `{0,1,2}` dominated by vertex 3, with the back arc `0 -> 3`.
/// Has both a kernel (`{3}`) and an odd directed cycle.
pub fn domc3() -> Digraph {
    Digraph::build(
        4,
        [(3, 0), (3, 1), (3, 2), (0, 1), (1, 2), (2, 0), (0, 3)],
    )
    .unwrap()
}
