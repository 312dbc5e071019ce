//! The digraph value type, arc encodings and labeled enumeration.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::vertex_set::{VertexId, VertexSet};

/// Largest `n` accepted by [`enumerate_all`] unless a caller raises the cap.
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

/// Hard ceiling for labeled enumeration: `n(n-1)` arc bits must fit a `u64`.
pub const MAX_ENUMERATION_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

/// A finite simple digraph on vertices `0..n` without self-loops.
///
/// Immutable once built; in-neighborhoods are derived at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<VertexSet>,
    in_adj: Vec<VertexSet>,
}

impl Digraph {
    /// Builds a digraph from arcs, collapsing duplicates.
    pub fn build<I>(n: usize, arcs: I) -> Result<Digraph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut out_adj = vec![VertexSet::new(n); n];
        let mut in_adj = vec![VertexSet::new(n); n];
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            out_adj[u].insert(v);
            in_adj[v].insert(u);
        }
        Ok(Digraph { n, out_adj, in_adj })
    }

    pub fn empty(n: usize) -> Digraph {
        Digraph {
            n,
            out_adj: vec![VertexSet::new(n); n],
            in_adj: vec![VertexSet::new(n); n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(VertexSet::len).sum()
    }

    #[inline]
    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && self.out_adj[u].contains(v)
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::OutOfRange { vertex: v, n: self.n })
        }
    }

    /// Fails unless `set` lives in this graph's universe.
    pub fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe() == self.n {
            return Ok(());
        }
        match set.iter().find(|&v| v >= self.n) {
            Some(v) => Err(GraphError::OutOfRange { vertex: v, n: self.n }),
            None => Err(GraphError::OutOfRange {
                vertex: set.universe().saturating_sub(1),
                n: self.n,
            }),
        }
    }

    pub fn neighbors(&self, u: VertexId, direction: Direction) -> Result<&VertexSet> {
        self.check_vertex(u)?;
        Ok(match direction {
            Direction::Out => &self.out_adj[u],
            Direction::In => &self.in_adj[u],
        })
    }

    /// Out-neighborhood without a range check. Panics if `u >= n`.
    #[inline]
    pub fn out(&self, u: VertexId) -> &VertexSet {
        &self.out_adj[u]
    }

    /// In-neighborhood without a range check. Panics if `u >= n`.
    #[inline]
    pub fn inn(&self, u: VertexId) -> &VertexSet {
        &self.in_adj[u]
    }

    /// Union of the out-neighborhoods of `set`.
    pub fn out_of_set(&self, set: &VertexSet) -> VertexSet {
        let mut acc = VertexSet::new(self.n);
        for u in set {
            acc.union_with(&self.out_adj[u]);
        }
        acc
    }

    /// Every vertex has in-degree at least one. Vacuously true for `n = 0`.
    pub fn is_source_free(&self) -> bool {
        self.in_adj.iter().all(|ins| !ins.is_empty())
    }

    /// Subgraph induced by `keep`, relabelled in ascending order.
    ///
    /// Returns the graph and `mapping`, where `mapping[new] = old`.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Digraph, Vec<VertexId>)> {
        self.check_set(keep)?;
        let mapping = keep.to_vec();
        let mut new_id = vec![usize::MAX; self.n];
        for (new, &old) in mapping.iter().enumerate() {
            new_id[old] = new;
        }
        let arcs = mapping.iter().enumerate().flat_map(|(i, &old)| {
            let new_id = &new_id;
            self.out_adj[old]
                .iter()
                .filter(|&w| keep.contains(w))
                .map(move |w| (i, new_id[w]))
        });
        let sub = Digraph::build(mapping.len(), arcs.collect::<Vec<_>>())?;
        Ok((sub, mapping))
    }

    /// Dense `u64` out-neighbor masks, one per vertex. Requires `n <= 64`.
    pub fn out_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "mask view needs n <= 64");
        self.out_adj.iter().map(VertexSet::mask).collect()
    }

    /// Dense `u64` in-neighbor masks, one per vertex. Requires `n <= 64`.
    pub fn in_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "mask view needs n <= 64");
        self.in_adj.iter().map(VertexSet::mask).collect()
    }

    pub fn encoding(&self) -> GraphEncoding {
        let mut code = BigUint::default();
        for (u, v) in self.arcs() {
            code.set_bit(arc_bit(self.n, u, v), true);
        }
        GraphEncoding { n: self.n, code }
    }

    /// Code as a machine word; `None` when `n(n-1) > 64`.
    pub fn encoding_u64(&self) -> Option<u64> {
        if self.n * self.n.saturating_sub(1) > 64 {
            return None;
        }
        Some(
            self.arcs()
                .fold(0u64, |code, (u, v)| code | 1u64 << arc_bit(self.n, u, v)),
        )
    }

    /// Decodes a small code directly. Panics if `code` has bits past `n(n-1)`.
    pub fn from_code_u64(n: usize, code: u64) -> Digraph {
        let bits = n * n.saturating_sub(1);
        assert!(bits >= 64 || code >> bits == 0, "code out of range for n = {n}");
        let mut g = Digraph::empty(n);
        let mut rest = code;
        while rest != 0 {
            let bit = rest.trailing_zeros() as u64;
            rest &= rest - 1;
            let (u, v) = arc_of_bit(n, bit);
            g.out_adj[u].insert(v);
            g.in_adj[v].insert(u);
        }
        g
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs().collect::<Vec<_>>())
    }
}

/// Bit index of arc `(u, v)` in the labeled encoding on `n` vertices.
#[inline]
pub fn arc_bit(n: usize, u: VertexId, v: VertexId) -> u64 {
    debug_assert!(u != v && u < n && v < n);
    (u * (n - 1) + if v < u { v } else { v - 1 }) as u64
}

#[inline]
fn arc_of_bit(n: usize, bit: u64) -> (VertexId, VertexId) {
    let bit = bit as usize;
    let u = bit / (n - 1);
    let r = bit % (n - 1);
    (u, if r < u { r } else { r + 1 })
}

/// Integer bijection between labeled digraphs on `n` vertices and
/// `[0, 2^(n(n-1)))`.
///
/// Serialized with the code as a decimal string so large graphs survive
/// JSON round trips.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphEncoding {
    pub n: usize,
    #[serde(with = "decimal")]
    pub code: BigUint,
}

impl GraphEncoding {
    pub fn from_u64(n: usize, code: u64) -> Self {
        GraphEncoding { n, code: BigUint::from(code) }
    }

    pub fn bit_len(&self) -> u64 {
        (self.n * self.n.saturating_sub(1)) as u64
    }

    pub fn to_digraph(&self) -> Result<Digraph> {
        if self.code.bits() > self.bit_len() {
            return Err(GraphError::Unsatisfiable(format!(
                "code {} does not fit {} arc bits",
                self.code,
                self.bit_len()
            )));
        }
        let mut arcs = Vec::new();
        for bit in 0..self.code.bits() {
            if self.code.bit(bit) {
                arcs.push(arc_of_bit(self.n, bit));
            }
        }
        Digraph::build(self.n, arcs)
    }
}

impl fmt::Display for GraphEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}:{}", self.n, self.code)
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(code: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&code.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom(format!("invalid graph code {text:?}")))
    }
}

/// Number of labeled digraphs on `n` vertices, when it fits a `u64`.
pub fn labeled_count(n: usize) -> Option<u64> {
    let bits = n * n.saturating_sub(1);
    (bits < 64).then(|| 1u64 << bits)
}

/// All labeled digraphs on `n` vertices in ascending code order.
///
/// `cap` bounds `n`; pass [`DEFAULT_ENUMERATION_CAP`] for the usual limit.
pub fn enumerate_all(
    n: usize,
    cap: usize,
) -> Result<impl Iterator<Item = (GraphEncoding, Digraph)>> {
    let cap = cap.min(MAX_ENUMERATION_N);
    if n > cap {
        return Err(GraphError::CapExceeded { n, cap });
    }
    let total = labeled_count(n).expect("n <= 7 keeps the count within u64");
    Ok((0..total).map(move |code| (GraphEncoding::from_u64(n, code), Digraph::from_code_u64(n, code))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn build_collapses_duplicates() {
        let g = Digraph::build(3, [(0, 1), (0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g, c3());
        assert_eq!(g.arc_count(), 3);
    }

    #[test]
    fn build_rejects_self_loops_and_range() {
        assert_eq!(Digraph::build(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Digraph::build(2, [(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn neighbors_both_directions() {
        assert_eq!(c3().neighbors(0, Direction::Out).unwrap().to_vec(), vec![1]);
        assert_eq!(c3().neighbors(0, Direction::In).unwrap().to_vec(), vec![2]);
        assert_eq!(c4().neighbors(2, Direction::Out).unwrap().to_vec(), vec![3]);
        assert!(c3().neighbors(3, Direction::Out).is_err());
    }

    #[test]
    fn source_free() {
        assert!(c3().is_source_free());
        assert!(!Digraph::build(2, [(0, 1)]).unwrap().is_source_free());
        assert!(Digraph::empty(0).is_source_free());
        assert!(!Digraph::empty(1).is_source_free());
    }

    #[test]
    fn induced_subgraphs() {
        let (sub, map) = c4().induced_subgraph(&VertexSet::from_iter(4, [2, 3])).unwrap();
        assert_eq!(sub, Digraph::build(2, [(0, 1)]).unwrap());
        assert_eq!(map, vec![2, 3]);

        let (same, map) = c3().induced_subgraph(&VertexSet::full(3)).unwrap();
        assert_eq!(same, c3());
        assert_eq!(map, vec![0, 1, 2]);

        let (empty, map) = c3().induced_subgraph(&VertexSet::new(3)).unwrap();
        assert_eq!(empty.n(), 0);
        assert!(map.is_empty());

        assert!(c3().induced_subgraph(&VertexSet::new(5)).is_err());
    }

    #[test]
    fn arc_bit_layout() {
        // n = 3: (0,1)=0 (0,2)=1 (1,0)=2 (1,2)=3 (2,0)=4 (2,1)=5
        let expected = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
        for (bit, &(u, v)) in expected.iter().enumerate() {
            assert_eq!(arc_bit(3, u, v), bit as u64);
            assert_eq!(arc_of_bit(3, bit as u64), (u, v));
        }
        // C3 = {(0,1), (1,2), (2,0)} -> bits 0, 3, 4
        assert_eq!(c3().encoding_u64(), Some(0b11001));
    }

    #[test]
    fn enumeration_counts_and_round_trip() {
        assert_eq!(enumerate_all(1, DEFAULT_ENUMERATION_CAP).unwrap().count(), 1);
        assert_eq!(enumerate_all(2, DEFAULT_ENUMERATION_CAP).unwrap().count(), 4);
        let mut seen = 0;
        for (enc, g) in enumerate_all(3, DEFAULT_ENUMERATION_CAP).unwrap() {
            assert_eq!(g.encoding(), enc);
            assert_eq!(enc.to_digraph().unwrap(), g);
            seen += 1;
        }
        assert_eq!(seen, 64);
        assert!(matches!(
            enumerate_all(7, DEFAULT_ENUMERATION_CAP),
            Err(GraphError::CapExceeded { n: 7, cap: 6 })
        ));
    }

    #[test]
    fn big_encodings_round_trip() {
        let g = Digraph::build(20, (0..20).map(|i| (i, (i + 7) % 20))).unwrap();
        assert_eq!(g.encoding().to_digraph().unwrap(), g);
        assert_eq!(g.encoding_u64(), None);
    }
}
