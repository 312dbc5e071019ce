//! Independence, kernels, quasi-kernels, inward domination and external
//! private out-neighbors (EPONs).
//!
//! Every predicate comes in two flavours: `is_*` returning a boolean and
//! `*_violation` returning the first witness of failure, which the CLI
//! prints.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{GraphError, Result};
use crate::vertex_set::{VertexId, VertexSet};

/// First reason a set fails a predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Arc between two members of the set.
    Arc(VertexId, VertexId),
    /// Vertex outside the set with no in-neighbor in it.
    Undominated(VertexId),
    /// Vertex at directed distance more than two from the set.
    Uncovered(VertexId),
    /// `from -> to` with `to` in the set, `from` outside and not hit by the set.
    InwardArc { from: VertexId, to: VertexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Arc(u, v) => write!(f, "arc {u} -> {v} inside the set"),
            Violation::Undominated(v) => write!(f, "vertex {v} not dominated"),
            Violation::Uncovered(v) => write!(f, "vertex {v} not reachable in two steps"),
            Violation::InwardArc { from, to } => {
                write!(f, "arc {from} -> {to} enters the set from undominated vertex {from}")
            }
        }
    }
}

pub fn independence_violation(g: &Digraph, s: &VertexSet) -> Result<Option<Violation>> {
    g.check_set(s)?;
    Ok(s.iter().find_map(|u| {
        g.out(u)
            .iter()
            .find(|&v| s.contains(v))
            .map(|v| Violation::Arc(u, v))
    }))
}

pub fn is_independent(g: &Digraph, s: &VertexSet) -> Result<bool> {
    Ok(independence_violation(g, s)?.is_none())
}

pub fn kernel_violation(g: &Digraph, k: &VertexSet) -> Result<Option<Violation>> {
    if let Some(v) = independence_violation(g, k)? {
        return Ok(Some(v));
    }
    let mut reached = g.out_of_set(k);
    reached.union_with(k);
    Ok(reached.complement().first().map(Violation::Undominated))
}

pub fn is_kernel(g: &Digraph, k: &VertexSet) -> Result<bool> {
    Ok(kernel_violation(g, k)?.is_none())
}

/// Vertices within directed distance two of `q`: `q ∪ out(q) ∪ out(out(q))`.
pub fn two_step_closure(g: &Digraph, q: &VertexSet) -> VertexSet {
    let one = g.out_of_set(q);
    let mut covered = g.out_of_set(&one);
    covered.union_with(&one);
    covered.union_with(q);
    covered
}

pub fn quasi_kernel_violation(g: &Digraph, q: &VertexSet) -> Result<Option<Violation>> {
    if let Some(v) = independence_violation(g, q)? {
        return Ok(Some(v));
    }
    Ok(two_step_closure(g, q).complement().first().map(Violation::Uncovered))
}

pub fn is_quasi_kernel(g: &Digraph, q: &VertexSet) -> Result<bool> {
    Ok(quasi_kernel_violation(g, q)?.is_none())
}

/// Checks only the quantified condition; whether `q` is a quasi-kernel is
/// a separate question.
pub fn inward_domination_violation(g: &Digraph, q: &VertexSet) -> Result<Option<Violation>> {
    g.check_set(q)?;
    let hit = g.out_of_set(q);
    for to in q {
        for from in g.inn(to) {
            if !q.contains(from) && !hit.contains(from) {
                return Ok(Some(Violation::InwardArc { from, to }));
            }
        }
    }
    Ok(None)
}

pub fn is_inward_dominated(g: &Digraph, q: &VertexSet) -> Result<bool> {
    Ok(inward_domination_violation(g, q)?.is_none())
}

/// External private out-neighbors of `u` with regard to `s`: out-neighbors
/// outside `s` whose only in-neighbor inside `s` is `u`.
pub fn epons(g: &Digraph, s: &VertexSet, u: VertexId) -> Result<VertexSet> {
    g.check_set(s)?;
    if !s.contains(u) {
        return Err(GraphError::NotAMember(u));
    }
    Ok(epons_unchecked(g, s, u))
}

fn epons_unchecked(g: &Digraph, s: &VertexSet, u: VertexId) -> VertexSet {
    let mut out = g.out(u).difference(s);
    let candidates = out.clone();
    for v in &candidates {
        let mut rivals = g.inn(v).intersection(s);
        rivals.remove(u);
        if !rivals.is_empty() {
            out.remove(v);
        }
    }
    out
}

pub fn has_epon(g: &Digraph, s: &VertexSet, u: VertexId) -> Result<bool> {
    Ok(!epons(g, s, u)?.is_empty())
}

/// Members of `k` without an EPON with regard to `k`.
pub fn non_epon_members(g: &Digraph, k: &VertexSet) -> Result<VertexSet> {
    g.check_set(k)?;
    let mut out = VertexSet::new(g.n());
    for u in k {
        if epons_unchecked(g, k, u).is_empty() {
            out.insert(u);
        }
    }
    Ok(out)
}

/// A map from each member of a set to one of its EPONs.
///
/// Distinct members never share an EPON, so the map is injective and its
/// image lies outside the set: it certifies `2|S| <= n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EponWitnessMap(pub BTreeMap<VertexId, VertexId>);

/// Why a witness map fails to certify a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessDefect {
    /// Member with no entry.
    Missing(VertexId),
    /// Key that is not a member.
    Stray(VertexId),
    /// Entry `u -> v` where `v` is not an EPON of `u`.
    NotAnEpon(VertexId, VertexId),
    /// Two keys share the value.
    Collision(VertexId, VertexId),
}

impl fmt::Display for WitnessDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WitnessDefect::Missing(u) => write!(f, "member {u} has no witness"),
            WitnessDefect::Stray(u) => write!(f, "witness key {u} is not a member"),
            WitnessDefect::NotAnEpon(u, v) => write!(f, "{v} is not an EPON of {u}"),
            WitnessDefect::Collision(a, b) => write!(f, "members {a} and {b} share a witness"),
        }
    }
}

impl EponWitnessMap {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, u: VertexId) -> Option<VertexId> {
        self.0.get(&u).copied()
    }

    /// Re-checks totality, the EPON property of every value, injectivity and
    /// disjointness of the image from `s`, without trusting how the map was
    /// built.
    pub fn check(&self, g: &Digraph, s: &VertexSet) -> Result<Option<WitnessDefect>> {
        g.check_set(s)?;
        if let Some(&u) = self.0.keys().find(|&&u| !s.contains(u)) {
            return Ok(Some(WitnessDefect::Stray(u)));
        }
        let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for u in s {
            let Some(v) = self.get(u) else {
                return Ok(Some(WitnessDefect::Missing(u)));
            };
            // independent of `epons`: v outside s, u -> v, no other member hits v
            let private = v < g.n()
                && !s.contains(v)
                && g.has_arc(u, v)
                && s.iter().all(|w| w == u || !g.has_arc(w, v));
            if !private {
                return Ok(Some(WitnessDefect::NotAnEpon(u, v)));
            }
            if let Some(prev) = owner.insert(v, u) {
                return Ok(Some(WitnessDefect::Collision(prev, u)));
            }
        }
        Ok(None)
    }
}

/// Outcome of [`epon_injection`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Injection {
    /// Every member has an EPON; each is mapped to its least one.
    Total(EponWitnessMap),
    /// The least member without an EPON.
    Missing(VertexId),
}

pub fn epon_injection(g: &Digraph, s: &VertexSet) -> Result<Injection> {
    g.check_set(s)?;
    let mut map = BTreeMap::new();
    for u in s {
        match epons_unchecked(g, s, u).first() {
            Some(v) => {
                map.insert(u, v);
            }
            None => return Ok(Injection::Missing(u)),
        }
    }
    Ok(Injection::Total(EponWitnessMap(map)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn set(n: usize, ids: &[VertexId]) -> VertexSet {
        VertexSet::from_iter(n, ids.iter().copied())
    }

    #[test]
    fn independence() {
        assert!(is_independent(&c4(), &set(4, &[0, 2])).unwrap());
        assert!(!is_independent(&c3(), &set(3, &[0, 1])).unwrap());
        assert!(is_independent(&c3(), &set(3, &[])).unwrap());
        assert!(is_independent(&c3(), &set(3, &[0])).unwrap());
        assert_eq!(
            independence_violation(&c3(), &set(3, &[0, 1])).unwrap(),
            Some(Violation::Arc(0, 1))
        );
    }

    #[test]
    fn kernels() {
        assert!(is_kernel(&c4(), &set(4, &[0, 2])).unwrap());
        assert_eq!(
            kernel_violation(&c3(), &set(3, &[0])).unwrap(),
            Some(Violation::Undominated(2))
        );
        assert!(is_kernel(&domc3(), &set(4, &[3])).unwrap());
    }

    #[test]
    fn quasi_kernels() {
        assert!(is_quasi_kernel(&c3(), &set(3, &[0])).unwrap());
        assert_eq!(
            quasi_kernel_violation(&c4(), &set(4, &[0])).unwrap(),
            Some(Violation::Uncovered(3))
        );
        assert!(is_quasi_kernel(&shared_sink(), &set(3, &[1])).unwrap());
    }

    #[test]
    fn epon_examples() {
        assert_eq!(epons(&c4(), &set(4, &[0, 2]), 0).unwrap().to_vec(), vec![1]);
        assert!(epons(&shared_sink(), &set(3, &[0, 1]), 0).unwrap().is_empty());
        assert_eq!(epons(&shared_sink(), &set(3, &[0]), 0).unwrap().to_vec(), vec![2]);
        assert_eq!(
            epons(&c4(), &set(4, &[0, 2]), 1),
            Err(GraphError::NotAMember(1))
        );
    }

    #[test]
    fn inward_domination() {
        assert!(is_inward_dominated(&c4(), &set(4, &[0, 2])).unwrap());
        assert_eq!(
            inward_domination_violation(&c4(), &set(4, &[0])).unwrap(),
            Some(Violation::InwardArc { from: 3, to: 0 })
        );
        assert!(is_inward_dominated(&shared_sink(), &set(3, &[0, 1])).unwrap());
    }

    #[test]
    fn non_epon_examples() {
        assert!(non_epon_members(&c4(), &set(4, &[0, 2])).unwrap().is_empty());
        assert_eq!(
            non_epon_members(&shared_sink(), &set(3, &[0, 1])).unwrap().to_vec(),
            vec![0, 1]
        );
        assert!(non_epon_members(&domc3(), &set(4, &[3])).unwrap().is_empty());
    }

    #[test]
    fn injection_examples() {
        let Injection::Total(map) = epon_injection(&c4(), &set(4, &[0, 2])).unwrap() else {
            panic!("C4 kernel has EPONs");
        };
        assert_eq!(map.0, BTreeMap::from([(0, 1), (2, 3)]));
        assert_eq!(map.check(&c4(), &set(4, &[0, 2])).unwrap(), None);
        assert_eq!(
            epon_injection(&shared_sink(), &set(3, &[0, 1])).unwrap(),
            Injection::Missing(0)
        );
        assert_eq!(
            epon_injection(&c4(), &set(4, &[])).unwrap(),
            Injection::Total(EponWitnessMap::default())
        );
    }

    #[test]
    fn witness_check_catches_forgeries() {
        let g = c4();
        let s = set(4, &[0, 2]);
        let forged = EponWitnessMap(BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(forged.check(&g, &s).unwrap(), Some(WitnessDefect::NotAnEpon(2, 1)));
        let partial = EponWitnessMap(BTreeMap::from([(0, 1)]));
        assert_eq!(partial.check(&g, &s).unwrap(), Some(WitnessDefect::Missing(2)));
        let stray = EponWitnessMap(BTreeMap::from([(0, 1), (2, 3), (1, 2)]));
        assert_eq!(stray.check(&g, &s).unwrap(), Some(WitnessDefect::Stray(1)));
    }

    #[test]
    fn mismatched_universe_is_out_of_range() {
        assert!(matches!(
            is_kernel(&c3(), &set(5, &[4])),
            Err(GraphError::OutOfRange { vertex: 4, n: 3 })
        ));
    }
}
