//! Shrinks a kernel of a source-free digraph to a quasi-kernel of at most
//! half the vertices.
//!
//! The working set `Q` starts as the kernel, which is an inward dominated
//! quasi-kernel. While some members of `Q` lack an EPON with regard to `Q`
//! (the set `S`), one of them is dropped. Dropping any member of `S` keeps
//! `Q` an inward dominated quasi-kernel and strictly shrinks `S`. Once `S`
//! is empty, the EPON injection bounds `2|Q| <= n`.

use std::fmt;

use thiserror::Error;

use super::certificate::{Removal, ShrinkCertificate, Verdicts};
use crate::digraph::Digraph;
use crate::domination::{
    epon_injection, epons, inward_domination_violation, kernel_violation, non_epon_members,
    quasi_kernel_violation, EponWitnessMap, Injection, Violation,
};
use crate::error::GraphError;
use crate::vertex_set::{VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ShrinkOptions {
    /// Re-check the loop invariant after every removal.
    pub verify: bool,
}

impl ShrinkOptions {
    pub fn verified() -> Self {
        ShrinkOptions { verify: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    NotSourceFree(VertexId),
    NotAKernel(Violation),
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precondition::NotSourceFree(v) => write!(f, "not source-free (vertex {v} is a source)"),
            Precondition::NotAKernel(why) => write!(f, "not a kernel ({why})"),
        }
    }
}

/// A broken loop invariant. `step` counts removals made so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invariant {
    NotQuasiKernel { step: usize, violation: Violation },
    NotInwardDominated { step: usize, violation: Violation },
    NonEponSetDidNotShrink { step: usize, before: usize, after: usize },
    NoInjection { member: VertexId },
    SizeBound { size: usize, n: usize },
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::NotQuasiKernel { step, violation } => {
                write!(f, "after removal {step}: not a quasi-kernel ({violation})")
            }
            Invariant::NotInwardDominated { step, violation } => {
                write!(f, "after removal {step}: not inward dominated ({violation})")
            }
            Invariant::NonEponSetDidNotShrink { step, before, after } => write!(
                f,
                "after removal {step}: non-EPON set went from {before} to {after} members"
            ),
            Invariant::NoInjection { member } => {
                write!(f, "final set has member {member} without an EPON")
            }
            Invariant::SizeBound { size, n } => {
                write!(f, "final set has {size} members, more than {}", n / 2)
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum ShrinkError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(Precondition),
    #[error("invariant violated: {violation}")]
    InvariantViolation {
        violation: Invariant,
        certificate: Box<ShrinkCertificate>,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Runs the shrinking procedure from kernel `k` and returns its trace.
pub fn shrink_kernel(
    g: &Digraph,
    k: &VertexSet,
    options: ShrinkOptions,
) -> Result<ShrinkCertificate, ShrinkError> {
    g.check_set(k)?;
    if let Some(source) = (0..g.n()).find(|&v| g.inn(v).is_empty()) {
        return Err(ShrinkError::PreconditionFailed(Precondition::NotSourceFree(source)));
    }
    if let Some(why) = kernel_violation(g, k)? {
        return Err(ShrinkError::PreconditionFailed(Precondition::NotAKernel(why)));
    }

    let mut cert = ShrinkCertificate {
        n: g.n(),
        arcs: g.arcs().map(|(u, v)| [u, v]).collect(),
        initial_kernel: k.clone(),
        removals: Vec::new(),
        final_set: k.clone(),
        witness: EponWitnessMap::default(),
        verdicts: Verdicts::default(),
    };
    let fail = |violation: Invariant, cert: ShrinkCertificate| ShrinkError::InvariantViolation {
        violation,
        certificate: Box::new(cert),
    };

    let mut s = non_epon_members(g, &cert.final_set)?;
    while !s.is_empty() {
        let u = select(g, &s)?;
        cert.removals.push(Removal { vertex: u, s_set: s.clone() });
        cert.final_set.remove(u);
        let next = non_epon_members(g, &cert.final_set)?;

        if options.verify {
            let step = cert.removals.len();
            if let Some(violation) = quasi_kernel_violation(g, &cert.final_set)? {
                return Err(fail(Invariant::NotQuasiKernel { step, violation }, cert));
            }
            if let Some(violation) = inward_domination_violation(g, &cert.final_set)? {
                return Err(fail(Invariant::NotInwardDominated { step, violation }, cert));
            }
            if !next.is_subset(&s) || next.len() >= s.len() {
                let (before, after) = (s.len(), next.len());
                return Err(fail(Invariant::NonEponSetDidNotShrink { step, before, after }, cert));
            }
        }
        s = next;
    }

    match epon_injection(g, &cert.final_set)? {
        Injection::Total(witness) => cert.witness = witness,
        Injection::Missing(member) => return Err(fail(Invariant::NoInjection { member }, cert)),
    }
    cert.verdicts = Verdicts::evaluate(g, &cert.final_set)?;
    if !cert.verdicts.size_bound {
        let size = cert.final_set.len();
        return Err(fail(Invariant::SizeBound { size, n: g.n() }, cert));
    }
    if let Some(violation) = quasi_kernel_violation(g, &cert.final_set)? {
        let step = cert.removals.len();
        return Err(fail(Invariant::NotQuasiKernel { step, violation }, cert));
    }
    if let Some(violation) = inward_domination_violation(g, &cert.final_set)? {
        let step = cert.removals.len();
        return Err(fail(Invariant::NotInwardDominated { step, violation }, cert));
    }
    Ok(cert)
}

/// Least member of `s` with no EPON with regard to `s` itself, falling back
/// to the least member of `s`.
fn select(g: &Digraph, s: &VertexSet) -> Result<VertexId, GraphError> {
    for u in s {
        if epons(g, s, u)?.is_empty() {
            return Ok(u);
        }
    }
    Ok(s.first().expect("selection from a non-empty set"))
}

/// Whether removal `r` took the fallback branch of the selection rule.
pub(crate) fn is_fallback(g: &Digraph, r: &Removal) -> bool {
    r.s_set
        .iter()
        .all(|u| !epons(g, &r.s_set, u).map(|e| e.is_empty()).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn c4_needs_no_removal() {
        let cert = shrink_kernel(&c4(), &VertexSet::from_iter(4, [0, 2]), ShrinkOptions::verified())
            .unwrap();
        assert!(cert.removals.is_empty());
        assert_eq!(cert.final_set.to_vec(), vec![0, 2]);
        assert_eq!(cert.witness.0.clone().into_iter().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert!(cert.verdicts.all());
    }

    #[test]
    fn shared_sink_drops_vertex_zero() {
        let g = shared_sink();
        let cert =
            shrink_kernel(&g, &VertexSet::from_iter(3, [0, 1]), ShrinkOptions::verified()).unwrap();
        assert_eq!(cert.removals.len(), 1);
        assert_eq!(cert.removals[0].vertex, 0);
        assert_eq!(cert.removals[0].s_set.to_vec(), vec![0, 1]);
        assert_eq!(cert.final_set.to_vec(), vec![1]);
        assert!(!is_fallback(&g, &cert.removals[0]));
    }

    #[test]
    fn c3_has_no_kernel_to_start_from() {
        for mask in 0..8u64 {
            let err = shrink_kernel(&c3(), &VertexSet::from_mask(3, mask), ShrinkOptions::default())
                .unwrap_err();
            assert!(matches!(
                err,
                ShrinkError::PreconditionFailed(Precondition::NotAKernel(_))
            ));
        }
    }

    #[test]
    fn sources_are_rejected() {
        let g = Digraph::build(2, [(0, 1)]).unwrap();
        let err = shrink_kernel(&g, &VertexSet::from_iter(2, [0]), ShrinkOptions::default())
            .unwrap_err();
        assert!(matches!(
            err,
            ShrinkError::PreconditionFailed(Precondition::NotSourceFree(0))
        ));
    }
}
