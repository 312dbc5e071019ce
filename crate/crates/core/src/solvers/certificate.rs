//! The shrink trace, its JSON form, and an independent re-checker.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, GraphEncoding};
use crate::domination::{
    independence_violation, inward_domination_violation, is_kernel, non_epon_members,
    quasi_kernel_violation, EponWitnessMap,
};
use crate::error::GraphError;
use crate::vertex_set::{VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Removal {
    pub vertex: VertexId,
    /// Members of the working set without an EPON, just before the removal.
    pub s_set: VertexSet,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub independent: bool,
    pub quasi_kernel: bool,
    pub inward_dominated: bool,
    pub size_bound: bool,
}

impl Verdicts {
    pub fn evaluate(g: &Digraph, set: &VertexSet) -> Result<Verdicts, GraphError> {
        Ok(Verdicts {
            independent: independence_violation(g, set)?.is_none(),
            quasi_kernel: quasi_kernel_violation(g, set)?.is_none(),
            inward_dominated: inward_domination_violation(g, set)?.is_none(),
            size_bound: 2 * set.len() <= g.n(),
        })
    }

    pub fn all(&self) -> bool {
        self.independent && self.quasi_kernel && self.inward_dominated && self.size_bound
    }
}

/// Machine-checkable trace of one shrink run.
///
/// JSON field order is fixed: `n`, `arcs`, `initial_kernel`, `removals`,
/// `final`, `witness`, `verdicts`; vertex arrays are ascending and witness
/// keys are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCertificate")]
pub struct ShrinkCertificate {
    pub n: usize,
    pub arcs: Vec<[VertexId; 2]>,
    pub initial_kernel: VertexSet,
    pub removals: Vec<Removal>,
    #[serde(rename = "final")]
    pub final_set: VertexSet,
    pub witness: EponWitnessMap,
    pub verdicts: Verdicts,
}

#[derive(Deserialize)]
struct RawRemoval {
    vertex: VertexId,
    s_set: Vec<VertexId>,
}

#[derive(Deserialize)]
struct RawCertificate {
    n: usize,
    arcs: Vec<[VertexId; 2]>,
    initial_kernel: Vec<VertexId>,
    removals: Vec<RawRemoval>,
    #[serde(rename = "final")]
    final_set: Vec<VertexId>,
    witness: EponWitnessMap,
    verdicts: Verdicts,
}

impl TryFrom<RawCertificate> for ShrinkCertificate {
    type Error = String;

    fn try_from(raw: RawCertificate) -> Result<Self, String> {
        let n = raw.n;
        let set = |ids: Vec<VertexId>, field: &str| {
            VertexSet::try_from_iter(n, ids)
                .map_err(|v| format!("{field}: vertex {v} out of range for n = {n}"))
        };
        let removals = raw
            .removals
            .into_iter()
            .map(|r| {
                Ok(Removal { vertex: r.vertex, s_set: set(r.s_set, "removals.s_set")? })
            })
            .collect::<Result<Vec<_>, String>>()?;
        Ok(ShrinkCertificate {
            n,
            arcs: raw.arcs,
            initial_kernel: set(raw.initial_kernel, "initial_kernel")?,
            removals,
            final_set: set(raw.final_set, "final")?,
            witness: raw.witness,
            verdicts: raw.verdicts,
        })
    }
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("certificate graph is invalid: {0}")]
    Graph(#[from] GraphError),
}

impl ShrinkCertificate {
    pub fn graph(&self) -> Result<Digraph, GraphError> {
        Digraph::build(self.n, self.arcs.iter().map(|&[u, v]| (u, v)))
    }

    pub fn encoding(&self) -> Result<GraphEncoding, GraphError> {
        Ok(self.graph()?.encoding())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Removals that took the fallback branch of the selection rule.
    pub fn fallback_steps(&self, g: &Digraph) -> usize {
        self.removals
            .iter()
            .filter(|r| super::shrink::is_fallback(g, r))
            .count()
    }
}

/// Named checks, in the order [`verify_certificate`] runs them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateCheck {
    Graph,
    Independence,
    QuasiKernel,
    InwardDominated,
    SizeBound,
    InitialKernel,
    Removal(usize),
    FinalSet,
    Termination,
    Witness,
}

impl fmt::Display for CertificateCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateCheck::Graph => f.write_str("graph"),
            CertificateCheck::Independence => f.write_str("independence"),
            CertificateCheck::QuasiKernel => f.write_str("quasi_kernel"),
            CertificateCheck::InwardDominated => f.write_str("inward_dominated"),
            CertificateCheck::SizeBound => f.write_str("size_bound"),
            CertificateCheck::InitialKernel => f.write_str("initial_kernel"),
            CertificateCheck::Removal(i) => write!(f, "removal[{i}]"),
            CertificateCheck::FinalSet => f.write_str("final_set"),
            CertificateCheck::Termination => f.write_str("termination"),
            CertificateCheck::Witness => f.write_str("witness"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate mismatch at {check}: {detail}")]
pub struct CertificateMismatch {
    pub check: CertificateCheck,
    pub detail: String,
}

fn mismatch(check: CertificateCheck, detail: impl Into<String>) -> CertificateMismatch {
    CertificateMismatch { check, detail: detail.into() }
}

/// Recomputes every claim in `cert` against `g` from scratch.
///
/// Final-set verdicts are checked first, then the trace: the initial set is
/// a kernel, each step removes a current member that lies in the recomputed
/// non-EPON set (which must shrink), the final set is what the trace leaves,
/// no member of it lacks an EPON, and the witness is a total injective EPON
/// map on it.
pub fn verify_certificate(g: &Digraph, cert: &ShrinkCertificate) -> Result<(), CertificateMismatch> {
    use CertificateCheck as C;

    let claimed = cert
        .graph()
        .map_err(|e| mismatch(C::Graph, format!("certificate arcs invalid: {e}")))?;
    if claimed != *g {
        return Err(mismatch(C::Graph, "certificate arcs differ from the graph"));
    }
    let fin = &cert.final_set;
    let rebound = |s: &VertexSet, check| {
        s.with_universe(g.n())
            .map_err(|v| mismatch(check, format!("vertex {v} out of range")))
    };
    let fin = rebound(fin, C::FinalSet)?;
    let graph_err = |check| move |e: GraphError| mismatch(check, e.to_string());

    let verdict = |check, claimed: bool, actual: Option<String>| match (claimed, actual) {
        (true, None) => Ok(()),
        (false, None) => Err(mismatch(check, "holds but certificate claims it fails")),
        (_, Some(why)) => Err(mismatch(check, why)),
    };
    verdict(
        C::Independence,
        cert.verdicts.independent,
        independence_violation(g, &fin)
            .map_err(graph_err(C::Independence))?
            .map(|v| v.to_string()),
    )?;
    verdict(
        C::QuasiKernel,
        cert.verdicts.quasi_kernel,
        quasi_kernel_violation(g, &fin)
            .map_err(graph_err(C::QuasiKernel))?
            .map(|v| v.to_string()),
    )?;
    verdict(
        C::InwardDominated,
        cert.verdicts.inward_dominated,
        inward_domination_violation(g, &fin)
            .map_err(graph_err(C::InwardDominated))?
            .map(|v| v.to_string()),
    )?;
    verdict(
        C::SizeBound,
        cert.verdicts.size_bound,
        (2 * fin.len() > g.n())
            .then(|| format!("{} members exceed {}", fin.len(), g.n() / 2)),
    )?;

    let initial = rebound(&cert.initial_kernel, C::InitialKernel)?;
    if !is_kernel(g, &initial).map_err(graph_err(C::InitialKernel))? {
        return Err(mismatch(C::InitialKernel, "initial set is not a kernel"));
    }

    let mut working = initial;
    let mut previous_s: Option<usize> = None;
    for (i, removal) in cert.removals.iter().enumerate() {
        let check = C::Removal(i);
        let s = non_epon_members(g, &working).map_err(graph_err(check))?;
        let claimed_s = rebound(&removal.s_set, check)?;
        if claimed_s != s {
            return Err(mismatch(check, format!("recorded S = {{{claimed_s}}}, actual {{{s}}}")));
        }
        if !s.contains(removal.vertex) {
            return Err(mismatch(check, format!("vertex {} not in S", removal.vertex)));
        }
        if let Some(prev) = previous_s {
            if s.len() >= prev {
                return Err(mismatch(check, "S did not shrink"));
            }
        }
        previous_s = Some(s.len());
        working.remove(removal.vertex);
    }
    if working != fin {
        return Err(mismatch(
            C::FinalSet,
            format!("trace leaves {{{working}}}, certificate claims {{{fin}}}"),
        ));
    }
    let leftover = non_epon_members(g, &fin).map_err(graph_err(C::Termination))?;
    if !leftover.is_empty() {
        return Err(mismatch(
            C::Termination,
            format!("members {{{leftover}}} still lack an EPON"),
        ));
    }
    if let Some(defect) = cert.witness.check(g, &fin).map_err(graph_err(C::Witness))? {
        return Err(mismatch(C::Witness, defect.to_string()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::solvers::{shrink_kernel, ShrinkOptions};

    fn c4_cert() -> ShrinkCertificate {
        shrink_kernel(&c4(), &VertexSet::from_iter(4, [0, 2]), ShrinkOptions::default()).unwrap()
    }

    #[test]
    fn genuine_certificate_verifies() {
        assert_eq!(verify_certificate(&c4(), &c4_cert()), Ok(()));
    }

    #[test]
    fn tampered_final_set_fails_independence() {
        let mut cert = c4_cert();
        cert.final_set = VertexSet::from_iter(4, [0, 1]);
        let err = verify_certificate(&c4(), &cert).unwrap_err();
        assert_eq!(err.check, CertificateCheck::Independence);
    }

    #[test]
    fn forged_size_bound_fails() {
        let g = shared_sink();
        let cert = ShrinkCertificate {
            n: 3,
            arcs: g.arcs().map(|(u, v)| [u, v]).collect(),
            initial_kernel: VertexSet::from_iter(3, [0, 1]),
            removals: vec![],
            final_set: VertexSet::from_iter(3, [0, 1]),
            witness: EponWitnessMap::default(),
            verdicts: Verdicts {
                independent: true,
                quasi_kernel: true,
                inward_dominated: true,
                size_bound: true,
            },
        };
        let err = verify_certificate(&g, &cert).unwrap_err();
        assert_eq!(err.check, CertificateCheck::SizeBound);
    }

    #[test]
    fn wrong_graph_is_rejected() {
        let err = verify_certificate(&c3(), &c4_cert()).unwrap_err();
        assert_eq!(err.check, CertificateCheck::Graph);
    }

    #[test]
    fn skipped_step_is_caught() {
        let g = shared_sink();
        let mut cert =
            shrink_kernel(&g, &VertexSet::from_iter(3, [0, 1]), ShrinkOptions::default()).unwrap();
        cert.removals[0].s_set = VertexSet::from_iter(3, [0]);
        assert_eq!(
            verify_certificate(&g, &cert).unwrap_err().check,
            CertificateCheck::Removal(0)
        );
    }

    #[test]
    fn json_layout_is_fixed() {
        let g = shared_sink();
        let cert =
            shrink_kernel(&g, &VertexSet::from_iter(3, [0, 1]), ShrinkOptions::default()).unwrap();
        let compact = serde_json::to_string(&cert).unwrap();
        assert_eq!(
            compact,
            r#"{"n":3,"arcs":[[0,2],[1,2],[2,0],[2,1]],"initial_kernel":[0,1],"removals":[{"vertex":0,"s_set":[0,1]}],"final":[1],"witness":{"1":2},"verdicts":{"independent":true,"quasi_kernel":true,"inward_dominated":true,"size_bound":true}}"#
        );
        let back = ShrinkCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.final_set.universe(), 3);
    }

    #[test]
    fn out_of_range_json_is_rejected() {
        let text = r#"{"n":2,"arcs":[],"initial_kernel":[5],"removals":[],"final":[],"witness":{},"verdicts":{"independent":true,"quasi_kernel":true,"inward_dominated":true,"size_bound":true}}"#;
        assert!(ShrinkCertificate::from_json(text).is_err());
    }
}
