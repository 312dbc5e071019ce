//! Exhaustive and randomized scans over small digraphs.
//!
//! Every scanned graph that passes the filters runs through the shrink
//! procedure (when source-free with a kernel), the minimum quasi-kernel
//! oracle (the half-size question for source-free graphs), the recursive
//! quasi-kernel construction, and, in verification mode, the lemma checks
//! and certificate re-verification. Failures are collected rather than
//! raised.

mod config;
mod report;
mod scan;

use thiserror::Error;

pub use config::{
    Filter, ScanConfig, ScanMode, Shard, DEFAULT_EXHAUSTIVE_CAP, EXTENDED_EXHAUSTIVE_CAP,
    RANDOM_CAP,
};
pub use report::{
    append_checkpoint, completed_shards, merge_reports, Counterexample, ExtremalExample,
    FailureKind, NTally, SearchReport, ShardCoverage,
};
pub use scan::{
    analyze, find_extremal_kernels, recheck_counterexample, recheck_extremal, sample_graph,
    scan, scan_with_threads, Analysis,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("n = {n} exceeds the scan cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("shard conflict: {0}")]
    ShardConflict(String),
    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
}
