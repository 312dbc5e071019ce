use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::ops::AddAssign;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::Shard;
use super::ScanError;
use crate::digraph::GraphEncoding;
use crate::vertex_set::VertexId;

/// Per-`n` counters. Every `*_runs` / `*_checks` counter has a matching
/// pass or violation count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NTally {
    /// Graphs visited, before filters.
    pub scanned: u64,
    /// Graphs that passed the filters; everything below counts only these.
    pub matched: u64,
    pub source_free: u64,
    pub with_kernel: u64,
    pub kernel_free: u64,
    pub odd_cycle_free: u64,
    pub kernel_and_odd_cycle: u64,
    pub theorem_runs: u64,
    pub theorem_passes: u64,
    pub removals: u64,
    pub fallback_removals: u64,
    pub certificates_verified: u64,
    pub conjecture_runs: u64,
    pub conjecture_passes: u64,
    pub chvatal_runs: u64,
    pub chvatal_passes: u64,
    pub richardson_runs: u64,
    pub richardson_passes: u64,
    pub lemma1_checks: u64,
    pub lemma2_checks: u64,
    pub lemma3_checks: u64,
    pub ordering_checks: u64,
    pub violations: u64,
}

macro_rules! tally_fields {
    ($m:ident) => {
        $m!(
            scanned, matched, source_free, with_kernel, kernel_free, odd_cycle_free,
            kernel_and_odd_cycle, theorem_runs, theorem_passes, removals, fallback_removals,
            certificates_verified, conjecture_runs, conjecture_passes, chvatal_runs,
            chvatal_passes, richardson_runs, richardson_passes, lemma1_checks, lemma2_checks,
            lemma3_checks, ordering_checks, violations
        )
    };
}

impl AddAssign for NTally {
    fn add_assign(&mut self, rhs: NTally) {
        macro_rules! add {
            ($($f:ident),*) => { $(self.$f += rhs.$f;)* };
        }
        tally_fields!(add);
    }
}

impl NTally {
    pub const COLUMNS: [&'static str; 23] = {
        macro_rules! names {
            ($($f:ident),*) => { [$(stringify!($f)),*] };
        }
        tally_fields!(names)
    };

    pub fn values(&self) -> [u64; 23] {
        macro_rules! vals {
            ($($f:ident),*) => { [$(self.$f),*] };
        }
        tally_fields!(vals)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// Minimum quasi-kernel larger than half the vertices on a source-free
    /// digraph. A research finding, not a defect.
    Conjecture,
    /// Shrink procedure failed or exceeded the bound.
    Theorem,
    /// Shrink certificate did not re-verify.
    Certificate,
    /// Kernel that is not an inward dominated quasi-kernel.
    Lemma1,
    /// EPON set not monotone under shrinking the reference set.
    Lemma2,
    /// Successful EPON injection that is not a valid certificate of `2|S| <= n`.
    Lemma3,
    /// Recursive construction returned a non-quasi-kernel.
    Chvatal,
    /// Digraph without odd directed cycles and without a kernel.
    Richardson,
    /// Minimum quasi-kernel larger than a constructed one.
    Ordering,
}

impl FailureKind {
    /// Only conjecture counterexamples are legitimate findings; everything
    /// else contradicts a proven statement and signals a bug.
    pub fn is_finding(self) -> bool {
        self == FailureKind::Conjecture
    }
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub encoding: GraphEncoding,
    pub kind: FailureKind,
    pub reason: String,
    /// The vertex set the failure is about, ascending.
    pub witness: Vec<VertexId>,
}

/// Source-free digraph whose smallest kernel exceeds half the vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtremalExample {
    pub encoding: GraphEncoding,
    pub min_kernel_size: usize,
    pub min_quasi_kernel_size: usize,
}

/// Which shards of one configuration a report covers; absent when complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShardCoverage {
    pub total: usize,
    pub indices: Vec<usize>,
}

/// Result of a scan.
///
/// Lists are sorted by encoding, so reports compare equal regardless of
/// shard layout or scheduling. `elapsed_ms` is the only field that varies
/// between identical runs; [`SearchReport::canonical_json`] zeroes it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config_hash: String,
    pub shard: Option<ShardCoverage>,
    pub per_n: BTreeMap<usize, NTally>,
    pub counterexamples: Vec<Counterexample>,
    pub extremal: Vec<ExtremalExample>,
    pub matches: Vec<GraphEncoding>,
    pub elapsed_ms: u64,
}

impl SearchReport {
    pub(crate) fn normalize(&mut self) {
        self.counterexamples.sort();
        self.extremal.sort();
        self.matches.sort();
    }

    /// Adds counts and lists of `other` into `self` without shard bookkeeping.
    pub(crate) fn absorb(&mut self, other: SearchReport) {
        for (n, tally) in other.per_n {
            *self.per_n.entry(n).or_default() += tally;
        }
        self.counterexamples.extend(other.counterexamples);
        self.extremal.extend(other.extremal);
        self.matches.extend(other.matches);
        self.elapsed_ms += other.elapsed_ms;
    }

    pub fn totals(&self) -> NTally {
        let mut acc = NTally::default();
        for t in self.per_n.values() {
            acc += *t;
        }
        acc
    }

    /// Failures other than conjecture counterexamples.
    pub fn violations(&self) -> impl Iterator<Item = &Counterexample> {
        self.counterexamples.iter().filter(|c| !c.kind.is_finding())
    }

    pub fn findings(&self) -> impl Iterator<Item = &Counterexample> {
        self.counterexamples.iter().filter(|c| c.kind.is_finding())
    }

    pub fn has_violations(&self) -> bool {
        self.violations().next().is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// JSON with timing removed; identical configurations give identical bytes.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.elapsed_ms = 0;
        copy.to_json()
    }

    /// One CSV row per `n` with every tally column.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["n"];
        header.extend(NTally::COLUMNS);
        w.write_record(&header).expect("in-memory csv");
        for (n, tally) in &self.per_n {
            let mut row = vec![n.to_string()];
            row.extend(tally.values().iter().map(u64::to_string));
            w.write_record(&row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("ascii csv")
    }
}

/// Merges shard reports of one configuration.
///
/// Fails on mismatched configurations, differing shard totals or any shard
/// index that appears twice. The result is independent of the input order,
/// and equals the unsharded report once every shard is present.
pub fn merge_reports(parts: Vec<SearchReport>) -> Result<SearchReport, ScanError> {
    let mut parts = parts.into_iter();
    let Some(first) = parts.next() else {
        return Ok(SearchReport::default());
    };
    let hash = first.config_hash.clone();
    let mut total: Option<usize> = None;
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut merged = SearchReport { config_hash: hash.clone(), ..Default::default() };

    for part in std::iter::once(first).chain(parts) {
        if part.config_hash != hash {
            return Err(ScanError::ShardConflict(format!(
                "config {} does not match {}",
                part.config_hash, hash
            )));
        }
        let coverage = part
            .shard
            .clone()
            .unwrap_or(ShardCoverage { total: 1, indices: vec![0] });
        match total {
            None => total = Some(coverage.total),
            Some(t) if t != coverage.total => {
                return Err(ScanError::ShardConflict(format!(
                    "shard totals {t} and {} differ",
                    coverage.total
                )))
            }
            Some(_) => {}
        }
        for index in coverage.indices {
            if !seen.insert(index) {
                return Err(ScanError::ShardConflict(format!("shard {index} appears twice")));
            }
        }
        merged.absorb(part);
    }

    let total = total.expect("at least one part");
    merged.shard = if seen.len() == total {
        None
    } else {
        Some(ShardCoverage { total, indices: seen.into_iter().collect() })
    };
    merged.normalize();
    Ok(merged)
}

pub(crate) fn coverage_of(shard: Shard) -> Option<ShardCoverage> {
    (shard.total > 1).then(|| ShardCoverage { total: shard.total, indices: vec![shard.index] })
}

/// Appends `index total config-hash` for a finished shard.
pub fn append_checkpoint(path: &Path, shard: Shard, config_hash: &str) -> std::io::Result<()> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(file, "{} {} {}", shard.index, shard.total, config_hash)
}

/// Shard indices already recorded for `config_hash` with the given total.
/// Lines for other configurations are ignored; malformed lines are errors.
pub fn completed_shards(
    path: &Path,
    total: usize,
    config_hash: &str,
) -> std::io::Result<BTreeSet<usize>> {
    let mut done = BTreeSet::new();
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(e),
    };
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || {
            std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("checkpoint line {}: {line:?}", i + 1),
            )
        };
        let [index, t, hash] = fields[..] else {
            return Err(bad());
        };
        let index: usize = index.parse().map_err(|_| bad())?;
        let t: usize = t.parse().map_err(|_| bad())?;
        if hash == config_hash && t == total {
            done.insert(index);
        }
    }
    Ok(done)
}
