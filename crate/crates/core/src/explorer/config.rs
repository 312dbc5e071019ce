use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ScanError;
use crate::digraph::{labeled_count, MAX_ENUMERATION_N};

/// Largest `n` scanned exhaustively by default (2^20 graphs at n = 5).
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 5;
/// Exhaustive cap when larger scans are explicitly allowed (2^30 graphs).
pub const EXTENDED_EXHAUSTIVE_CAP: usize = 6;
/// Random samples go through the brute-force oracles, so `n` stays small.
pub const RANDOM_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    Random,
}

impl FromStr for ScanMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(ScanMode::Exhaustive),
            "random" => Ok(ScanMode::Random),
            _ => Err(format!("unknown scan mode {s:?}")),
        }
    }
}

/// Graph classes a scan can be restricted to; several filters intersect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    SourceFree,
    HasKernel,
    KernelFree,
    OddCycleFree,
    OddCycle,
}

impl Filter {
    pub const ALL: [Filter; 5] = [
        Filter::SourceFree,
        Filter::HasKernel,
        Filter::KernelFree,
        Filter::OddCycleFree,
        Filter::OddCycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Filter::SourceFree => "source_free",
            Filter::HasKernel => "has_kernel",
            Filter::KernelFree => "kernel_free",
            Filter::OddCycleFree => "odd_cycle_free",
            Filter::OddCycle => "odd_cycle",
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.replace('-', "_");
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| format!("unknown filter {s:?}"))
    }
}

/// One contiguous slice of every per-`n` work range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shard {
    pub index: usize,
    pub total: usize,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, total: 1 };

    /// Half-open item range `[lo, hi)` of this shard within `0..items`.
    pub fn range(&self, items: u64) -> (u64, u64) {
        let cut = |i: usize| (items as u128 * i as u128 / self.total as u128) as u64;
        (cut(self.index), cut(self.index + 1))
    }
}

impl FromStr for Shard {
    type Err = String;

    /// Parses `index/total`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (i, t) = s
            .split_once('/')
            .ok_or_else(|| format!("shard must look like index/total, got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("shard {s:?}: {e}"));
        Ok(Shard { index: parse(i)?, total: parse(t)? })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub mode: ScanMode,
    /// Samples per `n` in random mode.
    pub sample_count: u64,
    pub seed: u64,
    /// Arc probability for random samples.
    pub arc_prob: f64,
    pub filters: BTreeSet<Filter>,
    /// Run every lemma, certificate and loop-invariant check.
    pub verification: bool,
    /// Record the encoding of every graph that passes the filters.
    pub collect_matches: bool,
    /// Raise the exhaustive cap from 5 to 6.
    pub allow_n6: bool,
    pub shard: Shard,
}

impl ScanConfig {
    pub fn exhaustive(n_min: usize, n_max: usize) -> Self {
        ScanConfig {
            n_min,
            n_max,
            mode: ScanMode::Exhaustive,
            sample_count: 0,
            seed: 0,
            arc_prob: 0.5,
            filters: BTreeSet::new(),
            verification: true,
            collect_matches: false,
            allow_n6: false,
            shard: Shard::WHOLE,
        }
    }

    pub fn random(n_min: usize, n_max: usize, sample_count: u64, seed: u64, arc_prob: f64) -> Self {
        ScanConfig {
            mode: ScanMode::Random,
            sample_count,
            seed,
            arc_prob,
            ..ScanConfig::exhaustive(n_min, n_max)
        }
    }

    pub fn with_filters<I: IntoIterator<Item = Filter>>(mut self, filters: I) -> Self {
        self.filters = filters.into_iter().collect();
        self
    }

    pub fn with_shard(mut self, shard: Shard) -> Self {
        self.shard = shard;
        self
    }

    pub fn exhaustive_cap(&self) -> usize {
        if self.allow_n6 {
            EXTENDED_EXHAUSTIVE_CAP
        } else {
            DEFAULT_EXHAUSTIVE_CAP
        }
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        if self.n_min > self.n_max {
            return Err(ScanError::InvalidConfig(format!(
                "empty vertex range {}..{}",
                self.n_min, self.n_max
            )));
        }
        let cap = match self.mode {
            ScanMode::Exhaustive => self.exhaustive_cap().min(MAX_ENUMERATION_N),
            ScanMode::Random => RANDOM_CAP,
        };
        if self.n_max > cap {
            return Err(ScanError::CapExceeded { n: self.n_max, cap });
        }
        if self.shard.total == 0 || self.shard.index >= self.shard.total {
            return Err(ScanError::ShardConflict(format!(
                "shard {}/{} is out of range",
                self.shard.index, self.shard.total
            )));
        }
        if !(0.0..=1.0).contains(&self.arc_prob) {
            return Err(ScanError::InvalidConfig(format!(
                "arc probability {} outside [0, 1]",
                self.arc_prob
            )));
        }
        Ok(())
    }

    /// Number of work items for `n` before sharding.
    pub fn items(&self, n: usize) -> u64 {
        match self.mode {
            ScanMode::Exhaustive => labeled_count(n).expect("validated n keeps counts in u64"),
            ScanMode::Random => self.sample_count,
        }
    }

    /// Stable identity of everything but the shard, so shards of one scan
    /// can be recognised and merged.
    pub fn hash(&self) -> String {
        let mut unsharded = self.clone();
        unsharded.shard = Shard::WHOLE;
        let canonical = serde_json::to_vec(&unsharded).expect("config serializes");
        let digest = Sha256::digest(&canonical);
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
