use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rayon::prelude::*;

use super::config::{Filter, ScanConfig, ScanMode};
use super::report::{
    coverage_of, Counterexample, ExtremalExample, FailureKind, NTally, SearchReport,
};
use super::ScanError;
use crate::cycles::has_odd_directed_cycle;
use crate::digraph::{Digraph, GraphEncoding};
use crate::domination::{
    epon_injection, epons, inward_domination_violation, quasi_kernel_violation, Injection,
};
use crate::generate::{derive_seed, generate, random_digraph, GeneratorKind};
use crate::solvers::{
    chvatal_quasi_kernel, enumerate_kernels, find_kernel, min_quasi_kernel, shrink_kernel,
    verify_certificate, ShrinkOptions, SolveLimits,
};
use crate::vertex_set::{VertexId, VertexSet};

/// Items handed to one worker at a time.
const BLOCK: u64 = 1 << 12;

/// Everything learned about one graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Analysis {
    pub tally: NTally,
    pub failures: Vec<(FailureKind, String, Vec<VertexId>)>,
    /// `(min kernel size, min quasi-kernel size)` when the smallest kernel
    /// of a source-free graph exceeds half the vertices.
    pub extremal: Option<(usize, usize)>,
}

impl Analysis {
    fn fail(&mut self, kind: FailureKind, reason: impl Into<String>, witness: &VertexSet) {
        self.failures.push((kind, reason.into(), witness.to_vec()));
        if !kind.is_finding() {
            self.tally.violations += 1;
        }
    }

    pub fn matched(&self) -> bool {
        self.tally.matched == 1
    }
}

/// Runs every applicable pipeline on `g`. Requires `g.n() <= RANDOM_CAP`.
pub fn analyze(g: &Digraph, filters: &BTreeSet<Filter>, verification: bool) -> Analysis {
    let n = g.n();
    let limits = SolveLimits::default();
    let mut a = Analysis::default();
    a.tally.scanned = 1;

    let source_free = g.is_source_free();
    let odd_cycle = has_odd_directed_cycle(g);
    let kernels: Vec<VertexSet> = if verification {
        enumerate_kernels(g, &limits).expect("scan sizes stay under the brute-force cap")
    } else {
        find_kernel(g, &limits)
            .expect("scan sizes stay under the brute-force cap")
            .into_iter()
            .collect()
    };
    let has_kernel = !kernels.is_empty();

    let passes = filters.iter().all(|f| match f {
        Filter::SourceFree => source_free,
        Filter::HasKernel => has_kernel,
        Filter::KernelFree => !has_kernel,
        Filter::OddCycleFree => !odd_cycle,
        Filter::OddCycle => odd_cycle,
    });
    if !passes {
        return a;
    }
    let t = &mut a.tally;
    t.matched = 1;
    t.source_free = source_free as u64;
    t.with_kernel = has_kernel as u64;
    t.kernel_free = !has_kernel as u64;
    t.odd_cycle_free = !odd_cycle as u64;
    t.kernel_and_odd_cycle = (has_kernel && odd_cycle) as u64;

    let min_qk = (source_free || verification)
        .then(|| min_quasi_kernel(g, &limits).expect("scan sizes stay under the brute-force cap"));

    if !odd_cycle {
        a.tally.richardson_runs += 1;
        if has_kernel {
            a.tally.richardson_passes += 1;
        } else {
            a.fail(
                FailureKind::Richardson,
                "no odd directed cycle but no kernel",
                &VertexSet::new(n),
            );
        }
    }

    if source_free {
        let q = min_qk.as_ref().expect("computed for source-free graphs");
        a.tally.conjecture_runs += 1;
        if 2 * q.len() <= n {
            a.tally.conjecture_passes += 1;
        } else {
            a.fail(
                FailureKind::Conjecture,
                format!("minimum quasi-kernel has {} > {} vertices", q.len(), n / 2),
                q,
            );
        }
    }

    if source_free && has_kernel {
        let k = &kernels[0];
        if 2 * k.len() > n {
            let q = min_qk.as_ref().expect("computed for source-free graphs");
            a.extremal = Some((k.len(), q.len()));
        }
        a.tally.theorem_runs += 1;
        let options = ShrinkOptions { verify: verification };
        match shrink_kernel(g, k, options) {
            Ok(cert) => {
                a.tally.removals += cert.removals.len() as u64;
                a.tally.fallback_removals += cert.fallback_steps(g) as u64;
                let mut sound = true;
                if verification {
                    match verify_certificate(g, &cert) {
                        Ok(()) => a.tally.certificates_verified += 1,
                        Err(e) => {
                            sound = false;
                            a.fail(FailureKind::Certificate, e.to_string(), &cert.final_set);
                        }
                    }
                }
                if sound {
                    a.tally.theorem_passes += 1;
                }
                if let Some(q) = &min_qk {
                    a.tally.ordering_checks += 1;
                    let fin = cert.final_set.len();
                    if !(q.len() <= fin && fin <= k.len()) {
                        a.fail(
                            FailureKind::Ordering,
                            format!(
                                "sizes min-qk {} / shrink {} / kernel {} out of order",
                                q.len(),
                                fin,
                                k.len()
                            ),
                            &cert.final_set,
                        );
                    }
                }
            }
            Err(e) => a.fail(FailureKind::Theorem, e.to_string(), k),
        }
    }

    let chv = chvatal_quasi_kernel(g);
    a.tally.chvatal_runs += 1;
    match quasi_kernel_violation(g, &chv).expect("same universe") {
        None => a.tally.chvatal_passes += 1,
        Some(why) => a.fail(FailureKind::Chvatal, why.to_string(), &chv),
    }
    if let Some(q) = &min_qk {
        a.tally.ordering_checks += 1;
        if q.len() > chv.len() {
            a.fail(
                FailureKind::Ordering,
                format!("min-qk {} larger than constructed {}", q.len(), chv.len()),
                &chv,
            );
        }
    }

    if verification {
        check_lemmas(g, &kernels, &mut a);
    }
    a
}

fn check_lemmas(g: &Digraph, kernels: &[VertexSet], a: &mut Analysis) {
    let n = g.n();
    for k in kernels {
        // kernel => inward dominated quasi-kernel
        a.tally.lemma1_checks += 1;
        let qk = quasi_kernel_violation(g, k).expect("same universe");
        let inward = inward_domination_violation(g, k).expect("same universe");
        if let Some(why) = qk.or(inward) {
            a.fail(FailureKind::Lemma1, why.to_string(), k);
        }
        check_epon_monotonicity(g, k, a);
    }

    // successful injections certify 2|S| <= n
    let mut candidates: Vec<u64> = Vec::new();
    if n <= 6 {
        candidates.extend(0..1u64 << n);
    } else {
        for k in kernels {
            let mask = k.mask();
            let mut sub = mask;
            loop {
                candidates.push(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
    }
    for mask in candidates {
        let s = VertexSet::from_mask(n, mask);
        if let Injection::Total(map) = epon_injection(g, &s).expect("same universe") {
            a.tally.lemma3_checks += 1;
            let defect = map.check(g, &s).expect("same universe");
            if let Some(d) = defect {
                a.fail(FailureKind::Lemma3, d.to_string(), &s);
            } else if 2 * s.len() > n {
                a.fail(
                    FailureKind::Lemma3,
                    format!("injection on {} members of a {n}-vertex graph", s.len()),
                    &s,
                );
            }
        }
    }
}

/// For all `S ⊆ T ⊆ K` and `u ∈ S`: every EPON of `u` w.r.t. `T` is one
/// w.r.t. `S`. EPONs of each `(T, u)` are computed once and compared
/// pairwise.
fn check_epon_monotonicity(g: &Digraph, k: &VertexSet, a: &mut Analysis) {
    let n = g.n();
    let kmask = k.mask();
    let mut table: HashMap<(u64, VertexId), VertexSet> = HashMap::new();
    let mut t = kmask;
    loop {
        let tset = VertexSet::from_mask(n, t);
        for u in &tset {
            let e = epons(g, &tset, u).expect("member of its own set");
            if !e.is_disjoint(&tset) {
                a.fail(FailureKind::Lemma2, format!("EPON of {u} inside the set"), &tset);
            }
            table.insert((t, u), e);
        }
        if t == 0 {
            break;
        }
        t = (t - 1) & kmask;
    }
    for (&(t, u), bigger) in &table {
        let mut s = t;
        loop {
            if s >> u & 1 == 1 {
                a.tally.lemma2_checks += 1;
                if !bigger.is_subset(&table[&(s, u)]) {
                    let tset = VertexSet::from_mask(n, t);
                    a.fail(
                        FailureKind::Lemma2,
                        format!("EPONs of {u} w.r.t. {{{tset}}} not inherited by a subset"),
                        &VertexSet::from_mask(n, s),
                    );
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
    }
}

/// The `index`-th random sample for `n` under `config`.
pub fn sample_graph(config: &ScanConfig, n: usize, index: u64) -> Digraph {
    let seed = derive_seed(config.seed, n as u64, index);
    if n >= 2 {
        generate(GeneratorKind::RandomSourceFree, n, seed, config.arc_prob)
            .expect("validated probability and n >= 2")
    } else {
        random_digraph(n, seed, config.arc_prob)
    }
}

fn graph_at(config: &ScanConfig, n: usize, item: u64) -> (Digraph, Option<u64>) {
    match config.mode {
        ScanMode::Exhaustive => (Digraph::from_code_u64(n, item), Some(item)),
        ScanMode::Random => (sample_graph(config, n, item), None),
    }
}

fn scan_block(config: &ScanConfig, n: usize, lo: u64, hi: u64) -> SearchReport {
    let mut part = SearchReport::default();
    let mut tally = NTally::default();
    for item in lo..hi {
        let (g, code) = graph_at(config, n, item);
        let a = analyze(&g, &config.filters, config.verification);
        tally += a.tally;
        if !a.matched() {
            continue;
        }
        let encoding = || match code {
            Some(c) => GraphEncoding::from_u64(n, c),
            None => g.encoding(),
        };
        if config.collect_matches {
            part.matches.push(encoding());
        }
        for (kind, reason, witness) in a.failures {
            part.counterexamples.push(Counterexample { encoding: encoding(), kind, reason, witness });
        }
        if let Some((min_kernel_size, min_quasi_kernel_size)) = a.extremal {
            part.extremal.push(ExtremalExample {
                encoding: encoding(),
                min_kernel_size,
                min_quasi_kernel_size,
            });
        }
    }
    part.per_n.insert(n, tally);
    part
}

/// Single-threaded scan of the configured shard.
pub fn scan(config: &ScanConfig) -> Result<SearchReport, ScanError> {
    scan_with_threads(config, 1)
}

/// Scan spread over `threads` workers; the report does not depend on the
/// thread count.
pub fn scan_with_threads(config: &ScanConfig, threads: usize) -> Result<SearchReport, ScanError> {
    config.validate()?;
    let start = Instant::now();
    let mut blocks = Vec::new();
    for n in config.n_min..=config.n_max {
        let (lo, hi) = config.shard.range(config.items(n));
        let mut at = lo;
        // keep an entry for n even when the shard is empty
        blocks.push((n, at, at));
        while at < hi {
            let end = (at + BLOCK).min(hi);
            blocks.push((n, at, end));
            at = end;
        }
    }

    let run = || -> Vec<SearchReport> {
        blocks
            .par_iter()
            .map(|&(n, lo, hi)| scan_block(config, n, lo, hi))
            .collect()
    };
    let parts = if threads <= 1 {
        blocks
            .iter()
            .map(|&(n, lo, hi)| scan_block(config, n, lo, hi))
            .collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| ScanError::InvalidConfig(format!("thread pool: {e}")))?
            .install(run)
    };

    let mut report = SearchReport {
        config_hash: config.hash(),
        shard: coverage_of(config.shard),
        ..Default::default()
    };
    for part in parts {
        report.absorb(part);
    }
    report.normalize();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Source-free digraphs whose every kernel has more than half the vertices.
pub fn find_extremal_kernels(
    n_min: usize,
    n_max: usize,
    allow_n6: bool,
) -> Result<SearchReport, ScanError> {
    let mut config = ScanConfig::exhaustive(n_min, n_max)
        .with_filters([Filter::SourceFree, Filter::HasKernel]);
    config.verification = false;
    config.allow_n6 = allow_n6;
    scan(&config)
}

/// Re-runs a recorded failure from its encoding alone; true when a failure
/// of the same kind reappears.
pub fn recheck_counterexample(c: &Counterexample) -> bool {
    let Ok(g) = c.encoding.to_digraph() else {
        return false;
    };
    analyze(&g, &BTreeSet::new(), true)
        .failures
        .iter()
        .any(|(kind, _, _)| *kind == c.kind)
}

/// Independently re-derives an extremal entry: source-free, every kernel
/// larger than half the vertices, and the recorded minimum sizes.
pub fn recheck_extremal(e: &ExtremalExample) -> bool {
    let Ok(g) = e.encoding.to_digraph() else {
        return false;
    };
    let limits = SolveLimits::default();
    let (Ok(kernels), Ok(q)) = (enumerate_kernels(&g, &limits), min_quasi_kernel(&g, &limits))
    else {
        return false;
    };
    g.is_source_free()
        && !kernels.is_empty()
        && kernels.iter().all(|k| 2 * k.len() > g.n())
        && kernels[0].len() == e.min_kernel_size
        && q.len() == e.min_quasi_kernel_size
}
