use std::fs;
use std::io::Read;
use std::path::Path;

use serde_json::json;

use qkernel::domination::{
    independence_violation, inward_domination_violation, kernel_violation,
    quasi_kernel_violation,
};
use qkernel::explorer::{
    append_checkpoint, completed_shards, scan_with_threads, Filter, ScanConfig, ScanError,
    SearchReport,
};
use qkernel::solvers::{CertificateError, Precondition};
use qkernel::{
    chvatal_quasi_kernel, find_kernel, generate, min_quasi_kernel, parse_edge_list,
    serialize_edge_list, shrink_kernel, to_dot, verify_certificate, Digraph, GraphError,
    ShrinkCertificate, ShrinkError, ShrinkOptions, SolveLimits, VertexSet,
};

use crate::{Cli, Command, GraphFormat, Property, SolveTarget};

pub const OK: u8 = 0;
pub const FAILS: u8 = 1;
pub const USAGE: u8 = 2;
pub const CAP: u8 = 3;

/// An early exit: diagnostic for stderr plus exit code.
struct Exit(u8, String);

impl From<GraphError> for Exit {
    fn from(e: GraphError) -> Exit {
        let code = match e {
            GraphError::CapExceeded { .. } | GraphError::TimeBudgetExceeded(_) => CAP,
            _ => USAGE,
        };
        Exit(code, e.to_string())
    }
}

impl From<ScanError> for Exit {
    fn from(e: ScanError) -> Exit {
        let code = match e {
            ScanError::CapExceeded { .. } => CAP,
            _ => USAGE,
        };
        Exit(code, e.to_string())
    }
}

pub fn run(cli: &Cli) -> u8 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(Exit(code, message)) => {
            eprintln!("error: {message}");
            code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<u8, Exit> {
    let json = cli.global.json;
    match &cli.command {
        Command::Check { file, property, set } => check(&read_graph(file)?, *property, set, json),
        Command::Solve { file, what, dot } => solve(&read_graph(file)?, *what, *dot, json),
        Command::Shrink { file, kernel, trace_out } => shrink(
            &read_graph(file)?,
            kernel.as_deref(),
            trace_out.as_deref(),
            cli.global.verify,
            json,
        ),
        Command::Search { .. } => search(cli),
        Command::Gen { kind, n, seed, arc_prob, out, format } => {
            let g = generate(*kind, *n, *seed, *arc_prob)?;
            let text = match format {
                GraphFormat::EdgeList => serialize_edge_list(&g),
                GraphFormat::Dot => to_dot(&g, &VertexSet::new(g.n())),
            };
            write_output(out.as_deref(), &text)?;
            Ok(OK)
        }
        Command::VerifyCert { file, certificate } => {
            verify_cert(&read_graph(file)?, certificate, json)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Exit> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Exit(USAGE, format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Exit(USAGE, format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Digraph, Exit> {
    let text = read_text(path)?;
    parse_edge_list(&text).map_err(|e| Exit(USAGE, format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Exit> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| Exit(USAGE, format!("{}: {e}", p.display())))
        }
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_set(g: &Digraph, text: &str) -> Result<VertexSet, Exit> {
    let mut ids = Vec::new();
    for field in text.split(',').map(str::trim).filter(|f| !f.is_empty()) {
        let v: usize = field
            .parse()
            .map_err(|_| Exit(USAGE, format!("invalid vertex id {field:?}")))?;
        ids.push(v);
    }
    VertexSet::try_from_iter(g.n(), ids)
        .map_err(|v| Exit(USAGE, format!("vertex {v} out of range for n = {}", g.n())))
}

fn check(g: &Digraph, property: Property, set: &str, json: bool) -> Result<u8, Exit> {
    let s = parse_set(g, set)?;
    let violation: Option<String> = match property {
        Property::Independent => independence_violation(g, &s)?.map(|v| v.to_string()),
        Property::Kernel => kernel_violation(g, &s)?.map(|v| v.to_string()),
        Property::QuasiKernel => quasi_kernel_violation(g, &s)?.map(|v| v.to_string()),
        Property::InwardDominated => inward_domination_violation(g, &s)?.map(|v| v.to_string()),
        Property::SourceFree => (0..g.n())
            .find(|&v| g.inn(v).is_empty())
            .map(|v| format!("vertex {v} has no in-neighbor")),
    };
    if json {
        println!(
            "{}",
            json!({ "holds": violation.is_none(), "violation": violation })
        );
    } else {
        match &violation {
            None => println!("true"),
            Some(why) => println!("false: {why}"),
        }
    }
    Ok(if violation.is_none() { OK } else { FAILS })
}

fn solve(g: &Digraph, what: SolveTarget, dot: bool, json: bool) -> Result<u8, Exit> {
    let limits = SolveLimits::default();
    let result = match what {
        SolveTarget::Kernel => find_kernel(g, &limits)?,
        SolveTarget::MinQk => Some(min_quasi_kernel(g, &limits)?),
        SolveTarget::QkChvatal => Some(chvatal_quasi_kernel(g)),
    };
    if dot {
        let highlight = result.clone().unwrap_or_else(|| VertexSet::new(g.n()));
        print!("{}", to_dot(g, &highlight));
    } else if json {
        println!("{}", json!({ "result": result }));
    } else {
        match &result {
            Some(set) => println!("{set}"),
            None => println!("none"),
        }
    }
    Ok(if result.is_some() { OK } else { FAILS })
}

fn shrink(
    g: &Digraph,
    kernel: Option<&str>,
    trace_out: Option<&Path>,
    verify: bool,
    json: bool,
) -> Result<u8, Exit> {
    let k = match kernel {
        Some(text) => parse_set(g, text)?,
        None => match find_kernel(g, &SolveLimits::default())? {
            Some(k) => k,
            None => {
                println!("precondition failed: no kernel exists");
                return Ok(FAILS);
            }
        },
    };
    let cert = match shrink_kernel(g, &k, ShrinkOptions { verify }) {
        Ok(cert) => cert,
        Err(ShrinkError::Graph(e)) => return Err(e.into()),
        Err(ShrinkError::PreconditionFailed(p)) => {
            let short = match p {
                Precondition::NotSourceFree(_) => "not source-free",
                Precondition::NotAKernel(_) => "not a kernel",
            };
            if json {
                println!("{}", json!({ "error": "precondition_failed", "detail": p.to_string() }));
            } else {
                println!("precondition failed: {short}");
            }
            eprintln!("{p}");
            return Ok(FAILS);
        }
        Err(ShrinkError::InvariantViolation { violation, certificate }) => {
            if let Some(path) = trace_out {
                write_output(Some(path), &certificate.to_json())?;
            }
            println!("invariant violated: {violation}");
            return Ok(FAILS);
        }
    };
    if let Some(path) = trace_out {
        write_output(Some(path), &format!("{}\n", cert.to_json()))?;
    }
    if json {
        println!("{}", cert.to_json());
    } else {
        println!(
            "{} (size {} ≤ {})",
            cert.final_set,
            cert.final_set.len(),
            g.n() / 2
        );
    }
    Ok(OK)
}

fn parse_range(text: &str) -> Result<(usize, usize), Exit> {
    let bad = || Exit(USAGE, format!("invalid vertex range {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..") {
        Some((lo, hi)) => Ok((num(lo)?, num(hi.trim_start_matches('='))?)),
        None => {
            let n = num(text)?;
            Ok((n, n))
        }
    }
}

fn search(cli: &Cli) -> Result<u8, Exit> {
    let Command::Search {
        n_range,
        mode,
        filters,
        samples,
        seed,
        arc_prob,
        report,
        csv,
        shard,
        checkpoint,
        allow_n6,
        no_verify,
        collect_matches,
    } = &cli.command
    else {
        unreachable!("dispatched on Search");
    };
    let (lo, hi) = parse_range(n_range)?;
    let filters = filters
        .split(',')
        .map(str::trim)
        .filter(|f| !f.is_empty())
        .map(|f| f.parse::<Filter>().map_err(|e| Exit(USAGE, e)))
        .collect::<Result<_, _>>()?;
    let mut config = ScanConfig::exhaustive(lo, hi);
    config.mode = *mode;
    config.sample_count = *samples;
    config.seed = *seed;
    config.arc_prob = *arc_prob;
    config.filters = filters;
    config.verification = !no_verify;
    config.collect_matches = *collect_matches;
    config.allow_n6 = *allow_n6;
    if let Some(shard) = shard {
        config.shard = *shard;
    }
    config.validate()?;
    if config.n_max >= 6 && config.mode == qkernel::explorer::ScanMode::Exhaustive {
        eprintln!("warning: exhaustive n = 6 visits 2^30 digraphs and takes hours");
    }

    let hash = config.hash();
    if let Some(path) = checkpoint {
        let done = completed_shards(path, config.shard.total, &hash)
            .map_err(|e| Exit(USAGE, format!("{}: {e}", path.display())))?;
        if done.contains(&config.shard.index) {
            eprintln!(
                "shard {}/{} already recorded in {}",
                config.shard.index,
                config.shard.total,
                path.display()
            );
            return Ok(OK);
        }
    }

    let result = scan_with_threads(&config, cli.global.threads)?;
    if let Some(path) = report {
        write_output(Some(path), &format!("{}\n", result.to_json()))?;
    }
    if let Some(path) = csv {
        write_output(Some(path), &result.to_csv())?;
    }
    if let Some(path) = checkpoint {
        append_checkpoint(path, config.shard, &hash)
            .map_err(|e| Exit(USAGE, format!("{}: {e}", path.display())))?;
    }
    if cli.global.json {
        if report.is_none() {
            println!("{}", result.to_json());
        }
    } else {
        print_summary(&result);
    }
    for c in result.violations() {
        eprintln!("violation [{}] {}: {}", c.kind, c.encoding, c.reason);
    }
    Ok(if result.has_violations() { FAILS } else { OK })
}

fn print_summary(report: &SearchReport) {
    for (n, t) in &report.per_n {
        println!(
            "n={n} scanned={} matched={} source_free={} with_kernel={} theorem={}/{} conjecture={}/{} chvatal={}/{} violations={}",
            t.scanned,
            t.matched,
            t.source_free,
            t.with_kernel,
            t.theorem_passes,
            t.theorem_runs,
            t.conjecture_passes,
            t.conjecture_runs,
            t.chvatal_passes,
            t.chvatal_runs,
            t.violations
        );
    }
    println!(
        "counterexamples={} extremal={} elapsed_ms={}",
        report.findings().count(),
        report.extremal.len(),
        report.elapsed_ms
    );
}

fn verify_cert(g: &Digraph, path: &Path, json: bool) -> Result<u8, Exit> {
    let text = read_text(path)?;
    let cert = ShrinkCertificate::from_json(&text).map_err(|e| match e {
        CertificateError::Json(e) => Exit(USAGE, format!("{}: {e}", path.display())),
        CertificateError::Graph(e) => Exit(USAGE, format!("{}: {e}", path.display())),
    })?;
    let outcome = verify_certificate(g, &cert);
    if json {
        let (check, detail) = match &outcome {
            Ok(()) => (None, None),
            Err(m) => (Some(m.check.to_string()), Some(m.detail.clone())),
        };
        println!("{}", json!({ "valid": outcome.is_ok(), "check": check, "detail": detail }));
    } else {
        match &outcome {
            Ok(()) => println!("ok"),
            Err(m) => println!("mismatch at {}: {}", m.check, m.detail),
        }
    }
    Ok(if outcome.is_ok() { OK } else { FAILS })
}
