//! Command-line front end: parses ideal expressions, runs closures, growth
//! sweeps and lemma checks, and renders the results as CSV, markdown or JSON.
//!
//! Exit codes: 0 when every checked containment holds, 1 when a verification
//! fails, 2 on usage or parse errors.

mod table;

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use monoclosure::lemmas::sample_shifts;
use monoclosure::{
    counterexample_check, growth_report, hull_membership, integral_closure, paper_constant, parse_expr, parse_monomial,
    power_witness, rees_gap_check, run_oracle_check, verify_intersection_lemma, verify_radical_swap, ExponentVector,
    GrowthReport, HullOutcome, MonomialIdeal, OracleConfig,
};
use serde_json::{json, Value};

use table::opt;
pub use table::{Format, Table};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "MONOCLOSURE_WORKERS";

#[derive(Debug, Clone, Parser)]
#[command(name = "monoclosure", version, about = "Integral closures of monomial ideals and growth of closure(I + J^n)")]
pub struct Cli {
    /// Number of variables; inferred from the highest variable index when absent.
    #[arg(long, global = true)]
    pub dim: Option<usize>,

    #[arg(long, value_enum, global = true, default_value_t = Format::Markdown)]
    pub format: Format,

    /// Largest power tried by the power-witness search.
    #[arg(long, global = true, default_value_t = 60)]
    pub kmax: u64,

    /// Worker threads [env: MONOCLOSURE_WORKERS; default: available parallelism].
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decide whether a monomial lies in the integral closure, with certificates.
    Member { ideal: String, monomial: String },
    /// Minimal generators of the integral closure.
    Closure { ideal: String },
    /// Tabulate f(n), the largest k with closure(I + J^n) ⊆ closure(I) + J^k.
    Growth {
        ideal: String,
        #[arg(long)]
        n: NRange,
        /// Claimed constant c; rows are verified against ⌊n/c⌋.
        #[arg(long)]
        c: Option<u64>,
        /// The ideal J (default: the maximal ideal m).
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Check one of the containment statements on concrete instances.
    Verify {
        #[command(subcommand)]
        lemma: Lemma,
    },
    /// Compare the LP closure test with the power-witness search on random ideals.
    OracleCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 12)]
        max_degree: u64,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum Lemma {
    /// Growth against m with the explicit constant a1···as of a pure-power ideal.
    Constant {
        ideal: String,
        #[arg(long)]
        n: NRange,
    },
    /// Bound for J ∩ K from bounds for J and K (both integrally closed).
    Intersection {
        first: String,
        second: String,
        #[arg(long)]
        n: NRange,
    },
    /// Growth against J versus against its radical.
    RadicalSwap {
        ideal: String,
        modulus: String,
        #[arg(long)]
        n: NRange,
    },
    /// x*y^(n/2) is integral over (x^2) + m^n but outside (x^2, x*y^(n-k-1), y^(n-k)).
    Counterexample {
        /// Even n, or a range of which the even values are used.
        #[arg(long)]
        n: NRange,
        /// Shift k; three values per n are sampled when absent.
        #[arg(long)]
        k: Option<u64>,
    },
    /// The gap n - f(n) for a radical ideal stays bounded.
    Rees {
        ideal: String,
        #[arg(long)]
        n: NRange,
    },
}

/// `A..B` (inclusive) or a single `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub from: u64,
    pub to: u64,
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("invalid integer {t:?}"));
        let (from, to) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if from == 0 || from > to {
            return Err(format!("range {s} must satisfy 1 <= A <= B"));
        }
        Ok(Self { from, to })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.from, self.to)
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<monoclosure::Error> for Failure {
    fn from(e: monoclosure::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<Vec<String>, Failure>;

/// Runs the command, writing the report to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let workers = match resolve_workers(cli.workers) {
        Ok(w) => w,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    if workers == 0 {
        let _ = writeln!(err, "error: --workers must be at least 1");
        return 2;
    }
    if cli.kmax == 0 {
        let _ = writeln!(err, "error: --kmax must be at least 1");
        return 2;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| execute(cli, &mut buf));
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    match result {
        Ok(failures) if failures.is_empty() => 0,
        Ok(failures) => {
            for f in failures {
                let _ = writeln!(err, "verification failed: {f}");
            }
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Flag, then environment, then available parallelism.
fn resolve_workers(flag: Option<usize>) -> Result<usize, String> {
    if let Some(w) = flag {
        return Ok(w);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{WORKERS_ENV}={v:?} is not a worker count")),
        Err(_) => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

/// Parses several expressions over one common dimension.
fn parse_ideals(texts: &[&str], dim: Option<usize>) -> Result<Vec<MonomialIdeal>, Failure> {
    let exprs = texts.iter().map(|t| parse_expr(t)).collect::<Result<Vec<_>, _>>()?;
    let dim = match dim {
        Some(d) => d,
        None => exprs.iter().map(|e| e.max_index()).max().unwrap_or(0),
    };
    if dim == 0 {
        return Err(Failure::Usage("cannot infer the number of variables; pass --dim".into()));
    }
    Ok(exprs.iter().map(|e| e.eval(dim)).collect::<Result<Vec<_>, _>>()?)
}

fn mono(v: &ExponentVector) -> String {
    v.to_monomial_string()
}

fn emit(format: Format, out: &mut dyn Write, preamble: &[String], table: &Table, json: Value) -> io::Result<()> {
    match format {
        Format::Csv => table.write_csv(out),
        Format::Markdown => {
            for line in preamble {
                writeln!(out, "{line}")?;
            }
            if !preamble.is_empty() {
                writeln!(out)?;
            }
            table.write_markdown(out)
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Member { ideal, monomial } => member(cli, ideal, monomial, out),
        Command::Closure { ideal } => closure(cli, ideal, out),
        Command::Growth { ideal, n, c, modulus } => growth(cli, ideal, *n, *c, modulus.as_deref(), out),
        Command::Verify { lemma } => match lemma {
            Lemma::Constant { ideal, n } => constant(cli, ideal, *n, out),
            Lemma::Intersection { first, second, n } => intersection(cli, first, second, *n, out),
            Lemma::RadicalSwap { ideal, modulus, n } => radical_swap(cli, ideal, modulus, *n, out),
            Lemma::Counterexample { n, k } => counterexample(cli, *n, *k, out),
            Lemma::Rees { ideal, n } => rees(cli, ideal, *n, out),
        },
        Command::OracleCheck { seed, cases, max_degree } => oracle(cli, *seed, *cases, *max_degree, out),
    }
}

fn member(cli: &Cli, ideal: &str, monomial: &str, out: &mut dyn Write) -> Outcome {
    let wrapped = format!("({monomial})");
    let parsed = parse_ideals(&[ideal, &wrapped], cli.dim)?;
    let ideal = &parsed[0];
    let beta = parse_monomial(monomial, Some(ideal.dim()))?;
    let cert = hull_membership(ideal, &beta)?;
    let witness = power_witness(ideal, &beta, cli.kmax)?;

    let mut t = Table::new(&["field", "value"]);
    let mut row = |k: &str, v: String| t.push(vec![k.to_string(), v]);
    row("ideal", ideal.to_string());
    row("monomial", mono(&beta));
    row("in_closure", cert.is_feasible().to_string());
    row("vertices", cert.vertices.iter().map(mono).collect::<Vec<_>>().join(" "));
    match &cert.outcome {
        HullOutcome::Feasible { weights, slacks } => {
            row("weights", weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "));
            row("slacks", slacks.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "));
        }
        HullOutcome::Infeasible { normal, level } => {
            row("separating_normal", normal.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "));
            row("separating_level", level.to_string());
        }
    }
    row("certificate_valid", cert.validate().to_string());
    match &witness {
        Some(w) => {
            row("power_witness_k", w.k.to_string());
            row("power_witness_product", w.product().map(|p| mono(&p)).unwrap_or_default());
        }
        None => {
            row("power_witness_k", format!("none up to {}", cli.kmax));
            row("power_witness_product", String::new());
        }
    }
    let json = json!({
        "ideal": ideal.to_string(),
        "monomial": mono(&beta),
        "exponents": beta,
        "certificate": cert,
        "certificate_valid": cert.validate(),
        "power_witness": witness,
        "kmax": cli.kmax,
    });
    emit(cli.format, out, &[], &t, json)?;

    let mut failures = Vec::new();
    if !cert.validate() {
        failures.push(format!("certificate for {} failed re-validation", mono(&beta)));
    }
    if witness.is_some() && !cert.is_feasible() {
        failures.push(format!("power witness found for {} but the hull test is infeasible", mono(&beta)));
    }
    Ok(failures)
}

fn closure(cli: &Cli, ideal: &str, out: &mut dyn Write) -> Outcome {
    let ideal = parse_ideals(&[ideal], cli.dim)?.remove(0);
    let closed = integral_closure(&ideal);
    let mut t = Table::new(&["generator", "degree"]);
    for g in closed.generators() {
        t.push(vec![mono(g), g.degree().to_string()]);
    }
    match cli.format {
        Format::Markdown => writeln!(out, "{}", closed.generators_string())?,
        Format::Csv => t.write_csv(out)?,
        Format::Json => {
            let json = json!({
                "ideal": ideal.to_string(),
                "closure": closed.to_string(),
                "generators": closed.generators(),
                "integrally_closed": closed == ideal.materialize(),
            });
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out)?;
        }
    }
    Ok(Vec::new())
}

fn growth_table(report: &GrowthReport) -> Table {
    let mut t = Table::new(&["n", "f_n", "floor_n_over_c", "verified"]);
    for r in &report.rows {
        t.push(vec![r.n.to_string(), r.f.to_string(), opt(r.floor_n_over_c), opt(r.verified)]);
    }
    t
}

fn growth_failures(report: &GrowthReport) -> Vec<String> {
    report
        .failures()
        .map(|r| {
            format!(
                "n={}: f(n)={} < floor(n/c)={}; generator {} of the closure escapes",
                r.n,
                r.f,
                opt(r.floor_n_over_c),
                r.witness.as_ref().map(mono).unwrap_or_default()
            )
        })
        .collect()
}

fn emit_growth(cli: &Cli, report: &GrowthReport, n: NRange, out: &mut dyn Write) -> io::Result<()> {
    let preamble = vec![
        format!("ideal: {}", report.ideal),
        format!("modulus: {}", report.modulus),
        format!("closure: {}", report.closure),
        format!("claimed c: {}", opt(report.claimed_c)),
        format!("empirical c over n in {n} (tested range only): {}", report.empirical_c),
    ];
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "f_n": r.f,
                "floor_n_over_c": r.floor_n_over_c,
                "verified": r.verified,
                "witness": r.witness.as_ref().map(mono),
            })
        })
        .collect();
    let json = json!({
        "ideal": report.ideal.to_string(),
        "modulus": report.modulus.to_string(),
        "closure": report.closure.to_string(),
        "claimed_c": report.claimed_c,
        "empirical_c": report.empirical_c,
        "rows": rows,
    });
    emit(cli.format, out, &preamble, &growth_table(report), json)
}

fn growth(cli: &Cli, ideal: &str, n: NRange, c: Option<u64>, modulus: Option<&str>, out: &mut dyn Write) -> Outcome {
    let texts: Vec<&str> = std::iter::once(ideal).chain(modulus).collect();
    let parsed = parse_ideals(&texts, cli.dim)?;
    let ideal = &parsed[0];
    let modulus = parsed.get(1).cloned().unwrap_or_else(|| MonomialIdeal::maximal(ideal.dim()));
    let report = growth_report(ideal, &modulus, n.from, n.to, c)?;
    emit_growth(cli, &report, n, out)?;
    Ok(growth_failures(&report))
}

fn constant(cli: &Cli, ideal: &str, n: NRange, out: &mut dyn Write) -> Outcome {
    let ideal = parse_ideals(&[ideal], cli.dim)?.remove(0);
    let c = paper_constant(&ideal)
        .ok_or_else(|| Failure::Usage(format!("{ideal} is not generated by pure powers of distinct variables")))?;
    let report = growth_report(&ideal, &MonomialIdeal::maximal(ideal.dim()), n.from, n.to, Some(c))?;
    emit_growth(cli, &report, n, out)?;
    Ok(growth_failures(&report))
}

fn intersection(cli: &Cli, first: &str, second: &str, n: NRange, out: &mut dyn Write) -> Outcome {
    let parsed = parse_ideals(&[first, second], cli.dim)?;
    let rep = verify_intersection_lemma(&parsed[0], &parsed[1], n.from, n.to)?;
    let mut t = Table::new(&["n", "f_n", "lemma_bound", "derived_bound", "holds"]);
    for r in &rep.rows {
        t.push(vec![
            r.n.to_string(),
            r.f.to_string(),
            r.lemma_bound.to_string(),
            r.derived_bound.to_string(),
            r.holds.to_string(),
        ]);
    }
    let preamble = vec![
        format!("J: {}", parsed[0]),
        format!("K: {}", parsed[1]),
        format!("J ∩ K: {}", rep.intersection),
        format!("c(J) = {}, c(K) = {}, Artin-Rees offset = {}", rep.c_first, rep.c_second, rep.artin_rees_offset),
        format!("derived c = {}, empirical c(J ∩ K) = {}", rep.derived_c, rep.empirical_c),
    ];
    let mut json = serde_json::to_value(&rep)?;
    json["intersection"] = Value::String(rep.intersection.to_string());
    emit(cli.format, out, &preamble, &t, json)?;
    Ok(rep
        .rows
        .iter()
        .filter(|r| !r.holds)
        .map(|r| {
            format!("n={}: f(n)={} below lemma bound {} or derived bound {}", r.n, r.f, r.lemma_bound, r.derived_bound)
        })
        .collect())
}

fn radical_swap(cli: &Cli, ideal: &str, modulus: &str, n: NRange, out: &mut dyn Write) -> Outcome {
    let parsed = parse_ideals(&[ideal, modulus], cli.dim)?;
    let rep = verify_radical_swap(&parsed[0], &parsed[1], n.from, n.to)?;
    let mut t = Table::new(&["n", "f_radical", "g_modulus", "forward", "backward"]);
    for r in &rep.rows {
        t.push(vec![r.n.to_string(), r.f.to_string(), r.g.to_string(), r.forward.to_string(), r.backward.to_string()]);
    }
    let preamble = vec![
        format!("I: {}", parsed[0]),
        format!("J: {}", parsed[1]),
        format!("K = rad(J): {}", rep.radical),
        format!("k with K^k ⊆ J: {}", rep.k),
        format!("empirical c against K: {}, against J: {}", rep.rate_radical, rep.rate_modulus),
    ];
    let mut json = serde_json::to_value(&rep)?;
    json["radical"] = Value::String(rep.radical.to_string());
    emit(cli.format, out, &preamble, &t, json)?;
    Ok(rep
        .rows
        .iter()
        .filter(|r| !(r.forward && r.backward))
        .map(|r| format!("n={}: forward={} backward={}", r.n, r.forward, r.backward))
        .collect())
}

fn counterexample(cli: &Cli, n: NRange, k: Option<u64>, out: &mut dyn Write) -> Outcome {
    let mut cases = Vec::new();
    for n in (n.from..=n.to).filter(|v| v % 2 == 0) {
        match k {
            Some(k) => cases.push((n, k)),
            None => cases.extend(sample_shifts(n).into_iter().map(|k| (n, k))),
        }
    }
    if cases.is_empty() {
        return Err(Failure::Usage("no even n >= 4 in range".into()));
    }
    let mut t = Table::new(&["n", "k", "monomial", "integral", "in_shifted", "holds"]);
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for (n, k) in cases {
        let rep = counterexample_check(n, k)?;
        t.push(vec![
            n.to_string(),
            k.to_string(),
            mono(&rep.point),
            rep.integral.to_string(),
            rep.in_shifted.to_string(),
            rep.holds().to_string(),
        ]);
        if !rep.holds() {
            failures.push(format!("n={n}, k={k}: monomial {}", mono(&rep.point)));
        }
        reports.push(rep);
    }
    emit(cli.format, out, &[], &t, serde_json::to_value(&reports)?)?;
    Ok(failures)
}

fn rees(cli: &Cli, ideal: &str, n: NRange, out: &mut dyn Write) -> Outcome {
    let ideal = parse_ideals(&[ideal], cli.dim)?.remove(0);
    let rep = rees_gap_check(&ideal, n.from, n.to)?;
    let mut t = Table::new(&["n", "gap"]);
    for (n, g) in &rep.gaps {
        t.push(vec![n.to_string(), g.map_or_else(|| "-inf".to_string(), |g| g.to_string())]);
    }
    let preamble = vec![
        format!("ideal: {}", rep.ideal),
        format!("gap non-increasing: {}; bounded by gap at n = {}: {}", rep.non_increasing, n.to, rep.bounded_by_last),
    ];
    let mut json = serde_json::to_value(&rep)?;
    json["ideal"] = Value::String(rep.ideal.to_string());
    emit(cli.format, out, &preamble, &t, json)?;
    Ok(if rep.holds() { Vec::new() } else { vec![format!("gap n - f(n) for {} grows on {n}", rep.ideal)] })
}

fn oracle(cli: &Cli, seed: u64, cases: usize, max_degree: u64, out: &mut dyn Write) -> Outcome {
    let config = OracleConfig { seed, cases, k_max: cli.kmax, max_degree, ..OracleConfig::default() };
    let rep = run_oracle_check(&config);
    let mut t = Table::new(&["field", "value"]);
    for (k, v) in [
        ("seed", seed.to_string()),
        ("cases", rep.cases.to_string()),
        ("points", rep.points.to_string()),
        ("both_feasible", rep.both_feasible.to_string()),
        ("both_infeasible", rep.both_infeasible.to_string()),
        ("unresolved", rep.unresolved.len().to_string()),
        ("contradictions", rep.contradictions.len().to_string()),
        ("invalid_certificates", rep.invalid_certificates.len().to_string()),
        ("max_witness_k", rep.max_k.to_string()),
    ] {
        t.push(vec![k.to_string(), v]);
    }
    let preamble: Vec<String> = rep
        .unresolved
        .iter()
        .map(|d| format!("unresolved (no witness up to k = {}): case {} {} at {}", cli.kmax, d.case, d.ideal, d.point))
        .collect();
    emit(cli.format, out, &preamble, &t, json!({ "config": config, "report": rep }))?;
    let mut failures: Vec<String> = rep
        .contradictions
        .iter()
        .map(|d| format!("case {} {}: witness found but hull infeasible at {}", d.case, d.ideal, d.point))
        .collect();
    failures.extend(
        rep.invalid_certificates
            .iter()
            .map(|d| format!("case {} {}: invalid certificate at {}", d.case, d.ideal, d.point)),
    );
    Ok(failures)
}
