//! Command-line driver.
//!
//! Every subcommand reads a graph (`--input`, DIMACS / edge-list / JSON),
//! runs one analysis, prints a short human summary, and emits a single JSON
//! document. The document goes to `--output FILE` when given (summary on
//! stdout), otherwise to stdout (summary on stderr), so piped output is
//! always exactly one JSON value.
//!
//! Floats in the JSON are rounded to 12 significant digits before printing;
//! identical inputs and flags therefore produce byte-identical documents.
//!
//! Exit codes: 0 success, 2 usage or precondition failure (bad file, bad
//! flag, cap exceeded, twin pairs where a rule forbids them), 1 internal
//! failure (solver breakdown).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use motzkin_core::convergence::{self, Status, Verdict};
use motzkin_core::graph::{io, Graph};
use motzkin_core::msform::{kkt_check, QuadForm, SimplexPoint};
use motzkin_core::sos::{self, HierarchyResult, SosCertificate, SosError};
use motzkin_core::stability;

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "motzkin", version, about = "Stability numbers, finite-convergence verdicts, and certified hierarchy bounds for graph quadratic programs", max_term_width = 100)]
struct Cli {
    /// Graph file: DIMACS (.col/.dimacs), edge list, or JSON (.json).
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Input format; default is guessed from the file name.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dimacs,
    Edges,
    Json,
}

impl FormatArg {
    fn to_format(self) -> io::Format {
        match self {
            FormatArg::Dimacs => io::Format::Dimacs,
            FormatArg::Edges => io::Format::EdgeList,
            FormatArg::Json => io::Format::Json,
        }
    }
}

fn format_name(f: io::Format) -> &'static str {
    match f {
        io::Format::Dimacs => "dimacs",
        io::Format::EdgeList => "edges",
        io::Format::Json => "json",
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormArg {
    /// Unit form: adjacency plus identity.
    Ms,
    /// Unit form of the graph with one edge deleted.
    #[value(name = "ms-e", alias = "ms-E")]
    MsE,
    /// General admissible form with prescribed edge values.
    #[value(name = "ms-B", alias = "ms-b")]
    MsB,
}

#[derive(Subcommand)]
enum Cmd {
    /// Stability number.
    Alpha,
    /// Critical edges, twin pairs, and the twin-free contraction.
    Critical,
    /// Twin pairs (adjacent vertices with identical other neighbours).
    Twins,
    /// Contract twin pairs until none remain; reports the trace.
    Contract,
    /// Theorem-based finite-convergence verdict for the chosen form.
    Decide {
        #[arg(long, value_enum, default_value_t = FormArg::Ms)]
        form: FormArg,
        /// Deleted edge for --form ms-e, written i,j.
        #[arg(long, value_name = "I,J")]
        edge: Option<String>,
        /// Edge-value file for --form ms-B: lines "i j value", values
        /// rational (3/2), decimal (1.5), or integer, all >= 1.
        #[arg(long = "B", value_name = "FILE")]
        b_file: Option<PathBuf>,
    },
    /// Solve one hierarchy level of the unit form.
    Level {
        #[arg(long)]
        r: usize,
    },
    /// Solve levels 2..=rmax of the unit form (parallel).
    Sweep {
        #[arg(long, default_value_t = sos::DEFAULT_R_MAX)]
        rmax: usize,
    },
    /// Verify a certificate file against the unit form of the graph.
    Certify {
        #[arg(long, value_name = "FILE")]
        cert: PathBuf,
    },
    /// KKT conditions of the unit form at a simplex point.
    Kkt {
        /// Point file: one coordinate per whitespace-separated token;
        /// rationals and decimals are checked exactly.
        #[arg(long, value_name = "FILE")]
        point: PathBuf,
    },
    /// Full pipeline: combinatorics, verdict, level sweep, consistency.
    Report {
        #[arg(long, default_value_t = sos::DEFAULT_R_MAX)]
        rmax: usize,
    },
}

enum CliError {
    Precondition(String),
    Internal(String),
}

impl CliError {
    fn pre(msg: impl Into<String>) -> CliError {
        CliError::Precondition(msg.into())
    }

    fn message(&self) -> &str {
        match self {
            CliError::Precondition(m) | CliError::Internal(m) => m,
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Precondition(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<motzkin_core::GraphError> for CliError {
    fn from(e: motzkin_core::GraphError) -> Self {
        CliError::pre(e.to_string())
    }
}

impl From<motzkin_core::msform::MsformError> for CliError {
    fn from(e: motzkin_core::msform::MsformError) -> Self {
        CliError::pre(e.to_string())
    }
}

impl From<convergence::ConvergenceError> for CliError {
    fn from(e: convergence::ConvergenceError) -> Self {
        CliError::pre(e.to_string())
    }
}

impl From<SosError> for CliError {
    fn from(e: SosError) -> Self {
        match e {
            SosError::Sdp(inner) => CliError::Internal(format!("solver failure: {inner}")),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::pre(format!("cannot read {}: {e}", path.display())))
}

/// Exact rational from "p/q", a decimal string, or an integer.
fn parse_exact(tok: &str) -> Option<BigRational> {
    let s = tok.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let whole: BigInt = match int {
            "" | "-" | "+" => BigInt::from(0),
            other => other.parse().ok()?,
        };
        let num: BigInt = frac.parse().ok()?;
        let den: BigInt = format!("1{}", "0".repeat(frac.len())).parse().unwrap();
        let magnitude = BigRational::from_integer(whole.clone()).abs()
            + BigRational::new(num, den);
        return Some(if negative { -magnitude } else { magnitude });
    }
    let i: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(i))
}

fn parse_edge_flag(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::pre(format!("--edge expects two vertex labels \"i,j\", got \"{s}\""));
    let (i, j) = s.split_once(',').ok_or_else(bad)?;
    let i = i.trim().parse::<usize>().map_err(|_| bad())?;
    let j = j.trim().parse::<usize>().map_err(|_| bad())?;
    Ok((i, j))
}

fn parse_b_file(text: &str, path: &Path) -> Result<Vec<((usize, usize), BigRational)>, CliError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        let bad = |what: &str| {
            CliError::pre(format!(
                "{}:{line}: expected \"i j value\" with {what}, got \"{t}\"",
                path.display()
            ))
        };
        if toks.len() != 3 {
            return Err(bad("three fields"));
        }
        let i = toks[0].parse::<usize>().map_err(|_| bad("integer labels"))?;
        let j = toks[1].parse::<usize>().map_err(|_| bad("integer labels"))?;
        let v = parse_exact(toks[2]).ok_or_else(|| bad("a rational or decimal value"))?;
        out.push(((i, j), v));
    }
    Ok(out)
}

fn parse_point_file(text: &str, n: usize) -> Result<SimplexPoint, CliError> {
    let tokens: Vec<&str> = text
        .lines()
        .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
        .collect();
    if tokens.len() != n {
        return Err(CliError::pre(format!(
            "point file has {} coordinates, the graph has {n} vertices",
            tokens.len()
        )));
    }
    let exact: Option<Vec<BigRational>> = tokens.iter().map(|t| parse_exact(t)).collect();
    let point = match exact {
        Some(coords) => SimplexPoint::from_rationals(coords)?,
        None => {
            let floats: Result<Vec<f64>, _> = tokens.iter().map(|t| t.parse::<f64>()).collect();
            let floats = floats
                .map_err(|e| CliError::pre(format!("point file has a malformed coordinate: {e}")))?;
            SimplexPoint::from_floats(floats)?
        }
    };
    Ok(point)
}

/// Rounds every float in the document to 12 significant digits so that
/// serialization is reproducible; non-finite floats are already `null`.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let f = n.as_f64().expect("checked");
            let rounded: f64 = format!("{f:.11e}").parse().expect("own format parses");
            *v = serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("own format parses");
    let mag = rounded.abs();
    if mag != 0.0 && (mag < 1e-4 || mag >= 1e6) {
        format!("{rounded:e}")
    } else {
        rounded.to_string()
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pair_list(pairs: &[(usize, usize)]) -> String {
    if pairs.is_empty() {
        return "none".to_string();
    }
    pairs.iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(" ")
}

fn to_value<T: serde::Serialize>(t: &T) -> Result<Value, CliError> {
    serde_json::to_value(t).map_err(|e| CliError::Internal(format!("serialization: {e}")))
}

fn verdict_summary(v: &Verdict) -> String {
    format!("verdict: {:?} [{}]", v.status, v.rule)
}

fn level_summary(l: &HierarchyResult) -> String {
    format!(
        "r={}: status {:?}, value {}, target {}, attained {}",
        l.r,
        l.status,
        sig12(l.value),
        sig12(l.target),
        yes_no(l.attained)
    )
}

/// The sweep-vs-verdict cross-check: a no-convergence verdict contradicts a
/// verified attaining level; everything else is consistent (non-attainment
/// within a finite sweep never refutes a finite-convergence verdict).
fn consistency(verdict: &Verdict, levels: &[HierarchyResult]) -> (bool, String) {
    let attained = levels.iter().find(|l| l.attained);
    match (verdict.status, attained) {
        (Status::NoFiniteConvergence, Some(l)) => (
            false,
            format!(
                "verdict excludes finite convergence, yet level {} attained the target with a verified certificate",
                l.r
            ),
        ),
        (Status::NoFiniteConvergence, None) => {
            (true, "no level attained the target, as the verdict predicts".to_string())
        }
        (Status::FiniteConvergence, Some(l)) => (
            true,
            format!("level {} attains the target with a verified certificate, as the verdict predicts", l.r),
        ),
        (Status::FiniteConvergence, None) => (
            true,
            "no level attained the target within the sweep; the verdict only promises some finite level".to_string(),
        ),
        (Status::UnknownByTheorem, _) => {
            (true, "no decision rule applies; the sweep carries no verdict to contradict".to_string())
        }
    }
}

fn load_graph(cli: &Cli) -> Result<(Graph, io::Format), CliError> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| CliError::pre("--input FILE is required"))?;
    let format = cli
        .format
        .map(FormatArg::to_format)
        .unwrap_or_else(|| io::Format::from_path(&path.to_string_lossy()));
    let text = read_file(path)?;
    let g = io::parse(format, &text)?;
    Ok((g, format))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (g, format) = load_graph(cli)?;

    let (command, summary, result): (&str, String, Value) = match &cli.cmd {
        Cmd::Alpha => {
            let a = stability::alpha(&g);
            ("alpha", format!("alpha = {a} (n = {}, m = {})", g.n(), g.m()), json!({ "alpha": a }))
        }
        Cmd::Critical => {
            let rep = stability::critical_report(&g);
            let summary = format!(
                "alpha = {}; critical edges: {} of {}; twin pairs: {}; contraction: {} vertices after {} deletions",
                rep.alpha,
                rep.critical_edges.len(),
                g.m(),
                rep.twin_pairs.len(),
                rep.contracted_n,
                rep.contraction_trace.len()
            );
            ("critical", summary, to_value(&rep)?)
        }
        Cmd::Twins => {
            let pairs = stability::twin_pairs(&g);
            ("twins", format!("twin pairs: {}", pair_list(&pairs)), json!({ "twin_pairs": pairs }))
        }
        Cmd::Contract => {
            let c = stability::contract_all_twins(&g);
            let summary = format!(
                "contracted {} -> {} vertices in {} deletions; trace: {}",
                g.n(),
                c.graph.n(),
                c.deletions,
                pair_list(&c.trace)
            );
            (
                "contract",
                summary,
                json!({ "graph": c.graph, "deletions": c.deletions, "trace": c.trace }),
            )
        }
        Cmd::Decide { form, edge, b_file } => {
            if *form != FormArg::MsE && edge.is_some() {
                return Err(CliError::pre("--edge only applies to --form ms-e"));
            }
            if *form != FormArg::MsB && b_file.is_some() {
                return Err(CliError::pre("--B only applies to --form ms-B"));
            }
            let verdict = match form {
                FormArg::Ms => convergence::decide_ms(&g),
                FormArg::MsE => {
                    let spec = edge
                        .as_deref()
                        .ok_or_else(|| CliError::pre("--form ms-e requires --edge I,J"))?;
                    convergence::decide_ms_e(&g, parse_edge_flag(spec)?)?
                }
                FormArg::MsB => {
                    let path = b_file
                        .as_ref()
                        .ok_or_else(|| CliError::pre("--form ms-B requires --B FILE"))?;
                    let values = parse_b_file(&read_file(path)?, path)?;
                    let q = QuadForm::make_b(&g, values)?;
                    convergence::decide_ms_b(&q)
                }
            };
            ("decide", verdict_summary(&verdict), to_value(&verdict)?)
        }
        Cmd::Level { r } => {
            let qf = QuadForm::ms_matrix(&g);
            let res = sos::solve_level(&qf, *r)?;
            ("level", format!("level {}", level_summary(&res)), to_value(&res)?)
        }
        Cmd::Sweep { rmax } => {
            let qf = QuadForm::ms_matrix(&g);
            let levels = sos::sweep_levels(&qf, *rmax)?;
            let attained = levels.iter().find(|l| l.attained).map(|l| l.r);
            let summary = match attained {
                Some(r) => format!("swept r = 2..={rmax}: target attained at r = {r}"),
                None => {
                    let best = levels
                        .iter()
                        .filter(|l| l.value.is_finite())
                        .map(|l| l.value)
                        .fold(f64::NEG_INFINITY, f64::max);
                    format!(
                        "swept r = 2..={rmax}: target not attained (best value {})",
                        sig12(best)
                    )
                }
            };
            (
                "sweep",
                summary,
                json!({ "rmax": rmax, "levels": levels, "attained_level": attained }),
            )
        }
        Cmd::Certify { cert } => {
            let text = read_file(cert)?;
            let parsed: SosCertificate<f64> = serde_json::from_str(&text)
                .map_err(|e| CliError::pre(format!("cannot parse certificate {}: {e}", cert.display())))?;
            let qf = QuadForm::ms_matrix(&g);
            let rep = sos::verify_certificate(&qf, &parsed)?;
            let summary = format!(
                "certificate r = {}, lambda = {}: {} (residual {}, min Gram eigenvalue {})",
                parsed.r,
                sig12(parsed.lambda),
                if rep.pass { "PASS" } else { "FAIL" },
                sig12(rep.residual),
                sig12(rep.min_gram_eigenvalue)
            );
            (
                "certify",
                summary,
                json!({ "r": parsed.r, "lambda": parsed.lambda, "verification": rep }),
            )
        }
        Cmd::Kkt { point } => {
            let qf = QuadForm::ms_matrix(&g);
            let pt = parse_point_file(&read_file(point)?, g.n())?;
            let rep = kkt_check(&qf, &pt)?;
            let summary = format!(
                "KKT: global minimizer {}; CQC {}, SCC {}, SOSC {} ({} arithmetic)",
                yes_no(rep.at_global_minimizer),
                yes_no(rep.cqc),
                yes_no(rep.scc),
                yes_no(rep.sosc),
                if rep.exact { "exact" } else { "float" }
            );
            ("kkt", summary, to_value(&rep)?)
        }
        Cmd::Report { rmax } => {
            let crit = stability::critical_report(&g);
            let verdict = convergence::decide_ms(&g);
            let qf = QuadForm::ms_matrix(&g);
            let levels = sos::sweep_levels(&qf, *rmax)?;
            let attained = levels.iter().find(|l| l.attained).map(|l| l.r);
            let (consistent, note) = consistency(&verdict, &levels);
            let summary = format!(
                "alpha = {}; critical edges: {}; twin pairs: {}\n{}\nhierarchy: rmax = {rmax}, attained level: {}\nconsistency: {} — {note}",
                crit.alpha,
                crit.critical_edges.len(),
                crit.twin_pairs.len(),
                verdict_summary(&verdict),
                attained.map_or("none".to_string(), |r| r.to_string()),
                if consistent { "OK" } else { "MISMATCH" }
            );
            (
                "report",
                summary,
                json!({
                    "combinatorics": {
                        "alpha": crit.alpha,
                        "critical_edges": crit.critical_edges,
                        "twin_pairs": crit.twin_pairs,
                        "contracted_n": crit.contracted_n,
                        "contraction_trace": crit.contraction_trace,
                    },
                    "verdict": verdict,
                    "hierarchy": { "rmax": rmax, "levels": levels, "attained_level": attained },
                    "consistency": { "consistent": consistent, "note": note },
                }),
            )
        }
    };

    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": { "n": g.n(), "m": g.m(), "format": format_name(format) },
        "result": result,
    });
    round_floats(&mut doc);
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::Internal(format!("serialization: {e}")))?;
    text.push('\n');

    match &cli.output {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| CliError::pre(format!("cannot write {}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
