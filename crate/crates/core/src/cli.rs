//! The `locbound` command-line tool.
//!
//! Subcommands: `analyze`, `generate`, `phi`, `selfcheck`.
//!
//! Exit codes: 0 success, 1 invariant failure, 2 usage or input error,
//! 3 work budget exceeded. `phi` additionally exits 4 when Φ(uniform) > 0
//! (the bound is strict) and 0 when it vanishes (tight).
//!
//! Rationals are written as `p/q` strings; `*_decimal` fields carry a
//! 10-significant-digit rendering for reading only.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bounds::{try_bound_report, BoundError, BoundReport};
use crate::clique::{try_vertex_clique_numbers, CliqueError, WorkBudget};
use crate::format::{parse_edge_list, parse_graph6, to_graph6};
use crate::graph::{generate_complete_multipartite, generate_random, Graph, PartSpec};
use crate::rational::{to_decimal, Rational};
use crate::selfcheck::{self, Hooks, SelfcheckConfig, SelfcheckError};
use crate::simplex::{check_minimizer_structure, MinimizerStructure, Potential, SimplexError, SimplexPoint};
use crate::VERSION;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_STRICT: i32 = 4;

/// Largest clique order accepted on the command line.
pub const T_LIMIT: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "locbound", version, about = "Exact vertex-localized clique-count bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound reports for every input graph and every t in [--t, --t-max].
    Analyze(AnalyzeArgs),
    /// Write generated graphs as graph6 files.
    Generate(GenerateArgs),
    /// Potential at the uniform point, sampled minimum and a descent trace.
    Phi(PhiArgs),
    /// Oracle-equivalence and invariant suite over a built-in corpus.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Graph files (.g6: one graph6 per line; .el: edge list) or directories
    /// (scanned non-recursively for .g6 and .el).
    pub inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long)]
    pub t_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Maximum recursion nodes per graph.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub generator: Generator,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// Complete multipartite graph with the given comma-separated part sizes.
    Multipartite {
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
    /// G(n, p) graphs for seeds seed, seed+1, .., seed+count-1.
    Random {
        #[arg(long)]
        n: usize,
        /// Edge probability as `a/b` or a decimal.
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
}

#[derive(Debug, Args)]
pub struct PhiArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 5)]
    pub t_max: usize,
}

/// Resolved settings shared by the subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub t_min: usize,
    pub t_max: usize,
    pub format: Format,
    pub seed: u64,
    pub samples: usize,
    pub budget: Option<u64>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn validate(&self) -> Result<(), String> {
        if self.t_min < 2 || self.t_max > T_LIMIT || self.t_min > self.t_max {
            return Err(format!(
                "t range [{}, {}] must lie within [2, {T_LIMIT}]",
                self.t_min, self.t_max
            ));
        }
        Ok(())
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => {
            let cfg = RunConfig {
                inputs: a.inputs,
                t_min: a.t,
                t_max: a.t_max.unwrap_or(a.t),
                format: a.format,
                seed: 0,
                samples: 0,
                budget: a.budget,
                out: a.out,
            };
            with_output(cfg.out.clone(), stdout, stderr, |w, e| cmd_analyze(&cfg, w, e), cfg.validate())
        }
        Command::Generate(g) => cmd_generate(&g, stdout, stderr),
        Command::Phi(p) => {
            let cfg = RunConfig {
                inputs: vec![p.input],
                t_min: p.t,
                t_max: p.t,
                format: Format::Json,
                seed: p.seed,
                samples: p.samples,
                budget: p.budget,
                out: p.out,
            };
            with_output(cfg.out.clone(), stdout, stderr, |w, e| cmd_phi(&cfg, w, e), cfg.validate())
        }
        Command::Selfcheck(s) => {
            let cfg = SelfcheckConfig {
                seed: s.seed,
                samples: s.samples,
                budget: s.budget,
                t_max: s.t_max,
                ..SelfcheckConfig::default()
            };
            cmd_selfcheck(&cfg, &Hooks::default(), stdout)
        }
    };
    let _ = stdout.flush();
    result
}

fn with_output<F>(
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    body: F,
    valid: Result<(), String>,
) -> i32
where
    F: FnOnce(&mut dyn Write, &mut dyn Write) -> i32,
{
    if let Err(msg) = valid {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    match out {
        None => body(stdout, stderr),
        Some(path) => match fs::File::create(&path) {
            Ok(f) => {
                let mut w = std::io::BufWriter::new(f);
                let code = body(&mut w, stderr);
                if let Err(e) = w.flush() {
                    let _ = writeln!(stderr, "error: writing {}: {e}", path.display());
                    return EXIT_USAGE;
                }
                code
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot create {}: {e}", path.display());
                EXIT_USAGE
            }
        },
    }
}

/// A graph read from disk, labelled by file (and line, for multi-graph
/// graph6 files).
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub label: String,
    pub graph: Graph,
}

fn is_graph_file(p: &Path) -> bool {
    matches!(p.extension().and_then(|e| e.to_str()), Some("g6") | Some("el"))
}

/// Expands directories (non-recursively, `.g6` and `.el` only, sorted by
/// name) and keeps explicit files as given.
pub fn collect_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, String> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(p)
                .map_err(|e| format!("{}: {e}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|q| q.is_file() && is_graph_file(q))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.clone());
        }
    }
    Ok(files)
}

/// Reads every graph in one file. `.el` holds one edge list; anything else
/// is read as graph6, one graph per non-blank line.
pub fn load_file(path: &Path) -> Result<Vec<LoadedGraph>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let name = path.display().to_string();
    if path.extension().and_then(|e| e.to_str()) == Some("el") {
        let graph = parse_edge_list(&text).map_err(|e| format!("{name}: {e}"))?;
        return Ok(vec![LoadedGraph { label: name, graph }]);
    }
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if lines.is_empty() {
        return Err(format!("{name}: no graph6 data"));
    }
    let single = lines.len() == 1;
    lines
        .into_iter()
        .map(|(k, l)| {
            let label = if single { name.clone() } else { format!("{name}:{}", k + 1) };
            parse_graph6(l)
                .map(|graph| LoadedGraph { label: label.clone(), graph })
                .map_err(|e| format!("{label}: {e}"))
        })
        .collect()
}

/// First 16 hex digits of SHA-256 over the canonical graph6 string.
pub fn graph_hash(g: &Graph) -> String {
    let g6 = to_graph6(g).expect("graph within graph6 limits");
    hex::encode(Sha256::digest(g6.as_bytes()))[..16].to_string()
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    file: &'a str,
    graph_hash: &'a str,
    version: &'static str,
    n: usize,
    m: usize,
    omega: usize,
    t: usize,
    #[serde(rename = "N")]
    true_count: String,
    localized_bound: String,
    localized_bound_decimal: String,
    zykov_bound: String,
    zykov_bound_decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    turan_bound: Option<String>,
    gap: String,
    gap_decimal: String,
    edge_localized_sum: String,
    edge_localized_cap: String,
    vertex_localized_turan: String,
    vertex_localized_turan_exact: String,
    kirsch_nir_sum: String,
    kirsch_nir_cap: String,
    kirsch_nir_equal: bool,
    tight: bool,
    certificate: Option<Vec<usize>>,
}

impl<'a> ReportRecord<'a> {
    fn new(file: &'a str, hash: &'a str, r: &BoundReport) -> Self {
        ReportRecord {
            kind: "report",
            file,
            graph_hash: hash,
            version: VERSION,
            n: r.n,
            m: r.m,
            omega: r.omega,
            t: r.t,
            true_count: r.true_count.to_string(),
            localized_bound: r.localized_zykov.to_string(),
            localized_bound_decimal: to_decimal(&r.localized_zykov),
            zykov_bound: r.zykov_classical.to_string(),
            zykov_bound_decimal: to_decimal(&r.zykov_classical),
            turan_bound: r.turan.as_ref().map(Rational::to_string),
            gap: r.gap().to_string(),
            gap_decimal: to_decimal(&r.gap()),
            edge_localized_sum: r.edge_localized_sum.to_string(),
            edge_localized_cap: r.edge_localized_cap.to_string(),
            vertex_localized_turan: r.vertex_localized_turan.to_string(),
            vertex_localized_turan_exact: r.vertex_localized_turan_exact.to_string(),
            kirsch_nir_sum: r.kirsch_nir_sum.to_string(),
            kirsch_nir_cap: r.kirsch_nir_cap.to_string(),
            kirsch_nir_equal: r.kirsch_nir_equal,
            tight: r.is_tight,
            certificate: r.extremal_certificate.clone().map(Vec::from),
        }
    }
}

/// CSV header; the first nine columns are the stable interface.
pub const CSV_HEADER: &str =
    "file,n,m,t,N,localized_bound,zykov_bound,tight,certificate,localized_bound_decimal,graph_hash,version";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(file: &str, hash: &str, r: &BoundReport) -> String {
    let cert = r
        .extremal_certificate
        .as_ref()
        .map(|c| c.sizes().iter().map(|s| s.to_string()).collect::<Vec<_>>().join("-"))
        .unwrap_or_default();
    [
        csv_field(file),
        r.n.to_string(),
        r.m.to_string(),
        r.t.to_string(),
        r.true_count.to_string(),
        r.localized_zykov.to_string(),
        r.zykov_classical.to_string(),
        r.is_tight.to_string(),
        cert,
        to_decimal(&r.localized_zykov),
        hash.to_string(),
        VERSION.to_string(),
    ]
    .join(",")
}

enum GraphOutcome {
    Reports(Vec<BoundReport>),
    Failed { t: usize, error: BoundError },
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    file: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph_hash: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    error: String,
}

#[derive(Serialize)]
struct SummaryRecord {
    #[serde(rename = "type")]
    kind: &'static str,
    graphs: usize,
    reports: usize,
    tight: usize,
    strict: usize,
    errors: usize,
}

fn analyze_graph(g: &Graph, t_min: usize, t_max: usize, budget: Option<u64>) -> GraphOutcome {
    let mut b = WorkBudget::new(budget);
    let mut reports = Vec::new();
    for t in t_min..=t_max {
        match try_bound_report(g, t, &mut b) {
            Ok(r) => reports.push(r),
            Err(error) => return GraphOutcome::Failed { t, error },
        }
    }
    GraphOutcome::Reports(reports)
}

/// Writes one record per (graph, t), then a summary. Graphs are evaluated
/// in parallel; records appear in input order.
pub fn cmd_analyze(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let files = match collect_inputs(&cfg.inputs) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if files.is_empty() {
        let _ = writeln!(err, "error: no inputs");
        return EXIT_USAGE;
    }
    let loaded: Vec<Result<Vec<LoadedGraph>, String>> = files.iter().map(|f| load_file(f)).collect();
    let graphs: Vec<&LoadedGraph> = loaded.iter().filter_map(|r| r.as_ref().ok()).flatten().collect();
    let outcomes: Vec<GraphOutcome> = graphs
        .par_iter()
        .map(|lg| analyze_graph(&lg.graph, cfg.t_min, cfg.t_max, cfg.budget))
        .collect();

    let mut read_errors = 0;
    let (mut tight, mut strict, mut errors) = (0, 0, 0);
    let mut budget_hit = false;
    let mut invariant_hit = false;
    if cfg.format == Format::Csv {
        let _ = writeln!(out, "{CSV_HEADER}");
    }
    for r in &loaded {
        if let Err(e) = r {
            read_errors += 1;
            errors += 1;
            match cfg.format {
                Format::Json => {
                    let rec = ErrorRecord { kind: "error", file: e, graph_hash: None, t: None, error: e.clone() };
                    let _ = writeln!(out, "{}", serde_json::to_string(&rec).expect("serializable"));
                }
                Format::Csv => {
                    let _ = writeln!(err, "error: {e}");
                }
            }
        }
    }
    for (lg, outcome) in graphs.iter().zip(&outcomes) {
        let hash = graph_hash(&lg.graph);
        match outcome {
            GraphOutcome::Reports(reports) => {
                for r in reports {
                    if r.is_tight {
                        tight += 1;
                    } else {
                        strict += 1;
                    }
                    let line = match cfg.format {
                        Format::Json => {
                            serde_json::to_string(&ReportRecord::new(&lg.label, &hash, r)).expect("serializable")
                        }
                        Format::Csv => csv_row(&lg.label, &hash, r),
                    };
                    let _ = writeln!(out, "{line}");
                }
            }
            GraphOutcome::Failed { t, error } => {
                errors += 1;
                match error {
                    BoundError::Clique(CliqueError::BudgetExceeded { .. }) => budget_hit = true,
                    _ => invariant_hit = true,
                }
                match cfg.format {
                    Format::Json => {
                        let rec = ErrorRecord {
                            kind: "error",
                            file: &lg.label,
                            graph_hash: Some(&hash),
                            t: Some(*t),
                            error: error.to_string(),
                        };
                        let _ = writeln!(out, "{}", serde_json::to_string(&rec).expect("serializable"));
                    }
                    Format::Csv => {
                        let _ = writeln!(err, "error: {} (t = {t}): {error}", lg.label);
                    }
                }
            }
        }
    }
    let summary = SummaryRecord { kind: "summary", graphs: graphs.len(), reports: tight + strict, tight, strict, errors };
    match cfg.format {
        Format::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string(&summary).expect("serializable"));
        }
        Format::Csv => {
            let _ = writeln!(
                err,
                "summary: graphs={} reports={} tight={tight} strict={strict} errors={errors}",
                summary.graphs, summary.reports
            );
        }
    }
    if invariant_hit {
        EXIT_INVARIANT
    } else if budget_hit {
        EXIT_BUDGET
    } else if graphs.is_empty() || read_errors == files.len() {
        EXIT_USAGE
    } else {
        EXIT_OK
    }
}

/// Parses `a/b` or a decimal such as `0.25` into an exact ratio.
pub fn parse_probability(s: &str) -> Result<Ratio<u64>, String> {
    let bad = || format!("invalid probability {s:?}");
    let s = s.trim();
    let p = if let Some((a, b)) = s.split_once('/') {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        Ratio::new(a, b)
    } else {
        let (int_part, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || (int_part.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let int_part: u64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let scale = 10u64.pow(frac.len() as u32);
        let num = int_part.checked_mul(scale).and_then(|v| v.checked_add(frac_val)).ok_or_else(bad)?;
        Ratio::new(num, scale)
    };
    if p > Ratio::from_integer(1) {
        return Err(format!("probability {s} is outside [0, 1]"));
    }
    Ok(p)
}

fn write_graph(dir: &Path, name: &str, g: &Graph, out: &mut dyn Write) -> Result<(), String> {
    let path = dir.join(name);
    let g6 = to_graph6(g).map_err(|e| e.to_string())?;
    fs::write(&path, format!("{g6}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
    let _ = writeln!(out, "{}", path.display());
    Ok(())
}

/// Writes generated graphs as `<dir>/<name>.g6`; names embed the parameters.
pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<(), String> {
        fs::create_dir_all(&args.out).map_err(|e| format!("{}: {e}", args.out.display()))?;
        match &args.generator {
            Generator::Multipartite { parts } => {
                let spec = PartSpec::new(parts.clone()).map_err(|e| e.to_string())?;
                let sizes: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
                let g = generate_complete_multipartite(&spec);
                write_graph(&args.out, &format!("multipartite_{}.g6", sizes.join("-")), &g, out)
            }
            Generator::Random { n, p, seed, count } => {
                let prob = parse_probability(p)?;
                for k in 0..*count {
                    let s = seed.wrapping_add(k);
                    let g = generate_random(*n, prob, s).map_err(|e| e.to_string())?;
                    let name = format!("random_n{n}_p{}-{}_s{s}.g6", prob.numer(), prob.denom());
                    write_graph(&args.out, &name, &g, out)?;
                }
                Ok(())
            }
        }
    })();
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Serialize)]
struct PhiRecord<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    file: &'a str,
    graph_hash: &'a str,
    version: &'static str,
    n: usize,
    m: usize,
    t: usize,
    a_uniform: String,
    b_uniform: String,
    phi_uniform: String,
    phi_uniform_decimal: String,
    sampled_min: String,
    sampled_min_decimal: String,
    sampled_min_at: String,
    points_evaluated: usize,
    seed: u64,
    tight: bool,
}

#[derive(Serialize)]
struct DescentEndRecord {
    #[serde(rename = "type")]
    kind: &'static str,
    steps: usize,
    phi_start: String,
    phi_end: String,
    end_point: Vec<String>,
    end_support: Vec<usize>,
    end_support_is_clique: bool,
    omega_end: usize,
    minimizer_structure: &'static str,
}

/// Evaluates Φ at the uniform point, samples for its minimum, then traces a
/// descent from the uniform point.
pub fn cmd_phi(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let path = &cfg.inputs[0];
    let mut graphs = match load_file(path) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if graphs.len() != 1 {
        let _ = writeln!(err, "error: phi takes exactly one graph, {} has {}", path.display(), graphs.len());
        return EXIT_USAGE;
    }
    let LoadedGraph { label, graph: g } = graphs.remove(0);
    let t = cfg.t_min;
    let fail = |err: &mut dyn Write, e: &dyn std::fmt::Display, code: i32| {
        let _ = writeln!(err, "error: {e}");
        code
    };
    let profile = match try_vertex_clique_numbers(&g, &mut WorkBudget::new(cfg.budget)) {
        Ok(p) => p,
        Err(e) => return fail(err, &e, EXIT_BUDGET),
    };
    let pot = Potential::new(&g, t, &profile).expect("t validated");
    let uniform = match SimplexPoint::uniform(g.n()) {
        Ok(x) => x,
        Err(e) => return fail(err, &e, EXIT_USAGE),
    };
    let at_uniform = pot.eval(&uniform).expect("dimension");
    let report = match pot.verify_nonnegativity(cfg.samples.max(1), cfg.seed) {
        Ok(r) => r,
        Err(e @ SimplexError::NegativePotential { .. }) => return fail(err, &e, EXIT_INVARIANT),
        Err(e) => return fail(err, &e, EXIT_USAGE),
    };
    let trace = pot.descend(&uniform).expect("valid start");
    let structure = check_minimizer_structure(&pot, &trace).expect("valid graph");
    let hash = graph_hash(&g);
    let tight = at_uniform.phi == Rational::from_integer(0.into());
    let head = PhiRecord {
        kind: "phi",
        file: &label,
        graph_hash: &hash,
        version: VERSION,
        n: g.n(),
        m: g.m(),
        t,
        a_uniform: at_uniform.a.to_string(),
        b_uniform: at_uniform.b.to_string(),
        phi_uniform: at_uniform.phi.to_string(),
        phi_uniform_decimal: to_decimal(&at_uniform.phi),
        sampled_min: report.min_phi.to_string(),
        sampled_min_decimal: to_decimal(&report.min_phi),
        sampled_min_at: report.argmin.to_string(),
        points_evaluated: report.evaluated,
        seed: cfg.seed,
        tight,
    };
    let _ = writeln!(out, "{}", serde_json::to_string(&head).expect("serializable"));
    let _ = write!(out, "{}", trace.to_jsonl());
    let structure_label = match structure.passes() {
        None if structure == MinimizerStructure::Vacuous => "vacuous (t exceeds the clique number)",
        None => "not a certified minimizer",
        Some(true) => "pass",
        Some(false) => "fail",
    };
    let end = DescentEndRecord {
        kind: "descent_end",
        steps: trace.steps.len(),
        phi_start: trace.phi_start.to_string(),
        phi_end: trace.phi_end.to_string(),
        end_point: trace.end.coords().iter().map(Rational::to_string).collect(),
        end_support: trace.end.support_vec(),
        end_support_is_clique: trace.end_support_is_clique,
        omega_end: trace.omega_end,
        minimizer_structure: structure_label,
    };
    let _ = writeln!(out, "{}", serde_json::to_string(&end).expect("serializable"));
    if structure.passes() == Some(false) {
        return EXIT_INVARIANT;
    }
    if tight {
        EXIT_OK
    } else {
        EXIT_STRICT
    }
}

pub fn cmd_selfcheck(cfg: &SelfcheckConfig, hooks: &Hooks, out: &mut dyn Write) -> i32 {
    match selfcheck::run(cfg, hooks) {
        Ok(outcomes) => {
            let mut failed = 0;
            for o in &outcomes {
                match &o.failure {
                    None => {
                        let _ = writeln!(out, "PASS {} ({} cases)", o.name, o.cases);
                    }
                    Some(why) => {
                        failed += 1;
                        let _ = writeln!(out, "FAIL {}: {why}", o.name);
                    }
                }
            }
            let _ = writeln!(out, "selfcheck: {} passed, {failed} failed", outcomes.len() - failed);
            if failed == 0 {
                EXIT_OK
            } else {
                EXIT_INVARIANT
            }
        }
        Err(e @ SelfcheckError::Budget { .. }) => {
            let _ = writeln!(out, "BUDGET {e}");
            EXIT_BUDGET
        }
    }
}
