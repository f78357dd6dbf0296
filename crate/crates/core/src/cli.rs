//! Command-line front end.
//!
//! Every subcommand produces a [`RunReport`]. Exit codes: 0 for a positive
//! result, 1 for a mathematically valid negative verdict (not a SIC, a
//! compatible set, no witness found), 2 for input or usage errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::compat::{
    pairwise_pp_check, qutrit_triple_criterion, witness_search, StateSet, WitnessSearchConfig, SATURATION_TOL,
};
use crate::contextuality::{build_orthogonality_graph, cabello_criterion, hesse_mub_graph, ORTHOGONALITY_TOL};
use crate::error::Error;
use crate::io::{kets_to_json, matrices_to_json, parse_probs, parse_states, StateInput};
use crate::mub::{build_mub_set, covering_table_at, steiner_s9, verify_mub_set, WITNESS_TOL};
use crate::purity::{
    distribution_indices, enumerate_min_entropy_pure_states, qbic_check_general, qbic_check_hesse,
    quadratic_purity_check, TripleProductTable, PURITY_TOL, ZERO_TOL,
};
use crate::qmath::{DensityMatrix, Ket, Operator, VALIDATION_TOL};
use crate::sicgen::{builtin_sic, gram_matrix, hesse_sic, is_sic, sic_probabilities, SicProbVector, SicSet};
use crate::wigner::{line_marginals, negativity, phase_point_operators, wigner_of_density};

/// Environment variable holding the default tolerance.
pub const TOL_ENV: &str = "QUTRIT_SIC_TOL";

#[derive(Debug, Parser)]
#[command(name = "qutrit-sic", version, about = "Qutrit SIC-POVMs, MUBs and state compatibility")]
struct Cli {
    /// Numerical tolerance (overrides QUTRIT_SIC_TOL and the command default).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for stochastic commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the SIC condition on a built-in or user-supplied set of kets.
    VerifySic(SicSource),
    /// Post-Peierls compatibility.
    #[command(subcommand)]
    Compat(CompatCommand),
    /// Mutually unbiased bases from the lines of the 3x3 grid.
    #[command(subcommand)]
    Mubs(MubsCommand),
    /// Discrete Wigner function of a qutrit state.
    Wigner(StateSource),
    /// Pure-state conditions on a SIC probability vector.
    Purity(ProbSource),
    /// Minimal-entropy pure states.
    #[command(subcommand)]
    MinEntropy(MinEntropyCommand),
    /// Orthogonality graph and its chromatic number.
    Graph(GraphArgs),
}

#[derive(Debug, Args)]
struct SicSource {
    /// Built-in SIC (`hesse`).
    #[arg(long, conflicts_with = "state", required_unless_present = "state")]
    builtin: Option<String>,
    /// JSON file with kets.
    #[arg(long)]
    state: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StateSetArgs {
    /// `example-triple`, `hesse`, or a JSON state file.
    #[arg(long)]
    states: String,
    /// Comma-separated indices selecting states from the set.
    #[arg(long, value_delimiter = ',')]
    indices: Option<Vec<usize>>,
}

#[derive(Debug, Subcommand)]
enum CompatCommand {
    /// Exact criterion for three qutrit pure states.
    Triple {
        #[command(flatten)]
        set: StateSetArgs,
        /// Decide with the exact inequality criterion (the default).
        #[arg(long)]
        criterion: bool,
    },
    /// Pairwise decision for two pure states.
    Pair {
        #[command(flatten)]
        set: StateSetArgs,
    },
    /// Numerical search for a witnessing measurement.
    Search {
        #[command(flatten)]
        set: StateSetArgs,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 5000)]
        max_iters: usize,
    },
}

#[derive(Debug, Subcommand)]
enum MubsCommand {
    /// Build the twelve MUB states from the Hesse SIC.
    Build,
    /// Check mutual unbiasedness.
    Verify,
    /// Which bases witness the incompatibility of each SIC triple.
    Cover,
}

#[derive(Debug, Args)]
struct StateSource {
    /// JSON file with one ket or one density matrix.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    state: Option<PathBuf>,
    /// `sic:K`, `mub:IJK` or `mixed`.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Debug, Args)]
struct ProbSource {
    /// JSON file `{"dim": 3, "probs": [...]}`.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    probs: Option<PathBuf>,
    /// SIC probabilities of `sic:K`, `mub:IJK` or `mixed`.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
enum MinEntropyCommand {
    /// Screen all vectors with three zeros and 1/6 elsewhere.
    Enumerate,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Built-in graph (`hesse-mub`).
    #[arg(long, conflicts_with = "state", required_unless_present = "state")]
    builtin: Option<String>,
    /// JSON file with kets; vertices are labelled by index.
    #[arg(long)]
    state: Option<PathBuf>,
    /// Compute the exact chromatic number and the contextuality criterion.
    #[arg(long)]
    chromatic: bool,
    /// Dimension for the criterion (defaults to the state dimension).
    #[arg(long)]
    dim: Option<usize>,
    /// Print the edge list (text format).
    #[arg(long)]
    edge_list: bool,
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    /// SHA-256 over the command, its parameters and its input contents.
    pub inputs_digest: String,
    /// `pass` or `negative`.
    pub status: String,
    pub results: Value,
    pub residuals: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: Option<u64>,
    /// Reported in text output only, so JSON reports are reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug)]
pub struct RunOutcome {
    pub code: i32,
    pub report: Option<RunReport>,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutcome {
    fn error(msg: impl std::fmt::Display) -> Self {
        RunOutcome {
            code: 2,
            report: None,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Failures that map to exit code 2.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `argv` (including the program name), runs the command and
/// renders the report. Writes nothing to the process streams except the
/// `--output` file.
pub fn run<I, T>(argv: I) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutcome {
                    code,
                    report: None,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutcome {
                    code,
                    report: None,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    let (mut report, csv) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => return RunOutcome::error(e),
    };
    report.wall_time = start.elapsed();
    let body = match render(&report, csv, cli.format) {
        Ok(b) => b,
        Err(e) => return RunOutcome::error(e),
    };
    let code = if report.status == "pass" { 0 } else { 1 };
    let mut outcome = RunOutcome {
        code,
        report: Some(report),
        stdout: String::new(),
        stderr: String::new(),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                return RunOutcome::error(format!("{}: {e}", path.display()));
            }
        }
        None => outcome.stdout = body,
    }
    outcome
}

/// Builder for the pieces of a report.
struct Report {
    command: String,
    inputs: Value,
    pass: bool,
    results: Value,
    residuals: BTreeMap<String, f64>,
    tolerances: BTreeMap<String, f64>,
    seed: Option<u64>,
    csv: Option<String>,
}

impl Report {
    fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            pass: true,
            results: Value::Null,
            residuals: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            seed: None,
            csv: None,
        }
    }

    fn tol(mut self, name: &str, v: f64) -> Self {
        self.tolerances.insert(name.to_string(), v);
        self
    }

    fn residual(mut self, name: &str, v: f64) -> Self {
        self.residuals.insert(name.to_string(), v);
        self
    }

    fn finish(self) -> (RunReport, Option<String>) {
        let canonical = json!({
            "command": self.command,
            "inputs": self.inputs,
            "tolerances": self.tolerances,
            "seed": self.seed,
        });
        let digest = hex::encode(Sha256::digest(canonical.to_string().as_bytes()));
        (
            RunReport {
                command: self.command,
                version: env!("CARGO_PKG_VERSION").to_string(),
                inputs_digest: digest,
                status: if self.pass { "pass" } else { "negative" }.to_string(),
                results: self.results,
                residuals: self.residuals,
                tolerances: self.tolerances,
                seed: self.seed,
                wall_time: Duration::ZERO,
            },
            self.csv,
        )
    }
}

fn execute(cli: &Cli) -> CliResult<(RunReport, Option<String>)> {
    let tol = |default: f64| effective_tol(cli.tol, default);
    let report = match &cli.command {
        Command::VerifySic(src) => verify_sic(src, tol(VALIDATION_TOL)?)?,
        Command::Compat(CompatCommand::Triple { set, .. }) => compat_triple(set, tol(SATURATION_TOL)?)?,
        Command::Compat(CompatCommand::Pair { set }) => compat_pair(set, tol(SATURATION_TOL)?)?,
        Command::Compat(CompatCommand::Search {
            set,
            restarts,
            max_iters,
        }) => {
            let cfg = WitnessSearchConfig {
                restarts: *restarts,
                max_iters: *max_iters,
                seed: cli.seed.unwrap_or(0),
                success_threshold: tol(WitnessSearchConfig::default().success_threshold)?,
                ..Default::default()
            };
            compat_search(set, &cfg)?
        }
        Command::Mubs(MubsCommand::Build) => mubs_build(tol(VALIDATION_TOL)?)?,
        Command::Mubs(MubsCommand::Verify) => mubs_verify(tol(VALIDATION_TOL)?)?,
        Command::Mubs(MubsCommand::Cover) => mubs_cover(tol(WITNESS_TOL)?)?,
        Command::Wigner(src) => wigner(src, tol(VALIDATION_TOL)?)?,
        Command::Purity(src) => purity(src, tol(PURITY_TOL)?)?,
        Command::MinEntropy(MinEntropyCommand::Enumerate) => min_entropy(tol(PURITY_TOL)?),
        Command::Graph(args) => graph(args, tol(ORTHOGONALITY_TOL)?)?,
    };
    Ok(report.finish())
}

fn effective_tol(flag: Option<f64>, default: f64) -> CliResult<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("{TOL_ENV}={s:?} is not a number")))?,
            Err(_) => default,
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

fn read_file(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn sha_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn verify_sic(src: &SicSource, tol: f64) -> CliResult<Report> {
    let (set, inputs) = match (&src.builtin, &src.state) {
        (Some(name), _) => (builtin_sic(name)?, json!({"builtin": name})),
        (None, Some(path)) => {
            let text = read_file(path)?;
            let kets = parse_states(&text, tol)?.kets()?.to_vec();
            (SicSet::from_kets(kets)?, json!({"file_sha256": sha_hex(&text)}))
        }
        (None, None) => return Err(usage("one of --builtin or --state is required")),
    };
    let check = is_sic(&set, tol);
    let gram = gram_matrix(&set);
    let mut r = Report::new("verify-sic", inputs).tol("gram", tol);
    r.pass = check.is_sic;
    r.results = json!({
        "dim": set.dim(),
        "count": set.len(),
        "is_sic": check.is_sic,
        "max_residual": check.max_residual,
    });
    r.csv = Some(
        gram.iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") + "\n")
            .collect(),
    );
    Ok(r.residual("gram", check.max_residual))
}

fn load_kets(set: &StateSetArgs, tol: f64) -> CliResult<(Vec<Ket>, Value)> {
    let (all, source) = match set.states.as_str() {
        "example-triple" => (crate::compat::example_triple_kets().to_vec(), json!("example-triple")),
        "hesse" => (hesse_sic().kets().to_vec(), json!("hesse")),
        path => {
            let text = read_file(&PathBuf::from(path))?;
            let kets = parse_states(&text, tol.max(VALIDATION_TOL))?.kets()?.to_vec();
            (kets, json!({"file_sha256": sha_hex(&text)}))
        }
    };
    let kets = match &set.indices {
        None => all,
        Some(idx) => idx
            .iter()
            .map(|&i| {
                all.get(i)
                    .cloned()
                    .ok_or(Error::IndexOutOfRange { index: i, len: all.len() })
            })
            .collect::<Result<_, _>>()?,
    };
    Ok((kets, json!({"states": source, "indices": set.indices})))
}

fn compat_triple(set: &StateSetArgs, tol: f64) -> CliResult<Report> {
    let (kets, inputs) = load_kets(set, tol)?;
    if kets.len() != 3 {
        return Err(usage(format!("compat triple needs 3 states, got {} (use --indices)", kets.len())));
    }
    let v = qutrit_triple_criterion(&kets[0], &kets[1], &kets[2], tol)?;
    let mut r = Report::new("compat triple", inputs).tol("saturation", tol);
    r.pass = v.is_incompatible();
    r.results = json!({
        "verdict": v.label(),
        "incompatible": v.is_incompatible(),
        "saturated": v.saturated,
        "overlaps": v.overlaps,
        "overlap_sum": v.lhs9,
        "lhs": v.lhs10,
        "rhs": v.rhs10,
        "orthogonal_pair": v.orthogonal_pair,
        "witness": v.witness.as_ref().map(|b| kets_to_json(b.kets())),
    });
    Ok(r.residual("saturation_gap", (v.lhs10 - v.rhs10).abs()))
}

fn compat_pair(set: &StateSetArgs, tol: f64) -> CliResult<Report> {
    let (kets, inputs) = load_kets(set, tol)?;
    if kets.len() != 2 {
        return Err(usage(format!("compat pair needs 2 states, got {} (use --indices)", kets.len())));
    }
    let v = pairwise_pp_check(&kets[0], &kets[1], tol)?;
    let mut r = Report::new("compat pair", inputs).tol("orthogonality", tol);
    r.pass = v.verdict == crate::compat::Verdict::Incompatible;
    r.results = serde_json::to_value(v).expect("plain data");
    Ok(r)
}

fn compat_search(set: &StateSetArgs, cfg: &WitnessSearchConfig) -> CliResult<Report> {
    let (kets, mut inputs) = load_kets(set, VALIDATION_TOL)?;
    inputs["restarts"] = json!(cfg.restarts);
    inputs["max_iters"] = json!(cfg.max_iters);
    let states = StateSet::from_kets(&kets)?;
    let res = witness_search(&states, cfg)?;
    let mut r = Report::new("compat search", inputs).tol("success_threshold", cfg.success_threshold);
    r.seed = Some(cfg.seed);
    r.pass = res.success;
    r.results = json!({
        "value": res.value,
        "success": res.success,
        "best_restart": res.best_restart,
        "basis": kets_to_json(res.basis.kets()),
        "history": res.history,
    });
    Ok(r)
}

fn mubs_build(tol: f64) -> CliResult<Report> {
    let s = hesse_sic();
    let m = build_mub_set(&s)?;
    let report = verify_mub_set(&m, tol);
    let states: Vec<Value> = m
        .states()
        .map(|st| {
            let (n, k) = steiner_s9().locate(st.triple).expect("MUB triples are lines");
            json!({
                "triple": st.triple,
                "striation": n,
                "position": k,
                "probs": st.probs.entries(),
                "projector": matrices_to_json(&[st.projector.matrix()])["matrices"][0],
            })
        })
        .collect();
    let mut r = Report::new("mubs build", json!({"builtin": "hesse"})).tol("validation", tol);
    r.pass = report.passed;
    r.results = json!({"states": states});
    Ok(r.residual("max", max_mub_residual(&report)))
}

fn max_mub_residual(r: &crate::mub::MubReport) -> f64 {
    r.within_residual
        .max(r.completeness_residual)
        .max(r.cross_residual)
        .max(r.purity_residual)
}

fn mubs_verify(tol: f64) -> CliResult<Report> {
    let m = build_mub_set(&hesse_sic())?;
    let report = verify_mub_set(&m, tol);
    let mut r = Report::new("mubs verify", json!({"builtin": "hesse"})).tol("validation", tol);
    r.pass = report.passed;
    r.results = serde_json::to_value(report).expect("plain data");
    Ok(r
        .residual("within", report.within_residual)
        .residual("completeness", report.completeness_residual)
        .residual("cross", report.cross_residual)
        .residual("purity", report.purity_residual))
}

fn mubs_cover(tol: f64) -> CliResult<Report> {
    let s = hesse_sic();
    let m = build_mub_set(&s)?;
    let table = covering_table_at(&m, &s, tol)?;
    let uncovered = table.iter().filter(|row| row.witnesses.is_empty()).count();
    let mut r = Report::new("mubs cover", json!({"builtin": "hesse"})).tol("witness", tol);
    r.pass = uncovered == 0;
    r.results = json!({"rows": table, "uncovered": uncovered});
    let mut csv = String::from("triple,striation_1,striation_2,striation_3,striation_4\n");
    for row in &table {
        let t = row.triple;
        csv.push_str(&format!("{}{}{}", t[0], t[1], t[2]));
        for n in 1..=4 {
            csv.push_str(if row.witnesses.contains(&n) { ",1" } else { ",0" });
        }
        csv.push('\n');
    }
    r.csv = Some(csv);
    Ok(r)
}

/// `sic:K`, `mub:IJK` (zero triple) or `mixed`.
fn builtin_state(name: &str) -> CliResult<DensityMatrix> {
    let s = hesse_sic();
    if name == "mixed" {
        return Ok(DensityMatrix::maximally_mixed(3));
    }
    if let Some(k) = name.strip_prefix("sic:") {
        let k: usize = k.parse().map_err(|_| usage(format!("bad SIC index in {name:?}")))?;
        let ket = s.kets().get(k).ok_or(Error::IndexOutOfRange { index: k, len: 9 })?;
        return Ok(ket.density());
    }
    if let Some(t) = name.strip_prefix("mub:") {
        let digits: Vec<usize> = t.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect();
        if digits.len() != 3 || t.len() != 3 {
            return Err(usage(format!("bad MUB triple in {name:?}")));
        }
        let triple = [digits[0], digits[1], digits[2]];
        let m = build_mub_set(&s)?;
        let st = m.state(triple).ok_or(Error::NotALine(triple))?;
        return Ok(st.projector.clone());
    }
    Err(usage(format!("unknown built-in state {name:?} (expected sic:K, mub:IJK or mixed)")))
}

fn single_state(state: &Option<PathBuf>, builtin: &Option<String>, tol: f64) -> CliResult<(DensityMatrix, Value)> {
    match (state, builtin) {
        (Some(path), _) => {
            let text = read_file(path)?;
            let input = parse_states(&text, tol)?;
            if input.len() != 1 {
                return Err(usage(format!("expected one state, got {}", input.len())));
            }
            Ok((input.densities().remove(0), json!({"file_sha256": sha_hex(&text)})))
        }
        (None, Some(name)) => Ok((builtin_state(name)?, json!({"builtin": name}))),
        (None, None) => Err(usage("a state source is required")),
    }
}

fn wigner(src: &StateSource, tol: f64) -> CliResult<Report> {
    let (rho, inputs) = single_state(&src.state, &src.builtin, tol)?;
    if rho.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: rho.dim(),
        }
        .into());
    }
    let s = hesse_sic();
    let a = phase_point_operators(&build_mub_set(&s)?)?;
    let w = wigner_of_density(&rho, &a)?;
    let q = line_marginals(&w);
    let mut r = Report::new("wigner", inputs).tol("validation", tol);
    r.results = json!({
        "values": w.values(),
        "grid": w.grid(),
        "negativity": negativity(&w),
        "min": w.min(),
        "line_probabilities": q.entries().iter().map(|(t, p)| json!({"triple": t, "q": p})).collect::<Vec<_>>(),
    });
    r.csv = Some(
        w.grid()
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") + "\n")
            .collect(),
    );
    Ok(r.residual("phase_point", a.residuals().max()))
}

fn purity(src: &ProbSource, tol: f64) -> CliResult<Report> {
    let (p, inputs): (SicProbVector, Value) = match (&src.probs, &src.builtin) {
        (Some(path), _) => {
            let text = read_file(path)?;
            (parse_probs(&text, tol.max(1e-12))?, json!({"file_sha256": sha_hex(&text)}))
        }
        (None, Some(name)) => (sic_probabilities(&builtin_state(name)?, &hesse_sic())?, json!({"builtin": name})),
        (None, None) => return Err(usage("one of --probs or --builtin is required")),
    };
    let quad = quadratic_purity_check(&p, tol);
    let ix = distribution_indices(&p, ZERO_TOL);
    let mut r = Report::new("purity", inputs).tol("purity", tol).tol("zero", ZERO_TOL);
    let (general, hesse) = if p.dim() == 3 {
        let table = TripleProductTable::new(&hesse_sic());
        (
            Some(qbic_check_general(&p, &table, tol)?),
            Some(qbic_check_hesse(&p, tol)?),
        )
    } else {
        (None, None)
    };
    r.pass = quad.passed && general.is_some_and(|g| g.passed);
    r = r.residual("quadratic", quad.residual);
    if let Some(g) = general {
        r = r.residual("qbic", g.residual);
    }
    r.results = json!({
        "probs": p.entries(),
        "quadratic": quad,
        "qbic_general": general,
        "qbic_hesse": hesse,
        "indices": ix,
        "pure": r.pass,
    });
    Ok(r)
}

fn min_entropy(tol: f64) -> Report {
    let states = enumerate_min_entropy_pure_states(tol);
    let mut r = Report::new("min-entropy enumerate", json!({"builtin": "hesse"})).tol("purity", tol);
    r.pass = states.len() == 12;
    r.results = json!({
        "count": states.len(),
        "triples": states.iter().map(|s| s.triple).collect::<Vec<_>>(),
        "states": states,
    });
    r
}

fn graph(args: &GraphArgs, tol: f64) -> CliResult<Report> {
    let (g, dim, inputs) = match (&args.builtin, &args.state) {
        (Some(name), _) if name == "hesse-mub" => (hesse_mub_graph(tol)?, 3, json!({"builtin": name})),
        (Some(name), _) => return Err(usage(format!("unknown built-in graph {name:?}"))),
        (None, Some(path)) => {
            let text = read_file(path)?;
            let input: StateInput = parse_states(&text, VALIDATION_TOL)?;
            let labels = (0..input.len()).map(|i| i.to_string()).collect();
            let g = build_orthogonality_graph(&input.densities(), labels, tol)?;
            (g, input.dim(), json!({"file_sha256": sha_hex(&text)}))
        }
        (None, None) => return Err(usage("one of --builtin or --state is required")),
    };
    let dim = args.dim.unwrap_or(dim);
    let mut r = Report::new("graph", json!({"source": inputs, "chromatic": args.chromatic, "dim": dim}))
        .tol("orthogonality", tol);
    let mut results = json!({
        "vertices": g.len(),
        "edge_count": g.edge_count(),
        "graph": g.to_json(None),
    });
    if args.chromatic {
        let report = cabello_criterion(&g, dim)?;
        results["chromatic_number"] = json!(report.chromatic_number);
        results["cabello"] = json!({"holds": report.holds, "dim": dim});
        results["graph"] = g.to_json(Some(&report.coloring));
        r.pass = report.holds;
    }
    if args.edge_list {
        results["edge_list"] = json!(g.to_edge_list());
    }
    r.results = results;
    Ok(r)
}

fn render(report: &RunReport, csv: Option<String>, format: Format) -> CliResult<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report).expect("report serializes") + "\n"),
        Format::Csv => csv.ok_or_else(|| usage(format!("csv output is not available for {}", report.command))),
        Format::Text => {
            let mut out = format!("command: {}\nstatus: {}\n", report.command, report.status);
            if let Value::Object(map) = &report.results {
                for (k, v) in map {
                    if let Some(list) = v.as_str().filter(|_| k == "edge_list") {
                        out.push_str("edges:\n");
                        out.push_str(list);
                    } else {
                        out.push_str(&format!("{k}: {}\n", compact(v)));
                    }
                }
            }
            for (k, v) in &report.residuals {
                out.push_str(&format!("residual {k}: {v:e}\n"));
            }
            for (k, v) in &report.tolerances {
                out.push_str(&format!("tolerance {k}: {v:e}\n"));
            }
            if let Some(seed) = report.seed {
                out.push_str(&format!("seed: {seed}\n"));
            }
            out.push_str(&format!("inputs digest: {}\n", report.inputs_digest));
            out.push_str(&format!("wall time: {:.3} s\n", report.wall_time.as_secs_f64()));
            Ok(out)
        }
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
