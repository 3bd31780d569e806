//! `ldpc3`: construct, analyze, decode, verify and simulate column-weight-three
//! LDPC codes. Every output file gets a `<file>.manifest.json` that
//! `ldpc3 replay` can rerun.

mod manifest;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use ldpc3::alist::{read_alist, write_alist};
use ldpc3::construct::{build_code, ConstructError, ConstructionParams};
use ldpc3::decoder::{gallager_a_decode, DecisionRule, DecodeError, DecoderConfig};
use ldpc3::report::{analyze, fer_csv, outcome_text, structures_csv, verify_json, AnalysisOptions};
use ldpc3::sim::{exhaustive_verify, fer_estimate, FerOptions, SimError, StopRule, VerifyOptions};
use ldpc3::trapping::TrapError;
use ldpc3::{exec, Execution, TannerGraph};

use manifest::{manifest_path, sha256_hex, OutputFile, RunManifest};

#[derive(Debug, Parser)]
#[command(
    name = "ldpc3",
    version,
    about = "Column-weight-three LDPC codes under Gallager A decoding"
)]
struct Cli {
    /// Worker threads for analyze, verify and simulate; 0 uses every core.
    #[arg(long, global = true, env = "LDPC3_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Build a code with modified progressive edge growth.
    Construct(ConstructArgs),
    /// List (3,3), (5,3) and low-weight codeword structures as CSV.
    Analyze(AnalyzeArgs),
    /// Decode one received word.
    Decode(DecodeArgs),
    /// Decode every error pattern up to weight t; exits 1 if any fails.
    Verify(VerifyArgs),
    /// Monte Carlo frame error rate on the BSC.
    Simulate(SimulateArgs),
    /// Rerun the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ConstructArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 7)]
    max_check_degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Place variables in index order and break check ties by index.
    #[arg(long)]
    natural_order: bool,
    /// Skip (5,3) rejection (plain girth-8 growth).
    #[arg(long)]
    allow_five_three: bool,
    /// Eviction budget for dead ends; 0 fails at the first one.
    #[arg(long, default_value_t = 20_000)]
    max_evictions: usize,
    #[arg(long, default_value_t = 100)]
    repair_attempts: usize,
    /// alist output.
    #[arg(long)]
    out: PathBuf,
    /// Construction log output (JSON lines).
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DecoderArgs {
    #[arg(long, default_value_t = 50)]
    max_iterations: usize,
    #[arg(long, value_enum, default_value_t = Rule::A)]
    rule: Rule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Rule {
    A,
    B,
}

impl DecoderArgs {
    fn config(&self) -> DecoderConfig {
        let decision_rule = match self.rule {
            Rule::A => DecisionRule::A,
            Rule::B => DecisionRule::B,
        };
        DecoderConfig {
            max_iterations: self.max_iterations,
            decision_rule,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AnalyzeArgs {
    /// Code in alist format.
    #[arg(long)]
    code: PathBuf,
    /// Also compute the critical number of every structure of at most ten variables.
    #[arg(long)]
    critical_numbers: bool,
    /// Search-tree expansions per root in the codeword search.
    #[arg(long, default_value_t = 2_000_000)]
    codeword_budget: u64,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// CSV output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DecodeArgs {
    #[arg(long)]
    code: PathBuf,
    /// File of n characters 0/1; whitespace is ignored.
    #[arg(long)]
    received: PathBuf,
    #[command(flatten)]
    decoder: DecoderArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, default_value_t = 3)]
    t: usize,
    /// Refuse sweeps with more patterns than this.
    #[arg(long, default_value_t = ldpc3::sim::DEFAULT_PATTERN_BUDGET)]
    budget: u64,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// JSON output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    /// Crossover probabilities, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    alpha_list: Vec<f64>,
    #[arg(long, default_value_t = 50)]
    min_failures: u64,
    #[arg(long, default_value_t = 10_000_000_000)]
    max_trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coupling rate shared by all points; defaults to the largest alpha.
    #[arg(long)]
    ceiling: Option<f64>,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// CSV output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Write the primary output here instead of the recorded path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the construction log here instead of the recorded path.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {msg}", path.display())]
    Malformed { path: PathBuf, msg: String },
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    ConstructionFailed(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("{0}")]
    ManifestMismatch(String),
}

impl CliError {
    fn category(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Malformed { .. } => "malformed_input",
            CliError::Infeasible(_) => "infeasible_parameters",
            CliError::ConstructionFailed(_) => "construction_failed",
            CliError::InvalidArgument(_) => "invalid_argument",
            CliError::ManifestMismatch(_) => "manifest_mismatch",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            CliError::Malformed { .. } => 4,
            CliError::Infeasible(_) => 5,
            CliError::ConstructionFailed(_) => 6,
            CliError::InvalidArgument(_) => 7,
            CliError::ManifestMismatch(_) => 8,
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Infeasible(_) => CliError::Infeasible(e.to_string()),
            _ => CliError::ConstructionFailed(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::InvalidArgument(e.to_string())
    }
}

impl From<DecodeError> for CliError {
    fn from(e: DecodeError) -> Self {
        CliError::InvalidArgument(e.to_string())
    }
}

impl From<TrapError> for CliError {
    fn from(e: TrapError) -> Self {
        CliError::InvalidArgument(e.to_string())
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_code(path: &Path) -> Result<(TannerGraph, String), CliError> {
    let bytes = read(path)?;
    let digest = sha256_hex(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| CliError::Malformed {
        path: path.to_path_buf(),
        msg: "not UTF-8".into(),
    })?;
    let g = read_alist(&text).map_err(|e| CliError::Malformed {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    Ok((g, digest))
}

fn load_word(path: &Path, n: usize) -> Result<Vec<u8>, CliError> {
    let bytes = read(path)?;
    let mut word = Vec::with_capacity(n);
    for &b in bytes.iter().filter(|b| !b.is_ascii_whitespace()) {
        match b {
            b'0' | b'1' => word.push(b - b'0'),
            _ => {
                return Err(CliError::Malformed {
                    path: path.to_path_buf(),
                    msg: format!("unexpected character {:?}", char::from(b)),
                })
            }
        }
    }
    if word.len() != n {
        return Err(CliError::Malformed {
            path: path.to_path_buf(),
            msg: format!("expected {n} bits, found {}", word.len()),
        });
    }
    Ok(word)
}

/// What a subcommand produced, before anything is written.
struct Run {
    /// Primary output first. Written to stdout when its path is `None`.
    outputs: Vec<(Option<PathBuf>, Vec<u8>)>,
    summary: Option<String>,
    failed: bool,
    code_sha256: Option<String>,
    seed: Option<u64>,
}

impl Run {
    fn single(out: &Option<PathBuf>, body: String, code_sha256: String) -> Self {
        Run {
            outputs: vec![(out.clone(), body.into_bytes())],
            summary: None,
            failed: false,
            code_sha256: Some(code_sha256),
            seed: None,
        }
    }
}

fn cmd_construct(a: &ConstructArgs) -> Result<Run, CliError> {
    let mut params = ConstructionParams::new(a.n, a.m);
    params.max_check_degree = a.max_check_degree;
    params.rng_seed = a.seed;
    params.randomize = !a.natural_order;
    params.avoid_five_three = !a.allow_five_three;
    params.max_evictions = a.max_evictions;
    params.repair_attempts = a.repair_attempts;
    params.validate()?;
    let (g, log) = build_code(&params)?;
    let hist: Vec<String> = g
        .check_degree_histogram()
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect();
    let summary = format!(
        "n {} m {} girth {} evictions {} repairs {} check_degrees {}",
        g.n(),
        g.m(),
        g.girth().map_or("inf".to_string(), |x| x.to_string()),
        log.evictions(),
        log.repair_records().count() / 2,
        hist.join(" ")
    );
    let mut outputs = vec![(Some(a.out.clone()), write_alist(&g).into_bytes())];
    if let Some(p) = &a.log {
        outputs.push((Some(p.clone()), log.to_json_lines().into_bytes()));
    }
    Ok(Run {
        outputs,
        summary: Some(summary),
        failed: false,
        code_sha256: None,
        seed: Some(a.seed),
    })
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<Run, CliError> {
    let (g, digest) = load_code(&a.code)?;
    let opts = AnalysisOptions {
        codeword_budget: a.codeword_budget,
        critical_numbers: a.critical_numbers,
        decoder: a.decoder.config(),
        exec: Execution::Parallel,
    };
    let an = analyze(&g, &opts)?;
    let mut run = Run::single(&a.out, structures_csv(&an), digest);
    run.summary = Some(format!(
        "girth {} (3,3) {} (5,3) {} weight8 {} lighter {} exhaustive {} gates {}",
        an.girth.map_or("inf".to_string(), |x| x.to_string()),
        an.three_three,
        an.five_three,
        an.weight8_codewords,
        an.lighter_codewords,
        an.codeword_search_exhaustive,
        if an.passes_gates() { "pass" } else { "fail" }
    ));
    Ok(run)
}

fn cmd_decode(a: &DecodeArgs) -> Result<Run, CliError> {
    let (g, digest) = load_code(&a.code)?;
    let word = load_word(&a.received, g.n())?;
    let outcome = gallager_a_decode(&g, &word, &a.decoder.config())?;
    Ok(Run::single(&a.out, outcome_text(&outcome), digest))
}

fn cmd_verify(a: &VerifyArgs) -> Result<Run, CliError> {
    let (g, digest) = load_code(&a.code)?;
    let opts = VerifyOptions {
        budget: a.budget,
        exec: Execution::Parallel,
    };
    let report = exhaustive_verify(&g, a.t, &a.decoder.config(), &opts)?;
    let mut run = Run::single(&a.out, verify_json(&report), digest);
    run.failed = !report.passed();
    run.summary = Some(format!(
        "t {} patterns {} failures {} ({:.1}s)",
        report.t,
        report.patterns_checked,
        report.failures.len(),
        report.wall_time.as_secs_f64()
    ));
    Ok(run)
}

fn cmd_simulate(a: &SimulateArgs) -> Result<Run, CliError> {
    let (g, digest) = load_code(&a.code)?;
    let top = a.alpha_list.iter().copied().fold(0.0, f64::max);
    let opts = FerOptions {
        seed: a.seed,
        ceiling: Some(a.ceiling.unwrap_or(top)),
        exec: Execution::Parallel,
    };
    let stop = StopRule {
        min_failures: a.min_failures,
        max_trials: a.max_trials,
    };
    let cfg = a.decoder.config();
    let mut points = Vec::with_capacity(a.alpha_list.len());
    for &alpha in &a.alpha_list {
        let p = fer_estimate(&g, alpha, stop, &cfg, &opts)?;
        eprintln!(
            "alpha {} trials {} failures {} fer {:e}",
            p.alpha, p.trials, p.failures, p.fer
        );
        points.push(p);
    }
    let mut run = Run::single(&a.out, fer_csv(&points), digest);
    run.seed = Some(a.seed);
    Ok(run)
}

fn execute(cmd: &Command) -> Result<Run, CliError> {
    match cmd {
        Command::Construct(a) => cmd_construct(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Decode(a) => cmd_decode(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Replay(_) => unreachable!("replay is resolved before execution"),
    }
}

fn subcommand_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Construct(_) => "construct",
        Command::Analyze(_) => "analyze",
        Command::Decode(_) => "decode",
        Command::Verify(_) => "verify",
        Command::Simulate(_) => "simulate",
        Command::Replay(_) => "replay",
    }
}

fn code_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Analyze(a) => Some(&a.code),
        Command::Decode(a) => Some(&a.code),
        Command::Verify(a) => Some(&a.code),
        Command::Simulate(a) => Some(&a.code),
        Command::Construct(_) | Command::Replay(_) => None,
    }
}

/// The recorded command with output paths overridden.
fn resolve_replay(r: &ReplayArgs) -> Result<Command, CliError> {
    let text = read(&r.manifest)?;
    let m: RunManifest = serde_json::from_slice(&text).map_err(|e| CliError::Malformed {
        path: r.manifest.clone(),
        msg: e.to_string(),
    })?;
    let mut cmd = m.params;
    if let (Some(path), Some(want)) = (code_path(&cmd), &m.code_sha256) {
        let got = sha256_hex(&read(path)?);
        if &got != want {
            return Err(CliError::ManifestMismatch(format!(
                "{} has digest {got}, manifest recorded {want}",
                path.display()
            )));
        }
    }
    if let Some(out) = &r.out {
        match &mut cmd {
            Command::Construct(a) => a.out = out.clone(),
            Command::Analyze(a) => a.out = Some(out.clone()),
            Command::Decode(a) => a.out = Some(out.clone()),
            Command::Verify(a) => a.out = Some(out.clone()),
            Command::Simulate(a) => a.out = Some(out.clone()),
            Command::Replay(_) => {
                return Err(CliError::Malformed {
                    path: r.manifest.clone(),
                    msg: "nested replay".into(),
                })
            }
        }
    }
    if let (Some(log), Command::Construct(a)) = (&r.log, &mut cmd) {
        a.log = Some(log.clone());
    }
    Ok(cmd)
}

fn run(cmd: Command) -> Result<bool, CliError> {
    let cmd = match &cmd {
        Command::Replay(r) => resolve_replay(r)?,
        _ => cmd,
    };
    let started = Instant::now();
    let result = execute(&cmd)?;
    let wall = started.elapsed().as_secs_f64();
    let files: Vec<OutputFile> = result
        .outputs
        .iter()
        .filter_map(|(p, bytes)| {
            p.as_ref().map(|p| OutputFile {
                path: p.clone(),
                sha256: sha256_hex(bytes),
            })
        })
        .collect();
    let manifest = RunManifest {
        subcommand: subcommand_name(&cmd).to_string(),
        params: cmd.clone(),
        code_sha256: result.code_sha256.clone(),
        seed: result.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        threads: exec::current_threads(),
        wall_time_secs: wall,
        outputs: files,
    };
    let manifest_text =
        serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    for (path, bytes) in &result.outputs {
        match path {
            Some(p) => {
                write(p, bytes)?;
                write(&manifest_path(p), manifest_text.as_bytes())?;
            }
            None => {
                let _ = std::io::stdout().write_all(bytes);
            }
        }
    }
    if let Some(s) = &result.summary {
        eprintln!("{s}");
    }
    Ok(result.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command;
    match exec::with_threads(cli.threads, move || run(command)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            let line = serde_json::json!({ "error": e.category(), "message": e.to_string() });
            eprintln!("{line}");
            ExitCode::from(e.exit_code())
        }
    }
}
