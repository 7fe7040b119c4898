//! The `ppath` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or format error,
//! 3 solver or search budget exhausted. A witness that fails its own
//! verification aborts the process.

mod commands;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug, Serialize)]
#[command(name = "ppath", version, about = "Powers of paths in tournaments")]
pub struct Cli {
    /// Write the run manifest here instead of next to the primary output.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Generate a tournament file.
    Gen(GenArgs),
    /// Longest power path by the exact oracle or the greedy baseline.
    Solve(SolveArgs),
    /// Run the recursive finder.
    Find(FindArgs),
    /// Check a witness against a tournament.
    Verify(VerifyArgs),
    /// Extremal search by enumeration or annealing.
    Search(SearchArgs),
    /// Path lengths of random tournaments as CSV.
    Table(TableArgs),
    /// Re-run a recorded manifest.
    Replay(ReplayArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Random,
    Transitive,
    Rotational,
}

#[derive(Args, Debug, Serialize)]
pub struct GenArgs {
    #[arg(long = "type", value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Connection set of a rotational tournament, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub residues: Vec<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("method").required(true).args(["exact", "greedy"])))]
pub struct SolveArgs {
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub greedy: bool,
    #[arg(short = 'k', default_value_t = 2)]
    pub k: usize,
    pub input: PathBuf,
    #[arg(long)]
    pub budget_ms: Option<u64>,
    #[arg(long)]
    pub budget_states: Option<u64>,
    /// Tie-breaking seed for the greedy baseline.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Witness JSON file; printed after the summary line when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct FindArgs {
    #[arg(short = 'k', default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 8)]
    pub parts: usize,
    #[arg(long, default_value_t = 16)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub base_case: usize,
    #[arg(long, default_value_t = 8)]
    pub max_depth: usize,
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Route trace as JSON lines.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    pub input: PathBuf,
    pub witness: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Enumerate,
    Anneal,
}

#[derive(Args, Debug, Serialize)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value_t = SearchMode::Anneal)]
    pub mode: SearchMode,
    #[arg(long, required_unless_present = "resume")]
    pub n: Option<usize>,
    #[arg(short = 'k', default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 100_000)]
    pub iters: u64,
    #[arg(long, default_value_t = 1.0)]
    pub t0: f64,
    #[arg(long, default_value_t = 0.99)]
    pub cooling: f64,
    #[arg(long, default_value_t = 100)]
    pub moves_per_step: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub chains: usize,
    /// State cap per exact objective evaluation.
    #[arg(long, default_value_t = 1 << 20)]
    pub max_states: u64,
    #[arg(long, default_value = "search_out")]
    pub out_dir: PathBuf,
    /// Continue a single-chain anneal from its checkpoint.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    pub checkpoint_every: u64,
    /// Stop (with a checkpoint) once this many iterations have run.
    #[arg(long)]
    pub stop_after: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableMethod {
    Exact,
    Find,
    Greedy,
}

#[derive(Args, Debug, Serialize)]
pub struct TableArgs {
    /// Comma-separated sizes, or an inclusive range `a..b`.
    #[arg(long)]
    pub n_list: String,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = TableMethod::Find)]
    pub method: TableMethod,
    #[arg(short = 'k', default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write 0 in the millis column.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ReplayArgs {
    pub manifest_file: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("format: {0}")]
    Format(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

/// What a command did, for the exit code and the manifest.
#[derive(Debug, Default)]
pub struct Report {
    pub code: i32,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    /// Manifest location when `--manifest` is not given.
    pub manifest_at: Option<PathBuf>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

/// Everything needed to repeat a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// Arguments after the program name, verbatim.
    pub args: Vec<String>,
    /// Parsed flags with defaults filled in.
    pub flags: serde_json::Value,
    pub seed: Option<u64>,
    pub inputs: Vec<InputHash>,
    pub outputs: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn configure_threads() {
    let Ok(v) = std::env::var("PPATH_THREADS") else { return };
    match v.trim().parse::<usize>() {
        Ok(0) => {}
        Ok(n) => {
            // A second call (replay) keeps the first pool.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Err(_) => eprintln!("ignoring PPATH_THREADS={v}"),
    }
}

/// Parse and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let recorded: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Solve(a) => commands::solve(a),
        Command::Find(a) => commands::find(a),
        Command::Verify(a) => commands::verify(a),
        Command::Search(a) => commands::search(a),
        Command::Table(a) => commands::table(a),
        Command::Replay(a) => return replay(&a.manifest_file),
    };
    match result.and_then(|r| write_manifest(&cli, recorded, r)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Gen(_) => "gen",
        Command::Solve(_) => "solve",
        Command::Find(_) => "find",
        Command::Verify(_) => "verify",
        Command::Search(_) => "search",
        Command::Table(_) => "table",
        Command::Replay(_) => "replay",
    }
}

fn write_manifest(cli: &Cli, args: Vec<String>, r: Report) -> Result<i32, CliError> {
    let Some(path) = cli.manifest.clone().or(r.manifest_at.clone()) else {
        return Ok(r.code);
    };
    let mut inputs = Vec::new();
    for p in &r.inputs {
        let bytes = fs::read(p).map_err(|e| CliError::io(p, e))?;
        inputs.push(InputHash {
            path: p.display().to_string(),
            sha256: sha256_hex(&bytes),
        });
    }
    let m = RunManifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        subcommand: subcommand_name(&cli.command).into(),
        args,
        flags: serde_json::to_value(&cli.command).expect("flags serialize"),
        seed: r.seed,
        inputs,
        outputs: r.outputs.iter().map(|p| p.display().to_string()).collect(),
    };
    let text = serde_json::to_string_pretty(&m).expect("manifest serializes") + "\n";
    fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
    Ok(r.code)
}

fn replay(path: &Path) -> i32 {
    let m: RunManifest = match fs::read_to_string(path)
        .map_err(|e| CliError::io(path, e))
        .and_then(|s| serde_json::from_str(&s).map_err(|e| CliError::Format(e.to_string())))
    {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    for input in &m.inputs {
        let now = fs::read(&input.path).map(|b| sha256_hex(&b));
        if now.as_deref().ok() != Some(input.sha256.as_str()) {
            eprintln!("error: input {} changed or is missing", input.path);
            return EXIT_USAGE;
        }
    }
    run(std::iter::once("ppath".to_string()).chain(m.args))
}
