//! Command-line front end. `run` returns the process exit code:
//! 0 success, 1 verification failure, 2 input error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::Exponent;
use crate::fixtures;
use crate::formulations::{edmonds_base, recursive_ef, LinearSystem, SizeLedger};
use crate::graph::{parse_graph, EnumerationCaps, Graph, GraphMode};
use crate::lp::verify_ef;
use crate::planar::{default_anchor, parse_rotation_file, trace_faces, williams_sweep};
use crate::protocols::{protocol_sweep, SweepReport};
use crate::separators::{build_separator_tree, ExactOracle, HeuristicOracle, SeparatorError, SeparatorTree, TreeParams};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "forest-ef", version, about = "Extended formulations of forest polytopes from separator trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the recursive extended formulation and its size ledger.
    Build(BuildArgs),
    /// Check an extended formulation against the forest polytope.
    Verify(VerifyArgs),
    /// Exhaustive protocol sweep.
    Protocol(ProtocolArgs),
    /// EF size against the closed-form bound on k×k grids.
    Scale(ScaleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SepMode {
    Exact,
    Heuristic,
    File,
}

#[derive(Debug, Clone, Args)]
pub struct TreeArgs {
    #[arg(long, default_value = "4")]
    pub c: String,
    #[arg(long, default_value = "1/2")]
    pub beta: String,
    /// Leaf threshold; defaults to max(ceil(c), 2).
    #[arg(long)]
    pub leaf: Option<usize>,
    #[arg(long, value_enum, default_value = "heuristic")]
    pub sep_mode: SepMode,
    /// Separator tree file, for `--sep-mode file`.
    #[arg(long)]
    pub tree: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub tree: TreeArgs,
    /// Density for the bound; defaults to the largest host density.
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// EF output path; the ledger goes to `<out>.ledger`. Stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the separator tree here.
    #[arg(long)]
    pub tree_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    pub ef: PathBuf,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolKind {
    Classical,
    Separator,
    Williams,
}

#[derive(Debug, Args)]
pub struct ProtocolArgs {
    /// Graph file, or a rotation file for `--kind williams`.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "classical")]
    pub kind: ProtocolKind,
    #[command(flatten)]
    pub tree: TreeArgs,
    /// Density for the separator bit bound; defaults to max(1, largest host density).
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long)]
    pub v0: Option<usize>,
    #[arg(long)]
    pub f0: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScaleArgs {
    /// Grid side lengths.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8")]
    pub sizes: Vec<usize>,
    #[command(flatten)]
    pub tree: TreeArgs,
    #[arg(long, default_value = "2")]
    pub d: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Failed(String),
}

type CliResult = Result<i32, CliError>;

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// Parse arguments (including the program name) and run.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Build(a) => cmd_build(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Protocol(a) => cmd_protocol(&a),
        Command::Scale(a) => cmd_scale(&a),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAIL
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write(p, text),
        None => to_stdout(text),
    }
}

/// A closed pipe (`| head`) is not an error.
fn to_stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(input(e)),
        _ => Ok(()),
    }
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?, GraphMode::Simple).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_positive(name: &str, s: &str) -> Result<Rational, CliError> {
    let r: Rational = s.parse().map_err(|e| CliError::Input(format!("--{name}: {e}")))?;
    if !r.is_positive() {
        return Err(CliError::Input(format!("--{name} must be positive, got {s}")));
    }
    Ok(r)
}

fn tree_params(a: &TreeArgs) -> Result<TreeParams, CliError> {
    let c = parse_positive("c", &a.c)?;
    let beta: Rational = a.beta.parse().map_err(|e| CliError::Input(format!("--beta: {e}")))?;
    let exponent = Exponent::from_rational(&beta)
        .filter(|b| b.p > 0 && b.p < b.q)
        .ok_or_else(|| CliError::Input(format!("--beta must lie strictly between 0 and 1, got {}", a.beta)))?;
    let params = TreeParams::new(c, exponent);
    Ok(match a.leaf {
        Some(0) => return Err(CliError::Input("--leaf must be at least 1".into())),
        Some(t) => params.with_leaf_threshold(t),
        None => params,
    })
}

fn separator_failure(e: SeparatorError) -> CliError {
    match e {
        SeparatorError::Parse { .. } | SeparatorError::InvalidParameter(_) | SeparatorError::InvalidAlpha(_) => input(e),
        other => CliError::Failed(other.to_string()),
    }
}

fn load_tree(g: &Graph, a: &TreeArgs) -> Result<SeparatorTree, CliError> {
    let params = tree_params(a)?;
    let half = Rational::new(1, 2);
    let tree = match a.sep_mode {
        SepMode::Exact => build_separator_tree(g, params, &ExactOracle::new(half)),
        SepMode::Heuristic => build_separator_tree(g, params, &HeuristicOracle::new(half)),
        SepMode::File => {
            let path = a.tree.as_ref().ok_or_else(|| CliError::Input("--sep-mode file needs --tree".into()))?;
            let tree = SeparatorTree::from_text(g.n(), &read(path)?, params).map_err(separator_failure)?;
            tree.validate(g).map(|_| tree)
        }
    };
    tree.map_err(separator_failure)
}

fn with_seed(seed: u64, body: &str) -> String {
    format!("# seed={seed}\n{body}")
}

fn build_for(g: &Graph, tree: &SeparatorTree) -> Result<(LinearSystem, SizeLedger), CliError> {
    recursive_ef(g, tree, &edmonds_base).map_err(|e| CliError::Failed(e.to_string()))
}

fn cmd_build(a: &BuildArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    let tree = load_tree(&g, &a.tree)?;
    let (sys, ledger) = build_for(&g, &tree)?;
    let d = match &a.d {
        Some(s) => parse_positive("d", s)?,
        None if ledger.max_host_density.is_positive() => ledger.max_host_density.clone(),
        None => Rational::one(),
    };
    let ef_text = with_seed(a.seed, &sys.to_text());
    let ledger_text = with_seed(a.seed, &ledger.to_text(&d));
    match &a.out {
        Some(p) => {
            write(p, &ef_text)?;
            let mut lp = p.clone().into_os_string();
            lp.push(".ledger");
            write(Path::new(&lp), &ledger_text)?;
        }
        None => to_stdout(&format!("{ef_text}{ledger_text}"))?,
    }
    if let Some(p) = &a.tree_out {
        write(p, &with_seed(a.seed, &tree.to_text()))?;
    }
    if ledger.within_bound(&d) {
        Ok(EXIT_OK)
    } else {
        Err(CliError::Failed(format!("EF size {} exceeds the closed-form bound", ledger.total())))
    }
}

fn cmd_verify(a: &VerifyArgs) -> CliResult {
    let g = load_graph(&a.graph)?;
    let sys = LinearSystem::from_text(&read(&a.ef)?).map_err(|e| CliError::Input(format!("{}: {e}", a.ef.display())))?;
    let report = verify_ef(&g, &sys, a.trials, a.seed);
    emit(a.out.as_deref(), &report.to_text())?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_protocol(a: &ProtocolArgs) -> CliResult {
    let caps = EnumerationCaps::default();
    let report: SweepReport = match a.kind {
        ProtocolKind::Classical => {
            let g = load_graph(&a.input)?;
            protocol_sweep(&g, None, &Rational::zero(), caps).map_err(input)?
        }
        ProtocolKind::Separator => {
            let g = load_graph(&a.input)?;
            let tree = load_tree(&g, &a.tree)?;
            let d = match &a.d {
                Some(s) => parse_positive("d", s)?,
                None => max_host_density(&g, &tree).max(Rational::one()),
            };
            protocol_sweep(&g, Some(&tree), &d, caps).map_err(input)?
        }
        ProtocolKind::Williams => {
            let (g, rot) = parse_rotation_file(&read(&a.input)?).map_err(input)?;
            let emb = trace_faces(&g, &rot).map_err(input)?;
            let (dv, df) = default_anchor(&emb);
            williams_sweep(&emb, a.v0.unwrap_or(dv), a.f0.unwrap_or(df), caps).map_err(input)?
        }
    };
    emit(a.out.as_deref(), &with_seed(a.seed, &report.to_text()))?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn max_host_density(g: &Graph, tree: &SeparatorTree) -> Rational {
    tree.nodes
        .iter()
        .filter(|n| n.host.count() > 0)
        .map(|n| g.induced_subgraph(&n.host).graph.density())
        .max()
        .unwrap_or_else(Rational::zero)
}

fn cmd_scale(a: &ScaleArgs) -> CliResult {
    let d = parse_positive("d", &a.d)?;
    let params = tree_params(&a.tree)?;
    if a.tree.sep_mode == SepMode::File {
        return Err(CliError::Input("scale builds its own trees; use exact or heuristic".into()));
    }
    if a.sizes.contains(&0) {
        return Err(CliError::Input("grid sizes must be at least 1".into()));
    }
    let exponent = params.beta.as_rational().to_f64();
    let mut out = String::from("k n size bound ratio within\n");
    let mut all_within = true;
    for &k in &a.sizes {
        let g = fixtures::grid(k);
        let tree = load_tree(&g, &a.tree)?;
        let (_, ledger) = build_for(&g, &tree)?;
        let n = g.n();
        let within = ledger.within_bound(&d);
        all_within &= within;
        let bound = ledger.closed_form(&d).approx() + ledger.leaf_allowance(&d).to_f64();
        let ratio = ledger.total() as f64 / (n as f64).powf(1.0 + exponent);
        writeln!(out, "{k} {n} {} {bound:.3} {ratio:.4} {within}", ledger.total()).unwrap();
    }
    emit(a.out.as_deref(), &with_seed(a.seed, &out))?;
    Ok(if all_within { EXIT_OK } else { EXIT_FAIL })
}
