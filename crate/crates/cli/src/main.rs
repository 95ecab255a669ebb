use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Complex Hadamard matrices in adjacency algebras of strongly regular graphs and covers.
#[derive(Parser)]
#[command(name = "hadamat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Graph(GraphCmd),
    #[command(subcommand)]
    Srg(SrgCmd),
    #[command(subcommand)]
    Cover(CoverCmd),
    #[command(subcommand)]
    Hadamard(HadamardCmd),
    /// Convert a matrix file for external tools.
    Export(ExportArgs),
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Build a named graph and print its parameters.
    Build(GraphBuildArgs),
}

#[derive(Args)]
pub struct GraphBuildArgs {
    /// Family name (petersen, cube, paley, lattice, triangular, cycle, mk) or a full
    /// spec such as `paley(13)` or `line_graph(petersen)`.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SrgCmd {
    /// Feasibility, spectrum and flat-family membership of a parameter set.
    Classify(SrgClassifyArgs),
    /// All type II matrices in the span of I, A and J - I - A.
    Solve(SrgSolveArgs),
}

#[derive(Args)]
pub struct SrgClassifyArgs {
    /// `v,k,a,c`
    #[arg(long)]
    pub params: String,
}

#[derive(Args)]
pub struct SrgSolveArgs {
    /// `v,k,a,c`
    #[arg(long)]
    pub params: String,
    /// Exact tower coordinates (the default).
    #[arg(long, conflicts_with = "float")]
    pub exact: bool,
    /// Floating-point values only.
    #[arg(long)]
    pub float: bool,
    /// Keep only solutions with unimodular entries.
    #[arg(long)]
    pub hadamard_only: bool,
    /// Build and verify W for every solution on the graph given by `--graph`.
    #[arg(long, requires = "graph")]
    pub build_w: bool,
    /// Graph JSON file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Directory for the matrix files written by `--build-w`.
    #[arg(long, default_value = ".")]
    pub w_dir: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Search one parameter triple.
    Solve(CoverSolveArgs),
    /// Search every feasible triple up to a bound on n.
    Scan(CoverScanArgs),
}

#[derive(Args, Clone)]
pub struct SearchArgs {
    /// Pseudorandom starts in addition to the grid.
    #[arg(long, default_value_t = 64)]
    pub seeds: usize,
    /// Grid points per angle.
    #[arg(long, default_value_t = 24)]
    pub grid: usize,
    /// Acceptance tolerance on the residual.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long)]
    pub no_bound_filter: bool,
    /// Largest square-free radicand tried during exact recognition.
    #[arg(long, default_value_t = 64)]
    pub max_radicand: i64,
}

#[derive(Args)]
pub struct CoverSolveArgs {
    /// `n,r,c2`
    #[arg(long)]
    pub params: String,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Build and verify W for every certified root on this cover (graph JSON).
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    pub w_dir: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CoverScanArgs {
    #[arg(long)]
    pub nmax: u64,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum HadamardCmd {
    /// Check a matrix file; exit status 0 on pass, 1 on failure.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to the mode of the file.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, default_value_t = hadamat::verify::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ExportFormat {
    Csv,
}

#[derive(Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: ExportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = hadamat::covers::thread_limit() {
        // Fails only if a pool exists already.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let res = match cli.command {
        Command::Graph(GraphCmd::Build(a)) => commands::graph_build(&a),
        Command::Srg(SrgCmd::Classify(a)) => commands::srg_classify(&a),
        Command::Srg(SrgCmd::Solve(a)) => commands::srg_solve(&a),
        Command::Cover(CoverCmd::Solve(a)) => commands::cover_solve(&a),
        Command::Cover(CoverCmd::Scan(a)) => commands::cover_scan(&a),
        Command::Hadamard(HadamardCmd::Verify(a)) => commands::verify(&a),
        Command::Export(a) => commands::export(&a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
