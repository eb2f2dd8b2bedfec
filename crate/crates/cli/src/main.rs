use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod report;

use error::CliError;
use report::RunReport;

#[derive(Parser, Debug)]
#[command(
    name = "minorlab",
    version,
    about = "Testing and approximate certification of minor-closed properties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance and write it as an edge list.
    Gen(GenArgs),
    /// Run the one-sided tester over several seeds.
    Test(TestArgs),
    /// Extract a deletion set or an obstruction packing.
    Dichotomy(DichotomyArgs),
    /// Build and verify a cover.
    Cover(CoverArgs),
    /// Prove, verify or attack a proof labelling scheme.
    Certify(CertifyArgs),
    /// Evaluate the unsplit size recursion.
    Bounds(BoundsArgs),
    /// Parameter sweeps emitting one row per point.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Edge-list file.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    /// Instance family, generated with `--n` and `--seed`.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `generic`, `forest` or `lattice:WxH`; defaults to what the generator
    /// reports, or `generic` for files.
    #[arg(long)]
    pub structure: Option<String>,
    /// Join components by one edge between consecutive components.
    #[arg(long)]
    pub connect: bool,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Defaults to `bipartite`, or to freeness of `--forbidden`.
    #[arg(long)]
    pub property: Option<String>,
    /// Treedepth bound for the enumerated forbidden family.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// Vertex bound for the enumerated forbidden family.
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    /// Forbidden graphs as edge lists separated by `---` lines. Without
    /// `--property` the tested property is freeness of these graphs.
    #[arg(long)]
    pub forbidden: Option<PathBuf>,
}

impl FamilyArgs {
    pub fn property_name(&self) -> &str {
        self.property.as_deref().unwrap_or("bipartite")
    }
}

#[derive(Args, Debug)]
pub struct TestArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Degeneracy-style density bound `C` with `e(H) ≤ C·v(H)`.
    #[arg(long, default_value_t = 3.0)]
    pub density: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 2.0)]
    pub c2: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DichotomyArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 3.0)]
    pub density: f64,
    /// Where to write the deletion set or packing as JSON.
    #[arg(long)]
    pub artifact: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CoverKindArg {
    Treedepth,
    WeakDiameter,
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 0.25)]
    pub delta: f64,
    #[arg(long, value_enum, default_value_t = CoverKindArg::Treedepth)]
    pub kind: CoverKindArg,
    /// Also derive an edge deletion to bounded treedepth at this budget.
    #[arg(long)]
    pub deletion_eps: Option<f64>,
    #[arg(long)]
    pub artifact: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Action {
    Prove,
    Verify,
    Attack,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    Tree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Randomized,
}

#[derive(Args, Debug, Clone)]
pub struct SchemeArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    /// Number of cover sets; with `--D` (scheme A) or `--d` (scheme B)
    /// overrides the structure-derived parameters.
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long = "D")]
    pub weak_diameter: Option<usize>,
    #[arg(long = "d")]
    pub depth_bound: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(value_enum)]
    pub action: Action,
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Proof file: written by `prove` and `attack`, read by `verify`.
    #[arg(long)]
    pub proof: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    /// Proof samples for the randomized adversary.
    #[arg(long, default_value_t = 10_000)]
    pub budget: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long = "depth", short = 'd')]
    pub depth: usize,
    /// Largest decimal value printed in full.
    #[arg(long, default_value_t = 100)]
    pub digit_budget: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Queries,
    Reject,
    ProofSize,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub kind: SweepKind,
    #[arg(long, default_value = "disjoint-triangles-plus-path")]
    pub family: String,
    /// Host sizes.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub ns: Vec<usize>,
    /// Proximity values for `reject`.
    #[arg(long, value_delimiter = ',', default_value = "0.05,0.1,0.2,0.3")]
    pub eps_list: Vec<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3.0)]
    pub density: f64,
    #[command(flatten)]
    pub family_args: FamilyArgs,
    /// Scheme for `proof-size`.
    #[arg(long, value_enum, default_value_t = SchemeArg::A)]
    pub scheme: SchemeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let start = Instant::now();
    let (mut report, output) = match cli.command {
        Command::Gen(args) => return commands::gen(&args),
        Command::Test(args) => (commands::test(&args)?, args.output),
        Command::Dichotomy(args) => (commands::dichotomy(&args)?, args.output),
        Command::Cover(args) => (commands::cover(&args)?, args.output),
        Command::Certify(args) => (commands::certify(&args)?, args.output),
        Command::Bounds(args) => (commands::bounds(&args)?, args.output),
        Command::Sweep(args) => (commands::sweep(&args)?, args.output),
    };
    report.wall_clock_ms = start.elapsed().as_millis() as u64;
    emit(&report, &output)
}

fn emit(report: &RunReport, output: &OutputArgs) -> Result<(), CliError> {
    report::validate_report(&serde_json::to_value(report)?).map_err(CliError::Data)?;
    let mut buf = Vec::new();
    match output.format {
        Format::Json => report.write_json(&mut buf)?,
        Format::Csv => report.write_csv(&mut buf)?,
    }
    match &output.out {
        Some(path) => std::fs::write(path, buf)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&buf)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{body}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
