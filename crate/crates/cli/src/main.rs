use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ntc_cli::commands::{self, EnumMode};
use ntc_cli::{exit, CliError, Report};

/// Gorenstein tests for normal tangent cones of integrally closed ideals
/// on normal surface singularities.
#[derive(Debug, Parser)]
#[command(name = "ntc", version)]
struct Cli {
    /// Print indented text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Write the report to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weighted dual graph analysis.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Brieskorn hypersurfaces x^a + y^b + z^c.
    Brieskorn(BrieskornArgs),
    /// Homogeneous hypersurfaces of degree d.
    #[command(subcommand)]
    Homog(HomogCommand),
    /// Run the bundled acceptance checks.
    VerifyPaper {
        /// Sweep bound for Brieskorn types.
        #[arg(long, default_value_t = 30)]
        max: u32,
        /// Load fixtures from DIR instead of the embedded corpus.
        #[arg(long, value_name = "DIR")]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GraphCommand {
    /// Parse and validate a graph file.
    Check { file: PathBuf },
    /// Cycle from arrows, its invariants and the Gorenstein criterion.
    Analyze {
        file: PathBuf,
        /// Test the criterion at this normal reduction number.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: Option<u32>,
    },
    /// Dual cycle E_v^* of a vertex.
    Dual { file: PathBuf, vertex: String },
    /// Fundamental cycle.
    Fundamental { file: PathBuf },
    /// Enumerate integral anti-nef cycles.
    Enum {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Cycle file W for `--mode below` (default: fundamental cycle).
        #[arg(long, value_name = "FILE")]
        bound: Option<PathBuf>,
    },
    /// Minimum of chi over a box of positive cycles.
    Chimin {
        file: PathBuf,
        /// Cycle file bounding the search box.
        #[arg(long, value_name = "FILE")]
        bound: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    /// Z - W not effective.
    Below,
    /// Z not > Z_K.
    Zk,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
struct BrieskornArgs {
    #[command(subcommand)]
    scan: Option<BrieskornCommand>,
    #[arg(requires_all = ["b", "c"])]
    a: Option<u32>,
    b: Option<u32>,
    c: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum BrieskornCommand {
    /// All types 2 <= a <= b <= c <= max.
    Scan {
        #[arg(long, default_value_t = 30)]
        max: u32,
    },
}

#[derive(Debug, Subcommand)]
enum HomogCommand {
    /// Gorenstein integrally closed ideals.
    Classify {
        d: u32,
        /// Largest degree accepted.
        #[arg(long, default_value_t = 8)]
        cap: u32,
    },
    /// Data of m^n.
    Power { d: u32, n: u32 },
    /// Data of I(L) = (L) + m^2.
    Il { d: u32 },
}

fn dispatch(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Graph(g) => match g {
            GraphCommand::Check { file } => commands::graph_check(&file),
            GraphCommand::Analyze { file, r } => commands::graph_analyze(&file, r),
            GraphCommand::Dual { file, vertex } => commands::graph_dual(&file, &vertex),
            GraphCommand::Fundamental { file } => commands::graph_fundamental(&file),
            GraphCommand::Enum { file, mode, bound } => {
                let mode = match mode {
                    Mode::Below => EnumMode::Below,
                    Mode::Zk => EnumMode::Canonical,
                };
                commands::graph_enum(&file, mode, bound.as_deref())
            }
            GraphCommand::Chimin { file, bound } => commands::graph_chimin(&file, bound.as_deref()),
        },
        Command::Brieskorn(args) => match (args.scan, args.a, args.b, args.c) {
            (Some(BrieskornCommand::Scan { max }), ..) => commands::brieskorn_scan(max),
            (None, Some(a), Some(b), Some(c)) => commands::brieskorn_single(a, b, c),
            _ => Err(CliError::Input(
                "expected `brieskorn A B C` or `brieskorn scan`".into(),
            )),
        },
        Command::Homog(h) => match h {
            HomogCommand::Classify { d, cap } => commands::homog_classify(d, cap),
            HomogCommand::Power { d, n } => commands::homog_power(d, n),
            HomogCommand::Il { d } => commands::homog_il(d),
        },
        Command::VerifyPaper { max, fixtures } => commands::verify_paper(max, fixtures),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match dispatch(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::INPUT_ERROR as u8);
        }
    };
    let text = if cli.human {
        report.to_human()
    } else {
        report.to_json()
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(exit::INPUT_ERROR as u8);
            }
        }
        None => print!("{text}"),
    }
    if report.failed() {
        ExitCode::from(exit::VERIFICATION_FAILURE as u8)
    } else {
        ExitCode::from(exit::SUCCESS as u8)
    }
}
