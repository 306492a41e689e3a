//! `kkw`: batch verification of the boundary terms from the command line.
//!
//! Exit status is 0 when everything checked matches, 1 on a mismatch and 2 on
//! usage or input errors. `KKW_THREADS` caps the worker threads used for cases.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kkw_engine::fixtures::{default_fixture_dir, load_citations, CitationTable, CLOSED_FORMS_FILE};
use kkw_engine::kkw::identities::{self, IdentityCheck};
use kkw_engine::report::{run_verification, ReportFormat, VerificationReport, VerifyOptions};
use kkw_engine::kkw::Execution;

#[derive(Parser)]
#[command(name = "kkw", version, about = "Exact re-derivation of boundary terms of noncommutative residues")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_dim(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n @ (4 | 6)) => Ok(n),
        _ => Err(format!("unsupported dimension `{s}` (expected 4 or 6)")),
    }
}

#[derive(Args)]
struct Dimension {
    /// Manifold dimension.
    #[arg(long, default_value_t = 4, value_parser = parse_dim)]
    dim: usize,
}

#[derive(Args)]
struct FixtureDir {
    /// Directory holding the fixture files.
    #[arg(long, value_name = "DIR")]
    fixtures: Option<PathBuf>,
}

impl FixtureDir {
    fn path(&self) -> PathBuf {
        self.fixtures.clone().unwrap_or_else(default_fixture_dir)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the cases, compare with the fixtures and run every identity check.
    Verify {
        #[command(flatten)]
        dim: Dimension,
        /// Only evaluate this case (a-I, a-II, a-III, b, c).
        #[arg(long)]
        case: Option<String>,
        /// Also write the report as JSON to this path.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Rewrite f ∂_n f⁻¹ as −f⁻¹ ∂_n f before comparing.
        #[arg(long)]
        simplify: bool,
        /// Evaluate the cases one after another.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        fixtures: FixtureDir,
    },
    /// Print the Clifford trace identities.
    TraceTable {
        #[command(flatten)]
        dim: Dimension,
        #[command(flatten)]
        fixtures: FixtureDir,
    },
    /// Print the projection closed forms with their status.
    PiPlus {
        /// Run the built-in closed forms in both dimensions.
        #[arg(long, required = true)]
        demo: bool,
        #[command(flatten)]
        fixtures: FixtureDir,
    },
    /// Render a saved JSON report as text.
    Report { path: PathBuf },
}

type Outcome = Result<bool, String>;

fn print_checks(checks: &[IdentityCheck], table: &CitationTable) -> bool {
    for c in checks {
        println!("{c}");
        if let Some(cit) = table.get(&c.id, c.dimension) {
            println!("       {}: {}", cit.equation, cit.quote);
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    failed == 0
}

fn citations(dir: &Path) -> Result<CitationTable, String> {
    load_citations(&dir.join(CLOSED_FORMS_FILE)).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify {
            dim,
            case,
            json,
            simplify,
            sequential,
            fixtures,
        } => {
            let opts = VerifyOptions {
                dimension: dim.dim,
                case,
                simplify,
                fixture_dir: fixtures.path(),
                execution: if sequential { Execution::Sequential } else { Execution::Parallel },
            };
            let report = run_verification(&opts).map_err(|e| e.to_string())?;
            if let Some(path) = json {
                report
                    .emit(&path, ReportFormat::Json)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            print!("{}", report.to_text());
            Ok(report.passed)
        }
        Command::TraceTable { dim, fixtures } => {
            let table = citations(&fixtures.path())?;
            let checks = identities::trace_table(dim.dim).map_err(|e| e.to_string())?;
            Ok(print_checks(&checks, &table))
        }
        Command::PiPlus { demo: _, fixtures } => {
            let table = citations(&fixtures.path())?;
            let mut checks = Vec::new();
            for n in [4, 6] {
                checks.extend(identities::projections(n).map_err(|e| e.to_string())?);
            }
            Ok(print_checks(&checks, &table))
        }
        Command::Report { path } => {
            let report = VerificationReport::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            print!("{}", report.to_text());
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
