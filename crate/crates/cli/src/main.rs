use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cayley::algebra_file::AlgebraFile;
use cayley::claims::{self, CoverageChoice, VerifyOptions};
use cayley::report::{self, Report};
use cayley::{exit_code, groups, norm_theorem, CliError};
use cayley_core::grouppoints::GroupKind;
use cayley_core::{AlgebraSpec, Budget, RingSpec};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "cayley",
    version,
    about = "Exact checks on quaternion and octonion algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here (`-` for stdout, replacing the table).
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named claim, or all of them, on an algebra.
    Verify {
        #[arg(long)]
        claim: String,
        #[arg(long, value_name = "FILE")]
        algebra: PathBuf,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long, value_name = "N")]
        samples: Option<u64>,
        #[arg(long, default_value_t = Budget::DEFAULT_LIMIT)]
        budget: u64,
        /// Treat skipped claims as failures.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the isomorphism and isometry partitions of quaternion algebras.
    NormTheorem {
        #[arg(long, value_name = "SPEC")]
        ring: RingSpec,
        #[arg(long, default_value_t = Budget::DEFAULT_LIMIT)]
        budget: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Enumerate a group of points.
    Group {
        #[arg(long, value_name = "O|SO|SL1|MU2|AUT")]
        which: GroupKind,
        #[arg(long, value_name = "FILE")]
        algebra: PathBuf,
        #[arg(long, default_value_t = Budget::DEFAULT_LIMIT)]
        budget: u64,
        /// Include every element in the report.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: Output,
    },
}

fn load_spec(path: &Path) -> Result<AlgebraSpec, CliError> {
    Ok(AlgebraFile::load(path)?.to_spec()?)
}

fn emit(reports: &[Report], output: &Output) -> Result<(), CliError> {
    match output.json.as_deref() {
        Some(p) if p == Path::new("-") => print!("{}", report::to_json(reports)),
        Some(p) => {
            std::fs::write(p, report::to_json(reports))
                .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            print!("{}", report::to_table(reports));
        }
        None => print!("{}", report::to_table(reports)),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify {
            claim,
            algebra,
            exhaustive,
            samples,
            budget,
            strict,
            output,
        } => {
            let spec = load_spec(&algebra)?;
            let coverage = match (exhaustive, samples) {
                (true, _) => CoverageChoice::Exhaustive,
                (false, Some(0)) => {
                    return Err(CliError::Usage("--samples must be positive".into()))
                }
                (false, Some(n)) => CoverageChoice::Samples(n),
                (false, None) => CoverageChoice::Auto,
            };
            let reports = claims::verify(&claim, &spec, &VerifyOptions { coverage, budget })?;
            emit(&reports, &output)?;
            Ok(exit_code(&reports, strict))
        }
        Command::NormTheorem {
            ring,
            budget,
            output,
        } => {
            let reports = [norm_theorem::run(ring, budget)?];
            emit(&reports, &output)?;
            Ok(exit_code(&reports, false))
        }
        Command::Group {
            which,
            algebra,
            budget,
            list,
            output,
        } => {
            let spec = load_spec(&algebra)?;
            let reports = [groups::run(which, &spec, budget, list)?];
            emit(&reports, &output)?;
            Ok(exit_code(&reports, false))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("CAYLEY_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        // ignore the error if a pool was already built
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
