mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use cellform::io::ReportFormat;
use cellform::ImprovementParams;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, ManifestSource, Tuning};

#[derive(Parser)]
#[command(
    name = "cellform",
    version,
    about = "Machine-part cell formation solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one incidence matrix and print the report.
    Solve {
        input: PathBuf,
        #[command(flatten)]
        tuning: TuningArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Solve every available problem of a manifest and compare with the
    /// reported results.
    Bench {
        /// Manifest file; the bundled literature manifest when omitted.
        manifest: Option<PathBuf>,
        /// Data directory for the bundled manifest.
        #[arg(long, default_value = "data")]
        data_dir: PathBuf,
        #[command(flatten)]
        tuning: TuningArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the linkage table "left right level" of the machine dendrogram.
    Dendro {
        input: PathBuf,
        /// Decimals for merge levels.
        #[arg(long, default_value_t = 3)]
        precision: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TuningArgs {
    /// Evaluate a single cell count instead of the default range 2..=m-1.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = ImprovementParams::DEFAULT_MAX_ITERATIONS)]
    max_iter: usize,
    /// Consecutive non-improving iterations before the heuristic stops.
    #[arg(long, default_value_t = ImprovementParams::DEFAULT_PATIENCE)]
    patience: usize,
    /// Cuts with a smaller cell only win when no cut meets this size.
    #[arg(long, default_value_t = 2)]
    min_cell_machines: usize,
}

impl From<&TuningArgs> for Tuning {
    fn from(a: &TuningArgs) -> Self {
        Tuning {
            k: a.k,
            max_iter: a.max_iter,
            patience: a.patience,
            min_cell_machines: a.min_cell_machines,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn emit(body: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, body).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            input,
            tuning,
            format,
            output,
        } => {
            let format = match format {
                Format::Text => ReportFormat::Text,
                Format::Json => ReportFormat::Json,
            };
            let body = commands::cmd_solve(&input, &(&tuning).into(), format)?;
            emit(&body, output.as_ref())
        }
        Command::Bench {
            manifest,
            data_dir,
            tuning,
            output,
        } => {
            let source = match &manifest {
                Some(path) => ManifestSource::File(path),
                None => ManifestSource::Bundled {
                    data_dir: &data_dir,
                },
            };
            let (body, _) = commands::cmd_bench(source, &(&tuning).into(), &mut |name, secs| {
                eprintln!("timing {name} {:.3} ms", secs * 1e3)
            })?;
            emit(&body, output.as_ref())
        }
        Command::Dendro {
            input,
            precision,
            output,
        } => emit(&commands::cmd_dendro(&input, precision)?, output.as_ref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
