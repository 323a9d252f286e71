//! Thin command-line front end over the library pipeline.

use arrangements::report::{analyze_file, report_json, report_text, selftest, AnalysisOptions};
use arrangements::sullivan::free_lie_ranks;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "arrangements",
    about = "Rational ellipticity or hyperbolicity of complex subspace arrangement complements",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an arrangement file and print the full report.
    Analyze {
        /// Path to a JSON arrangement file.
        file: PathBuf,
        /// Degree bound for the minimal model and certificates.
        #[arg(long, default_value_t = 12)]
        max_degree: i64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact combinatorial rank oracles.
    Oracle {
        #[command(subcommand)]
        oracle: Oracle,
    },
    /// Run the built-in invariant suite over the bundled corpus.
    Selftest,
}

#[derive(Subcommand)]
enum Oracle {
    /// Ranks of the free graded Lie algebra on given generator degrees.
    #[command(name = "free-lie")]
    FreeLie {
        /// Generator degrees, comma separated (each at least 1).
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<i64>,
        /// Largest degree to report.
        #[arg(long)]
        max: i64,
    },
}

fn run() -> u8 {
    match Cli::parse().command {
        Command::Analyze {
            file,
            max_degree,
            format,
        } => {
            let options = AnalysisOptions {
                max_degree,
                ..AnalysisOptions::default()
            };
            match analyze_file(&file, &options) {
                Ok(analysis) => {
                    let report = match format {
                        Format::Json => report_json(&analysis),
                        Format::Text => report_text(&analysis),
                    };
                    print!("{report}");
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code() as u8
                }
            }
        }
        Command::Oracle {
            oracle: Oracle::FreeLie { degrees, max },
        } => {
            if degrees.iter().any(|&d| d < 1) || max < 1 {
                eprintln!("error: generator degrees and --max must be at least 1");
                return 2;
            }
            for (degree, rank) in free_lie_ranks(&degrees, max) {
                println!("{degree}: {rank}");
            }
            0
        }
        Command::Selftest => {
            let report = selftest();
            for line in &report.lines {
                println!("{line}");
            }
            if report.passed {
                println!("selftest: all {} checks passed", report.lines.len());
                0
            } else {
                println!("selftest: FAILED");
                1
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run())
}
