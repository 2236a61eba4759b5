//! `hqf`: command-line front end for exact harmonic quaternion field computations.

mod commands;
mod format;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = hqf_core::random::DEFAULT_SEED;

#[derive(Debug)]
pub enum CliError {
    /// Exit 2: a computed check disagreed with the expected value.
    Mismatch(String),
    /// Exit 3: the input field or values are mathematically invalid.
    Invalid(String),
    /// Prints a report to stdout, then exits with `code`.
    Report { report: String, message: String, code: u8 },
    /// Exit 4: unreadable file or malformed input.
    Format(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Report { code, .. } => *code,
            CliError::Format(_) => 4,
        }
    }
}

impl From<hqf_core::Error> for CliError {
    fn from(e: hqf_core::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "hqf", version, about = "Exact harmonic quaternion field computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ranks of sums of axial harmonic spaces against 2r / 2n+1.
    Dims {
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        /// Largest family size; defaults to n+2 for each degree.
        #[arg(long)]
        r_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random families per (n, r) cell.
        #[arg(long, default_value_t = 10)]
        families: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
    },
    /// Decompose a harmonic field into axial parts and emit a certificate.
    Decompose {
        field: PathBuf,
        /// Semicolon-separated axes, e.g. "1,0,0;0,1,0". Overrides axes in the file.
        #[arg(long)]
        axes: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report harmonicity and the frame axes a field is axial about.
    Verify {
        field: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Divergence correction of u + perturbation and completion to a harmonic field.
    Density {
        field: PathBuf,
        perturbation: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Points on each sampled sphere.
        #[arg(long, default_value_t = 2562)]
        sphere_points: usize,
        /// Number of sampled radii 1, 1/2, 1/4, ...
        #[arg(long, default_value_t = 8)]
        radii: usize,
    },
    /// Reconstruct a point from the values of a functional on the coordinate fields.
    Characters {
        /// A rational point "a,b,c"; its evaluation values are used.
        #[arg(long, conflicts_with = "values", required_unless_present = "values")]
        point: Option<String>,
        /// JSON file with `values` (three quaternions) and an optional `frame`.
        #[arg(long)]
        values: Option<PathBuf>,
        /// Frame as "w1;w2;w3", each "a,b,c".
        #[arg(long)]
        frame: Option<String>,
        /// Largest power in the growth table for points outside the ball.
        #[arg(long, default_value_t = 6)]
        powers: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Write a field file: a coordinate field of the standard frame or a random harmonic field.
    Sample {
        /// Coordinate field index 1, 2 or 3.
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        pi: Option<usize>,
        /// Degree of a random homogeneous harmonic field.
        #[arg(long)]
        random: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The product of two coordinate fields that is not harmonic.
    Witness {
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Dims {
            n_max,
            r_max,
            seed,
            families,
            format,
        } => commands::dims(n_max, r_max, seed, families, format),
        Command::Decompose {
            field,
            axes,
            seed,
            out,
        } => commands::write_out(commands::decompose(&field, axes.as_deref(), seed)?, out),
        Command::Verify { field, format } => commands::verify(&field, format),
        Command::Density {
            field,
            perturbation,
            out,
            sphere_points,
            radii,
        } => commands::write_out(
            commands::density(&field, &perturbation, sphere_points, radii)?,
            out,
        ),
        Command::Characters {
            point,
            values,
            frame,
            powers,
            format,
        } => commands::characters(point.as_deref(), values.as_deref(), frame.as_deref(), powers, format),
        Command::Sample {
            pi,
            random,
            seed,
            out,
        } => commands::write_out(commands::sample(pi, random, seed)?, out),
        Command::Witness { format } => Ok(commands::witness(format)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            if !out.is_empty() {
                let _ = writeln!(std::io::stdout().lock(), "{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.code();
            match e {
                CliError::Report { report, message, .. } => {
                    let _ = writeln!(std::io::stdout().lock(), "{report}");
                    eprintln!("error: {message}");
                }
                CliError::Mismatch(m) | CliError::Invalid(m) | CliError::Format(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(code)
        }
    }
}
