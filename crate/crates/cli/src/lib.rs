//! Command-line front end for `quadbir-core`.
//!
//! [`run`] parses arguments, dispatches to a command and maps every failure
//! onto a sysexits-style exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success |
//! | 2    | an internal verification check failed |
//! | 64   | bad flags or unsupported dimension |
//! | 65   | malformed or out-of-domain input data |
//! | 74   | the `--out` file could not be written |

pub mod commands;
pub mod expr;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("verification failed: `{claim}`: {detail}")]
    Verification { claim: String, detail: String },
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Verification { .. } => EXIT_VERIFICATION,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

impl From<quadbir_core::Error> for CliError {
    fn from(e: quadbir_core::Error) -> Self {
        use quadbir_core::Error as E;
        match e {
            E::Consistency { claim, detail } => CliError::Verification { claim, detail },
            E::UnsupportedDimension(_) => CliError::Usage(e.to_string()),
            E::Domain(_) | E::InvalidInvariants(_) | E::Degenerate | E::Overflow(_) => CliError::Data(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "quadbir", version, about = "Exact verification of special quadro-quadric and cubo-cubic transformations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the classification for quadrics of dimension 3 or 4.
    Classify(ClassifyArgs),
    /// Evaluate a top-degree intersection number on the blow-up.
    Intersect(IntersectArgs),
    /// Run one of the lattice checks.
    Lattice(LatticeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifyFormat {
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeCheck {
    Mult5,
    Contradiction,
    Saturation,
    Discriminant,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub dim: i64,
    #[arg(long, value_enum, default_value_t = ClassifyFormat::Json)]
    pub format: ClassifyFormat,
    /// Also write the output to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IntersectArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub dim: i64,
    /// Degree of the blown-up curve or surface.
    #[arg(long, allow_negative_numbers = true)]
    pub d: BigInt,
    /// Genus of the curve (dimension 3).
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<BigInt>,
    /// `H_S . K_S` of the surface (dimension 4).
    #[arg(long, allow_negative_numbers = true)]
    pub hk: Option<BigInt>,
    /// Euler number of the surface (dimension 4).
    #[arg(long, allow_negative_numbers = true)]
    pub c2: Option<BigInt>,
    /// Polynomial in H, E and H', homogeneous of degree `dim`.
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[arg(long, value_enum)]
    pub check: LatticeCheck,
    /// Gram matrix as a JSON array of rows, e.g. "[[12,5],[5,0]]".
    #[arg(long)]
    pub gram: Option<String>,
    /// 0-based indices of generators known to be primitive.
    #[arg(long, value_delimiter = ',')]
    pub primitive: Option<Vec<usize>>,
    /// Prime for the saturation check.
    #[arg(long)]
    pub p: Option<BigInt>,
    /// Order of the cyclic discriminant group (contradiction check).
    #[arg(long)]
    pub modulus: Option<BigInt>,
    /// Multiplier to test against +-1 (contradiction check).
    #[arg(long, allow_negative_numbers = true)]
    pub multiplier: Option<BigInt>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let echo_args: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let echo = report::command_echo(&echo_args);

    let (output, out_path) = match &cli.command {
        Command::Classify(a) => (commands::classify(a, &echo), a.out.as_ref()),
        Command::Intersect(a) => (commands::intersect(a, &echo), a.out.as_ref()),
        Command::Lattice(a) => (commands::lattice(a, &echo), a.out.as_ref()),
    };
    let written = output.and_then(|text| {
        if let Some(path) = out_path {
            std::fs::write(path, &text).map_err(|source| CliError::Io { path: path.clone(), source })?;
        }
        Ok(text)
    });
    match written {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "quadbir: error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadbir_core::Error as CoreError;

    #[test]
    fn core_errors_map_to_exit_codes() {
        let cases = [
            (CoreError::Consistency { claim: "c".into(), detail: "d".into() }, EXIT_VERIFICATION),
            (CoreError::UnsupportedDimension(5), EXIT_USAGE),
            (CoreError::Degenerate, EXIT_DATA),
            (CoreError::Domain("x".into()), EXIT_DATA),
            (CoreError::InvalidInvariants("x".into()), EXIT_DATA),
            (CoreError::Overflow("x".into()), EXIT_DATA),
        ];
        for (e, code) in cases {
            assert_eq!(CliError::from(e).exit_code(), code);
        }
    }

    #[test]
    fn verification_failure_names_the_claim() {
        let e = CliError::from(CoreError::Consistency { claim: "dA_1".into(), detail: "computed Z/5".into() });
        assert_eq!(e.to_string(), "verification failed: `dA_1`: computed Z/5");
    }

    #[test]
    fn run_in_process() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(["quadbir", "lattice", "--check", "discriminant", "--gram", "[[12,5],[5,0]]"], &mut out, &mut err);
        assert_eq!((code, out.as_slice(), err.len()), (EXIT_OK, b"Z/25\n".as_slice(), 0));
    }
}
