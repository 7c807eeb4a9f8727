//! The `slq` command line.
//!
//! Exit codes: 0 success, 1 validation or precondition failure, 2 parse
//! error in an input file, 64 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cases::InputCase;
use crate::cover::{classify_cover, slc_check, CoverDescriptor};
use crate::dot::export_dot;
use crate::error::Error;
use crate::flip::{flip, FlipInput, FlipKind};
use crate::io::{parse_cover, parse_pair, render_pair, DocumentError};
use crate::lattice::LogPair;
use crate::rat::Rat;
use crate::stabilizer::{expected_row, regenerate_table, stabilize, table_mismatches};
use crate::verify::run_all;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "slq", version, about = "Stable reduction of log quadric surfaces with exact intersection numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FlipArg {
    Type1,
    Type2,
    Topple,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Runs the stable reduction of a case and prints the stable pair.
    Stabilize {
        /// maroni-general, third-third, maroni-special, hyperelliptic, f3f3, f1f1 or f3f1.
        case: String,
        /// Comma-separated sub-case flags, e.g. `contains-sigma,tangent`.
        #[arg(long, value_delimiter = ',')]
        sub: Vec<String>,
    },
    /// Runs one surgery on a pair document and prints the log and the result.
    Flip {
        kind: FlipArg,
        pairfile: String,
        /// The flipping curve (for a topple: the end component's curve).
        #[arg(long)]
        curve: String,
        /// `n` of the A_n point of the total space (staged flips).
        #[arg(long, default_value_t = 0)]
        staging: u32,
        /// The divisor curve the blow-ups run along.
        #[arg(long)]
        along: Option<String>,
        /// Further curves through the first blow-up centre.
        #[arg(long, value_delimiter = ',')]
        at_p: Vec<String>,
        /// Further curves through the second blow-up centre.
        #[arg(long, value_delimiter = ',')]
        at_q: Vec<String>,
        /// Further curves through the third blow-up centre.
        #[arg(long, value_delimiter = ',')]
        at_r: Vec<String>,
    },
    /// Classifies the stable limit of a triple cover.
    ClassifyCover { coverfile: String },
    /// Prints the regenerated table of stable surfaces and checks it.
    Table,
    /// Runs the full verification suite.
    Verify {
        /// Print every comparison, not only the mismatches.
        #[arg(long)]
        verbose: bool,
    },
    /// Prints the dual graph of a pair document in DOT.
    Dot { pairfile: String },
    /// Checks that (P, c·br) of a cover is slc.
    SlcCheck {
        coverfile: String,
        /// The weight c as an exact fraction p/q.
        #[arg(long)]
        weight: String,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure { code: EXIT_INVALID, message: e.to_string() }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Failure {
        let code = match e {
            DocumentError::Parse(_) => EXIT_PARSE,
            DocumentError::Invalid(_) => EXIT_INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: EXIT_USAGE, message }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
}

fn load_pair(path: &str) -> Result<LogPair, Failure> {
    Ok(parse_pair(&read(path)?)?)
}

fn load_cover(path: &str) -> Result<CoverDescriptor, Failure> {
    Ok(parse_cover(&read(path)?)?)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let w = |out: &mut dyn Write, text: &str| writeln!(out, "{text}").map_err(|e| usage(format!("cannot write output: {e}")));
    match command {
        Command::Stabilize { case, sub } => {
            let case = InputCase::parse(&case, &sub).map_err(|e| usage(e.to_string()))?;
            let rec = stabilize(&case)?;
            w(out, &rec.to_string())?;
            Ok(EXIT_OK)
        }
        Command::Flip { kind, pairfile, curve, staging, along, at_p, at_q, at_r } => {
            let pair = load_pair(&pairfile)?;
            let kind = match kind {
                FlipArg::Type1 => FlipKind::TypeI,
                FlipArg::Type2 => FlipKind::TypeII,
                FlipArg::Topple => FlipKind::Topple,
            };
            let mut input = FlipInput::new(pair, &curve, kind).with_staging(staging);
            if let Some(c) = &along {
                input = input.with_c(c);
            }
            input.incidence.at_p = at_p;
            input.incidence.at_q = at_q;
            input.incidence.at_r = at_r;
            let (result, log) = flip(&input)?;
            w(out, &format!("# transform log\n{log}"))?;
            w(out, &render_pair(&result))?;
            Ok(EXIT_OK)
        }
        Command::ClassifyCover { coverfile } => {
            let cover = load_cover(&coverfile)?;
            let case = classify_cover(&cover)?;
            w(out, &format!("case: {case}"))?;
            w(out, &format!("stable surface (row {}): {}", expected_row(&case).number(), expected_row(&case)))?;
            Ok(EXIT_OK)
        }
        Command::Table => {
            let table = regenerate_table()?;
            for row in &table {
                w(out, &row.to_string())?;
            }
            let mismatches = table_mismatches(&table);
            for m in &mismatches {
                w(out, &format!("MISMATCH {m}"))?;
            }
            Ok(if mismatches.is_empty() { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Verify { verbose } => {
            let checks = run_all();
            let mut failed = 0;
            for c in &checks {
                w(out, &c.to_string())?;
                for line in &c.lines {
                    if verbose || line.starts_with("MISMATCH") {
                        w(out, &format!("      {line}"))?;
                    }
                }
                failed += usize::from(!c.pass);
            }
            w(out, &format!("{} of {} criteria pass", checks.len() - failed, checks.len()))?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Dot { pairfile } => {
            let pair = load_pair(&pairfile)?;
            write!(out, "{}", export_dot(&pair)?).map_err(|e| usage(format!("cannot write output: {e}")))?;
            Ok(EXIT_OK)
        }
        Command::SlcCheck { coverfile, weight } => {
            let c = Rat::parse(&weight).map_err(|e| usage(format!("--weight: {e}")))?;
            let cover = load_cover(&coverfile)?;
            let ok = slc_check(&cover, &c);
            w(out, &format!("weight {c}: {}", if ok { "slc" } else { "not slc" }))?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line on `args` (including the program name), writing
/// to `out` and `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
