//! `clf`: compute the Catalan-Larcombe-French numbers and relatives, expand
//! the associated eta quotients, and run congruence verifications.
//!
//! Exit status: 0 when every check passes, 1 when any check produced a
//! counterexample, 2 on a usage or configuration error.

mod output;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clf_core::qseries::NamedSeries;
use clf_core::{Caps, Error, SequenceId};

use crate::output::Format;
use crate::verify::Family;

#[derive(Parser, Debug)]
#[command(
    name = "clf",
    version,
    about = "Exact computations and congruence checks for the CLF numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format
    #[arg(long, global = true, value_enum, env = "CLF_FORMAT", default_value_t = Format::Human)]
    pub format: Format,

    /// Largest sequence index any command may compute
    #[arg(long = "cap-index", global = true, default_value_t = Caps::default().index)]
    pub cap_index: u64,

    /// Largest series truncation order
    #[arg(long = "cap-order", global = true, default_value_t = Caps::default().order)]
    pub cap_order: usize,
}

impl GlobalArgs {
    pub fn caps(&self) -> Caps {
        Caps {
            index: self.cap_index,
            order: self.cap_order,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print s_0..=s_max of a sequence
    Seq {
        #[arg(value_enum)]
        id: SeqArg,
        /// Largest index
        #[arg(long)]
        max: u64,
        /// Also print the p-adic valuation of each value
        #[arg(long)]
        vp: Option<u64>,
    },
    /// Run a verification family
    Verify(verify::VerifyArgs),
    /// Print the q-expansion of t, f, E or E(2τ) through q^order
    Qexpand {
        #[arg(value_enum)]
        name: SeriesArg,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeqArg {
    Clf,
    Franel,
    #[value(name = "apery-a")]
    AperyA,
    #[value(name = "apery-b")]
    AperyB,
}

impl From<SeqArg> for SequenceId {
    fn from(s: SeqArg) -> Self {
        match s {
            SeqArg::Clf => SequenceId::Clf,
            SeqArg::Franel => SequenceId::Franel,
            SeqArg::AperyA => SequenceId::AperyA,
            SeqArg::AperyB => SequenceId::AperyB,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesArg {
    #[value(name = "t")]
    T,
    #[value(name = "f")]
    F,
    #[value(name = "E")]
    E,
    #[value(name = "E2")]
    E2,
}

impl From<SeriesArg> for NamedSeries {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::T => NamedSeries::T,
            SeriesArg::F => NamedSeries::F,
            SeriesArg::E => NamedSeries::E,
            SeriesArg::E2 => NamedSeries::E2,
        }
    }
}

/// Failure of a command, mapped onto the exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::CapExceeded { .. }
            | Error::NotPrime(_)
            | Error::Series(_) => Failure::Usage(e.to_string()),
            Error::InexactDivision { .. } | Error::CrossCheck { .. } | Error::Internal(_) => {
                Failure::Check(e.to_string())
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let global = &cli.global;
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Seq { id, max, vp } => {
            output::seq(&mut stdout, id.into(), max, vp, global)?;
            Ok(true)
        }
        Command::Qexpand { name, order } => {
            output::qexpand(&mut stdout, name.into(), order, global)?;
            Ok(true)
        }
        Command::Verify(args) => {
            if args.family == Family::All {
                return verify::all(&mut stdout, global);
            }
            let reports = verify::run(&args, &global.caps())?;
            output::reports(&mut stdout, &reports, global.format)?;
            Ok(reports.iter().all(|r| r.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
