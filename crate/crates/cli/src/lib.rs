//! Parameter sweeps over the verifiers, with ordered JSON-lines output and
//! resumable runs.

use std::collections::BTreeMap;
use std::path::PathBuf;

use apery_core::TheoremId;
use clap::{Args, Parser, Subcommand};

pub mod compute;
pub mod error;
pub mod runner;
pub mod spec;

pub use compute::{compute, Family};
pub use error::CliError;
pub use runner::{
    evaluate, resume, resume_with, run_sweep, run_sweep_with, run_tasks, scan_output,
};
pub use spec::{Header, Range, SignChoice, SweepSpec, Task};

#[derive(Debug, Parser)]
#[command(
    name = "apery",
    version,
    about = "Exact verification sweeps for Apery-polynomial congruences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a parameter sweep and write JSON-lines reports.
    Verify {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        workers: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print one polynomial family member as JSON.
    Compute {
        #[command(subcommand)]
        family: Family,
    },
    /// Continue an interrupted sweep in place.
    Resume {
        /// Output file of an earlier `verify` run.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        workers: u32,
        /// Optionally restate the sweep; resuming refuses a file whose spec differs.
        #[command(flatten)]
        sweep: OptionalSweepArgs,
    },
}

macro_rules! range_flags {
    ($(#[$meta:meta])* $name:ident { $theorem:ty }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Args)]
        pub struct $name {
            #[arg(long)]
            pub theorem: $theorem,
            #[arg(long)]
            pub n: Option<Range>,
            #[arg(long)]
            pub m: Option<Range>,
            #[arg(long)]
            pub alpha: Option<Range>,
            #[arg(long)]
            pub d: Option<Range>,
            #[arg(long)]
            pub p: Option<Range>,
            #[arg(long)]
            pub a: Option<Range>,
            #[arg(long)]
            pub h: Option<Range>,
            #[arg(long)]
            pub b: Option<Range>,
            #[arg(long)]
            pub l: Option<Range>,
            /// `+1`, `-1` or `both`.
            #[arg(long, allow_hyphen_values = true)]
            pub sign: Option<SignChoice>,
            /// Omit `elapsed_ms` so that reruns are byte-identical.
            #[arg(long)]
            pub deterministic: bool,
        }

        impl $name {
            fn ranges(&self) -> BTreeMap<String, Range> {
                [
                    ("n", self.n),
                    ("m", self.m),
                    ("alpha", self.alpha),
                    ("d", self.d),
                    ("p", self.p),
                    ("a", self.a),
                    ("h", self.h),
                    ("b", self.b),
                    ("l", self.l),
                ]
                .into_iter()
                .filter_map(|(k, r)| r.map(|r| (k.to_string(), r)))
                .collect()
            }
        }
    };
}

range_flags!(SweepArgs { TheoremId });
range_flags!(OptionalSweepArgs { Option<TheoremId> });

impl SweepArgs {
    pub fn to_spec(&self) -> Result<SweepSpec, CliError> {
        SweepSpec::new(self.theorem, self.ranges(), self.sign, self.deterministic)
    }
}

impl OptionalSweepArgs {
    /// `None` when no theorem was given; other flags then must be absent.
    pub fn to_spec(&self) -> Result<Option<SweepSpec>, CliError> {
        match self.theorem {
            Some(t) => SweepSpec::new(t, self.ranges(), self.sign, self.deterministic).map(Some),
            None if self.ranges().is_empty() && self.sign.is_none() && !self.deterministic => {
                Ok(None)
            }
            None => Err(CliError::usage(
                "sweep flags given to resume without --theorem",
            )),
        }
    }
}

/// Executes a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify {
            sweep,
            workers,
            out,
        } => run_sweep(&sweep.to_spec()?, workers as usize, &out),
        Command::Compute { family } => {
            println!("{}", compute(&family)?);
            Ok(0)
        }
        Command::Resume {
            out,
            workers,
            sweep,
        } => resume(&out, workers as usize, sweep.to_spec()?.as_ref()),
    }
}
