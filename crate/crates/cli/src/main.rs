mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ars_core::{ArsError, FieldSpec, Fp, Rational};

/// Auslander-Reiten computations for comodules over path coalgebras.
#[derive(Parser, Debug)]
#[command(name = "ars", version)]
pub struct Cli {
    /// Base field: `p:<prime>` or `q`.
    #[arg(long, global = true, default_value = "p:32003")]
    pub field: FieldSpec,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Quiver file.
    #[arg(long)]
    pub quiver: PathBuf,

    /// `full`, `full:<maxlen>` or `<subquiver file>:<maxlen>`.
    #[arg(long, default_value = "full")]
    pub window: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summarize a quiver and its window.
    Quiver {
        #[command(flatten)]
        input: Input,
    },
    /// Indecomposable summands of a representation.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rep: PathBuf,
    },
    /// The translate `DTr` (or `TrD` with `--inverse`).
    Dtr {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// The almost split sequence ending at an indecomposable.
    Ass {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rep: PathBuf,
        /// Also write the sequence in text format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Auslander-Reiten quiver, up to a dimension budget.
    Knit {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 32)]
        max_dim: usize,
    },
    /// Finitely almost split certificate of a sequence.
    FasCertify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
        /// Window of the test objects; defaults to `--window`.
        #[arg(long)]
        test_window: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
    },
    /// A tower over a chain of windows.
    Tower {
        /// `ainf|dinf|loop:<depth>`.
        #[arg(long)]
        chain: String,
        /// Representation over the first window of the chain.
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, value_enum, default_value_t = TowerKind::Ass)]
        kind: TowerKind,
    },
    /// Mittag-Leffler exactness of an inverse tower of linear sequences.
    MlCheck {
        #[arg(long)]
        tower: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TowerKind {
    Ass,
    Transpose,
}

/// What a command printed and whether its verdict passed.
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match cli.field {
        FieldSpec::Rationals => commands::run::<Rational>(cli),
        FieldSpec::PrimeField { p: 1031 } => commands::run::<Fp<1031>>(cli),
        FieldSpec::PrimeField { p: 32003 } => commands::run::<Fp<32003>>(cli),
        FieldSpec::PrimeField { p: 65521 } => commands::run::<Fp<65521>>(cli),
        FieldSpec::PrimeField { p: 1000003 } => commands::run::<Fp<1000003>>(cli),
        FieldSpec::PrimeField { p: 2147483647 } => commands::run::<Fp<2147483647>>(cli),
        FieldSpec::PrimeField { p } => {
            bail!("modulus {p} is not built in; use one of 1031, 32003, 65521, 1000003, 2147483647")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match e.downcast_ref::<ArsError>() {
                Some(inner) => eprintln!("error: {inner}"),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}
