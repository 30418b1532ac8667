//! `tensim` — command-line frontend for the tensor-similarity library.
//!
//! Four subcommands cover the end-to-end workflows:
//!
//! * `similar` — decide whether two tensors are sums of the same scaled
//!   low multilinear-rank terms and report the shared structure.
//! * `hankelize` — lift one sampled signal from a CSV into a third-order
//!   Hankel tensor.
//! * `demo-bss` — run the mixture-classification experiment: generate
//!   sparse random mixtures of the benchmark sources, classify them by
//!   Hankel subspace inclusion, and score the resulting graph against the
//!   ground truth.
//! * `unfold` — write a mode-set matricization of a tensor as CSV.
//!
//! Exit codes: `similar` encodes its verdict (0 same scaled terms,
//! 2 shared structure with non-scalar blocks, 3 inclusion failed,
//! 4 unreliable); every command uses 1 for usage, I/O, and parse errors.
//! Modes and column numbers are one-based on the command line and
//! translated to the library's zero-based convention at the boundary.

mod demo_bss;
mod hankelize;
mod similar;
mod unfold;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "tensim",
    version,
    about = "Tensor similarity analysis without decomposition",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two tensors for shared scaled terms
    Similar(similar::Args),
    /// Hankelize one signal column of a CSV into a tensor
    Hankelize(hankelize::Args),
    /// Run the blind-source-separation classification demo
    DemoBss(demo_bss::Args),
    /// Write a mode-set unfolding of a tensor as CSV
    Unfold(unfold::Args),
}

fn main() -> ExitCode {
    // clap's own exit code for usage errors is 2, which collides with the
    // verdict encoding of `similar`; remap usage errors to 1 and keep the
    // zero exit of --help/--version.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let result = match cli.command {
        Command::Similar(args) => similar::run(args),
        Command::Hankelize(args) => hankelize::run(args),
        Command::DemoBss(args) => demo_bss::run(args),
        Command::Unfold(args) => unfold::run(args),
    };

    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("tensim: {err:#}");
            ExitCode::from(1)
        }
    }
}
