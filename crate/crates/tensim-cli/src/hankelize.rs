//! `tensim hankelize` — lift a sampled signal into a Hankel tensor.
//!
//! Reads a CSV of signal columns (header row of names, one sample per
//! row, complex values like `1.5-0.25i` accepted), selects one column,
//! and writes its third-order Hankel tensor as a TNSR file. The
//! dimensions must satisfy `I1 + I2 + I3 = N + 2` for `N` samples; when
//! `--dims` is omitted the most balanced split is used, which maximizes
//! the rank the tensor can express.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args as ClapArgs;
use tensim_core::hankel::{balanced_hankel_dims, hankelize_values, read_signals_csv};

#[derive(ClapArgs)]
pub struct Args {
    /// Signal CSV (header row, one sample per row)
    pub signals: PathBuf,

    /// Output tensor (TNSR file)
    pub out: PathBuf,

    /// Hankel dimensions; must sum to the sample count plus two
    /// (default: most balanced split)
    #[arg(long, num_args = 3, value_names = ["I1", "I2", "I3"])]
    pub dims: Option<Vec<usize>>,

    /// Which signal column to lift, one-based
    #[arg(long, value_name = "K", default_value_t = 1)]
    pub col: usize,
}

pub fn run(args: Args) -> anyhow::Result<u8> {
    let file = File::open(&args.signals)
        .with_context(|| format!("opening {}", args.signals.display()))?;
    let (names, columns) = read_signals_csv(file)
        .with_context(|| format!("reading {}", args.signals.display()))?;

    if args.col == 0 || args.col > columns.len() {
        bail!(
            "column {} out of range: {} has {} signal column(s)",
            args.col,
            args.signals.display(),
            columns.len()
        );
    }
    let values = &columns[args.col - 1];

    let dims = match &args.dims {
        Some(d) => (d[0], d[1], d[2]),
        None => balanced_hankel_dims(values.len(), 1)?,
    };
    let tensor = hankelize_values(values, dims)?;

    let out = File::create(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    tensor.write_tnsr(BufWriter::new(out))
        .with_context(|| format!("writing {}", args.out.display()))?;

    println!(
        "hankelized column {} ({}) of {} samples into {}x{}x{} -> {}",
        args.col,
        names[args.col - 1],
        values.len(),
        dims.0,
        dims.1,
        dims.2,
        args.out.display()
    );
    Ok(0)
}
