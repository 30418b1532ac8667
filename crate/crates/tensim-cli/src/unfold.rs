//! `tensim unfold` — write a mode-set matricization as CSV.
//!
//! The selected modes (one-based, comma-separated) index the matrix
//! columns; the remaining modes index the rows, both enumerated
//! first-index-fastest. The mode set must be a nonempty proper subset of
//! the tensor's modes. Values are written in the same complex literal
//! form the signal CSV reader accepts (`re`, `re±imi`).

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args as ClapArgs;
use tensim_core::hankel::format_complex;
use tensim_core::{DenseTensor, ModeSet};

#[derive(ClapArgs)]
pub struct Args {
    /// Input tensor (TNSR file)
    pub tensor: PathBuf,

    /// Output CSV
    pub out: PathBuf,

    /// Modes forming the column index, one-based (e.g. `--modes 1,3`)
    #[arg(long, value_name = "MODES", value_delimiter = ',', required = true)]
    pub modes: Vec<usize>,
}

pub fn run(args: Args) -> anyhow::Result<u8> {
    let file = File::open(&args.tensor)
        .with_context(|| format!("opening {}", args.tensor.display()))?;
    let tensor = DenseTensor::read_tnsr(BufReader::new(file))
        .with_context(|| format!("reading {}", args.tensor.display()))?;

    if let Some(&m) = args.modes.iter().find(|&&m| m == 0) {
        bail!("mode {m} invalid: modes are numbered from 1");
    }
    let modes = ModeSet::new(args.modes.iter().map(|&m| m - 1))?;
    let matrix = tensor.unfold_modeset(&modes)?;

    let out = File::create(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let mut out = BufWriter::new(out);
    for row in matrix.rows() {
        let cells: Vec<String> = row.iter().map(|&z| format_complex(z)).collect();
        writeln!(out, "{}", cells.join(",")).with_context(|| {
            format!("writing {}", args.out.display())
        })?;
    }
    out.flush()?;

    let labels: Vec<String> = args.modes.iter().map(|m| m.to_string()).collect();
    println!(
        "unfolded {:?} over modes {{{}}} into a {}x{} matrix -> {}",
        tensor.dims(),
        labels.join(","),
        matrix.nrows(),
        matrix.ncols(),
        args.out.display()
    );
    Ok(0)
}
