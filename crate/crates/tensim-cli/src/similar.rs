//! `tensim similar` — compare two tensors for shared scaled terms.
//!
//! Reads two tensors of equal dimensions, runs the similarity analysis
//! over the leading `--modes` modes (all of them by default), recovers the
//! term decomposition when the verdict supports one, prints a summary, and
//! optionally writes the full JSON report. The process exit code encodes
//! the verdict so scripts can branch without parsing output:
//! 0 same scaled terms, 2 shared structure with at least one non-scalar
//! block, 3 inclusion failed, 4 unreliable.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use anyhow::Context;
use clap::Args as ClapArgs;
use tensim_core::hankel::format_complex;
use tensim_core::similarity::{
    DEFAULT_INCLUSION_THRESH, DEFAULT_RESIDUAL_TOL, DEFAULT_SCALAR_TOL,
};
use tensim_core::spectral::DEFAULT_COND_CEILING;
use tensim_core::{
    analyze_and_recover, Complex64, DenseTensor, SimilarityConfig, SimilarityReport, Verdict,
};

#[derive(ClapArgs)]
pub struct Args {
    /// First tensor (TNSR file)
    pub tensor_a: PathBuf,

    /// Second tensor (TNSR file, same dimensions)
    pub tensor_b: PathBuf,

    /// Number of leading modes to analyze (default: all modes)
    #[arg(long, value_name = "N")]
    pub modes: Option<usize>,

    /// Write the full JSON report to this file
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Ceiling on the relative residual of each mode's linking system
    #[arg(long, value_name = "TOL", default_value_t = DEFAULT_RESIDUAL_TOL)]
    pub residual_tol: f64,

    /// Eigenvalue-clustering tolerance (default: derived from the linking
    /// matrices)
    #[arg(long, value_name = "TOL")]
    pub eig_tol: Option<f64>,

    /// Tolerance for declaring a restriction block scalar
    #[arg(long, value_name = "TOL", default_value_t = DEFAULT_SCALAR_TOL)]
    pub scalar_tol: f64,

    /// Threshold on subspace-inclusion scores during compression
    #[arg(long, value_name = "T", default_value_t = DEFAULT_INCLUSION_THRESH)]
    pub inclusion_thresh: f64,

    /// Condition-number ceiling for stacked invariant-subspace bases
    #[arg(long, value_name = "C", default_value_t = DEFAULT_COND_CEILING)]
    pub cond_ceiling: f64,
}

pub fn run(args: Args) -> anyhow::Result<u8> {
    let a = read_tensor(&args.tensor_a)?;
    let b = read_tensor(&args.tensor_b)?;

    let mut config = SimilarityConfig::new(args.modes.unwrap_or(a.order()));
    config.residual_tol = args.residual_tol;
    config.eig_tol = args.eig_tol;
    config.scalar_tol = args.scalar_tol;
    config.inclusion_thresh = args.inclusion_thresh;
    config.cond_ceiling = args.cond_ceiling;

    let (report, decomposition) = analyze_and_recover(&a, &b, &config)?;

    print_summary(&report);
    if let Some(d) = &decomposition {
        println!(
            "reconstruction error: {:.2e} (first tensor), {:.2e} (second)",
            d.reconstruction_error_a, d.reconstruction_error_b
        );
    }

    if let Some(path) = &args.json {
        let mut out = File::create(path)
            .with_context(|| format!("creating {}", path.display()))?;
        out.write_all(report.to_json_pretty().as_bytes())
            .and_then(|()| writeln!(out))
            .with_context(|| format!("writing {}", path.display()))?;
    }

    Ok(verdict_exit(report.verdict))
}

fn read_tensor(path: &PathBuf) -> anyhow::Result<DenseTensor> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    DenseTensor::read_tnsr(BufReader::new(file))
        .with_context(|| format!("reading {}", path.display()))
}

fn verdict_exit(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::SameScaledTerms => 0,
        Verdict::SharedStructureNonScalar => 2,
        Verdict::InclusionFailed => 3,
        Verdict::Unreliable => 4,
    }
}

fn print_summary(report: &SimilarityReport) {
    println!("verdict: {}", report.verdict);
    match report.verdict {
        Verdict::InclusionFailed => {
            if let (Some(mode), Some(res)) =
                (report.diagnostics.failed_mode, report.diagnostics.failed_residual)
            {
                println!(
                    "mode {}: row spaces not contained (score {:.3e})",
                    mode + 1,
                    res
                );
            }
        }
        Verdict::Unreliable => {
            let worst = report
                .diagnostics
                .cond_s
                .iter()
                .cloned()
                .fold(0.0_f64, f64::max);
            println!("analysis inconclusive (worst basis condition {worst:.3e})");
        }
        _ => {
            println!("shared terms: {}", report.r);
            for (r, lambda) in report.lambdas.iter().enumerate() {
                let l: Vec<String> = report
                    .multiplicities
                    .iter()
                    .map(|per_mode| per_mode[r].to_string())
                    .collect();
                let mark = if report.zero_scalings.contains(&r) {
                    "  [absent from second tensor]"
                } else {
                    ""
                };
                println!(
                    "  term {}: lambda = {}, multiplicities = ({}){}",
                    r + 1,
                    format_complex(Complex64::new(lambda[0], lambda[1])),
                    l.join(", "),
                    mark
                );
            }
            if let Some(mass) = report.off_block_mass {
                println!("off-block mass: {mass:.2e}");
            }
        }
    }
}
