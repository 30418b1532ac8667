//! End-to-end tests of the `tensim` binary: exit codes as a function of the
//! verdict, machine-readable outputs against the library as oracle, and
//! byte-level determinism of seeded runs.

use std::fs::{self, File};
use std::io::BufReader;
use std::path::Path;
use std::process::{Command, Output};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tensim_core::hankel::{format_complex, hankelize_values, write_signals_csv};
use tensim_core::similarity::synth::{random_dense, random_scalings, random_structured_pair};
use tensim_core::{DenseTensor, ModeSet};

fn tensim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary spawns")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal-terminated runs expected")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn write_tensor(path: &Path, tensor: &DenseTensor) {
    let mut file = File::create(path).expect("creatable path");
    tensor.write_tnsr(&mut file).expect("serializable tensor");
}

fn read_tensor(path: &Path) -> DenseTensor {
    let file = File::open(path).expect("readable path");
    DenseTensor::read_tnsr(BufReader::new(file)).expect("valid tensor file")
}

/// A tensor against a scaled copy of itself: one shared term, scalar in
/// every mode, exit code 0, and a JSON report naming the scaling.
#[test]
fn scaled_copy_exits_zero_with_the_scaling_in_the_report() {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let a = random_dense(&mut rng, &[4, 3, 3]).expect("valid dims");
    let b = a.scaled(Complex64::new(2.0, -1.0));
    write_tensor(&dir.path().join("a.tnsr"), &a);
    write_tensor(&dir.path().join("b.tnsr"), &b);

    let out = tensim(&["similar", "a.tnsr", "b.tnsr", "--json", "report.json"], dir.path());
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict: SameScaledTerms"), "stdout: {text}");
    assert!(text.contains("shared terms: 1"), "stdout: {text}");

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap())
            .expect("valid JSON report");
    assert_eq!(report["schema"], "tensim-report/1");
    assert_eq!(report["verdict"], "SameScaledTerms");
    assert_eq!(report["R"], 1);
    let lambda = report["lambdas"][0].as_array().expect("[re, im] pair");
    assert!((lambda[0].as_f64().unwrap() - 2.0).abs() < 1e-8);
    assert!((lambda[1].as_f64().unwrap() + 1.0).abs() < 1e-8);
}

/// Hankel tensors of `(1 + 0.5k)·zᵏ` and `(2 − 0.7k)·zᵏ` share one
/// exponential term, but the non-proportional polynomial coefficients make
/// the linking restriction a defective 2×2 block in every mode — shared
/// structure that no per-term rescaling explains: exit code 2.
#[test]
fn shared_polynomial_term_exits_two() {
    let dir = tempfile::tempdir().expect("tempdir");
    let z = Complex64::from_polar(0.9, 0.3);
    let poly = |c0: f64, c1: f64| -> Vec<Complex64> {
        (0..20).map(|k| Complex64::new(c0 + c1 * k as f64, 0.0) * z.powu(k)).collect()
    };
    let a = hankelize_values(&poly(1.0, 0.5), (8, 7, 7)).expect("20 samples fit 8+7+7-2");
    let b = hankelize_values(&poly(2.0, -0.7), (8, 7, 7)).expect("20 samples fit 8+7+7-2");
    write_tensor(&dir.path().join("a.tnsr"), &a);
    write_tensor(&dir.path().join("b.tnsr"), &b);

    let out = tensim(&["similar", "a.tnsr", "b.tnsr", "--eig-tol", "1e-3"], dir.path());
    assert_eq!(exit_code(&out), 2, "stdout: {} stderr: {}", stdout(&out), stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict: SharedStructureNonScalar"), "stdout: {text}");
    assert!(text.contains("shared terms: 1"), "stdout: {text}");
}

/// Two unrelated random tensors fail the row-space containment test in the
/// first analyzed mode: exit code 3.
#[test]
fn unrelated_pair_exits_three() {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let a = random_dense(&mut rng, &[4, 3, 3]).expect("valid dims");
    let b = random_dense(&mut rng, &[4, 3, 3]).expect("valid dims");
    write_tensor(&dir.path().join("a.tnsr"), &a);
    write_tensor(&dir.path().join("b.tnsr"), &b);

    let out = tensim(&["similar", "a.tnsr", "b.tnsr", "--modes", "2"], dir.path());
    assert_eq!(exit_code(&out), 3, "stdout: {} stderr: {}", stdout(&out), stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict: InclusionFailed"), "stdout: {text}");
    assert!(text.contains("row spaces not contained"), "stdout: {text}");
}

/// A condition ceiling of 1.01 rejects any genuinely multi-term pair — the
/// invariant-subspace bases of distinct terms are never that orthogonal:
/// exit code 4.
#[test]
fn tight_condition_ceiling_exits_four() {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let lambdas = random_scalings(&mut rng, 2, 0.3);
    let pair = random_structured_pair(
        &mut rng,
        &[5, 4, 4],
        2,
        &[vec![2, 1], vec![1, 2]],
        &lambdas,
    )
    .expect("feasible construction");
    write_tensor(&dir.path().join("a.tnsr"), &pair.a);
    write_tensor(&dir.path().join("b.tnsr"), &pair.b);

    let out = tensim(
        &["similar", "a.tnsr", "b.tnsr", "--modes", "2", "--cond-ceiling", "1.01"],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 4, "stdout: {} stderr: {}", stdout(&out), stderr(&out));
    assert!(stdout(&out).contains("analysis inconclusive"), "stdout: {}", stdout(&out));

    // The same pair at the default ceiling is perfectly analyzable.
    let out = tensim(&["similar", "a.tnsr", "b.tnsr", "--modes", "2"], dir.path());
    assert_eq!(exit_code(&out), 0, "stdout: {} stderr: {}", stdout(&out), stderr(&out));
}

/// Usage problems and I/O failures all exit 1 and never collide with the
/// verdict codes; `--help` stays 0.
#[test]
fn usage_and_io_errors_exit_one() {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let t = random_dense(&mut rng, &[2, 2, 2]).expect("valid dims");
    write_tensor(&dir.path().join("t.tnsr"), &t);

    let missing = tensim(&["similar", "absent.tnsr", "t.tnsr"], dir.path());
    assert_eq!(exit_code(&missing), 1);
    assert!(stderr(&missing).contains("tensim:"), "stderr: {}", stderr(&missing));

    let bad_flag = tensim(&["similar", "--bogus"], dir.path());
    assert_eq!(exit_code(&bad_flag), 1);

    let no_subcommand = tensim(&[], dir.path());
    assert_eq!(exit_code(&no_subcommand), 1);

    let zero_mode = tensim(&["unfold", "t.tnsr", "out.csv", "--modes", "0"], dir.path());
    assert_eq!(exit_code(&zero_mode), 1);
    assert!(stderr(&zero_mode).contains("numbered from 1"), "stderr: {}", stderr(&zero_mode));

    let all_modes = tensim(&["unfold", "t.tnsr", "out.csv", "--modes", "1,2,3"], dir.path());
    assert_eq!(exit_code(&all_modes), 1, "a full mode set is not a proper subset");

    let bad_config = tensim(&["demo-bss", "--config", "absent.conf"], dir.path());
    assert_eq!(exit_code(&bad_config), 1);

    let help = tensim(&["--help"], dir.path());
    assert_eq!(exit_code(&help), 0);
    assert!(stdout(&help).contains("similar"), "help lists the subcommands");
}

/// The CSV written by `unfold` matches the library's mode-set unfolding
/// cell for cell, through the lossless complex formatting.
#[test]
fn unfold_output_matches_the_library_oracle() {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let t = random_dense(&mut rng, &[2, 2, 2, 2]).expect("valid dims");
    write_tensor(&dir.path().join("t.tnsr"), &t);

    let out = tensim(&["unfold", "t.tnsr", "unfolded.csv", "--modes", "1,2"], dir.path());
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("4x4 matrix"), "stdout: {}", stdout(&out));

    let expected = t
        .unfold_modeset(&ModeSet::new([0, 1]).expect("proper subset"))
        .expect("valid mode set");
    let text = fs::read_to_string(dir.path().join("unfolded.csv")).expect("output written");
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), expected.nrows());
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), expected.ncols());
        for (j, cell) in cells.iter().enumerate() {
            assert_eq!(*cell, format_complex(expected[[i, j]]), "cell ({i}, {j})");
        }
    }
}

/// `hankelize` picks the requested CSV column and produces exactly the
/// library's Hankel tensor, preserved losslessly through the text format.
#[test]
fn hankelize_matches_the_library_oracle() {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let mut signal = |n: usize| -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    };
    let first = signal(6);
    let second = signal(6);
    let mut csv = Vec::new();
    write_signals_csv(&mut csv, &["left".into(), "right".into()], &[first, second.clone()])
        .expect("consistent columns");
    fs::write(dir.path().join("signals.csv"), csv).expect("writable dir");

    let out = tensim(
        &["hankelize", "signals.csv", "h.tnsr", "--col", "2", "--dims", "3", "3", "2"],
        dir.path(),
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("right"), "names the chosen column: {}", stdout(&out));

    let produced = read_tensor(&dir.path().join("h.tnsr"));
    let expected = hankelize_values(&second, (3, 3, 2)).expect("consistent length");
    assert_eq!(produced.dims(), expected.dims());
    assert_eq!(produced.data(), expected.data());
}

/// Seeded demo runs are reproducible down to the byte, across stdout and
/// both artifact files; the DOT export is well-formed and self-loop-free.
#[test]
fn demo_runs_are_deterministic_and_dot_is_well_formed() {
    let dir = tempfile::tempdir().expect("tempdir");
    fs::write(dir.path().join("demo.conf"), "mixtures = 10\nsigma_rel = 0\nseed = 3\n")
        .expect("writable dir");

    let args = |dot: &str, json: &str| {
        vec![
            "demo-bss".to_string(),
            "--config".to_string(),
            "demo.conf".to_string(),
            "--dot".to_string(),
            dot.to_string(),
            "--json".to_string(),
            json.to_string(),
        ]
    };
    let first = tensim(
        &args("g1.dot", "r1.json").iter().map(String::as_str).collect::<Vec<_>>(),
        dir.path(),
    );
    let second = tensim(
        &args("g2.dot", "r2.json").iter().map(String::as_str).collect::<Vec<_>>(),
        dir.path(),
    );
    assert_eq!(exit_code(&first), 0, "stderr: {}", stderr(&first));
    assert_eq!(first.stdout, second.stdout, "seeded runs must print identically");

    let dot1 = fs::read_to_string(dir.path().join("g1.dot")).unwrap();
    let dot2 = fs::read_to_string(dir.path().join("g2.dot")).unwrap();
    assert_eq!(dot1, dot2);
    let json1 = fs::read_to_string(dir.path().join("r1.json")).unwrap();
    let json2 = fs::read_to_string(dir.path().join("r2.json")).unwrap();
    assert_eq!(json1, json2);

    assert!(dot1.starts_with("digraph mixtures {\n"));
    assert!(dot1.trim_end().ends_with('}'));
    for line in dot1.lines() {
        if let Some((from, to)) = line.trim().trim_end_matches(';').split_once("->") {
            assert_ne!(from.trim(), to.trim(), "self-loop in DOT output: {line}");
        }
    }

    let report: serde_json::Value = serde_json::from_str(&json1).expect("valid JSON");
    assert_eq!(report["schema"], "tensim-bss/1");
    assert_eq!(report["parameters"]["seed"], 3);
    assert_eq!(report["parameters"]["sigma_rel"], 0.0);
    assert_eq!(report["predicted"]["vertices"], 10);
    for edge in report["predicted"]["edges"].as_array().expect("edge list") {
        let i = edge[0].as_u64().unwrap();
        let j = edge[1].as_u64().unwrap();
        assert!((1..=10).contains(&i) && (1..=10).contains(&j), "one-based vertex ids");
        assert_ne!(i, j);
    }
    let precision = report["score"]["precision"].as_f64().unwrap();
    let recall = report["score"]["recall"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&precision) && (0.0..=1.0).contains(&recall));

    // A flag override beats the config file.
    let overridden = tensim(
        &["demo-bss", "--config", "demo.conf", "--seed", "4", "--json", "r3.json"],
        dir.path(),
    );
    assert_eq!(exit_code(&overridden), 0, "stderr: {}", stderr(&overridden));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r3.json")).unwrap())
            .expect("valid JSON");
    assert_eq!(report["parameters"]["seed"], 4);
}
