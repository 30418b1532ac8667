//! Randomized properties of the similarity engine on synthetic pairs whose
//! term structure is known by construction.
//!
//! Every instance is built as `A = Σ 𝒟_r`, `B = Σ λ_r 𝒟_r` with low
//! multilinear-rank terms, so the correct verdict, term count, scalings, and
//! per-mode multiplicities are all available as ground truth. The tests
//! exercise the engine end to end and also poke at two structural claims
//! behind it: the per-mode linking matrices carry the same spectrum, and the
//! single-mode linking conditions imply every multi-mode one.

use ndarray_linalg::SVD;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensim_core::similarity::synth::{random_dense, random_matrix, random_scalings, SynthPair};
use tensim_core::similarity::{check_redundant_inclusions, compress_pair};
use tensim_core::spectral::primary_decomposition;
use tensim_core::tensor::Matrix;
use tensim_core::{analyze_and_recover, ModeSet, SimilarityConfig, Verdict};

/// Shapes used for the randomized engine checks: dims, analyzed mode count,
/// and per-term mode ranks.
fn structured_cases() -> Vec<(Vec<usize>, usize, Vec<Vec<usize>>)> {
    vec![
        (vec![5, 4, 6], 2, vec![vec![2, 1], vec![1, 2]]),
        (vec![8, 7, 5], 2, vec![vec![2, 1], vec![1, 1], vec![2, 2], vec![1, 2]]),
        (vec![6, 6, 6, 4], 3, vec![vec![1, 1, 1], vec![2, 2, 1], vec![1, 2, 2]]),
        (vec![4, 5, 4, 3], 2, vec![vec![1, 1], vec![2, 3]]),
    ]
}

fn build(seed: u64, dims: &[usize], n_hat: usize, ranks: &[Vec<usize>]) -> SynthPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambdas = random_scalings(&mut rng, ranks.len(), 0.3);
    tensim_core::similarity::synth::random_structured_pair(&mut rng, dims, n_hat, ranks, &lambdas)
        .expect("feasible construction")
}

/// Index of the report term closest to `lambda`; callers check that no
/// index gets claimed twice.
fn match_term(report_lambdas: &[[f64; 2]], lambda: Complex64) -> usize {
    report_lambdas
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let da = (Complex64::new(a[0], a[1]) - lambda).norm();
            let db = (Complex64::new(b[0], b[1]) - lambda).norm();
            da.total_cmp(&db)
        })
        .map(|(i, _)| i)
        .expect("nonempty report")
}

/// The full engine contract on exact synthetic pairs: scaled-terms verdict,
/// exact term count, scalings to 1e−8, and per-mode multiplicities equal to
/// the construction's multilinear ranks.
#[test]
fn engine_recovers_construction_on_exact_instances() {
    for (case, (dims, n_hat, ranks)) in structured_cases().into_iter().enumerate() {
        for rep in 0..3u64 {
            let pair = build(0x51a0_0000 + 16 * case as u64 + rep, &dims, n_hat, &ranks);
            let config = SimilarityConfig::new(n_hat);
            let (report, decomposition) =
                analyze_and_recover(&pair.a, &pair.b, &config).expect("analysis succeeds");

            assert_eq!(report.verdict, Verdict::SameScaledTerms, "case {case} rep {rep}");
            assert_eq!(report.r, ranks.len(), "case {case} rep {rep}: term count");
            assert!(decomposition.is_some(), "case {case} rep {rep}: no decomposition");

            let mut claimed = vec![false; report.r];
            for (term, &lambda) in pair.lambdas.iter().enumerate() {
                let j = match_term(&report.lambdas, lambda);
                assert!(!claimed[j], "two construction terms matched report term {j}");
                claimed[j] = true;

                let recovered = Complex64::new(report.lambdas[j][0], report.lambdas[j][1]);
                assert!(
                    (recovered - lambda).norm() <= 1e-8 * lambda.norm(),
                    "case {case} rep {rep} term {term}: scaling {recovered} vs {lambda}"
                );
                for mode in 0..n_hat {
                    assert_eq!(
                        report.multiplicities[mode][j], pair.term_ranks[term][mode],
                        "case {case} rep {rep} term {term} mode {mode}: multiplicity"
                    );
                }
            }

            // Per-mode cluster centers all sit within 5e−9 of the pooled
            // scaling, so any two modes agree to 1e−8.
            assert_eq!(report.diagnostics.spectra_agree, Some(true));
            for (mode, devs) in report.eig_deviations.iter().enumerate() {
                for (term, &dev) in devs.iter().enumerate() {
                    assert!(
                        dev <= 5e-9,
                        "case {case} rep {rep}: eigenvalue deviation {dev} at mode {mode} term {term}"
                    );
                }
            }
            for &residual in &report.linking_residuals {
                assert!(residual <= config.residual_tol, "linking residual {residual}");
            }
            assert!(report.zero_scalings.is_empty());
        }
    }
}

/// Independent spectra-agreement check, bypassing the report: compute each
/// analyzed mode's linking matrix, decompose it separately, and match the
/// cluster centers across modes by nearest distance.
#[test]
fn linking_matrices_carry_the_same_spectrum_in_every_mode() {
    for (case, (dims, n_hat, ranks)) in structured_cases().into_iter().enumerate() {
        let pair = build(0x57ec_0000 + case as u64, &dims, n_hat, &ranks);
        let compressed = compress_pair(&pair.a, &pair.b, n_hat, 0.1).expect("compressible");
        let links =
            tensim_core::similarity::linking_matrices(&compressed.a, &compressed.b, n_hat, 1e-8)
                .expect("solvable linking systems");

        let centers_of = |m: &Matrix| {
            let (_, svals, _) = m.svd(false, false).expect("svd succeeds");
            let tol = f64::max(1e-8, 1e-6 * svals[0]);
            let pd = primary_decomposition(m, tol, 1e8).expect("well-conditioned");
            pd.clusters.iter().map(|c| c.center).collect::<Vec<_>>()
        };

        let reference = centers_of(&links[0].matrix);
        assert_eq!(reference.len(), ranks.len(), "case {case}: cluster count in mode 0");
        for link in &links[1..] {
            let centers = centers_of(&link.matrix);
            assert_eq!(centers.len(), reference.len(), "case {case}: cluster count");
            let mut claimed = vec![false; centers.len()];
            for &r in &reference {
                let (best, dist) = centers
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (i, (c - r).norm()))
                    .min_by(|(_, a), (_, b)| a.total_cmp(b))
                    .expect("nonempty");
                assert!(
                    dist <= 1e-8,
                    "case {case} mode {}: no center within 1e-8 of {r} (closest {dist})",
                    link.mode
                );
                assert!(!claimed[best], "case {case}: center matched twice");
                claimed[best] = true;
            }
        }
    }
}

/// Reordering the construction's terms changes nothing the report exposes:
/// verdict, term count, canonical scaling order, and multiplicities all
/// stay put.
#[test]
fn term_order_in_the_construction_never_leaks_into_the_report() {
    let dims = vec![6usize, 5, 4];
    let ranks = [vec![2usize, 1], vec![1, 2], vec![1, 1]];
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e59_0001);
    let lambdas = random_scalings(&mut rng, ranks.len(), 0.3);
    let config = SimilarityConfig::new(2);

    let permutations: [[usize; 3]; 3] = [[0, 1, 2], [2, 0, 1], [1, 2, 0]];
    let mut reports = Vec::new();
    for (which, perm) in permutations.iter().enumerate() {
        let permuted_ranks: Vec<Vec<usize>> = perm.iter().map(|&i| ranks[i].clone()).collect();
        let permuted_lambdas: Vec<Complex64> = perm.iter().map(|&i| lambdas[i]).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e59_1000 + which as u64);
        let pair = tensim_core::similarity::synth::random_structured_pair(
            &mut rng,
            &dims,
            2,
            &permuted_ranks,
            &permuted_lambdas,
        )
        .expect("feasible construction");
        let (report, _) = analyze_and_recover(&pair.a, &pair.b, &config).expect("analysis");
        reports.push(report);
    }

    let first = &reports[0];
    assert_eq!(first.verdict, Verdict::SameScaledTerms);
    for report in &reports[1..] {
        assert_eq!(report.verdict, first.verdict);
        assert_eq!(report.r, first.r);
        for (a, b) in report.lambdas.iter().zip(&first.lambdas) {
            let da = Complex64::new(a[0] - b[0], a[1] - b[1]).norm();
            assert!(da <= 1e-8, "canonical scaling order differs: {a:?} vs {b:?}");
        }
        assert_eq!(report.multiplicities, first.multiplicities);
    }
}

/// When two analyzed modes have the same length and a random combination of
/// the compressed slices is (verifiably) nonsingular, the two modes report
/// identical per-term multiplicities.
#[test]
fn equal_modes_with_a_nonsingular_slice_mix_share_multiplicities() {
    let dims = vec![6usize, 6, 5];
    let ranks = [vec![2usize, 2], vec![1, 1]];
    for rep in 0..10u64 {
        let pair = build(0x511c_e000 + rep, &dims, 2, &ranks);
        let compressed = compress_pair(&pair.a, &pair.b, 2, 0.1).expect("compressible");
        let (d0, d1) = (compressed.a.dims()[0], compressed.a.dims()[1]);
        assert_eq!(d0, d1, "equal per-term ranks compress both modes equally");

        // Random complex combination of the third-mode slices.
        let mut rng = ChaCha8Rng::seed_from_u64(0x511c_f000 + rep);
        let weights: Vec<Complex64> =
            (0..compressed.a.dims()[2]).map(|_| random_matrix(&mut rng, 1, 1)[[0, 0]]).collect();
        let mix = Matrix::from_shape_fn((d0, d1), |(i, j)| {
            weights
                .iter()
                .enumerate()
                .map(|(k, &w)| w * compressed.a.get(&[i, j, k]))
                .sum()
        });
        let (_, svals, _) = mix.svd(false, false).expect("svd succeeds");
        assert!(
            svals[svals.len() - 1] > 1e-8 * svals[0],
            "rep {rep}: slice combination unexpectedly singular — hypothesis not satisfied"
        );

        let (report, _) = analyze_and_recover(&pair.a, &pair.b, &SimilarityConfig::new(2))
            .expect("analysis succeeds");
        assert_eq!(report.verdict, Verdict::SameScaledTerms);
        assert_eq!(
            report.multiplicities[0], report.multiplicities[1],
            "rep {rep}: equal modes disagree on multiplicities"
        );
    }
}

/// A single-mode linking relation implies every multi-mode one: for
/// `B = A ×ₙ M`, the induced residual is at rounding level for *all* proper
/// mode sets containing `n`.
#[test]
fn single_mode_linking_extends_to_every_containing_mode_set() {
    let shapes: [(&[usize], &[usize]); 2] =
        [(&[3, 2, 3, 2], &[0, 1, 2, 3]), (&[2, 3, 2, 2, 3], &[0, 2, 4])];
    for (case, (dims, modes_to_try)) in shapes.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xed00_0000 + case as u64);
        let a = random_dense(&mut rng, dims).expect("valid dims");
        for &n in modes_to_try {
            let m = random_matrix(&mut rng, dims[n], dims[n]);
            let b = a.mode_product(&m, n).expect("square factor");
            let link = tensim_core::spectral::solve_linking(
                &a.unfold_mode(n).expect("valid mode"),
                &b.unfold_mode(n).expect("valid mode"),
                n,
            )
            .expect("consistent system");
            assert!(link.residual <= 1e-12, "direct linking residual {}", link.residual);

            let order = dims.len();
            for mask in 1u32..(1 << order) - 1 {
                if mask & (1 << n) == 0 {
                    continue;
                }
                let modes: Vec<usize> = (0..order).filter(|&q| mask & (1 << q) != 0).collect();
                let s = ModeSet::new(modes.clone()).expect("proper subset");
                let residual = check_redundant_inclusions(&a, &b, &link, &s)
                    .expect("compatible shapes");
                assert!(
                    residual < 1e-10,
                    "case {case} mode {n} set {modes:?}: residual {residual}"
                );
            }
        }
    }
}

/// The compressed second tensor expands back through the first tensor's
/// bases whenever the pair genuinely shares structure — the row-inclusion
/// scores certify it mode by mode.
#[test]
fn compression_certifies_row_inclusion_on_shared_structure() {
    let (dims, n_hat, ranks) = structured_cases().remove(1);
    let pair = build(0xc0e0_0001, &dims, n_hat, &ranks);
    let compressed = compress_pair(&pair.a, &pair.b, n_hat, 0.1).expect("compressible");
    assert!(compressed.row_inclusion_ok.iter().all(|&ok| ok));
    for &score in &compressed.row_inclusion_scores {
        assert!(score <= 1e-10, "inclusion score {score} on an exact shared pair");
    }
    let target: Vec<usize> = ranks.iter().fold(vec![0; n_hat], |mut acc, term| {
        for (m, &r) in term.iter().enumerate() {
            acc[m] += r;
        }
        acc
    });
    assert_eq!(&compressed.ranks, &target, "compression ranks equal summed term ranks");
}

