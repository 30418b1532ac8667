//! Numerical rank from singular-value gaps, and eigenvalue clustering.

use num_complex::Complex64;

/// Numerical rank of a non-increasing singular-value sequence.
///
/// The rank is the largest `k` such that `σ_k / σ_{k+1} > gap_ratio` and
/// `σ_k > abs_floor` — i.e. the position of the last clear gap whose left
/// edge is still above the noise floor. If no gap qualifies, the rank is the
/// number of values above the floor (all of them for a flat spectrum, zero
/// for a numerically zero matrix).
///
/// `gap_ratio` must exceed 1 for the rule to be meaningful; 2.3 is the
/// default used throughout ([`DEFAULT_GAP_RATIO`](super::DEFAULT_GAP_RATIO)).
pub fn estimate_rank(svals: &[f64], gap_ratio: f64, abs_floor: f64) -> usize {
    let above = svals.iter().take_while(|&&s| s > abs_floor).count();
    if above == 0 {
        return 0;
    }
    let mut rank_at_gap = 0;
    for k in 1..svals.len() {
        // written multiplicatively so a zero trailing value is a valid gap
        if svals[k - 1] > abs_floor && svals[k - 1] > gap_ratio * svals[k] {
            rank_at_gap = k;
        }
    }
    if rank_at_gap == 0 {
        above
    } else {
        rank_at_gap
    }
}

/// A group of eigenvalues treated as one (possibly repeated) eigenvalue.
#[derive(Debug, Clone)]
pub struct EigenCluster {
    /// Mean of the member eigenvalues.
    pub center: Complex64,
    /// Number of members, counting multiplicity.
    pub multiplicity: usize,
    /// Largest distance from a member to the center.
    pub spread: f64,
    /// Indices of the members in the input eigenvalue list, ascending.
    pub members: Vec<usize>,
    /// Nilpotency index of the cluster's block: 1 for a diagonalizable
    /// (semisimple) eigenvalue, larger when the block carries nontrivial
    /// Jordan structure. Clustering alone cannot see this, so
    /// [`cluster_eigenvalues`] reports 1; a primary decomposition measures
    /// and overwrites it.
    pub nilpotency: usize,
}

/// Groups eigenvalues by single-linkage chaining: two values land in the
/// same cluster when they are connected by a chain of pairwise distances
/// `≤ tol`.
///
/// Clusters are ordered by descending center magnitude, ties broken by
/// ascending phase angle, so reports are deterministic. Chaining means a
/// cluster's diameter can exceed `tol`; the reported `spread` makes that
/// visible to the caller.
pub fn cluster_eigenvalues(eigs: &[Complex64], tol: f64) -> Vec<EigenCluster> {
    let n = eigs.len();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }

    for i in 0..n {
        for j in (i + 1)..n {
            if (eigs[i] - eigs[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_to_group: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_to_group[r] {
            Some(g) => groups[g].push(i),
            None => {
                root_to_group[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }

    let mut clusters: Vec<EigenCluster> = groups
        .into_iter()
        .map(|members| {
            let sum: Complex64 = members.iter().map(|&i| eigs[i]).sum();
            let center = sum / members.len() as f64;
            let spread =
                members.iter().map(|&i| (eigs[i] - center).norm()).fold(0.0, f64::max);
            EigenCluster { center, multiplicity: members.len(), spread, members, nilpotency: 1 }
        })
        .collect();

    clusters.sort_by(|a, b| {
        b.center
            .norm()
            .total_cmp(&a.center.norm())
            .then(a.center.arg().total_cmp(&b.center.arg()))
    });
    clusters
}
