//! Graph populations: exhaustive enumeration, seeded random sampling and the
//! near-extremal sampler for the theorem's hypothesis region.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::VerifyError;
use crate::bigraph::{low_bits, BipartiteGraph};
use crate::spectral::{rho_gnn_exact, spectral_radius};

/// Largest `n` accepted by [`enumerate_balanced`] (`2^(n²)` graphs).
pub const MAX_ENUMERATION_N: usize = 4;

/// Slack below `ρ(G_{n,n})` still counted as meeting the threshold.
pub const THRESHOLD_SLACK: f64 = 1e-9;

/// Every labelled balanced bipartite graph with parts of size `n`, in
/// biadjacency-bitmask order: bit `x * n + y` of the counter is the edge
/// `(x, y)`.
pub fn enumerate_balanced(n: usize) -> Result<impl Iterator<Item = BipartiteGraph>, VerifyError> {
    if n > MAX_ENUMERATION_N {
        return Err(VerifyError::EnumerationTooLarge(n));
    }
    let total = 1u64 << (n * n);
    Ok((0..total).map(move |mask| graph_from_mask(n, mask)))
}

pub(crate) fn graph_from_mask(n: usize, mask: u64) -> BipartiteGraph {
    let rows = (0..n).map(|x| (mask >> (x * n)) & low_bits(n)).collect();
    BipartiteGraph::from_rows(n, rows).expect("n <= 4 fits")
}

/// Derives an independent seed for instance `index` of a run seeded by `seed`
/// (SplitMix64 finaliser).
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, n, p)`: each of the `n²` possible edges independently with
/// probability `p`, from a ChaCha stream keyed by `seed`.
pub fn sample_bipartite(n: usize, p: f64, seed: u64) -> Result<BipartiteGraph, VerifyError> {
    sample_bipartite_with(n, n, p, &mut rng(seed))
}

pub(crate) fn sample_bipartite_with(
    nx: usize,
    ny: usize,
    p: f64,
    rng: &mut ChaCha8Rng,
) -> Result<BipartiteGraph, VerifyError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(VerifyError::BadProbability(p));
    }
    let mut g = BipartiteGraph::empty(nx, ny)?;
    for x in 0..nx {
        for y in 0..ny {
            if rng.gen::<f64>() < p {
                g.insert_edge(x, y);
            }
        }
    }
    Ok(g)
}

/// Random descent from `K_{n,n}` that stays inside `ρ(G) >= ρ(G_{n,n})` with
/// minimum degree at least 2. The number of removals is drawn from
/// `0..3n`, since `ρ ≤ √e` caps them below `3n`.
pub fn sample_near_extremal(n: usize, seed: u64) -> Result<BipartiteGraph, VerifyError> {
    let mut r = rng(seed);
    let budget = r.gen_range(0..3 * n.max(1));
    descend(n, budget, &mut r)
}

/// As [`sample_near_extremal`] with a fixed removal budget.
pub fn sample_near_extremal_with_budget(
    n: usize,
    seed: u64,
    budget: usize,
) -> Result<BipartiteGraph, VerifyError> {
    descend(n, budget, &mut rng(seed))
}

fn descend(n: usize, budget: usize, rng: &mut ChaCha8Rng) -> Result<BipartiteGraph, VerifyError> {
    let threshold = rho_gnn_exact(n, 1e-13)? - THRESHOLD_SLACK;
    let mut g = BipartiteGraph::complete(n, n)?;
    let mut dx = vec![n; n];
    let mut dy = vec![n; n];
    let mut removed = 0;
    let mut misses = 0;
    let max_misses = 4 * n;
    while removed < budget && misses < max_misses {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let &(x, y) = edges.choose(rng).expect("graph keeps edges");
        if dx[x] <= 2 || dy[y] <= 2 {
            misses += 1;
            continue;
        }
        let candidate = g.without_edge(x, y)?;
        if spectral_radius(&candidate, 1e-12)?.rho >= threshold {
            g = candidate;
            dx[x] -= 1;
            dy[y] -= 1;
            removed += 1;
            misses = 0;
        } else {
            misses += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_balanced(1).unwrap().count(), 2);
        assert_eq!(enumerate_balanced(2).unwrap().count(), 16);
        assert_eq!(enumerate_balanced(3).unwrap().count(), 512);
        assert!(matches!(enumerate_balanced(5), Err(VerifyError::EnumerationTooLarge(5))));
    }

    #[test]
    fn enumeration_is_injective() {
        let all: std::collections::HashSet<_> = enumerate_balanced(3).unwrap().collect();
        assert_eq!(all.len(), 512);
    }

    #[test]
    fn sampling_extremes_and_determinism() {
        assert_eq!(sample_bipartite(6, 1.0, 3).unwrap(), BipartiteGraph::complete(6, 6).unwrap());
        assert_eq!(sample_bipartite(6, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(sample_bipartite(8, 0.5, 11).unwrap(), sample_bipartite(8, 0.5, 11).unwrap());
        assert_ne!(sample_bipartite(8, 0.5, 11).unwrap(), sample_bipartite(8, 0.5, 12).unwrap());
        assert!(matches!(sample_bipartite(3, 1.5, 0), Err(VerifyError::BadProbability(_))));
    }

    #[test]
    fn near_extremal_guard() {
        assert_eq!(
            sample_near_extremal_with_budget(9, 1, 0).unwrap(),
            BipartiteGraph::complete(9, 9).unwrap()
        );
        let threshold = rho_gnn_exact(16, 1e-12).unwrap();
        for seed in 0..5 {
            let g = sample_near_extremal(16, seed).unwrap();
            assert!(spectral_radius(&g, 1e-12).unwrap().rho >= threshold - 1e-9);
            assert!(g.min_degree().unwrap() >= 2);
            assert_eq!(g, sample_near_extremal(16, seed).unwrap());
        }
    }
}
