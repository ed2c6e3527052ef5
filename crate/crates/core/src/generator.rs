//! Sampling of CGA graphs.
//!
//! Pair `{u, v}` carries an edge with probability `c^-h(u,v)`. All
//! height-`j` pairs of one complete height-`j` subtree share that
//! probability, so the sampler draws their edge count from a binomial and
//! then places that many distinct pairs uniformly with a partial
//! Fisher-Yates shuffle over an implicit pair ranking. Work is
//! proportional to the number of blocks plus the number of edges.
//!
//! Each `(height class j, block k)` draws from its own ChaCha8 stream
//! `(j << 40) | k`, so the output does not depend on the rayon pool size.

use std::collections::HashMap;

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::{CgaError, Result};
use crate::graph::Graph;
use crate::rng::stream_rng;
use crate::tree::{pair_height, pairs_at_height, unrank_cross_pair, LeafId, TreeParams};

const BLOCK_STREAM_SHIFT: u32 = 40;
const NAIVE_STREAM: u64 = u64::MAX;

/// `c^-h(u,v)`.
pub fn edge_probability(u: LeafId, v: LeafId, p: &TreeParams) -> Result<f64> {
    let h = pair_height(u, v, p)?;
    Ok(height_probability(h, p))
}

pub(crate) fn height_probability(h: u32, p: &TreeParams) -> f64 {
    p.c().powi(-(h as i32))
}

/// Expected number of undirected edges over the whole tree.
pub fn expected_edge_count(p: &TreeParams) -> f64 {
    (1..=p.height())
        .map(|j| {
            let blocks = p.block_count(j) as f64;
            let per_block = pairs_at_height(j, j, p).expect("j in range") as f64;
            blocks * per_block * height_probability(j, p)
        })
        .sum()
}

/// Samples a CGA graph. Identical `(p, seed, directed)` give identical
/// graphs regardless of the number of worker threads.
pub fn sample_graph(p: &TreeParams, seed: u64, directed: bool) -> Result<Graph> {
    check_sampling_limits(p)?;
    let tasks: Vec<(u32, usize)> = (1..=p.height())
        .flat_map(|j| (0..p.block_count(j)).map(move |k| (j, k)))
        .collect();
    let mut arcs: Vec<(u32, u32)> = tasks
        .par_iter()
        .with_min_len(256)
        .flat_map_iter(|&(j, k)| sample_block(p, seed, directed, j, k))
        .collect();
    arcs.par_sort_unstable();
    Ok(Graph::from_unique_sorted(*p, directed, seed, arcs))
}

/// Reference sampler: one independent coin flip per unordered pair (per
/// ordered pair when directed). Quadratic in `n`; for cross-checks only.
pub fn sample_graph_naive(p: &TreeParams, seed: u64, directed: bool) -> Result<Graph> {
    check_sampling_limits(p)?;
    let n = p.n();
    let mut rng = stream_rng(seed, NAIVE_STREAM);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let prob = edge_probability(u, v, p)?;
            if rng.random_bool(prob) {
                arcs.push((u as u32, v as u32));
            }
            if directed && rng.random_bool(prob) {
                arcs.push((v as u32, u as u32));
            }
        }
    }
    arcs.sort_unstable();
    Ok(Graph::from_unique_sorted(*p, directed, seed, arcs))
}

fn check_sampling_limits(p: &TreeParams) -> Result<()> {
    if p.n() > u32::MAX as usize + 1 {
        return Err(CgaError::domain(format!("n={} exceeds the 2^32 vertex limit", p.n())));
    }
    Ok(())
}

fn sample_block(p: &TreeParams, seed: u64, directed: bool, j: u32, k: usize) -> Vec<(u32, u32)> {
    let b = p.b();
    let child = p.pow(j - 1);
    let root = k * p.pow(j);
    // C(b,2) b^(2(j-1)) < b^(2j) / 2 <= n^2 / 2 <= 2^63 under the 2^32 cap.
    let pairs = pairs_at_height(j, j, p).expect("j in range") as u64;
    let slots = if directed { 2 * pairs } else { pairs };
    let mut rng = stream_rng(seed, ((j as u64) << BLOCK_STREAM_SHIFT) | k as u64);
    let prob = height_probability(j, p);
    let count = Binomial::new(slots, prob)
        .expect("probability in (0, 1)")
        .sample(&mut rng);
    sample_distinct(slots, count, &mut rng)
        .into_iter()
        .map(|rank| {
            let (flip, rank) = if directed { (rank >= pairs, rank % pairs) } else { (false, rank) };
            let (u, v) = unrank_cross_pair(rank, root, b, child);
            if flip {
                (v as u32, u as u32)
            } else {
                (u as u32, v as u32)
            }
        })
        .collect()
}

/// `count` distinct values drawn uniformly from `[0, total)` by a partial
/// Fisher-Yates shuffle of the implicit array `0..total`; only displaced
/// entries are stored.
pub(crate) fn sample_distinct<R: Rng>(total: u64, count: u64, rng: &mut R) -> Vec<u64> {
    debug_assert!(count <= total);
    let mut displaced: HashMap<u64, u64> = HashMap::with_capacity(count as usize);
    let mut out = Vec::with_capacity(count as usize);
    for i in 0..count {
        let j = rng.random_range(i..total);
        let at_j = displaced.get(&j).copied().unwrap_or(j);
        let at_i = displaced.get(&i).copied().unwrap_or(i);
        displaced.insert(j, at_i);
        out.push(at_j);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(b: usize, h: u32, c: f64) -> TreeParams {
        TreeParams::new(b, h, c).unwrap()
    }

    #[test]
    fn edge_probability_examples() {
        let p = params(2, 3, 2.0);
        assert_eq!(edge_probability(0, 1, &p).unwrap(), 0.5);
        assert_eq!(edge_probability(0, 4, &p).unwrap(), 0.125);
        let p = params(2, 3, 4.0);
        assert_eq!(edge_probability(0, 2, &p).unwrap(), 0.0625);
        assert!(edge_probability(3, 3, &p).is_err());
    }

    #[test]
    fn expected_edge_count_examples() {
        assert_relative_eq!(expected_edge_count(&params(2, 2, 2.0)), 2.0, max_relative = 1e-12);
        assert_relative_eq!(expected_edge_count(&params(2, 1, 2.0)), 0.5, max_relative = 1e-12);
        assert_relative_eq!(expected_edge_count(&params(3, 1, 3.0)), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn expected_edge_count_matches_pair_enumeration() {
        for (b, h, c) in [(2, 5, 2.0), (3, 3, 2.5), (4, 2, 7.0)] {
            let p = params(b, h, c);
            let mut brute = 0.0;
            for u in 0..p.n() {
                for v in (u + 1)..p.n() {
                    brute += edge_probability(u, v, &p).unwrap();
                }
            }
            assert_relative_eq!(expected_edge_count(&p), brute, max_relative = 1e-12);
        }
    }

    #[test]
    fn sampling_is_deterministic_and_seed_sensitive() {
        let p = params(2, 8, 2.0);
        let a = sample_graph(&p, 11, false).unwrap();
        let b = sample_graph(&p, 11, false).unwrap();
        let c = sample_graph(&p, 12, false).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.to_edge_list_string(), c.to_edge_list_string());
    }

    #[test]
    fn sampled_graphs_are_simple() {
        for directed in [false, true] {
            let g = sample_graph(&params(3, 4, 1.5), 5, directed).unwrap();
            for u in 0..g.n() {
                assert!(!g.neighbors(u).contains(&(u as u32)));
                assert!(g.neighbors(u).windows(2).all(|w| w[0] < w[1]));
                if !directed {
                    for &v in g.neighbors(u) {
                        assert!(g.has_edge(v as usize, u));
                    }
                }
            }
            assert_eq!(g.edges().count(), g.edge_count());
        }
    }

    #[test]
    fn huge_c_gives_almost_no_edges() {
        let p = params(2, 2, 1e9);
        let total: usize = (0..1000).map(|s| sample_graph(&p, s, false).unwrap().edge_count()).sum();
        assert!((total as f64 / 1000.0) < 0.01);
    }

    #[test]
    fn mean_edge_count_small_tree() {
        // 2 pairs at 1/2 and 4 at 1/4: mean 2, variance 2/4 + 4*3/16 = 1.25.
        let p = params(2, 2, 2.0);
        let trials = 2000;
        let total: usize = (0..trials).map(|s| sample_graph(&p, s, false).unwrap().edge_count()).sum();
        let mean = total as f64 / trials as f64;
        let sigma = (1.25f64 / trials as f64).sqrt();
        assert!((mean - 2.0).abs() < 4.0 * sigma, "mean {mean}");
    }

    #[test]
    fn distinct_sampling_is_a_subset_without_repeats() {
        let mut rng = stream_rng(3, 0);
        for (total, count) in [(10, 0), (10, 10), (1000, 37), (1 << 40, 100)] {
            let mut got = sample_distinct(total, count, &mut rng);
            assert_eq!(got.len() as u64, count);
            assert!(got.iter().all(|&x| x < total));
            got.sort_unstable();
            got.dedup();
            assert_eq!(got.len() as u64, count);
        }
    }

    #[test]
    fn directed_graph_has_arcs_both_ways_sometimes() {
        let g = sample_graph(&params(2, 6, 1.2), 1, true).unwrap();
        let mutual = g.edges().filter(|&(u, v)| g.has_edge(v, u)).count();
        let one_way = g.edge_count() - mutual;
        assert!(mutual > 0 && one_way > 0);
    }
}
