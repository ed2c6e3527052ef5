//! Ground-truth cluster enumeration.
//!
//! [`enumerate_clusters`] checks every subset up to a size cap and refuses
//! up front when the work estimate exceeds its budget, so it never returns
//! a truncated answer. [`enumerate_complete_clusters`] scans the `n / b^h`
//! complete subtrees of one height.

use rayon::prelude::*;

use crate::cluster::{is_cluster, ClusterSpec};
use crate::error::{CgaError, Result};
use crate::graph::Graph;
use crate::tree::{LeafId, VertexSet};

pub const DEFAULT_WORK_BUDGET: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchSpace {
    UpToSize(usize),
    CompleteAtHeight(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundCluster {
    pub set: VertexSet,
    pub complete: bool,
}

/// Clusters in lexicographic order of their sorted member lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterList {
    pub clusters: Vec<FoundCluster>,
    pub search_space: SearchSpace,
}

impl ClusterList {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn sets(&self) -> impl Iterator<Item = &VertexSet> {
        self.clusters.iter().map(|c| &c.set)
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        match acc.checked_mul(n - i) {
            Some(x) => acc = x / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Elementary-check estimate `sum_{k=1..max} C(n,k) k n`.
pub fn enumeration_cost(n: usize, max_size: usize) -> u128 {
    let n = n as u128;
    (1..=max_size as u128)
        .map(|k| binomial(n, k).saturating_mul(k).saturating_mul(n))
        .fold(0u128, u128::saturating_add)
}

/// All clusters of size `1..=max_size`.
pub fn enumerate_clusters(g: &Graph, s: &ClusterSpec, max_size: usize, budget: u128) -> Result<ClusterList> {
    let n = g.n();
    let max_size = max_size.min(n);
    let cost = enumeration_cost(n, max_size);
    if cost > budget {
        return Err(CgaError::Budget {
            context: format!("subset enumeration up to size {max_size} on n={n}"),
            cost,
            budget,
        });
    }
    let p = g.params();
    let mut found: Vec<FoundCluster> = (1..=max_size)
        .flat_map(|k| (0..n).map(move |first| (k, first)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|(k, first)| {
            let mut hits = Vec::new();
            for_each_subset_starting_at(n, k, first, |members| {
                let m = VertexSet::new(members.to_vec(), p).expect("indices in range");
                if is_cluster(&m, g, s) {
                    let complete = m.is_complete();
                    hits.push(FoundCluster { set: m, complete });
                }
            });
            hits
        })
        .collect();
    found.sort_by(|a, b| a.set.members().cmp(b.set.members()));
    Ok(ClusterList {
        clusters: found,
        search_space: SearchSpace::UpToSize(max_size),
    })
}

/// Calls `f` on every sorted `k`-subset of `0..n` whose least element is
/// `first`, in lexicographic order.
pub(crate) fn for_each_subset_starting_at(n: usize, k: usize, first: LeafId, mut f: impl FnMut(&[LeafId])) {
    if k == 0 || first + k > n {
        return;
    }
    let mut idx: Vec<LeafId> = (first..first + k).collect();
    loop {
        f(&idx);
        // advance positions 1..k like an odometer
        let mut i = k;
        loop {
            if i == 1 {
                return;
            }
            i -= 1;
            if idx[i] < n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Complete clusters of height `h`, scanning every complete height-`h` set.
pub fn enumerate_complete_clusters(g: &Graph, s: &ClusterSpec, h: u32) -> Result<ClusterList> {
    let p = g.params();
    if h > p.height() {
        return Err(CgaError::domain(format!("h={h} exceeds H={}", p.height())));
    }
    let size = p.pow(h);
    let clusters = (0..p.block_count(h))
        .into_par_iter()
        .filter_map(|k| {
            let m = VertexSet::complete(k * size, h, p).expect("aligned root");
            is_cluster(&m, g, s).then_some(FoundCluster { set: m, complete: true })
        })
        .collect();
    Ok(ClusterList {
        clusters,
        search_space: SearchSpace::CompleteAtHeight(h),
    })
}
