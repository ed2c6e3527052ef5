//! Reference implementations used to cross-check the library. They work
//! from first principles (dense matrices, exact rationals, ancestor
//! indices) and never call the code paths they check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use cga::cluster::EdgeMode;
use cga::graph::Graph;

/// Least `k` with `u / b^k == v / b^k`.
pub fn pair_height(u: usize, v: usize, b: usize) -> u32 {
    let mut k = 0;
    let mut w = 1usize;
    while u / w != v / w {
        w *= b;
        k += 1;
    }
    k
}

/// `adj[u][v]` is true when `u` has an edge (or arc, in directed mode)
/// towards `v`.
pub fn adjacency(g: &Graph, mode: EdgeMode) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        if !g.is_directed() || mode == EdgeMode::Undirected {
            adj[v][u] = true;
        }
    }
    adj
}

/// `(num, den)` of a decimal such as `"0.5"`.
pub fn ratio(s: &str) -> (u64, u64) {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let den = 10u64.pow(frac.len() as u32);
    let num = format!("{int}{frac}").trim_start_matches('0').parse().unwrap_or(0);
    (num, den)
}

fn into_set(adj: &[Vec<bool>], v: usize, members: &[usize]) -> u64 {
    members.iter().filter(|&&w| adj[v][w]).count() as u64
}

pub fn dense(adj: &[Vec<bool>], members: &[usize], beta: (u64, u64)) -> bool {
    let k = members.len() as u64;
    members.iter().all(|&v| into_set(adj, v, members) * beta.1 >= beta.0 * k)
}

/// Externally sparse, restricted to the outsiders selected by `keep`.
pub fn sparse_where(adj: &[Vec<bool>], members: &[usize], alpha: (u64, u64), keep: impl Fn(usize) -> bool) -> bool {
    let k = members.len() as u64;
    (0..adj.len())
        .filter(|u| !members.contains(u) && keep(*u))
        .all(|u| into_set(adj, u, members) * alpha.1 <= alpha.0 * k)
}

pub fn is_cluster(adj: &[Vec<bool>], members: &[usize], alpha: (u64, u64), beta: (u64, u64)) -> bool {
    dense(adj, members, beta) && sparse_where(adj, members, alpha, |_| true)
}

/// Height of the smallest subtree holding every member.
pub fn set_height(members: &[usize], b: usize) -> u32 {
    members.iter().map(|&v| pair_height(members[0], v, b)).max().unwrap_or(0)
}

/// `(E1, E2, E3)` with regions defined by the height from each outsider
/// to the set.
pub fn events(adj: &[Vec<bool>], members: &[usize], alpha: (u64, u64), b: usize, h_star: u32) -> (bool, bool, bool) {
    let h = set_height(members, b);
    let dist = |u: usize| pair_height(u, members[0], b);
    (
        sparse_where(adj, members, alpha, |u| dist(u) <= h),
        sparse_where(adj, members, alpha, |u| dist(u) > h && dist(u) <= h_star),
        sparse_where(adj, members, alpha, |u| dist(u) > h_star),
    )
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `Pr(Bin(n, p) >= s)` in exact rational arithmetic, with `p` taken as
/// the exact value of its binary representation.
pub fn exact_upper_tail(n: u64, p: f64, s: u64) -> f64 {
    let p = BigRational::from_float(p).expect("finite");
    let q = BigRational::one() - &p;
    let mut total = BigRational::zero();
    for k in s..=n {
        let term = BigRational::from_integer(binomial(n, k))
            * num_traits::pow(p.clone(), k as usize)
            * num_traits::pow(q.clone(), (n - k) as usize);
        total += term;
    }
    total.to_f64().expect("representable")
}

/// Mean and standard error of a sample.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
