//! Exact (alpha, beta)-cluster verification.
//!
//! `M` is internally dense when every `v` in `M` has `e(v, M) >= beta |M|`
//! and externally sparse when every `u` outside has `e(u, M) <= alpha |M|`.
//! `|M|` includes `v` itself, so a singleton is never dense for `beta > 0`.
//! Clusters need not be connected unless `beta >= 1/2`.
//!
//! In [`EdgeMode::DirectedOut`] `e(v, M)` counts arcs leaving `v` into `M`.
//! [`EdgeMode::Undirected`] on a directed graph uses its undirected view
//! (`u ~ v` when either arc is present).

use std::borrow::Cow;
use std::fmt;

use crate::bounds::threshold_heights;
use crate::error::{CgaError, Result};
use crate::fraction::Fraction;
use crate::graph::Graph;
use crate::tree::{LeafId, TreeParams, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeMode {
    Undirected,
    DirectedOut,
}

impl EdgeMode {
    pub fn for_graph(g: &Graph) -> Self {
        if g.is_directed() {
            EdgeMode::DirectedOut
        } else {
            EdgeMode::Undirected
        }
    }
}

impl fmt::Display for EdgeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeMode::Undirected => "undirected",
            EdgeMode::DirectedOut => "directed-out",
        })
    }
}

impl std::str::FromStr for EdgeMode {
    type Err = CgaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "undirected" => Ok(EdgeMode::Undirected),
            "directed" | "directed-out" => Ok(EdgeMode::DirectedOut),
            _ => Err(CgaError::domain(format!("unknown edge mode {s:?}"))),
        }
    }
}

/// Cluster parameters; `alpha` and `beta` lie in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClusterSpec {
    alpha: Fraction,
    beta: Fraction,
    mode: EdgeMode,
}

impl ClusterSpec {
    pub fn new(alpha: Fraction, beta: Fraction, mode: EdgeMode) -> Result<Self> {
        if !alpha.is_unit_interval() {
            return Err(CgaError::domain(format!("alpha={alpha} must lie in (0, 1]")));
        }
        if !beta.is_unit_interval() {
            return Err(CgaError::domain(format!("beta={beta} must lie in (0, 1]")));
        }
        Ok(ClusterSpec { alpha, beta, mode })
    }

    /// Parses decimal (`0.5`) or ratio (`1/3`) text.
    pub fn parse(alpha: &str, beta: &str, mode: EdgeMode) -> Result<Self> {
        Self::new(alpha.parse()?, beta.parse()?, mode)
    }

    pub fn alpha(&self) -> Fraction {
        self.alpha
    }

    pub fn beta(&self) -> Fraction {
        self.beta
    }

    pub fn mode(&self) -> EdgeMode {
        self.mode
    }

    pub fn with_mode(self, mode: EdgeMode) -> Self {
        ClusterSpec { mode, ..self }
    }
}

/// A vertex violating a property, with its edge count into `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vertex: LeafId,
    pub edges: usize,
}

/// Internal density `D` plus the split of external sparseness over
/// `S(M) \ M` (E1), `S(M, h*) \ S(M)` (E2) and `V \ S(M, h*)` (E3).
/// Each failed event carries its smallest violating vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventReport {
    pub dense: bool,
    pub e1: bool,
    pub e2: bool,
    pub e3: bool,
    pub h_star_used: u32,
    pub dense_witness: Option<Witness>,
    pub e1_witness: Option<Witness>,
    pub e2_witness: Option<Witness>,
    pub e3_witness: Option<Witness>,
}

impl EventReport {
    pub fn is_externally_sparse(&self) -> bool {
        self.e1 && self.e2 && self.e3
    }

    pub fn is_cluster(&self) -> bool {
        self.dense && self.is_externally_sparse()
    }
}

fn out_view(g: &Graph, mode: EdgeMode, v: LeafId) -> Cow<'_, [u32]> {
    match (mode, g.is_directed()) {
        (EdgeMode::Undirected, true) => Cow::Owned(merge_sorted(g.neighbors(v), g.in_neighbors(v))),
        _ => Cow::Borrowed(g.neighbors(v)),
    }
}

fn in_view(g: &Graph, mode: EdgeMode, v: LeafId) -> Cow<'_, [u32]> {
    match (mode, g.is_directed()) {
        (EdgeMode::Undirected, true) => Cow::Owned(merge_sorted(g.neighbors(v), g.in_neighbors(v))),
        _ => Cow::Borrowed(g.in_neighbors(v)),
    }
}

fn merge_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Size of `list ∩ m`, excluding `skip`.
fn count_in_set(list: &[u32], m: &VertexSet, skip: LeafId) -> usize {
    let hit = if m.is_complete() {
        let span = m.span();
        let lo = list.partition_point(|&x| (x as usize) < span.start);
        let hi = list.partition_point(|&x| (x as usize) < span.end);
        hi - lo
    } else if list.len() <= m.len() {
        list.iter().filter(|&&x| m.contains(x as usize)).count()
    } else {
        m.members()
            .iter()
            .filter(|&&x| list.binary_search(&(x as u32)).is_ok())
            .count()
    };
    hit - usize::from(m.contains(skip) && list.binary_search(&(skip as u32)).is_ok())
}

/// `e(v, M)`: neighbors (out-neighbors in directed-out mode) of `v` in `M`.
pub fn edges_to_set(v: LeafId, m: &VertexSet, g: &Graph, mode: EdgeMode) -> usize {
    count_in_set(&out_view(g, mode, v), m, v)
}

/// First member with `e(v, M) < beta |M|`.
fn density_witness(m: &VertexSet, g: &Graph, s: &ClusterSpec) -> Option<Witness> {
    m.members().iter().find_map(|&v| {
        let e = edges_to_set(v, m, g, s.mode);
        (!s.beta.count_reaches(e, m.len())).then_some(Witness { vertex: v, edges: e })
    })
}

pub fn is_internally_dense(m: &VertexSet, g: &Graph, s: &ClusterSpec) -> bool {
    density_witness(m, g, s).is_none()
}

/// `(u, e(u, M))` for every non-member `u` with at least one edge into
/// `M`, sorted by `u`. Vertices absent from the list have `e(u, M) = 0`.
pub fn external_counts(m: &VertexSet, g: &Graph, mode: EdgeMode) -> Vec<(LeafId, usize)> {
    let mut sources: Vec<u32> = Vec::new();
    for &v in m.members() {
        sources.extend(in_view(g, mode, v).iter().filter(|&&u| !m.contains(u as usize)));
    }
    sources.sort_unstable();
    let mut out: Vec<(LeafId, usize)> = Vec::new();
    for u in sources {
        match out.last_mut() {
            Some((last, count)) if *last == u as usize => *count += 1,
            _ => out.push((u as usize, 1)),
        }
    }
    out
}

pub fn is_externally_sparse(m: &VertexSet, g: &Graph, s: &ClusterSpec) -> bool {
    external_counts(m, g, s.mode)
        .iter()
        .all(|&(_, e)| s.alpha.count_within(e, m.len()))
}

pub fn is_cluster(m: &VertexSet, g: &Graph, s: &ClusterSpec) -> bool {
    is_internally_dense(m, g, s) && is_externally_sparse(m, g, s)
}

/// Evaluates `D`, `E1`, `E2` and `E3` exactly for `set_height(M) <= h* <= H`.
pub fn event_report(m: &VertexSet, g: &Graph, s: &ClusterSpec, h_star: u32) -> Result<EventReport> {
    if h_star < m.height() || h_star > g.params().height() {
        return Err(CgaError::domain(format!(
            "h*={h_star} outside [{}, {}]",
            m.height(),
            g.params().height()
        )));
    }
    let dense_witness = density_witness(m, g, s);
    let inner = m.span();
    let outer = m.span_at(h_star);
    let mut witnesses = [None; 3];
    for (u, e) in external_counts(m, g, s.mode) {
        if s.alpha.count_within(e, m.len()) {
            continue;
        }
        let region = if inner.contains(&u) {
            0
        } else if outer.contains(&u) {
            1
        } else {
            2
        };
        witnesses[region].get_or_insert(Witness { vertex: u, edges: e });
    }
    let [e1_witness, e2_witness, e3_witness] = witnesses;
    Ok(EventReport {
        dense: dense_witness.is_none(),
        e1: e1_witness.is_none(),
        e2: e2_witness.is_none(),
        e3: e3_witness.is_none(),
        h_star_used: h_star,
        dense_witness,
        e1_witness,
        e2_witness,
        e3_witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Thickness {
    /// Height at most `h_eps` and size at least `(ln n)^(1/2 + eps/3)`.
    ShortThick,
    /// Height at most `(ln n)^(1/2) / ln b` and size at least `(ln n)^(1/2 + eps/2)`.
    TallThick,
    Neither,
}

pub fn classify_thick(m: &VertexSet, p: &TreeParams, epsilon: f64) -> Result<Thickness> {
    if !(epsilon > 0.0) {
        return Err(CgaError::domain(format!("epsilon={epsilon} must be positive")));
    }
    let heights = threshold_heights(p, epsilon)?;
    let ln_n = crate::bounds::ln_n(p);
    let (height, size) = (m.height() as f64, m.len() as f64);
    if height <= heights.h_epsilon && size >= ln_n.powf(0.5 + epsilon / 3.0) {
        Ok(Thickness::ShortThick)
    } else if height <= heights.tall_height && size >= ln_n.powf(0.5 + epsilon / 2.0) {
        Ok(Thickness::TallThick)
    } else {
        Ok(Thickness::Neither)
    }
}

/// `X_S`: edges with both endpoints in `S`; arcs count once.
pub fn internal_edge_count(s: &VertexSet, g: &Graph) -> usize {
    let total: usize = s
        .members()
        .iter()
        .map(|&v| count_in_set(g.neighbors(v), s, v))
        .sum();
    if g.is_directed() {
        total
    } else {
        total / 2
    }
}

/// `{v in M : e(v, M) <= fraction |M|}`, possibly empty.
pub fn sparse_core(m: &VertexSet, g: &Graph, mode: EdgeMode, fraction: f64) -> Vec<LeafId> {
    let cap = fraction * m.len() as f64;
    m.members()
        .iter()
        .copied()
        .filter(|&v| edges_to_set(v, m, g, mode) as f64 <= cap)
        .collect()
}
