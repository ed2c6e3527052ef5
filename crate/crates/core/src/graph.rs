//! Sampled networks and the edge-list file format.
//!
//! ```text
//! # cga b=<b> H=<H> c=<c> seed=<seed> directed=<0|1>
//! <u> <v>
//! ...
//! ```
//!
//! Undirected edges are written with `u < v`. Lines are sorted by `(u, v)`
//! as integers.

use std::io::{BufRead, Write};

use crate::error::{CgaError, Result};
use crate::tree::{LeafId, TreeParams};

/// Compressed sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Adjacency {
    /// `arcs` must be sorted by `(source, target)` and deduplicated.
    fn from_sorted_arcs(n: usize, arcs: &[(u32, u32)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = arcs.iter().map(|&(_, v)| v).collect();
        Adjacency { offsets, targets }
    }

    fn row(&self, v: LeafId) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// An immutable sampled graph over the leaves of a [`TreeParams`] tree.
///
/// In the directed case `(u, v)` and `(v, u)` are independent arcs and both
/// out- and in-adjacency are kept. Undirected graphs store each edge in both
/// endpoint rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    params: TreeParams,
    directed: bool,
    seed: u64,
    out: Adjacency,
    incoming: Option<Adjacency>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an explicit edge (or arc) list. Rejects
    /// self-loops, out-of-range endpoints and duplicates, and requires
    /// `n <= 2^32`.
    pub fn from_edges<I>(params: TreeParams, directed: bool, seed: u64, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LeafId, LeafId)>,
    {
        let n = params.n();
        if n > u32::MAX as usize + 1 {
            return Err(CgaError::domain(format!("n={n} exceeds the 2^32 vertex limit")));
        }
        let mut arcs = Vec::new();
        for (u, v) in edges {
            params.check_leaf(u)?;
            params.check_leaf(v)?;
            if u == v {
                return Err(CgaError::domain(format!("self-loop at {u}")));
            }
            let (u, v) = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            arcs.push((u as u32, v as u32));
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(CgaError::domain(format!("duplicate edge {} {}", w[0].0, w[0].1)));
        }
        Ok(Self::from_unique_sorted(params, directed, seed, arcs))
    }

    /// `arcs` sorted, unique, no self-loops; undirected edges as `u < v`.
    pub(crate) fn from_unique_sorted(
        params: TreeParams,
        directed: bool,
        seed: u64,
        arcs: Vec<(u32, u32)>,
    ) -> Self {
        let n = params.n();
        let edge_count = arcs.len();
        if directed {
            let out = Adjacency::from_sorted_arcs(n, &arcs);
            let mut rev: Vec<(u32, u32)> = arcs.into_iter().map(|(u, v)| (v, u)).collect();
            rev.sort_unstable();
            let incoming = Some(Adjacency::from_sorted_arcs(n, &rev));
            Graph {
                params,
                directed,
                seed,
                out,
                incoming,
                edge_count,
            }
        } else {
            let mut both = Vec::with_capacity(2 * arcs.len());
            for &(u, v) in &arcs {
                both.push((u, v));
                both.push((v, u));
            }
            both.sort_unstable();
            Graph {
                params,
                directed,
                seed,
                out: Adjacency::from_sorted_arcs(n, &both),
                incoming: None,
                edge_count,
            }
        }
    }

    pub fn params(&self) -> &TreeParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of undirected edges, or of arcs when directed.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbors of `v` (out-neighbors when directed).
    pub fn neighbors(&self, v: LeafId) -> &[u32] {
        self.out.row(v)
    }

    /// Sorted vertices `u` with an arc `u -> v` (all neighbors when undirected).
    pub fn in_neighbors(&self, v: LeafId) -> &[u32] {
        match &self.incoming {
            Some(adj) => adj.row(v),
            None => self.out.row(v),
        }
    }

    pub fn has_edge(&self, u: LeafId, v: LeafId) -> bool {
        u < self.n() && v < self.n() && self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn degree(&self, v: LeafId) -> usize {
        self.neighbors(v).len()
    }

    /// Edges in file order: `(u, v)` sorted, with `u < v` when undirected.
    pub fn edges(&self) -> impl Iterator<Item = (LeafId, LeafId)> + '_ {
        let directed = self.directed;
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(move |&v| (u, v as usize))
                .filter(move |&(u, v)| directed || u < v)
        })
    }

    pub fn header_line(&self) -> String {
        format!(
            "# cga b={} H={} c={} seed={} directed={}",
            self.params.b(),
            self.params.height(),
            self.params.c(),
            self.seed,
            u8::from(self.directed)
        )
    }

    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", self.header_line())?;
        for (u, v) in self.edges() {
            writeln!(w, "{u} {v}")?;
        }
        w.flush()
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("edge list is ASCII")
    }

    pub fn read_edge_list<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| CgaError::parse(1, "empty file"))??;
        let (params, seed, directed) = parse_header(&header)?;
        let mut edges = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            let lineno = i + 2;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let mut parts = trimmed.split_ascii_whitespace();
            let mut field = || -> Result<LeafId> {
                parts
                    .next()
                    .ok_or_else(|| CgaError::parse(lineno, "expected two vertex ids"))?
                    .parse()
                    .map_err(|_| CgaError::parse(lineno, format!("bad vertex id in {trimmed:?}")))
            };
            let (u, v) = (field()?, field()?);
            if parts.next().is_some() {
                return Err(CgaError::parse(lineno, "trailing fields"));
            }
            if !directed && u > v {
                return Err(CgaError::parse(lineno, "undirected edge must be written with u < v"));
            }
            edges.push((u, v));
        }
        Graph::from_edges(params, directed, seed, edges)
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        Self::read_edge_list(text.as_bytes())
    }
}

fn parse_header(line: &str) -> Result<(TreeParams, u64, bool)> {
    let bad = |msg: &str| CgaError::parse(1, format!("{msg} in header {line:?}"));
    let rest = line
        .strip_prefix("# cga ")
        .ok_or_else(|| bad("missing `# cga` prefix"))?;
    let (mut b, mut h, mut c, mut seed, mut directed) = (None, None, None, None, None);
    for kv in rest.split_ascii_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        match k {
            "b" => b = v.parse::<usize>().ok(),
            "H" => h = v.parse::<u32>().ok(),
            "c" => c = v.parse::<f64>().ok(),
            "seed" => seed = v.parse::<u64>().ok(),
            "directed" => {
                directed = match v {
                    "0" => Some(false),
                    "1" => Some(true),
                    _ => None,
                }
            }
            _ => return Err(bad(&format!("unknown key {k:?}"))),
        }
    }
    let params = TreeParams::new(
        b.ok_or_else(|| bad("missing or invalid b"))?,
        h.ok_or_else(|| bad("missing or invalid H"))?,
        c.ok_or_else(|| bad("missing or invalid c"))?,
    )?;
    Ok((
        params,
        seed.ok_or_else(|| bad("missing or invalid seed"))?,
        directed.ok_or_else(|| bad("missing or invalid directed flag"))?,
    ))
}
