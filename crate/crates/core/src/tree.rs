//! Exact combinatorics of the complete b-ary tree whose leaves are the
//! vertices of the graph.
//!
//! Leaves are labeled `0..n` in left-to-right order, so leaf `i` is the
//! base-`b` digit string of `i` (most significant digit = topmost branch)
//! and every complete subtree of height `h` is the contiguous index range
//! `[k * b^h, (k + 1) * b^h)`. All arithmetic here is integer.

use std::ops::Range;

use crate::error::{CgaError, Result};

/// Index of a leaf in `[0, n)`.
pub type LeafId = usize;

/// Shape of the tree plus the edge-probability base `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeParams {
    b: usize,
    height: u32,
    c: f64,
    n: usize,
}

impl TreeParams {
    pub fn new(b: usize, height: u32, c: f64) -> Result<Self> {
        if b < 2 {
            return Err(CgaError::domain(format!("branching factor b={b} must be at least 2")));
        }
        if height < 1 {
            return Err(CgaError::domain("tree height H must be at least 1"));
        }
        if !(c.is_finite() && c > 1.0) {
            return Err(CgaError::domain(format!("shrinking parameter c={c} must exceed 1")));
        }
        let n = b.checked_pow(height).ok_or_else(|| {
            CgaError::domain(format!("b^H = {b}^{height} overflows the native integer width"))
        })?;
        Ok(TreeParams { b, height, c, n })
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Tree height `H`.
    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Leaf count `b^H`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `b^e` for `e <= H`; cannot overflow since `b^H` fits.
    pub fn pow(&self, e: u32) -> usize {
        debug_assert!(e <= self.height);
        self.b.pow(e)
    }

    pub fn check_leaf(&self, u: LeafId) -> Result<()> {
        if u >= self.n {
            return Err(CgaError::domain(format!("leaf {u} out of range [0, {})", self.n)));
        }
        Ok(())
    }

    fn check_tree_height(&self, h: u32, what: &str) -> Result<()> {
        if h > self.height {
            return Err(CgaError::domain(format!(
                "{what}={h} exceeds tree height H={}",
                self.height
            )));
        }
        Ok(())
    }

    /// Leaves of the `index`-th complete subtree of height `h`.
    pub fn block(&self, h: u32, index: usize) -> Range<LeafId> {
        let size = self.pow(h);
        index * size..(index + 1) * size
    }

    /// Number of complete subtrees of height `h`.
    pub fn block_count(&self, h: u32) -> usize {
        self.n / self.pow(h)
    }
}

/// Height of the smallest subtree containing two distinct leaves.
pub fn pair_height(u: LeafId, v: LeafId, p: &TreeParams) -> Result<u32> {
    p.check_leaf(u)?;
    p.check_leaf(v)?;
    if u == v {
        return Err(CgaError::domain(format!("pair height undefined for u = v = {u}")));
    }
    Ok(raw_pair_height(u, v, p.b))
}

/// Unchecked pair height; `0` when `u == v`.
pub(crate) fn raw_pair_height(mut u: usize, mut v: usize, b: usize) -> u32 {
    let mut h = 0;
    while u != v {
        u /= b;
        v /= b;
        h += 1;
    }
    h
}

/// Height of a set: 0 for a singleton, otherwise the maximum pairwise
/// height. Only the extreme members matter because complete subtrees are
/// contiguous index ranges.
pub fn set_height(members: &[LeafId], p: &TreeParams) -> Result<u32> {
    let (&first, rest) = members
        .split_first()
        .ok_or_else(|| CgaError::domain("height of the empty set is undefined"))?;
    let (mut lo, mut hi) = (first, first);
    for &u in rest {
        lo = lo.min(u);
        hi = hi.max(u);
    }
    p.check_leaf(hi)?;
    Ok(raw_pair_height(lo, hi, p.b))
}

/// A nonempty set of leaves with its cached height and minimal complete set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    members: Vec<LeafId>,
    height: u32,
    root: LeafId,
    b: usize,
}

impl VertexSet {
    /// Sorts and deduplicates `members`.
    pub fn new(mut members: Vec<LeafId>, p: &TreeParams) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let height = set_height(&members, p)?;
        let root = members[0] - members[0] % p.pow(height);
        Ok(VertexSet {
            members,
            height,
            root,
            b: p.b,
        })
    }

    /// The complete set `[root, root + b^h)`.
    pub fn complete(root: LeafId, h: u32, p: &TreeParams) -> Result<Self> {
        p.check_tree_height(h, "height")?;
        let size = p.pow(h);
        if !root.is_multiple_of(size) || root >= p.n {
            return Err(CgaError::domain(format!(
                "{root} is not the first leaf of a height-{h} subtree"
            )));
        }
        Ok(VertexSet {
            members: (root..root + size).collect(),
            height: h,
            root,
            b: p.b,
        })
    }

    pub fn members(&self) -> &[LeafId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Leftmost leaf of the minimal complete subtree `S(M)`.
    pub fn root(&self) -> LeafId {
        self.root
    }

    /// Index range of `S(M)`.
    pub fn span(&self) -> Range<LeafId> {
        self.root..self.root + self.b.pow(self.height)
    }

    /// Index range of `S(M, h)`; `h` must be at least the set height.
    pub fn span_at(&self, h: u32) -> Range<LeafId> {
        debug_assert!(h >= self.height);
        let size = self.b.pow(h);
        let lo = self.root - self.root % size;
        lo..lo + size
    }

    /// `M == S(M)`.
    pub fn is_complete(&self) -> bool {
        self.members.len() == self.b.pow(self.height)
    }

    pub fn contains(&self, u: LeafId) -> bool {
        if self.is_complete() {
            self.span().contains(&u)
        } else {
            self.members.binary_search(&u).is_ok()
        }
    }
}

/// `S(M, h')`: the unique complete set of height `h'` containing `M`.
pub fn enclosing_complete_set(m: &VertexSet, h: u32, p: &TreeParams) -> Result<VertexSet> {
    p.check_tree_height(h, "h'")?;
    if h < m.height() {
        return Err(CgaError::domain(format!(
            "h'={h} is below the set height {}",
            m.height()
        )));
    }
    VertexSet::complete(m.span_at(h).start, h, p)
}

/// `h(u, M)`: the common height between `u` and every leaf of `S(M)`.
pub fn height_from_set(u: LeafId, m: &VertexSet, p: &TreeParams) -> Result<u32> {
    p.check_leaf(u)?;
    if m.span().contains(&u) {
        return Err(CgaError::domain(format!("leaf {u} lies inside S(M)")));
    }
    Ok(raw_pair_height(u, m.root(), p.b))
}

/// Unordered leaf pairs at height exactly `j` inside one complete set of
/// height `h`: `b^(h-j) * C(b,2) * b^(2(j-1))`.
pub fn pairs_at_height(j: u32, h: u32, p: &TreeParams) -> Result<u128> {
    if j < 1 || j > h || h > p.height {
        return Err(CgaError::domain(format!(
            "pairs_at_height needs 1 <= j <= h <= H, got j={j}, h={h}, H={}",
            p.height
        )));
    }
    let b = p.b as u128;
    let overflow = || CgaError::domain("pair count overflows 128 bits");
    let sub_blocks = b.checked_pow(h - j).ok_or_else(overflow)?;
    let child = b.checked_pow(j - 1).ok_or_else(overflow)?;
    let per_block = (b * (b - 1) / 2)
        .checked_mul(child)
        .and_then(|x| x.checked_mul(child))
        .ok_or_else(overflow)?;
    sub_blocks.checked_mul(per_block).ok_or_else(overflow)
}

/// Maps a rank in `[0, C(b,2) * s^2)` to the height-`j` pair it names
/// inside the complete height-`j` subtree starting at `root`, where
/// `s = b^(j-1)`. Ranks enumerate child pairs `(a, c)` with `a < c` in
/// lexicographic order, then leaf offsets within the two children.
pub(crate) fn unrank_cross_pair(rank: u64, root: usize, b: usize, child_size: usize) -> (usize, usize) {
    let s2 = (child_size as u64) * (child_size as u64);
    let mut q = (rank / s2) as usize;
    let within = rank % s2;
    let mut a = 0;
    // Row a holds the b-1-a pairs (a, a+1..b).
    while q >= b - 1 - a {
        q -= b - 1 - a;
        a += 1;
    }
    let c = a + 1 + q;
    let x = (within / child_size as u64) as usize;
    let y = (within % child_size as u64) as usize;
    (root + a * child_size + x, root + c * child_size + y)
}
