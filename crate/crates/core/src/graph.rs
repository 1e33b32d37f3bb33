//! Finite simple graphs with bitset adjacency rows.

use std::fmt;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::vertex_set::{word_count, VertexSet};

pub const DEFAULT_VERTEX_LIMIT: usize = 4096;

static VERTEX_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_VERTEX_LIMIT);

/// Largest vertex count any constructor will produce.
pub fn vertex_limit() -> usize {
    VERTEX_LIMIT.load(Ordering::Relaxed)
}

/// Changes the process-wide vertex cap. Returns the previous value.
pub fn set_vertex_limit(limit: usize) -> usize {
    VERTEX_LIMIT.swap(limit, Ordering::Relaxed)
}

pub(crate) fn check_vertex_count(requested: usize) -> Result<()> {
    let limit = vertex_limit();
    if requested > limit {
        Err(Error::SizeCap { requested, limit })
    } else {
        Ok(())
    }
}

/// Multiplies vertex counts, mapping overflow onto the size cap error.
pub(crate) fn checked_product(a: usize, b: usize) -> Result<usize> {
    let n = a.checked_mul(b).ok_or(Error::SizeCap {
        requested: usize::MAX,
        limit: vertex_limit(),
    })?;
    check_vertex_count(n)?;
    Ok(n)
}

/// An undirected simple graph on vertices `0..n`.
///
/// Values are immutable once built; the adjacency matrix is stored as `n`
/// rows of packed bits and is always symmetric with an empty diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

/// Mutable adjacency buffer used by the constructors in this crate.
pub(crate) struct GraphBuilder {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl GraphBuilder {
    pub(crate) fn new(n: usize) -> Result<Self> {
        check_vertex_count(n)?;
        let words = word_count(n);
        Ok(GraphBuilder {
            n,
            words,
            adj: vec![0; n * words],
        })
    }

    #[inline]
    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub(crate) fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub(crate) fn build(self) -> Graph {
        let g = Graph {
            n: self.n,
            words: self.words,
            adj: self.adj,
        };
        debug_assert!(g.is_well_formed());
        g
    }
}

impl Graph {
    /// The graph with no vertices.
    pub fn empty() -> Self {
        Graph {
            n: 0,
            words: 0,
            adj: Vec::new(),
        }
    }

    /// Builds a graph from an edge list. Duplicate pairs are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n)?;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::IndexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    /// Builds a graph from a symmetric predicate evaluated on every pair `u < v`.
    pub fn from_fn<F>(n: usize, mut adjacent: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> bool,
    {
        let mut b = GraphBuilder::new(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    b.add_edge(u, v);
                }
            }
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        GraphBuilder::new(n).map(GraphBuilder::build)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The Kneser graph on the `k`-subsets of an `n`-set, adjacent when disjoint.
    ///
    /// Vertices are the subsets in lexicographic order of their sorted
    /// elements: `{0,1}, {0,2}, .., {0,n-1}, {1,2}, ..`.
    pub fn kneser(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "kneser({n},{k}) needs k <= n"
            )));
        }
        check_vertex_count(binomial(n, k))?;
        let subsets = k_subsets(n, k);
        Self::from_fn(subsets.len(), |a, b| subsets[a] & subsets[b] == 0)
    }

    /// The Petersen graph, realized as `kneser(5, 2)`.
    pub fn petersen() -> Self {
        Self::kneser(5, 2).expect("petersen graph fits any cap")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = self
            .adj
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum();
        total / 2
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.adj[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as pairs `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
                .collect::<Vec<_>>()
        })
    }

    /// Symmetric and irreflexive adjacency, with no stray bits past `n`.
    pub fn is_well_formed(&self) -> bool {
        if self.adj.len() != self.n * self.words {
            return false;
        }
        for u in 0..self.n {
            if self.has_edge(u, u) {
                return false;
            }
            let row = self.neighbors(u);
            if row.words() != self.row(u) {
                return false;
            }
            if row.iter().any(|v| !self.has_edge(v, u)) {
                return false;
            }
        }
        true
    }

    pub fn complement(&self) -> Graph {
        let mut adj = self.adj.clone();
        for u in 0..self.n {
            let row = &mut adj[u * self.words..(u + 1) * self.words];
            for w in row.iter_mut() {
                *w = !*w;
            }
            row[u / 64] &= !(1 << (u % 64));
            let rem = self.n % 64;
            if rem != 0 {
                row[self.words - 1] &= (1u64 << rem) - 1;
            }
        }
        Graph {
            n: self.n,
            words: self.words,
            adj,
        }
    }

    /// Induced subgraph on `set`, relabelled `0..|set|` in increasing order.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph> {
        if set.universe() != self.n {
            return Err(Error::InvalidSet(format!(
                "set over {} elements used with a graph on {} vertices",
                set.universe(),
                self.n
            )));
        }
        let keep = set.to_vec();
        Self::from_fn(keep.len(), |a, b| self.has_edge(keep[a], keep[b]))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Applies a vertex relabelling: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        Self::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Parses the edge-list text format: a vertex count on the first line,
    /// then one `u v` pair per line with `u < v`. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            pos: 1,
            msg: "missing vertex count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            pos: 1,
            msg: format!("bad vertex count {header:?}"),
        })?;
        let mut b = GraphBuilder::new(n)?;
        for (line, content) in lines {
            let parts: Vec<&str> = content.split_whitespace().collect();
            let bad = || Error::Parse {
                pos: line,
                msg: format!("expected `u v`, got {content:?}"),
            };
            if parts.len() != 2 {
                return Err(bad());
            }
            let u: usize = parts[0].parse().map_err(|_| bad())?;
            let v: usize = parts[1].parse().map_err(|_| bad())?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { vertex: v, n });
            }
            if u > v {
                return Err(Error::Parse {
                    pos: line,
                    msg: format!("edge {u} {v} must be written with u < v"),
                });
            }
            if b.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    pub fn read_edge_list<P: AsRef<Path>>(path: P) -> Result<Graph> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_edge_list(&text)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Binomial coefficient, saturating at `usize::MAX`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// All `k`-subsets of `0..n` as bitmasks, in lexicographic element order.
fn k_subsets(n: usize, k: usize) -> Vec<u128> {
    assert!(n <= 128, "kneser ground set limited to 128 elements");
    fn rec(start: usize, n: usize, k: usize, mask: u128, out: &mut Vec<u128>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        for i in start..=n - k {
            rec(i + 1, n, k - 1, mask | (1u128 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}
