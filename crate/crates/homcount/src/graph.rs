//! Immutable simple undirected graphs with adjacency bitrows and a cached
//! component split. Vertices are always `0..n`, no loops, no multi-edges.

use std::fmt;
use std::sync::OnceLock;

use crate::canon::CanonicalForm;
use crate::error::{HomError, Result};

/// Hard cap on materialized graph size. Constructions that would exceed it
/// (huge forge witnesses, encoded composites) fail with a budget error
/// instead of exhausting memory on the dense bit matrix.
pub const MAX_VERTICES: usize = 100_000;

/// Kinds accepted by [`Graph::named`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedKind {
    Clique,
    Path,
    Cycle,
    Star,
}

/// An immutable simple undirected graph.
///
/// Adjacency is stored as one bitrow per vertex (row-major bit matrix), so
/// neighbourhood intersections during morphism counting are word operations.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    components: Vec<Vec<u32>>,
    canon: OnceLock<CanonicalForm>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}
impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, E={{", self.n)?;
        let mut first = true;
        for (u, v) in self.edges() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
            first = false;
        }
        write!(f, "}})")
    }
}

impl Graph {
    fn alloc(n: usize) -> Result<(usize, Vec<u64>)> {
        if n == 0 {
            return Err(HomError::Invalid("graph must have at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(HomError::Budget(format!(
                "graph with {n} vertices exceeds the materialization cap of {MAX_VERTICES}"
            )));
        }
        let words = n.div_ceil(64);
        let total = n
            .checked_mul(words)
            .ok_or_else(|| HomError::Budget("adjacency matrix too large".into()))?;
        Ok((words, vec![0u64; total]))
    }

    fn finish(n: usize, words: usize, bits: Vec<u64>) -> Graph {
        let mut g = Graph {
            n,
            words,
            bits,
            components: Vec::new(),
            canon: OnceLock::new(),
        };
        g.components = g.compute_components();
        g
    }

    /// Builds a graph on `n` vertices from an edge list. Self-loops and
    /// out-of-range endpoints are rejected; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let (words, mut bits) = Self::alloc(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(HomError::Invalid(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(HomError::Invalid(format!("self-loop at vertex {u}")));
            }
            bits[u * words + v / 64] |= 1u64 << (v % 64);
            bits[v * words + u / 64] |= 1u64 << (u % 64);
        }
        Ok(Self::finish(n, words, bits))
    }

    /// The single-vertex graph.
    pub fn k1() -> Graph {
        Graph::from_edges(1, &[]).expect("K_1 construction")
    }

    /// Named families with the usual vertex counts: `K_n`, `P_n`, `C_n`
    /// (requires n >= 3), and the star `S_n` (n vertices, centre degree n-1).
    pub fn named(kind: NamedKind, n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(HomError::Invalid("named graph needs n >= 1".into()));
        }
        match kind {
            NamedKind::Clique => {
                let mut edges = Vec::with_capacity(n * (n - 1) / 2);
                for u in 0..n {
                    for v in 0..u {
                        edges.push((u, v));
                    }
                }
                Graph::from_edges(n, &edges)
            }
            NamedKind::Path => {
                let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
                Graph::from_edges(n, &edges)
            }
            NamedKind::Cycle => {
                if n < 3 {
                    return Err(HomError::Invalid(format!("cycle requires n >= 3, got {n}")));
                }
                let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
                edges.push((n - 1, 0));
                Graph::from_edges(n, &edges)
            }
            NamedKind::Star => {
                let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
                Graph::from_edges(n, &edges)
            }
        }
    }

    pub fn clique(n: usize) -> Graph {
        Graph::named(NamedKind::Clique, n).expect("clique")
    }
    pub fn path(n: usize) -> Graph {
        Graph::named(NamedKind::Path, n).expect("path")
    }
    pub fn cycle(n: usize) -> Result<Graph> {
        Graph::named(NamedKind::Cycle, n)
    }
    pub fn star(n: usize) -> Graph {
        Graph::named(NamedKind::Star, n).expect("star")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.n).map(|u| self.degree(u)).sum();
        total / 2
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(u);
        (0..self.n).filter(move |&v| row[v / 64] >> (v % 64) & 1 == 1)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Raw bit-matrix bytes; identical labeled graphs share this key.
    pub fn raw_key(&self) -> (usize, &[u64]) {
        (self.n, &self.bits)
    }

    fn compute_components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            seen[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                comp.push(v as u32);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Connected components as sorted vertex lists, cached at construction.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Induced subgraph on `verts` (kept in the given order).
    pub fn induced(&self, verts: &[u32]) -> Graph {
        let k = verts.len();
        let (words, mut bits) = Self::alloc(k).expect("induced subgraph within caps");
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u as usize, v as usize) {
                    bits[i * words + j / 64] |= 1u64 << (j % 64);
                    bits[j * words + i / 64] |= 1u64 << (i % 64);
                }
            }
        }
        Self::finish(k, words, bits)
    }

    /// Relabels by `perm`, where `perm[pos]` is the original vertex placed at
    /// `pos` in the result.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let verts: Vec<u32> = perm.iter().map(|&v| v as u32).collect();
        self.induced(&verts)
    }

    /// Distinct components with multiplicities, deduplicated by exact bitrow
    /// identity. Counting over large disjoint unions factorizes through this.
    pub fn component_multiset(&self) -> Vec<(Graph, usize)> {
        let mut out: Vec<(Graph, usize)> = Vec::new();
        for comp in &self.components {
            let sub = self.induced(comp);
            if let Some(entry) = out.iter_mut().find(|(g, _)| *g == sub) {
                entry.1 += 1;
            } else {
                out.push((sub, 1));
            }
        }
        out
    }

    pub(crate) fn canon_cache(&self) -> &OnceLock<CanonicalForm> {
        &self.canon
    }

    /// Disjoint union; vertices of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let (words, mut bits) = Self::alloc(n)?;
        copy_block(&mut bits, words, self, 0);
        copy_block(&mut bits, words, other, self.n);
        Ok(Self::finish(n, words, bits))
    }

    /// `count` disjoint copies of `self`; `count = 0` is rejected.
    pub fn replicate(&self, count: usize) -> Result<Graph> {
        if count == 0 {
            return Err(HomError::Invalid("replicate requires at least one copy".into()));
        }
        let n = self
            .n
            .checked_mul(count)
            .ok_or_else(|| HomError::Budget("replicated graph too large".into()))?;
        let (words, mut bits) = Self::alloc(n)?;
        for c in 0..count {
            copy_block(&mut bits, words, self, c * self.n);
        }
        Ok(Self::finish(n, words, bits))
    }

    /// Union of many parts with multiplicities.
    pub fn union_of(parts: &[(Graph, usize)]) -> Result<Graph> {
        let mut n = 0usize;
        for (g, m) in parts {
            n = n
                .checked_add(
                    g.n.checked_mul(*m)
                        .ok_or_else(|| HomError::Budget("union too large".into()))?,
                )
                .ok_or_else(|| HomError::Budget("union too large".into()))?;
        }
        if n == 0 {
            return Err(HomError::Invalid("union of zero graphs".into()));
        }
        let (words, mut bits) = Self::alloc(n)?;
        let mut offset = 0;
        for (g, m) in parts {
            for _ in 0..*m {
                copy_block(&mut bits, words, g, offset);
                offset += g.n;
            }
        }
        Ok(Self::finish(n, words, bits))
    }

    /// Edge-complement; an involution.
    pub fn complement(&self) -> Graph {
        let (words, mut bits) = Self::alloc(self.n).expect("complement within caps");
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.has_edge(u, v) {
                    bits[u * words + v / 64] |= 1u64 << (v % 64);
                }
            }
        }
        Self::finish(self.n, words, bits)
    }

    /// Categorical (tensor) product: `(u,v) ~ (u',v')` iff `u ~ u'` and `v ~ v'`.
    pub fn tensor_product(&self, other: &Graph) -> Result<Graph> {
        let n = self
            .n
            .checked_mul(other.n)
            .ok_or_else(|| HomError::Budget("tensor product too large".into()))?;
        let (words, mut bits) = Self::alloc(n)?;
        let idx = |u: usize, v: usize| u * other.n + v;
        for (u, up) in self.edges() {
            for (v, vp) in other.edges() {
                for (a, b) in [
                    (idx(u, v), idx(up, vp)),
                    (idx(u, vp), idx(up, v)),
                ] {
                    bits[a * words + b / 64] |= 1u64 << (b % 64);
                    bits[b * words + a / 64] |= 1u64 << (a % 64);
                }
            }
        }
        Ok(Self::finish(n, words, bits))
    }

    /// Replaces every edge by a path of `s` edges; `s = 1` is the identity.
    pub fn subdivide_edges(&self, s: usize) -> Result<Graph> {
        if s == 0 {
            return Err(HomError::Invalid("subdivision factor must be >= 1".into()));
        }
        if s == 1 {
            return Ok(self.clone());
        }
        let m = self.edge_count();
        let n = self.n + m * (s - 1);
        let mut edges = Vec::with_capacity(m * s);
        let mut next = self.n;
        for (u, v) in self.edges() {
            let mut prev = u;
            for _ in 0..s - 1 {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, v));
        }
        Graph::from_edges(n, &edges)
    }

    /// The Mycielski construction: 2n+1 vertices, triangle-free inputs stay
    /// triangle-free, chromatic number rises by exactly one.
    pub fn mycielskian(&self) -> Result<Graph> {
        self.generalized_mycielskian(1)
    }

    /// Mycielskian with `levels` shadow layers; `levels = 1` is the classic
    /// construction. Higher levels preserve longer odd girth on cycles.
    pub fn generalized_mycielskian(&self, levels: usize) -> Result<Graph> {
        if levels == 0 {
            return Err(HomError::Invalid("mycielskian needs at least one level".into()));
        }
        let n = self.n;
        let total = n * (levels + 1) + 1;
        let apex = total - 1;
        let mut edges: Vec<(usize, usize)> = self.edges().collect();
        for lvl in 1..=levels {
            let base = lvl * n;
            let below = (lvl - 1) * n;
            for (u, v) in self.edges() {
                edges.push((base + u, below + v));
                edges.push((base + v, below + u));
            }
        }
        for i in 0..n {
            edges.push((levels * n + i, apex));
        }
        Graph::from_edges(total, &edges)
    }

    /// Two-colourability via BFS layering.
    pub fn is_bipartite(&self) -> bool {
        self.odd_girth().is_none()
    }

    /// Length of a shortest odd cycle, or `None` when bipartite.
    ///
    /// Uses the bipartite double cover: the shortest odd closed walk through
    /// `r` is the distance from `(r,0)` to `(r,1)` in `G x K_2`.
    pub fn odd_girth(&self) -> Option<usize> {
        let n = self.n;
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; 2 * n];
        let mut queue = std::collections::VecDeque::new();
        for r in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            queue.clear();
            dist[2 * r] = 0;
            queue.push_back(2 * r);
            while let Some(x) = queue.pop_front() {
                let (v, parity) = (x / 2, x % 2);
                let d = dist[x];
                if let Some(b) = best {
                    if d + 1 >= b {
                        continue;
                    }
                }
                for w in self.neighbors(v) {
                    let y = 2 * w + (1 - parity);
                    if dist[y] == usize::MAX {
                        dist[y] = d + 1;
                        queue.push_back(y);
                    }
                }
            }
            if dist[2 * r + 1] != usize::MAX {
                best = Some(best.map_or(dist[2 * r + 1], |b| b.min(dist[2 * r + 1])));
            }
        }
        best
    }

    /// Number of isolated vertices.
    pub fn isolated_count(&self) -> usize {
        (0..self.n).filter(|&u| self.degree(u) == 0).count()
    }

    /// Removes isolated vertices, returning the stripped graph and the count
    /// removed. An edgeless graph strips to `K_1` with count `n - 1`, keeping
    /// the result a valid (non-empty) graph.
    pub fn strip_isolated(&self) -> (Graph, usize) {
        let keep: Vec<u32> = (0..self.n as u32)
            .filter(|&u| self.degree(u as usize) > 0)
            .collect();
        if keep.is_empty() {
            return (Graph::k1(), self.n - 1);
        }
        let removed = self.n - keep.len();
        (self.induced(&keep), removed)
    }

    /// Histogram `(d_0, ..., d_{n-1})` of vertex degrees, always length `n`.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0usize; self.n];
        for u in 0..self.n {
            hist[self.degree(u)] += 1;
        }
        hist
    }
}

fn copy_block(bits: &mut [u64], words: usize, src: &Graph, offset: usize) {
    for (u, v) in src.edges() {
        let (a, b) = (u + offset, v + offset);
        bits[a * words + b / 64] |= 1u64 << (b % 64);
        bits[b * words + a / 64] |= 1u64 << (a % 64);
    }
}
