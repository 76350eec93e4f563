//! Exact canonical forms. Equal forms if and only if isomorphic; no hashing
//! shortcuts. Components are canonicalized by colour refinement plus
//! individualization with orbit pruning, then combined as a sorted block
//! diagonal.

use crate::error::{HomError, Result};
use crate::graph::Graph;

/// Per-component vertex limit for canonicalization. Refinement keeps the
/// search tame well past the sizes the constructions produce (tensor products
/// reach 18 vertices, Mycielskians 23).
pub const CANON_COMPONENT_LIMIT: usize = 32;

/// Canonical upper-triangle bitstring plus vertex count.
///
/// Bits are ordered column-major, pair `(i,j)` with `i < j` at index
/// `j(j-1)/2 + i`, packed MSB-first so that word-wise comparison matches
/// bitstring order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

#[inline]
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

#[inline]
fn set_bit(bits: &mut [u64], idx: usize) {
    bits[idx / 64] |= 1u64 << (63 - idx % 64);
}

#[inline]
fn get_bit(bits: &[u64], idx: usize) -> bool {
    bits[idx / 64] >> (63 - idx % 64) & 1 == 1
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bit_words(&self) -> &[u64] {
        &self.bits
    }

    fn words_for(n: usize) -> usize {
        (n * (n - 1) / 2).div_ceil(64)
    }

    fn from_labeled(g: &Graph, pos: &[usize]) -> CanonicalForm {
        let n = g.n();
        let mut bits = vec![0u64; Self::words_for(n)];
        for (u, v) in g.edges() {
            let (a, b) = (pos[u], pos[v]);
            let idx = if a < b { pair_index(a, b) } else { pair_index(b, a) };
            set_bit(&mut bits, idx);
        }
        CanonicalForm { n, bits }
    }

    /// Materializes the canonical representative.
    pub fn unpack(&self) -> Graph {
        let mut edges = Vec::new();
        for j in 1..self.n {
            for i in 0..j {
                if get_bit(&self.bits, pair_index(i, j)) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(self.n, &edges).expect("canonical form unpack")
    }
}

/// Exact canonical form of a graph of any component structure. Fails only
/// when a single component exceeds [`CANON_COMPONENT_LIMIT`].
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    if let Some(c) = g.canon_cache().get() {
        return Ok(c.clone());
    }
    let form = compute_canonical_form(g)?;
    let _ = g.canon_cache().set(form.clone());
    Ok(form)
}

fn compute_canonical_form(g: &Graph) -> Result<CanonicalForm> {
    if g.components().len() == 1 {
        return canon_connected(g);
    }
    let mut forms: Vec<CanonicalForm> = Vec::with_capacity(g.components().len());
    for comp in g.components() {
        forms.push(canon_connected(&g.induced(comp))?);
    }
    forms.sort();
    // block-diagonal layout of the sorted component forms
    let n = g.n();
    let mut bits = vec![0u64; CanonicalForm::words_for(n)];
    let mut offset = 0;
    for form in &forms {
        for j in 1..form.n {
            for i in 0..j {
                if get_bit(&form.bits, pair_index(i, j)) {
                    set_bit(&mut bits, pair_index(offset + i, offset + j));
                }
            }
        }
        offset += form.n;
    }
    Ok(CanonicalForm { n, bits })
}

fn canon_connected(g: &Graph) -> Result<CanonicalForm> {
    let n = g.n();
    if n > CANON_COMPONENT_LIMIT {
        return Err(HomError::CanonBudget {
            found: n,
            limit: CANON_COMPONENT_LIMIT,
        });
    }
    if n == 1 {
        return Ok(CanonicalForm { n: 1, bits: vec![] });
    }
    let mut searcher = Searcher {
        g,
        n,
        best: None,
        best_pos: vec![0; n],
        orbit: (0..n).collect(),
    };
    let mut colors = vec![0usize; n];
    refine(g, &mut colors);
    searcher.search(&colors);
    let (bits, _) = searcher.best.expect("search visits at least one leaf");
    Ok(CanonicalForm { n, bits })
}

struct Searcher<'a> {
    g: &'a Graph,
    n: usize,
    /// minimal bitstring found so far, with the vertex at each position
    best: Option<(Vec<u64>, Vec<usize>)>,
    best_pos: Vec<usize>,
    orbit: Vec<usize>,
}

impl Searcher<'_> {
    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.orbit[root] != root {
            root = self.orbit[root];
        }
        let mut cur = v;
        while self.orbit[cur] != root {
            let next = self.orbit[cur];
            self.orbit[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.orbit[ra.max(rb)] = ra.min(rb);
        }
    }

    fn search(&mut self, colors: &[usize]) {
        // target cell: smallest colour with at least two vertices
        let mut class_of: Option<usize> = None;
        let mut counts = vec![0usize; self.n];
        for &c in colors {
            counts[c] += 1;
        }
        for (c, &cnt) in counts.iter().enumerate() {
            if cnt >= 2 {
                class_of = Some(c);
                break;
            }
        }
        let Some(target) = class_of else {
            self.leaf(colors);
            return;
        };
        let members: Vec<usize> = (0..self.n).filter(|&v| colors[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            let rv = self.find(v);
            if tried.iter().any(|&u| {
                let mut root = u;
                while self.orbit[root] != root {
                    root = self.orbit[root];
                }
                root == rv
            }) {
                continue;
            }
            tried.push(v);
            // individualize v: keep its colour, shift everything >= target
            let mut next = colors.to_vec();
            for (w, col) in next.iter_mut().enumerate() {
                if *col >= target && w != v {
                    *col += 1;
                }
            }
            refine(self.g, &mut next);
            self.search(&next);
        }
    }

    fn leaf(&mut self, colors: &[usize]) {
        // discrete colouring: colour = position
        let candidate = CanonicalForm::from_labeled(self.g, colors);
        let mut vert_at = vec![0usize; self.n];
        for (v, &p) in colors.iter().enumerate() {
            vert_at[p] = v;
        }
        match &self.best {
            None => {
                self.best = Some((candidate.bits, vert_at.clone()));
                self.best_pos = vert_at;
            }
            Some((bits, best_vert_at)) => {
                if candidate.bits < *bits {
                    self.best = Some((candidate.bits, vert_at.clone()));
                    self.best_pos = vert_at;
                } else if candidate.bits == *bits {
                    // two labelings with identical images yield an automorphism
                    let pairs: Vec<(usize, usize)> = best_vert_at
                        .iter()
                        .zip(vert_at.iter())
                        .map(|(&a, &b)| (a, b))
                        .collect();
                    for (a, b) in pairs {
                        self.union(a, b);
                    }
                }
            }
        }
    }
}

/// Iterated colour refinement by neighbour-colour multisets. New colour ids
/// follow the sorted signature order, so refinement is label-invariant.
fn refine(g: &Graph, colors: &mut [usize]) {
    let n = g.n();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<usize> = g.neighbors(v).map(|w| colors[w]).collect();
            nb.sort_unstable();
            sigs.push((colors[v], nb));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut new_colors = vec![0usize; n];
        let mut next_id = 0usize;
        for (k, &v) in order.iter().enumerate() {
            if k > 0 && sigs[v] != sigs[order[k - 1]] {
                next_id += 1;
            }
            new_colors[v] = next_id;
        }
        if new_colors == colors {
            return;
        }
        colors.copy_from_slice(&new_colors);
    }
}

/// Exact isomorphism test via canonical forms.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
