//! Exact colorability: decision backtracking, chromatic number, and proper
//! m-coloring counts by deletion-contraction (used for hom counts into
//! cliques, where leaf-by-leaf enumeration would be hopeless).

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::canon::{canonical_form, CANON_COMPONENT_LIMIT};
use crate::graph::Graph;

/// True iff some edge closes a triangle.
pub fn contains_triangle(g: &Graph) -> bool {
    for (u, v) in g.edges() {
        let ru = g.row(u);
        let rv = g.row(v);
        if ru.iter().zip(rv).any(|(a, b)| a & b != 0) {
            return true;
        }
    }
    false
}

/// Decision procedure for k-colorability, by components.
pub fn is_k_colorable(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return false;
    }
    g.components().iter().all(|comp| {
        let sub = g.induced(comp);
        color_component(&sub, k)
    })
}

fn color_component(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if k >= n {
        return true;
    }
    if g.edge_count() == 0 {
        return true;
    }
    if k == 1 {
        return false;
    }
    // color in descending degree order, restricting to used colors + 1
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut coloring = vec![usize::MAX; n];
    fn go(g: &Graph, order: &[usize], k: usize, pos: usize, max_used: usize, coloring: &mut [usize]) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let mut forbidden = 0u64;
        for w in g.neighbors(v) {
            if coloring[w] != usize::MAX {
                forbidden |= 1u64 << coloring[w];
            }
        }
        let limit = k.min(max_used + 1);
        for c in 0..limit {
            if forbidden >> c & 1 == 0 {
                coloring[v] = c;
                if go(g, order, k, pos + 1, max_used.max(c + 1), coloring) {
                    return true;
                }
                coloring[v] = usize::MAX;
            }
        }
        false
    }
    go(g, &order, k, 0, 0, &mut coloring)
}

/// Exact chromatic number.
pub fn chromatic_number(g: &Graph) -> usize {
    for k in 1..=g.n() {
        if is_k_colorable(g, k) {
            return k;
        }
    }
    g.n()
}

/// Number of proper m-colorings, i.e. the chromatic polynomial at m.
pub fn chromatic_count(g: &Graph, m: usize) -> BigUint {
    let mut memo: HashMap<(usize, Vec<u64>), BigInt> = HashMap::new();
    let mut result = BigInt::one();
    for comp in g.components() {
        let sub = g.induced(comp);
        result *= chrom_component(&sub, m, &mut memo);
        if result.is_zero() {
            break;
        }
    }
    match result.to_biguint() {
        Some(v) => v,
        None => panic!("chromatic count must be non-negative"),
    }
}

fn memo_key(g: &Graph) -> (usize, Vec<u64>) {
    if g.n() <= CANON_COMPONENT_LIMIT {
        if let Ok(form) = canonical_form(g) {
            return (g.n(), form.bit_words().to_vec());
        }
    }
    let (n, bits) = g.raw_key();
    (n, bits.to_vec())
}

fn chrom_component(g: &Graph, m: usize, memo: &mut HashMap<(usize, Vec<u64>), BigInt>) -> BigInt {
    let n = g.n();
    let e = g.edge_count();
    let mb = BigInt::from(m);
    if e == 0 {
        return mb.pow(n as u32);
    }
    if e == n - 1 {
        // connected with n-1 edges: a tree
        return mb.clone() * (mb - BigInt::one()).pow((n - 1) as u32);
    }
    if n >= 3 && e == n && g.degree_histogram().get(2) == Some(&n) {
        // cycle: (m-1)^n + (-1)^n (m-1)
        let t = mb - BigInt::one();
        let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        return t.pow(n as u32) + sign * t;
    }
    if e == n * (n - 1) / 2 {
        // complete: falling factorial
        if m < n {
            return BigInt::zero();
        }
        let mut acc = BigInt::one();
        for i in 0..n {
            acc *= BigInt::from(m - i);
        }
        return acc;
    }
    let key = memo_key(g);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // contract an edge whose endpoints have the largest degree sum
    let (u, v) = g
        .edges()
        .max_by_key(|&(u, v)| g.degree(u) + g.degree(v))
        .expect("component has an edge");
    let deleted = delete_edge(g, u, v);
    let contracted = contract_edge(g, u, v);
    // deletion may disconnect; multiply per component
    let mut del_val = BigInt::one();
    for (part, mult) in deleted.component_multiset() {
        del_val *= chrom_component(&part, m, memo).pow(mult as u32);
    }
    let result = del_val - chrom_component(&contracted, m, memo);
    memo.insert(key, result.clone());
    result
}

fn delete_edge(g: &Graph, a: usize, b: usize) -> Graph {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| !(u == a && v == b || u == b && v == a))
        .collect();
    Graph::from_edges(g.n(), &edges).expect("edge deletion")
}

fn contract_edge(g: &Graph, a: usize, b: usize) -> Graph {
    // merge b into a, drop duplicates
    let map = |v: usize| {
        if v == b {
            a
        } else {
            v
        }
    };
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (x, y) = (map(u), map(v));
        if x != y {
            edges.push((x.min(y), x.max(y)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    // compact labels: b disappears
    let relabel = |v: usize| if v > b { v - 1 } else { v };
    let edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(u, v)| (relabel(u), relabel(v)))
        .collect();
    Graph::from_edges(g.n() - 1, &edges).expect("edge contraction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn chromatic_basics() {
        assert_eq!(chromatic_number(&Graph::cycle(5).unwrap()), 3);
        assert_eq!(chromatic_number(&Graph::cycle(6).unwrap()), 2);
        assert_eq!(chromatic_number(&Graph::clique(4)), 4);
        assert_eq!(chromatic_number(&Graph::k1()), 1);
    }

    #[test]
    fn grotzsch_is_four_chromatic_triangle_free() {
        let g = Graph::cycle(5).unwrap().mycielskian().unwrap();
        assert!(!contains_triangle(&g));
        assert_eq!(chromatic_number(&g), 4);
    }

    #[test]
    fn counts_match_known_polynomials() {
        // P_3 at m: m(m-1)^2
        assert_eq!(chromatic_count(&Graph::path(3), 3).to_u64(), Some(12));
        // C_4 at 3: 2^4 + 2 = 18
        assert_eq!(chromatic_count(&Graph::cycle(4).unwrap(), 3).to_u64(), Some(18));
        // C_5 at 2: 0
        assert!(chromatic_count(&Graph::cycle(5).unwrap(), 2).is_zero());
        // K_4 at 4: 24
        assert_eq!(chromatic_count(&Graph::clique(4), 4).to_u64(), Some(24));
        // diamond (K_4 minus an edge) at 3: m(m-1)(m-2)^2 = 3*2*1 = 6
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(chromatic_count(&diamond, 3).to_u64(), Some(6));
    }

    #[test]
    fn count_and_decision_agree() {
        let graphs = [
            Graph::cycle(5).unwrap(),
            Graph::clique(4),
            Graph::path(4),
            Graph::star(5),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap(),
        ];
        for g in &graphs {
            for k in 1..=4 {
                assert_eq!(
                    is_k_colorable(g, k),
                    !chromatic_count(g, k).is_zero(),
                    "mismatch for {g:?} k={k}"
                );
            }
        }
    }
}
