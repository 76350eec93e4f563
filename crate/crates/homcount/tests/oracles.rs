//! Independent oracles: every production counting and enumeration path is
//! checked against a second computation that shares no code with it.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use homcount::count::{count, CountKind};
use homcount::enumerate::{enumerate_all_upto, enumerate_graphs};
use homcount::graph::Graph;
use homcount::linalg::{RationalMatrix, SolveOutcome};
use homcount::planar::is_planar;

// ---------------------------------------------------------------------------
// brute-force morphism counting straight from the definitions

fn all_maps(nf: usize, ng: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (ng as u64).pow(nf as u32);
    (0..total).map(move |code| {
        let mut map = Vec::with_capacity(nf);
        let mut c = code;
        for _ in 0..nf {
            map.push((c % ng as u64) as usize);
            c /= ng as u64;
        }
        map
    })
}

fn is_hom(f: &Graph, g: &Graph, map: &[usize]) -> bool {
    f.edges().all(|(u, v)| g.has_edge(map[u], map[v]))
}

fn is_strong(f: &Graph, g: &Graph, map: &[usize]) -> bool {
    for u in 0..f.n() {
        for v in u + 1..f.n() {
            let fe = f.has_edge(u, v);
            let ge = map[u] != map[v] && g.has_edge(map[u], map[v]);
            if fe != ge {
                return false;
            }
        }
    }
    true
}

fn is_injective(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len() + 64];
    map.iter().all(|&w| {
        if seen[w] {
            false
        } else {
            seen[w] = true;
            true
        }
    })
}

fn is_epi_extra(f: &Graph, g: &Graph, map: &[usize]) -> bool {
    let mut hit = vec![false; g.n()];
    for &w in map {
        hit[w] = true;
    }
    if !hit.iter().all(|&b| b) {
        return false;
    }
    g.edges().all(|(a, b)| {
        f.edges().any(|(u, v)| {
            (map[u], map[v]) == (a, b) || (map[u], map[v]) == (b, a)
        })
    })
}

fn brute_count(kind: CountKind, f: &Graph, g: &Graph) -> BigUint {
    let mut total = BigUint::zero();
    for map in all_maps(f.n(), g.n()) {
        let ok = match kind {
            CountKind::Hom => is_hom(f, g, &map),
            CountKind::Emb => is_hom(f, g, &map) && is_injective(&map),
            CountKind::StrongHom => is_strong(f, g, &map),
            CountKind::StrongEmb => is_strong(f, g, &map) && is_injective(&map),
            CountKind::Epi => is_hom(f, g, &map) && is_epi_extra(f, g, &map),
            CountKind::StrongEpi => is_strong(f, g, &map) && is_epi_extra(f, g, &map),
        };
        if ok {
            total += BigUint::one();
        }
    }
    total
}

#[test]
fn all_kinds_match_brute_force_up_to_three_vertices() {
    let graphs = enumerate_all_upto(3).unwrap();
    let kinds = [
        CountKind::Hom,
        CountKind::Emb,
        CountKind::StrongHom,
        CountKind::StrongEmb,
        CountKind::Epi,
        CountKind::StrongEpi,
    ];
    for f in &graphs {
        for g in &graphs {
            for kind in kinds {
                assert_eq!(
                    count(kind, f, g),
                    brute_count(kind, f, g),
                    "{kind:?} mismatch for {f:?} -> {g:?}"
                );
            }
        }
    }
}

#[test]
fn all_kinds_match_brute_force_on_four_vertex_sample() {
    // pairs with 4-vertex members: 4^4 = 256 maps each, still cheap
    let graphs = enumerate_graphs(4).unwrap();
    let small = enumerate_all_upto(3).unwrap();
    let kinds = [
        CountKind::Hom,
        CountKind::Emb,
        CountKind::StrongHom,
        CountKind::StrongEmb,
        CountKind::Epi,
        CountKind::StrongEpi,
    ];
    for f in &graphs {
        for g in graphs.iter().chain(&small) {
            for kind in kinds {
                assert_eq!(
                    count(kind, f, g),
                    brute_count(kind, f, g),
                    "{kind:?} mismatch for {f:?} -> {g:?}"
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// enumeration counts from the permutation group, no canonical forms involved

/// Number of isomorphism classes of graphs on n vertices: average over all
/// permutations of 2^(number of pair orbits).
fn burnside_graph_count(n: usize) -> BigUint {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 1 {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q: Vec<usize> = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut total = BigUint::zero();
    let perms = permutations(n);
    let count = perms.len();
    for p in perms {
        // orbits of the induced action on unordered pairs
        let mut seen = vec![vec![false; n]; n];
        let mut orbits = 0u32;
        for i in 0..n {
            for j in i + 1..n {
                if seen[i][j] {
                    continue;
                }
                orbits += 1;
                let (mut a, mut b) = (i, j);
                loop {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    if seen[x][y] {
                        break;
                    }
                    seen[x][y] = true;
                    a = x;
                    b = y;
                }
            }
        }
        total += BigUint::from(2u32).pow(orbits);
    }
    let denom = BigUint::from(count);
    assert!((total.clone() % &denom).is_zero());
    total / denom
}

/// Connected class counts from all-class counts by inverting the multiset
/// (Euler) transform: 1 + sum a_n x^n = prod (1 - x^k)^(-c_k).
fn connected_counts_from_all(all: &[u64]) -> Vec<u64> {
    let n = all.len();
    let mut c = vec![0u64; n + 1];
    // series[i] = coefficient of x^i in the product over known factors
    let mut series = vec![0u128; n + 1];
    series[0] = 1;
    for k in 1..=n {
        c[k] = all[k - 1] - series[k] as u64;
        // multiply series by (1 - x^k)^(-c_k) = sum_j C(c_k - 1 + j, j) x^(kj)
        let mut next = vec![0u128; n + 1];
        for (i, &coeff) in series.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            let mut j = 0usize;
            let mut binom: u128 = 1; // C(c_k - 1 + j, j)
            while i + k * j <= n {
                next[i + k * j] += coeff * binom;
                j += 1;
                binom = binom * (c[k] as u128 + j as u128 - 1) / j as u128;
            }
        }
        series = next;
    }
    c[1..].to_vec()
}

#[test]
fn enumeration_counts_match_group_theory() {
    let mut all = Vec::new();
    for n in 1..=7 {
        let burnside = burnside_graph_count(n).to_u64().unwrap();
        let enumerated = enumerate_graphs(n).unwrap().len() as u64;
        assert_eq!(enumerated, burnside, "all-graph count differs at n={n}");
        all.push(burnside);
    }
    let connected = connected_counts_from_all(&all);
    for (n, &expected) in connected.iter().enumerate() {
        let got = enumerate_graphs(n + 1)
            .unwrap()
            .iter()
            .filter(|g| g.is_connected())
            .count() as u64;
        assert_eq!(got, expected, "connected count differs at n={}", n + 1);
    }
}

#[test]
fn eight_vertex_count_matches_burnside() {
    assert_eq!(
        enumerate_graphs(8).unwrap().len() as u64,
        burnside_graph_count(8).to_u64().unwrap()
    );
}

// ---------------------------------------------------------------------------
// planarity against a subdivision-search oracle on small graphs

/// On at most 6 vertices a graph is nonplanar exactly when it contains one
/// of: the 5-clique, the 5-clique with one edge subdivided, or the complete
/// bipartite 3+3 graph, as a subgraph.
fn brute_planar_upto6(g: &Graph) -> bool {
    assert!(g.n() <= 6);
    let k5 = Graph::clique(5);
    let k33 = Graph::from_edges(
        6,
        &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
    )
    .unwrap();
    let k5_subdivided_once = {
        let mut edges: Vec<(usize, usize)> = Graph::clique(5)
            .edges()
            .filter(|&(u, v)| !(u == 0 && v == 1))
            .collect();
        edges.push((0, 5));
        edges.push((5, 1));
        Graph::from_edges(6, &edges).unwrap()
    };
    for pattern in [&k5, &k33, &k5_subdivided_once] {
        if !count(CountKind::Emb, pattern, g).is_zero() {
            return false;
        }
    }
    true
}

#[test]
fn planarity_matches_subdivision_search_up_to_six() {
    for n in 1..=6 {
        for g in enumerate_graphs(n).unwrap() {
            assert_eq!(
                is_planar(&g),
                brute_planar_upto6(&g),
                "planarity mismatch for {g:?}"
            );
        }
    }
}

#[test]
fn planar_type_census_to_seven() {
    // census of planar isomorphism types per vertex count
    let expected = [1usize, 2, 4, 11, 33, 142, 822];
    for (n, &want) in expected.iter().enumerate() {
        let got = enumerate_graphs(n + 1)
            .unwrap()
            .iter()
            .filter(|g| is_planar(g))
            .count();
        assert_eq!(got, want, "planar count differs at n={}", n + 1);
    }
}

// ---------------------------------------------------------------------------
// linear algebra against cofactor expansion

fn cofactor_det(m: &RationalMatrix) -> num_rational::BigRational {
    use num_rational::BigRational;
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut det = BigRational::zero();
    for c in 0..n {
        let minor = RationalMatrix::from_fn(n - 1, n - 1, |i, j| {
            m.get(i + 1, if j < c { j } else { j + 1 }).clone()
        });
        let term = m.get(0, c).clone() * cofactor_det(&minor);
        if c % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

fn rank_by_minors(m: &RationalMatrix) -> usize {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if k > n {
            return vec![];
        }
        let mut out = Vec::new();
        for last in k - 1..n {
            for mut s in subsets(last, k - 1) {
                s.push(last);
                out.push(s);
            }
        }
        out
    }
    let max = m.rows().min(m.cols());
    for size in (1..=max).rev() {
        for rows in subsets(m.rows(), size) {
            for cols in subsets(m.cols(), size) {
                let sub = RationalMatrix::from_fn(size, size, |i, j| {
                    m.get(rows[i], cols[j]).clone()
                });
                if !cofactor_det(&sub).is_zero() {
                    return size;
                }
            }
        }
    }
    0
}

#[test]
fn rank_and_solve_match_cofactor_oracle() {
    let cases = vec![
        vec![vec![2, 3], vec![2, 4]],
        vec![vec![2, 3, 3], vec![2, 4, 6], vec![0, 2, 6]],
        vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
        vec![vec![0, 0], vec![0, 0]],
        vec![vec![1, 1, 1, 1], vec![1, 2, 4, 8], vec![1, 3, 9, 27], vec![1, 4, 16, 64]],
        vec![
            vec![3, 1, 4, 1, 5],
            vec![9, 2, 6, 5, 3],
            vec![5, 8, 9, 7, 9],
            vec![3, 2, 3, 8, 4],
            vec![6, 2, 6, 4, 3],
        ],
    ];
    for rows in cases {
        let m = RationalMatrix::from_i64_rows(&rows);
        assert_eq!(m.rank(), rank_by_minors(&m), "rank mismatch on {rows:?}");
        if m.rows() == m.cols() {
            let det = cofactor_det(&m);
            let b: Vec<num_rational::BigRational> = (0..m.rows())
                .map(|i| num_rational::BigRational::from_integer((i as i64 + 1).into()))
                .collect();
            let outcome = m.solve(&b).unwrap();
            if det.is_zero() {
                assert!(!matches!(outcome, SolveOutcome::Unique(_)));
            } else {
                assert!(matches!(outcome, SolveOutcome::Unique(_)));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Vandermonde star-count inversion against forward computation

#[test]
fn vandermonde_star_system_inverts_forward_values() {
    // degree histogram of K_1 + P_3: (1, 2, 1, 0)
    let g = Graph::k1().disjoint_union(&Graph::path(3)).unwrap();
    let n = g.n();
    let values: Vec<BigUint> = (1..=n)
        .map(|j| {
            // forward: sum over degrees d of d^(j-1)
            let mut acc = BigUint::zero();
            for v in 0..n {
                let d = g.degree(v);
                if j == 1 {
                    acc += BigUint::one();
                } else if d > 0 {
                    acc += BigUint::from(d).pow((j - 1) as u32);
                }
            }
            acc
        })
        .collect();
    let hist = homcount::adaptive::histogram_from_star_vector(&values).unwrap();
    assert_eq!(hist, g.degree_histogram());
    assert_eq!(hist, vec![1, 2, 1, 0]);
}
