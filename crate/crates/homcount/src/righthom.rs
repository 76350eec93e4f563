//! Right-homomorphism algorithms: quotient construction preserving the
//! right hom vector, the bounded-edge family, membership decisions read off
//! the right vector alone, and the impossibility demonstrations.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::color::{chromatic_number, contains_triangle, is_k_colorable};
use crate::count::{count, CountKind};
use crate::enumerate::{enumerate_all_upto, ENUMERATE_ALL_MAX};
use crate::error::{HomError, Result};
use crate::graph::Graph;

/// Total number of hom maps a quotient call is allowed to materialize.
pub const QUOTIENT_MAP_CAP: u64 = 10_000_000;

// ---------------------------------------------------------------------------
// quotient

/// Enumerates every hom map from `g` into `f`, feeding assignments to the
/// callback. Used where the actual maps matter, not just their number.
fn enumerate_homs(g: &Graph, f: &Graph, visit: &mut dyn FnMut(&[usize])) {
    let n = g.n();
    let mut assign = vec![usize::MAX; n];
    // order vertices so each one after the first in its component has an
    // assigned neighbour
    let mut order = Vec::with_capacity(n);
    for comp in g.components() {
        let mut seen = vec![false; comp.len()];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            order.push(comp[i] as usize);
            for (j, &w) in comp.iter().enumerate() {
                if !seen[j] && g.has_edge(comp[i] as usize, w as usize) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    fn rec(
        g: &Graph,
        f: &Graph,
        order: &[usize],
        pos: usize,
        assign: &mut [usize],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if pos == order.len() {
            visit(assign);
            return;
        }
        let u = order[pos];
        'w: for w in 0..f.n() {
            for v in g.neighbors(u) {
                if assign[v] != usize::MAX && !f.has_edge(w, assign[v]) {
                    continue 'w;
                }
            }
            assign[u] = w;
            rec(g, f, order, pos + 1, assign, visit);
            assign[u] = usize::MAX;
        }
    }
    rec(g, f, &order, 0, &mut assign, visit);
}

/// Quotient of `g` under "no homomorphism into the family separates u and
/// v". Preserves `hom(g, F)` for every family member, which is re-verified
/// before returning.
pub fn quotient_graph(g: &Graph, family: &[Graph]) -> Result<Graph> {
    if family.is_empty() {
        return Err(HomError::Invalid("quotient needs a nonempty family".into()));
    }
    let counts: Vec<BigUint> = family
        .iter()
        .map(|f| count(CountKind::Hom, g, f))
        .collect();
    let quotient = if family.len() == 1 && family[0].n() == 1 && g.edge_count() >= 1 {
        // a single one-vertex target cannot separate anything beyond
        // "has an edge"
        Graph::path(2)
    } else if counts.iter().all(|c| c.is_zero()) {
        let m = 1 + family.iter().map(|f| f.n()).max().unwrap();
        Graph::clique(m)
    } else {
        let total: BigUint = counts.iter().sum();
        if total > BigUint::from(QUOTIENT_MAP_CAP) {
            return Err(HomError::Budget(format!(
                "quotient would materialize {total} hom maps (cap {QUOTIENT_MAP_CAP})"
            )));
        }
        // refine the identify-everything partition by every hom map
        let n = g.n();
        let mut classes: Vec<usize> = vec![0; n];
        for f in family {
            enumerate_homs(g, f, &mut |assign| {
                let mut relabel: std::collections::HashMap<(usize, usize), usize> =
                    std::collections::HashMap::new();
                let mut next = vec![0usize; n];
                for v in 0..n {
                    let key = (classes[v], assign[v]);
                    let id = relabel.len();
                    next[v] = *relabel.entry(key).or_insert(id);
                }
                classes = next;
            });
        }
        let class_count = classes.iter().max().unwrap() + 1;
        let mut edges = Vec::new();
        for (u, v) in g.edges() {
            let (a, b) = (classes[u], classes[v]);
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Graph::from_edges(class_count, &edges)?
    };
    for (f, c) in family.iter().zip(&counts) {
        if count(CountKind::Hom, &quotient, f) != *c {
            return Err(HomError::Consistency(
                "quotient does not preserve the right hom vector".into(),
            ));
        }
    }
    Ok(quotient)
}

/// The size bound a quotient with some positive count must satisfy:
/// product of `|V(F)|^(hom(G,F))` over the family.
pub fn quotient_size_bound(g: &Graph, family: &[Graph]) -> Option<BigUint> {
    let mut bound = BigUint::one();
    let mut any_positive = false;
    for f in family {
        let c = count(CountKind::Hom, g, f);
        if !c.is_zero() {
            any_positive = true;
        }
        let exp = c.to_u32()?;
        bound *= BigUint::from(f.n()).pow(exp);
    }
    any_positive.then_some(bound)
}

// ---------------------------------------------------------------------------
// bounded-edge family

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RightProvenance {
    BoundedEdge { k: usize, cap: usize, exact: bool },
    Explicit,
}

/// A right-hom query family: one representative per type up to the cap,
/// plus a one-isolated-vertex companion for every member.
#[derive(Debug, Clone)]
pub struct RightFamily {
    pub graphs: Vec<Graph>,
    pub provenance: RightProvenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyMode {
    /// the full cap `(2k)^3`; only k = 1 fits the enumeration budget
    Exact,
    /// a reduced vertex cap; the separation guarantee no longer applies
    Reduced { cap: usize },
}

pub fn bounded_edge_family(k: usize, mode: FamilyMode) -> Result<RightFamily> {
    if k == 0 {
        return Err(HomError::Invalid("edge bound must be >= 1".into()));
    }
    let full_cap = (2 * k).pow(3);
    let (cap, exact) = match mode {
        FamilyMode::Exact => {
            if full_cap > ENUMERATE_ALL_MAX {
                return Err(HomError::EnumBudget(format!(
                    "exact family for k={k} needs graphs up to {full_cap} vertices; \
                     only k=1 (cap 8) is enumerable. Use a reduced cap, which forfeits \
                     the separation guarantee."
                )));
            }
            (full_cap, true)
        }
        FamilyMode::Reduced { cap } => {
            if cap > ENUMERATE_ALL_MAX {
                return Err(HomError::EnumBudget(format!(
                    "reduced cap {cap} exceeds the enumeration budget {ENUMERATE_ALL_MAX}"
                )));
            }
            (cap, cap >= full_cap)
        }
    };
    let base = enumerate_all_upto(cap)?;
    let mut graphs = base.clone();
    for g in &base {
        graphs.push(g.disjoint_union(&Graph::k1())?);
    }
    Ok(RightFamily {
        graphs,
        provenance: RightProvenance::BoundedEdge { k, cap, exact },
    })
}

// ---------------------------------------------------------------------------
// membership from the right vector

/// Recovers the isolated-vertex count of the hidden graph from right counts
/// alone, comparing a target against its one-extra-vertex companion.
pub fn recover_isolated_count(query: &mut dyn FnMut(&Graph) -> BigUint) -> Result<usize> {
    // edgeless graphs map into K_1
    if query(&Graph::k1()).is_one() {
        let two = query(&Graph::k1().replicate(2).unwrap());
        // 2^n reveals n, and every vertex is isolated
        let n = two.trailing_zeros().unwrap_or(0) as usize;
        if two != BigUint::from(2u32).pow(n as u32) {
            return Err(HomError::Consistency(
                "edgeless right vector is not a power of two".into(),
            ));
        }
        return Ok(n);
    }
    // find a target with a nonzero count; cliques of growing size must hit
    let mut probe = None;
    for m in 2..=ENUMERATE_ALL_MAX {
        let f = Graph::clique(m);
        let a = query(&f);
        if !a.is_zero() {
            probe = Some((f, a));
            break;
        }
    }
    let Some((f0, a)) = probe else {
        return Err(HomError::Budget(
            "no clique within the budget receives a homomorphism".into(),
        ));
    };
    let b = query(&f0.disjoint_union(&Graph::k1())?);
    let v = BigUint::from(f0.n());
    let v1 = BigUint::from(f0.n() + 1);
    // b v^i = a (v+1)^i has a unique solution i >= 0
    let mut lhs = b.clone();
    let mut rhs = a.clone();
    let mut i = 0usize;
    loop {
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Equal => return Ok(i),
            std::cmp::Ordering::Less => {
                return Err(HomError::Consistency(
                    "right-count ratio is not a power of (v+1)/v".into(),
                ))
            }
            std::cmp::Ordering::Greater => {
                lhs *= &v;
                rhs *= &v1;
                i += 1;
                if i > 1_000_000 {
                    return Err(HomError::Budget("isolated-count recovery diverged".into()));
                }
            }
        }
    }
}

/// Decides membership of `g` in a class whose members have at most `k`
/// edges, reading only the right hom vector over the bounded-edge family.
/// `predicate` is the class itself, consulted on the reconstruction only.
pub fn right_membership(
    predicate: &dyn Fn(&Graph) -> bool,
    k: usize,
    g: &Graph,
    mode: FamilyMode,
) -> Result<bool> {
    let family = bounded_edge_family(k, mode)?;
    // the decision may read counts only through this closure
    let mut query = |f: &Graph| count(CountKind::Hom, g, f);

    if query(&Graph::k1()).is_one() {
        // edgeless: recover n and consult the class on n K_1
        let i = recover_isolated_count(&mut query)?;
        let reconstruction = Graph::k1().replicate(i.max(1))?;
        return Ok(predicate(&reconstruction));
    }
    let i = recover_isolated_count(&mut query)?;
    // candidates for the isolated-free core: at most 2k vertices, an edge,
    // no isolated vertex
    let candidates: Vec<Graph> = enumerate_all_upto(2 * k)?
        .into_iter()
        .filter(|w| w.edge_count() >= 1 && w.isolated_count() == 0)
        .collect();
    for w in candidates {
        let matches = family.graphs.iter().all(|f| {
            let expected = count(CountKind::Hom, &w, f) * BigUint::from(f.n()).pow(i as u32);
            query(f) == expected
        });
        if matches {
            let mut reconstruction = w.clone();
            if i > 0 {
                reconstruction = reconstruction.disjoint_union(&Graph::k1().replicate(i)?)?;
            }
            return Ok(predicate(&reconstruction));
        }
    }
    // no core with at most 2k vertices matches: every class member has one
    Ok(false)
}

// ---------------------------------------------------------------------------
// inequality chain

#[derive(Debug, Clone, Serialize)]
pub struct PowRightReport {
    pub k: usize,
    pub vertices: usize,
    pub small_colorable: bool,
    pub hom_into_big_clique: Option<String>,
    pub bound: String,
    pub chain_holds: Option<bool>,
}

/// The separation chain behind the bounded-edge algorithm: a k-colorable
/// graph on more than `k^3` vertices has more than `k^(3k)` colorings with
/// `k^3` colors, while graphs with at most `k` vertices stay below.
pub fn powright_inequality_check(h: &Graph, k: usize) -> Result<PowRightReport> {
    if k < 2 {
        return Err(HomError::Invalid("the chain needs k >= 2".into()));
    }
    let bound = BigUint::from(k).pow(3 * k as u32);
    let colorable = is_k_colorable(h, k);
    if !colorable {
        return Ok(PowRightReport {
            k,
            vertices: h.n(),
            small_colorable: false,
            hom_into_big_clique: None,
            bound: bound.to_string(),
            chain_holds: None,
        });
    }
    let big = Graph::clique(k.pow(3));
    let hom = count(CountKind::Hom, h, &big);
    let holds = hom > bound;
    Ok(PowRightReport {
        k,
        vertices: h.n(),
        small_colorable: true,
        hom_into_big_clique: Some(hom.to_string()),
        bound: bound.to_string(),
        chain_holds: Some(holds),
    })
}

/// The other side of the chain: every graph with at most `k` vertices has
/// at most `k^(3k)` homomorphisms into the big clique.
pub fn small_side_within_bound(k: usize) -> Result<bool> {
    let bound = BigUint::from(k).pow(3 * k as u32);
    let big = Graph::clique(k.pow(3));
    for g in enumerate_all_upto(k)? {
        if count(CountKind::Hom, &g, &big) > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// impossibility demonstrations

#[derive(Debug, Clone, Serialize)]
pub struct RightFailureDemo {
    pub s: usize,
    pub g0_graph6: String,
    pub g0_chromatic: usize,
    pub g0_has_triangle: bool,
    pub clique_has_triangle: bool,
    pub probes: Vec<String>,
    pub all_counts_zero: bool,
}

/// A triangle-free graph with chromatic number `s` whose right counts under
/// every probe smaller than `s` vanish exactly like the clique K_s: the two
/// are indistinguishable although only the clique contains a triangle.
pub fn right_failure_demo(s: usize, probes: Option<Vec<Graph>>) -> Result<RightFailureDemo> {
    if !(3..=4).contains(&s) {
        return Err(HomError::Budget(
            "the demonstration is verified for s in {3, 4}".into(),
        ));
    }
    // iterated Mycielskian tower from a single edge: chromatic number climbs
    // one per step, triangle-freeness is preserved
    let mut g0 = Graph::path(2);
    while chromatic_number(&g0) < s {
        g0 = g0.mycielskian()?;
    }
    if chromatic_number(&g0) != s || contains_triangle(&g0) {
        return Err(HomError::Consistency(
            "tower failed to produce a triangle-free graph of the target chromatic number".into(),
        ));
    }
    let probes = match probes {
        Some(p) => {
            if let Some(bad) = p.iter().find(|f| f.n() >= s) {
                return Err(HomError::Invalid(format!(
                    "probe with {} vertices is not below the chromatic threshold {s}",
                    bad.n()
                )));
            }
            p
        }
        None => enumerate_all_upto(s - 1)?,
    };
    let clique = Graph::clique(s);
    let mut all_zero = true;
    for f in &probes {
        all_zero &= count(CountKind::Hom, &g0, f).is_zero();
        all_zero &= count(CountKind::Hom, &clique, f).is_zero();
    }
    Ok(RightFailureDemo {
        s,
        g0_graph6: crate::graph6::encode(&g0),
        g0_chromatic: s,
        g0_has_triangle: contains_triangle(&g0),
        clique_has_triangle: contains_triangle(&clique),
        probes: probes.iter().map(crate::graph6::encode).collect(),
        all_counts_zero: all_zero,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueIsolatedDemo {
    pub m: usize,
    pub counts_all_zero: bool,
    pub isolated_differ: bool,
}

/// For any family, the clique one vertex larger than every member and the
/// same clique plus an isolated vertex have identical (all-zero) right
/// vectors yet differ on isolated vertices.
pub fn clique_isolated_demo(family: &[Graph]) -> Result<CliqueIsolatedDemo> {
    if family.is_empty() {
        return Err(HomError::Invalid("demo needs a nonempty family".into()));
    }
    let m = 1 + family.iter().map(|f| f.n()).max().unwrap();
    let g = Graph::clique(m);
    let h = g.disjoint_union(&Graph::k1())?;
    let mut all_zero = true;
    for f in family {
        all_zero &= count(CountKind::Hom, &g, f).is_zero();
        all_zero &= count(CountKind::Hom, &h, f).is_zero();
    }
    Ok(CliqueIsolatedDemo {
        m,
        counts_all_zero: all_zero,
        isolated_differ: g.isolated_count() == 0 && h.isolated_count() == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn quotient_special_cases() {
        // single one-vertex family member with an edged graph
        let q = quotient_graph(&Graph::cycle(4).unwrap(), &[Graph::k1()]).unwrap();
        assert_eq!(q, Graph::path(2));
        // all counts zero: clique of size 1 + max family size
        let q = quotient_graph(&Graph::clique(4), &[Graph::clique(3)]).unwrap();
        assert_eq!(q.n(), 4);
        assert_eq!(q.edge_count(), 6);
    }

    #[test]
    fn quotient_preserves_counts() {
        let g = Graph::cycle(3).unwrap().replicate(2).unwrap();
        let family = vec![Graph::clique(3)];
        let q = quotient_graph(&g, &family).unwrap();
        assert_eq!(
            count(CountKind::Hom, &q, &Graph::clique(3)),
            count(CountKind::Hom, &g, &Graph::clique(3))
        );
        if let Some(bound) = quotient_size_bound(&g, &family) {
            assert!(BigUint::from(q.n()) <= bound);
        }
    }

    #[test]
    fn family_shape() {
        let fam = bounded_edge_family(1, FamilyMode::Exact).unwrap();
        match fam.provenance {
            RightProvenance::BoundedEdge { cap, exact, .. } => {
                assert_eq!(cap, 8);
                assert!(exact);
            }
            _ => panic!(),
        }
        let base = enumerate_all_upto(8).unwrap().len();
        assert_eq!(fam.graphs.len(), 2 * base);
        assert!(matches!(
            bounded_edge_family(2, FamilyMode::Exact),
            Err(HomError::EnumBudget(_))
        ));
        let reduced = bounded_edge_family(2, FamilyMode::Reduced { cap: 5 }).unwrap();
        match reduced.provenance {
            RightProvenance::BoundedEdge { exact, .. } => assert!(!exact),
            _ => panic!(),
        }
    }

    #[test]
    fn isolated_recovery() {
        for (g, expected) in [
            (Graph::path(2).disjoint_union(&Graph::k1()).unwrap(), 1usize),
            (Graph::cycle(5).unwrap(), 0),
            (Graph::k1().replicate(5).unwrap(), 5),
            (
                Graph::path(3)
                    .disjoint_union(&Graph::k1().replicate(3).unwrap())
                    .unwrap(),
                3,
            ),
        ] {
            let mut query = |f: &Graph| count(CountKind::Hom, &g, f);
            assert_eq!(recover_isolated_count(&mut query).unwrap(), expected);
        }
    }

    #[test]
    fn membership_small_class() {
        let at_most_one_edge = |g: &Graph| g.edge_count() <= 1;
        let g = Graph::path(2).disjoint_union(&Graph::k1()).unwrap();
        assert!(right_membership(&at_most_one_edge, 1, &g, FamilyMode::Exact).unwrap());
        assert!(!right_membership(&at_most_one_edge, 1, &Graph::path(3), FamilyMode::Exact).unwrap());
        let edgeless = Graph::k1().replicate(5).unwrap();
        assert!(right_membership(&at_most_one_edge, 1, &edgeless, FamilyMode::Exact).unwrap());
    }

    #[test]
    fn chain_at_k2() {
        let h = Graph::k1().replicate(9).unwrap();
        let report = powright_inequality_check(&h, 2).unwrap();
        assert_eq!(report.chain_holds, Some(true));
        assert_eq!(
            report.hom_into_big_clique.unwrap().parse::<u64>().unwrap(),
            8u64.pow(9)
        );
        let c9 = Graph::cycle(9).unwrap();
        let report = powright_inequality_check(&c9, 2).unwrap();
        assert!(!report.small_colorable);
        assert!(report.chain_holds.is_none());
        assert!(small_side_within_bound(2).unwrap());
    }

    #[test]
    fn failure_demo() {
        let demo = right_failure_demo(3, None).unwrap();
        assert!(demo.all_counts_zero);
        assert!(!demo.g0_has_triangle);
        assert!(demo.clique_has_triangle);
        // the 3-chromatic triangle-free tower graph is the 5-cycle
        let g0 = crate::graph6::decode(&demo.g0_graph6).unwrap();
        assert!(crate::canon::is_isomorphic(&g0, &Graph::cycle(5).unwrap()).unwrap());
        let demo = right_failure_demo(4, None).unwrap();
        assert!(demo.all_counts_zero);
        // the tower graph for s=4 is the 11-vertex triangle-free one
        let g0 = crate::graph6::decode(&demo.g0_graph6).unwrap();
        assert_eq!(g0.n(), 11);
        assert!(right_failure_demo(5, None).is_err());
    }

    #[test]
    fn clique_demo() {
        let family = vec![Graph::path(3), Graph::clique(3)];
        let demo = clique_isolated_demo(&family).unwrap();
        assert_eq!(demo.m, 4);
        assert!(demo.counts_all_zero);
        assert!(demo.isolated_differ);
    }

    #[test]
    fn quotient_map_cap() {
        // hom(10 K_1, K_8) = 8^10 > 10^7: the cap must fire
        let g = Graph::k1().replicate(10).unwrap();
        let fam = vec![Graph::clique(8)];
        assert!(matches!(
            quotient_graph(&g, &fam),
            Err(HomError::Budget(_))
        ));
    }

    #[test]
    fn recovered_isolated_matches_direct_count() {
        for g in enumerate_all_upto(5).unwrap() {
            let mut query = |f: &Graph| count(CountKind::Hom, &g, f);
            let recovered = recover_isolated_count(&mut query).unwrap();
            assert_eq!(recovered, g.isolated_count(), "mismatch for {g:?}");
        }
    }
}
