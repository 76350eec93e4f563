//! Exact counting of the six morphism kinds plus automorphisms, count
//! vectors, and the hom/emb basis transform.
//!
//! Counting backtracks over the pattern's vertices with bitset candidate
//! sets. Disconnected patterns factor through the component product rule;
//! disconnected targets of connected patterns factor through the component
//! sum rule. Both factorizations are mandatory: forge witnesses have
//! hundreds of components.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{LazyLock, Mutex};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::canon::canonical_form;
use crate::color::chromatic_count;
use crate::error::{HomError, Result};
use crate::graph::Graph;

/// Arbitrary-precision natural count.
pub type CountValue = BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CountKind {
    Hom,
    Emb,
    StrongHom,
    StrongEmb,
    Epi,
    StrongEpi,
}

impl CountKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountKind::Hom => "hom",
            CountKind::Emb => "emb",
            CountKind::StrongHom => "s-hom",
            CountKind::StrongEmb => "s-emb",
            CountKind::Epi => "epi",
            CountKind::StrongEpi => "s-epi",
        }
    }
}

impl FromStr for CountKind {
    type Err = HomError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hom" => Ok(CountKind::Hom),
            "emb" => Ok(CountKind::Emb),
            "s-hom" | "shom" => Ok(CountKind::StrongHom),
            "s-emb" | "semb" => Ok(CountKind::StrongEmb),
            "epi" => Ok(CountKind::Epi),
            "s-epi" | "sepi" => Ok(CountKind::StrongEpi),
            other => Err(HomError::Invalid(format!("unknown count kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Orientation {
    /// entries are `count(F, G)` for family graphs `F`
    Left,
    /// entries are `count(G, F)` for family graphs `F`
    Right,
}

/// Ordered per-family counts for a fixed graph.
#[derive(Debug, Clone)]
pub struct CountVector {
    pub kind: CountKind,
    pub orientation: Orientation,
    pub entries: Vec<(Graph, CountValue)>,
}

/// Exact count of maps of the given kind from `f` into `g`.
pub fn count(kind: CountKind, f: &Graph, g: &Graph) -> CountValue {
    match kind {
        CountKind::Hom => hom(f, g),
        CountKind::Emb => emb(f, g),
        CountKind::StrongHom => strong_count(f, g, false),
        CountKind::StrongEmb => strong_emb(f, g),
        CountKind::Epi => epi_count(f, g, false),
        CountKind::StrongEpi => epi_count(f, g, true),
    }
}

/// Number of automorphisms, `emb(G, G)`.
pub fn aut(g: &Graph) -> CountValue {
    emb(g, g)
}

pub fn count_vector(
    kind: CountKind,
    family: &[Graph],
    g: &Graph,
    orientation: Orientation,
) -> CountVector {
    let entries = family
        .iter()
        .map(|f| {
            let value = match orientation {
                Orientation::Left => count(kind, f, g),
                Orientation::Right => count(kind, g, f),
            };
            (f.clone(), value)
        })
        .collect();
    CountVector {
        kind,
        orientation,
        entries,
    }
}

// ---------------------------------------------------------------------------
// memo table, keyed by canonical forms when both sides are small

const MEMO_VERTEX_LIMIT: usize = 11;
const MEMO_SHARDS: usize = 32;
const MEMO_SHARD_CAP: usize = 150_000;

type MemoKey = (u8, u8, u64, u8, u64);

static MEMO: LazyLock<Vec<Mutex<HashMap<MemoKey, BigUint>>>> =
    LazyLock::new(|| (0..MEMO_SHARDS).map(|_| Mutex::new(HashMap::new())).collect());

fn canon_word(g: &Graph) -> Option<(u8, u64)> {
    if g.n() > MEMO_VERTEX_LIMIT {
        return None;
    }
    let form = canonical_form(g).ok()?;
    let word = form.bit_words().first().copied().unwrap_or(0);
    Some((g.n() as u8, word))
}

fn memo_key(kind: CountKind, f: &Graph, g: &Graph) -> Option<MemoKey> {
    let (fn_, fw) = canon_word(f)?;
    let (gn, gw) = canon_word(g)?;
    let k = match kind {
        CountKind::Hom => 0u8,
        CountKind::Emb => 1,
        CountKind::StrongHom => 2,
        CountKind::StrongEmb => 3,
        CountKind::Epi => 4,
        CountKind::StrongEpi => 5,
    };
    Some((k, fn_, fw, gn, gw))
}

fn memo_shard(key: &MemoKey) -> usize {
    use std::hash::{Hash, Hasher};
    let mut h = std::collections::hash_map::DefaultHasher::new();
    key.hash(&mut h);
    (h.finish() as usize) % MEMO_SHARDS
}

fn with_memo(kind: CountKind, f: &Graph, g: &Graph, compute: impl FnOnce() -> BigUint) -> BigUint {
    let Some(key) = memo_key(kind, f, g) else {
        return compute();
    };
    let shard = memo_shard(&key);
    if let Some(v) = MEMO[shard].lock().unwrap().get(&key) {
        return v.clone();
    }
    let value = compute();
    let mut map = MEMO[shard].lock().unwrap();
    if map.len() < MEMO_SHARD_CAP {
        map.insert(key, value.clone());
    }
    value
}

// ---------------------------------------------------------------------------
// hom

fn hom(f: &Graph, g: &Graph) -> BigUint {
    let mut acc = BigUint::one();
    for (fc, mult) in f.component_multiset() {
        let per = hom_connected(&fc, g);
        if per.is_zero() {
            return BigUint::zero();
        }
        acc *= per.pow(mult as u32);
    }
    acc
}

/// `f` connected; sums over the target's components.
fn hom_connected(f: &Graph, g: &Graph) -> BigUint {
    if g.components().len() == 1 {
        return hom_cc(f, g);
    }
    let mut acc = BigUint::zero();
    for (d, mult) in g.component_multiset() {
        acc += hom_cc(f, &d) * BigUint::from(mult);
    }
    acc
}

fn hom_cc(f: &Graph, d: &Graph) -> BigUint {
    with_memo(CountKind::Hom, f, d, || {
        let n = d.n();
        if d.edge_count() == n * (n - 1) / 2 {
            // complete target: proper colorings
            return chromatic_count(f, n);
        }
        backtrack_hom(f, d)
    })
}

/// Backtracking with deferred multiplication: a pattern vertex whose
/// neighbours are all assigned contributes a plain factor and never branches.
fn backtrack_hom(f: &Graph, g: &Graph) -> BigUint {
    let nf = f.n();
    let gw = g.words_per_row();
    let mut assign = vec![usize::MAX; nf];
    let mut deferred = vec![false; nf];
    let mut scratch = vec![0u64; gw];

    fn candidates(
        f: &Graph,
        g: &Graph,
        assign: &[usize],
        u: usize,
        out: &mut [u64],
    ) -> Option<usize> {
        let mut init = false;
        for v in f.neighbors(u) {
            if assign[v] != usize::MAX {
                let row = g.row(assign[v]);
                if !init {
                    out.copy_from_slice(row);
                    init = true;
                } else {
                    for (o, r) in out.iter_mut().zip(row) {
                        *o &= r;
                    }
                }
            }
        }
        if !init {
            return None; // unconstrained
        }
        Some(out.iter().map(|w| w.count_ones() as usize).sum())
    }

    fn rec(
        f: &Graph,
        g: &Graph,
        assign: &mut [usize],
        deferred: &mut [bool],
        scratch: &mut [u64],
    ) -> BigUint {
        let nf = f.n();
        // defer finished vertices
        let mut multiplier = BigUint::one();
        let mut newly = Vec::new();
        for u in 0..nf {
            if assign[u] != usize::MAX || deferred[u] {
                continue;
            }
            if f.neighbors(u).all(|v| assign[v] != usize::MAX) {
                // a deferred vertex never has unassigned neighbours, so
                // checking assignment alone is enough
                let c = match candidates(f, g, assign, u, scratch) {
                    Some(c) => c,
                    None => g.n(),
                };
                if c == 0 {
                    for &w in &newly {
                        deferred[w] = false;
                    }
                    return BigUint::zero();
                }
                multiplier *= BigUint::from(c);
                deferred[u] = true;
                newly.push(u);
            }
        }
        // pick the most constrained remaining vertex
        let mut pick: Option<(usize, usize)> = None;
        for u in 0..nf {
            if assign[u] != usize::MAX || deferred[u] {
                continue;
            }
            let constrained = f
                .neighbors(u)
                .filter(|&v| assign[v] != usize::MAX)
                .count();
            if pick.is_none_or(|(_, best)| constrained > best) {
                pick = Some((u, constrained));
            }
        }
        let result = match pick {
            None => multiplier,
            Some((u, constrained)) => {
                let cand: Vec<usize> = if constrained == 0 {
                    (0..g.n()).collect()
                } else {
                    candidates(f, g, assign, u, scratch);
                    let snapshot = scratch.to_vec();
                    (0..g.n())
                        .filter(|&w| snapshot[w / 64] >> (w % 64) & 1 == 1)
                        .collect()
                };
                let mut sum = BigUint::zero();
                for w in cand {
                    assign[u] = w;
                    sum += rec(f, g, assign, deferred, scratch);
                    assign[u] = usize::MAX;
                }
                multiplier * sum
            }
        };
        for &w in &newly {
            deferred[w] = false;
        }
        result
    }

    rec(f, g, &mut assign, &mut deferred, &mut scratch)
}

// ---------------------------------------------------------------------------
// emb

fn emb(f: &Graph, g: &Graph) -> BigUint {
    if f.n() > g.n() {
        return BigUint::zero();
    }
    if f.is_connected() {
        if g.components().len() == 1 {
            return emb_cc(f, g);
        }
        let mut acc = BigUint::zero();
        for (d, mult) in g.component_multiset() {
            acc += emb_cc(f, &d) * BigUint::from(mult);
        }
        return acc;
    }
    with_memo(CountKind::Emb, f, g, || backtrack_emb(f, g))
}

fn emb_cc(f: &Graph, d: &Graph) -> BigUint {
    if f.n() > d.n() || f.edge_count() > d.edge_count() {
        return BigUint::zero();
    }
    with_memo(CountKind::Emb, f, d, || {
        let n = d.n();
        if d.edge_count() == n * (n - 1) / 2 {
            // complete target: any injection embeds
            let mut acc = BigUint::one();
            for i in 0..f.n() {
                acc *= BigUint::from(n - i);
            }
            return acc;
        }
        backtrack_emb(f, d)
    })
}

fn backtrack_emb(f: &Graph, g: &Graph) -> BigUint {
    let nf = f.n();
    let gw = g.words_per_row();
    let mut assign = vec![usize::MAX; nf];
    let mut used = vec![0u64; gw];

    fn rec(f: &Graph, g: &Graph, assign: &mut [usize], used: &mut [u64], placed: usize) -> BigUint {
        let nf = f.n();
        if placed == nf {
            return BigUint::one();
        }
        // most-constrained unassigned vertex
        let mut pick = usize::MAX;
        let mut best = usize::MAX;
        for u in 0..nf {
            if assign[u] != usize::MAX {
                continue;
            }
            let constrained = f.neighbors(u).filter(|&v| assign[v] != usize::MAX).count();
            if pick == usize::MAX || constrained > best {
                pick = u;
                best = constrained;
            }
        }
        let u = pick;
        let mut cand: Vec<u64> = vec![!0u64; g.words_per_row()];
        for v in f.neighbors(u) {
            if assign[v] != usize::MAX {
                for (c, r) in cand.iter_mut().zip(g.row(assign[v])) {
                    *c &= r;
                }
            }
        }
        for (c, us) in cand.iter_mut().zip(used.iter()) {
            *c &= !us;
        }
        let mut sum = BigUint::zero();
        for w in 0..g.n() {
            if cand[w / 64] >> (w % 64) & 1 == 0 {
                continue;
            }
            assign[u] = w;
            used[w / 64] |= 1 << (w % 64);
            sum += rec(f, g, assign, used, placed + 1);
            used[w / 64] &= !(1 << (w % 64));
            assign[u] = usize::MAX;
        }
        sum
    }

    rec(f, g, &mut assign, &mut used, 0)
}

// ---------------------------------------------------------------------------
// strong variants

fn strong_emb(f: &Graph, g: &Graph) -> BigUint {
    if f.n() > g.n() {
        return BigUint::zero();
    }
    if f.is_connected() && g.components().len() > 1 {
        // an induced connected image lies inside one component
        let mut acc = BigUint::zero();
        for (d, mult) in g.component_multiset() {
            acc += strong_count(f, &d, true) * BigUint::from(mult);
        }
        return acc;
    }
    strong_count(f, g, true)
}

fn strong_count(f: &Graph, g: &Graph, injective: bool) -> BigUint {
    let kind = if injective {
        CountKind::StrongEmb
    } else {
        CountKind::StrongHom
    };
    with_memo(kind, f, g, || backtrack_strong(f, g, injective))
}

fn backtrack_strong(f: &Graph, g: &Graph, injective: bool) -> BigUint {
    let nf = f.n();
    let ng = g.n();
    let mut assign = vec![usize::MAX; nf];
    // order by degree, densest first
    let mut order: Vec<usize> = (0..nf).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(f.degree(v)));

    fn rec(
        f: &Graph,
        g: &Graph,
        order: &[usize],
        pos: usize,
        assign: &mut [usize],
        injective: bool,
    ) -> BigUint {
        if pos == order.len() {
            return BigUint::one();
        }
        let u = order[pos];
        let mut sum = BigUint::zero();
        'w: for w in 0..g.n() {
            for &v in &order[..pos] {
                let fv = assign[v];
                if injective && fv == w {
                    continue 'w;
                }
                let f_edge = f.has_edge(u, v);
                let g_edge = fv != w && g.has_edge(w, fv);
                if f_edge != g_edge {
                    continue 'w;
                }
            }
            assign[u] = w;
            sum += rec(f, g, order, pos + 1, assign, injective);
            assign[u] = usize::MAX;
        }
        sum
    }

    if injective && nf > ng {
        return BigUint::zero();
    }
    rec(f, g, &order, 0, &mut assign, injective)
}

// ---------------------------------------------------------------------------
// epimorphisms

fn epi_count(f: &Graph, g: &Graph, strong: bool) -> BigUint {
    if f.n() < g.n() || f.edge_count() < g.edge_count() {
        return BigUint::zero();
    }
    let kind = if strong { CountKind::StrongEpi } else { CountKind::Epi };
    with_memo(kind, f, g, || backtrack_epi(f, g, strong))
}

/// Enumerates homomorphisms (strong ones when `strong`), counting leaves
/// that are vertex-surjective with every target edge covered.
fn backtrack_epi(f: &Graph, g: &Graph, strong: bool) -> BigUint {
    let nf = f.n();
    let ng = g.n();
    let ge: Vec<(usize, usize)> = g.edges().collect();
    let edge_index: HashMap<(usize, usize), usize> = ge
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| ((a, b), i))
        .collect();
    let mut assign = vec![usize::MAX; nf];
    let mut vertex_cover = vec![0usize; ng];
    let mut edge_cover = vec![0usize; ge.len()];
    let mut order: Vec<usize> = (0..nf).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(f.degree(v)));

    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &Graph,
        g: &Graph,
        order: &[usize],
        pos: usize,
        assign: &mut [usize],
        vertex_cover: &mut [usize],
        edge_cover: &mut [usize],
        edge_index: &HashMap<(usize, usize), usize>,
        strong: bool,
    ) -> BigUint {
        let remaining = order.len() - pos;
        let missing_vertices = vertex_cover.iter().filter(|&&c| c == 0).count();
        if missing_vertices > remaining {
            return BigUint::zero();
        }
        if pos == order.len() {
            let covered = edge_cover.iter().all(|&c| c > 0);
            return if covered { BigUint::one() } else { BigUint::zero() };
        }
        let u = order[pos];
        let mut sum = BigUint::zero();
        'w: for w in 0..g.n() {
            let mut new_edges: Vec<usize> = Vec::new();
            for &v in &order[..pos] {
                let fv = assign[v];
                let f_edge = f.has_edge(u, v);
                let g_edge = fv != w && g.has_edge(w, fv);
                if strong {
                    if f_edge != g_edge {
                        continue 'w;
                    }
                } else if f_edge && !g_edge {
                    continue 'w;
                }
                if f_edge && g_edge {
                    let key = (w.min(fv), w.max(fv));
                    new_edges.push(edge_index[&key]);
                }
            }
            assign[u] = w;
            vertex_cover[w] += 1;
            for &e in &new_edges {
                edge_cover[e] += 1;
            }
            sum += rec(
                f, g, order, pos + 1, assign, vertex_cover, edge_cover, edge_index, strong,
            );
            for &e in &new_edges {
                edge_cover[e] -= 1;
            }
            vertex_cover[w] -= 1;
            assign[u] = usize::MAX;
        }
        sum
    }

    rec(
        f,
        g,
        &order,
        0,
        &mut assign,
        &mut vertex_cover,
        &mut edge_cover,
        &edge_index,
        strong,
    )
}

// ---------------------------------------------------------------------------
// hom <-> emb basis transform

/// The family of isomorphism types below `f` in the (vertices, then edges)
/// order: every `F'` with `|V(F')| < |V(f)|`, or equal vertices and no more
/// edges.
pub fn transform_family(f: &Graph) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=f.n() {
        for g in crate::enumerate::enumerate_graphs(n)? {
            if n < f.n() || g.edge_count() <= f.edge_count() {
                out.push(g);
            }
        }
    }
    Ok(out)
}

fn find_entry<'a>(values: &'a CountVector, target: &Graph) -> Result<&'a CountValue> {
    let tf = canonical_form(target)?;
    for (g, v) in &values.entries {
        if g.n() == target.n() && g.edge_count() == target.edge_count() && canonical_form(g)? == tf
        {
            return Ok(v);
        }
    }
    Err(HomError::IncompleteFamily(format!(
        "missing emb value for a graph with {} vertices and {} edges",
        target.n(),
        target.edge_count()
    )))
}

/// Recovers `hom(f, G)` from embedding counts over every type below `f`:
/// the weighted sum of `epi(f, F') * emb(F', G) / aut(F')`.
pub fn hom_from_emb(f: &Graph, emb_values: &CountVector) -> Result<CountValue> {
    if emb_values.kind != CountKind::Emb {
        return Err(HomError::Invalid("expected embedding counts".into()));
    }
    let mut acc = BigRational::zero();
    for fp in transform_family(f)? {
        let e = find_entry(emb_values, &fp)?;
        let ep = epi_count(f, &fp, false);
        if ep.is_zero() || e.is_zero() {
            continue;
        }
        let term = BigRational::new((ep * e).into(), aut(&fp).into());
        acc += term;
    }
    if !acc.is_integer() {
        return Err(HomError::Consistency(
            "transform produced a non-integral hom count".into(),
        ));
    }
    Ok(acc.to_integer().to_biguint().expect("non-negative"))
}

/// Inverts the transform: embedding counts from hom counts over the same
/// downward-closed family, by triangular substitution. Exact and integral.
pub fn emb_from_hom(hom_values: &CountVector) -> Result<CountVector> {
    if hom_values.kind != CountKind::Hom {
        return Err(HomError::Invalid("expected hom counts".into()));
    }
    let mut items: Vec<(Graph, CountValue)> = hom_values.entries.clone();
    items.sort_by_key(|(g, _)| (g.n(), g.edge_count()));
    // completeness: each member needs every type below it in the family
    for (g, _) in &items {
        for fp in transform_family(g)? {
            find_entry(hom_values, &fp)?;
        }
    }
    let mut emb_sofar: Vec<(Graph, BigRational)> = Vec::new();
    for (g, homv) in &items {
        let mut rhs = BigRational::from_integer(homv.clone().into());
        for (fp, embv) in &emb_sofar {
            let ep = epi_count(g, fp, false);
            if ep.is_zero() {
                continue;
            }
            rhs -= BigRational::new(ep.into(), aut(fp).into()) * embv;
        }
        // diagonal coefficient epi(g,g)/aut(g) = 1
        emb_sofar.push((g.clone(), rhs));
    }
    let mut entries = Vec::with_capacity(emb_sofar.len());
    for (g, v) in emb_sofar {
        if !v.is_integer() {
            return Err(HomError::Consistency(
                "inverse transform produced a non-integral emb count".into(),
            ));
        }
        let int = v.to_integer();
        let val = int.to_biguint().ok_or_else(|| {
            HomError::Consistency("inverse transform produced a negative emb count".into())
        })?;
        entries.push((g, val));
    }
    // restore the caller's family order
    let mut out = Vec::with_capacity(entries.len());
    for (g, _) in &hom_values.entries {
        let cf = canonical_form(g)?;
        let found = entries
            .iter()
            .find(|(h, _)| canonical_form(h).map(|f| f == cf).unwrap_or(false))
            .expect("entry preserved");
        out.push((g.clone(), found.1.clone()));
    }
    Ok(CountVector {
        kind: CountKind::Emb,
        orientation: hom_values.orientation,
        entries: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn n(v: &BigUint) -> u64 {
        v.to_u64().unwrap()
    }

    #[test]
    fn hom_basics() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(n(&count(CountKind::Hom, &Graph::k1(), &c5)), 5);
        assert_eq!(n(&count(CountKind::Hom, &Graph::path(2), &c5)), 10);
        // hom(P_3, C_5) = sum deg^2 = 20
        assert_eq!(n(&count(CountKind::Hom, &Graph::path(3), &c5)), 20);
        // hom(K_3, K_3) = 6
        assert_eq!(n(&count(CountKind::Hom, &Graph::clique(3), &Graph::clique(3))), 6);
        // disconnected pattern: product rule
        let two_k1 = Graph::k1().replicate(2).unwrap();
        assert_eq!(n(&count(CountKind::Hom, &two_k1, &c5)), 25);
    }

    #[test]
    fn emb_matrix_entries() {
        assert_eq!(n(&count(CountKind::Emb, &Graph::path(3), &Graph::clique(3))), 6);
        assert_eq!(n(&count(CountKind::Emb, &Graph::path(2), &Graph::path(3))), 4);
        assert_eq!(n(&count(CountKind::Emb, &Graph::path(3), &Graph::path(2))), 0);
        assert_eq!(n(&count(CountKind::Emb, &Graph::path(2), &Graph::path(2))), 2);
        assert_eq!(n(&count(CountKind::Emb, &Graph::k1(), &Graph::path(3))), 3);
    }

    #[test]
    fn aut_values() {
        assert_eq!(n(&aut(&Graph::clique(3))), 6);
        assert_eq!(n(&aut(&Graph::path(3))), 2);
        assert_eq!(n(&aut(&Graph::cycle(5).unwrap())), 10);
        assert_eq!(n(&aut(&Graph::star(4))), 6);
    }

    #[test]
    fn strong_and_epi() {
        assert_eq!(n(&count(CountKind::StrongEmb, &Graph::path(3), &Graph::clique(3))), 0);
        assert_eq!(n(&count(CountKind::Epi, &Graph::path(3), &Graph::path(2))), 2);
        // epi(P_2, P_2) = 2, every bijective hom covers the edge
        assert_eq!(n(&count(CountKind::Epi, &Graph::path(2), &Graph::path(2))), 2);
        // strict epi examples: epi(K_3, K_3) = 6
        assert_eq!(n(&count(CountKind::Epi, &Graph::clique(3), &Graph::clique(3))), 6);
    }

    #[test]
    fn component_sum_rule() {
        // emb(P_2, P_3 + K_1) = emb(P_2, P_3) = 4
        let g = Graph::path(3).disjoint_union(&Graph::k1()).unwrap();
        assert_eq!(n(&count(CountKind::Emb, &Graph::path(2), &g)), 4);
        // hom into a big replicated union
        let h = Graph::cycle(5).unwrap().replicate(100).unwrap();
        assert_eq!(n(&count(CountKind::Hom, &Graph::path(2), &h)), 1000);
    }

    #[test]
    fn right_oriented_vector() {
        let family = [Graph::path(2), Graph::clique(3)];
        let v = count_vector(CountKind::Hom, &family, &Graph::clique(3), Orientation::Right);
        let values: Vec<u64> = v.entries.iter().map(|(_, c)| n(c)).collect();
        // the triangle has no homomorphism into an edge, six into itself
        assert_eq!(values, vec![0, 6]);
    }

    #[test]
    fn transform_recovers_hom() {
        let f = Graph::path(2);
        let g = Graph::clique(3);
        let family = transform_family(&f).unwrap();
        let embs = count_vector(CountKind::Emb, &family, &g, Orientation::Left);
        let hom_via = hom_from_emb(&f, &embs).unwrap();
        assert_eq!(hom_via, count(CountKind::Hom, &f, &g));
    }

    #[test]
    fn transform_inverse_roundtrip() {
        // family: all graphs up to 3 vertices
        let mut family = Vec::new();
        for k in 1..=3 {
            family.extend(crate::enumerate::enumerate_graphs(k).unwrap());
        }
        let g = Graph::cycle(4).unwrap();
        let homs = count_vector(CountKind::Hom, &family, &g, Orientation::Left);
        let embs = emb_from_hom(&homs).unwrap();
        for (f, v) in &embs.entries {
            assert_eq!(*v, count(CountKind::Emb, f, &g), "emb mismatch for {f:?}");
        }
    }

    #[test]
    fn star_counts_multiply_not_enumerate() {
        // hom(S_21, C_5) = sum over centre placements of deg^20 = 5 * 2^20
        let s = Graph::star(21);
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(
            count(CountKind::Hom, &s, &c5),
            BigUint::from(5u32) * BigUint::from(2u32).pow(20)
        );
    }
}
