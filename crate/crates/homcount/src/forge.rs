//! Constructive counterexample generators: pairs (G, H) that agree on the
//! prescribed embedding counts yet split on the target property, plus the
//! two-adaptive cycle triple.
//!
//! Construction works on bundles (component multisets with big-integer
//! multiplicities) so multiplicities never force a dense adjacency matrix
//! until the final materialization. Every witness re-verifies itself by
//! direct counting before it is returned.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::canon::is_isomorphic;
use crate::color::is_k_colorable;
use crate::count::{aut, count, CountKind};
use crate::enumerate::{connected_index_of, enumerate_all_upto, enumerate_connected_upto};
use crate::error::{HomError, Result};
use crate::expressive::ExpressiveLedger;
use crate::graph::Graph;
use crate::planar::is_planar;

/// The property on which a witness pair must split: G satisfies it, H does
/// not. For `IsolatedVertex`, G has one and H has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForgeProperty {
    IsolatedVertex,
    Planarity,
    Colorability(usize),
}

impl ForgeProperty {
    fn holds(&self, g: &Graph) -> bool {
        match self {
            ForgeProperty::IsolatedVertex => g.isolated_count() > 0,
            ForgeProperty::Planarity => is_planar(g),
            ForgeProperty::Colorability(l) => is_k_colorable(g, *l),
        }
    }

    fn name(&self) -> String {
        match self {
            ForgeProperty::IsolatedVertex => "isolated-vertex".into(),
            ForgeProperty::Planarity => "planar".into(),
            ForgeProperty::Colorability(l) => format!("{l}-colorable"),
        }
    }
}

/// A verified counterexample pair.
#[derive(Debug, Clone)]
pub struct Witness {
    pub g: Graph,
    pub h: Graph,
    pub family: Vec<Graph>,
    pub kind: CountKind,
    pub property: ForgeProperty,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub property: String,
    pub kind: String,
    pub family: Vec<String>,
    pub counts_g: Vec<String>,
    pub counts_h: Vec<String>,
    pub counts_agree: bool,
    pub property_g: bool,
    pub property_h: bool,
    pub g_vertices: usize,
    pub h_vertices: usize,
}

impl Witness {
    fn build_verified(
        g: Graph,
        h: Graph,
        family: Vec<Graph>,
        kind: CountKind,
        property: ForgeProperty,
    ) -> Result<Witness> {
        let w = Witness {
            g,
            h,
            family,
            kind,
            property,
        };
        let report = w.verify()?;
        if !report.counts_agree {
            return Err(HomError::Consistency(
                "forged witness fails count agreement".into(),
            ));
        }
        if !report.property_g || report.property_h {
            return Err(HomError::Consistency(
                "forged witness fails the property split".into(),
            ));
        }
        Ok(w)
    }

    /// Recomputes all counts and property checks from scratch.
    pub fn verify(&self) -> Result<WitnessReport> {
        let mut counts_g = Vec::new();
        let mut counts_h = Vec::new();
        let mut agree = true;
        for f in &self.family {
            let cg = count(self.kind, f, &self.g);
            let ch = count(self.kind, f, &self.h);
            agree &= cg == ch;
            counts_g.push(cg.to_string());
            counts_h.push(ch.to_string());
        }
        Ok(WitnessReport {
            property: self.property.name(),
            kind: self.kind.as_str().into(),
            family: self.family.iter().map(crate::graph6::encode).collect(),
            counts_g,
            counts_h,
            counts_agree: agree,
            property_g: self.property.holds(&self.g),
            property_h: self.property.holds(&self.h),
            g_vertices: self.g.n(),
            h_vertices: self.h.n(),
        })
    }
}

// ---------------------------------------------------------------------------
// bundles

type Bundle = Vec<(Graph, BigUint)>;

fn bundle_add(bundle: &mut Bundle, g: &Graph, mult: BigUint) {
    if mult.is_zero() {
        return;
    }
    if let Some(entry) = bundle.iter_mut().find(|(h, _)| h == g) {
        entry.1 += mult;
    } else {
        bundle.push((g.clone(), mult));
    }
}

fn bundle_union(a: &Bundle, b: &Bundle) -> Bundle {
    let mut out = a.clone();
    for (g, m) in b {
        bundle_add(&mut out, g, m.clone());
    }
    out
}

fn bundle_scale(bundle: &Bundle, c: &BigUint) -> Bundle {
    if c.is_zero() {
        return Vec::new();
    }
    bundle.iter().map(|(g, m)| (g.clone(), m * c)).collect()
}

fn bundle_vertices(bundle: &Bundle) -> BigUint {
    bundle
        .iter()
        .map(|(g, m)| BigUint::from(g.n()) * m)
        .sum()
}

/// Embedding count of a connected pattern into a bundle.
fn bundle_emb(f: &Graph, bundle: &Bundle) -> BigUint {
    bundle
        .iter()
        .map(|(g, m)| count(CountKind::Emb, f, g) * m)
        .sum()
}

fn materialize(bundle: &Bundle) -> Result<Graph> {
    let mut parts = Vec::with_capacity(bundle.len());
    for (g, m) in bundle {
        let m = m.to_usize().ok_or_else(|| {
            HomError::Budget("witness multiplicity exceeds materialization range".into())
        })?;
        parts.push((g.clone(), m));
    }
    Graph::union_of(&parts)
}

// ---------------------------------------------------------------------------
// family handling

/// All connected types with at most `max |V(F)|, F in K` vertices, one per
/// isomorphism type, enumeration order.
pub fn connected_reduction(k: &[Graph]) -> Result<Vec<Graph>> {
    if k.is_empty() {
        return Err(HomError::Invalid("empty family".into()));
    }
    let n = k.iter().map(|g| g.n()).max().unwrap();
    enumerate_connected_upto(n)
}

/// Sorted, deduplicated enumeration indices of a connected family.
fn family_indices(k: &[Graph]) -> Result<Vec<usize>> {
    let mut idx = Vec::new();
    for g in k {
        if !g.is_connected() {
            return Err(HomError::Invalid(
                "forge families consist of connected graphs; reduce disconnected inputs first"
                    .into(),
            ));
        }
        idx.push(connected_index_of(g)?.0);
    }
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

// ---------------------------------------------------------------------------
// isolated-vertex forge

/// A pair agreeing on `emb(F, -)` for every `F` in the connected family `k`
/// where G has an isolated vertex and H has none.
pub fn forge_isolated_vertex(k: &[Graph], ledger: &mut ExpressiveLedger) -> Result<Witness> {
    let indices = family_indices(k)?;
    let (gb, hb) = isolated_rec(&indices, ledger)?;
    let family: Vec<Graph> = {
        let mut f = Vec::new();
        for &i in &indices {
            f.push(ledger.graph(i)?.clone());
        }
        f
    };
    Witness::build_verified(
        materialize(&gb)?,
        materialize(&hb)?,
        family,
        CountKind::Emb,
        ForgeProperty::IsolatedVertex,
    )
}

fn coefficient_split(
    ledger: &mut ExpressiveLedger,
    coeffs: &[(usize, BigInt)],
) -> Result<(Bundle, Bundle)> {
    let mut pos: Bundle = Vec::new();
    let mut neg: Bundle = Vec::new();
    for (j, p) in coeffs {
        let g = ledger.graph(*j)?.clone();
        if p.is_positive() {
            bundle_add(&mut pos, &g, p.to_biguint().unwrap());
        } else if p.is_negative() {
            bundle_add(&mut neg, &g, (-p).to_biguint().unwrap());
        }
    }
    Ok((pos, neg))
}

fn isolated_rec(indices: &[usize], ledger: &mut ExpressiveLedger) -> Result<(Bundle, Bundle)> {
    if indices.len() == 1 {
        let one = BigUint::one();
        return Ok(if indices[0] == 1 {
            // family {K_1}: two isolated vertices versus one edge
            (
                vec![(Graph::k1(), BigUint::from(2u32))],
                vec![(Graph::path(2), one)],
            )
        } else {
            (
                vec![(Graph::k1(), one.clone()), (Graph::path(2), one.clone())],
                vec![(Graph::path(2), one)],
            )
        });
    }
    let non_expressive: Option<usize> = {
        let mut found = None;
        for &i in indices {
            if !ledger.is_expressive(i)? {
                found = Some(i);
                break;
            }
        }
        found
    };
    match non_expressive {
        None => {
            // every family member expressive: balance against the next
            // expressive graph past them all
            let max = *indices.last().unwrap();
            let s = ledger.next_expressive_after(max)?;
            let coeffs = ledger.case1_coefficients(s)?;
            let (g0, h0) = coefficient_split(ledger, &coeffs)?;
            let vg = bundle_vertices(&g0);
            let vh = bundle_vertices(&h0);
            if vg == vh {
                return Err(HomError::Invariant(
                    "vertex counts balanced although the vertex-count row is nonzero".into(),
                ));
            }
            let (mut small, large, d) = if vg < vh {
                (g0, h0, &vh - &vg)
            } else {
                (h0, g0, &vg - &vh)
            };
            bundle_add(&mut small, &Graph::k1(), d);
            Ok((small, large))
        }
        Some(s) => {
            // strip the least non-expressive member, recurse, then repair
            // its count with the dependency combination
            let rest: Vec<usize> = indices.iter().copied().filter(|&i| i != s).collect();
            let (g0, h0) = isolated_rec(&rest, ledger)?;
            let fs = ledger.graph(s)?.clone();
            let g = bundle_emb(&fs, &g0);
            let h = bundle_emb(&fs, &h0);
            if g == h {
                return Ok((g0, h0));
            }
            let mut coeffs = ledger.dependency_coefficients(s)?;
            let ps_negative = coeffs
                .iter()
                .find(|(j, _)| *j == s)
                .map(|(_, p)| p.is_negative())
                .unwrap_or(false);
            if ps_negative {
                for (_, p) in coeffs.iter_mut() {
                    *p = -p.clone();
                }
            }
            let (g1, h1) = coefficient_split(ledger, &coeffs)?;
            let c = bundle_emb(&fs, &g1);
            debug_assert!(bundle_emb(&fs, &h1).is_zero());
            if c.is_zero() {
                return Err(HomError::Invariant(
                    "dependency combination lost its pivot copies".into(),
                ));
            }
            let (gb, hb) = if g > h {
                let diff = &g - &h;
                (
                    bundle_union(&bundle_scale(&g0, &c), &bundle_scale(&h1, &diff)),
                    bundle_union(&bundle_scale(&h0, &c), &bundle_scale(&g1, &diff)),
                )
            } else {
                let diff = &h - &g;
                (
                    bundle_union(&bundle_scale(&g0, &c), &bundle_scale(&g1, &diff)),
                    bundle_union(&bundle_scale(&h0, &c), &bundle_scale(&h1, &diff)),
                )
            };
            Ok((gb, hb))
        }
    }
}

// ---------------------------------------------------------------------------
// planarity and colorability forges

fn lex_key(g: &Graph) -> Result<(usize, usize, crate::canon::CanonicalForm)> {
    Ok((g.n(), g.edge_count(), crate::canon::canonical_form(g)?))
}

fn dedup_sorted_family(k: &[Graph]) -> Result<Vec<Graph>> {
    if k.is_empty() {
        return Err(HomError::Invalid("empty family".into()));
    }
    let mut keyed = Vec::new();
    for g in k {
        if !g.is_connected() {
            return Err(HomError::Invalid(
                "forge families consist of connected graphs; reduce disconnected inputs first"
                    .into(),
            ));
        }
        keyed.push((lex_key(g)?, g.clone()));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

/// Subdivided clique with no room for any member of the family: branch
/// vertices sit too far apart for patterns with `max_pattern` vertices.
fn stretched_clique(k: usize, max_pattern: usize) -> Result<Graph> {
    Graph::clique(k).subdivide_edges(1 + max_pattern)
}

type BaseSingle<'a> = &'a dyn Fn(&Graph) -> Result<(Bundle, Bundle)>;
type BaseNone<'a> = &'a dyn Fn(&[Graph]) -> Result<(Bundle, Bundle)>;

fn split_rec(
    graphs: &[Graph],
    satisfies: &dyn Fn(&Graph) -> bool,
    base_single: BaseSingle,
    base_none: BaseNone,
) -> Result<(Bundle, Bundle)> {
    if graphs.len() == 1 {
        return base_single(&graphs[0]);
    }
    if !graphs.iter().any(satisfies) {
        return base_none(graphs);
    }
    // peel the least satisfying member; nothing else in the family embeds
    // into it, so its count can be repaired with copies of itself
    let f = graphs
        .iter()
        .find(|g| satisfies(g))
        .expect("some member satisfies the property")
        .clone();
    let rest: Vec<Graph> = graphs.iter().filter(|g| *g != &f).cloned().collect();
    let (g0, h0) = split_rec(&rest, satisfies, base_single, base_none)?;
    let g = bundle_emb(&f, &g0);
    let h = bundle_emb(&f, &h0);
    if g == h {
        return Ok((g0, h0));
    }
    let a = aut(&f);
    Ok(if g < h {
        let diff = &h - &g;
        let mut gb = bundle_scale(&g0, &a);
        bundle_add(&mut gb, &f, diff);
        (gb, bundle_scale(&h0, &a))
    } else {
        let diff = &g - &h;
        let mut hb = bundle_scale(&h0, &a);
        bundle_add(&mut hb, &f, diff);
        (bundle_scale(&g0, &a), hb)
    })
}

/// A pair agreeing on `emb(F, -)` over the connected family where G is
/// planar and H is not.
pub fn forge_planarity(k: &[Graph]) -> Result<Witness> {
    let graphs = dedup_sorted_family(k)?;
    let base_single = |f: &Graph| -> Result<(Bundle, Bundle)> {
        let kk = f.n() + 4;
        if is_planar(f) {
            let clique = Graph::clique(kk);
            let m = count(CountKind::Emb, f, &clique);
            Ok((vec![(f.clone(), m)], vec![(clique, aut(f))]))
        } else {
            let h = stretched_clique(kk, f.n())?;
            Ok((
                vec![(Graph::k1(), BigUint::one())],
                vec![(h, BigUint::one())],
            ))
        }
    };
    let base_none = |graphs: &[Graph]| -> Result<(Bundle, Bundle)> {
        let maxv = graphs.iter().map(|g| g.n()).max().unwrap();
        let h = stretched_clique(maxv + 4, maxv)?;
        Ok((
            vec![(Graph::k1(), BigUint::one())],
            vec![(h, BigUint::one())],
        ))
    };
    let (gb, hb) = split_rec(&graphs, &is_planar, &base_single, &base_none)?;
    Witness::build_verified(
        materialize(&gb)?,
        materialize(&hb)?,
        graphs,
        CountKind::Emb,
        ForgeProperty::Planarity,
    )
}

/// A pair agreeing on `emb(F, -)` over the connected family where G is
/// l-colorable and H is not. The non-colorable branch goes through the
/// high-chromatic provider.
pub fn forge_colorability(k: &[Graph], l: usize, provider_budget: usize) -> Result<Witness> {
    if l < 2 {
        return Err(HomError::Invalid("colorability forge needs l >= 2".into()));
    }
    let graphs = dedup_sorted_family(k)?;
    let satisfies = move |g: &Graph| is_k_colorable(g, l);
    let base_single = |f: &Graph| -> Result<(Bundle, Bundle)> {
        if is_k_colorable(f, l) {
            let kk = l + f.n();
            let clique = Graph::clique(kk);
            let m = count(CountKind::Emb, f, &clique);
            Ok((vec![(f.clone(), m)], vec![(clique, aut(f))]))
        } else {
            let m = f
                .odd_girth()
                .expect("a graph that is not 2-colorable has an odd cycle");
            let h = high_chromatic_provider(m, l, provider_budget)?;
            Ok((
                vec![(Graph::k1(), BigUint::one())],
                vec![(h, BigUint::one())],
            ))
        }
    };
    let base_none = |graphs: &[Graph]| -> Result<(Bundle, Bundle)> {
        let m = graphs
            .iter()
            .map(|g| g.odd_girth().expect("non-colorable members have odd cycles"))
            .max()
            .unwrap();
        let h = high_chromatic_provider(m, l, provider_budget)?;
        Ok((
            vec![(Graph::k1(), BigUint::one())],
            vec![(h, BigUint::one())],
        ))
    };
    let (gb, hb) = split_rec(&graphs, &satisfies, &base_single, &base_none)?;
    Witness::build_verified(
        materialize(&gb)?,
        materialize(&hb)?,
        graphs,
        CountKind::Emb,
        ForgeProperty::Colorability(l),
    )
}

// ---------------------------------------------------------------------------
// high-chromatic provider

/// Searches a deterministic pool (odd cycles, Mycielskian towers,
/// generalized Mycielskians of odd cycles) for a graph with odd girth
/// strictly above `min_odd_girth` and chromatic number strictly above
/// `min_chromatic`. Both parameters are verified exactly before returning;
/// an exhausted pool is an honest budget failure.
pub fn high_chromatic_provider(
    min_odd_girth: usize,
    min_chromatic: usize,
    max_vertices: usize,
) -> Result<Graph> {
    let mut pool: Vec<Graph> = Vec::new();
    let mut push = |g: Graph| {
        if g.n() <= max_vertices {
            pool.push(g);
        }
    };
    for m in (3..=max_vertices.min(51)).step_by(2) {
        push(Graph::cycle(m)?);
    }
    // Mycielskian towers over K_2 and small odd cycles
    let mut seeds: Vec<Graph> = vec![Graph::path(2)];
    for m in (5..=13).step_by(2) {
        if m <= max_vertices {
            seeds.push(Graph::cycle(m)?);
        }
    }
    for seed in &seeds {
        let mut g = seed.clone();
        loop {
            match g.mycielskian() {
                Ok(next) if next.n() <= max_vertices => {
                    push(next.clone());
                    g = next;
                }
                _ => break,
            }
        }
    }
    // generalized Mycielskians keep longer odd girth
    for levels in 2..=4 {
        for m in (5..=31).step_by(2) {
            if let Ok(c) = Graph::cycle(m) {
                if let Ok(g) = c.generalized_mycielskian(levels) {
                    if g.n() <= max_vertices {
                        if let Ok(h) = g.generalized_mycielskian(levels) {
                            push(h);
                        }
                        push(g);
                    }
                }
            }
        }
    }
    pool.sort_by_key(|g| (g.n(), g.edge_count()));
    for g in pool {
        let girth_ok = match g.odd_girth() {
            Some(og) => og > min_odd_girth,
            None => true, // bipartite candidates never pass the chromatic test anyway
        };
        if !girth_ok {
            continue;
        }
        if !is_k_colorable(&g, min_chromatic) {
            return Ok(g);
        }
    }
    Err(HomError::Budget(format!(
        "no graph with odd girth > {min_odd_girth} and chromatic number > {min_chromatic} within {max_vertices} vertices"
    )))
}

// ---------------------------------------------------------------------------
// two-adaptive triple

/// Three pairwise non-isomorphic graphs with identical hom counts for every
/// pattern with at most `pattern_cap` vertices: one long cycle against a
/// bipartite cycle union and an odd cycle union.
#[derive(Debug, Clone)]
pub struct TwoAdaptiveTriple {
    pub g: Graph,
    pub h1: Graph,
    pub h2: Graph,
    pub ell: usize,
    pub pattern_cap: usize,
}

pub fn forge_two_adaptive_triple(pattern_cap: usize) -> Result<TwoAdaptiveTriple> {
    if pattern_cap == 0 {
        return Err(HomError::Invalid("pattern cap must be >= 1".into()));
    }
    if pattern_cap > crate::enumerate::ENUMERATE_ALL_MAX {
        return Err(HomError::EnumBudget(format!(
            "triple verification enumerates patterns up to {} vertices",
            crate::enumerate::ENUMERATE_ALL_MAX
        )));
    }
    let mut ell = 1usize;
    while 4 * ell + 2 <= pattern_cap {
        ell += 1;
    }
    let g = Graph::cycle(12 * ell + 6)?;
    let h1 = Graph::cycle(4 * ell + 2)?.replicate(3)?;
    let h2 = Graph::cycle(6 * ell + 3)?.replicate(2)?;
    // exhaustive verification over every pattern within the cap
    for f in &enumerate_all_upto(pattern_cap)? {
        let a = count(CountKind::Hom, f, &g);
        let b = count(CountKind::Hom, f, &h1);
        let c = count(CountKind::Hom, f, &h2);
        if a != b || a != c {
            return Err(HomError::Consistency(format!(
                "triple disagrees on a pattern with {} vertices",
                f.n()
            )));
        }
    }
    if is_isomorphic(&g, &h1)? || is_isomorphic(&g, &h2)? || is_isomorphic(&h1, &h2)? {
        return Err(HomError::Consistency(
            "triple members must be non-isomorphic".into(),
        ));
    }
    Ok(TwoAdaptiveTriple {
        g,
        h1,
        h2,
        ell,
        pattern_cap,
    })
}
