//! Deterministic isomorphism-free enumeration of graphs and of connected
//! graphs in a fixed order: vertex count, then edge count, then ascending
//! canonical bitstring.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{HomError, Result};
use crate::graph::Graph;

/// All-graph enumeration stops at 8 vertices.
pub const ENUMERATE_ALL_MAX: usize = 8;
/// Connected enumeration (the indexed family) stops at 7 vertices.
pub const CONNECTED_CAP: usize = 7;

/// 1-based position in the fixed connected-graph enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnumerationIndex(pub usize);

static ALL_CACHE: LazyLock<Mutex<HashMap<usize, Arc<Vec<Graph>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// One representative per isomorphism type on exactly `n` vertices,
/// ordered by edge count then canonical form.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_graphs_shared(n)?.as_ref().clone())
}

fn enumerate_graphs_shared(n: usize) -> Result<Arc<Vec<Graph>>> {
    if n == 0 {
        return Err(HomError::Invalid("enumeration needs n >= 1".into()));
    }
    if n > ENUMERATE_ALL_MAX {
        return Err(HomError::EnumBudget(format!(
            "all-graph enumeration capped at {ENUMERATE_ALL_MAX} vertices, asked for {n}"
        )));
    }
    if let Some(cached) = ALL_CACHE.lock().unwrap().get(&n) {
        return Ok(cached.clone());
    }
    let graphs = if n <= 7 {
        generate_by_masks(n)
    } else {
        generate_by_augmentation(n)?
    };
    let arc = Arc::new(graphs);
    ALL_CACHE.lock().unwrap().insert(n, arc.clone());
    Ok(arc)
}

fn mask_graph(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("mask graph")
}

fn sort_and_unpack(mut forms: Vec<(usize, CanonicalForm)>) -> Vec<Graph> {
    forms.sort();
    forms.dedup();
    forms.into_iter().map(|(_, f)| f.unpack()).collect()
}

fn generate_by_masks(n: usize) -> Vec<Graph> {
    let pairs = n * (n - 1) / 2;
    let total: u64 = 1 << pairs;
    let forms: Vec<(usize, CanonicalForm)> = if pairs >= 15 {
        (0..total)
            .into_par_iter()
            .fold(
                std::collections::HashSet::new,
                |mut set, mask| {
                    let g = mask_graph(n, mask as u32);
                    let form = canonical_form(&g).expect("within canon budget");
                    set.insert((g.edge_count(), form));
                    set
                },
            )
            .reduce(std::collections::HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
            .into_iter()
            .collect()
    } else {
        let mut set = std::collections::HashSet::new();
        for mask in 0..total {
            let g = mask_graph(n, mask as u32);
            let form = canonical_form(&g).expect("within canon budget");
            set.insert((g.edge_count(), form));
        }
        set.into_iter().collect()
    };
    sort_and_unpack(forms)
}

/// Every n-vertex graph arises by attaching a new vertex to some
/// (n-1)-vertex graph, so augmenting all of them and deduplicating
/// canonically is complete.
fn generate_by_augmentation(n: usize) -> Result<Vec<Graph>> {
    let smaller = enumerate_graphs_shared(n - 1)?;
    let forms: Vec<(usize, CanonicalForm)> = smaller
        .par_iter()
        .fold(
            std::collections::HashSet::new,
            |mut set, base| {
                let bn = base.n();
                for subset in 0u32..1 << bn {
                    let mut edges: Vec<(usize, usize)> = base.edges().collect();
                    for v in 0..bn {
                        if subset >> v & 1 == 1 {
                            edges.push((v, bn));
                        }
                    }
                    let g = Graph::from_edges(n, &edges).expect("augmented graph");
                    let form = canonical_form(&g).expect("within canon budget");
                    set.insert((g.edge_count(), form));
                }
                set
            },
        )
        .reduce(std::collections::HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect();
    Ok(sort_and_unpack(forms))
}

/// All isomorphism types with 1..=n vertices, in enumeration order.
pub fn enumerate_all_upto(n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_graphs(k)?);
    }
    Ok(out)
}

static CONNECTED_CACHE: LazyLock<Mutex<HashMap<usize, Arc<Vec<Graph>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The fixed connected enumeration `F_1, F_2, ...` truncated at `cap`
/// vertices. `F_1 = K_1`, `F_2 = P_2`, `F_3 = P_3`, `F_4 = K_3`.
pub fn enumerate_connected_upto(cap: usize) -> Result<Vec<Graph>> {
    if cap == 0 {
        return Err(HomError::Invalid("connected enumeration needs cap >= 1".into()));
    }
    if cap > CONNECTED_CAP {
        return Err(HomError::EnumBudget(format!(
            "connected enumeration capped at {CONNECTED_CAP} vertices, asked for {cap}"
        )));
    }
    if let Some(cached) = CONNECTED_CACHE.lock().unwrap().get(&cap) {
        return Ok(cached.as_ref().clone());
    }
    let mut out = Vec::new();
    for k in 1..=cap {
        out.extend(
            enumerate_graphs(k)?
                .into_iter()
                .filter(|g| g.is_connected()),
        );
    }
    CONNECTED_CACHE
        .lock()
        .unwrap()
        .insert(cap, Arc::new(out.clone()));
    Ok(out)
}

/// First `len` graphs of the connected enumeration. Only enumerates vertex
/// counts until the prefix is filled.
pub fn enumerate_connected_prefix(len: usize) -> Result<Vec<Graph>> {
    if len == 0 {
        return Err(HomError::Invalid("prefix length must be >= 1".into()));
    }
    let mut out = Vec::new();
    for k in 1..=CONNECTED_CAP {
        out.extend(
            enumerate_graphs(k)?
                .into_iter()
                .filter(|g| g.is_connected()),
        );
        if out.len() >= len {
            out.truncate(len);
            return Ok(out);
        }
    }
    Err(HomError::EnumBudget(format!(
        "prefix of length {len} exceeds the {CONNECTED_CAP}-vertex enumeration budget"
    )))
}

/// The connected graph at 1-based `index`.
pub fn connected_graph_at(index: EnumerationIndex) -> Result<Graph> {
    let list = enumerate_connected_prefix(index.0)?;
    Ok(list.last().expect("prefix nonempty").clone())
}

/// Inverse of the connected enumeration on its range.
pub fn connected_index_of(f: &Graph) -> Result<EnumerationIndex> {
    if !f.is_connected() {
        return Err(HomError::Invalid(
            "enumeration index is defined for connected graphs only".into(),
        ));
    }
    if f.n() > CONNECTED_CAP {
        return Err(HomError::EnumBudget(format!(
            "connected enumeration capped at {CONNECTED_CAP} vertices, asked for {}",
            f.n()
        )));
    }
    let form = canonical_form(f)?;
    let list = enumerate_connected_upto(f.n())?;
    for (pos, g) in list.iter().enumerate() {
        if g.n() == f.n() && canonical_form(g)? == form {
            return Ok(EnumerationIndex(pos + 1));
        }
    }
    Err(HomError::Consistency(
        "connected graph missing from its own enumeration".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    #[test]
    fn known_small_counts() {
        assert_eq!(enumerate_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(2).unwrap().len(), 2);
        assert_eq!(enumerate_graphs(3).unwrap().len(), 4);
        assert_eq!(enumerate_graphs(4).unwrap().len(), 11);
        assert_eq!(enumerate_graphs(5).unwrap().len(), 34);
    }

    #[test]
    fn six_vertex_count() {
        assert_eq!(enumerate_graphs(6).unwrap().len(), 156);
    }

    #[test]
    fn connected_prefix_forced() {
        let prefix = enumerate_connected_prefix(4).unwrap();
        assert!(is_isomorphic(&prefix[0], &Graph::k1()).unwrap());
        assert!(is_isomorphic(&prefix[1], &Graph::path(2)).unwrap());
        assert!(is_isomorphic(&prefix[2], &Graph::path(3)).unwrap());
        assert!(is_isomorphic(&prefix[3], &Graph::clique(3)).unwrap());
    }

    #[test]
    fn connected_counts() {
        let upto5 = enumerate_connected_upto(5).unwrap();
        let on5 = upto5.iter().filter(|g| g.n() == 5).count();
        assert_eq!(on5, 21);
    }

    #[test]
    fn index_roundtrip() {
        assert_eq!(connected_index_of(&Graph::k1()).unwrap(), EnumerationIndex(1));
        assert_eq!(connected_index_of(&Graph::clique(3)).unwrap(), EnumerationIndex(4));
        let list = enumerate_connected_upto(5).unwrap();
        for (pos, g) in list.iter().enumerate() {
            assert_eq!(connected_index_of(g).unwrap(), EnumerationIndex(pos + 1));
        }
    }

    #[test]
    fn budget_errors() {
        assert!(matches!(
            enumerate_graphs(9),
            Err(HomError::EnumBudget(_))
        ));
        assert!(matches!(
            enumerate_connected_upto(8),
            Err(HomError::EnumBudget(_))
        ));
        assert!(connected_index_of(&Graph::k1().replicate(2).unwrap()).is_err());
    }

    #[test]
    fn order_respects_base_relation() {
        let list = enumerate_connected_upto(4).unwrap();
        for w in list.windows(2) {
            let below = w[0].n() < w[1].n()
                || (w[0].n() == w[1].n() && w[0].edge_count() <= w[1].edge_count());
            assert!(below, "enumeration order violates the base relation");
        }
    }
}
