//! Exact planarity testing. Components are reduced (degree-<=1 deletion,
//! degree-2 smoothing), pruned by edge-count bounds, split into biconnected
//! blocks, and finished with Demoucron's face-embedding procedure.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::color::contains_triangle;
use crate::graph::Graph;

pub fn is_planar(g: &Graph) -> bool {
    g.components()
        .iter()
        .all(|comp| component_planar(&g.induced(comp)))
}

fn component_planar(g: &Graph) -> bool {
    if g.n() <= 4 {
        return true;
    }
    let kernel = match reduce(g) {
        Some(k) => k,
        None => return true,
    };
    if kernel.n() <= 4 {
        return true;
    }
    let (n, m) = (kernel.n(), kernel.edge_count());
    if m > 3 * n - 6 {
        return false;
    }
    if !contains_triangle(&kernel) && m > 2 * n - 4 {
        return false;
    }
    blocks(&kernel).iter().all(demoucron)
}

/// Iteratively deletes degree-<=1 vertices and smooths degree-2 vertices.
/// Parallel edges arising from smoothing are dropped; none of this changes
/// planarity. Returns `None` when the component reduces away entirely.
fn reduce(g: &Graph) -> Option<Graph> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut alive: Vec<bool> = vec![true; n];
    loop {
        let mut changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            match adj[v].len() {
                0 | 1 => {
                    for w in std::mem::take(&mut adj[v]) {
                        adj[w].remove(&v);
                    }
                    alive[v] = false;
                    changed = true;
                }
                2 => {
                    let mut it = adj[v].iter();
                    let a = *it.next().unwrap();
                    let b = *it.next().unwrap();
                    adj[a].remove(&v);
                    adj[b].remove(&v);
                    adj[v].clear();
                    alive[v] = false;
                    // re-join; an already-present edge stays single
                    adj[a].insert(b);
                    adj[b].insert(a);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let keep: Vec<u32> = (0..n as u32).filter(|&v| alive[v as usize]).collect();
    if keep.is_empty() {
        return None;
    }
    let index_of = |v: usize| keep.binary_search(&(v as u32)).unwrap();
    let mut edges = Vec::new();
    for &v in &keep {
        for &w in &adj[v as usize] {
            if (w as u32) > v {
                edges.push((index_of(v as usize), index_of(w)));
            }
        }
    }
    Some(Graph::from_edges(keep.len(), &edges).expect("reduced kernel"))
}

/// Biconnected blocks with at least three vertices (bridges are planar).
fn blocks(g: &Graph) -> Vec<Graph> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    // iterative DFS to avoid recursion depth issues on long paths
    #[derive(Clone)]
    struct Frame {
        v: usize,
        parent: usize,
        nbrs: Vec<usize>,
        idx: usize,
    }
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack = vec![Frame {
            v: root,
            parent: usize::MAX,
            nbrs: g.neighbors(root).collect(),
            idx: 0,
        }];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(frame) = stack.last_mut() {
            let v = frame.v;
            if frame.idx < frame.nbrs.len() {
                let w = frame.nbrs[frame.idx];
                frame.idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push(Frame {
                        v: w,
                        parent: v,
                        nbrs: g.neighbors(w).collect(),
                        idx: 0,
                    });
                } else if w != frame.parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let parent = frame.parent;
                stack.pop();
                if parent != usize::MAX {
                    if let Some(top) = stack.last_mut() {
                        low[top.v] = low[top.v].min(low[v]);
                        if low[v] >= disc[top.v] {
                            // pop the block: everything above and including (top.v, v)
                            let mut block_edges = Vec::new();
                            while let Some((a, b)) = edge_stack.pop() {
                                block_edges.push((a, b));
                                if a == top.v && b == v {
                                    break;
                                }
                            }
                            if block_edges.len() >= 3 {
                                out.push(edges_to_graph(&block_edges));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn edges_to_graph(edges: &[(usize, usize)]) -> Graph {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let index_of = |v: usize| verts.binary_search(&v).unwrap();
    let mapped: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| (index_of(a), index_of(b)))
        .collect();
    Graph::from_edges(verts.len(), &mapped).expect("block graph")
}

enum Fragment {
    Chord(usize, usize),
    Piece { verts: Vec<usize>, contacts: Vec<usize> },
}

impl Fragment {
    fn contacts(&self) -> Vec<usize> {
        match self {
            Fragment::Chord(u, v) => vec![*u, *v],
            Fragment::Piece { contacts, .. } => contacts.clone(),
        }
    }
}

/// Demoucron-Malgrange-Pertuiset planarity for a biconnected block.
fn demoucron(g: &Graph) -> bool {
    let n = g.n();
    if n <= 4 {
        return true;
    }
    if g.edge_count() > 3 * n - 6 {
        return false;
    }
    let cycle = find_cycle(g);
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut in_emb = vec![false; n];
    for &v in &cycle {
        in_emb[v] = true;
    }
    let mut emb_edges: HashSet<(usize, usize)> = HashSet::new();
    let add_edge = |set: &mut HashSet<(usize, usize)>, a: usize, b: usize| {
        set.insert((a.min(b), a.max(b)));
    };
    for k in 0..cycle.len() {
        add_edge(&mut emb_edges, cycle[k], cycle[(k + 1) % cycle.len()]);
    }

    loop {
        let fragments = compute_fragments(g, &in_emb, &emb_edges);
        if fragments.is_empty() {
            return true;
        }
        // admissible faces per fragment
        let mut chosen: Option<(usize, usize)> = None; // (fragment idx, face idx)
        let mut fallback: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let contacts = frag.contacts();
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| contacts.iter().all(|c| face.contains(c)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if fallback.is_none() {
                        fallback = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = chosen.or(fallback).expect("nonempty fragments");
        let path = fragment_path(g, &fragments[fi], &in_emb);
        // embed the path
        for w in &path[1..path.len() - 1] {
            in_emb[*w] = true;
        }
        for k in 0..path.len() - 1 {
            add_edge(&mut emb_edges, path[k], path[k + 1]);
        }
        // split the face along the path
        let face = faces.swap_remove(face_idx);
        let p1 = face.iter().position(|&v| v == path[0]).unwrap();
        let p2 = face.iter().position(|&v| v == *path.last().unwrap()).unwrap();
        let len = face.len();
        let mut face1: Vec<usize> = path.clone();
        {
            let mut k = (p2 + 1) % len;
            while k != p1 {
                face1.push(face[k]);
                k = (k + 1) % len;
            }
        }
        let mut face2: Vec<usize> = path.iter().rev().copied().collect();
        {
            let mut k = (p1 + 1) % len;
            while k != p2 {
                face2.push(face[k]);
                k = (k + 1) % len;
            }
        }
        faces.push(face1);
        faces.push(face2);
    }
}

fn compute_fragments(
    g: &Graph,
    in_emb: &[bool],
    emb_edges: &HashSet<(usize, usize)>,
) -> Vec<Fragment> {
    let n = g.n();
    let mut fragments = Vec::new();
    for (u, v) in g.edges() {
        if in_emb[u] && in_emb[v] && !emb_edges.contains(&(u.min(v), u.max(v))) {
            fragments.push(Fragment::Chord(u, v));
        }
    }
    let mut seen = vec![false; n];
    for start in 0..n {
        if in_emb[start] || seen[start] {
            continue;
        }
        let mut verts = Vec::new();
        let mut contacts = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            verts.push(v);
            for w in g.neighbors(v) {
                if in_emb[w] {
                    contacts.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        fragments.push(Fragment::Piece {
            verts,
            contacts: contacts.into_iter().collect(),
        });
    }
    fragments
}

/// A path between two distinct contact vertices whose interior lies in the
/// fragment. Biconnectivity guarantees two contacts exist.
fn fragment_path(g: &Graph, frag: &Fragment, in_emb: &[bool]) -> Vec<usize> {
    match frag {
        Fragment::Chord(u, v) => vec![*u, *v],
        Fragment::Piece { verts, contacts } => {
            let c1 = contacts[0];
            let in_piece: HashSet<usize> = verts.iter().copied().collect();
            // BFS from c1 through piece vertices to another contact
            let mut prev: std::collections::HashMap<usize, usize> = Default::default();
            let mut queue = VecDeque::new();
            for w in g.neighbors(c1) {
                if in_piece.contains(&w) && !prev.contains_key(&w) {
                    prev.insert(w, c1);
                    queue.push_back(w);
                }
            }
            while let Some(v) = queue.pop_front() {
                for w in g.neighbors(v) {
                    if in_emb[w] && w != c1 && contacts.contains(&w) {
                        // found the far endpoint
                        let mut path = vec![w, v];
                        let mut cur = v;
                        while cur != c1 {
                            cur = prev[&cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return path;
                    }
                    if in_piece.contains(&w) && !prev.contains_key(&w) {
                        prev.insert(w, v);
                        queue.push_back(w);
                    }
                }
            }
            unreachable!("fragment in a biconnected block has two contacts")
        }
    }
}

fn find_cycle(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut stack = vec![(0usize, usize::MAX)];
    while let Some((v, par)) = stack.pop() {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        parent[v] = par;
        for w in g.neighbors(v) {
            if !visited[w] {
                stack.push((w, v));
            } else if w != par {
                // back edge: walk v up to w
                let mut path = vec![v];
                let mut cur = v;
                while cur != w {
                    cur = parent[cur];
                    if cur == usize::MAX {
                        break;
                    }
                    path.push(cur);
                }
                if *path.last().unwrap() == w {
                    return path;
                }
            }
        }
    }
    panic!("biconnected block with >= 3 vertices contains a cycle")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            ],
        )
        .unwrap()
    }

    #[test]
    fn small_graphs_planar() {
        assert!(is_planar(&Graph::clique(4)));
        assert!(is_planar(&Graph::cycle(12).unwrap()));
        assert!(is_planar(&Graph::star(9)));
        assert!(is_planar(&Graph::path(3).replicate(210).unwrap()));
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(!is_planar(&Graph::clique(5)));
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert!(!is_planar(&k33));
        assert!(!is_planar(&petersen()));
    }

    #[test]
    fn subdivisions_preserve_nonplanarity() {
        assert!(!is_planar(&Graph::clique(5).subdivide_edges(4).unwrap()));
        assert!(!is_planar(&Graph::clique(9).subdivide_edges(6).unwrap()));
        assert!(is_planar(&Graph::clique(4).subdivide_edges(3).unwrap()));
    }

    #[test]
    fn octahedron_and_cube() {
        // octahedron: K_{2,2,2}, planar, 12 edges, min degree 4
        let oct = Graph::from_edges(
            6,
            &[
                (0, 2), (0, 3), (0, 4), (0, 5),
                (1, 2), (1, 3), (1, 4), (1, 5),
                (2, 4), (2, 5), (3, 4), (3, 5),
            ],
        )
        .unwrap();
        assert!(is_planar(&oct));
        let cube = Graph::from_edges(
            8,
            &[
                (0, 1), (1, 2), (2, 3), (3, 0),
                (4, 5), (5, 6), (6, 7), (7, 4),
                (0, 4), (1, 5), (2, 6), (3, 7),
            ],
        )
        .unwrap();
        assert!(is_planar(&cube));
    }

    #[test]
    fn grotzsch_not_planar() {
        let g = Graph::cycle(5).unwrap().mycielskian().unwrap();
        assert!(!is_planar(&g));
    }

    #[test]
    fn wheel_and_grid() {
        // wheel on 7 vertices
        let mut edges: Vec<(usize, usize)> = (1..7).map(|i| (0, i)).collect();
        for i in 1..7 {
            edges.push((i, if i == 6 { 1 } else { i + 1 }));
        }
        assert!(is_planar(&Graph::from_edges(7, &edges).unwrap()));
        // 4x4 grid
        let mut ge = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                let v = r * 4 + c;
                if c + 1 < 4 {
                    ge.push((v, v + 1));
                }
                if r + 1 < 4 {
                    ge.push((v, v + 4));
                }
            }
        }
        assert!(is_planar(&Graph::from_edges(16, &ge).unwrap()));
    }

    #[test]
    fn k5_plus_component_mixture() {
        let g = Graph::clique(5)
            .disjoint_union(&Graph::path(3).replicate(50).unwrap())
            .unwrap();
        assert!(!is_planar(&g));
    }
}
