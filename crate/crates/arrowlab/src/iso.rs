//! Graph isomorphism and subgraph-copy enumeration.
//!
//! Both are plain backtracking searches with degree pruning; at the sizes
//! this crate works at (gadgets and their chains) that is the right tool.

use std::collections::BTreeSet;

use crate::graph::{Graph, VertexMap};

/// Edge-preserving bijection between `a` and `b`, if one exists.
/// Deterministic: the lexicographically first witness under the internal
/// vertex order is returned.
pub fn isomorphism(a: &Graph, b: &Graph) -> Option<VertexMap> {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return None;
    }
    let n = a.vertex_count();
    // Map high-degree vertices first; they are the most constrained.
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| (usize::MAX - a.degree(v), v));

    let mut image = vec![u32::MAX; n];
    let mut used = vec![false; n];
    if assign(a, b, &order, 0, &mut image, &mut used) {
        let mut map = VertexMap::new();
        for v in 0..n as u32 {
            map.insert(v, image[v as usize]);
        }
        Some(map)
    } else {
        None
    }
}

fn assign(a: &Graph, b: &Graph, order: &[u32], i: usize, image: &mut [u32], used: &mut [bool]) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    'cand: for w in 0..b.vertex_count() as u32 {
        if used[w as usize] || b.degree(w) != a.degree(v) {
            continue;
        }
        for &p in &order[..i] {
            if a.has_edge(v, p) != b.has_edge(w, image[p as usize]) {
                continue 'cand;
            }
        }
        image[v as usize] = w;
        used[w as usize] = true;
        if assign(a, b, order, i + 1, image, used) {
            return true;
        }
        image[v as usize] = u32::MAX;
        used[w as usize] = false;
    }
    false
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    isomorphism(a, b).is_some()
}

/// All subgraphs of `f` isomorphic to `pattern`, each reported as the sorted
/// set of `f`-edge indices it uses. Subgraphs need not be induced. Two
/// embeddings with the same edge image count once; the list is sorted, so the
/// order is deterministic.
pub fn subgraph_copies(f: &Graph, pattern: &Graph) -> Vec<Vec<usize>> {
    if pattern.vertex_count() > f.vertex_count() {
        return Vec::new();
    }
    // Isolated pattern vertices never contribute edges; injectivity for them
    // only needs spare vertices, guaranteed by the size check above.
    let mut core: Vec<u32> = (0..pattern.vertex_count() as u32)
        .filter(|&v| pattern.degree(v) > 0)
        .collect();
    if core.is_empty() {
        // The empty edge set embeds once.
        return vec![Vec::new()];
    }
    // Order: first a max-degree vertex, then always a vertex with the most
    // already-placed neighbors (connectivity pruning), ties by degree.
    let mut order: Vec<u32> = Vec::with_capacity(core.len());
    core.sort_by_key(|&v| (usize::MAX - pattern.degree(v), v));
    order.push(core[0]);
    while order.len() < core.len() {
        let next = core
            .iter()
            .copied()
            .filter(|v| !order.contains(v))
            .max_by_key(|&v| {
                let placed = order.iter().filter(|&&p| pattern.has_edge(v, p)).count();
                (placed, pattern.degree(v), usize::MAX - v as usize)
            })
            .unwrap();
        order.push(next);
    }

    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut image = vec![u32::MAX; pattern.vertex_count()];
    let mut used = vec![false; f.vertex_count()];
    embed(f, pattern, &order, 0, &mut image, &mut used, &mut found);
    found.into_iter().collect()
}

fn embed(
    f: &Graph,
    pattern: &Graph,
    order: &[u32],
    i: usize,
    image: &mut [u32],
    used: &mut [bool],
    found: &mut BTreeSet<Vec<usize>>,
) {
    if i == order.len() {
        let mut edge_set: Vec<usize> = pattern
            .edges()
            .iter()
            .filter(|&&(u, v)| image[u as usize] != u32::MAX && image[v as usize] != u32::MAX)
            .map(|&(u, v)| {
                f.edge_index(image[u as usize], image[v as usize])
                    .expect("embedding preserves edges")
            })
            .collect();
        edge_set.sort_unstable();
        edge_set.dedup();
        found.insert(edge_set);
        return;
    }
    let v = order[i];
    'cand: for w in 0..f.vertex_count() as u32 {
        if used[w as usize] || f.degree(w) < pattern.degree(v) {
            continue;
        }
        for &p in &order[..i] {
            if pattern.has_edge(v, p) && !f.has_edge(w, image[p as usize]) {
                continue 'cand;
            }
        }
        image[v as usize] = w;
        used[w as usize] = true;
        embed(f, pattern, order, i + 1, image, used, found);
        image[v as usize] = u32::MAX;
        used[w as usize] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabeled_cycle() -> Graph {
        Graph::new(6, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 5), (5, 0)]).unwrap()
    }

    #[test]
    fn isomorphic_cycles() {
        assert!(are_isomorphic(&Graph::cycle(6), &relabeled_cycle()));
        let map = isomorphism(&Graph::cycle(6), &relabeled_cycle()).unwrap();
        assert!(map.is_injective());
        assert_eq!(map.len(), 6);
    }

    #[test]
    fn cycle_vs_path() {
        assert!(!are_isomorphic(&Graph::cycle(6), &Graph::path(6)));
    }

    #[test]
    fn same_degree_sequence_not_isomorphic() {
        // C6 and two triangles: both 2-regular on 6 vertices.
        let two_triangles = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(Graph::cycle(6).degree_sequence(), two_triangles.degree_sequence());
        assert!(!are_isomorphic(&Graph::cycle(6), &two_triangles));
    }

    #[test]
    fn copies_in_complete_graphs() {
        let k3 = Graph::complete(3);
        assert_eq!(subgraph_copies(&Graph::complete(4), &k3).len(), 4);
        assert_eq!(subgraph_copies(&Graph::complete(6), &k3).len(), 20);
    }

    #[test]
    fn path_copies_deduplicate_by_edge_set() {
        let copies = subgraph_copies(&Graph::path(5), &Graph::path(3));
        assert_eq!(copies.len(), 3);
        assert_eq!(copies, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn edgeless_and_oversized_patterns() {
        let f = Graph::complete(3);
        assert_eq!(subgraph_copies(&f, &Graph::empty(2)), vec![Vec::<usize>::new()]);
        assert_eq!(subgraph_copies(&f, &Graph::empty(0)), vec![Vec::<usize>::new()]);
        assert!(subgraph_copies(&f, &Graph::complete(4)).is_empty());
        // Pattern with an isolated vertex that does not fit injectively.
        let k2_plus_iso = Graph::new(3, [(0, 1)]).unwrap();
        assert!(subgraph_copies(&Graph::complete(2), &k2_plus_iso).is_empty());
        assert_eq!(subgraph_copies(&Graph::complete(3), &k2_plus_iso).len(), 3);
    }
}
