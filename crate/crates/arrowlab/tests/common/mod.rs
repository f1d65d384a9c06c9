//! Shared test oracles, deliberately independent of the library's search
//! and canonicalization code paths: permutation sweeps for isomorphism,
//! injection sweeps for subgraph copies, and full coloring enumeration for
//! arrowing. Everything here is brute force and only suitable for the
//! desk-scale instances the tests use.

#![allow(dead_code)]

use std::collections::BTreeSet;

use arrowlab::{Graph, RootedGraph};

/// Deterministic 64-bit generator for seeded test data.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// True with probability `percent` / 100.
    pub fn chance(&mut self, percent: u64) -> bool {
        self.below(100) < percent
    }
}

pub fn random_graph(rng: &mut SplitMix64, n: usize, edge_percent: u64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.chance(edge_percent) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn random_permutation(rng: &mut SplitMix64, n: usize) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    perm
}

fn for_each_permutation(n: usize, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
    fn rec(current: &mut Vec<u32>, used: &mut [bool], n: usize, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
        if current.len() == n {
            return f(current);
        }
        for v in 0..n as u32 {
            if !used[v as usize] {
                used[v as usize] = true;
                current.push(v);
                if rec(current, used, n, f) {
                    return true;
                }
                current.pop();
                used[v as usize] = false;
            }
        }
        false
    }
    rec(&mut Vec::new(), &mut vec![false; n], n, f)
}

/// All-bijections isomorphism oracle. Usable up to ~8 vertices.
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.vertex_count();
    for_each_permutation(n, &mut |perm| {
        a.edges()
            .iter()
            .all(|&(u, v)| b.has_edge(perm[u as usize], perm[v as usize]))
    })
}

/// All-bijections root-preserving isomorphism oracle.
pub fn brute_rooted_isomorphic(a: &RootedGraph, b: &RootedGraph) -> bool {
    if a.graph.vertex_count() != b.graph.vertex_count()
        || a.graph.edge_count() != b.graph.edge_count()
    {
        return false;
    }
    let n = a.graph.vertex_count();
    for_each_permutation(n, &mut |perm| {
        perm[a.root as usize] == b.root
            && a.graph
                .edges()
                .iter()
                .all(|&(u, v)| b.graph.has_edge(perm[u as usize], perm[v as usize]))
    })
}

/// All-injections subgraph-copy oracle: every vertex-injective embedding
/// of `pattern` into `f`, collapsed to the set of used edge sets.
pub fn brute_copies(f: &Graph, pattern: &Graph) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let np = pattern.vertex_count();
    let nf = f.vertex_count();
    if np > nf {
        return out;
    }
    fn rec(
        f: &Graph,
        pattern: &Graph,
        image: &mut Vec<u32>,
        used: &mut Vec<bool>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let i = image.len();
        if i == pattern.vertex_count() {
            let edge_set: Option<Vec<usize>> = pattern
                .edges()
                .iter()
                .map(|&(u, v)| f.edge_index(image[u as usize], image[v as usize]))
                .collect();
            if let Some(mut set) = edge_set {
                set.sort_unstable();
                out.insert(set);
            }
            return;
        }
        for w in 0..f.vertex_count() as u32 {
            if used[w as usize] {
                continue;
            }
            let consistent = (0..i).all(|p| {
                !pattern.has_edge(i as u32, p as u32) || f.has_edge(w, image[p])
            });
            if consistent {
                image.push(w);
                used[w as usize] = true;
                rec(f, pattern, image, used, out);
                image.pop();
                used[w as usize] = false;
            }
        }
    }
    rec(f, pattern, &mut Vec::new(), &mut vec![false; nf], &mut out);
    out
}

fn copy_masks(f: &Graph, pattern: &Graph) -> Vec<u64> {
    brute_copies(f, pattern)
        .into_iter()
        .map(|set| set.into_iter().fold(0u64, |m, e| m | 1 << e))
        .collect()
}

/// Counts good colorings by enumerating all 2^m of them. Edge budget 24.
pub fn exhaustive_good_count(f: &Graph, g: &Graph, h: &Graph) -> u64 {
    let m = f.edge_count();
    assert!(m <= 24, "exhaustive oracle capped at 24 edges, got {m}");
    let g_copies = copy_masks(f, g);
    let h_copies = copy_masks(f, h);
    let mut count = 0u64;
    // Bit i set = edge i blue; a G-copy is all red when it meets no blue
    // bit, an H-copy all blue when contained in the blue bits.
    for coloring in 0..1u64 << m {
        let red_g = g_copies.iter().any(|&c| c & coloring == 0);
        if red_g {
            continue;
        }
        let blue_h = h_copies.iter().any(|&c| c & !coloring == 0);
        if !blue_h {
            count += 1;
        }
    }
    count
}

/// Exhaustive arrowing oracle: true iff no coloring is good.
pub fn exhaustive_arrows(f: &Graph, g: &Graph, h: &Graph) -> bool {
    let m = f.edge_count();
    assert!(m <= 24, "exhaustive oracle capped at 24 edges, got {m}");
    let g_copies = copy_masks(f, g);
    let h_copies = copy_masks(f, h);
    for coloring in 0..1u64 << m {
        let red_g = g_copies.iter().any(|&c| c & coloring == 0);
        let blue_h = h_copies.iter().any(|&c| c & !coloring == 0);
        if !red_g && !blue_h {
            return false;
        }
    }
    true
}

/// Graph from an edge-presence bitmask over pairs in lexicographic order
/// (bit 0 = pair (0,1)).
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

/// All graphs on exactly `n` vertices up to isomorphism, deduplicated by
/// canonical form, in deterministic order.
pub fn all_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    use std::collections::BTreeMap;
    let pairs = n * (n - 1) / 2;
    let mut classes: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    for mask in 0..1u64 << pairs {
        let g = graph_from_mask(n, mask);
        let key = arrowlab::canon::canonical_form(&g, None).into_bytes();
        classes.entry(key).or_insert(g);
    }
    classes.into_values().collect()
}
