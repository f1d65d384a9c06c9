//! Finite simple undirected graphs on the vertex set `{0, .., n-1}`.
//!
//! Edges are stored as a sorted list of unordered pairs `(u, v)` with
//! `u < v`; the position of a pair in that list is its *edge index*, the
//! fixed enumeration that edge colorings and copy masks refer to. An
//! adjacency bit-matrix gives O(1) membership tests.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::Bitset;
use crate::error::GraphError;

/// A finite simple undirected graph. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Bitset>,
}

/// Distance between two vertices; `Infinite` when they lie in different
/// connected components. `Finite(a) < Finite(b) < Infinite` for `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// Saturating addition; anything plus `Infinite` is `Infinite`.
    pub fn plus(self, other: Distance) -> Distance {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "INFINITY"),
        }
    }
}

/// An injective map between vertex sets, stored with a deterministic order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VertexMap {
    map: BTreeMap<u32, u32>,
}

impl VertexMap {
    pub fn new() -> Self {
        VertexMap::default()
    }

    pub fn identity(n: usize) -> Self {
        VertexMap {
            map: (0..n as u32).map(|v| (v, v)).collect(),
        }
    }

    pub(crate) fn insert(&mut self, from: u32, to: u32) {
        self.map.insert(from, to);
    }

    pub fn apply(&self, v: u32) -> Option<u32> {
        self.map.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    /// True when no two sources share a target.
    pub fn is_injective(&self) -> bool {
        let targets: BTreeSet<u32> = self.map.values().copied().collect();
        targets.len() == self.map.len()
    }

    /// Composition: `self` then `after`; defined where both maps are.
    pub fn then(&self, after: &VertexMap) -> VertexMap {
        let mut out = VertexMap::new();
        for (a, b) in self.iter() {
            if let Some(c) = after.apply(b) {
                out.insert(a, c);
            }
        }
        out
    }
}

impl Graph {
    /// Builds a graph, normalizing each pair to `(min, max)` and sorting.
    /// Rejects self-loops, out-of-range endpoints, and duplicate edges
    /// (also when the duplicate arrives with reversed endpoints).
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let mut list: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for v in [a, b] {
                if v as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Bitset::new(n); n];
        for &(u, v) in &list {
            adj[u as usize].set(v as usize);
            adj[v as usize].set(u as usize);
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    /// Path on `n` vertices: `0 - 1 - .. - (n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n as u32).map(|v| (v - 1, v))).unwrap()
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v - 1, v)).collect();
        edges.push((0, n as u32 - 1));
        Graph::new(n, edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in the fixed enumeration order (lexicographic by `(u, v)`).
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        if u == v || u as usize >= self.n || v as usize >= self.n {
            return false;
        }
        self.adj[u as usize].test(v as usize)
    }

    /// Index of edge `{u, v}` in the fixed enumeration.
    pub fn edge_index(&self, u: u32, v: u32) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].count()
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj[v as usize].iter_ones().map(|u| u as u32)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n as u32).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    fn check_vertex(&self, v: u32) -> Result<(), GraphError> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Breadth-first distances from `start` to every vertex.
    pub fn bfs_distances(&self, start: u32) -> Result<Vec<Distance>, GraphError> {
        self.check_vertex(start)?;
        let mut dist = vec![Distance::Infinite; self.n];
        dist[start as usize] = Distance::Finite(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let du = match dist[u as usize] {
                Distance::Finite(d) => d,
                Distance::Infinite => unreachable!(),
            };
            for w in self.neighbors(u) {
                if dist[w as usize] == Distance::Infinite {
                    dist[w as usize] = Distance::Finite(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Shortest-path distance; `Infinite` across components.
    pub fn distance(&self, u: u32, v: u32) -> Result<Distance, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs_distances(u)?[v as usize])
    }

    /// Connectivity in the usual sense; the empty graph counts as connected,
    /// matching the convention that it has no separated pair.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.bfs_distances(0)
            .unwrap()
            .iter()
            .all(|d| d.is_finite())
    }

    fn connected_on(&self, alive: &Bitset) -> bool {
        let mut start = None;
        for v in 0..self.n {
            if alive.test(v) {
                start = Some(v);
                break;
            }
        }
        let Some(start) = start else { return true };
        let mut seen = Bitset::new(self.n);
        seen.set(start);
        let mut queue = VecDeque::from([start as u32]);
        let mut count = 1usize;
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                let wi = w as usize;
                if alive.test(wi) && !seen.test(wi) {
                    seen.set(wi);
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == alive.count()
    }

    /// Vertex connectivity, computed exhaustively over removal sets.
    /// Complete graphs get the usual convention `kappa(K_n) = n - 1`.
    pub fn vertex_connectivity(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        if self.edge_count() == self.n * (self.n - 1) / 2 {
            return self.n - 1;
        }
        // Not complete, so some removal of at most n-2 vertices disconnects.
        for size in 0..self.n - 1 {
            let mut subset: Vec<usize> = (0..size).collect();
            loop {
                let mut alive = Bitset::new(self.n);
                for v in 0..self.n {
                    alive.set(v);
                }
                for &v in &subset {
                    alive.clear(v);
                }
                if alive.count() >= 2 && !self.connected_on(&alive) {
                    return size;
                }
                if !next_combination(&mut subset, self.n) {
                    break;
                }
            }
        }
        self.n - 1
    }

    /// Exact connectivity: stays connected under every removal of `k - 1`
    /// vertices and some removal of `k` vertices disconnects it, i.e.
    /// `kappa(G) == k` with the complete-graph convention above.
    pub fn is_k_connected(&self, k: usize) -> Result<bool, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroArgument);
        }
        Ok(self.vertex_connectivity() == k)
    }

    /// Lower-bound form: `kappa(G) >= k`. This is the predicate the chain
    /// construction's preconditions quantify over.
    pub fn min_connectivity_at_least(&self, k: usize) -> Result<bool, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroArgument);
        }
        Ok(self.vertex_connectivity() >= k)
    }

    /// Induced subgraph on the complement of `removed`, renumbered onto an
    /// initial segment. The map sends surviving old ids to new ids.
    pub fn delete_vertices(&self, removed: &BTreeSet<u32>) -> Result<(Graph, VertexMap), GraphError> {
        for &v in removed {
            self.check_vertex(v)?;
        }
        let kept: Vec<u32> = (0..self.n as u32).filter(|v| !removed.contains(v)).collect();
        self.induced_on(&kept)
    }

    /// Induced subgraph on the given vertices (in the given order), which
    /// become `0..kept.len()` in the result.
    pub fn induced_on(&self, kept: &[u32]) -> Result<(Graph, VertexMap), GraphError> {
        let mut map = VertexMap::new();
        for (new, &old) in kept.iter().enumerate() {
            self.check_vertex(old)?;
            map.insert(old, new as u32);
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if let (Some(nu), Some(nv)) = (map.apply(u), map.apply(v)) {
                edges.push((nu, nv));
            }
        }
        Ok((Graph::new(kept.len(), edges)?, map))
    }

    /// Disjoint union; `self` keeps its ids, `other` is shifted.
    pub fn disjoint_union(&self, other: &Graph) -> (Graph, VertexMap, VertexMap) {
        let shift = self.n as u32;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        let g = Graph::new(self.n + other.n, edges).unwrap();
        let left = VertexMap::identity(self.n);
        let mut right = VertexMap::new();
        for v in 0..other.n as u32 {
            right.insert(v, v + shift);
        }
        (g, left, right)
    }

    /// Same graph without the edge at `index`; vertices are kept.
    pub fn without_edge(&self, index: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Graph::new(self.n, edges).unwrap()
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`. `perm` must be a
    /// permutation of `0..n`.
    pub fn relabel(&self, perm: &[u32]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(
            self.n,
            self.edges.iter().map(|&(u, v)| (perm[u as usize], perm[v as usize])),
        )
        .unwrap()
    }

    /// Vertices with no incident edge.
    pub fn isolated_vertices(&self) -> Vec<u32> {
        (0..self.n as u32).filter(|&v| self.degree(v) == 0).collect()
    }

    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut components: Vec<Vec<u32>> = Vec::new();
        for s in 0..self.n as u32 {
            if comp[s as usize] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![s];
            comp[s as usize] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if comp[w as usize] == usize::MAX {
                        comp[w as usize] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Advances `subset` to the next k-subset of `0..n` in lexicographic order.
/// Returns false when `subset` was the last one.
pub(crate) fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Serde façade: `{"n": 5, "edges": [[0,1],[1,2]]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct GraphJson {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.clone(),
        }
    }
}
