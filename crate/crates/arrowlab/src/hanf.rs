//! Locality machinery: balls, rooted neighborhoods, canonical neighborhood
//! types, type censuses, radius-r equivalence, and the locality certificate
//! that upgrades a radius-2^r census match to bounded-rank first-order
//! equivalence.
//!
//! For plain graphs the Gaifman graph coincides with the graph itself, so
//! distances here are ordinary shortest-path distances.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::GraphError;
use crate::graph::{Distance, Graph, VertexMap};

/// A graph with a distinguished root vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedGraph {
    pub graph: Graph,
    pub root: u32,
}

/// Canonical form of a rooted radius-r neighborhood. Equal values exactly
/// when a root-preserving isomorphism exists.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NeighborhoodType(CanonicalForm);

impl NeighborhoodType {
    pub fn hex(&self) -> String {
        self.0.hex()
    }
}

impl fmt::Debug for NeighborhoodType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NeighborhoodType({})", self.hex())
    }
}

impl fmt::Display for NeighborhoodType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hex())
    }
}

/// Vertices within distance `r` of `a`, ascending.
pub fn ball(g: &Graph, a: u32, r: u32) -> Result<Vec<u32>, GraphError> {
    let dist = g.bfs_distances(a)?;
    Ok((0..g.vertex_count() as u32)
        .filter(|&v| dist[v as usize] <= Distance::Finite(r))
        .collect())
}

/// The induced subgraph on `ball(g, a, r)`, renumbered onto an initial
/// segment, rooted at the image of `a`.
pub fn neighborhood(g: &Graph, a: u32, r: u32) -> Result<RootedGraph, GraphError> {
    let members = ball(g, a, r)?;
    let (graph, map) = g.induced_on(&members)?;
    Ok(RootedGraph {
        graph,
        root: map.apply(a).expect("center lies in its own ball"),
    })
}

/// Canonical type of the radius-r neighborhood of `a`.
pub fn r_type(g: &Graph, a: u32, r: u32) -> Result<NeighborhoodType, GraphError> {
    let nb = neighborhood(g, a, r)?;
    Ok(NeighborhoodType(canonical_form(&nb.graph, Some(nb.root))))
}

/// Multiplicities of neighborhood types over all vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeCensus {
    counts: BTreeMap<NeighborhoodType, usize>,
}

impl TypeCensus {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn distinct_types(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, t: &NeighborhoodType) -> usize {
        self.counts.get(t).copied().unwrap_or(0)
    }

    /// Entries sorted by encoding.
    pub fn iter(&self) -> impl Iterator<Item = (&NeighborhoodType, usize)> {
        self.counts.iter().map(|(t, &c)| (t, c))
    }
}

/// The per-vertex types of `g` at radius `r`, indexed by vertex.
///
/// Types are canonicalized once per distinct breadth-first presentation of
/// a neighborhood; repeated shapes (the common case on paths, cycles, and
/// chained gadgets) hit the cache. The cache only short-circuits equal
/// labeled presentations, so results match vertex-by-vertex recomputation.
pub fn vertex_types(g: &Graph, r: u32) -> Vec<NeighborhoodType> {
    let keys = neighborhood_keys(g, r);
    let mut memo: HashMap<Vec<u8>, NeighborhoodType> = HashMap::new();
    keys.into_iter()
        .map(|(key, rooted)| {
            memo.entry(key)
                .or_insert_with(|| NeighborhoodType(canonical_form(&rooted.graph, Some(rooted.root))))
                .clone()
        })
        .collect()
}

/// Breadth-first presentation of each vertex's neighborhood: the induced
/// ball renumbered in BFS order (root first, neighbors ascending), plus a
/// byte key identifying that labeled presentation.
fn neighborhood_keys(g: &Graph, r: u32) -> Vec<(Vec<u8>, RootedGraph)> {
    let one = |v: u32| -> (Vec<u8>, RootedGraph) {
        let dist = g.bfs_distances(v).expect("vertex in range");
        // BFS order with ascending tie-break: sort by (distance, id).
        let mut order: Vec<u32> = (0..g.vertex_count() as u32)
            .filter(|&w| dist[w as usize] <= Distance::Finite(r))
            .collect();
        order.sort_by_key(|&w| (dist[w as usize], w));
        let (graph, _) = g.induced_on(&order).expect("ball members in range");
        let mut key = Vec::with_capacity(8 + graph.edge_count() * 8);
        key.extend_from_slice(&(graph.vertex_count() as u32).to_be_bytes());
        for &(a, b) in graph.edges() {
            key.extend_from_slice(&a.to_be_bytes());
            key.extend_from_slice(&b.to_be_bytes());
        }
        (key, RootedGraph { graph, root: 0 })
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..g.vertex_count() as u32).into_par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..g.vertex_count() as u32).map(one).collect()
    }
}

/// The multiset of radius-r types over all vertices.
pub fn type_census(g: &Graph, r: u32) -> TypeCensus {
    let mut counts: BTreeMap<NeighborhoodType, usize> = BTreeMap::new();
    for t in vertex_types(g, r) {
        *counts.entry(t).or_insert(0) += 1;
    }
    TypeCensus { counts }
}

/// Radius-r equivalence: a type-preserving bijection between the vertex
/// sets exists. Such a bijection exists exactly when the per-type counts
/// agree, so this compares censuses.
pub fn are_r_equivalent(a: &Graph, b: &Graph, r: u32) -> bool {
    type_census(a, r) == type_census(b, r)
}

/// A witness bijection for radius-r equivalence: vertices paired type by
/// type in ascending vertex order. `None` when the censuses differ.
pub fn r_equivalence_bijection(a: &Graph, b: &Graph, r: u32) -> Option<VertexMap> {
    let ta = vertex_types(a, r);
    let tb = vertex_types(b, r);
    let mut by_type: BTreeMap<&NeighborhoodType, Vec<u32>> = BTreeMap::new();
    for (v, t) in tb.iter().enumerate() {
        by_type.entry(t).or_default().push(v as u32);
    }
    let mut map = VertexMap::new();
    // Consume b-vertices in ascending order per type.
    let mut cursor: BTreeMap<&NeighborhoodType, usize> = BTreeMap::new();
    for (v, t) in ta.iter().enumerate() {
        let pool = by_type.get(t)?;
        let at = cursor.entry(t).or_insert(0);
        if *at >= pool.len() {
            return None;
        }
        map.insert(v as u32, pool[*at]);
        *at += 1;
    }
    if ta.len() != tb.len() {
        return None;
    }
    Some(map)
}

/// The conclusion a locality certificate can draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HanfConclusion {
    /// The two graphs satisfy the same sentences of quantifier rank <= r.
    FoEquivalent(u32),
    /// The census check failed; the criterion is one-directional, so
    /// nothing follows.
    Inconclusive,
}

/// Premise check for the locality criterion: radius-2^r equivalence
/// implies agreement on all sentences of quantifier rank up to r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HanfCertificate {
    pub rank: u32,
    pub radius: u32,
    pub equivalent: bool,
    pub conclusion: HanfConclusion,
    pub warnings: Vec<String>,
    pub census_a: TypeCensus,
    pub census_b: TypeCensus,
}

/// Checks 2^r-equivalence of `a` and `b` and reports the consequence.
/// Requires `r >= 1`; warns when either structure has fewer than 2
/// elements (outside the usual structure convention).
pub fn hanf_certificate(a: &Graph, b: &Graph, r: u32) -> HanfCertificate {
    assert!(r >= 1, "the locality criterion is stated for r >= 1");
    // Balls saturate at the component anyway, so clamping huge radii is
    // exact, not approximate.
    let radius = 1u32.checked_shl(r).unwrap_or(u32::MAX);
    let mut warnings = Vec::new();
    for (name, g) in [("A", a), ("B", b)] {
        if g.vertex_count() < 2 {
            warnings.push(format!(
                "structure {name} has {} element(s); sizes below 2 are outside the usual convention",
                g.vertex_count()
            ));
        }
    }
    let census_a = type_census(a, radius);
    let census_b = type_census(b, radius);
    let equivalent = census_a == census_b;
    HanfCertificate {
        rank: r,
        radius,
        equivalent,
        conclusion: if equivalent {
            HanfConclusion::FoEquivalent(r)
        } else {
            HanfConclusion::Inconclusive
        },
        warnings,
        census_a,
        census_b,
    }
}
