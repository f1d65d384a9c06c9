//! Graph surgery for gadget constructions: joining two graphs along an
//! edge, identifying two disjoint edges of one graph, and the chain/close
//! constructions that compose senders into long gadgets.
//!
//! Orientation convention: a marked edge is an *ordered* pair. Every
//! identification glues first endpoint to first endpoint and second to
//! second; callers wanting the reversed gluing reverse a mark.

use std::collections::BTreeMap;

use crate::error::MarkError;
use crate::graph::{Graph, VertexMap};

/// A graph with named (ordered) edge marks and named vertex marks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: Graph,
    marked_edges: BTreeMap<String, (u32, u32)>,
    marked_vertices: BTreeMap<String, u32>,
}

impl MarkedGraph {
    pub fn new(graph: Graph) -> Self {
        MarkedGraph {
            graph,
            marked_edges: BTreeMap::new(),
            marked_vertices: BTreeMap::new(),
        }
    }

    /// Marks the ordered pair `(a, b)`, which must be an edge.
    pub fn mark_edge(&mut self, label: &str, a: u32, b: u32) -> Result<(), MarkError> {
        if !self.graph.has_edge(a, b) {
            return Err(MarkError::NotAnEdge {
                label: label.to_string(),
                a,
                b,
            });
        }
        if self.marked_edges.contains_key(label) {
            return Err(MarkError::DuplicateLabel(label.to_string()));
        }
        self.marked_edges.insert(label.to_string(), (a, b));
        Ok(())
    }

    pub fn mark_vertex(&mut self, label: &str, v: u32) -> Result<(), MarkError> {
        if v as usize >= self.graph.vertex_count() {
            return Err(MarkError::MarkOutOfRange {
                label: label.to_string(),
                vertex: v,
            });
        }
        if self.marked_vertices.contains_key(label) {
            return Err(MarkError::DuplicateLabel(label.to_string()));
        }
        self.marked_vertices.insert(label.to_string(), v);
        Ok(())
    }

    pub fn edge_mark(&self, label: &str) -> Result<(u32, u32), MarkError> {
        self.marked_edges
            .get(label)
            .copied()
            .ok_or_else(|| MarkError::UnknownEdgeLabel(label.to_string()))
    }

    pub fn vertex_mark(&self, label: &str) -> Result<u32, MarkError> {
        self.marked_vertices
            .get(label)
            .copied()
            .ok_or_else(|| MarkError::UnknownVertexLabel(label.to_string()))
    }

    pub fn edge_marks(&self) -> impl Iterator<Item = (&str, (u32, u32))> {
        self.marked_edges.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn vertex_marks(&self) -> impl Iterator<Item = (&str, u32)> {
        self.marked_vertices.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Index of a marked edge in the graph's fixed edge enumeration.
    pub fn edge_mark_index(&self, label: &str) -> Result<usize, MarkError> {
        let (a, b) = self.edge_mark(label)?;
        self.graph.edge_index(a, b).ok_or(MarkError::NotAnEdge {
            label: label.to_string(),
            a,
            b,
        })
    }

    pub fn has_mark(&self, label: &str) -> bool {
        self.marked_edges.contains_key(label) || self.marked_vertices.contains_key(label)
    }

    /// Renames an edge or vertex mark. Errors when `old` does not exist or
    /// `new` is already taken.
    pub fn rename_mark(&mut self, old: &str, new: &str) -> Result<(), MarkError> {
        if self.has_mark(new) {
            return Err(MarkError::DuplicateLabel(new.to_string()));
        }
        if let Some(pair) = self.marked_edges.remove(old) {
            self.marked_edges.insert(new.to_string(), pair);
            return Ok(());
        }
        if let Some(v) = self.marked_vertices.remove(old) {
            self.marked_vertices.insert(new.to_string(), v);
            return Ok(());
        }
        Err(MarkError::UnknownEdgeLabel(old.to_string()))
    }

    fn map_marks_into(
        &self,
        map: &VertexMap,
        out: &mut MarkedGraph,
    ) -> Result<(), MarkError> {
        for (label, &(a, b)) in &self.marked_edges {
            let (na, nb) = (
                map.apply(a).expect("total map"),
                map.apply(b).expect("total map"),
            );
            if out.marked_edges.contains_key(label) {
                return Err(MarkError::DuplicateLabel(label.clone()));
            }
            if !out.graph.has_edge(na, nb) {
                return Err(MarkError::NotAnEdge {
                    label: label.clone(),
                    a: na,
                    b: nb,
                });
            }
            out.marked_edges.insert(label.clone(), (na, nb));
        }
        for (label, &v) in &self.marked_vertices {
            let nv = map.apply(v).expect("total map");
            if out.marked_vertices.contains_key(label) {
                return Err(MarkError::DuplicateLabel(label.clone()));
            }
            out.marked_vertices.insert(label.clone(), nv);
        }
        Ok(())
    }
}

/// Result of a join or identification: the new marked graph, the vertex
/// maps for the operand(s), and how many parallel edges collapsed into
/// existing ones (0 in every gadget construction this crate performs).
#[derive(Clone, Debug)]
pub struct SurgeryResult {
    pub graph: MarkedGraph,
    pub maps: Vec<VertexMap>,
    pub collapsed_edges: usize,
}

/// Glues `g` and `h` by identifying the ordered edge `(a, b)` of `g` with
/// the ordered edge `(c, d)` of `h` (`a` onto `c`, `b` onto `d`). The
/// result keeps `h`'s edges as they are and re-targets `g`'s; it has
/// `|g| + |h| - 2` vertices. Returns total vertex maps for both operands.
pub fn join_graphs(
    g: &Graph,
    g_edge: (u32, u32),
    h: &Graph,
    h_edge: (u32, u32),
) -> (Graph, VertexMap, VertexMap, usize) {
    let (a, b) = g_edge;
    let (c, d) = h_edge;
    debug_assert!(g.has_edge(a, b) && h.has_edge(c, d));

    // Surviving g-vertices first (ascending), then all of h.
    let mut g_map = VertexMap::new();
    let mut next = 0u32;
    for v in 0..g.vertex_count() as u32 {
        if v != a && v != b {
            g_map.insert(v, next);
            next += 1;
        }
    }
    let mut h_map = VertexMap::new();
    for v in 0..h.vertex_count() as u32 {
        h_map.insert(v, next + v);
    }
    g_map.insert(a, h_map.apply(c).unwrap());
    g_map.insert(b, h_map.apply(d).unwrap());

    let n = g.vertex_count() + h.vertex_count() - 2;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for &(u, v) in h.edges() {
        edges.push((h_map.apply(u).unwrap(), h_map.apply(v).unwrap()));
    }
    let joined_edge = (a.min(b), a.max(b));
    for &(u, v) in g.edges() {
        // The distinguished edge maps exactly onto h's; h already has it.
        if (u, v) == joined_edge {
            continue;
        }
        edges.push((g_map.apply(u).unwrap(), g_map.apply(v).unwrap()));
    }
    let total = edges.len();
    let mut normalized: Vec<(u32, u32)> = edges
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    normalized.sort_unstable();
    normalized.dedup();
    let collapsed = total - normalized.len();
    let joined = Graph::new(n, normalized).unwrap();
    (joined, g_map, h_map, collapsed)
}

/// Marked version of [`join_graphs`]: marks of both operands are carried
/// through the maps. Duplicate labels across the operands are an error.
pub fn edge_join(
    g: &MarkedGraph,
    g_label: &str,
    h: &MarkedGraph,
    h_label: &str,
) -> Result<SurgeryResult, MarkError> {
    let ge = g.edge_mark(g_label)?;
    let he = h.edge_mark(h_label)?;
    let (graph, g_map, h_map, collapsed) = join_graphs(&g.graph, ge, &h.graph, he);
    let mut out = MarkedGraph::new(graph);
    g.map_marks_into(&g_map, &mut out)?;
    // The joined edge now carries both labels; h's copy is dropped if the
    // label collides with g's (they denote the same edge).
    let mut h_rest = h.clone();
    if g_label == h_label {
        h_rest.marked_edges.remove(h_label);
    }
    h_rest.map_marks_into(&h_map, &mut out)?;
    Ok(SurgeryResult {
        graph: out,
        maps: vec![g_map, h_map],
        collapsed_edges: collapsed,
    })
}

/// Identifies two vertex-disjoint edges of one graph: `(a, b)` with
/// `(a2, b2)`, first onto first. Vertices become the blocks `{a, a2}`,
/// `{b, b2}` and singletons, renumbered by least member; the vertex count
/// drops by exactly 2.
pub fn identify_graph_edges(
    g: &Graph,
    e1: (u32, u32),
    e2: (u32, u32),
) -> Result<(Graph, VertexMap, usize), MarkError> {
    let (a, b) = e1;
    let (a2, b2) = e2;
    debug_assert!(g.has_edge(a, b) && g.has_edge(a2, b2));
    if a == a2 || a == b2 || b == a2 || b == b2 {
        return Err(MarkError::SharedVertex(a, b, a2, b2));
    }
    // Block representative: least member.
    let rep = |v: u32| -> u32 {
        if v == a || v == a2 {
            a.min(a2)
        } else if v == b || v == b2 {
            b.min(b2)
        } else {
            v
        }
    };
    let mut reps: Vec<u32> = (0..g.vertex_count() as u32).map(rep).collect();
    let mut sorted_reps: Vec<u32> = reps.clone();
    sorted_reps.sort_unstable();
    sorted_reps.dedup();
    let mut quotient = VertexMap::new();
    for v in 0..g.vertex_count() as u32 {
        let new = sorted_reps.binary_search(&reps[v as usize]).unwrap() as u32;
        quotient.insert(v, new);
    }
    reps.clear();

    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (nu, nv) = (quotient.apply(u).unwrap(), quotient.apply(v).unwrap());
            (nu.min(nv), nu.max(nv))
        })
        .collect();
    let total = edges.len();
    edges.sort_unstable();
    edges.dedup();
    // The two identified edges always merge into one; only merges beyond
    // that are accidental parallel collapses.
    let collapsed = total - edges.len() - 1;
    let graph = Graph::new(g.vertex_count() - 2, edges).unwrap();
    Ok((graph, quotient, collapsed))
}

/// Marked version of [`identify_graph_edges`]. All marks are carried
/// through the quotient; the two named edges end up denoting the same edge.
pub fn self_identify(
    g: &MarkedGraph,
    label1: &str,
    label2: &str,
) -> Result<SurgeryResult, MarkError> {
    if label1 == label2 {
        return Err(MarkError::EqualLabels(
            label1.to_string(),
            label2.to_string(),
        ));
    }
    let e1 = g.edge_mark(label1)?;
    let e2 = g.edge_mark(label2)?;
    let (graph, quotient, collapsed) = identify_graph_edges(&g.graph, e1, e2)?;
    let mut out = MarkedGraph::new(graph);
    g.map_marks_into(&quotient, &mut out)?;
    Ok(SurgeryResult {
        graph: out,
        maps: vec![quotient],
        collapsed_edges: collapsed,
    })
}

/// Chains `copies` copies of a sender `s` (marks `e = (a, u)`, `f = (b, v)`)
/// by joining copy `i`'s `f` onto copy `i+1`'s `e` (`b_i` onto `a_{i+1}`,
/// `v_i` onto `u_{i+1}`). `copies` must be odd: an odd chain of sign
/// flipping links is again sign flipping.
///
/// The result is marked with `e` (the first copy's `e`), `f` (the last
/// copy's `f`), and vertex marks `a1..a{copies}`, `b1..b{copies}` for the
/// first endpoints of each copy's signal edges.
pub fn chain_senders(s: &MarkedGraph, copies: usize) -> Result<MarkedGraph, MarkError> {
    if copies == 0 {
        return Err(MarkError::ZeroCopies);
    }
    if copies.is_multiple_of(2) {
        return Err(MarkError::EvenCopyCount(copies));
    }
    let e = s.edge_mark("e")?;
    let f = s.edge_mark("f")?;
    if e == f {
        return Err(MarkError::EqualLabels("e".to_string(), "f".to_string()));
    }

    let mut acc = s.graph.clone();
    let mut acc_e = e;
    let mut acc_f = f;
    let mut a_marks = vec![e.0];
    let mut b_marks = vec![f.0];

    for _ in 1..copies {
        let (joined, acc_map, copy_map, _collapsed) = join_graphs(&acc, acc_f, &s.graph, e);
        acc_e = (
            acc_map.apply(acc_e.0).unwrap(),
            acc_map.apply(acc_e.1).unwrap(),
        );
        for m in a_marks.iter_mut().chain(b_marks.iter_mut()) {
            *m = acc_map.apply(*m).unwrap();
        }
        acc_f = (copy_map.apply(f.0).unwrap(), copy_map.apply(f.1).unwrap());
        a_marks.push(copy_map.apply(e.0).unwrap());
        b_marks.push(copy_map.apply(f.0).unwrap());
        acc = joined;
    }

    let mut out = MarkedGraph::new(acc);
    out.mark_edge("e", acc_e.0, acc_e.1)?;
    out.mark_edge("f", acc_f.0, acc_f.1)?;
    for (i, &v) in a_marks.iter().enumerate() {
        out.mark_vertex(&format!("a{}", i + 1), v)?;
    }
    for (i, &v) in b_marks.iter().enumerate() {
        out.mark_vertex(&format!("b{}", i + 1), v)?;
    }
    Ok(out)
}

/// Which copy's `a`-vertex becomes the far mark `v` when closing a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FarVertexChoice {
    /// The middle copy, index `n + 1` of `2n + 1` (1-based). This is the
    /// symmetric choice: both arcs from the seam to the far mark pass
    /// through at least `n` junctions.
    MiddleCopy,
    /// An explicit 1-based copy index.
    CopyIndex(usize),
}

/// Closes a chain built from `2n + 1` copies by identifying its `e` with
/// its `f` (first endpoints onto each other). The seam vertex is marked
/// `u`; the chosen copy's `a`-vertex is marked `v`.
pub fn close_chain(
    chain: &MarkedGraph,
    n: usize,
    far: FarVertexChoice,
) -> Result<MarkedGraph, MarkError> {
    let copies = 2 * n + 1;
    let far_index = match far {
        FarVertexChoice::MiddleCopy => n + 1,
        FarVertexChoice::CopyIndex(i) => i,
    };
    // Validates that the chain really carries marks for `copies` copies.
    chain.vertex_mark(&format!("a{copies}"))?;
    let a1 = chain.vertex_mark("a1")?;
    let far_vertex = chain.vertex_mark(&format!("a{far_index}"))?;

    let result = self_identify(chain, "e", "f")?;
    let quotient = &result.maps[0];
    let mut out = result.graph;
    out.mark_vertex("u", quotient.apply(a1).unwrap())?;
    out.mark_vertex("v", quotient.apply(far_vertex).unwrap())?;
    Ok(out)
}
