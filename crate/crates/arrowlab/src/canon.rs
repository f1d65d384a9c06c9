//! Canonical forms for graphs, optionally rooted.
//!
//! Iterative partition refinement (vertices split by neighbor counts per
//! cell) seeded with the root in its own cell, followed by backtracking
//! individualization over the first non-singleton cell. The canonical
//! encoding is the lexicographically least adjacency serialization over
//! all discrete refinements, so two (rooted) graphs get equal encodings
//! exactly when a (root-preserving) isomorphism exists.

use crate::graph::Graph;

/// A canonical byte encoding. Equal bytes iff isomorphic (root-preserving
/// when rooted). The root, when present, always lands at position 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

/// Canonical form of `g`; when `root` is given, only root-preserving
/// isomorphisms identify two graphs.
pub fn canonical_form(g: &Graph, root: Option<u32>) -> CanonicalForm {
    let n = g.vertex_count();
    let mut cells: Vec<Vec<u32>> = Vec::new();
    match root {
        Some(r) => {
            assert!((r as usize) < n, "root out of range");
            cells.push(vec![r]);
            let rest: Vec<u32> = (0..n as u32).filter(|&v| v != r).collect();
            if !rest.is_empty() {
                cells.push(rest);
            }
        }
        None => {
            if n > 0 {
                cells.push((0..n as u32).collect());
            }
        }
    }
    let mut best: Option<Vec<u8>> = None;
    individualize(g, cells, &mut best);
    let body = best.unwrap_or_default();
    let mut bytes = Vec::with_capacity(body.len() + 5);
    bytes.push(if root.is_some() { b'R' } else { b'G' });
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    bytes.extend_from_slice(&body);
    CanonicalForm(bytes)
}

/// Splits cells by per-cell neighbor counts until stable. Cell order is
/// deterministic: refined groups are sorted by signature.
fn refine(g: &Graph, cells: &mut Vec<Vec<u32>>) {
    let n = g.vertex_count();
    loop {
        let mut cell_of = vec![0u32; n];
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v as usize] = ci as u32;
            }
        }
        let mut changed = false;
        let mut next: Vec<Vec<u32>> = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, u32)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; cells.len()];
                    for w in g.neighbors(v) {
                        sig[cell_of[w as usize] as usize] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut group: Vec<u32> = Vec::new();
            let mut group_sig: Option<&Vec<u32>> = None;
            let mut groups: Vec<Vec<u32>> = Vec::new();
            for (sig, v) in &keyed {
                if group_sig.is_none_or(|s| s == sig) {
                    group.push(*v);
                } else {
                    groups.push(std::mem::take(&mut group));
                    group.push(*v);
                }
                group_sig = Some(sig);
            }
            groups.push(group);
            if groups.len() > 1 {
                changed = true;
            }
            next.extend(groups);
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

fn individualize(g: &Graph, mut cells: Vec<Vec<u32>>, best: &mut Option<Vec<u8>>) {
    refine(g, &mut cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let order: Vec<u32> = cells.iter().map(|c| c[0]).collect();
            let bytes = serialize_order(g, &order);
            if best.as_ref().is_none_or(|b| bytes < *b) {
                *best = Some(bytes);
            }
        }
        Some(ci) => {
            let cell = cells[ci].clone();
            for &v in &cell {
                let mut next = cells.clone();
                next[ci] = vec![v];
                next.insert(ci + 1, cell.iter().copied().filter(|&w| w != v).collect());
                individualize(g, next, best);
            }
        }
    }
}

/// Upper-triangle adjacency bits in the given vertex order, packed
/// big-endian into bytes.
fn serialize_order(g: &Graph, order: &[u32]) -> Vec<u8> {
    let n = order.len();
    if n < 2 {
        return Vec::new();
    }
    let mut bytes = vec![0u8; (n * (n - 1) / 2).div_ceil(8)];
    let mut bit = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                bytes[bit / 8] |= 0x80 >> (bit % 8);
            }
            bit += 1;
        }
    }
    bytes
}
