//! The arrowing engine: decide `F -> (G, H)`, find or enumerate good
//! colorings, and test arrow-minimality.
//!
//! A coloring is *good* when no copy of `G` is entirely red and no copy of
//! `H` is entirely red-complement (blue). The search treats each copy as a
//! monotone clause over edge variables: every `G`-copy needs at least one
//! blue edge, every `H`-copy at least one red edge. Backtracking branches
//! on the edge occurring in the most unsatisfied copies (ties: lowest edge
//! index, red before blue) and runs unit propagation: a copy whose edges
//! are all wrong-colored except one uncolored edge forces that edge.
//!
//! All searches are deterministic. Work is bounded by a node budget;
//! exhaustion surfaces as [`BudgetExceeded`], never as an answer.

use std::collections::BTreeMap;
use std::fmt;

use crate::config::SearchConfig;
use crate::error::{BudgetExceeded, EngineError};
use crate::graph::Graph;
use crate::iso::subgraph_copies;
use crate::mask::{EdgeMask, WideMask};

/// One of the two edge colors. Red is the `G` side, blue the `H` side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn as_bit(self) -> u8 {
        match self {
            Color::Red => 0,
            Color::Blue => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Option<Color> {
        match bit {
            0 => Some(Color::Red),
            1 => Some(Color::Blue),
            _ => None,
        }
    }
}

/// A total coloring of a graph's edges, indexed by edge index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        EdgeColoring { colors }
    }

    /// Coloring from a bitmask: bit `i` set means edge `i` is blue.
    pub fn from_mask(mask: u64, edge_count: usize) -> Self {
        EdgeColoring {
            colors: (0..edge_count)
                .map(|i| if mask >> i & 1 == 1 { Color::Blue } else { Color::Red })
                .collect(),
        }
    }

    pub fn color(&self, edge: usize) -> Color {
        self.colors[edge]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        self.colors.iter().copied()
    }

    /// The same coloring with red and blue exchanged.
    pub fn swapped(&self) -> EdgeColoring {
        EdgeColoring {
            colors: self.colors.iter().map(|c| c.flipped()).collect(),
        }
    }

    /// True when this coloring assigns every pair in `fixed` as stated.
    pub fn extends(&self, fixed: &PartialColoring) -> bool {
        fixed.iter().all(|(e, c)| self.colors.get(e) == Some(&c))
    }
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.colors {
            write!(f, "{}", if *c == Color::Red { 'R' } else { 'B' })?;
        }
        Ok(())
    }
}

impl fmt::Display for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A partial assignment of colors to edge indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialColoring {
    assignments: BTreeMap<usize, Color>,
}

impl PartialColoring {
    pub fn new() -> Self {
        PartialColoring::default()
    }

    pub fn with(mut self, edge: usize, color: Color) -> Self {
        self.set(edge, color);
        self
    }

    pub fn set(&mut self, edge: usize, color: Color) {
        self.assignments.insert(edge, color);
    }

    pub fn get(&self, edge: usize) -> Option<Color> {
        self.assignments.get(&edge).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Color)> + '_ {
        self.assignments.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }
}

/// The search representation of an arrowing instance: the host graph and
/// the edge sets of every `G`-copy and every `H`-copy in it.
#[derive(Clone, Debug)]
pub struct ClauseSystem {
    graph: Graph,
    g_copies: Vec<Vec<usize>>,
    h_copies: Vec<Vec<usize>>,
}

/// Result of a bounded enumeration of good colorings.
#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Good colorings in lexicographic order (by edge index, red < blue).
    pub colorings: Vec<EdgeColoring>,
    /// True when the enumeration stopped at the limit with branches left.
    pub truncated: bool,
}

impl ClauseSystem {
    pub fn new(f: &Graph, g: &Graph, h: &Graph) -> ClauseSystem {
        ClauseSystem {
            graph: f.clone(),
            g_copies: subgraph_copies(f, g),
            h_copies: subgraph_copies(f, h),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn g_copies(&self) -> &[Vec<usize>] {
        &self.g_copies
    }

    pub fn h_copies(&self) -> &[Vec<usize>] {
        &self.h_copies
    }

    /// Whether `c` colors no `G`-copy all red and no `H`-copy all blue.
    pub fn is_good(&self, c: &EdgeColoring) -> Result<bool, EngineError> {
        if c.len() != self.graph.edge_count() {
            return Err(EngineError::PartialColoring {
                got: c.len(),
                expected: self.graph.edge_count(),
            });
        }
        let all = |copy: &Vec<usize>, color: Color| copy.iter().all(|&e| c.color(e) == color);
        Ok(!self.g_copies.iter().any(|copy| all(copy, Color::Red))
            && !self.h_copies.iter().any(|copy| all(copy, Color::Blue)))
    }

    /// First good coloring extending `fixed`, in the deterministic search
    /// order, or `None` when no good extension exists.
    pub fn find_good(
        &self,
        fixed: &PartialColoring,
        cfg: &SearchConfig,
    ) -> Result<Option<EdgeColoring>, BudgetExceeded> {
        self.dispatch(fixed, cfg, Mode::FindFirst, None)
            .map(|e| e.colorings.into_iter().next())
    }

    /// Good colorings in lexicographic order, truncated at `limit`.
    pub fn enumerate_good(
        &self,
        limit: Option<usize>,
        cfg: &SearchConfig,
    ) -> Result<Enumeration, BudgetExceeded> {
        self.dispatch(&PartialColoring::new(), cfg, Mode::Enumerate, limit)
    }

    fn dispatch(
        &self,
        fixed: &PartialColoring,
        cfg: &SearchConfig,
        mode: Mode,
        limit: Option<usize>,
    ) -> Result<Enumeration, BudgetExceeded> {
        let m = self.graph.edge_count();
        if m <= 128 {
            self.solve::<u128>(fixed, cfg, mode, limit)
        } else {
            self.solve::<WideMask>(fixed, cfg, mode, limit)
        }
    }

    fn solve<M: EdgeMask>(
        &self,
        fixed: &PartialColoring,
        cfg: &SearchConfig,
        mode: Mode,
        limit: Option<usize>,
    ) -> Result<Enumeration, BudgetExceeded> {
        let m = self.graph.edge_count();
        let to_mask = |copy: &Vec<usize>| {
            let mut mask = M::zeros(m);
            for &e in copy {
                mask.set(e);
            }
            mask
        };
        let g_masks: Vec<M> = self.g_copies.iter().map(to_mask).collect();
        let h_masks: Vec<M> = self.h_copies.iter().map(to_mask).collect();
        let mut edge_to_g = vec![Vec::new(); m];
        let mut edge_to_h = vec![Vec::new(); m];
        for (ci, copy) in self.g_copies.iter().enumerate() {
            for &e in copy {
                edge_to_g[e].push(ci as u32);
            }
        }
        for (ci, copy) in self.h_copies.iter().enumerate() {
            for &e in copy {
                edge_to_h[e].push(ci as u32);
            }
        }

        let mut solver = Solver {
            g_masks: &g_masks,
            h_masks: &h_masks,
            edge_to_g: &edge_to_g,
            edge_to_h: &edge_to_h,
            red: M::zeros(m),
            blue: M::zeros(m),
            colors: vec![None; m],
            trail: Vec::with_capacity(m),
            budget: cfg.node_budget,
            mode,
            limit,
            out: Vec::new(),
            truncated: false,
        };

        // An edgeless copy is monochromatic under every coloring, so no
        // coloring is good: a G-copy with no edges is vacuously all red.
        let hopeless = self.g_copies.iter().any(|c| c.is_empty())
            || self.h_copies.iter().any(|c| c.is_empty());

        let mut feasible = !hopeless;
        if feasible {
            for (&e, &c) in fixed.assignments.iter() {
                debug_assert!(e < m, "fixed coloring mentions edge {e} of {m}");
                solver.assign(e, c);
            }
            feasible = solver.propagate(0) && solver.initial_scan();
        }
        if feasible {
            solver.search()?;
        }
        Ok(Enumeration {
            colorings: solver.out,
            truncated: solver.truncated,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    FindFirst,
    Enumerate,
}

struct Solver<'a, M: EdgeMask> {
    g_masks: &'a [M],
    h_masks: &'a [M],
    edge_to_g: &'a [Vec<u32>],
    edge_to_h: &'a [Vec<u32>],
    red: M,
    blue: M,
    colors: Vec<Option<Color>>,
    trail: Vec<usize>,
    budget: u64,
    mode: Mode,
    limit: Option<usize>,
    out: Vec<EdgeColoring>,
    truncated: bool,
}

impl<M: EdgeMask> Solver<'_, M> {
    fn assign(&mut self, e: usize, c: Color) {
        debug_assert!(self.colors[e].is_none());
        self.colors[e] = Some(c);
        match c {
            Color::Red => self.red.set(e),
            Color::Blue => self.blue.set(e),
        }
        self.trail.push(e);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().unwrap();
            match self.colors[e].take().unwrap() {
                Color::Red => self.red.clear(e),
                Color::Blue => self.blue.clear(e),
            }
        }
    }

    /// Checks one G-copy; propagates a forced blue edge. False on conflict.
    fn check_g(&mut self, ci: usize) -> bool {
        let mask = &self.g_masks[ci];
        if mask.intersects(&self.blue) {
            return true;
        }
        match mask.minus_union_count(&self.red, &self.blue) {
            0 => false, // fully red copy of G
            1 => {
                let e = mask.minus_union_single(&self.red, &self.blue).unwrap();
                self.assign(e, Color::Blue);
                true
            }
            _ => true,
        }
    }

    fn check_h(&mut self, ci: usize) -> bool {
        let mask = &self.h_masks[ci];
        if mask.intersects(&self.red) {
            return true;
        }
        match mask.minus_union_count(&self.red, &self.blue) {
            0 => false,
            1 => {
                let e = mask.minus_union_single(&self.red, &self.blue).unwrap();
                self.assign(e, Color::Red);
                true
            }
            _ => true,
        }
    }

    /// Processes trail entries from position `from` on, cascading forced
    /// assignments. Returns false on conflict.
    fn propagate(&mut self, mut from: usize) -> bool {
        while from < self.trail.len() {
            let e = self.trail[from];
            from += 1;
            match self.colors[e].unwrap() {
                Color::Red => {
                    for i in 0..self.edge_to_g[e].len() {
                        let ci = self.edge_to_g[e][i] as usize;
                        if !self.check_g(ci) {
                            return false;
                        }
                    }
                }
                Color::Blue => {
                    for i in 0..self.edge_to_h[e].len() {
                        let ci = self.edge_to_h[e][i] as usize;
                        if !self.check_h(ci) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// One pass over every copy, catching units and conflicts that exist
    /// before any branching (single-edge copies, dense fixed colorings).
    fn initial_scan(&mut self) -> bool {
        let from = self.trail.len();
        for ci in 0..self.g_masks.len() {
            if !self.check_g(ci) {
                return false;
            }
        }
        for ci in 0..self.h_masks.len() {
            if !self.check_h(ci) {
                return false;
            }
        }
        self.propagate(from)
    }

    fn pick_branch_edge(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None; // (score, edge)
        for e in 0..self.colors.len() {
            if self.colors[e].is_some() {
                continue;
            }
            let score = match self.mode {
                // Lexicographic leaf order needs index-order branching.
                Mode::Enumerate => return Some(e),
                Mode::FindFirst => {
                    let unsat_g = self.edge_to_g[e]
                        .iter()
                        .filter(|&&ci| !self.g_masks[ci as usize].intersects(&self.blue))
                        .count();
                    let unsat_h = self.edge_to_h[e]
                        .iter()
                        .filter(|&&ci| !self.h_masks[ci as usize].intersects(&self.red))
                        .count();
                    unsat_g + unsat_h
                }
            };
            match best {
                Some((s, _)) if s >= score => {}
                _ => best = Some((score, e)),
            }
        }
        best.map(|(_, e)| e)
    }

    /// Returns Ok(true) to keep exploring, Ok(false) to stop (found or
    /// limit reached).
    fn search(&mut self) -> Result<bool, BudgetExceeded> {
        let Some(e) = self.pick_branch_edge() else {
            // Complete assignment; conflicts were ruled out eagerly.
            if self.limit == Some(self.out.len()) {
                self.truncated = true;
                return Ok(false);
            }
            self.out.push(EdgeColoring::new(
                self.colors.iter().map(|c| c.unwrap()).collect(),
            ));
            let stop = match self.mode {
                Mode::FindFirst => true,
                Mode::Enumerate => false,
            };
            return Ok(!stop);
        };
        if self.budget == 0 {
            return Err(BudgetExceeded);
        }
        self.budget -= 1;
        for color in [Color::Red, Color::Blue] {
            let mark = self.trail.len();
            self.assign(e, color);
            if self.propagate(mark) && !self.search()? {
                return Ok(false);
            }
            self.undo_to(mark);
        }
        Ok(true)
    }
}

/// Whether `c` is a good coloring of `f` with respect to `(g, h)`.
pub fn is_good_coloring(
    f: &Graph,
    g: &Graph,
    h: &Graph,
    c: &EdgeColoring,
) -> Result<bool, EngineError> {
    ClauseSystem::new(f, g, h).is_good(c)
}

/// First good coloring extending `fixed`, or `None`.
pub fn find_good_coloring(
    f: &Graph,
    g: &Graph,
    h: &Graph,
    fixed: &PartialColoring,
    cfg: &SearchConfig,
) -> Result<Option<EdgeColoring>, BudgetExceeded> {
    ClauseSystem::new(f, g, h).find_good(fixed, cfg)
}

/// Decides the arrowing relation: true iff `f` has no good coloring.
pub fn arrows(f: &Graph, g: &Graph, h: &Graph, cfg: &SearchConfig) -> Result<bool, BudgetExceeded> {
    Ok(find_good_coloring(f, g, h, &PartialColoring::new(), cfg)?.is_none())
}

/// All good colorings in deterministic order, truncated at `limit`.
pub fn enumerate_good_colorings(
    f: &Graph,
    g: &Graph,
    h: &Graph,
    limit: Option<usize>,
    cfg: &SearchConfig,
) -> Result<Enumeration, BudgetExceeded> {
    ClauseSystem::new(f, g, h).enumerate_good(limit, cfg)
}

/// True iff `f` arrows `(g, h)`, has no isolated vertex, and every
/// single-edge deletion stops arrowing. Arrowing is monotone under
/// subgraphs, so this is equivalent to minimality over all proper
/// subgraphs when `g` and `h` are connected (an isolated vertex can never
/// participate in a copy of a connected graph).
pub fn is_arrow_minimal(
    f: &Graph,
    g: &Graph,
    h: &Graph,
    cfg: &SearchConfig,
) -> Result<bool, BudgetExceeded> {
    if !arrows(f, g, h, cfg)? {
        return Ok(false);
    }
    if !f.isolated_vertices().is_empty() {
        return Ok(false);
    }
    for x in 0..f.edge_count() {
        if arrows(&f.without_edge(x), g, h, cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}
