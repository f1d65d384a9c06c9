//! Verification of determiners and senders, sender minimality, and a
//! bounded exhaustive search for small sender witnesses.
//!
//! A determiner has a signal edge that is red in every good coloring.
//! A negative sender has two signal edges taking different colors in every
//! good coloring, a positive sender equal colors; both kinds must have good
//! colorings of both signal polarities. Every check below reduces to a
//! handful of `find_good` calls with pinned signal colors, so no full
//! enumeration is ever required.

use std::collections::BTreeSet;

use crate::arrowing::{ClauseSystem, Color, EdgeColoring, PartialColoring};
use crate::canon::canonical_form;
use crate::config::SearchConfig;
use crate::error::EngineError;
use crate::gadget::MarkedGraph;
use crate::graph::Graph;

/// Sender polarity: whether the signals must disagree or agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Negative,
    Positive,
}

impl Polarity {
    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Negative => "negative",
            Polarity::Positive => "positive",
        }
    }
}

/// Outcome of a gadget verification. `violated_condition` uses the
/// customary numbering: 1 = no good coloring exists, 2 = the signal
/// constraint fails, 3 = one signal polarity is unrealizable. The witness,
/// when present, is a good coloring exhibiting the condition-2 violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetVerdict {
    pub ok: bool,
    pub violated_condition: Option<u8>,
    pub witness: Option<EdgeColoring>,
}

impl GadgetVerdict {
    fn ok() -> Self {
        GadgetVerdict {
            ok: true,
            violated_condition: None,
            witness: None,
        }
    }

    fn violated(condition: u8, witness: Option<EdgeColoring>) -> Self {
        GadgetVerdict {
            ok: false,
            violated_condition: Some(condition),
            witness,
        }
    }
}

/// Checks that `f_label` marks an edge that is red in every good coloring
/// and that good colorings exist.
pub fn verify_determiner(
    d: &MarkedGraph,
    f_label: &str,
    g: &Graph,
    h: &Graph,
    cfg: &SearchConfig,
) -> Result<GadgetVerdict, EngineError> {
    let f_idx = d.edge_mark_index(f_label)?;
    let cs = ClauseSystem::new(&d.graph, g, h);
    if cs.find_good(&PartialColoring::new(), cfg)?.is_none() {
        return Ok(GadgetVerdict::violated(1, None));
    }
    let f_blue = PartialColoring::new().with(f_idx, Color::Blue);
    if let Some(w) = cs.find_good(&f_blue, cfg)? {
        return Ok(GadgetVerdict::violated(2, Some(w)));
    }
    Ok(GadgetVerdict::ok())
}

/// Checks the three sender conditions for the marked edges `e` and `f`.
pub fn verify_sender(
    s: &MarkedGraph,
    e_label: &str,
    f_label: &str,
    g: &Graph,
    h: &Graph,
    polarity: Polarity,
    cfg: &SearchConfig,
) -> Result<GadgetVerdict, EngineError> {
    let e_idx = s.edge_mark_index(e_label)?;
    let f_idx = s.edge_mark_index(f_label)?;
    if e_idx == f_idx {
        return Err(EngineError::Precondition(format!(
            "signal marks `{e_label}` and `{f_label}` denote the same edge"
        )));
    }
    let cs = ClauseSystem::new(&s.graph, g, h);
    verify_sender_on(&cs, e_idx, f_idx, polarity, cfg)
}

fn verify_sender_on(
    cs: &ClauseSystem,
    e_idx: usize,
    f_idx: usize,
    polarity: Polarity,
    cfg: &SearchConfig,
) -> Result<GadgetVerdict, EngineError> {
    if cs.find_good(&PartialColoring::new(), cfg)?.is_none() {
        return Ok(GadgetVerdict::violated(1, None));
    }
    // Condition 2: search for a good coloring with the forbidden signal
    // combination; finding one is the violation witness.
    for (ce, cf) in forbidden_signal_pairs(polarity) {
        let fixed = PartialColoring::new().with(e_idx, ce).with(f_idx, cf);
        if let Some(w) = cs.find_good(&fixed, cfg)? {
            return Ok(GadgetVerdict::violated(2, Some(w)));
        }
    }
    // Condition 3: both polarities of `e` must be realizable.
    for ce in [Color::Red, Color::Blue] {
        let fixed = PartialColoring::new().with(e_idx, ce);
        if cs.find_good(&fixed, cfg)?.is_none() {
            return Ok(GadgetVerdict::violated(3, None));
        }
    }
    Ok(GadgetVerdict::ok())
}

fn forbidden_signal_pairs(polarity: Polarity) -> [(Color, Color); 2] {
    match polarity {
        // Signals must differ, so equal-colored good colorings violate.
        Polarity::Negative => [(Color::Red, Color::Red), (Color::Blue, Color::Blue)],
        Polarity::Positive => [(Color::Red, Color::Blue), (Color::Blue, Color::Red)],
    }
}

pub fn verify_negative_sender(
    s: &MarkedGraph,
    e_label: &str,
    f_label: &str,
    g: &Graph,
    h: &Graph,
    cfg: &SearchConfig,
) -> Result<GadgetVerdict, EngineError> {
    verify_sender(s, e_label, f_label, g, h, Polarity::Negative, cfg)
}

pub fn verify_positive_sender(
    s: &MarkedGraph,
    e_label: &str,
    f_label: &str,
    g: &Graph,
    h: &Graph,
    cfg: &SearchConfig,
) -> Result<GadgetVerdict, EngineError> {
    verify_sender(s, e_label, f_label, g, h, Polarity::Positive, cfg)
}

/// True when the two marked edges share no vertex.
pub fn signals_non_adjacent(s: &MarkedGraph, e_label: &str, f_label: &str) -> Result<bool, EngineError> {
    let (a, b) = s.edge_mark(e_label)?;
    let (c, d) = s.edge_mark(f_label)?;
    Ok(a != c && a != d && b != c && b != d)
}

/// Minimality of a verified sender: deleting any non-signal edge must
/// release the signal constraint, i.e. the reduced graph admits a good
/// coloring with the signals in the configuration the sender forbids.
/// That released coloring is exactly what the chain constructions consume.
///
/// This is deliberately the released-coloring criterion, not "no proper
/// subgraph is a sender" verbatim: the latter would also quantify over
/// subgraphs that drop the signal edges themselves, for which the sender
/// conditions are not even well-posed. Deleting one non-signal edge at a
/// time suffices because releasing is monotone under further deletion.
///
/// Errors with `Precondition` when `s` is not a sender of the given
/// polarity in the first place.
pub fn is_sender_minimal(
    s: &MarkedGraph,
    e_label: &str,
    f_label: &str,
    g: &Graph,
    h: &Graph,
    polarity: Polarity,
    cfg: &SearchConfig,
) -> Result<bool, EngineError> {
    let verdict = verify_sender(s, e_label, f_label, g, h, polarity, cfg)?;
    if !verdict.ok {
        return Err(EngineError::Precondition(format!(
            "not a {} sender (condition {:?} fails)",
            polarity.as_str(),
            verdict.violated_condition
        )));
    }
    let e_pair = s.edge_mark(e_label)?;
    let f_pair = s.edge_mark(f_label)?;
    for x in 0..s.graph.edge_count() {
        let (u, v) = s.graph.edges()[x];
        if (u, v) == normalize(e_pair) || (u, v) == normalize(f_pair) {
            continue;
        }
        let reduced = s.graph.without_edge(x);
        let e_idx = reduced
            .edge_index(e_pair.0, e_pair.1)
            .expect("signal edge survives deletion");
        let f_idx = reduced
            .edge_index(f_pair.0, f_pair.1)
            .expect("signal edge survives deletion");
        let cs = ClauseSystem::new(&reduced, g, h);
        let mut released = false;
        for (ce, cf) in forbidden_signal_pairs(polarity) {
            let fixed = PartialColoring::new().with(e_idx, ce).with(f_idx, cf);
            if cs.find_good(&fixed, cfg)?.is_some() {
                released = true;
                break;
            }
        }
        if !released {
            return Ok(false);
        }
    }
    Ok(true)
}

fn normalize(p: (u32, u32)) -> (u32, u32) {
    (p.0.min(p.1), p.0.max(p.1))
}

/// Exhaustive search for the smallest sender witness, ordered by vertex
/// count, then edge count, then the lexicographic adjacency encoding (the
/// edge-presence bit string over pairs `(0,1), (0,2), ..`), then the
/// lexicographic choice of the marked edge pair. Candidates isomorphic to
/// a fully rejected candidate may be skipped when the canonical-form cache
/// is enabled; the result never depends on that switch.
pub fn search_sender(
    g: &Graph,
    h: &Graph,
    polarity: Polarity,
    max_vertices: usize,
    require_nonadjacent_signals: bool,
    cfg: &SearchConfig,
) -> Result<Option<MarkedGraph>, EngineError> {
    if max_vertices > cfg.sender_vertex_cap {
        return Err(EngineError::SenderCapExceeded {
            requested: max_vertices,
            cap: cfg.sender_vertex_cap,
        });
    }
    for n in 2..=max_vertices {
        let pair_count = n * (n - 1) / 2;
        let mut rejected: BTreeSet<Vec<u8>> = BTreeSet::new();
        for m in 2..=pair_count {
            for code in codes_with_popcount(pair_count, m) {
                let candidate = graph_from_code(n, pair_count, code);
                let key = if cfg.sender_iso_cache {
                    let key = canonical_form(&candidate, None).into_bytes();
                    if rejected.contains(&key) {
                        continue;
                    }
                    Some(key)
                } else {
                    None
                };
                if let Some(found) =
                    try_marks(&candidate, g, h, polarity, require_nonadjacent_signals, cfg)?
                {
                    return Ok(Some(found));
                }
                if let Some(key) = key {
                    rejected.insert(key);
                }
            }
        }
    }
    Ok(None)
}

/// All `bits`-wide words with exactly `ones` set bits, ascending. Since
/// codes are fixed-width, ascending numeric order is ascending
/// lexicographic order of the bit strings.
fn codes_with_popcount(bits: usize, ones: usize) -> impl Iterator<Item = u64> {
    debug_assert!(bits < 64 && ones <= bits);
    let limit = 1u64 << bits;
    let mut current = (1u64 << ones) - 1;
    std::iter::from_fn(move || {
        if current >= limit {
            return None;
        }
        let code = current;
        current = if code == 0 {
            limit
        } else {
            // Gosper's hack: next word with the same popcount.
            let low = code & code.wrapping_neg();
            let ripple = code.wrapping_add(low);
            (((ripple ^ code) >> 2) / low) | ripple
        };
        Some(code)
    })
}

/// Decodes an adjacency bit string: the most significant of `pair_count`
/// bits is pair `(0, 1)`, so ascending `code` is lexicographic order.
fn graph_from_code(n: usize, pair_count: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if code >> (pair_count - 1 - bit) & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

fn try_marks(
    candidate: &Graph,
    g: &Graph,
    h: &Graph,
    polarity: Polarity,
    require_nonadjacent: bool,
    cfg: &SearchConfig,
) -> Result<Option<MarkedGraph>, EngineError> {
    let cs = ClauseSystem::new(candidate, g, h);
    // Sender conditions are symmetric in (e, f), so i < j suffices.
    for i in 0..candidate.edge_count() {
        for j in i + 1..candidate.edge_count() {
            let (a, b) = candidate.edges()[i];
            let (c, d) = candidate.edges()[j];
            if require_nonadjacent && (a == c || a == d || b == c || b == d) {
                continue;
            }
            let verdict = verify_sender_on(&cs, i, j, polarity, cfg)?;
            if verdict.ok {
                let mut marked = MarkedGraph::new(candidate.clone());
                marked.mark_edge("e", a, b)?;
                marked.mark_edge("f", c, d)?;
                return Ok(Some(marked));
            }
        }
    }
    Ok(None)
}

/// Convenience used throughout tests and the pipeline: the 4-edge path
/// with its end edges as signals, the smallest negative sender with
/// non-adjacent signals for path patterns.
pub fn path5_sender() -> MarkedGraph {
    let mut s = MarkedGraph::new(Graph::path(5));
    s.mark_edge("e", 0, 1).unwrap();
    s.mark_edge("f", 3, 4).unwrap();
    s
}
