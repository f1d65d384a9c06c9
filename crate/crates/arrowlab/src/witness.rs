//! End-to-end pipeline: from a verified minimal negative sender to a
//! certified pair of graphs that are locally equivalent at radius 2^r yet
//! differ on arrowing.
//!
//! The construction chains `2n + 1` sender copies, closes the chain into a
//! ring, and takes `F1 = F ⊔ (F - {u,v})`, `F2 = (F - {u}) ⊔ (F - {v})`.
//! Arrow-minimality of `F` makes `F1` arrow and `F2` not; the far-apart
//! marks make the two sides locally indistinguishable.

use std::collections::BTreeSet;
use std::fmt;

use crate::arrowing::{arrows, is_arrow_minimal};
use crate::config::SearchConfig;
use crate::error::{BudgetExceeded, PipelineError};
use crate::fo::{compare_models, CompareReport, CorpusSentence};
use crate::gadget::{chain_senders, close_chain, FarVertexChoice, MarkedGraph};
use crate::graph::{Distance, Graph, VertexMap};
use crate::hanf::{hanf_certificate, r_type, HanfCertificate};
use crate::sender::{is_sender_minimal, signals_non_adjacent, verify_sender, Polarity};

/// A yes/no sub-verdict that may be unresolved when a budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict3 {
    True,
    False,
    Unknown,
}

impl Verdict3 {
    fn from_result(r: Result<bool, BudgetExceeded>) -> Verdict3 {
        match r {
            Ok(true) => Verdict3::True,
            Ok(false) => Verdict3::False,
            Err(BudgetExceeded) => Verdict3::Unknown,
        }
    }

    pub fn is_definite(self) -> bool {
        self != Verdict3::Unknown
    }
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict3::True => "true",
            Verdict3::False => "false",
            Verdict3::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// Output of [`build_far_apart_minimal`]: the closed chain with its two
/// distinguished vertices and the measured guarantees.
#[derive(Debug, Clone)]
pub struct FarApartWitness {
    /// The constructed graph, with vertex marks `u` and `v`.
    pub marked: MarkedGraph,
    pub distance_uv: Distance,
    /// Arrow-minimality of the constructed graph (budgeted re-check).
    pub minimality: Verdict3,
    /// True when the caller skipped the sender-minimality precondition.
    pub minimality_waived: bool,
}

/// Builds an arrow-minimal graph with two vertices at distance at least
/// `n` by chaining `2n + 1` copies of a minimal negative sender with
/// non-adjacent signals and closing the ring.
///
/// Preconditions are verified, not assumed: the sender conditions, signal
/// non-adjacency, and (unless `waive_minimality`) sender minimality. The
/// distance guarantee is a hard postcondition; arrow-minimality of the
/// result is re-checked within budget and reported.
pub fn build_far_apart_minimal(
    s: &MarkedGraph,
    g: &Graph,
    h: &Graph,
    n: usize,
    waive_minimality: bool,
    cfg: &SearchConfig,
) -> Result<FarApartWitness, PipelineError> {
    if n == 0 {
        return Err(PipelineError::BadChainParameter);
    }
    let verdict = verify_sender(s, "e", "f", g, h, Polarity::Negative, cfg)?;
    if !verdict.ok {
        return Err(PipelineError::NotASender {
            condition: verdict.violated_condition,
        });
    }
    if !signals_non_adjacent(s, "e", "f")? {
        return Err(PipelineError::AdjacentSignals);
    }
    if !waive_minimality && !is_sender_minimal(s, "e", "f", g, h, Polarity::Negative, cfg)? {
        return Err(PipelineError::NotMinimal);
    }

    let chain = chain_senders(s, 2 * n + 1)?;
    let closed = close_chain(&chain, n, FarVertexChoice::MiddleCopy)?;
    let u = closed.vertex_mark("u")?;
    let v = closed.vertex_mark("v")?;
    let distance_uv = closed.graph.distance(u, v)?;
    if distance_uv < Distance::Finite(n as u32) {
        return Err(PipelineError::DistanceTooSmall {
            got: distance_uv.to_string(),
            required: n.to_string(),
        });
    }
    let minimality = Verdict3::from_result(is_arrow_minimal(&closed.graph, g, h, cfg));
    Ok(FarApartWitness {
        marked: closed,
        distance_uv,
        minimality,
        minimality_waived: waive_minimality,
    })
}

/// The two sides of the construction, with the copy maps needed to talk
/// about "the copy of w" on either side.
#[derive(Debug, Clone)]
pub struct WitnessPair {
    /// `F ⊔ (F - {u, v})`.
    pub f1: Graph,
    /// `(F - {u}) ⊔ (F - {v})`.
    pub f2: Graph,
    /// Original graph vertices into the full-F side of `f1`.
    pub into_f1_full: VertexMap,
    /// Surviving vertices into the deleted side of `f1`.
    pub into_f1_deleted: VertexMap,
    /// Surviving vertices into the `F - {u}` side of `f2`.
    pub into_f2_minus_u: VertexMap,
    /// Surviving vertices into the `F - {v}` side of `f2`.
    pub into_f2_minus_v: VertexMap,
}

/// Builds `F1 = F ⊔ (F - {u, v})` and `F2 = (F - {u}) ⊔ (F - {v})` from a
/// graph marked with distinct vertices `u` and `v`. Both sides have
/// `2|F| - 2` vertices.
pub fn build_witness_pair(f: &MarkedGraph) -> Result<WitnessPair, PipelineError> {
    let u = f.vertex_mark("u")?;
    let v = f.vertex_mark("v")?;
    if u == v {
        return Err(PipelineError::CoincidentMarks);
    }
    let base = &f.graph;
    let (minus_uv, map_uv) = base.delete_vertices(&BTreeSet::from([u, v]))?;
    let (minus_u, map_u) = base.delete_vertices(&BTreeSet::from([u]))?;
    let (minus_v, map_v) = base.delete_vertices(&BTreeSet::from([v]))?;

    let (f1, left1, right1) = base.disjoint_union(&minus_uv);
    let (f2, left2, right2) = minus_u.disjoint_union(&minus_v);

    Ok(WitnessPair {
        f1,
        f2,
        into_f1_full: left1,
        into_f1_deleted: map_uv.then(&right1),
        into_f2_minus_u: map_u.then(&left2),
        into_f2_minus_v: map_v.then(&right2),
    })
}

/// Constructs the explicit piecewise bijection from the vertices of `F1`
/// to the vertices of `F2` and checks that it is bijective and preserves
/// radius-2^r types:
///
/// * on the `F - {u, v}` side, vertices near `u` go to their copy in
///   `F - {u}`, vertices near `v` to their copy in `F - {v}`, and far
///   vertices to `F - {u}`;
/// * on the full-`F` side, vertices near `u` go to `F - {v}`, vertices
///   near `v` to `F - {u}`, and far vertices to `F - {v}`;
///
/// where "near" means within distance 2^r in `F`. Requires
/// `d(u, v) >= 2^(r+1)`; the check itself reports whether the map works.
pub fn verify_explicit_bijection(f: &MarkedGraph, r: u32) -> Result<bool, PipelineError> {
    let u = f.vertex_mark("u")?;
    let v = f.vertex_mark("v")?;
    let radius = 1u32.checked_shl(r).unwrap_or(u32::MAX);
    let required = Distance::Finite(radius.saturating_mul(2));
    let duv = f.graph.distance(u, v)?;
    if duv < required {
        return Err(PipelineError::DistanceTooSmall {
            got: duv.to_string(),
            required: required.to_string(),
        });
    }
    let pair = build_witness_pair(f)?;
    let du = f.graph.bfs_distances(u)?;
    let dv = f.graph.bfs_distances(v)?;
    let near = |dist: &[Distance], w: u32| dist[w as usize] <= Distance::Finite(radius);

    let n1 = pair.f1.vertex_count();
    let mut image: Vec<Option<u32>> = vec![None; n1];

    // Deleted side of F1: every original vertex except u and v.
    for w in 0..f.graph.vertex_count() as u32 {
        if w == u || w == v {
            continue;
        }
        let source = pair.into_f1_deleted.apply(w).expect("w survives");
        let target = if near(&du, w) {
            pair.into_f2_minus_u.apply(w)
        } else if near(&dv, w) {
            pair.into_f2_minus_v.apply(w)
        } else {
            pair.into_f2_minus_u.apply(w)
        };
        image[source as usize] = target;
    }
    // Full side of F1: every original vertex.
    for w in 0..f.graph.vertex_count() as u32 {
        let source = pair.into_f1_full.apply(w).expect("total");
        let target = if near(&du, w) {
            pair.into_f2_minus_v.apply(w)
        } else if near(&dv, w) {
            pair.into_f2_minus_u.apply(w)
        } else {
            pair.into_f2_minus_v.apply(w)
        };
        image[source as usize] = target;
    }

    // Bijectivity.
    let mut seen = vec![false; pair.f2.vertex_count()];
    for target in image.iter() {
        let Some(t) = target else { return Ok(false) };
        if seen[*t as usize] {
            return Ok(false);
        }
        seen[*t as usize] = true;
    }
    if seen.iter().any(|s| !s) {
        return Ok(false);
    }

    // Type preservation at radius 2^r.
    for (source, target) in image.iter().enumerate() {
        let t1 = r_type(&pair.f1, source as u32, radius)?;
        let t2 = r_type(&pair.f2, target.unwrap(), radius)?;
        if t1 != t2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Overall status of a certification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateStatus {
    /// Locally equivalent at radius 2^r, `F1` arrows, `F2` does not.
    Success,
    /// Some sub-verdict hit its budget; nothing was contradicted.
    Partial,
    /// The census check failed.
    NotLocallyEquivalent,
    /// Locally equivalent, but arrowing does not separate the two sides.
    NoArrowingSeparation,
}

impl fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertificateStatus::Success => "SUCCESS",
            CertificateStatus::Partial => "PARTIAL",
            CertificateStatus::NotLocallyEquivalent => "NOT-LOCALLY-EQUIVALENT",
            CertificateStatus::NoArrowingSeparation => "NO-ARROWING-SEPARATION",
        };
        write!(f, "{s}")
    }
}

/// Everything a certification run measured, with three-valued sub-results
/// where budgets apply.
#[derive(Debug, Clone)]
pub struct WitnessCertificate {
    pub rank: u32,
    pub radius: u32,
    pub f1: Graph,
    pub f2: Graph,
    pub hanf: HanfCertificate,
    pub arrows_f1: Verdict3,
    pub arrows_f2: Verdict3,
    pub fo_comparison: CompareReport,
    pub status: CertificateStatus,
    pub warnings: Vec<String>,
}

/// Certifies a candidate pair: census equality at radius 2^r, the two
/// arrowing decisions, and a corpus spot-check at rank r. `SUCCESS` needs
/// local equivalence, `arrows(F1)` and `not arrows(F2)`; budget exhaustion
/// degrades to `PARTIAL` rather than guessing.
pub fn certify(
    f1: &Graph,
    f2: &Graph,
    g: &Graph,
    h: &Graph,
    r: u32,
    corpus: &[CorpusSentence],
    cfg: &SearchConfig,
) -> WitnessCertificate {
    assert!(r >= 1, "certification is stated for rank r >= 1");
    let mut warnings = Vec::new();
    // A disconnected pattern can form copies straddling the components of
    // a disjoint union, which the union-side goodness argument does not
    // cover; everything is still decided computationally, so this is a
    // warning, not an error.
    for (name, pattern) in [("G", g), ("H", h)] {
        if !pattern.is_connected() {
            warnings.push(format!("pattern {name} is disconnected"));
        }
    }
    let hanf = hanf_certificate(f1, f2, r);
    let arrows_f1 = Verdict3::from_result(arrows(f1, g, h, cfg));
    let arrows_f2 = Verdict3::from_result(arrows(f2, g, h, cfg));
    let fo_comparison =
        compare_models(f1, f2, corpus, r).expect("default corpus entries are sentences");

    let status = if !arrows_f1.is_definite() || !arrows_f2.is_definite() {
        CertificateStatus::Partial
    } else if !hanf.equivalent {
        CertificateStatus::NotLocallyEquivalent
    } else if arrows_f1 == Verdict3::True && arrows_f2 == Verdict3::False {
        CertificateStatus::Success
    } else {
        CertificateStatus::NoArrowingSeparation
    };
    WitnessCertificate {
        rank: r,
        radius: 1u32.checked_shl(r).unwrap_or(u32::MAX),
        f1: f1.clone(),
        f2: f2.clone(),
        hanf,
        arrows_f1,
        arrows_f2,
        fo_comparison,
        status,
        warnings,
    }
}

/// A full pipeline run, from sender to certificate.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub witness: FarApartWitness,
    pub pair: WitnessPair,
    pub certificate: WitnessCertificate,
    pub explicit_bijection: Option<bool>,
    pub chain_parameter: usize,
}

/// Runs the whole construction at rank `r`: chains the sender with
/// `n = 2^(r+1)` by default (enough distance for the explicit bijection),
/// builds the pair, and certifies it.
pub fn run_pipeline(
    s: &MarkedGraph,
    g: &Graph,
    h: &Graph,
    r: u32,
    n_override: Option<usize>,
    corpus: &[CorpusSentence],
    cfg: &SearchConfig,
) -> Result<PipelineRun, PipelineError> {
    assert!(r >= 1, "the pipeline is stated for rank r >= 1");
    let n = n_override.unwrap_or_else(|| 1usize.checked_shl(r + 1).expect("rank too large"));
    let witness = build_far_apart_minimal(s, g, h, n, false, cfg)?;
    let pair = build_witness_pair(&witness.marked)?;
    let certificate = certify(&pair.f1, &pair.f2, g, h, r, corpus, cfg);
    let explicit_bijection = match verify_explicit_bijection(&witness.marked, r) {
        Ok(b) => Some(b),
        Err(PipelineError::DistanceTooSmall { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(PipelineRun {
        witness,
        pair,
        certificate,
        explicit_bijection,
        chain_parameter: n,
    })
}
