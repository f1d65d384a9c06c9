//! Ramsey arrowing, sender and determiner gadgets, graph surgery, and
//! Hanf-locality certification on finite simple graphs.
//!
//! The crate decides `F -> (G, H)` — every red/blue coloring of `F`'s
//! edges contains a red copy of `G` or a blue copy of `H` — verifies the
//! gadget graphs (senders, determiners) used in Ramsey constructions,
//! chains verified senders into arrow-minimal graphs with far-apart
//! distinguished vertices, and certifies that the resulting witness pairs
//! `F ⊔ (F - {u,v})` versus `(F - {u}) ⊔ (F - {v})` are locally
//! indistinguishable at radius 2^r (hence agree on all first-order
//! sentences of quantifier rank r) while differing on arrowing.
//!
//! Everything is deterministic; searches are budgeted and report budget
//! exhaustion as a distinct outcome, never as an answer.

mod bits;
mod mask;

pub mod arrowing;
pub mod canon;
pub mod config;
pub mod error;
pub mod fo;
pub mod gadget;
pub mod graph;
pub mod hanf;
pub mod io;
pub mod iso;
pub mod report;
pub mod sender;
pub mod witness;

pub use arrowing::{
    arrows, enumerate_good_colorings, find_good_coloring, is_arrow_minimal, is_good_coloring,
    ClauseSystem, Color, EdgeColoring, Enumeration, PartialColoring,
};
pub use config::SearchConfig;
pub use error::{BudgetExceeded, EngineError, GraphError, LogicError, MarkError, PipelineError};
pub use gadget::{
    chain_senders, close_chain, edge_join, self_identify, FarVertexChoice, MarkedGraph,
    SurgeryResult,
};
pub use graph::{Distance, Graph, VertexMap};
pub use hanf::{
    are_r_equivalent, ball, hanf_certificate, neighborhood, r_equivalence_bijection, r_type,
    type_census, HanfCertificate, HanfConclusion, NeighborhoodType, RootedGraph, TypeCensus,
};
pub use iso::{are_isomorphic, isomorphism, subgraph_copies};
pub use sender::{
    is_sender_minimal, search_sender, signals_non_adjacent, verify_determiner,
    verify_negative_sender, verify_positive_sender, verify_sender, GadgetVerdict, Polarity,
};
pub use witness::{
    build_far_apart_minimal, build_witness_pair, certify, run_pipeline, verify_explicit_bijection,
    CertificateStatus, FarApartWitness, PipelineRun, Verdict3, WitnessCertificate, WitnessPair,
};
