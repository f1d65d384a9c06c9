//! Browser bindings for the demo page in `www/`. Three interactive
//! operations, each returning a JSON string the page renders:
//!
//! * [`decide_arrowing`] — decide `F -> (G, H)` and show a good coloring
//!   when one exists;
//! * [`build_witness`] — run the chain construction at a chosen chain
//!   parameter and rank, returning the ring, the pair, and all verdicts;
//! * [`compare_locality`] — type censuses of two graphs at a radius, with
//!   the equivalence verdict.
//!
//! Inputs are small by construction (the page caps the controls), so the
//! default search budget is never a factor.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use arrowlab::fo::default_corpus;
use arrowlab::io::parse_graph;
use arrowlab::{
    build_far_apart_minimal, build_witness_pair, certify, find_good_coloring, type_census,
    verify_explicit_bijection, CertificateStatus, Graph, MarkedGraph, PartialColoring,
    PipelineError, SearchConfig, Verdict3,
};

fn graph_value(g: &Graph) -> Value {
    json!({ "n": g.vertex_count(), "edges": g.edges() })
}

fn error_value(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn preset(name: &str) -> Option<Graph> {
    let (kind, num) = name.split_at(1);
    let n: usize = num.parse().ok()?;
    if n > 16 {
        return None;
    }
    match kind {
        "k" => Some(Graph::complete(n)),
        "p" => Some(Graph::path(n)),
        "c" if n >= 3 => Some(Graph::cycle(n)),
        _ => None,
    }
}

fn graph_from_input(text: &str) -> Result<Graph, String> {
    let trimmed = text.trim();
    if let Some(g) = preset(trimmed) {
        return Ok(g);
    }
    parse_graph(text).map_err(|e| e.to_string())
}

/// The text form of a preset graph (`k4`, `p5`, `c9`, ...), for seeding
/// the page's text areas.
#[wasm_bindgen]
pub fn preset_graph(name: &str) -> String {
    match preset(name.trim()) {
        Some(g) => arrowlab::io::write_graph(&g),
        None => String::new(),
    }
}

/// Decides `F -> (G, H)`. `f_text` is a graph in the text or JSON format
/// (or a preset name); `g_name` and `h_name` are preset names.
#[wasm_bindgen]
pub fn decide_arrowing(f_text: &str, g_name: &str, h_name: &str) -> String {
    let cfg = SearchConfig::default();
    let f = match graph_from_input(f_text) {
        Ok(g) => g,
        Err(e) => return error_value(e),
    };
    if f.vertex_count() > 64 {
        return error_value("demo is capped at 64 vertices");
    }
    let (Some(g), Some(h)) = (preset(g_name), preset(h_name)) else {
        return error_value(format!("unknown preset `{g_name}` or `{h_name}`"));
    };
    match find_good_coloring(&f, &g, &h, &PartialColoring::new(), &cfg) {
        Err(e) => error_value(e),
        Ok(None) => json!({
            "graph": graph_value(&f),
            "arrows": true,
        })
        .to_string(),
        Ok(Some(c)) => json!({
            "graph": graph_value(&f),
            "arrows": false,
            "coloring": c.iter().map(|color| color.as_bit()).collect::<Vec<u8>>(),
        })
        .to_string(),
    }
}

fn path5_sender() -> MarkedGraph {
    let mut s = MarkedGraph::new(Graph::path(5));
    s.mark_edge("e", 0, 1).unwrap();
    s.mark_edge("f", 3, 4).unwrap();
    s
}

fn verdict_value(v: Verdict3) -> Value {
    match v {
        Verdict3::True => json!(true),
        Verdict3::False => json!(false),
        Verdict3::Unknown => Value::Null,
    }
}

/// Runs the chain construction with the path sender at chain parameter
/// `n` and rank `r`, then certifies the resulting pair. Small parameters
/// only; the page offers n in 1..=6 and r in 1..=2.
#[wasm_bindgen]
pub fn build_witness(n: u32, r: u32) -> String {
    if !(1..=8).contains(&n) || !(1..=2).contains(&r) {
        return error_value("supported ranges: n in 1..=8, r in 1..=2");
    }
    let cfg = SearchConfig::default();
    let p3 = Graph::path(3);
    let witness = match build_far_apart_minimal(&path5_sender(), &p3, &p3, n as usize, false, &cfg)
    {
        Ok(w) => w,
        Err(e) => return error_value(e),
    };
    let pair = match build_witness_pair(&witness.marked) {
        Ok(p) => p,
        Err(e) => return error_value(e),
    };
    let corpus = default_corpus();
    let cert = certify(&pair.f1, &pair.f2, &p3, &p3, r, &corpus, &cfg);
    let bijection = match verify_explicit_bijection(&witness.marked, r) {
        Ok(b) => json!(b),
        Err(PipelineError::DistanceTooSmall { got, required }) => {
            json!(format!("not applicable: d(u,v) = {got} < {required}"))
        }
        Err(e) => return error_value(e),
    };
    let u = witness.marked.vertex_mark("u").unwrap();
    let v = witness.marked.vertex_mark("v").unwrap();
    json!({
        "base": graph_value(&witness.marked.graph),
        "u": u,
        "v": v,
        "distanceUV": witness.distance_uv.to_string(),
        "baseArrowMinimal": verdict_value(witness.minimality),
        "f1": graph_value(&cert.f1),
        "f2": graph_value(&cert.f2),
        "censusRadius": cert.radius,
        "censusEqual": cert.hanf.equivalent,
        "arrowsF1": verdict_value(cert.arrows_f1),
        "arrowsF2": verdict_value(cert.arrows_f2),
        "explicitBijection": bijection,
        "foSeparating": cert.fo_comparison.separating.len(),
        "foEvaluated": cert.fo_comparison.rows.len(),
        "success": cert.status == CertificateStatus::Success,
        "status": cert.status.to_string(),
    })
    .to_string()
}

/// Type censuses of two graphs at radius `radius`, plus the equivalence
/// verdict. Types are reported as opaque ids shared between the two
/// censuses so the page can align the rows.
#[wasm_bindgen]
pub fn compare_locality(a_text: &str, b_text: &str, radius: u32) -> String {
    if radius > 8 {
        return error_value("demo radius is capped at 8");
    }
    let a = match graph_from_input(a_text) {
        Ok(g) => g,
        Err(e) => return error_value(format!("first graph: {e}")),
    };
    let b = match graph_from_input(b_text) {
        Ok(g) => g,
        Err(e) => return error_value(format!("second graph: {e}")),
    };
    if a.vertex_count() > 64 || b.vertex_count() > 64 {
        return error_value("demo is capped at 64 vertices");
    }
    let census_a = type_census(&a, radius);
    let census_b = type_census(&b, radius);
    // Stable row ids: all types that occur anywhere, in encoding order.
    let mut all: Vec<_> = census_a.iter().map(|(t, _)| t.clone()).collect();
    all.extend(census_b.iter().map(|(t, _)| t.clone()));
    all.sort();
    all.dedup();
    let rows: Vec<Value> = all
        .iter()
        .map(|t| {
            json!({
                "type": t.hex(),
                "countA": census_a.count(t),
                "countB": census_b.count(t),
            })
        })
        .collect();
    json!({
        "graphA": graph_value(&a),
        "graphB": graph_value(&b),
        "radius": radius,
        "equivalent": census_a == census_b,
        "rows": rows,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decide_reports_arrowing_and_witness() {
        let v: Value = serde_json::from_str(&decide_arrowing("k6", "k3", "k3")).unwrap();
        assert_eq!(v["arrows"], json!(true));
        let v: Value = serde_json::from_str(&decide_arrowing("k5", "k3", "k3")).unwrap();
        assert_eq!(v["arrows"], json!(false));
        assert_eq!(v["coloring"].as_array().unwrap().len(), 10);
        let v: Value = serde_json::from_str(&decide_arrowing("nonsense", "k3", "k3")).unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn witness_demo_succeeds_at_the_right_parameters() {
        let v: Value = serde_json::from_str(&build_witness(4, 1)).unwrap();
        assert_eq!(v["status"], json!("SUCCESS"));
        assert_eq!(v["base"]["n"], json!(27));
        assert_eq!(v["censusEqual"], json!(true));
        // Too little distance for the explicit bijection at n = 1.
        let v: Value = serde_json::from_str(&build_witness(1, 1)).unwrap();
        assert!(v["explicitBijection"].is_string());
        // Rank 2 needs n = 8 (the ring C51).
        let v: Value = serde_json::from_str(&build_witness(8, 2)).unwrap();
        assert_eq!(v["status"], json!("SUCCESS"));
        assert_eq!(v["base"]["n"], json!(51));
        let v: Value = serde_json::from_str(&build_witness(9, 2)).unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn locality_comparison_matches_ground_truth() {
        let c12 = preset_graph("c12");
        let mut split = String::from("p graph 12 12\n");
        for (u, v) in Graph::cycle(6).edges() {
            split.push_str(&format!("e {u} {v}\n"));
        }
        for (u, v) in Graph::cycle(6).edges() {
            split.push_str(&format!("e {} {}\n", u + 6, v + 6));
        }
        let v: Value = serde_json::from_str(&compare_locality(&c12, &split, 2)).unwrap();
        assert_eq!(v["equivalent"], json!(true));
        let v: Value = serde_json::from_str(&compare_locality(&c12, &split, 3)).unwrap();
        assert_eq!(v["equivalent"], json!(false));
    }
}
