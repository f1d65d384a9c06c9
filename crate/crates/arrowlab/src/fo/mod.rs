//! First-order formulas over the graph vocabulary (one binary relation
//! `E`, equality, no constants or functions): parsing, quantifier rank,
//! naive Tarskian evaluation, and sentence-corpus comparison of two
//! structures.

mod corpus;
mod parse;

pub use corpus::{default_corpus, enumerate_sentences, CorpusSentence};
pub use parse::{parse_formula, parse_sentences_file, ParseError};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::LogicError;
use crate::graph::Graph;

/// Formula AST. `E` is evaluated symmetrically; terms are variables only.
/// Implication is parser sugar and never appears here.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Edge(String, String),
    Equal(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn negation(inner: Formula) -> Formula {
        Formula::Not(Box::new(inner))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(body))
    }

    pub fn edge(a: &str, b: &str) -> Formula {
        Formula::Edge(a.to_string(), b.to_string())
    }

    pub fn equal(a: &str, b: &str) -> Formula {
        Formula::Equal(a.to_string(), b.to_string())
    }

    /// Maximum quantifier nesting depth: atoms rank 0, negation
    /// transparent, binary connectives take the maximum, each quantifier
    /// adds one.
    pub fn quantifier_rank(&self) -> u32 {
        match self {
            Formula::Edge(..) | Formula::Equal(..) => 0,
            Formula::Not(inner) => inner.quantifier_rank(),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.quantifier_rank().max(r.quantifier_rank())
            }
            Formula::Forall(_, inner) | Formula::Exists(_, inner) => inner.quantifier_rank() + 1,
        }
    }

    pub fn free_variables(&self) -> BTreeSet<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Edge(a, b) | Formula::Equal(a, b) => {
                    for t in [a, b] {
                        if !bound.iter().any(|v| v == t) {
                            out.insert(t.clone());
                        }
                    }
                }
                Formula::Not(inner) => walk(inner, bound, out),
                Formula::And(l, r) | Formula::Or(l, r) => {
                    walk(l, bound, out);
                    walk(r, bound, out);
                }
                Formula::Forall(v, inner) | Formula::Exists(v, inner) => {
                    bound.push(v.clone());
                    walk(inner, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }
}

/// Canonical printing: binaries fully parenthesized, quantifier bodies
/// extend to the right (so quantified operands of a binary connective get
/// their own parentheses). `parse_formula` inverts this exactly.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Quantifiers swallow everything to their right; fence them off
        // when they appear as an operand.
        let operand = |g: &Formula| -> String {
            match g {
                Formula::Forall(..) | Formula::Exists(..) => format!("({g})"),
                _ => format!("{g}"),
            }
        };
        match self {
            Formula::Edge(a, b) => write!(f, "E({a},{b})"),
            Formula::Equal(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(inner) => match **inner {
                Formula::Edge(..) => write!(f, "!{inner}"),
                _ => write!(f, "!({inner})"),
            },
            Formula::And(l, r) => write!(f, "({} & {})", operand(l), operand(r)),
            Formula::Or(l, r) => write!(f, "({} | {})", operand(l), operand(r)),
            Formula::Forall(v, inner) => write!(f, "forall {v}. {inner}"),
            Formula::Exists(v, inner) => write!(f, "exists {v}. {inner}"),
        }
    }
}

/// A partial map from variable names to vertices.
pub type Assignment = BTreeMap<String, u32>;

/// Standard Tarskian satisfaction over a graph: quantifiers range over all
/// vertices, `E` is symmetric adjacency, equality is vertex identity.
/// Free variables must be covered by `assignment`.
pub fn evaluate(g: &Graph, formula: &Formula, assignment: &Assignment) -> Result<bool, LogicError> {
    for (var, &vertex) in assignment {
        if vertex as usize >= g.vertex_count() {
            return Err(LogicError::AssignmentOutOfRange {
                var: var.clone(),
                vertex,
                n: g.vertex_count(),
            });
        }
    }
    let mut env = assignment.clone();
    eval_rec(g, formula, &mut env)
}

fn eval_rec(g: &Graph, formula: &Formula, env: &mut Assignment) -> Result<bool, LogicError> {
    let lookup = |env: &Assignment, name: &str| -> Result<u32, LogicError> {
        env.get(name)
            .copied()
            .ok_or_else(|| LogicError::UnboundVariable(name.to_string()))
    };
    match formula {
        Formula::Edge(a, b) => Ok(g.has_edge(lookup(env, a)?, lookup(env, b)?)),
        Formula::Equal(a, b) => Ok(lookup(env, a)? == lookup(env, b)?),
        Formula::Not(inner) => Ok(!eval_rec(g, inner, env)?),
        Formula::And(l, r) => Ok(eval_rec(g, l, env)? && eval_rec(g, r, env)?),
        Formula::Or(l, r) => Ok(eval_rec(g, l, env)? || eval_rec(g, r, env)?),
        Formula::Forall(v, inner) => {
            let saved = env.get(v).copied();
            for vertex in 0..g.vertex_count() as u32 {
                env.insert(v.clone(), vertex);
                if !eval_rec(g, inner, env)? {
                    restore(env, v, saved);
                    return Ok(false);
                }
            }
            restore(env, v, saved);
            Ok(true)
        }
        Formula::Exists(v, inner) => {
            let saved = env.get(v).copied();
            for vertex in 0..g.vertex_count() as u32 {
                env.insert(v.clone(), vertex);
                if eval_rec(g, inner, env)? {
                    restore(env, v, saved);
                    return Ok(true);
                }
            }
            restore(env, v, saved);
            Ok(false)
        }
    }
}

fn restore(env: &mut Assignment, var: &str, saved: Option<u32>) {
    match saved {
        Some(v) => {
            env.insert(var.to_string(), v);
        }
        None => {
            env.remove(var);
        }
    }
}

/// One row of a model comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareRow {
    pub name: String,
    pub text: String,
    pub rank: u32,
    pub holds_in_a: bool,
    pub holds_in_b: bool,
}

impl CompareRow {
    pub fn agree(&self) -> bool {
        self.holds_in_a == self.holds_in_b
    }
}

/// Result of evaluating a sentence corpus on two graphs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
    /// Indices into `rows` of the sentences the two graphs disagree on.
    pub separating: Vec<usize>,
}

/// Evaluates every corpus sentence of quantifier rank at most `max_rank`
/// on both graphs and records agreements and separations. Errors if a
/// corpus entry has free variables.
pub fn compare_models(
    a: &Graph,
    b: &Graph,
    corpus: &[CorpusSentence],
    max_rank: u32,
) -> Result<CompareReport, LogicError> {
    for (index, entry) in corpus.iter().enumerate() {
        if !entry.formula.is_sentence() {
            let free: Vec<String> = entry.formula.free_variables().into_iter().collect();
            return Err(LogicError::NonSentence {
                index,
                free: free.join(", "),
            });
        }
    }
    let selected: Vec<&CorpusSentence> = corpus
        .iter()
        .filter(|e| e.formula.quantifier_rank() <= max_rank)
        .collect();

    let eval_one = |entry: &&CorpusSentence| -> CompareRow {
        let empty = Assignment::new();
        CompareRow {
            name: entry.name.clone(),
            text: entry.text.clone(),
            rank: entry.formula.quantifier_rank(),
            holds_in_a: evaluate(a, &entry.formula, &empty).expect("sentences have no free vars"),
            holds_in_b: evaluate(b, &entry.formula, &empty).expect("sentences have no free vars"),
        }
    };

    #[cfg(feature = "parallel")]
    let rows: Vec<CompareRow> = {
        use rayon::prelude::*;
        selected.par_iter().map(eval_one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<CompareRow> = selected.iter().map(eval_one).collect();

    let separating = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.agree())
        .map(|(i, _)| i)
        .collect();
    Ok(CompareReport { rows, separating })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentence(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    #[test]
    fn quantifier_rank_cases() {
        assert_eq!(Formula::edge("x", "y").quantifier_rank(), 0);
        assert_eq!(sentence("forall x. exists y. E(x,y)").quantifier_rank(), 2);
        let f = parse_formula("(exists x. E(x,x)) & (exists y. exists z. E(y,z))").unwrap();
        assert_eq!(f.quantifier_rank(), 2);
        assert_eq!(
            sentence("!(forall x. E(x,x))").quantifier_rank(),
            1,
            "negation is rank-transparent"
        );
    }

    #[test]
    fn evaluation_cases() {
        let has_edge = sentence("exists x. exists y. E(x,y)");
        let empty = Assignment::new();
        assert!(evaluate(&Graph::complete(2), &has_edge, &empty).unwrap());
        assert!(!evaluate(&Graph::empty(3), &has_edge, &empty).unwrap());

        // E is symmetric and irreflexive.
        let mut env = Assignment::new();
        env.insert("a".into(), 1);
        env.insert("b".into(), 0);
        assert!(evaluate(&Graph::path(2), &Formula::edge("a", "b"), &env).unwrap());
        env.insert("b".into(), 1);
        assert!(!evaluate(&Graph::path(2), &Formula::edge("a", "b"), &env).unwrap());

        let unbound = evaluate(&Graph::path(2), &Formula::edge("a", "q"), &env);
        assert_eq!(unbound, Err(LogicError::UnboundVariable("q".into())));
    }

    #[test]
    fn evaluation_ignores_irrelevant_assignments() {
        let f = sentence("forall x. exists y. E(x,y)");
        let mut env = Assignment::new();
        env.insert("z".into(), 2);
        let g = Graph::cycle(4);
        assert_eq!(
            evaluate(&g, &f, &env).unwrap(),
            evaluate(&g, &f, &Assignment::new()).unwrap()
        );
    }

    #[test]
    fn quantifier_shadowing_restores_outer_binding() {
        // exists x. (E(x,y) with y bound outside by the assignment)
        let f = parse_formula("exists x. (E(x,y) & (exists y. !E(x,y)))").unwrap();
        let mut env = Assignment::new();
        env.insert("y".into(), 0);
        // C4: vertex 1 is adjacent to 0 and not adjacent to 2.
        assert!(evaluate(&Graph::cycle(4), &f, &env).unwrap());
    }

    #[test]
    fn compare_models_cases() {
        let c12 = Graph::cycle(12);
        let (split, _, _) = Graph::cycle(6).disjoint_union(&Graph::cycle(6));
        let corpus = default_corpus();

        // Locally equivalent at radius 2, so rank-1 sentences cannot split.
        let report = compare_models(&c12, &split, &corpus, 1).unwrap();
        assert!(report.separating.is_empty());

        // At rank 4 the curated distance-four sentence separates them.
        let report = compare_models(&c12, &split, &corpus, 4).unwrap();
        assert!(!report.separating.is_empty());
        let row = &report.rows[report.separating[0]];
        assert!(row.holds_in_a && !row.holds_in_b);

        let report = compare_models(&c12, &c12, &corpus, 4).unwrap();
        assert!(report.separating.is_empty());
    }

    #[test]
    fn compare_models_rejects_open_formulas() {
        let bad = vec![CorpusSentence {
            name: "open".into(),
            text: "E(x,y)".into(),
            formula: Formula::edge("x", "y"),
        }];
        let err = compare_models(&Graph::path(2), &Graph::path(2), &bad, 3);
        assert!(matches!(err, Err(LogicError::NonSentence { index: 0, .. })));
    }
}
