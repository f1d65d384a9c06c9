//! Sentence corpora for model comparison: a curated list of graph
//! properties plus a bounded deterministic enumeration of small
//! prefix-quantified sentences over a three-variable pool.
//!
//! The corpus is a spot-check instrument, not a completeness argument:
//! agreement on every corpus sentence of rank r is evidence consistent
//! with rank-r equivalence, while any single disagreement is a proof of
//! inequivalence.

use std::collections::BTreeSet;

use super::{parse_formula, Formula};

/// A named sentence with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSentence {
    pub name: String,
    pub text: String,
    pub formula: Formula,
}

fn curated() -> Vec<(&'static str, &'static str)> {
    vec![
        ("nonempty", "exists x. x = x"),
        ("has-self-loop", "exists x. E(x,x)"),
        ("irreflexive", "forall x. !E(x,x)"),
        ("symmetric", "forall x. forall y. (E(x,y) -> E(y,x))"),
        ("has-edge", "exists x. exists y. E(x,y)"),
        ("has-two-vertices", "exists x. exists y. !(x = y)"),
        ("no-isolated-vertex", "forall x. exists y. E(x,y)"),
        ("has-isolated-vertex", "exists x. forall y. !E(x,y)"),
        ("complete", "forall x. forall y. (x = y | E(x,y))"),
        (
            "min-degree-two",
            "forall x. exists y. exists z. ((E(x,y) & E(x,z)) & !(y = z))",
        ),
        (
            "max-degree-one",
            "forall x. forall y. forall z. ((E(x,y) & E(x,z)) -> y = z)",
        ),
        (
            "has-triangle",
            "exists x. exists y. exists z. ((E(x,y) & E(y,z)) & E(z,x))",
        ),
        (
            "radius-two-dominator",
            "exists x. forall y. ((x = y | E(x,y)) | (exists z. (E(x,z) & E(z,y))))",
        ),
        (
            "has-pendant-vertex",
            "exists x. exists y. (E(x,y) & (forall z. (E(x,z) -> z = y)))",
        ),
        // Some pair at distance exactly 4: reachable in four steps but not
        // in three. Distinguishes one long cycle from two short ones.
        (
            "pair-at-distance-four",
            "exists x. exists y. ((exists u. ((exists m. ((x = m | E(x,m)) & (m = u | E(m,u)))) & (exists m. ((u = m | E(u,m)) & (m = y | E(m,y)))))) & !(exists u. ((x = u | E(x,u)) & (exists m. ((u = m | E(u,m)) & (m = y | E(m,y)))))))",
        ),
    ]
}

/// The default corpus: curated graph properties plus generated sentences
/// of rank at most 3 (capped at 200). Deterministic.
pub fn default_corpus() -> Vec<CorpusSentence> {
    let mut out: Vec<CorpusSentence> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for (name, text) in curated() {
        let formula = parse_formula(text).expect("curated sentences parse");
        debug_assert!(formula.is_sentence(), "curated entry {name} must be closed");
        seen.insert(format!("{formula}"));
        out.push(CorpusSentence {
            name: name.to_string(),
            text: text.to_string(),
            formula,
        });
    }
    for (i, formula) in enumerate_sentences(3, 200).into_iter().enumerate() {
        let text = format!("{formula}");
        if seen.insert(text.clone()) {
            out.push(CorpusSentence {
                name: format!("gen-{i}"),
                text,
                formula,
            });
        }
    }
    out
}

/// Bounded deterministic sentence enumeration: quantifier prefixes of
/// depth `k <= max_rank.min(3)` over the pool `x, y, z` (every
/// forall/exists pattern, variables in pool order) paired with small
/// quantifier-free bodies over the prefixed variables. Bodies are atoms,
/// negated atoms, and capped binary combinations, in generation order.
pub fn enumerate_sentences(max_rank: u32, cap: usize) -> Vec<Formula> {
    const POOL: [&str; 3] = ["x", "y", "z"];
    const BODY_CAP: usize = 60;
    let mut out = Vec::new();
    for depth in 1..=(max_rank.min(3) as usize) {
        let vars = &POOL[..depth];
        let bodies = bodies_over(vars, BODY_CAP);
        for pattern in 0..1u32 << depth {
            for body in &bodies {
                let mut sentence = body.clone();
                for (i, var) in vars.iter().enumerate().rev() {
                    sentence = if pattern >> i & 1 == 0 {
                        Formula::forall(var, sentence)
                    } else {
                        Formula::exists(var, sentence)
                    };
                }
                out.push(sentence);
                if out.len() == cap {
                    return out;
                }
            }
        }
    }
    out
}

fn bodies_over(vars: &[&str], cap: usize) -> Vec<Formula> {
    let mut atoms = Vec::new();
    for a in vars {
        for b in vars {
            atoms.push(Formula::edge(a, b));
        }
    }
    for a in vars {
        for b in vars {
            if a != b {
                atoms.push(Formula::equal(a, b));
            }
        }
    }
    let mut bodies: Vec<Formula> = atoms.clone();
    bodies.extend(atoms.iter().cloned().map(Formula::negation));
    'outer: for l in &atoms {
        for r in &atoms {
            if l == r {
                continue;
            }
            for op in [Formula::and, Formula::or] {
                if bodies.len() >= cap {
                    break 'outer;
                }
                bodies.push(op(l.clone(), r.clone()));
            }
        }
    }
    bodies.truncate(cap);
    bodies
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_is_closed_and_deterministic() {
        let corpus = default_corpus();
        assert!(corpus.len() > 100);
        assert!(corpus.iter().all(|e| e.formula.is_sentence()));
        assert_eq!(corpus, default_corpus());
        // Round trip: stored text parses back to the stored formula.
        for entry in &corpus {
            assert_eq!(parse_formula(&entry.text).unwrap(), entry.formula);
        }
    }

    #[test]
    fn generated_ranks_are_bounded() {
        for f in enumerate_sentences(2, 500) {
            assert!(f.quantifier_rank() <= 2);
            assert!(f.is_sentence());
        }
        let rank1: Vec<Formula> = enumerate_sentences(1, 1000);
        assert!(rank1.iter().all(|f| f.quantifier_rank() == 1));
    }

    #[test]
    fn distance_four_sentence_has_rank_four() {
        let corpus = default_corpus();
        let entry = corpus.iter().find(|e| e.name == "pair-at-distance-four").unwrap();
        assert_eq!(entry.formula.quantifier_rank(), 4);
    }
}
