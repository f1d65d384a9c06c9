//! Property suites: algebraic laws of the surgery operations, search
//! oracle agreement, locality invariants, and parser round-trips. Each
//! suite runs 256 randomized cases.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use arrowlab::gadget::join_graphs;
use arrowlab::{
    are_isomorphic, are_r_equivalent, arrows, canon::canonical_form, enumerate_good_colorings,
    find_good_coloring, fo, r_equivalence_bijection, r_type, subgraph_copies, type_census, Color,
    Distance, Graph, PartialColoring, RootedGraph, SearchConfig,
};

use common::{brute_copies, brute_isomorphic, brute_rooted_isomorphic, exhaustive_good_count};

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

prop_compose! {
    /// A graph on 1..=max_n vertices with independently kept edges.
    fn arb_graph(max_n: usize)(n in 1..=max_n)(
        n in Just(n),
        bits in proptest::collection::vec(any::<bool>(), n * (n.saturating_sub(1)) / 2),
    ) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if bits[k] {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::new(n, edges).unwrap()
    }
}

prop_compose! {
    fn arb_permuted_graph(max_n: usize)(g in arb_graph(max_n))(
        g in Just(g),
        seed in any::<u64>(),
    ) -> (Graph, Vec<u32>) {
        let mut rng = common::SplitMix64::new(seed);
        let perm = common::random_permutation(&mut rng, g.vertex_count());
        (g, perm)
    }
}

fn small_patterns() -> Vec<(Graph, Graph)> {
    vec![
        (Graph::complete(3), Graph::complete(3)),
        (Graph::path(3), Graph::path(3)),
        (Graph::path(3), Graph::complete(3)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    // Joining along marked edges is associative up to isomorphism.
    #[test]
    fn edge_join_is_associative(
        f1 in arb_graph(6), f2 in arb_graph(6), f3 in arb_graph(6),
        pick in any::<u64>(),
    ) {
        prop_assume!(f1.edge_count() >= 1 && f2.edge_count() >= 2 && f3.edge_count() >= 1);
        let mut rng = common::SplitMix64::new(pick);
        let e1 = f1.edges()[rng.below(f1.edge_count() as u64) as usize];
        let i2 = rng.below(f2.edge_count() as u64) as usize;
        let mut i3 = rng.below(f2.edge_count() as u64) as usize;
        if i3 == i2 {
            i3 = (i3 + 1) % f2.edge_count();
        }
        let e2 = f2.edges()[i2];
        let e3 = f2.edges()[i3];
        let e4 = f3.edges()[rng.below(f3.edge_count() as u64) as usize];

        // Left grouping: f1 ⊕ (f2 ⊕ f3), joining f1's e1 onto the image of e2.
        let (inner, map_f2, _, _) = join_graphs(&f2, e3, &f3, e4);
        let e2_image = (map_f2.apply(e2.0).unwrap(), map_f2.apply(e2.1).unwrap());
        let (left, _, _, _) = join_graphs(&f1, e1, &inner, e2_image);

        // Right grouping: (f1 ⊕ f2) ⊕ f3, joining the image of e3 onto e4.
        let (outer, _, map_f2r, _) = join_graphs(&f1, e1, &f2, e2);
        let e3_image = (map_f2r.apply(e3.0).unwrap(), map_f2r.apply(e3.1).unwrap());
        let (right, _, _, _) = join_graphs(&outer, e3_image, &f3, e4);

        prop_assert!(are_isomorphic(&left, &right));
    }

    // Surgery count laws: joins drop exactly two vertices and share one
    // edge; identifications drop exactly two vertices, with any further
    // losses accounted for by the collapse counter.
    #[test]
    fn surgery_count_laws(g1 in arb_graph(6), g2 in arb_graph(6), pick in any::<u64>()) {
        prop_assume!(g1.edge_count() >= 1 && g2.edge_count() >= 1);
        let mut rng = common::SplitMix64::new(pick);
        let e1 = g1.edges()[rng.below(g1.edge_count() as u64) as usize];
        let e2 = g2.edges()[rng.below(g2.edge_count() as u64) as usize];
        let (joined, _, _, collapsed) = join_graphs(&g1, e1, &g2, e2);
        prop_assert_eq!(joined.vertex_count(), g1.vertex_count() + g2.vertex_count() - 2);
        prop_assert_eq!(joined.edge_count() + collapsed, g1.edge_count() + g2.edge_count() - 1);

        // Identification inside the disjoint union of the two operands.
        let (both, _, right) = g1.disjoint_union(&g2);
        let shifted = (right.apply(e2.0).unwrap(), right.apply(e2.1).unwrap());
        let mut marked = arrowlab::MarkedGraph::new(both.clone());
        marked.mark_edge("p", e1.0, e1.1).unwrap();
        marked.mark_edge("q", shifted.0, shifted.1).unwrap();
        let r = arrowlab::self_identify(&marked, "p", "q").unwrap();
        prop_assert_eq!(r.graph.graph.vertex_count(), both.vertex_count() - 2);
        prop_assert_eq!(
            r.graph.graph.edge_count() + r.collapsed_edges,
            both.edge_count() - 1
        );
        // Every surviving mark still denotes an edge.
        for (_, (a, b)) in r.graph.edge_marks() {
            prop_assert!(r.graph.graph.has_edge(a, b));
        }
    }

    // Arrowing is monotone under subgraphs.
    #[test]
    fn arrowing_is_monotone(f in arb_graph(7), keep in any::<u64>(), which in 0usize..3) {
        let (g, h) = &small_patterns()[which];
        let kept: Vec<(u32, u32)> = f
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| keep >> (i % 64) & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let sub = Graph::new(f.vertex_count(), kept).unwrap();
        let sub_arrows = arrows(&sub, g, h, &cfg()).unwrap();
        let full_arrows = arrows(&f, g, h, &cfg()).unwrap();
        prop_assert!(!(sub_arrows && !full_arrows), "subgraph arrows but supergraph does not");
    }

    // Swapping the colors swaps the roles of G and H.
    #[test]
    fn color_swap_duality(f in arb_graph(6), which in 0usize..3) {
        let (g, h) = &small_patterns()[which];
        prop_assert_eq!(
            arrows(&f, g, h, &cfg()).unwrap(),
            arrows(&f, h, g, &cfg()).unwrap()
        );
    }

    // Equivalence at a larger radius implies equivalence at a smaller one.
    #[test]
    fn r_equivalence_is_monotone(
        a in arb_graph(10),
        b in arb_graph(10),
        seed in any::<u64>(),
        r in 0u32..3,
    ) {
        // Random pairs plus guaranteed-equivalent relabelings.
        let mut rng = common::SplitMix64::new(seed);
        let perm = common::random_permutation(&mut rng, b.vertex_count());
        for other in [&b, &b.relabel(&perm)] {
            if are_r_equivalent(&a, other, r + 1) {
                prop_assert!(are_r_equivalent(&a, other, r));
            }
        }
        let perm_a = common::random_permutation(&mut rng, a.vertex_count());
        prop_assert!(are_r_equivalent(&a, &a.relabel(&perm_a), r + 1));
    }

    // Canonical rooted encodings agree with brute-force rooted isomorphism.
    #[test]
    fn rooted_canonical_form_is_sound(
        a in arb_graph(6),
        b in arb_graph(6),
        seed in any::<u64>(),
    ) {
        let mut rng = common::SplitMix64::new(seed);
        let root_a = rng.below(a.vertex_count() as u64) as u32;
        let root_b = rng.below(b.vertex_count() as u64) as u32;
        let ra = RootedGraph { graph: a.clone(), root: root_a };
        let rb = RootedGraph { graph: b.clone(), root: root_b };
        let equal_codes = canonical_form(&ra.graph, Some(ra.root))
            == canonical_form(&rb.graph, Some(rb.root));
        prop_assert_eq!(equal_codes, brute_rooted_isomorphic(&ra, &rb));

        // And on a guaranteed-isomorphic relabeling.
        let perm = common::random_permutation(&mut rng, a.vertex_count());
        let pa = a.relabel(&perm);
        prop_assert_eq!(
            canonical_form(&a, Some(root_a)),
            canonical_form(&pa, Some(perm[root_a as usize]))
        );
    }

    // parse(print(f)) is the identity on ASTs.
    #[test]
    fn parser_round_trip(f in arb_formula()) {
        let printed = format!("{f}");
        let reparsed = fo::parse_formula(&printed);
        prop_assert_eq!(reparsed.as_ref(), Ok(&f), "text was: {}", printed);
    }

    // Quantifier rank agrees with an independent recursion.
    #[test]
    fn quantifier_rank_matches_reference(f in arb_formula()) {
        prop_assert_eq!(f.quantifier_rank(), reference_rank(&f));
    }

    // Copy enumeration agrees with the all-injections oracle.
    #[test]
    fn subgraph_copies_match_brute_force(f in arb_graph(7), which in 0usize..4) {
        let patterns = [Graph::complete(3), Graph::path(3), Graph::path(4), Graph::cycle(4)];
        let pattern = &patterns[which];
        let fast: BTreeSet<Vec<usize>> = subgraph_copies(&f, pattern).into_iter().collect();
        prop_assert_eq!(fast, brute_copies(&f, pattern));
    }

    // Isomorphism agrees with the all-bijections oracle.
    #[test]
    fn isomorphism_matches_brute_force(a in arb_graph(7), b in arb_graph(7), seed in any::<u64>()) {
        prop_assert_eq!(are_isomorphic(&a, &b), brute_isomorphic(&a, &b));
        let mut rng = common::SplitMix64::new(seed);
        let perm = common::random_permutation(&mut rng, a.vertex_count());
        prop_assert!(are_isomorphic(&a, &a.relabel(&perm)));
    }

    // Distances are symmetric and satisfy the triangle inequality.
    #[test]
    fn distance_is_a_metric(g in arb_graph(8), seed in any::<u64>()) {
        let mut rng = common::SplitMix64::new(seed);
        let n = g.vertex_count() as u64;
        let (u, v, w) = (
            rng.below(n) as u32,
            rng.below(n) as u32,
            rng.below(n) as u32,
        );
        prop_assert_eq!(g.distance(u, v).unwrap(), g.distance(v, u).unwrap());
        let direct = g.distance(u, w).unwrap();
        let via = g.distance(u, v).unwrap().plus(g.distance(v, w).unwrap());
        prop_assert!(direct <= via);
        prop_assert_eq!(g.distance(u, u).unwrap(), Distance::Finite(0));
    }

    // Deleting in two steps equals deleting the union.
    #[test]
    fn vertex_deletion_composes(g in arb_graph(8), mask1 in any::<u64>(), mask2 in any::<u64>()) {
        let n = g.vertex_count();
        let s1: BTreeSet<u32> = (0..n as u32).filter(|v| mask1 >> v & 1 == 1).collect();
        let s2: BTreeSet<u32> = (0..n as u32).filter(|v| mask2 >> v & 1 == 1).collect();
        let (step1, map1) = g.delete_vertices(&s1).unwrap();
        let s2_mapped: BTreeSet<u32> = s2
            .iter()
            .filter_map(|&v| map1.apply(v))
            .collect();
        let (two_step, _) = step1.delete_vertices(&s2_mapped).unwrap();
        let union: BTreeSet<u32> = s1.union(&s2).copied().collect();
        let (direct, _) = g.delete_vertices(&union).unwrap();
        prop_assert!(are_isomorphic(&two_step, &direct));
    }

    // Disjoint union is associative and commutative up to isomorphism.
    #[test]
    fn disjoint_union_laws(a in arb_graph(5), b in arb_graph(5), c in arb_graph(5)) {
        let (ab, _, _) = a.disjoint_union(&b);
        let (ba, _, _) = b.disjoint_union(&a);
        prop_assert!(are_isomorphic(&ab, &ba));
        let (ab_c, _, _) = ab.disjoint_union(&c);
        let (bc, _, _) = b.disjoint_union(&c);
        let (a_bc, _, _) = a.disjoint_union(&bc);
        prop_assert!(are_isomorphic(&ab_c, &a_bc));
    }

    // The backtracking decision matches full enumeration, and so do counts.
    #[test]
    fn search_matches_exhaustive_enumeration(f in arb_graph(6), which in 0usize..3) {
        let (g, h) = &small_patterns()[which];
        prop_assume!(f.edge_count() <= 16);
        let expected = exhaustive_good_count(&f, g, h);
        let found = enumerate_good_colorings(&f, g, h, None, &cfg()).unwrap();
        prop_assert!(!found.truncated);
        prop_assert_eq!(found.colorings.len() as u64, expected);
        prop_assert_eq!(arrows(&f, g, h, &cfg()).unwrap(), expected == 0);
        for c in found.colorings.iter().take(4) {
            prop_assert!(arrowlab::is_good_coloring(&f, g, h, c).unwrap());
        }
    }

    // Relabeling the host graph never changes the arrowing decision.
    #[test]
    fn arrowing_is_isomorphism_invariant((f, perm) in arb_permuted_graph(6), which in 0usize..3) {
        let (g, h) = &small_patterns()[which];
        prop_assert_eq!(
            arrows(&f, g, h, &cfg()).unwrap(),
            arrows(&f.relabel(&perm), g, h, &cfg()).unwrap()
        );
    }

    // A found coloring extends its pinned edges exactly.
    #[test]
    fn find_respects_fixed_edges(f in arb_graph(6), pin in any::<u64>(), which in 0usize..3) {
        let (g, h) = &small_patterns()[which];
        prop_assume!(f.edge_count() >= 1);
        let mut fixed = PartialColoring::new();
        for e in 0..f.edge_count().min(3) {
            if pin >> e & 1 == 1 {
                let color = if pin >> (e + 8) & 1 == 1 { Color::Blue } else { Color::Red };
                fixed.set(e, color);
            }
        }
        if let Some(c) = find_good_coloring(&f, g, h, &fixed, &cfg()).unwrap() {
            prop_assert!(c.extends(&fixed));
            prop_assert!(arrowlab::is_good_coloring(&f, g, h, &c).unwrap());
        }
    }

    // Census totals count vertices; types are relabeling-invariant.
    #[test]
    fn census_totals_and_relabeling((g, perm) in arb_permuted_graph(8), r in 0u32..3) {
        let census = type_census(&g, r);
        prop_assert_eq!(census.total(), g.vertex_count());
        let relabeled = g.relabel(&perm);
        prop_assert_eq!(census, type_census(&relabeled, r));
        // Individual types follow the relabeling.
        let v = 0u32;
        prop_assert_eq!(
            r_type(&g, v, r).unwrap(),
            r_type(&relabeled, perm[v as usize], r).unwrap()
        );
    }

    // A returned equivalence bijection maps each vertex to one of equal type.
    #[test]
    fn equivalence_bijection_preserves_types((g, perm) in arb_permuted_graph(7), r in 0u32..3) {
        let h = g.relabel(&perm);
        let bij = r_equivalence_bijection(&g, &h, r);
        prop_assert!(bij.is_some());
        let bij = bij.unwrap();
        prop_assert!(bij.is_injective());
        for v in 0..g.vertex_count() as u32 {
            let w = bij.apply(v).unwrap();
            prop_assert_eq!(r_type(&g, v, r).unwrap(), r_type(&h, w, r).unwrap());
        }
    }

    // Evaluation ignores assignment entries for variables that are not free.
    #[test]
    fn evaluation_ignores_bound_assignments(g in arb_graph(5), extra in 0u32..5) {
        prop_assume!((extra as usize) < g.vertex_count());
        let f = fo::parse_formula("forall x. exists y. (E(x,y) | x = y)").unwrap();
        let empty = fo::Assignment::new();
        let mut noisy = fo::Assignment::new();
        noisy.insert("x".into(), extra);
        noisy.insert("unrelated".into(), extra);
        prop_assert_eq!(
            fo::evaluate(&g, &f, &empty).unwrap(),
            fo::evaluate(&g, &f, &noisy).unwrap()
        );
    }
}

fn arb_formula() -> impl Strategy<Value = fo::Formula> {
    let var = prop_oneof![Just("x"), Just("y"), Just("z"), Just("w0")];
    let leaf = (var.clone(), var).prop_map(|(a, b)| {
        if a <= b {
            fo::Formula::edge(a, b)
        } else {
            fo::Formula::equal(a, b)
        }
    });
    leaf.prop_recursive(5, 32, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(fo::Formula::negation),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| fo::Formula::and(l, r)),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| fo::Formula::or(l, r)),
            (prop_oneof![Just("x"), Just("y"), Just("z")], inner.clone())
                .prop_map(|(v, b)| fo::Formula::forall(v, b)),
            (prop_oneof![Just("x"), Just("y"), Just("z")], inner)
                .prop_map(|(v, b)| fo::Formula::exists(v, b)),
        ]
    })
}

fn reference_rank(f: &fo::Formula) -> u32 {
    use fo::Formula::*;
    match f {
        Edge(..) | Equal(..) => 0,
        Not(inner) => reference_rank(inner),
        And(l, r) | Or(l, r) => std::cmp::max(reference_rank(l), reference_rank(r)),
        Forall(_, inner) | Exists(_, inner) => 1 + reference_rank(inner),
    }
}
