//! Independent bracket evaluator: crossing ports joined by strand edges,
//! smoothed recursively, loops counted by depth-first search.

use std::collections::BTreeMap;

use braidvol::allastate::AllAState;
use braidvol::jonesoracle::{kauffman_bracket, stable_penultimate_coefficient, LaurentPolynomial};
use braidvol::SyllableWord;
use proptest::prelude::*;

type Poly = BTreeMap<i64, i64>;

struct PortGraph {
    /// Edges that exist regardless of smoothing.
    strand_edges: Vec<(usize, usize)>,
    /// Ports NW, NE, SW, SE of each crossing and its sign.
    crossings: Vec<([usize; 4], bool)>,
    nodes: usize,
}

fn port_graph(n: usize, letters: &[i32]) -> PortGraph {
    let mut nodes = n;
    let tops: Vec<usize> = (0..n).collect();
    let mut current = tops.clone();
    let mut strand_edges = Vec::new();
    let mut crossings = Vec::new();
    for &l in letters {
        let g = l.unsigned_abs() as usize;
        let ports = [nodes, nodes + 1, nodes + 2, nodes + 3];
        nodes += 4;
        strand_edges.push((current[g - 1], ports[0]));
        strand_edges.push((current[g], ports[1]));
        current[g - 1] = ports[2];
        current[g] = ports[3];
        crossings.push((ports, l > 0));
    }
    for p in 0..n {
        if current[p] == tops[p] {
            strand_edges.push((tops[p], tops[p]));
        } else {
            strand_edges.push((current[p], tops[p]));
        }
    }
    PortGraph {
        strand_edges,
        crossings,
        nodes,
    }
}

fn count_loops(nodes: usize, edges: &[(usize, usize)]) -> usize {
    let mut adjacency = vec![Vec::new(); nodes];
    for &(u, v) in edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let mut seen = vec![false; nodes];
    let mut loops = 0;
    for start in 0..nodes {
        if seen[start] || adjacency[start].is_empty() {
            continue;
        }
        loops += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    loops
}

fn add(a: &mut Poly, b: &Poly, shift: i64) {
    for (&d, &c) in b {
        *a.entry(d + shift).or_insert(0) += c;
    }
    a.retain(|_, c| *c != 0);
}

fn delta_power(k: usize) -> Poly {
    let mut p: Poly = BTreeMap::from([(0, 1)]);
    for _ in 0..k {
        let mut next = Poly::new();
        for (&d, &c) in &p {
            *next.entry(d + 2).or_insert(0) -= c;
            *next.entry(d - 2).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        p = next;
    }
    p
}

fn skein(graph: &PortGraph, index: usize, edges: &mut Vec<(usize, usize)>) -> Poly {
    if index == graph.crossings.len() {
        return delta_power(count_loops(graph.nodes, edges) - 1);
    }
    let ([nw, ne, sw, se], positive) = graph.crossings[index];
    let vertical = [(nw, sw), (ne, se)];
    let horizontal = [(nw, ne), (sw, se)];
    let (a_pair, b_pair) = if positive {
        (vertical, horizontal)
    } else {
        (horizontal, vertical)
    };
    let mut out = Poly::new();
    for (pair, shift) in [(a_pair, 1), (b_pair, -1)] {
        edges.extend(pair);
        let sub = skein(graph, index + 1, edges);
        edges.truncate(edges.len() - 2);
        add(&mut out, &sub, shift);
    }
    out
}

fn skein_bracket(word: &SyllableWord) -> LaurentPolynomial {
    let graph = port_graph(word.strands(), &word.letters());
    let mut edges = graph.strand_edges.clone();
    let poly = skein(&graph, 0, &mut edges);
    LaurentPolynomial::from_terms(poly)
}

fn word_strategy() -> impl Strategy<Value = SyllableWord> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec(
            (1..n, prop::sample::select(vec![-3, -2, -1, 1, 2, 3])),
            0..5,
        )
        .prop_map(move |pairs| SyllableWord::from_pairs(n, &pairs).unwrap())
        .prop_filter("at most 11 crossings", |w| w.crossing_count() <= 11)
    })
}

#[test]
fn right_trefoil_matches_table_value() {
    let w = SyllableWord::from_pairs(2, &[(1, 3)]).unwrap();
    assert_eq!(
        skein_bracket(&w),
        LaurentPolynomial::from_terms([(5, -1), (-3, -1), (-7, 1)])
    );
    assert_eq!(kauffman_bracket(&w, 20).unwrap(), skein_bracket(&w));
}

#[test]
fn unknot_and_unlinks() {
    for n in 1..=4 {
        let w = SyllableWord::from_pairs(n, &[]).unwrap();
        let expected = LaurentPolynomial::delta().pow(n as u32 - 1);
        assert_eq!(skein_bracket(&w), expected);
        assert_eq!(kauffman_bracket(&w, 20).unwrap(), expected);
    }
}

#[test]
fn state_sum_examples_against_skein() {
    for (n, pairs) in [
        (3, vec![(1, -3), (2, -3)]),
        (3, vec![(1, -3), (2, -3), (1, -3), (2, -3)]),
        (3, vec![(1, 2), (2, -1), (1, -3), (2, -2)]),
        (4, vec![(2, 2), (1, -3), (3, -3), (2, -4), (1, -3), (3, -4)]),
    ] {
        let w = SyllableWord::from_pairs(n, &pairs).unwrap();
        assert_eq!(kauffman_bracket(&w, 20).unwrap(), skein_bracket(&w), "{w}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn state_sum_agrees_with_skein(w in word_strategy()) {
        prop_assert_eq!(kauffman_bracket(&w, 20).unwrap(), skein_bracket(&w));
    }

    #[test]
    fn mirror_is_degree_negation(w in word_strategy()) {
        let b = kauffman_bracket(&w, 20).unwrap();
        prop_assert_eq!(kauffman_bracket(&w.mirror(), 20).unwrap(), b.invert_variable());
    }

    #[test]
    fn penultimate_matches_reduced_graph(w in word_strategy()) {
        let state = AllAState::build(&w);
        if state.is_a_adequate() && !w.is_empty() {
            let summary = stable_penultimate_coefficient(&w, 20).unwrap();
            prop_assert_eq!(summary.num_all_a_circles, state.circles().len());
            prop_assert_eq!(summary.top_coefficient.abs(), 1);
            if state.word().is_cyclically_reduced() && braidvol::allastate::is_connected_closure(&w) {
                prop_assert_eq!(summary.penultimate_abs as i64, 1 + state.reduced_graph().neg_chi);
            }
        } else if !state.is_a_adequate() {
            prop_assert!(stable_penultimate_coefficient(&w, 20).is_err());
        }
    }
}
