use safeset::polytool::{
    binomial, classify, coefficient_table, connected_codes, corpus_crosscheck, graph_for_code,
    is_two_connected, is_two_connected_by_coefficients, DEFAULT_POLY_CAP,
};
use safeset::random;
use safeset::safe::{self, SolverConfig};
use safeset::{Execution, Graph, WeightedGraph};

/// q(i, j) by listing every subset and counting components via the graph API.
fn naive_table(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.order();
    let mut q = vec![vec![0u64; n + 1]; n + 1];
    for mask in 1u64..1 << n {
        let s = safeset::VertexSubset::from_mask(mask);
        q[s.len()][safeset::components(g, &s).len()] += 1;
    }
    q
}

#[test]
fn tables_match_naive_count_on_order_five() {
    for code in connected_codes(5) {
        let g = graph_for_code(5, code);
        let t = coefficient_table(&g, DEFAULT_POLY_CAP, Execution::Parallel).unwrap();
        let naive = naive_table(&g);
        for i in 1..=5 {
            for j in 1..=i {
                assert_eq!(t.get(i, j), naive[i][j]);
            }
            assert_eq!(naive[i].iter().sum::<u64>(), binomial(5, i));
        }
        assert_eq!(is_two_connected_by_coefficients(&t), is_two_connected(&g));
    }
}

#[test]
fn complete_graphs_and_cycles_keep_half_the_weight() {
    let cfg = SolverConfig::default();
    let mut rng = random::rng(77);
    for n in 3..=10 {
        for g in [Graph::complete(n), Graph::cycle(n)] {
            for _ in 0..100 {
                let w = random::integer_weights(&mut rng, n, 1, 1000);
                let wg = WeightedGraph::new(g.clone(), w).unwrap();
                let s = safe::safe_number(&wg, &cfg).unwrap().optimum;
                assert!(&s + &s >= wg.total_weight());
            }
        }
    }
}

#[test]
fn corpus_six_has_no_disagreement() {
    let r = corpus_crosscheck(6, 7, 5, Execution::Parallel).unwrap();
    assert_eq!(r.connected_graphs, 26704);
    // K6 and the 60 labeled 6-cycles
    assert_eq!(r.members, 61);
    assert!(r.passed(), "{:?}", r.disagreements);
    let seq = corpus_crosscheck(6, 7, 5, Execution::Sequential).unwrap();
    assert_eq!(r, seq);
}

#[test]
fn classify_on_classic_graphs() {
    for g in [Graph::complete(6), Graph::cycle(8), Graph::path(6), Graph::complete_bipartite(3, 3), Graph::star(5)] {
        let v = classify(&g, DEFAULT_POLY_CAP, Execution::Sequential).unwrap();
        assert!(v.agreement, "{v:?}");
    }
}
