use proptest::prelude::*;
use safeset::io::{parse_graph, parse_weights, write_graph, write_weights};
use safeset::{Graph, Weight};

proptest! {
    #[test]
    fn graph_files_round_trip(n in 1usize..12, bits in prop::collection::vec(any::<bool>(), 66)) {
        let mut g = Graph::empty(n);
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits[k] {
                    g.add_edge(u, v).unwrap();
                }
                k += 1;
            }
        }
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn weight_files_round_trip(w in prop::collection::vec((1i64..100_000, 1i64..1000), 0..20)) {
        let w: Vec<Weight> = w.into_iter().map(|(p, q)| Weight::new(p.into(), q.into())).collect();
        let text = write_weights(&w);
        let back = parse_weights(&text).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(write_weights(&back), text);
    }

    #[test]
    fn decimals_are_exact(whole in 0u32..1000, frac in 0u32..1000) {
        let text = format!("{whole}.{frac:03}");
        let w = safeset::rational::parse_rational(&text).unwrap();
        prop_assert_eq!(w, Weight::new((whole as i64 * 1000 + frac as i64).into(), 1000.into()));
    }
}
