//! Seeded weight generators for the verification sweeps.

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::rational::Weight;

pub type WeightRng = ChaCha8Rng;

pub fn rng(seed: u64) -> WeightRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integers drawn uniformly from `lo..=hi`.
pub fn integer_weights(rng: &mut WeightRng, n: usize, lo: u64, hi: u64) -> Vec<Weight> {
    (0..n)
        .map(|_| Weight::from_integer(BigInt::from(rng.random_range(lo..=hi))))
        .collect()
}

/// `p/q` with `p` uniform in `1..=max_numer` and `q` uniform in `1..=max_denom`.
pub fn rational_weights(rng: &mut WeightRng, n: usize, max_numer: u64, max_denom: u64) -> Vec<Weight> {
    (0..n)
        .map(|_| {
            let p = rng.random_range(1..=max_numer);
            let q = rng.random_range(1..=max_denom);
            Weight::new(BigInt::from(p), BigInt::from(q))
        })
        .collect()
}

/// Rationals in `[lo, hi]`: `q` uniform in `1..=max_denom`, then `p` uniform in `lo*q..=hi*q`.
pub fn bounded_weights(rng: &mut WeightRng, n: usize, lo: u64, hi: u64, max_denom: u64) -> Vec<Weight> {
    (0..n)
        .map(|_| {
            let q = rng.random_range(1..=max_denom);
            let p = rng.random_range(lo * q..=hi * q);
            Weight::new(BigInt::from(p), BigInt::from(q))
        })
        .collect()
}

/// Connected graph on `n` vertices: a random recursive tree (vertex `i`
/// hangs off a uniform earlier vertex) plus every other pair with
/// probability `extra`.
pub fn connected_graph(rng: &mut WeightRng, n: usize, extra: f64) -> Graph {
    let mut g = Graph::empty(n);
    for i in 1..n {
        let j = rng.random_range(0..i);
        g.add_edge(j, i).expect("fresh tree edge");
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.random_bool(extra) {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
    }
    g
}
