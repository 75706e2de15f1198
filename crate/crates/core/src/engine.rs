//! Bit-mask evaluation of induced components and the safe-set predicate.
//!
//! Vertices are bits of a `u64`, weights are integers over a common
//! denominator. Used by every exhaustive scan in the crate.

use std::cmp::Ordering;

use crate::graph::bits;
use crate::rational::ScanInt;

pub(crate) struct MaskGraph<T> {
    nbr: Vec<u64>,
    weights: Vec<T>,
    full: u64,
}

/// A component found during evaluation: vertex mask, open neighbourhood, weight.
pub(crate) struct Piece<T> {
    pub mask: u64,
    pub nbr: u64,
    pub weight: T,
}

#[derive(Default)]
pub(crate) struct Scratch<T> {
    pub inside: Vec<Piece<T>>,
    pub outside: Vec<Piece<T>>,
}

impl<T> Scratch<T> {
    pub(crate) fn new() -> Self {
        Scratch {
            inside: Vec::new(),
            outside: Vec::new(),
        }
    }
}

impl<T: ScanInt> MaskGraph<T> {
    pub(crate) fn new(g: &crate::graph::Graph, weights: Vec<T>) -> Self {
        let n = g.order();
        assert!(n < 64);
        MaskGraph {
            nbr: g.masks(),
            weights,
            full: (1u64 << n) - 1,
        }
    }

    pub(crate) fn order(&self) -> usize {
        self.weights.len()
    }

    pub(crate) fn weight(&self, mask: u64) -> T {
        let mut total = T::zero();
        for v in bits(mask) {
            total += &self.weights[v];
        }
        total
    }

    fn grow(&self, seed: u64, within: u64) -> u64 {
        grow(&self.nbr, seed, within)
    }

    pub(crate) fn is_connected(&self, mask: u64) -> bool {
        mask != 0 && self.grow(mask & mask.wrapping_neg(), mask) == mask
    }

    /// Components of the induced subgraph on `mask`, ordered by minimum vertex.
    pub(crate) fn pieces(&self, mut mask: u64, out: &mut Vec<Piece<T>>) {
        out.clear();
        while mask != 0 {
            let comp = self.grow(mask & mask.wrapping_neg(), mask);
            mask &= !comp;
            let mut nbr = 0;
            let mut weight = T::zero();
            for v in bits(comp) {
                nbr |= self.nbr[v];
                weight += &self.weights[v];
            }
            out.push(Piece {
                mask: comp,
                nbr: nbr & !comp,
                weight,
            });
        }
    }

    /// Fills `scratch` with the components on both sides of the cut.
    pub(crate) fn split(&self, mask: u64, scratch: &mut Scratch<T>) {
        self.pieces(mask, &mut scratch.inside);
        self.pieces(self.full & !mask, &mut scratch.outside);
    }

    /// `Some(k(G[S]))` when `mask` is a safe set, `None` otherwise.
    pub(crate) fn safe_components(&self, mask: u64, scratch: &mut Scratch<T>) -> Option<usize> {
        self.split(mask, scratch);
        let ok = scratch.inside.iter().all(|c| {
            scratch
                .outside
                .iter()
                .all(|d| c.nbr & d.mask == 0 || c.weight >= d.weight)
        });
        ok.then_some(scratch.inside.len())
    }
}

/// Component of `within` containing `seed` (a single bit).
pub(crate) fn grow(nbr: &[u64], seed: u64, within: u64) -> u64 {
    let mut comp = seed;
    let mut frontier = seed;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = nbr[v] & within & !comp;
        comp |= fresh;
        frontier |= fresh;
    }
    comp
}

/// `k(G[mask])` for neighbourhood masks `nbr`.
pub(crate) fn component_count(nbr: &[u64], mut mask: u64) -> usize {
    let mut count = 0;
    while mask != 0 {
        let comp = grow(nbr, mask & mask.wrapping_neg(), mask);
        mask &= !comp;
        count += 1;
    }
    count
}

/// Runs `$body` with `$mg` bound to a [`MaskGraph`] over the smallest integer
/// type that holds the scaled weights, and `$scaled` bound to the scaling.
macro_rules! with_mask_graph {
    ($wg:expr, $scaled:ident, $mg:ident => $body:expr) => {{
        let wg: &$crate::graph::WeightedGraph = $wg;
        let $scaled = $crate::rational::Scaled::new(wg.weights());
        match $scaled.to_i128() {
            Some(ints) => {
                let $mg = $crate::engine::MaskGraph::<i128>::new(wg.graph(), ints);
                $body
            }
            None => {
                let $mg =
                    $crate::engine::MaskGraph::<num::BigInt>::new(wg.graph(), $scaled.numers.clone());
                $body
            }
        }
    }};
}
pub(crate) use with_mask_graph;

/// Lexicographic comparison of the sorted index sequences of two masks.
pub(crate) fn lex_cmp(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let pos = diff.trailing_zeros();
    let above = |m: u64| m >> pos != 0;
    if a >> pos & 1 == 1 {
        // b lacks `pos`: b is either a prefix of a or continues with something larger
        if above(b) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if above(a) {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Candidate optimum with the tie-break order: weight, then component count,
/// then lexicographic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Candidate<T> {
    pub weight: T,
    pub components: usize,
    pub mask: u64,
}

impl<T: Ord> Candidate<T> {
    pub(crate) fn key_cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then(self.components.cmp(&other.components))
            .then_with(|| lex_cmp(self.mask, other.mask))
    }
}

pub(crate) fn better<T: Ord>(a: Option<Candidate<T>>, b: Option<Candidate<T>>) -> Option<Candidate<T>> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.key_cmp(&x) == Ordering::Less { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, VertexSubset};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn lex_cmp_matches_vec_order(a in any::<u64>(), b in any::<u64>()) {
            let va = VertexSubset::from_mask(a);
            let vb = VertexSubset::from_mask(b);
            prop_assert_eq!(lex_cmp(a, b), va.members().cmp(vb.members()));
        }

        #[test]
        fn lex_cmp_sparse(a in 0u64..64, b in 0u64..64) {
            let va = VertexSubset::from_mask(a);
            let vb = VertexSubset::from_mask(b);
            prop_assert_eq!(lex_cmp(a, b), va.members().cmp(vb.members()));
        }
    }

    #[test]
    fn pieces_match_graph_components() {
        let g = Graph::cycle(7);
        let mg = MaskGraph::<i128>::new(&g, vec![1; 7]);
        let mut out = Vec::new();
        for mask in 0..(1u64 << 7) {
            mg.pieces(mask, &mut out);
            let expect = crate::graph::components(&g, &VertexSubset::from_mask(mask));
            let got: Vec<_> = out.iter().map(|p| VertexSubset::from_mask(p.mask)).collect();
            assert_eq!(got, expect);
            assert_eq!(component_count(&g.masks(), mask), expect.len());
        }
    }
}
