//! Explicit weight functions and graph transforms.
//!
//! * odd paths whose unique minimum safe set has one component per pair of
//!   vertices, so component counts of optima grow without bound;
//! * suppression of degree-2 vertices and its inverse, edge subdivision;
//! * the ε-lift that carries `s < cs` from a graph to a subdivision of it.

use num::{BigInt, Signed};
use serde::Serialize;

use crate::engine::{with_mask_graph, MaskGraph, Scratch};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset, WeightedGraph};
use crate::par::{map_indexed, SubsetChunks};
use crate::rational::{self, ScanInt, Weight};
use crate::safe::{self, SolverConfig};

/// Parameters of the odd path `v1 ... v(2n+1)` with weights
/// `b, b, a, 2a, 2a, 4a, 4a, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathWeightSpec {
    pub n: usize,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub a: Weight,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub b: Weight,
}

impl PathWeightSpec {
    /// Requires `n >= 2`, `a > 0`, `2b > 3a` and `2a > b > a`.
    pub fn new(n: usize, a: Weight, b: Weight) -> Result<Self> {
        if n < 2 {
            return Err(Error::Constraint("n >= 2".into()));
        }
        if !a.is_positive() {
            return Err(Error::Constraint("a > 0".into()));
        }
        let two = Weight::from_integer(BigInt::from(2));
        let three = Weight::from_integer(BigInt::from(3));
        if &two * &b <= &three * &a {
            return Err(Error::Constraint("2b > 3a".into()));
        }
        if &two * &a <= b {
            return Err(Error::Constraint("2a > b".into()));
        }
        if b <= a {
            return Err(Error::Constraint("b > a".into()));
        }
        Ok(PathWeightSpec { n, a, b })
    }

    pub fn order(&self) -> usize {
        2 * self.n + 1
    }

    /// Weights in path order (0-indexed).
    pub fn weights(&self) -> Vec<Weight> {
        let mut w = vec![self.b.clone(), self.b.clone()];
        let mut level = self.a.clone();
        // vertices v3, then pairs (v4,v5), (v6,v7), ... in 1-indexed terms
        w.push(level.clone());
        for _ in 2..=self.n {
            level = &level + &level;
            w.push(level.clone());
            w.push(level.clone());
        }
        w
    }

    /// `{v2, v4, ..., v2n}`, i.e. the odd 0-indexed positions.
    pub fn expected_minimum(&self) -> VertexSubset {
        (0..self.n).map(|i| 2 * i + 1).collect()
    }

    /// `2^n a - 2a + b`.
    pub fn expected_weight(&self) -> Weight {
        let pow = Weight::from_integer(num::pow(BigInt::from(2), self.n));
        let two = Weight::from_integer(BigInt::from(2));
        pow * &self.a - two * &self.a + &self.b
    }
}

pub fn odd_path_weights(spec: &PathWeightSpec) -> WeightedGraph {
    WeightedGraph::new(Graph::path(spec.order()), spec.weights()).expect("construction weights are positive")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniqueMinimumReport {
    pub spec: PathWeightSpec,
    pub expected_set: VertexSubset,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub expected_weight: Weight,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub found_weight: Weight,
    pub optima: Vec<VertexSubset>,
    pub min_components: usize,
    pub passed: bool,
}

/// Enumerates all safe sets and checks that `{v2, v4, ..., v2n}` is the only
/// minimum one, with weight `2^n a - 2a + b`.
pub fn verify_unique_minimum(spec: &PathWeightSpec, cfg: &SolverConfig) -> Result<UniqueMinimumReport> {
    let g = odd_path_weights(spec);
    let optima = safe::minimum_safe_sets(&g, cfg)?;
    let expected_set = spec.expected_minimum();
    let expected_weight = spec.expected_weight();
    let min_components = optima.sets.iter().map(|(_, k)| *k).min().unwrap_or(0);
    let sets: Vec<VertexSubset> = optima.sets.into_iter().map(|(s, _)| s).collect();
    let passed = sets.len() == 1 && sets[0] == expected_set && optima.weight == expected_weight;
    Ok(UniqueMinimumReport {
        spec: spec.clone(),
        expected_set,
        expected_weight,
        found_weight: optima.weight,
        optima: sets,
        min_components,
        passed,
    })
}

/// Removes `v` (degree 2, not on a triangle) and joins its two neighbours.
/// Vertices above `v` shift down by one.
pub fn suppress(g: &Graph, v: usize) -> Result<Graph> {
    g.check_vertex(v)?;
    if g.degree(v) != 2 {
        return Err(Error::WrongDegree {
            vertex: v,
            degree: g.degree(v),
        });
    }
    let (x, y) = (g.neighbors(v)[0], g.neighbors(v)[1]);
    if g.has_edge(x, y) {
        return Err(Error::OnTriangle(v));
    }
    let relabel = |u: usize| if u > v { u - 1 } else { u };
    let mut out = Graph::empty(g.order() - 1);
    for (a, b) in g.edges() {
        if a != v && b != v {
            out.add_edge(relabel(a), relabel(b))?;
        }
    }
    out.add_edge(relabel(x), relabel(y))?;
    Ok(out)
}

/// [`suppress`] keeping the weights of the surviving vertices.
pub fn suppress_weighted(g: &WeightedGraph, v: usize) -> Result<WeightedGraph> {
    let graph = suppress(g.graph(), v)?;
    let mut weights = g.weights().to_vec();
    weights.remove(v);
    WeightedGraph::new(graph, weights)
}

/// Replaces edge `xy` by a path `x v* y`; `v*` gets index `n`.
pub fn subdivide(g: &Graph, edge: (usize, usize)) -> Result<(Graph, usize)> {
    let (x, y) = edge;
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let mut out = g.clone();
    out.remove_edge(x, y)?;
    let mid = out.add_vertex();
    out.add_edge(x, mid)?;
    out.add_edge(mid, y)?;
    Ok((out, mid))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonBounds {
    /// `min(cs - s, w(x), w(y))`
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub alpha: Weight,
    /// Smallest positive `w(D) - w(C)` over components `C` of `G[T]` and `D`
    /// of `G - T`, `T` ranging over non-safe sets. `None` when every
    /// nonempty set is safe.
    #[serde(serialize_with = "rational::serde_str::serialize_opt")]
    pub beta: Option<Weight>,
}

impl EpsilonBounds {
    /// `min(alpha, beta)`, with a missing beta ignored.
    pub fn limit(&self) -> Weight {
        match &self.beta {
            Some(b) if b < &self.alpha => b.clone(),
            _ => self.alpha.clone(),
        }
    }

    pub fn default_epsilon(&self) -> Weight {
        self.limit() / Weight::from_integer(BigInt::from(4))
    }
}

fn beta_in_range<T: ScanInt>(mg: &MaskGraph<T>, range: std::ops::Range<u64>) -> Option<T> {
    let mut scratch = Scratch::new();
    let mut best: Option<T> = None;
    for mask in range {
        if mg.safe_components(mask, &mut scratch).is_some() {
            continue;
        }
        for c in &scratch.inside {
            for d in &scratch.outside {
                if d.weight > c.weight {
                    let mut gap = d.weight.clone();
                    gap -= &c.weight;
                    if best.as_ref().is_none_or(|b| gap < *b) {
                        best = Some(gap);
                    }
                }
            }
        }
    }
    best
}

/// Exact β by scanning every non-safe set.
pub fn beta_bound(g: &WeightedGraph, cfg: &SolverConfig) -> Result<Option<Weight>> {
    cfg.check(g.graph())?;
    with_mask_graph!(g, scaled, mg => {
        let chunks = SubsetChunks::new(mg.order());
        let best = map_indexed(cfg.exec, chunks.count(), |i| beta_in_range(&mg, chunks.range(i)))
            .into_iter()
            .flatten()
            .min();
        Ok(best.map(|b| scaled.unscale(b.to_bigint())))
    })
}

/// α for edge `xy` and β, both exact.
pub fn compute_epsilon_bounds(g: &WeightedGraph, edge: (usize, usize), cfg: &SolverConfig) -> Result<EpsilonBounds> {
    let (x, y) = edge;
    if !g.graph().has_edge(x, y) {
        return Err(Error::MissingEdge(x, y));
    }
    let s = safe::safe_number(g, cfg)?.optimum;
    let cs = safe::connected_safe_number(g, cfg)?.optimum;
    let alpha = [&cs - &s, g.weight(x).clone(), g.weight(y).clone()]
        .into_iter()
        .min()
        .expect("three candidates");
    Ok(EpsilonBounds {
        alpha,
        beta: beta_bound(g, cfg)?,
    })
}

/// Edge to subdivide plus the weight `epsilon` moved from `x` onto the new vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftParameters {
    pub x: usize,
    pub y: usize,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub epsilon: Weight,
    pub bounds: EpsilonBounds,
}

impl LiftParameters {
    /// Checks `0 < epsilon < min(alpha, beta) / 2`.
    pub fn new(edge: (usize, usize), epsilon: Weight, bounds: EpsilonBounds) -> Result<Self> {
        let half = bounds.limit() / Weight::from_integer(BigInt::from(2));
        if !epsilon.is_positive() || epsilon >= half {
            return Err(Error::EpsilonOutOfBounds(format!(
                "need 0 < epsilon < {}, got {}",
                rational::format_rational(&half),
                rational::format_rational(&epsilon)
            )));
        }
        Ok(LiftParameters {
            x: edge.0,
            y: edge.1,
            epsilon,
            bounds,
        })
    }

    /// Computes the bounds and uses `epsilon = min(alpha, beta) / 4` unless one is given.
    pub fn for_edge(
        g: &WeightedGraph,
        edge: (usize, usize),
        epsilon: Option<Weight>,
        cfg: &SolverConfig,
    ) -> Result<Self> {
        let bounds = compute_epsilon_bounds(g, edge, cfg)?;
        let epsilon = epsilon.unwrap_or_else(|| bounds.default_epsilon());
        LiftParameters::new(edge, epsilon, bounds)
    }
}

/// Subdivides `xy` and moves `epsilon` of `x`'s weight onto the new vertex.
/// The new vertex is the last index; total weight is unchanged.
pub fn lift_weights(g: &WeightedGraph, lift: &LiftParameters) -> Result<WeightedGraph> {
    let half = lift.bounds.limit() / Weight::from_integer(BigInt::from(2));
    if !lift.epsilon.is_positive() || lift.epsilon >= half {
        return Err(Error::EpsilonOutOfBounds(rational::format_rational(&lift.epsilon)));
    }
    let (graph, mid) = subdivide(g.graph(), (lift.x, lift.y))?;
    let mut weights = g.weights().to_vec();
    weights[lift.x] -= &lift.epsilon;
    if !weights[lift.x].is_positive() {
        return Err(Error::EpsilonOutOfBounds(format!(
            "weight of vertex {} would become {}",
            lift.x,
            rational::format_rational(&weights[lift.x])
        )));
    }
    weights.push(lift.epsilon.clone());
    debug_assert_eq!(weights.len(), mid + 1);
    WeightedGraph::new(graph, weights)
}

/// Lifts the path edge between positions `left` and `left + 1` and returns the
/// weights of the longer path in path order. `reduce_left` picks which
/// endpoint gives up `epsilon`.
pub fn lift_path(weights: &[Weight], left: usize, reduce_left: bool, cfg: &SolverConfig) -> Result<Vec<Weight>> {
    let m = weights.len();
    if left + 1 >= m {
        return Err(Error::MissingEdge(left, left + 1));
    }
    let g = WeightedGraph::new(Graph::path(m), weights.to_vec())?;
    let edge = if reduce_left { (left, left + 1) } else { (left + 1, left) };
    let lifted = lift_weights(&g, &LiftParameters::for_edge(&g, edge, None, cfg)?)?;
    let mut out = lifted.weights()[..m].to_vec();
    out.insert(left + 1, lifted.weights()[m].clone());
    Ok(out)
}

/// Weights on the path of order `m` with `s < cs`, grown from the odd-path
/// construction by repeatedly lifting the rightmost edge.
pub fn non_member_path_weights(spec: &PathWeightSpec, m: usize, cfg: &SolverConfig) -> Result<Vec<Weight>> {
    if m < spec.order() {
        return Err(Error::Invalid(format!(
            "target order {m} is below the base path order {}",
            spec.order()
        )));
    }
    let mut w = spec.weights();
    while w.len() < m {
        let left = w.len() - 2;
        w = lift_path(&w, left, true, cfg)?;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn spec(n: usize, a: i64, b: i64) -> Result<PathWeightSpec> {
        PathWeightSpec::new(n, int(a), int(b))
    }

    fn figure1() -> WeightedGraph {
        odd_path_weights(&spec(3, 3, 5).unwrap())
    }

    #[test]
    fn odd_path_examples() {
        let w = |n, a, b| spec(n, a, b).unwrap().weights();
        assert_eq!(w(3, 3, 5), [5, 5, 3, 6, 6, 12, 12].map(int).to_vec());
        assert_eq!(w(2, 3, 5), [5, 5, 3, 6, 6].map(int).to_vec());
        assert_eq!(spec(2, 1, 3), Err(Error::Constraint("2a > b".into())));
        assert_eq!(spec(2, 1, 3).unwrap_err().to_string(), "2a > b violated");
        assert_eq!(spec(2, 4, 5), Err(Error::Constraint("2b > 3a".into())));
        assert_eq!(spec(1, 3, 5), Err(Error::Constraint("n >= 2".into())));
        // b > a is implied by 2b > 3a for positive a; check the error path anyway
        assert!(PathWeightSpec::new(2, int(-1), int(1)).is_err());
    }

    #[test]
    fn unique_minimum_examples() {
        let cfg = SolverConfig::default();
        for (n, a, b, weight) in [(3, 3, 5, 23), (2, 3, 5, 11), (4, 4, 7, 63)] {
            let r = verify_unique_minimum(&spec(n, a, b).unwrap(), &cfg).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.found_weight, int(weight));
            assert_eq!(r.min_components, n);
        }
    }

    #[test]
    fn suppress_examples() {
        assert_eq!(suppress(&Graph::path(4), 1).unwrap(), Graph::path(3));
        for v in 0..5 {
            assert_eq!(suppress(&Graph::cycle(5), v).unwrap(), Graph::cycle(4));
        }
        assert_eq!(suppress(&Graph::complete(3), 0), Err(Error::OnTriangle(0)));
        assert!(matches!(suppress(&Graph::path(4), 0), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn subdivide_examples() {
        let (p, mid) = subdivide(&Graph::path(3), (0, 1)).unwrap();
        assert_eq!(mid, 3);
        assert_eq!(p.edges(), vec![(0, 3), (1, 2), (1, 3)]);
        assert_eq!(suppress(&p, 3).unwrap(), Graph::path(3));
        let (c, _) = subdivide(&Graph::cycle(4), (0, 3)).unwrap();
        assert!(c.is_connected() && (0..5).all(|v| c.degree(v) == 2));
        assert_eq!(subdivide(&Graph::path(3), (0, 2)), Err(Error::MissingEdge(0, 2)));
    }

    #[test]
    fn figure1_bounds_and_lift() {
        let cfg = SolverConfig::default();
        let g = figure1();
        let bounds = compute_epsilon_bounds(&g, (3, 4), &cfg).unwrap();
        assert_eq!(bounds.alpha, int(1));
        assert_eq!(bounds.beta, Some(int(1)));
        assert_eq!(bounds.default_epsilon(), ratio(1, 4));
        let lift = LiftParameters::new((3, 4), ratio(1, 4), bounds).unwrap();
        let lifted = lift_weights(&g, &lift).unwrap();
        assert_eq!(lifted.total_weight(), g.total_weight());
        let path_order = lift_path(g.weights(), 3, true, &cfg).unwrap();
        let expect = vec![int(5), int(5), int(3), ratio(23, 4), ratio(1, 4), int(6), int(12), int(12)];
        assert_eq!(path_order, expect);
        let p8 = WeightedGraph::new(Graph::path(8), path_order).unwrap();
        let s = safe::safe_number(&p8, &cfg).unwrap().optimum;
        let cs = safe::connected_safe_number(&p8, &cfg).unwrap().optimum;
        assert!(s < cs);
    }

    #[test]
    fn epsilon_validation() {
        let bounds = EpsilonBounds {
            alpha: int(1),
            beta: None,
        };
        assert!(LiftParameters::new((0, 1), ratio(1, 2), bounds.clone()).is_err());
        assert!(LiftParameters::new((0, 1), int(0), bounds.clone()).is_err());
        assert!(LiftParameters::new((0, 1), ratio(49, 100), bounds).is_ok());
        let zero = EpsilonBounds {
            alpha: int(0),
            beta: Some(int(3)),
        };
        assert!(LiftParameters::new((0, 1), ratio(1, 100), zero).is_err());
    }

    #[test]
    fn equal_numbers_give_zero_alpha() {
        let g = WeightedGraph::uniform(Graph::cycle(5));
        let bounds = compute_epsilon_bounds(&g, (0, 1), &SolverConfig::default()).unwrap();
        assert_eq!(bounds.alpha, int(0));
        assert!(LiftParameters::for_edge(&g, (0, 1), None, &SolverConfig::default()).is_err());
    }

    #[test]
    fn beta_missing_when_everything_is_safe() {
        let k1 = WeightedGraph::uniform(Graph::empty(1));
        assert_eq!(beta_bound(&k1, &SolverConfig::default()).unwrap(), None);
        let k2 = WeightedGraph::uniform(Graph::complete(2));
        assert_eq!(beta_bound(&k2, &SolverConfig::default()).unwrap(), None);
        let k3 = WeightedGraph::uniform(Graph::complete(3));
        assert_eq!(beta_bound(&k3, &SolverConfig::default()).unwrap(), Some(rational::int(1)));
    }

    #[test]
    fn non_member_paths_keep_a_gap() {
        let cfg = SolverConfig::default();
        let sp = spec(2, 3, 5).unwrap();
        let w = non_member_path_weights(&sp, 8, &cfg).unwrap();
        assert_eq!(w.len(), 8);
        assert_eq!(rational::sum(&w), rational::sum(&sp.weights()));
        let g = WeightedGraph::new(Graph::path(8), w).unwrap();
        let s = safe::safe_number(&g, &cfg).unwrap().optimum;
        let cs = safe::connected_safe_number(&g, &cfg).unwrap().optimum;
        assert!(s < cs);
    }
}
