//! The weighted safe-set predicate and exhaustive optimal solvers.
//!
//! A nonempty `S` is safe when every component of `G[S]` weighs at least as
//! much as every component of `G - S` it touches. `S = V(G)` counts as safe,
//! so every connected graph has an optimum.

use num::{BigInt, Zero};
use serde::Serialize;

use crate::engine::{better, with_mask_graph, Candidate, MaskGraph, Scratch};
use crate::error::{Error, Result};
use crate::graph::{components, edge_between, subset_weight, Graph, VertexSubset, WeightedGraph};
use crate::par::{map_indexed, Execution, SubsetChunks};
use crate::rational::{self, ScanInt, Weight};

pub const DEFAULT_CAP: usize = 24;
/// Hard ceiling for the subset scans: vertex sets are `u64` masks.
pub const MAX_CAP: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolverConfig {
    /// Largest order the exhaustive scans accept.
    pub cap: usize,
    pub exec: Execution,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            cap: DEFAULT_CAP,
            exec: Execution::default(),
        }
    }
}

impl SolverConfig {
    pub fn with_cap(cap: usize) -> Self {
        SolverConfig {
            cap,
            ..Default::default()
        }
    }

    pub fn sequential(self) -> Self {
        SolverConfig {
            exec: Execution::Sequential,
            ..self
        }
    }

    pub(crate) fn check(&self, g: &Graph) -> Result<()> {
        if self.cap == 0 || self.cap > MAX_CAP {
            return Err(Error::Invalid(format!(
                "enumeration cap must lie in 1..={MAX_CAP}, got {}",
                self.cap
            )));
        }
        if g.order() == 0 {
            return Err(Error::Invalid("graph has no vertices".into()));
        }
        if g.order() > self.cap {
            return Err(Error::CapExceeded {
                order: g.order(),
                cap: self.cap,
            });
        }
        if !g.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SafeSetSolution {
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub optimum: Weight,
    pub witness: VertexSubset,
    pub witness_components: usize,
    pub connected_required: bool,
}

/// Direct evaluation of the safe-set predicate on exact rationals.
///
/// Works for graphs of any order; the exhaustive solvers use a bit-mask
/// route instead.
pub fn is_safe_set(g: &WeightedGraph, s: &VertexSubset) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    s.check_within(g.graph())?;
    let inside = components(g.graph(), s);
    let outside = components(g.graph(), &s.complement(g.order()));
    let outside_weights = outside
        .iter()
        .map(|d| subset_weight(g, d))
        .collect::<Result<Vec<_>>>()?;
    for c in &inside {
        let wc = subset_weight(g, c)?;
        for (d, wd) in outside.iter().zip(&outside_weights) {
            if edge_between(g.graph(), c, d)? && &wc < wd {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn best_in_range<T: ScanInt>(
    mg: &MaskGraph<T>,
    range: std::ops::Range<u64>,
    connected_only: bool,
) -> Option<Candidate<T>> {
    let mut scratch = Scratch::new();
    let mut best: Option<Candidate<T>> = None;
    for mask in range {
        let weight = mg.weight(mask);
        if matches!(&best, Some(b) if weight > b.weight) {
            continue;
        }
        if connected_only && !mg.is_connected(mask) {
            continue;
        }
        if let Some(components) = mg.safe_components(mask, &mut scratch) {
            best = better(best, Some(Candidate { weight, components, mask }));
        }
    }
    best
}

fn solve(g: &WeightedGraph, connected_only: bool, cfg: &SolverConfig) -> Result<SafeSetSolution> {
    cfg.check(g.graph())?;
    with_mask_graph!(g, scaled, mg => {
        let chunks = SubsetChunks::new(mg.order());
        let best = map_indexed(cfg.exec, chunks.count(), |i| {
            best_in_range(&mg, chunks.range(i), connected_only)
        })
        .into_iter()
        .fold(None, better)
        .expect("the full vertex set is always safe");
        Ok(SafeSetSolution {
            optimum: scaled.unscale(best.weight.to_bigint()),
            witness: VertexSubset::from_mask(best.mask),
            witness_components: best.components,
            connected_required: connected_only,
        })
    })
}

/// Minimum weight of a safe set, by exhaustive search.
pub fn safe_number(g: &WeightedGraph, cfg: &SolverConfig) -> Result<SafeSetSolution> {
    solve(g, false, cfg)
}

/// Minimum weight of a safe set inducing a connected subgraph.
pub fn connected_safe_number(g: &WeightedGraph, cfg: &SolverConfig) -> Result<SafeSetSolution> {
    solve(g, true, cfg)
}

/// One safe set found by [`safe_subsets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafeSubset {
    pub subset: VertexSubset,
    pub weight: Weight,
    pub components: usize,
}

fn collect_safe<T: ScanInt>(
    mg: &MaskGraph<T>,
    range: std::ops::Range<u64>,
    connected_only: bool,
) -> Vec<(u64, T, usize)> {
    let mut scratch = Scratch::new();
    range
        .filter(|&m| !connected_only || mg.is_connected(m))
        .filter_map(|m| mg.safe_components(m, &mut scratch).map(|k| (m, mg.weight(m), k)))
        .collect()
}

/// Every safe set (or every connected one), in increasing mask order.
pub fn safe_subsets(g: &WeightedGraph, connected_only: bool, cfg: &SolverConfig) -> Result<Vec<SafeSubset>> {
    cfg.check(g.graph())?;
    with_mask_graph!(g, scaled, mg => {
        let chunks = SubsetChunks::new(mg.order());
        let found = map_indexed(cfg.exec, chunks.count(), |i| {
            collect_safe(&mg, chunks.range(i), connected_only)
        });
        Ok(found
            .into_iter()
            .flatten()
            .map(|(mask, w, components)| SafeSubset {
                subset: VertexSubset::from_mask(mask),
                weight: scaled.unscale(w.to_bigint()),
                components,
            })
            .collect())
    })
}

/// All minimum-weight safe sets with their component counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimumSafeSets {
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub weight: Weight,
    /// Sorted lexicographically by vertex sequence.
    pub sets: Vec<(VertexSubset, usize)>,
}

fn optima_in_range<T: ScanInt>(mg: &MaskGraph<T>, range: std::ops::Range<u64>) -> Option<(T, Vec<(u64, usize)>)> {
    let mut scratch = Scratch::new();
    let mut best: Option<(T, Vec<(u64, usize)>)> = None;
    for mask in range {
        let weight = mg.weight(mask);
        if matches!(&best, Some((b, _)) if &weight > b) {
            continue;
        }
        if let Some(k) = mg.safe_components(mask, &mut scratch) {
            match &mut best {
                Some((b, sets)) if *b == weight => sets.push((mask, k)),
                _ => best = Some((weight, vec![(mask, k)])),
            }
        }
    }
    best
}

fn merge_optima<T: Ord>(
    a: Option<(T, Vec<(u64, usize)>)>,
    b: Option<(T, Vec<(u64, usize)>)>,
) -> Option<(T, Vec<(u64, usize)>)> {
    match (a, b) {
        (Some((wa, mut sa)), Some((wb, sb))) => Some(match wa.cmp(&wb) {
            std::cmp::Ordering::Less => (wa, sa),
            std::cmp::Ordering::Greater => (wb, sb),
            std::cmp::Ordering::Equal => {
                sa.extend(sb);
                (wa, sa)
            }
        }),
        (x, None) => x,
        (None, y) => y,
    }
}

pub fn minimum_safe_sets(g: &WeightedGraph, cfg: &SolverConfig) -> Result<MinimumSafeSets> {
    cfg.check(g.graph())?;
    with_mask_graph!(g, scaled, mg => {
        let chunks = SubsetChunks::new(mg.order());
        let (weight, sets) = map_indexed(cfg.exec, chunks.count(), |i| optima_in_range(&mg, chunks.range(i)))
            .into_iter()
            .fold(None, merge_optima)
            .expect("the full vertex set is always safe");
        let mut sets: Vec<_> = sets
            .into_iter()
            .map(|(m, k)| (VertexSubset::from_mask(m), k))
            .collect();
        sets.sort();
        Ok(MinimumSafeSets {
            weight: scaled.unscale(weight.to_bigint()),
            sets,
        })
    })
}

/// Smallest `k(G[S])` over all minimum-weight safe sets `S`.
pub fn min_components_of_min_safe_sets(g: &WeightedGraph, cfg: &SolverConfig) -> Result<usize> {
    let optima = minimum_safe_sets(g, cfg)?;
    Ok(optima.sets.iter().map(|&(_, k)| k).min().expect("at least one optimum"))
}

/// Weights giving every component of `g[s]` and of `g - s` total weight 1,
/// spread evenly over its vertices. Under them `s` is safe.
pub fn witness_weight(g: &Graph, s: &VertexSubset) -> Result<Vec<Weight>> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    s.check_within(g)?;
    if s.len() == g.order() {
        return Err(Error::FullSubset);
    }
    let mut weights = vec![Weight::zero(); g.order()];
    let parts = components(g, s)
        .into_iter()
        .chain(components(g, &s.complement(g.order())));
    for part in parts {
        let share = Weight::new(BigInt::from(1), BigInt::from(part.len()));
        for &v in part.members() {
            weights[v] = share.clone();
        }
    }
    Ok(weights)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub safe_number: Weight,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub connected_safe_number: Weight,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub total_weight: Weight,
    /// `s <= cs`
    pub s_le_cs: bool,
    /// `cs < 2 s`
    pub cs_lt_2s: bool,
    /// `s >= w(G)/2`
    pub s_ge_half: bool,
}

impl RatioReport {
    pub fn chain_holds(&self) -> bool {
        self.s_le_cs && self.cs_lt_2s
    }
}

pub fn verify_ratio_bound(g: &WeightedGraph, cfg: &SolverConfig) -> Result<RatioReport> {
    let s = safe_number(g, cfg)?.optimum;
    let cs = connected_safe_number(g, cfg)?.optimum;
    Ok(ratio_report(s, cs, g.total_weight()))
}

pub(crate) fn ratio_report(s: Weight, cs: Weight, total: Weight) -> RatioReport {
    let two = Weight::from_integer(BigInt::from(2));
    RatioReport {
        s_le_cs: s <= cs,
        cs_lt_2s: cs < &s * &two,
        s_ge_half: &s * &two >= total,
        safe_number: s,
        connected_safe_number: cs,
        total_weight: total,
    }
}
