//! Fast exact solvers for cycles and for connected safe sets of paths.
//!
//! On a cycle the connected safe sets are exactly the arcs carrying at least
//! half of the total weight, and the safe number equals the connected safe
//! number, so one two-pointer sweep over the arcs suffices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset, WeightedGraph};
use crate::rational::{self, ScanInt, Scaled, Weight};
use crate::safe::{self, SolverConfig};

/// Consecutive run of cycle vertices `start, start+1, ..., start+len-1` (mod n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub start: usize,
    pub len: usize,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub weight: Weight,
}

impl Arc {
    pub fn members(&self, n: usize) -> VertexSubset {
        (0..self.len).map(|i| (self.start + i) % n).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleSolution {
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub value: Weight,
    pub arc: Arc,
}

/// Work counters from the cycle sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanStats {
    /// Number of times the arc's end pointer moved forward.
    pub end_advances: usize,
}

/// Safe number (equal to the connected safe number) of a weighted cycle
/// `v0 v1 ... v(n-1) v0`, in O(n) arithmetic operations.
///
/// Ties between equally heavy arcs go to the smallest start.
pub fn cycle_safe_number(weights: &[Weight]) -> Result<CycleSolution> {
    cycle_safe_number_with_stats(weights).map(|(sol, _)| sol)
}

pub fn cycle_safe_number_with_stats(weights: &[Weight]) -> Result<(CycleSolution, ScanStats)> {
    if weights.len() < 3 {
        return Err(Error::Invalid(format!(
            "a cycle needs at least 3 vertices, got {}",
            weights.len()
        )));
    }
    rational::check_positive(weights)?;
    let scaled = Scaled::new(weights);
    let (value, start, len, end_advances) = match scaled.to_i128() {
        Some(ints) => {
            let (v, s, l, a) = cycle_sweep(&ints);
            (v.to_bigint(), s, l, a)
        }
        None => cycle_sweep(&scaled.numers),
    };
    let value = scaled.unscale(value);
    let sol = CycleSolution {
        arc: Arc {
            start,
            len,
            weight: value.clone(),
        },
        value,
    };
    Ok((sol, ScanStats { end_advances }))
}

/// For every start `k` the window `v_k..v_end` is grown to the shortest arc
/// of weight at least half the total; dropping `v_k` keeps the window valid
/// as a prefix for `k + 1`, so `end` only moves forward.
fn cycle_sweep<T: ScanInt>(w: &[T]) -> (T, usize, usize, usize) {
    let n = w.len();
    let mut total = T::zero();
    for x in w {
        total += x;
    }
    let mut best: Option<(T, usize, usize)> = None;
    let mut window = w[0].clone();
    // `end` is not reduced mod n; the window is v_k..=v_end
    let mut end = 0usize;
    let mut advances = 0usize;
    for k in 0..n {
        while window.double() < total {
            end += 1;
            window += &w[end % n];
            advances += 1;
        }
        if best.as_ref().is_none_or(|(b, _, _)| window < *b) {
            best = Some((window.clone(), k, end + 1 - k));
        }
        window -= &w[k];
    }
    let (value, start, len) = best.expect("n >= 3");
    (value, start, len, advances)
}

/// Interval `start..=end` of a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathInterval {
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub value: Weight,
    pub start: usize,
    pub end: usize,
}

impl PathInterval {
    pub fn members(&self) -> VertexSubset {
        (self.start..=self.end).collect()
    }
}

/// Connected safe number of the path `v0 v1 ... v(n-1)`.
///
/// A connected safe set is an interval at least as heavy as the part to its
/// left and the part to its right. For a fixed left end the lightest valid
/// interval is the shortest one, and that shortest right end never moves
/// left as the left end advances, giving a linear two-pointer scan.
/// Ties go to the smallest left end.
pub fn path_connected_safe_number(weights: &[Weight]) -> Result<PathInterval> {
    if weights.is_empty() {
        return Err(Error::Invalid("a path needs at least one vertex".into()));
    }
    rational::check_positive(weights)?;
    let scaled = Scaled::new(weights);
    let (value, start, end) = match scaled.to_i128() {
        Some(ints) => {
            let (v, s, e) = path_sweep(&ints);
            (v.to_bigint(), s, e)
        }
        None => path_sweep(&scaled.numers),
    };
    Ok(PathInterval {
        value: scaled.unscale(value),
        start,
        end,
    })
}

fn path_sweep<T: ScanInt>(w: &[T]) -> (T, usize, usize) {
    let n = w.len();
    let mut prefix = Vec::with_capacity(n + 1);
    let mut acc = T::zero();
    prefix.push(acc.clone());
    for x in w {
        acc += x;
        prefix.push(acc.clone());
    }
    let total = &prefix[n];
    // interval i..=j: weight P[j+1]-P[i], left P[i], right W-P[j+1]
    let valid = |i: usize, j: usize| {
        let mut inner = prefix[j + 1].clone();
        inner -= &prefix[i];
        let mut right = total.clone();
        right -= &prefix[j + 1];
        inner >= prefix[i] && inner >= right
    };
    let mut best: Option<(T, usize, usize)> = None;
    let mut j = 0usize;
    for i in 0..n {
        j = j.max(i);
        while j < n && !valid(i, j) {
            j += 1;
        }
        if j == n {
            break;
        }
        let mut weight = prefix[j + 1].clone();
        weight -= &prefix[i];
        if best.as_ref().is_none_or(|(b, _, _)| weight < *b) {
            best = Some((weight, i, j));
        }
    }
    // the whole path is always valid, so i = 0 always records something
    best.expect("whole path is a connected safe set")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleMembershipReport {
    pub order: usize,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub fast: Weight,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub safe_number: Weight,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub connected_safe_number: Weight,
    pub agree: bool,
}

/// Checks the fast cycle solver against both exhaustive solvers on one instance.
pub fn verify_cycle_membership(weights: &[Weight], cfg: &SolverConfig) -> Result<CycleMembershipReport> {
    let fast = cycle_safe_number(weights)?.value;
    let g = WeightedGraph::new(Graph::cycle(weights.len()), weights.to_vec())?;
    let s = safe::safe_number(&g, cfg)?.optimum;
    let cs = safe::connected_safe_number(&g, cfg)?.optimum;
    Ok(CycleMembershipReport {
        order: weights.len(),
        agree: fast == s && s == cs,
        fast,
        safe_number: s,
        connected_safe_number: cs,
    })
}

impl CycleSolution {
    /// `value >= w(V)/2`
    pub fn is_at_least_half(&self, weights: &[Weight]) -> bool {
        &self.value + &self.value >= rational::sum(weights)
    }
}
