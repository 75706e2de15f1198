//! Naive reference implementations used only by the test suites.
//!
//! Deliberately written without the crate's bit-mask engine or predicate:
//! components by BTreeSet flood fill, weights summed as rationals.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Zero};
use safeset::Graph;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn parts(g: &Graph, set: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let mut left = set.clone();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        let mut comp = BTreeSet::new();
        let mut stack = vec![start];
        left.remove(&start);
        while let Some(u) = stack.pop() {
            comp.insert(u);
            for &v in g.neighbors(u) {
                if left.remove(&v) {
                    stack.push(v);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn weigh(w: &[Q], set: &BTreeSet<usize>) -> Q {
    set.iter().fold(Q::zero(), |acc, &v| acc + &w[v])
}

fn touches(g: &Graph, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    a.iter().any(|&u| g.neighbors(u).iter().any(|v| b.contains(v)))
}

pub fn safe(g: &Graph, w: &[Q], s: &BTreeSet<usize>) -> bool {
    let rest: BTreeSet<usize> = (0..g.order()).filter(|v| !s.contains(v)).collect();
    let inside = parts(g, s);
    let outside = parts(g, &rest);
    inside.iter().all(|c| {
        outside
            .iter()
            .all(|d| !touches(g, c, d) || weigh(w, c) >= weigh(w, d))
    })
}

pub fn subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (1u64..1 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

/// `(s, cs)` by exhaustive search.
pub fn numbers(g: &Graph, w: &[Q]) -> (Q, Q) {
    let mut s: Option<Q> = None;
    let mut cs: Option<Q> = None;
    for set in subsets(g.order()) {
        if !safe(g, w, &set) {
            continue;
        }
        let ws = weigh(w, &set);
        if s.as_ref().is_none_or(|b| ws < *b) {
            s = Some(ws.clone());
        }
        if parts(g, &set).len() == 1 && cs.as_ref().is_none_or(|b| ws < *b) {
            cs = Some(ws);
        }
    }
    (s.unwrap(), cs.unwrap())
}

/// Every minimum safe set with its component count.
pub fn optima(g: &Graph, w: &[Q]) -> (Q, Vec<(Vec<usize>, usize)>) {
    let mut best: Option<Q> = None;
    let mut sets = Vec::new();
    for set in subsets(g.order()) {
        if !safe(g, w, &set) {
            continue;
        }
        let ws = weigh(w, &set);
        let entry = (set.iter().copied().collect(), parts(g, &set).len());
        match &best {
            Some(b) if ws > *b => {}
            Some(b) if ws == *b => sets.push(entry),
            _ => {
                best = Some(ws);
                sets = vec![entry];
            }
        }
    }
    sets.sort();
    (best.unwrap(), sets)
}

/// Minimum over all cyclic arcs (every start, every length) of weight >= total/2.
pub fn cycle_arcs(w: &[Q]) -> Q {
    let n = w.len();
    let total = w.iter().fold(Q::zero(), |a, x| a + x);
    let mut best: Option<Q> = None;
    for start in 0..n {
        let mut acc = Q::zero();
        for len in 1..=n {
            acc += &w[(start + len - 1) % n];
            if &acc + &acc >= total && best.as_ref().is_none_or(|b| acc < *b) {
                best = Some(acc.clone());
            }
        }
    }
    best.unwrap()
}

/// Quadratic scan over all intervals of a path.
pub fn path_intervals(w: &[Q]) -> Q {
    let n = w.len();
    let total = w.iter().fold(Q::zero(), |a, x| a + x);
    let mut best: Option<Q> = None;
    let mut left = Q::zero();
    for i in 0..n {
        let mut inner = Q::zero();
        for x in &w[i..] {
            inner += x;
            let right = &total - &left - &inner;
            if inner >= left && inner >= right && best.as_ref().is_none_or(|b| inner < *b) {
                best = Some(inner.clone());
            }
        }
        left += &w[i];
    }
    best.unwrap()
}
