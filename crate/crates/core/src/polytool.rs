//! Subgraph component polynomial and the complete-or-cycle classifier.
//!
//! `q(i, j)` counts the `i`-vertex subsets whose induced subgraph has exactly
//! `j` components. For connected graphs on at least five vertices the
//! following coincide: being complete or a cycle; every nonadjacent pair
//! separating the graph; and `q(1,1) = q(n-1,1)`, `q(2,1) = q(n-2,1)`.

use num::BigInt;
use serde::Serialize;

use crate::engine::{component_count, grow};
use crate::error::{Error, Result};
use crate::graph::{components, Graph, VertexSubset, WeightedGraph};
use crate::par::{map_indexed, Execution, SubsetChunks};
use crate::random;
use crate::rational::{self, Weight};
use crate::safe::{self, SolverConfig};

pub const DEFAULT_POLY_CAP: usize = 20;

/// Dense table of `q(i, j)` for `0 <= j <= i <= n`; row and column 0 are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    n: usize,
    q: Vec<Vec<u64>>,
}

impl CoefficientTable {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `q(i, j)`, zero outside the table.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.q.get(i).and_then(|row| row.get(j)).copied().unwrap_or(0)
    }

    /// Rows `i = 1..=n`, each listing `q(i, 1..=i)`.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        (1..=self.n).map(|i| self.q[i][1..=i].to_vec()).collect()
    }

    pub fn row_sums_match_binomials(&self) -> bool {
        (1..=self.n).all(|i| self.q[i].iter().sum::<u64>() == binomial(self.n, i))
    }
}

impl Serialize for CoefficientTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CoefficientTable", 2)?;
        st.serialize_field("order", &self.n)?;
        st.serialize_field("rows", &self.rows())?;
        st.end()
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn count_range(nbr: &[u64], n: usize, range: std::ops::Range<u64>) -> Vec<Vec<u64>> {
    let mut q = vec![vec![0u64; n + 1]; n + 1];
    for mask in range {
        q[mask.count_ones() as usize][component_count(nbr, mask)] += 1;
    }
    q
}

fn table_from_masks(nbr: &[u64], exec: Execution) -> CoefficientTable {
    let n = nbr.len();
    let chunks = SubsetChunks::new(n);
    let parts = map_indexed(exec, chunks.count(), |i| count_range(nbr, n, chunks.range(i)));
    let mut q = vec![vec![0u64; n + 1]; n + 1];
    for part in parts {
        for (row, prow) in q.iter_mut().zip(part) {
            for (x, y) in row.iter_mut().zip(prow) {
                *x += y;
            }
        }
    }
    CoefficientTable { n, q }
}

/// Exact coefficient table by scanning all `2^n - 1` nonempty subsets.
pub fn coefficient_table(g: &Graph, cap: usize, exec: Execution) -> Result<CoefficientTable> {
    if g.order() > cap || g.order() > safe::MAX_CAP {
        return Err(Error::CapExceeded {
            order: g.order(),
            cap: cap.min(safe::MAX_CAP),
        });
    }
    Ok(table_from_masks(&g.masks(), exec))
}

/// `q(1,1) = q(n-1,1)`: no single vertex removal disconnects the graph.
pub fn is_two_connected_by_coefficients(table: &CoefficientTable) -> bool {
    let n = table.order();
    n >= 1 && table.get(1, 1) == table.get(n - 1, 1)
}

/// `q(1,1) = q(n-1,1)` and `q(2,1) = q(n-2,1)`.
pub fn condition_iv(table: &CoefficientTable) -> bool {
    let n = table.order();
    n >= 2 && is_two_connected_by_coefficients(table) && table.get(2, 1) == table.get(n - 2, 1)
}

/// Complete graph or cycle.
pub fn condition_i(g: &Graph) -> bool {
    let n = g.order();
    g.is_complete() || (n >= 3 && (0..n).all(|v| g.degree(v) == 2) && g.is_connected())
}

fn separates(nbr: &[u64], full: u64, removed: u64) -> bool {
    component_count(nbr, full & !removed) > 1
}

/// Removing any two nonadjacent vertices disconnects the graph.
pub fn condition_iii(g: &Graph) -> bool {
    let n = g.order();
    if n > 64 {
        let all = VertexSubset::full(n);
        return (0..n).all(|u| {
            (u + 1..n).all(|v| {
                g.has_edge(u, v) || {
                    let rest: VertexSubset = all.members().iter().copied().filter(|&x| x != u && x != v).collect();
                    components(g, &rest).len() > 1
                }
            })
        });
    }
    let nbr = g.masks();
    let full = full_mask(n);
    (0..n).all(|u| (u + 1..n).all(|v| nbr[u] >> v & 1 == 1 || separates(&nbr, full, 1 << u | 1 << v)))
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StrongVariants {
    /// `k(G - S) = k(G[S])` for every 2-set `S`.
    pub iii_prime: bool,
    /// `k(G - S) = k(G[S])` for every nonempty proper `S`.
    pub iii_double_prime: bool,
    /// `q(k,1) = q(n-k,1)` for `1 <= k <= n-1`.
    pub iv_prime: bool,
}

pub fn strong_variants(g: &Graph, cap: usize, exec: Execution) -> Result<StrongVariants> {
    let table = coefficient_table(g, cap, exec)?;
    let n = g.order();
    let nbr = g.masks();
    let full = full_mask(n);
    let balanced = |s: u64| component_count(&nbr, s) == component_count(&nbr, full & !s);
    let iii_prime = (0..n).all(|u| (u + 1..n).all(|v| balanced(1 << u | 1 << v)));
    let iii_double_prime = (1..full).all(balanced);
    let iv_prime = (1..n).all(|k| table.get(k, 1) == table.get(n - k, 1));
    Ok(StrongVariants {
        iii_prime,
        iii_double_prime,
        iv_prime,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifierVerdict {
    pub order: usize,
    pub condition_i: bool,
    pub condition_iii: bool,
    pub condition_iv: bool,
    pub strong: Option<StrongVariants>,
    /// All evaluated conditions coincide.
    pub agreement: bool,
}

pub fn classify(g: &Graph, cap: usize, exec: Execution) -> Result<ClassifierVerdict> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let table = coefficient_table(g, cap, exec)?;
    let ci = condition_i(g);
    let ciii = condition_iii(g);
    let civ = condition_iv(&table);
    let strong = strong_variants(g, cap, exec)?;
    let flags = [ci, ciii, civ, strong.iii_prime, strong.iii_double_prime, strong.iv_prime];
    Ok(ClassifierVerdict {
        order: g.order(),
        condition_i: ci,
        condition_iii: ciii,
        condition_iv: civ,
        strong: Some(strong),
        agreement: flags.iter().all(|&f| f == ci),
    })
}

/// Vertices whose removal increases the number of components.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
            if let Some(&v) = g.neighbors(u).get(*next) {
                *next += 1;
                if disc[v] == usize::MAX {
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((v, u, 0));
                } else if v != parent {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if parent != root && low[u] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Connected with no cut vertex (so `K1` and `K2` qualify).
pub fn is_two_connected(g: &Graph) -> bool {
    g.is_connected() && cut_vertices(g).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub subset: VertexSubset,
    pub p: u64,
    pub q: u64,
    /// `k(G[S])`
    pub t: usize,
    /// `k(G - S)`
    pub r: usize,
    #[serde(serialize_with = "rational::serde_str::serialize_vec")]
    pub weights: Vec<Weight>,
    pub subset_is_safe: bool,
    /// `w(S) / w(G)`, equal to `t / (t + r)`.
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub ratio: Weight,
    /// `q / (p + q)`
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub threshold: Weight,
    /// `ratio < threshold`: the weights witness `s(G, w) < q/(p+q) w(G)`.
    pub refutes: bool,
}

/// Builds the balanced weights for `s` and compares `w(S)/w(G)` with `q/(p+q)`.
pub fn ratio_lemma_gadget(g: &Graph, s: &VertexSubset, p: u64, q: u64) -> Result<GadgetReport> {
    if q == 0 || p < q {
        return Err(Error::Invalid(format!("need p >= q >= 1, got p={p}, q={q}")));
    }
    let weights = safe::witness_weight(g, s)?;
    let t = components(g, s).len();
    let r = components(g, &s.complement(g.order())).len();
    if (t as u128) * (p as u128) > (q as u128) * (r as u128) {
        return Err(Error::Invalid(format!(
            "k(G[S])/k(G-S) = {t}/{r} exceeds q/p = {q}/{p}"
        )));
    }
    let wg = WeightedGraph::new(g.clone(), weights)?;
    let ratio = crate::graph::subset_weight(&wg, s)? / wg.total_weight();
    let threshold = Weight::new(BigInt::from(q), BigInt::from(p + q));
    Ok(GadgetReport {
        subset: s.clone(),
        p,
        q,
        t,
        r,
        subset_is_safe: safe::is_safe_set(&wg, s)?,
        refutes: ratio < threshold,
        ratio,
        threshold,
        weights: wg.into_parts().1,
    })
}

/// Every labeled connected graph on `n` vertices, as `(code, graph)` where bit
/// `k` of `code` selects the `k`-th pair in lexicographic order.
pub fn labeled_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub(crate) fn masks_for_code(pairs: &[(usize, usize)], n: usize, code: u64) -> Vec<u64> {
    let mut nbr = vec![0u64; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        if code >> k & 1 == 1 {
            nbr[u] |= 1 << v;
            nbr[v] |= 1 << u;
        }
    }
    nbr
}

pub fn graph_for_code(n: usize, code: u64) -> Graph {
    let pairs = labeled_pairs(n);
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| code >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::from_edges(n, &edges).expect("labeled pairs are distinct")
}

/// Codes of all connected labeled graphs of order `n` (`n <= 8`).
pub fn connected_codes(n: usize) -> Vec<u64> {
    assert!((1..=8).contains(&n));
    let pairs = labeled_pairs(n);
    let full = full_mask(n);
    (0..1u64 << pairs.len())
        .filter(|&code| grow(&masks_for_code(&pairs, n, code), 1, full) == full)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub edges: Vec<(usize, usize)>,
    pub condition_i: bool,
    pub condition_iii: bool,
    pub condition_iv: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampledCondition {
    /// Always `"sampled"`: random weights can only corroborate, never prove.
    pub kind: &'static str,
    pub graphs: usize,
    pub trials_per_graph: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub order: usize,
    pub seed: u64,
    pub trials: usize,
    pub edge_sets: u64,
    pub connected_graphs: usize,
    /// Graphs satisfying (i), (iii) and (iv) together.
    pub members: usize,
    pub disagreements: Vec<Disagreement>,
    pub polynomial_sanity_failures: usize,
    pub two_connectivity_mismatches: usize,
    pub condition_ii: SampledCondition,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
            && self.polynomial_sanity_failures == 0
            && self.two_connectivity_mismatches == 0
            && self.condition_ii.failures == 0
    }
}

#[derive(Default)]
struct CorpusPart {
    connected: usize,
    members: usize,
    disagreements: Vec<Disagreement>,
    sanity_failures: usize,
    two_conn_mismatches: usize,
    sampled_graphs: usize,
    sampled_failures: usize,
}

fn sample_seed(seed: u64, code: u64) -> u64 {
    seed ^ code.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(29)
}

fn check_polynomial(g: &Graph, table: &CoefficientTable) -> bool {
    let n = g.order();
    let m = g.size() as u64;
    table.get(1, 1) == n as u64
        && table.get(2, 1) == m
        && table.get(2, 2) == binomial(n, 2) - m
        && table.row_sums_match_binomials()
}

fn corpus_chunk(n: usize, codes: std::ops::Range<u64>, seed: u64, trials: usize) -> CorpusPart {
    let pairs = labeled_pairs(n);
    let full = full_mask(n);
    let mut part = CorpusPart::default();
    for code in codes {
        let nbr = masks_for_code(&pairs, n, code);
        if grow(&nbr, 1, full) != full {
            continue;
        }
        part.connected += 1;
        let g = graph_for_code(n, code);
        let table = table_from_masks(&nbr, Execution::Sequential);
        let ci = condition_i(&g);
        let ciii = condition_iii(&g);
        let civ = condition_iv(&table);
        if !(ci == ciii && ci == civ) {
            part.disagreements.push(Disagreement {
                edges: g.edges(),
                condition_i: ci,
                condition_iii: ciii,
                condition_iv: civ,
            });
        }
        if !check_polynomial(&g, &table) {
            part.sanity_failures += 1;
        }
        if is_two_connected_by_coefficients(&table) != is_two_connected(&g) {
            part.two_conn_mismatches += 1;
        }
        if ci && ciii && civ {
            part.members += 1;
            if trials > 0 {
                part.sampled_graphs += 1;
                let mut rng = random::rng(sample_seed(seed, code));
                let cfg = SolverConfig::with_cap(n).sequential();
                for _ in 0..trials {
                    let w = random::integer_weights(&mut rng, n, 1, 1000);
                    let wg = WeightedGraph::new(g.clone(), w).expect("positive weights");
                    let s = safe::safe_number(&wg, &cfg).expect("within cap").optimum;
                    if &s + &s < wg.total_weight() {
                        part.sampled_failures += 1;
                    }
                }
            }
        }
    }
    part
}

/// Checks (i) = (iii) = (iv) on every connected labeled graph of order `n`
/// (`5 <= n <= 7`) and samples (ii) with `trials` seeded weight vectors on
/// the graphs where they hold.
pub fn corpus_crosscheck(n: usize, seed: u64, trials: usize, exec: Execution) -> Result<CorpusReport> {
    if !(5..=7).contains(&n) {
        return Err(Error::Invalid(format!("corpus order must lie in 5..=7, got {n}")));
    }
    let edge_sets = 1u64 << binomial(n, 2);
    let block = 1u64 << 12;
    let blocks = edge_sets.div_ceil(block) as usize;
    let parts = map_indexed(exec, blocks, |i| {
        let lo = i as u64 * block;
        corpus_chunk(n, lo..(lo + block).min(edge_sets), seed, trials)
    });
    let mut report = CorpusReport {
        order: n,
        seed,
        trials,
        edge_sets,
        connected_graphs: 0,
        members: 0,
        disagreements: Vec::new(),
        polynomial_sanity_failures: 0,
        two_connectivity_mismatches: 0,
        condition_ii: SampledCondition {
            kind: "sampled",
            graphs: 0,
            trials_per_graph: trials,
            failures: 0,
        },
    };
    for part in parts {
        report.connected_graphs += part.connected;
        report.members += part.members;
        report.disagreements.extend(part.disagreements);
        report.polynomial_sanity_failures += part.sanity_failures;
        report.two_connectivity_mismatches += part.two_conn_mismatches;
        report.condition_ii.graphs += part.sampled_graphs;
        report.condition_ii.failures += part.sampled_failures;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(g: &Graph) -> CoefficientTable {
        coefficient_table(g, DEFAULT_POLY_CAP, Execution::Sequential).unwrap()
    }

    #[test]
    fn small_tables() {
        let k3 = table(&Graph::complete(3));
        assert_eq!(k3.rows(), vec![vec![3], vec![3, 0], vec![1, 0, 0]]);
        let p3 = table(&Graph::path(3));
        assert_eq!(p3.rows(), vec![vec![3], vec![2, 1], vec![1, 0, 0]]);
        assert_eq!(k3.get(0, 0), 0);
        assert_eq!(k3.get(9, 1), 0);
    }

    #[test]
    fn low_order_identities() {
        for g in [Graph::path(6), Graph::cycle(7), Graph::complete_bipartite(2, 3), Graph::star(5)] {
            let t = table(&g);
            let n = g.order();
            assert_eq!(t.get(1, 1), n as u64);
            assert_eq!(t.get(2, 1), g.size() as u64);
            assert_eq!(t.get(2, 2), binomial(n, 2) - g.size() as u64);
            assert!(t.row_sums_match_binomials());
        }
    }

    #[test]
    fn two_connectivity_examples() {
        assert!(is_two_connected_by_coefficients(&table(&Graph::cycle(5))));
        let p4 = table(&Graph::path(4));
        assert_eq!(p4.get(3, 1), 2);
        assert!(!is_two_connected_by_coefficients(&p4));
        assert!(is_two_connected_by_coefficients(&table(&Graph::complete(4))));
    }

    #[test]
    fn condition_examples() {
        assert!(condition_iii(&Graph::cycle(6)));
        assert!(condition_iii(&Graph::complete(5)));
        assert!(!condition_iii(&Graph::path(5)));
        assert!(condition_iv(&table(&Graph::cycle(6))));
        assert!(condition_iv(&table(&Graph::complete(6))));
        assert!(!condition_iv(&table(&Graph::complete_bipartite(2, 3))));
        assert!(condition_i(&Graph::cycle(9)));
        assert!(condition_i(&Graph::complete(7)));
        let mut chord = Graph::cycle(6);
        chord.add_edge(0, 3).unwrap();
        assert!(!condition_i(&chord));
    }

    #[test]
    fn strong_variant_examples() {
        let all = StrongVariants {
            iii_prime: true,
            iii_double_prime: true,
            iv_prime: true,
        };
        assert_eq!(strong_variants(&Graph::cycle(5), 20, Execution::Sequential).unwrap(), all);
        assert_eq!(strong_variants(&Graph::complete(4), 20, Execution::Sequential).unwrap(), all);
        assert!(!strong_variants(&Graph::path(4), 20, Execution::Sequential).unwrap().iii_prime);
    }

    #[test]
    fn classify_examples() {
        let v = classify(&Graph::cycle(6), 20, Execution::Sequential).unwrap();
        assert!(v.condition_i && v.agreement);
        let v = classify(&Graph::path(6), 20, Execution::Sequential).unwrap();
        assert!(!v.condition_i && v.agreement);
        assert_eq!(
            classify(&Graph::from_edges(3, &[(0, 1)]).unwrap(), 20, Execution::Sequential),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn gadget_examples() {
        let r = ratio_lemma_gadget(&Graph::path(5), &[2].into(), 1, 1).unwrap();
        assert_eq!((r.t, r.r), (1, 2));
        assert_eq!(r.ratio, rational::ratio(1, 3));
        assert!(r.subset_is_safe && r.refutes);
        let r = ratio_lemma_gadget(&Graph::cycle(6), &[0, 2, 4].into(), 1, 1).unwrap();
        assert_eq!(r.ratio, rational::ratio(1, 2));
        assert!(!r.refutes);
        let r = ratio_lemma_gadget(&Graph::complete(4), &[2].into(), 1, 1).unwrap();
        assert_eq!((r.t, r.r, r.ratio.clone()), (1, 1, rational::ratio(1, 2)));
        // t/r = 2/1 > 1/1
        assert!(ratio_lemma_gadget(&Graph::path(5), &[0, 4].into(), 1, 1).is_err());
        assert!(ratio_lemma_gadget(&Graph::path(5), &[2].into(), 1, 2).is_err());
    }

    #[test]
    fn cut_vertices_examples() {
        assert_eq!(cut_vertices(&Graph::path(5)), vec![1, 2, 3]);
        assert!(cut_vertices(&Graph::cycle(5)).is_empty());
        assert_eq!(cut_vertices(&Graph::star(3)), vec![0]);
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(cut_vertices(&bowtie), vec![2]);
    }

    #[test]
    fn corpus_counts() {
        // connected labeled graphs: 1, 1, 4, 38, 728
        let counts: Vec<usize> = (1..=5).map(|n| connected_codes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn corpus_five() {
        let r = corpus_crosscheck(5, 7, 3, Execution::Sequential).unwrap();
        assert_eq!(r.connected_graphs, 728);
        // K5 plus the 12 labeled 5-cycles
        assert_eq!(r.members, 13);
        assert!(r.passed(), "{r:?}");
        assert!(corpus_crosscheck(4, 7, 3, Execution::Sequential).is_err());
    }

    #[test]
    fn cap_enforced() {
        assert!(coefficient_table(&Graph::path(21), DEFAULT_POLY_CAP, Execution::Sequential).is_err());
    }
}
