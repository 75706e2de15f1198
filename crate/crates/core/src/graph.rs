//! Simple undirected graphs with exact positive vertex weights.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Weight};

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    /// Cycle `v0 v1 ... v(n-1) v0`. Needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("complete graph edges are valid");
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).expect("bipartite edges are valid");
            }
        }
        g
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        insert_sorted(&mut self.adj[u], v);
        insert_sorted(&mut self.adj[v], u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        match (self.adj[u].binary_search(&v), self.adj[v].binary_search(&u)) {
            (Ok(i), Ok(j)) => {
                self.adj[u].remove(i);
                self.adj[v].remove(j);
                Ok(())
            }
            _ => Err(Error::MissingEdge(u, v)),
        }
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || components(self, &VertexSubset::full(self.order())).len() == 1
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adj.iter().all(|ns| ns.len() + 1 == n)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: v,
                order: self.order(),
            })
        }
    }

    /// Neighbourhoods as bit masks. Only valid for `n <= 64`.
    pub(crate) fn masks(&self) -> Vec<u64> {
        debug_assert!(self.order() <= 64);
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }
}

fn insert_sorted(list: &mut Vec<usize>, v: usize) {
    if let Err(pos) = list.binary_search(&v) {
        list.insert(pos, v);
    }
}

/// A graph together with a positive exact weight on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<Weight>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != graph.order() {
            return Err(Error::WeightCount {
                expected: graph.order(),
                got: weights.len(),
            });
        }
        rational::check_positive(&weights)?;
        Ok(WeightedGraph { graph, weights })
    }

    pub fn uniform(graph: Graph) -> Self {
        let weights = vec![rational::int(1); graph.order()];
        WeightedGraph { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> &Weight {
        &self.weights[v]
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn total_weight(&self) -> Weight {
        rational::sum(&self.weights)
    }

    pub fn into_parts(self) -> (Graph, Vec<Weight>) {
        (self.graph, self.weights)
    }
}

/// Sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexSubset(Vec<usize>);

impl VertexSubset {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSubset(members)
    }

    pub fn full(n: usize) -> Self {
        VertexSubset((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSubset(bits(mask).collect())
    }

    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | (1u64 << v))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Vertices of `0..n` not in this set.
    pub fn complement(&self, n: usize) -> Self {
        VertexSubset((0..n).filter(|&v| !self.contains(v)).collect())
    }

    pub(crate) fn check_within(&self, g: &Graph) -> Result<()> {
        match self.0.last() {
            Some(&v) => g.check_vertex(v),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSubset::new(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for VertexSubset {
    fn from(members: [usize; N]) -> Self {
        VertexSubset::new(members.to_vec())
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Components of an induced subgraph, ordered by their smallest vertex.
pub type ComponentList = Vec<VertexSubset>;

/// Splits `s` into the vertex sets of the components of `g[s]`.
///
/// Panics if `s` contains an index outside `g`; see [`try_components`].
pub fn components(g: &Graph, s: &VertexSubset) -> ComponentList {
    try_components(g, s).expect("subset within graph")
}

pub fn try_components(g: &Graph, s: &VertexSubset) -> Result<ComponentList> {
    s.check_within(g)?;
    let n = g.order();
    let mut inside = vec![false; n];
    for &v in s.members() {
        inside[v] = true;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    // members are sorted, so each component is discovered from its minimum
    for &root in s.members() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &v in g.neighbors(u) {
                if inside[v] && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        out.push(VertexSubset::new(comp));
    }
    Ok(out)
}

/// Exact total weight of `s`; zero for the empty set.
pub fn subset_weight(g: &WeightedGraph, s: &VertexSubset) -> Result<Weight> {
    s.check_within(g.graph())?;
    Ok(rational::sum(s.members().iter().map(|&v| g.weight(v))))
}

/// Whether some edge joins `a` to `b`. The sets must be disjoint.
pub fn edge_between(g: &Graph, a: &VertexSubset, b: &VertexSubset) -> Result<bool> {
    a.check_within(g)?;
    b.check_within(g)?;
    if a.members().iter().any(|&v| b.contains(v)) {
        return Err(Error::NotDisjoint);
    }
    Ok(a
        .members()
        .iter()
        .any(|&u| g.neighbors(u).iter().any(|&v| b.contains(v))))
}
