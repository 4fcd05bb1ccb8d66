//! Immutable undirected simple graphs with optional vertex weights.

use serde::{Deserialize, Serialize};

use crate::entropy::{kahan_sum, SUM_TOLERANCE};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    /// Normalized so that `u < v`, in input order.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    weights: Option<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        let g = Graph::new(r.n, r.edges)?;
        match r.weights {
            Some(w) => g.with_weights(w),
            None => Ok(g),
        }
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges,
            weights: g.weights,
        }
    }
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside [0, {n})"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            normalized.push((a, b));
            adj[a].push(b);
            adj[b].push(a);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    v.min(w[0]),
                    v.max(w[0])
                )));
            }
        }
        Ok(Self {
            n,
            edges: normalized,
            adj,
            weights: None,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is valid")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is valid")
    }

    /// Attaches vertex weights; they must be nonnegative and sum to 1.
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "{} weights for {} vertices",
                weights.len(),
                self.n
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidGraph(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let total = kahan_sum(weights.iter().copied());
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidGraph(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Weight of `v`, `1/n` when the graph is unweighted.
    pub fn weight(&self, v: usize) -> f64 {
        match &self.weights {
            Some(w) => w[v],
            None => 1.0 / self.n as f64,
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Complement graph; weights are carried over.
    pub fn complement(&self) -> Self {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        let mut g = Self::new(self.n, edges).expect("complement of a simple graph is simple");
        g.weights = self.weights.clone();
        g
    }

    pub fn is_independent_set(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            u < self.n && set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v))
        })
    }

    /// `colors[v]` is the color of vertex `v`.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n && self.edges.iter().all(|&(u, v)| colors[u] != colors[v])
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Adjacency rows as bitmasks; only for graphs with at most 64 vertices.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &w| m | (1u64 << w)))
            .collect()
    }

    /// Two-coloring of the subgraph induced by `vertices`, or `None` if it has an odd cycle.
    /// Returned sides are indexed like `vertices`.
    pub fn bipartition(&self, vertices: &[usize]) -> Option<Vec<bool>> {
        let pos: std::collections::HashMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut side: Vec<Option<bool>> = vec![None; vertices.len()];
        for start in 0..vertices.len() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let s = side[i].unwrap();
                for w in &self.adj[vertices[i]] {
                    if let Some(&j) = pos.get(w) {
                        match side[j] {
                            None => {
                                side[j] = Some(!s);
                                stack.push(j);
                            }
                            Some(t) if t == s => return None,
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }
}
