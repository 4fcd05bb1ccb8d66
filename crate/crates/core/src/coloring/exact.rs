use super::greedy::{greedy_coloring, MisOracle};
use super::Coloring;
use crate::entropy::entropy_of_counts;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on search nodes for [`exact_coloring`].
pub const DEFAULT_NODE_LIMIT: u64 = 200_000_000;

const TIE: f64 = 1e-12;

/// Minimum entropy proper coloring (uniform vertex weights).
///
/// Vertices are placed in index order into an existing compatible class or a
/// new one, so colorings are enumerated as restricted growth strings in
/// lexicographic order and the first optimum found is the lexicographically
/// smallest. A partial partition is abandoned when even the completion that
/// pours every remaining vertex into its largest class cannot beat the
/// incumbent: every completion is dominated by that one, hence has at least its entropy.
pub fn exact_coloring(g: &Graph, node_limit: u64) -> Result<Coloring> {
    let n = g.n();
    if n > 64 {
        return Err(Error::BudgetExceeded {
            what: "exact coloring (vertices)",
            needed: n as u128,
            limit: 64,
        });
    }
    if n == 0 {
        return Coloring::new(g, Vec::new());
    }
    // a greedy coloring bounds the optimum before the first leaf is reached
    let seed = if n <= super::mis::MAX_EXACT_MIS_VERTICES {
        greedy_coloring(g, MisOracle::Exact)?
    } else {
        greedy_coloring(g, MisOracle::Approx)?
    };

    let mut search = Search {
        adj: g.adjacency_masks(),
        class_masks: Vec::new(),
        sizes: Vec::new(),
        colors: vec![0; n],
        seed_bound: seed.entropy(),
        best: None,
        nodes: 0,
        node_limit,
        aborted: false,
    };
    search.visit(0);
    if search.aborted {
        return Err(Error::BudgetExceeded {
            what: "exact coloring search nodes",
            needed: search.nodes as u128,
            limit: node_limit as u128,
        });
    }
    let (_, colors) = search.best.expect("seed coloring is reachable");
    Coloring::new(g, colors)
}

struct Search {
    adj: Vec<u64>,
    class_masks: Vec<u64>,
    sizes: Vec<u64>,
    colors: Vec<usize>,
    seed_bound: f64,
    best: Option<(f64, Vec<usize>)>,
    nodes: u64,
    node_limit: u64,
    aborted: bool,
}

impl Search {
    /// Entropy of the sizes with `remaining` extra vertices added to the largest class.
    fn completion_bound(&self, remaining: u64) -> f64 {
        let mut counts = self.sizes.clone();
        if let Some(max) = counts.iter_mut().max() {
            *max += remaining;
        } else {
            counts.push(remaining);
        }
        entropy_of_counts(&counts)
    }

    fn hopeless(&self, bound: f64) -> bool {
        match &self.best {
            Some((b, _)) => bound >= b - TIE,
            None => bound > self.seed_bound + TIE,
        }
    }

    fn visit(&mut self, v: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
            return;
        }
        let n = self.colors.len();
        if v == n {
            let h = entropy_of_counts(&self.sizes);
            if !self.hopeless(h) {
                self.best = Some((h, self.colors.clone()));
            }
            return;
        }
        if self.hopeless(self.completion_bound((n - v) as u64)) {
            return;
        }
        let bit = 1u64 << v;
        for c in 0..self.class_masks.len() {
            if self.class_masks[c] & self.adj[v] == 0 {
                self.class_masks[c] |= bit;
                self.sizes[c] += 1;
                self.colors[v] = c + 1;
                self.visit(v + 1);
                self.class_masks[c] &= !bit;
                self.sizes[c] -= 1;
            }
        }
        self.class_masks.push(bit);
        self.sizes.push(1);
        self.colors[v] = self.class_masks.len();
        self.visit(v + 1);
        self.class_masks.pop();
        self.sizes.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let c = exact_coloring(&Graph::path(3), DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(c.colors(), &[1, 2, 1]);
        assert!((c.entropy() - 0.9183).abs() < 1e-3);

        let c = exact_coloring(&Graph::complete(3), DEFAULT_NODE_LIMIT).unwrap();
        assert!((c.entropy() - 3f64.log2()).abs() < 1e-12);

        let c = exact_coloring(&Graph::cycle(5), DEFAULT_NODE_LIMIT).unwrap();
        let mut sizes = c.class_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 2]);
        assert!((c.entropy() - 1.5219).abs() < 1e-3);
        assert_eq!(c.colors(), &[1, 2, 1, 2, 3]);
    }

    #[test]
    fn edgeless_and_empty() {
        let c = exact_coloring(&Graph::empty(6), DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(c.colors(), &[1; 6]);
        assert!(exact_coloring(&Graph::empty(0), DEFAULT_NODE_LIMIT)
            .unwrap()
            .colors()
            .is_empty());
    }

    #[test]
    fn node_budget() {
        assert!(matches!(
            exact_coloring(&Graph::cycle(9), 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
