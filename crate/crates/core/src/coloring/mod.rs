//! Minimum entropy coloring.

mod exact;
mod greedy;
mod interval;
mod jk;
mod mis;

pub use exact::{exact_coloring, DEFAULT_NODE_LIMIT};
pub use greedy::{greedy_coloring, MisOracle};
pub use interval::{interval_mec, LayerDecomposition};
pub use jk::{gen_jk, JkGadget};
pub use mis::{approx_mis, exact_mis, MAX_EXACT_MIS_VERTICES};

use serde::{Deserialize, Serialize};

use crate::entropy::{entropy_of_counts, entropy_of_probs, kahan_sum};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A vertex coloring with colors `1, 2, ..`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    /// Checks properness; color 0 is rejected.
    pub fn new(g: &Graph, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != g.n() {
            return Err(Error::Infeasible(format!(
                "{} colors for {} vertices",
                colors.len(),
                g.n()
            )));
        }
        if colors.contains(&0) {
            return Err(Error::Infeasible("colors must be positive".into()));
        }
        if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| colors[u] == colors[v]) {
            return Err(Error::Infeasible(format!(
                "adjacent vertices {u} and {v} share color {}",
                colors[u]
            )));
        }
        Ok(Self { colors })
    }

    /// Coloring whose classes are the given disjoint vertex sets, class `i` getting color `i + 1`.
    pub fn from_classes(g: &Graph, classes: &[Vec<usize>]) -> Result<Self> {
        let mut colors = vec![0; g.n()];
        for (i, class) in classes.iter().enumerate() {
            for &v in class {
                if v >= g.n() || colors[v] != 0 {
                    return Err(Error::Infeasible(format!(
                        "vertex {v} is out of range or in two classes"
                    )));
                }
                colors[v] = i + 1;
            }
        }
        Self::new(g, colors)
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn num_colors(&self) -> usize {
        let mut used: Vec<usize> = self.colors.clone();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// Relabels the used colors to `1..=k`, preserving their order.
    pub fn canonicalize(&self) -> Self {
        let mut used: Vec<usize> = self.colors.clone();
        used.sort_unstable();
        used.dedup();
        let colors = self
            .colors
            .iter()
            .map(|c| used.binary_search(c).unwrap() + 1)
            .collect();
        Self { colors }
    }

    /// Color classes in increasing color order, each sorted; unused colors are skipped.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let canon = self.canonicalize();
        let k = canon.colors.iter().copied().max().unwrap_or(0);
        let mut classes = vec![Vec::new(); k];
        for (v, &c) in canon.colors.iter().enumerate() {
            classes[c - 1].push(v);
        }
        classes
    }

    /// Class sizes in increasing color order.
    pub fn class_sizes(&self) -> Vec<u64> {
        self.classes().iter().map(|c| c.len() as u64).collect()
    }

    /// Entropy with uniform vertex weights.
    pub fn entropy(&self) -> f64 {
        entropy_of_counts(&self.class_sizes())
    }
}

/// Entropy of the class masses: uniform `1/n` per vertex, or the graph's
/// weights when present.
pub fn coloring_entropy(g: &Graph, c: &Coloring) -> Result<f64> {
    if !g.is_proper_coloring(c.colors()) {
        return Err(Error::Infeasible(
            "coloring is not proper for this graph".into(),
        ));
    }
    match g.weights() {
        None => Ok(c.entropy()),
        Some(w) => {
            let masses: Vec<f64> = c
                .classes()
                .iter()
                .map(|class| kahan_sum(class.iter().map(|&v| w[v])))
                .collect();
            Ok(entropy_of_probs(&masses))
        }
    }
}
