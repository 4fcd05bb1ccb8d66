use serde::{Deserialize, Serialize};

use super::mis::{approx_mis_in, check_size, exact_mis_in, mask_to_vec};
use super::Coloring;
use crate::error::Result;
use crate::graph::Graph;

/// Independent set routine used by [`greedy_coloring`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MisOracle {
    /// Exact maximum (weight, when the graph is weighted) independent set.
    Exact,
    /// Minimum-degree greedy, a `(D + 2) / 3`-approximation.
    Approx,
}

/// Repeatedly removes an independent set from the residual graph and gives
/// it the next color, starting at 1.
pub fn greedy_coloring(g: &Graph, oracle: MisOracle) -> Result<Coloring> {
    let n = g.n();
    let mut colors = vec![0usize; n];
    let mut color = 0;
    match oracle {
        MisOracle::Exact => {
            check_size(g)?;
            let adj = g.adjacency_masks();
            let mut active = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            while active != 0 {
                let set = exact_mis_in(&adj, active, g.weights());
                debug_assert!(set != 0);
                color += 1;
                for v in mask_to_vec(set) {
                    colors[v] = color;
                }
                active &= !set;
            }
        }
        MisOracle::Approx => {
            let mut active = vec![true; n];
            let mut left = n;
            while left > 0 {
                color += 1;
                for v in approx_mis_in(g, &active) {
                    colors[v] = color;
                    active[v] = false;
                    left -= 1;
                }
            }
        }
    }
    Coloring::new(g, colors)
}
