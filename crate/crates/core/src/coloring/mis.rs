use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph [`exact_mis`] accepts.
pub const MAX_EXACT_MIS_VERTICES: usize = 40;

/// Maximum independent set (maximum weight when `weights` is given) by
/// branch and bound. Among optima the lexicographically smallest vertex set is
/// returned.
pub fn exact_mis(g: &Graph, weights: Option<&[f64]>) -> Result<Vec<usize>> {
    check_size(g)?;
    if let Some(w) = weights {
        if w.len() != g.n() {
            return Err(Error::Precondition(format!(
                "{} weights for {} vertices",
                w.len(),
                g.n()
            )));
        }
    }
    let active = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    Ok(mask_to_vec(exact_mis_in(
        &g.adjacency_masks(),
        active,
        weights,
    )))
}

pub(crate) fn check_size(g: &Graph) -> Result<()> {
    if g.n() > MAX_EXACT_MIS_VERTICES {
        return Err(Error::BudgetExceeded {
            what: "exact maximum independent set (vertices)",
            needed: g.n() as u128,
            limit: MAX_EXACT_MIS_VERTICES as u128,
        });
    }
    Ok(())
}

pub(crate) fn mask_to_vec(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Exact search restricted to the vertices in `active`.
pub(crate) fn exact_mis_in(adj: &[u64], active: u64, weights: Option<&[f64]>) -> u64 {
    struct Search<'a> {
        adj: &'a [u64],
        weights: Option<&'a [f64]>,
        best: Option<(f64, u64)>,
    }

    impl Search<'_> {
        fn weight(&self, v: usize) -> f64 {
            self.weights.map_or(1.0, |w| w[v])
        }

        /// Greedy clique cover of `cand`: no independent set takes more than
        /// one vertex per clique, so summing each clique's heaviest vertex bounds it.
        fn bound(&self, mut cand: u64) -> f64 {
            let mut total = 0.0;
            while cand != 0 {
                let v = cand.trailing_zeros() as usize;
                let mut clique_heaviest = self.weight(v);
                let mut common = self.adj[v] & cand;
                cand &= !(1u64 << v);
                while common != 0 {
                    let u = common.trailing_zeros() as usize;
                    clique_heaviest = clique_heaviest.max(self.weight(u));
                    common &= self.adj[u];
                    cand &= !(1u64 << u);
                }
                total += clique_heaviest;
            }
            total
        }

        fn visit(&mut self, cand: u64, cur: u64, cur_w: f64) {
            if cand == 0 {
                if self.best.is_none_or(|(b, _)| cur_w > b + 1e-12) {
                    self.best = Some((cur_w, cur));
                }
                return;
            }
            if let Some((b, _)) = self.best {
                if cur_w + self.bound(cand) <= b + 1e-12 {
                    return;
                }
            }
            let v = cand.trailing_zeros() as usize;
            let bit = 1u64 << v;
            self.visit(
                cand & !bit & !self.adj[v],
                cur | bit,
                cur_w + self.weight(v),
            );
            self.visit(cand & !bit, cur, cur_w);
        }
    }

    let mut search = Search {
        adj,
        weights,
        best: None,
    };
    search.visit(active, 0, 0.0);
    search.best.map_or(0, |(_, set)| set)
}

/// Minimum-degree greedy independent set: repeatedly take a vertex of
/// minimum residual degree (smallest index on ties) and delete its closed
/// neighborhood. Its size is within a factor `(D + 2) / 3` of the maximum for
/// maximum degree `D`.
pub fn approx_mis(g: &Graph) -> Vec<usize> {
    approx_mis_in(g, &vec![true; g.n()])
}

pub(crate) fn approx_mis_in(g: &Graph, active: &[bool]) -> Vec<usize> {
    let mut alive = active.to_vec();
    let mut deg: Vec<usize> = (0..g.n())
        .map(|v| g.neighbors(v).iter().filter(|&&w| alive[w]).count())
        .collect();
    let mut chosen = Vec::new();
    loop {
        let pick = (0..g.n())
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v));
        let Some(v) = pick else { break };
        chosen.push(v);
        let mut removed = vec![v];
        removed.extend(g.neighbors(v).iter().copied().filter(|&w| alive[w]));
        for &r in &removed {
            alive[r] = false;
        }
        for &r in &removed {
            for &w in g.neighbors(r) {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_examples() {
        assert_eq!(exact_mis(&Graph::path(3), None).unwrap(), vec![0, 2]);
        assert_eq!(exact_mis(&Graph::complete(5), None).unwrap(), vec![0]);
        assert_eq!(exact_mis(&Graph::cycle(5), None).unwrap(), vec![0, 2]);
        assert_eq!(exact_mis(&Graph::empty(4), None).unwrap(), vec![0, 1, 2, 3]);
        assert!(exact_mis(&Graph::empty(0), None).unwrap().is_empty());
    }

    #[test]
    fn exact_weighted() {
        let p3 = Graph::path(3);
        assert_eq!(exact_mis(&p3, Some(&[0.1, 0.5, 0.1])).unwrap(), vec![1]);
        assert_eq!(exact_mis(&p3, Some(&[0.3, 0.5, 0.3])).unwrap(), vec![0, 2]);
        assert!(exact_mis(&p3, Some(&[0.3])).is_err());
    }

    #[test]
    fn exact_budget() {
        assert!(matches!(
            exact_mis(&Graph::empty(41), None),
            Err(Error::BudgetExceeded { .. })
        ));
        // 40 isolated-ish vertices must still be fast with the clique bound
        let g = Graph::cycle(40);
        assert_eq!(exact_mis(&g, None).unwrap().len(), 20);
    }

    #[test]
    fn approx_examples() {
        assert_eq!(approx_mis(&Graph::path(3)), vec![0, 2]);
        assert_eq!(approx_mis(&Graph::empty(3)), vec![0, 1, 2]);
        assert_eq!(approx_mis(&Graph::complete(4)), vec![0]);
    }
}
