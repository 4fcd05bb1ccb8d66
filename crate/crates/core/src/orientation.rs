//! Minimum entropy orientation.
//!
//! An orientation induces the distribution `rho(v) / m` over heads. Biased
//! orientations (each edge toward its higher-degree endpoint) are within one
//! bit of optimal, and because an edge's direction depends only on its two
//! endpoints, their entropy can be estimated from a constant number of
//! sampled vertices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::{entropy_of_counts, kahan_sum};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on `2^m` for [`exact_orientation`].
pub const DEFAULT_EXACT_LIMIT: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    /// `(tail, head)` for each edge, in the graph's edge order.
    directions: Vec<(usize, usize)>,
    indegrees: Vec<u64>,
}

impl Orientation {
    /// Orients edge `e` toward `heads[e]`, which must be one of its endpoints.
    pub fn from_heads(g: &Graph, heads: &[usize]) -> Result<Self> {
        if heads.len() != g.m() {
            return Err(Error::Infeasible(format!(
                "{} heads for {} edges",
                heads.len(),
                g.m()
            )));
        }
        let mut indegrees = vec![0u64; g.n()];
        let mut directions = Vec::with_capacity(g.m());
        for (e, (&(u, v), &h)) in g.edges().iter().zip(heads).enumerate() {
            let tail = if h == v {
                u
            } else if h == u {
                v
            } else {
                return Err(Error::Infeasible(format!(
                    "head {h} is not an endpoint of edge {e} ({u}, {v})"
                )));
            };
            indegrees[h] += 1;
            directions.push((tail, h));
        }
        Ok(Self {
            directions,
            indegrees,
        })
    }

    pub fn directions(&self) -> &[(usize, usize)] {
        &self.directions
    }

    pub fn heads(&self) -> impl Iterator<Item = usize> + '_ {
        self.directions.iter().map(|&(_, h)| h)
    }

    pub fn indegrees(&self) -> &[u64] {
        &self.indegrees
    }

    pub fn entropy(&self) -> f64 {
        entropy_of_counts(&self.indegrees)
    }
}

/// Entropy of `{rho(v) / m}` after checking that `o` orients `g`.
pub fn orientation_entropy(g: &Graph, o: &Orientation) -> Result<f64> {
    if g.m() == 0 {
        return Err(Error::Precondition(
            "orientation entropy needs at least one edge".into(),
        ));
    }
    if o.directions.len() != g.m()
        || o.indegrees.len() != g.n()
        || g.edges()
            .iter()
            .zip(&o.directions)
            .any(|(&(u, v), &(t, h))| !((t, h) == (u, v) || (t, h) == (v, u)))
    {
        return Err(Error::Infeasible(
            "orientation does not match the graph".into(),
        ));
    }
    Ok(o.entropy())
}

/// Head of edge `uv` under the biased rule: the endpoint of larger degree, or on
/// a degree tie the one appearing later in the order (`position[v]` is `v`'s rank).
/// Needs only the two endpoints.
pub fn biased_head(g: &Graph, position: &[usize], u: usize, v: usize) -> usize {
    match g.degree(u).cmp(&g.degree(v)) {
        std::cmp::Ordering::Greater => u,
        std::cmp::Ordering::Less => v,
        std::cmp::Ordering::Equal => {
            if position[u] > position[v] {
                u
            } else {
                v
            }
        }
    }
}

fn positions(n: usize, order: &[usize]) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::Precondition(format!(
            "order has {} entries for {n} vertices",
            order.len()
        )));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::Precondition(
                "order is not a permutation of the vertices".into(),
            ));
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// Biased orientation under vertex `order`, in `O(n + m)`.
pub fn biased_orientation(g: &Graph, order: &[usize]) -> Result<Orientation> {
    let pos = positions(g.n(), order)?;
    let heads: Vec<usize> = g
        .edges()
        .iter()
        .map(|&(u, v)| biased_head(g, &pos, u, v))
        .collect();
    Orientation::from_heads(g, &heads)
}

/// Biased orientation with the identity vertex order.
pub fn preferred_biased_orientation(g: &Graph) -> Orientation {
    let order: Vec<usize> = (0..g.n()).collect();
    biased_orientation(g, &order).expect("identity is a permutation")
}

/// Minimum entropy orientation by enumerating all `2^m` orientations.
///
/// Among optima, returns the one whose head vector is lexicographically
/// smallest, each edge trying its smaller endpoint first.
pub fn exact_orientation(g: &Graph, limit: u128) -> Result<Orientation> {
    let m = g.m();
    let space = 1u128.checked_shl(m as u32).unwrap_or(u128::MAX);
    if m >= 127 || space > limit {
        return Err(Error::BudgetExceeded {
            what: "exact orientation (2^m)",
            needed: space,
            limit,
        });
    }
    // rho log rho, indexed by indegree
    let table: Vec<f64> = (0..=g.max_degree())
        .map(|r| {
            if r < 2 {
                0.0
            } else {
                r as f64 * (r as f64).log2()
            }
        })
        .collect();

    struct Search<'a> {
        edges: &'a [(usize, usize)],
        table: &'a [f64],
        indeg: Vec<usize>,
        heads: Vec<usize>,
        best: Option<(f64, Vec<usize>)>,
    }

    impl Search<'_> {
        fn score(&self) -> f64 {
            // maximizing sum rho log rho minimizes log m - (1/m) sum rho log rho
            kahan_sum(self.indeg.iter().map(|&r| self.table[r]))
        }

        fn visit(&mut self, e: usize) {
            if e == self.edges.len() {
                let s = self.score();
                if self.best.as_ref().is_none_or(|(b, _)| s > *b + 1e-9) {
                    self.best = Some((s, self.heads.clone()));
                }
                return;
            }
            let (u, v) = self.edges[e];
            for h in [u, v] {
                self.heads[e] = h;
                self.indeg[h] += 1;
                self.visit(e + 1);
                self.indeg[h] -= 1;
            }
        }
    }

    let mut search = Search {
        edges: g.edges(),
        table: &table,
        indeg: vec![0; g.n()],
        heads: vec![0; m],
        best: None,
    };
    search.visit(0);
    let (_, heads) = search.best.expect("at least one orientation exists");
    Orientation::from_heads(g, &heads)
}

/// Parameters of the sampling estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorParams {
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
    /// Explicit sample count; derived from `(epsilon, delta, max degree)` when `None`.
    pub samples: Option<usize>,
    /// Return `H + epsilon` instead of `H`.
    pub one_sided: bool,
}

impl EstimatorParams {
    pub fn new(epsilon: f64, delta: f64, seed: u64) -> Self {
        Self {
            epsilon,
            delta,
            seed,
            samples: None,
            one_sided: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Precondition(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Precondition(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        if self.samples == Some(0) {
            return Err(Error::Precondition(
                "sample count must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Samples needed so that `2 exp(-2 s eps^2 / B^2) <= delta`, where
/// `B = max(D log2 D, 1)` bounds `rho log2 rho` for maximum degree `D`.
pub fn sample_count(epsilon: f64, delta: f64, max_degree: usize) -> Result<usize> {
    EstimatorParams::new(epsilon, delta, 0).validate()?;
    if max_degree == 0 {
        return Err(Error::Precondition(
            "maximum degree must be at least 1".into(),
        ));
    }
    let d = max_degree as f64;
    let range = (d * d.log2()).max(1.0);
    let s = (range * range / (2.0 * epsilon * epsilon) * (2.0 / delta).ln()).ceil();
    Ok((s as usize).max(1))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    /// Returned estimate (already shifted by epsilon when one-sided).
    pub h: f64,
    pub samples: usize,
    /// `sum rho(v_i) log2 rho(v_i)` over the sampled vertices.
    pub sample_sum: f64,
}

/// Indegree of `v` in the preferred biased orientation, read off its neighborhood only.
pub fn local_indegree(g: &Graph, v: usize) -> usize {
    // identity order: position[v] == v
    g.neighbors(v)
        .iter()
        .filter(|&&w| match g.degree(v).cmp(&g.degree(w)) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => v > w,
        })
        .count()
}

fn rho_log_rho(r: usize) -> f64 {
    if r < 2 {
        0.0
    } else {
        r as f64 * (r as f64).log2()
    }
}

fn check_estimator_graph(g: &Graph) -> Result<()> {
    if g.n() == 0 || g.m() < g.n() {
        return Err(Error::Precondition(format!(
            "estimator needs at least as many edges as vertices (n = {}, m = {})",
            g.n(),
            g.m()
        )));
    }
    Ok(())
}

fn finish(g: &Graph, samples: usize, sum: f64, shift: f64) -> Estimate {
    let n = g.n() as f64;
    let m = g.m() as f64;
    Estimate {
        h: m.log2() - n / (samples as f64 * m) * sum + shift,
        samples,
        sample_sum: sum,
    }
}

/// `H = log2 m - n / (s m) * sum_i rho(v_i) log2 rho(v_i)` over `s` vertices drawn
/// uniformly with replacement. Indegrees refer to the biased orientation with
/// the identity order and are computed from each sampled vertex's neighborhood.
pub fn estimate_entropy(g: &Graph, params: &EstimatorParams) -> Result<Estimate> {
    params.validate()?;
    check_estimator_graph(g)?;
    let s = match params.samples {
        Some(s) => s,
        None => sample_count(params.epsilon, params.delta, g.max_degree())?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let picks: Vec<usize> = (0..s).map(|_| rng.gen_range(0..g.n())).collect();
    let sum = kahan_sum(picks.iter().map(|&v| rho_log_rho(local_indegree(g, v))));
    let shift = if params.one_sided {
        params.epsilon
    } else {
        0.0
    };
    Ok(finish(g, s, sum, shift))
}

/// The estimator evaluated on every vertex exactly once (`s = n`), which
/// reproduces `log2 m - (1/m) sum_v rho(v) log2 rho(v)`.
pub fn estimate_full_sweep(g: &Graph) -> Result<Estimate> {
    check_estimator_graph(g)?;
    let sum = kahan_sum((0..g.n()).map(|v| rho_log_rho(local_indegree(g, v))));
    Ok(finish(g, g.n(), sum, 0.0))
}
