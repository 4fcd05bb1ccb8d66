//! Seeded random instance generators.

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval::{Interval, IntervalSet};
use crate::io::{write_graph, write_intervals, write_setcover};
use crate::setsystem::SetSystem;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Uniform graph with `n` vertices and exactly `m` edges.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m > max_edges(n) {
        return Err(Error::Precondition(format!(
            "{m} edges do not fit in a simple graph on {n} vertices"
        )));
    }
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut r = rng(seed);
    pairs.shuffle(&mut r);
    pairs.truncate(m);
    pairs.sort_unstable();
    Graph::new(n, pairs)
}

/// Connected graph: a random spanning tree plus `m - (n - 1)` random extra edges.
pub fn random_connected_graph(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n == 0 || m + 1 < n || m > max_edges(n) {
        return Err(Error::Precondition(format!(
            "no connected simple graph with n = {n}, m = {m}"
        )));
    }
    let mut r = rng(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut r);
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..n {
        let j = r.gen_range(0..i);
        let (a, b) = (perm[i], perm[j]);
        edges.insert((a.min(b), a.max(b)));
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|e| !edges.contains(e))
        .collect();
    rest.shuffle(&mut r);
    edges.extend(rest.into_iter().take(m + 1 - n));
    Graph::new(n, edges)
}

/// `degree`-regular graph from the pairing model, rejecting loops and multi-edges.
pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    if degree >= n.max(1) || (n * degree) % 2 == 1 {
        return Err(Error::Precondition(format!(
            "no {degree}-regular simple graph on {n} vertices"
        )));
    }
    let mut r = rng(seed);
    let mut points: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    'attempt: for _ in 0..100_000 {
        points.shuffle(&mut r);
        let mut edges = std::collections::BTreeSet::new();
        for pair in points.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || !edges.insert((a.min(b), a.max(b))) {
                continue 'attempt;
            }
        }
        return Graph::new(n, edges);
    }
    Err(Error::Precondition(format!(
        "pairing model kept producing loops for n = {n}, degree = {degree}"
    )))
}

/// Bipartite graph on sides `0..left` and `left..left + right`, each cross edge kept with probability `p`.
pub fn random_bipartite(left: usize, right: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..left {
        for v in left..left + right {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(left + right, edges)
}

/// `n` intervals with endpoints on the grid `{0, 1/4, .., grid/4}`.
pub fn random_intervals(n: usize, grid: i64, seed: u64) -> Result<IntervalSet> {
    if grid < 1 {
        return Err(Error::Precondition(
            "interval grid needs at least two points".into(),
        ));
    }
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let a = r.gen_range(0..grid);
        let b = r.gen_range(a + 1..=grid);
        out.push(Interval::new(Rational64::new(a, 4), Rational64::new(b, 4))?);
    }
    Ok(IntervalSet::new(out))
}

/// `k` random nonempty subsets of `0..n`; uncovered elements are then added to a random set.
pub fn random_setcover(n: usize, k: usize, seed: u64) -> Result<SetSystem> {
    if k == 0 && n > 0 {
        return Err(Error::Precondition(
            "cannot cover a nonempty universe with no sets".into(),
        ));
    }
    let mut r = rng(seed);
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(k);
    for _ in 0..k {
        loop {
            let set: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
            if !set.is_empty() || n == 0 {
                sets.push(set);
                break;
            }
        }
    }
    for x in 0..n {
        if !sets.iter().any(|s| s.contains(&x)) {
            let i = r.gen_range(0..k);
            sets[i].push(x);
        }
    }
    SetSystem::new(n, sets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RandomKind {
    Graph,
    Connected,
    Regular,
    Bipartite,
    Interval,
    Setcover,
}

/// Generator parameters; `size` is `m` for graphs, the degree for regular
/// graphs, the right side for bipartite graphs, the grid for intervals and `k` for set covers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomParams {
    pub n: usize,
    pub size: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Graph(Graph),
    Intervals(IntervalSet),
    SetCover(SetSystem),
}

impl Instance {
    pub fn to_text(&self) -> String {
        match self {
            Instance::Graph(g) => write_graph(g),
            Instance::Intervals(iv) => write_intervals(iv),
            Instance::SetCover(s) => write_setcover(s),
        }
    }
}

pub fn gen_random(kind: RandomKind, params: RandomParams) -> Result<Instance> {
    let RandomParams { n, size, seed } = params;
    Ok(match kind {
        RandomKind::Graph => Instance::Graph(random_graph(n, size, seed)?),
        RandomKind::Connected => Instance::Graph(random_connected_graph(n, size, seed)?),
        RandomKind::Regular => Instance::Graph(random_regular(n, size, seed)?),
        RandomKind::Bipartite => Instance::Graph(random_bipartite(n, size, 0.5, seed)?),
        RandomKind::Interval => Instance::Intervals(random_intervals(n, size.max(1) as i64, seed)?),
        RandomKind::Setcover => Instance::SetCover(random_setcover(n, size, seed)?),
    })
}
