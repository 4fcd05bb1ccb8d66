//! Brute-force oracles shared by the integration suites. Each one enumerates
//! the full solution space directly and shares no search code with the library.

#![allow(dead_code)]

use minent_core::{Graph, SetSystem};

pub const LOG2_E: f64 = std::f64::consts::LOG2_E;

/// `-sum (c/n) log2(c/n)` computed straight from the definition.
pub fn h_counts(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n as f64;
            -p * p.log2()
        })
        .sum()
}

/// Minimum cover entropy over every feasible assignment (odometer enumeration).
pub fn brute_cover(s: &SetSystem) -> (f64, Vec<Vec<usize>>) {
    let n = s.universe_size();
    let choices: Vec<&[usize]> = (0..n).map(|x| s.sets_containing(x)).collect();
    let mut idx = vec![0usize; n];
    let mut best = f64::INFINITY;
    let mut all = Vec::new();
    loop {
        let mut counts = vec![0usize; s.num_sets()];
        let assignment: Vec<usize> = (0..n).map(|x| choices[x][idx[x]]).collect();
        for &i in &assignment {
            counts[i] += 1;
        }
        let h = h_counts(&counts);
        if h < best - 1e-12 {
            best = h;
            all.clear();
        }
        if (h - best).abs() <= 1e-12 {
            all.push(assignment);
        }
        // advance odometer
        let mut x = n;
        loop {
            if x == 0 {
                return (best, all);
            }
            x -= 1;
            idx[x] += 1;
            if idx[x] < choices[x].len() {
                break;
            }
            idx[x] = 0;
        }
    }
}

/// Every orientation as a head vector, with its entropy.
pub fn brute_orientation_opt(g: &Graph) -> f64 {
    let m = g.m();
    let mut best = f64::INFINITY;
    for mask in 0u64..(1u64 << m) {
        let mut indeg = vec![0usize; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            indeg[if mask >> e & 1 == 1 { v } else { u }] += 1;
        }
        best = best.min(h_counts(&indeg));
    }
    best
}

/// Calls `f` with the class sizes and color vector (restricted growth string)
/// of every partition of the vertices into independent sets.
pub fn for_each_proper_partition(g: &Graph, mut f: impl FnMut(&[usize], &[usize])) {
    fn rec(
        g: &Graph,
        v: usize,
        colors: &mut Vec<usize>,
        sizes: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize], &[usize]),
    ) {
        if v == g.n() {
            f(sizes, colors);
            return;
        }
        for c in 0..=sizes.len() {
            if g.neighbors(v).iter().any(|&w| w < v && colors[w] == c) {
                continue;
            }
            colors.push(c);
            if c == sizes.len() {
                sizes.push(0);
            }
            sizes[c] += 1;
            rec(g, v + 1, colors, sizes, f);
            sizes[c] -= 1;
            if sizes[c] == 0 {
                sizes.pop();
            }
            colors.pop();
        }
    }
    rec(g, 0, &mut Vec::new(), &mut Vec::new(), &mut f);
}

pub fn brute_chromatic_entropy(g: &Graph) -> f64 {
    let mut best = f64::INFINITY;
    for_each_proper_partition(g, |sizes, _| best = best.min(h_counts(sizes)));
    best
}

fn independent_masks(g: &Graph) -> Vec<bool> {
    let n = g.n();
    (0u32..1 << n)
        .map(|mask| {
            g.edges()
                .iter()
                .all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0)
        })
        .collect()
}

/// Maximum (weight) independent set, lexicographically smallest among optima.
pub fn brute_mis(g: &Graph, weights: Option<&[f64]>) -> Vec<usize> {
    let n = g.n();
    let indep = independent_masks(g);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for mask in 0u32..1 << n {
        if !indep[mask as usize] {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let w: f64 = set.iter().map(|&v| weights.map_or(1.0, |w| w[v])).sum();
        let better = match &best {
            None => true,
            Some((bw, bs)) => w > bw + 1e-12 || ((w - bw).abs() <= 1e-12 && set < *bs),
        };
        if better {
            best = Some((w, set));
        }
    }
    best.map(|(_, s)| s).unwrap_or_default()
}

/// `out[i]` = size of a largest vertex set that splits into `i` independent sets.
pub fn max_colorable_sizes(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let indep = independent_masks(g);
    let full = 1usize << n;
    // chi[mask] = chromatic number of the induced subgraph
    let mut chi = vec![usize::MAX; full];
    chi[0] = 0;
    for mask in 1..full {
        let low = mask & mask.wrapping_neg();
        // independent part containing the lowest vertex
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let part = sub | low;
            if indep[part] {
                let c = chi[mask ^ part];
                if c != usize::MAX {
                    chi[mask] = chi[mask].min(c + 1);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut out = vec![0usize; n + 1];
    for mask in 0..full {
        let c = chi[mask];
        let size = mask.count_ones() as usize;
        for slot in out.iter_mut().skip(c) {
            *slot = (*slot).max(size);
        }
    }
    out
}

/// Nonincreasing integer partitions of every total in `1..=max_total`.
pub fn partitions_up_to(max_total: u64) -> Vec<Vec<u64>> {
    fn rec(rest: u64, cap: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 1..=max_total {
        rec(total, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Bipartite graph on `n` vertices from the bits of `code`, sides split at `n / 2`.
pub fn bipartite_from_code(n: usize, code: u64) -> Graph {
    let left = n / 2;
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..left {
        for v in left..n {
            if code >> (bit % 64) & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}
