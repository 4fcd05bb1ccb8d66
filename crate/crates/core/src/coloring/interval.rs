use serde::{Deserialize, Serialize};

use super::Coloring;
use crate::entropy::entropy_of_counts;
use crate::error::{Error, Result};
use crate::interval::{interval_graph, IntervalSet};

/// Layers `S_1, .., S_k` built by the interval algorithm.
///
/// `S_1 ∪ .. ∪ S_i` is a maximum `i`-colorable subgraph and each layer is
/// bipartite, so the layer-size entropy bounds the optimum from below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerDecomposition {
    /// Original interval indices per layer, ascending.
    pub layers: Vec<Vec<usize>>,
    /// Entropy of `{|S_i| / n}`.
    pub lower_bound_h: f64,
}

/// Minimum entropy coloring of an interval graph within one bit of optimal.
///
/// Intervals are processed by right endpoint (then left endpoint, then input
/// index). Each goes into the first layer `i` such that layers `1..=i` plus the
/// interval contain no `i + 1` intervals through a common point. Layer 1 gets
/// color 1 and layer `i >= 2` is 2-colored with colors `2i - 2` and `2i - 1`;
/// within each connected component of a layer the larger side takes the even
/// color (on a tie, the side holding the earliest interval in sorted order).
/// Colors are then compacted to `1..=k` in the same order.
pub fn interval_mec(iv: &IntervalSet) -> Result<(Coloring, LayerDecomposition)> {
    let n = iv.len();
    let g = interval_graph(iv);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (iv.get(a), iv.get(b));
        x.hi.cmp(&y.hi).then(x.lo.cmp(&y.lo)).then(a.cmp(&b))
    });
    let mut rank = vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }

    let mut layers: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        let mut prefix: Vec<usize> = vec![v];
        let mut placed = false;
        for (i, layer) in layers.iter_mut().enumerate() {
            prefix.extend_from_slice(layer);
            if iv.max_depth(prefix.iter().copied()) <= i + 1 {
                layer.push(v);
                placed = true;
                break;
            }
        }
        if !placed {
            layers.push(vec![v]);
        }
    }

    let mut colors = vec![0usize; n];
    for (i, layer) in layers.iter().enumerate() {
        if i == 0 {
            for &v in layer {
                colors[v] = 1;
            }
            continue;
        }
        let even = 2 * (i + 1) - 2;
        let odd = even + 1;
        let sides = g
            .bipartition(layer)
            .ok_or_else(|| Error::Infeasible(format!("layer {} is not bipartite", i + 1)))?;
        let pos: std::collections::HashMap<usize, usize> =
            layer.iter().enumerate().map(|(j, &v)| (v, j)).collect();
        // components of the layer-induced graph, by earliest sorted interval
        let mut done = vec![false; layer.len()];
        let mut by_rank: Vec<usize> = (0..layer.len()).collect();
        by_rank.sort_by_key(|&j| rank[layer[j]]);
        for &start in &by_rank {
            if done[start] {
                continue;
            }
            let mut comp = vec![start];
            done[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let j = comp[k];
                k += 1;
                for w in g.neighbors(layer[j]) {
                    if let Some(&jw) = pos.get(w) {
                        if !done[jw] {
                            done[jw] = true;
                            comp.push(jw);
                        }
                    }
                }
            }
            let first_side = sides[start];
            let same = comp.iter().filter(|&&j| sides[j] == first_side).count();
            let other = comp.len() - same;
            // side of `start` gets the even color unless the other side is strictly larger
            let start_side_even = same >= other;
            for &j in &comp {
                let even_side = (sides[j] == first_side) == start_side_even;
                colors[layer[j]] = if even_side { even } else { odd };
            }
        }
    }

    for layer in &mut layers {
        layer.sort_unstable();
    }
    let sizes: Vec<u64> = layers.iter().map(|l| l.len() as u64).collect();
    let coloring = Coloring::new(&g, colors)?.canonicalize();
    Ok((
        coloring,
        LayerDecomposition {
            layers,
            lower_bound_h: entropy_of_counts(&sizes),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_chain() {
        let iv = IntervalSet::from_int_pairs(&[(0, 2), (1, 3), (2, 4)]).unwrap();
        let (c, layers) = interval_mec(&iv).unwrap();
        assert_eq!(layers.layers, vec![vec![0, 2], vec![1]]);
        assert!((layers.lower_bound_h - 0.9183).abs() < 1e-3);
        assert!((c.entropy() - 0.9183).abs() < 1e-3);
        assert_eq!(c.colors(), &[1, 2, 1]);
    }

    #[test]
    fn disjoint_single_layer() {
        let iv = IntervalSet::from_int_pairs(&[(4, 5), (0, 1), (2, 3)]).unwrap();
        let (c, layers) = interval_mec(&iv).unwrap();
        assert_eq!(layers.layers.len(), 1);
        assert_eq!(c.entropy(), 0.0);
        assert_eq!(layers.lower_bound_h, 0.0);
    }

    #[test]
    fn empty_input() {
        let (c, layers) = interval_mec(&IntervalSet::default()).unwrap();
        assert!(c.colors().is_empty());
        assert!(layers.layers.is_empty());
    }

    #[test]
    fn nested_instance_stays_within_one_bit() {
        let iv = IntervalSet::from_int_pairs(&[(0, 10), (1, 3), (2, 5), (4, 7), (6, 9)]).unwrap();
        let (c, layers) = interval_mec(&iv).unwrap();
        assert_eq!(layers.layers, vec![vec![1, 3], vec![2, 4], vec![0]]);
        let g = interval_graph(&iv);
        assert!(g.is_proper_coloring(c.colors()));
        assert!(c.entropy() <= layers.lower_bound_h + 1.0 + 1e-12);
    }
}
