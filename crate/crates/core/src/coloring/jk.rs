use num_rational::Rational64;

use crate::interval::{Interval, IntervalSet};

/// The intervals `((j - 1) / i, j / i)` for `1 <= j <= i <= k`, row by row.
///
/// Row `i` tiles `(0, 1)` with `i` pairwise disjoint intervals, so it is an
/// independent set of the intersection graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JkGadget {
    pub k: usize,
    pub intervals: IntervalSet,
    /// `(row, position)` of each interval, both 1-based.
    pub cells: Vec<(usize, usize)>,
}

impl JkGadget {
    pub fn row(&self, v: usize) -> usize {
        self.cells[v].0
    }

    /// Vertices of row `i`.
    pub fn row_members(&self, i: usize) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&v| self.cells[v].0 == i)
            .collect()
    }
}

pub fn gen_jk(k: usize) -> JkGadget {
    let mut intervals = Vec::with_capacity(k * (k + 1) / 2);
    let mut cells = Vec::with_capacity(k * (k + 1) / 2);
    for i in 1..=k {
        for j in 1..=i {
            let lo = Rational64::new(j as i64 - 1, i as i64);
            let hi = Rational64::new(j as i64, i as i64);
            intervals.push(Interval::new(lo, hi).expect("(j-1)/i < j/i"));
            cells.push((i, j));
        }
    }
    JkGadget {
        k,
        intervals: IntervalSet::new(intervals),
        cells,
    }
}
