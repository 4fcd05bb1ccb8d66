//! Open intervals with exact rational endpoints and their intersection graphs.

use std::cmp::Ordering;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The open interval `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational64,
    pub hi: Rational64,
}

impl Interval {
    pub fn new(lo: Rational64, hi: Rational64) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidIntervals(format!(
                "interval ({lo}, {hi}) is empty"
            )));
        }
        Ok(Self { lo, hi })
    }

    /// Open intervals intersect iff `max(lo) < min(hi)`; touching ones do not.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo.max(other.lo) < self.hi.min(other.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn new(intervals: Vec<Interval>) -> Self {
        Self { intervals }
    }

    /// Builds from `(lo, hi)` pairs, rejecting empty intervals.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational64, Rational64)>) -> Result<Self> {
        pairs
            .into_iter()
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// Integer endpoints shorthand.
    pub fn from_int_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::from_pairs(
            pairs
                .iter()
                .map(|&(a, b)| (Rational64::from_integer(a), Rational64::from_integer(b))),
        )
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn get(&self, i: usize) -> &Interval {
        &self.intervals[i]
    }

    /// Largest number of the selected intervals sharing a common point, which
    /// for intervals is the size of the largest clique among them.
    pub fn max_depth(&self, selected: impl IntoIterator<Item = usize>) -> usize {
        // (coordinate, +1 open / -1 close); closings sort first at equal coordinates
        let mut events: Vec<(Rational64, i32)> = Vec::new();
        for i in selected {
            let iv = &self.intervals[i];
            events.push((iv.lo, 1));
            events.push((iv.hi, -1));
        }
        events.sort_by(|a, b| match a.0.cmp(&b.0) {
            Ordering::Equal => a.1.cmp(&b.1),
            o => o,
        });
        let mut depth = 0i32;
        let mut best = 0i32;
        for (_, delta) in events {
            depth += delta;
            best = best.max(depth);
        }
        best as usize
    }
}

/// Intersection graph of the open intervals, vertex `i` being interval `i`.
pub fn interval_graph(iv: &IntervalSet) -> Graph {
    let n = iv.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| iv.intervals[a].lo.cmp(&iv.intervals[b].lo));
    let mut edges = Vec::new();
    // sweep by left endpoint: later intervals can only meet earlier ones still open
    for (k, &a) in order.iter().enumerate() {
        let ia = &iv.intervals[a];
        for &b in &order[k + 1..] {
            let ib = &iv.intervals[b];
            if ib.lo >= ia.hi {
                break;
            }
            if ia.intersects(ib) {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    edges.sort_unstable();
    Graph::new(n, edges).expect("intersection graph is simple")
}
