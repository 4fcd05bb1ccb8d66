//! Shannon entropy of finite distributions and the prefix-sum dominance order.
//!
//! All entropies are in bits, with `0 log 0 = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the total mass of a distribution.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Slack used by [`dominates`] when at least one side has no integer counts.
pub const DOMINANCE_SLACK: f64 = 1e-12;

/// `log2(e)`, the additive guarantee of the greedy set cover and coloring algorithms.
pub const LOG2_E: f64 = std::f64::consts::LOG2_E;

/// A finite probability distribution.
///
/// When built from integer counts the counts are kept, so dominance between two
/// count-backed distributions is decided exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    probs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<u64>>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::InvalidDistribution(format!(
                "entry {i} is {p}, expected a finite nonnegative value"
            )));
        }
        let total = kahan_sum(probs.iter().copied());
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            probs,
            counts: None,
        })
    }

    /// `probs[i] = counts[i] / sum(counts)`; zero counts stay as zero entries.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidDistribution(
                "counts must contain at least one positive entry".into(),
            ));
        }
        let probs = counts.iter().map(|&c| c as f64 / total as f64).collect();
        Ok(Self {
            probs,
            counts: Some(counts.to_vec()),
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn counts(&self) -> Option<&[u64]> {
        self.counts.as_deref()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn entropy(&self) -> f64 {
        entropy_of_probs(&self.probs)
    }

    /// Copy with entries sorted in nonincreasing order.
    pub fn sorted_desc(&self) -> Self {
        let mut idx: Vec<usize> = (0..self.probs.len()).collect();
        idx.sort_by(|&a, &b| self.probs[b].total_cmp(&self.probs[a]));
        Self {
            probs: idx.iter().map(|&i| self.probs[i]).collect(),
            counts: self
                .counts
                .as_ref()
                .map(|c| idx.iter().map(|&i| c[i]).collect()),
        }
    }

    /// Drops zero entries (and their counts).
    pub fn support(&self) -> Self {
        let keep: Vec<usize> = (0..self.probs.len())
            .filter(|&i| self.probs[i] > 0.0)
            .collect();
        Self {
            probs: keep.iter().map(|&i| self.probs[i]).collect(),
            counts: self
                .counts
                .as_ref()
                .map(|c| keep.iter().map(|&i| c[i]).collect()),
        }
    }
}

/// Entropy in bits of a validated distribution.
pub fn entropy(d: &Distribution) -> f64 {
    d.entropy()
}

/// Entropy of raw probabilities; callers guarantee validity.
pub(crate) fn entropy_of_probs(probs: &[f64]) -> f64 {
    let h = -kahan_sum(probs.iter().filter(|&&p| p > 0.0).map(|&p| p * p.log2()));
    h.max(0.0)
}

/// Entropy in bits of the distribution `counts / sum(counts)`.
///
/// Returns 0 for an all-zero vector.
pub fn entropy_of_counts(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    // H = log n - (1/n) sum c log c
    let s = kahan_sum(
        counts
            .iter()
            .filter(|&&c| c > 1)
            .map(|&c| c as f64 * (c as f64).log2()),
    );
    (n.log2() - s / n).max(0.0)
}

pub fn counts_to_distribution(counts: &[u64]) -> Result<Distribution> {
    Distribution::from_counts(counts)
}

/// True iff every prefix sum of `q` is at most the matching prefix sum of `r`
/// (`q` is dominated by `r`). Shorter vectors are padded with zeros.
///
/// Decided exactly when both sides carry integer counts, otherwise with
/// [`DOMINANCE_SLACK`].
pub fn dominates(r: &Distribution, q: &Distribution) -> bool {
    match (r.counts(), q.counts()) {
        (Some(rc), Some(qc)) => dominates_counts(rc, qc),
        _ => {
            let len = r.len().max(q.len());
            let mut rs = 0.0;
            let mut qs = 0.0;
            for i in 0..len {
                rs += r.probs.get(i).copied().unwrap_or(0.0);
                qs += q.probs.get(i).copied().unwrap_or(0.0);
                if qs > rs + DOMINANCE_SLACK {
                    return false;
                }
            }
            true
        }
    }
}

/// Exact dominance between the distributions induced by two count vectors:
/// `Q_l / |q| <= R_l / |r|` for every prefix `l`, compared by cross-multiplication.
pub fn dominates_counts(r: &[u64], q: &[u64]) -> bool {
    let rt: u128 = r.iter().map(|&c| c as u128).sum();
    let qt: u128 = q.iter().map(|&c| c as u128).sum();
    let len = r.len().max(q.len());
    let mut rs: u128 = 0;
    let mut qs: u128 = 0;
    for i in 0..len {
        rs += r.get(i).copied().unwrap_or(0) as u128;
        qs += q.get(i).copied().unwrap_or(0) as u128;
        if qs * rt > rs * qt {
            return false;
        }
    }
    true
}

/// Neumaier-compensated sum.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(p: &[f64]) -> Distribution {
        Distribution::new(p.to_vec()).unwrap()
    }

    #[test]
    fn five_four_two_entropy() {
        let dist = Distribution::from_counts(&[5, 4, 2]).unwrap();
        // -(5/11)log(5/11) - (4/11)log(4/11) - (2/11)log(2/11)
        let expected = [5.0f64, 4.0, 2.0]
            .iter()
            .map(|c| {
                let p = c / 11.0;
                -p * p.log2()
            })
            .sum::<f64>();
        assert!((dist.entropy() - expected).abs() < 1e-12);
        assert!((dist.entropy() - 1.4949).abs() < 1e-3);
    }

    #[test]
    fn trivial_entropies() {
        assert_eq!(d(&[1.0]).entropy(), 0.0);
        assert_eq!(d(&[0.25; 4]).entropy(), 2.0);
        assert_eq!(entropy_of_counts(&[7]), 0.0);
        assert!((entropy_of_counts(&[3, 1]) - 0.811_278_124_459_132_9).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid() {
        assert!(matches!(
            Distribution::new(vec![0.5, -0.1, 0.6]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(Distribution::new(vec![0.5, 0.4]).is_err());
        assert!(Distribution::new(vec![]).is_err());
        assert!(Distribution::from_counts(&[0, 0]).is_err());
    }

    #[test]
    fn counts_keep_zero_entries() {
        let dist = counts_to_distribution(&[0, 3, 3]).unwrap();
        assert_eq!(dist.probs(), &[0.0, 0.5, 0.5]);
        assert_eq!(counts_to_distribution(&[7]).unwrap().probs(), &[1.0]);
        let d = counts_to_distribution(&[5, 4, 2]).unwrap();
        assert_eq!(d.probs(), &[5.0 / 11.0, 4.0 / 11.0, 2.0 / 11.0]);
    }

    #[test]
    fn dominance_examples() {
        let half = d(&[0.5, 0.5]);
        let third = d(&[1.0 / 3.0; 3]);
        assert!(dominates(&half, &third));
        assert!(!dominates(&third, &half));
        assert!(dominates(&half, &half));
        assert!(dominates_counts(&[1, 1], &[1, 1, 1]));
        assert!(!dominates_counts(&[1, 1, 1], &[1, 1]));
        // equal prefix sums are exact with counts
        assert!(dominates_counts(&[2, 1], &[4, 2]));
        assert!(dominates_counts(&[4, 2], &[2, 1]));
    }
}
