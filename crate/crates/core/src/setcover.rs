//! Minimum entropy set cover.
//!
//! The greedy algorithm repeatedly takes the set covering the most uncovered
//! elements and assigns those elements to it. Its entropy `g` is within
//! `log2(e)` of the optimum; [`dual_certificate`] produces the closed-form
//! dual solution `y_v = -(1/n) log2(|S_i| e / n)` whose value is `g - log2(e)`
//! and which is feasible for the dual of the covering LP over all subsets of
//! input sets. [`verify_dual_feasibility`] checks that claim on a concrete
//! instance.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::{entropy_of_counts, kahan_sum, LOG2_E};
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;

/// Default cap on the number of assignments [`exact_cover`] may range over.
pub const DEFAULT_EXACT_LIMIT: u128 = 10_000_000;

/// Default number of subsets [`verify_dual_feasibility`] enumerates exhaustively.
pub const DEFAULT_SUBSET_BUDGET: u64 = 1 << 22;

/// Sets larger than this are only sampled when the exhaustive budget is exceeded.
const EXHAUSTIVE_SET_SIZE: usize = 20;

/// Slack on dual constraints.
const DUAL_TOLERANCE: f64 = 1e-9;

/// Element-to-set assignment `phi` with `x` in `S_phi(x)` for every `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverAssignment {
    assignment: Vec<usize>,
    counts: Vec<u64>,
}

impl CoverAssignment {
    pub fn new(system: &SetSystem, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != system.universe_size() {
            return Err(Error::Infeasible(format!(
                "assignment has {} entries for {} elements",
                assignment.len(),
                system.universe_size()
            )));
        }
        let mut counts = vec![0u64; system.num_sets()];
        for (x, &i) in assignment.iter().enumerate() {
            if i >= system.num_sets() || !system.contains(i, x) {
                return Err(Error::Infeasible(format!(
                    "element {x} assigned to set {i} which does not contain it"
                )));
            }
            counts[i] += 1;
        }
        Ok(Self { assignment, counts })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// `|phi^-1(i)|` for every input set `i`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn universe_size(&self) -> usize {
        self.assignment.len()
    }

    pub fn entropy(&self) -> f64 {
        entropy_of_counts(&self.counts)
    }

    /// `log2 prod_i p_i^{count_i}`, which equals `-n * entropy`.
    pub fn likelihood(&self) -> f64 {
        let n = self.universe_size() as f64;
        kahan_sum(
            self.counts
                .iter()
                .filter(|&&c| c > 0)
                .map(|&c| c as f64 * (c as f64 / n).log2()),
        )
    }
}

/// Entropy of an assignment after checking feasibility against `system`.
pub fn cover_entropy(system: &SetSystem, assignment: &[usize]) -> Result<f64> {
    Ok(CoverAssignment::new(system, assignment.to_vec())?.entropy())
}

pub fn likelihood(a: &CoverAssignment) -> f64 {
    a.likelihood()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyRound {
    pub set: usize,
    /// Elements first covered in this round, ascending.
    pub covered: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub rounds: Vec<GreedyRound>,
}

/// Greedy cover; ties go to the lowest set index.
pub fn greedy_cover(system: &SetSystem) -> (CoverAssignment, GreedyTrace) {
    let n = system.universe_size();
    let mut covered = vec![false; n];
    let mut assignment = vec![usize::MAX; n];
    let mut remaining = n;
    let mut trace = GreedyTrace::default();
    while remaining > 0 {
        let mut best = (0usize, 0usize);
        for (i, set) in system.sets().iter().enumerate() {
            let gain = set.iter().filter(|&&x| !covered[x]).count();
            if gain > best.1 {
                best = (i, gain);
            }
        }
        let (chosen, gain) = best;
        debug_assert!(gain > 0, "validated systems are coverable");
        let newly: Vec<usize> = system
            .set(chosen)
            .iter()
            .copied()
            .filter(|&x| !covered[x])
            .collect();
        for &x in &newly {
            covered[x] = true;
            assignment[x] = chosen;
        }
        remaining -= gain;
        trace.rounds.push(GreedyRound {
            set: chosen,
            covered: newly,
        });
    }
    let a = CoverAssignment::new(system, assignment).expect("greedy assignment is feasible");
    (a, trace)
}

/// Minimum entropy assignment by exhaustive search over per-element choices.
///
/// Assignments are visited in lexicographic order and a partial assignment
/// whose exact count vector was already reached at the same depth is skipped:
/// its completions were all seen earlier, so the first optimum found is the
/// lexicographically smallest one.
pub fn exact_cover(system: &SetSystem, limit: u128) -> Result<CoverAssignment> {
    let space = system.assignment_space();
    if space > limit {
        return Err(Error::BudgetExceeded {
            what: "exact set cover assignments",
            needed: space,
            limit,
        });
    }
    let n = system.universe_size();
    let k = system.num_sets();
    if n == 0 {
        return CoverAssignment::new(system, Vec::new());
    }

    struct Search<'a> {
        system: &'a SetSystem,
        counts: Vec<u64>,
        current: Vec<usize>,
        best: Option<(f64, Vec<usize>)>,
        seen: Vec<HashSet<Vec<u64>>>,
    }

    impl Search<'_> {
        fn visit(&mut self, x: usize) {
            if x == self.current.len() {
                let h = entropy_of_counts(&self.counts);
                let improves = match &self.best {
                    None => true,
                    Some((b, _)) => h < *b - 1e-12,
                };
                if improves {
                    self.best = Some((h, self.current.clone()));
                }
                return;
            }
            if !self.seen[x].insert(self.counts.clone()) {
                return;
            }
            for idx in 0..self.system.sets_containing(x).len() {
                let i = self.system.sets_containing(x)[idx];
                self.current[x] = i;
                self.counts[i] += 1;
                self.visit(x + 1);
                self.counts[i] -= 1;
            }
        }
    }

    let mut search = Search {
        system,
        counts: vec![0; k],
        current: vec![0; n],
        best: None,
        seen: vec![HashSet::new(); n],
    };
    search.visit(0);
    let (_, best) = search
        .best
        .expect("coverable system has a feasible assignment");
    CoverAssignment::new(system, best)
}

/// Dual solution built from a greedy trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub y: Vec<f64>,
    pub greedy_entropy: f64,
}

impl DualCertificate {
    pub fn sum_y(&self) -> f64 {
        kahan_sum(self.y.iter().copied())
    }

    /// `sum y - (g - log2 e)`; zero up to rounding.
    pub fn identity_residual(&self) -> f64 {
        self.sum_y() - (self.greedy_entropy - LOG2_E)
    }
}

/// `y_v = -(1/n) log2(|S_i| e / n)` for `v` covered in round `i`.
pub fn dual_certificate(system: &SetSystem, trace: &GreedyTrace) -> Result<DualCertificate> {
    let n = system.universe_size();
    let mut seen = vec![false; n];
    let mut y = vec![0.0; n];
    let mut sizes = Vec::with_capacity(trace.rounds.len());
    let nf = n as f64;
    for (r, round) in trace.rounds.iter().enumerate() {
        if round.set >= system.num_sets() {
            return Err(Error::Precondition(format!(
                "trace round {r} names set {} but the system has {} sets",
                round.set,
                system.num_sets()
            )));
        }
        if round.covered.is_empty() {
            return Err(Error::Precondition(format!(
                "trace round {r} covers nothing"
            )));
        }
        let size = round.covered.len() as f64;
        let value = -(size * std::f64::consts::E / nf).log2() / nf;
        for &v in &round.covered {
            if v >= n || seen[v] || !system.contains(round.set, v) {
                return Err(Error::Precondition(format!(
                    "trace round {r} element {v} is out of range, repeated, or not in set {}",
                    round.set
                )));
            }
            seen[v] = true;
            y[v] = value;
        }
        sizes.push(round.covered.len() as u64);
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::Precondition(format!(
            "trace leaves element {v} uncovered"
        )));
    }
    Ok(DualCertificate {
        y,
        greedy_entropy: entropy_of_counts(&sizes),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualViolation {
    /// Input set the violated subset was drawn from.
    pub parent: usize,
    pub members: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub checked: u64,
    pub exhaustive: bool,
    pub violations: Vec<DualViolation>,
}

/// Right-hand side of the dual constraint for a subset of size `size`.
fn dual_rhs(size: usize, n: usize) -> f64 {
    if size == 0 {
        return 0.0;
    }
    let p = size as f64 / n as f64;
    -p * p.log2()
}

/// Checks `sum_{v in S} y_v <= -(|S|/n) log2(|S|/n)` for subsets `S` of input sets.
///
/// Every subset of every set is enumerated when `sum_i 2^|S_i| <= subset_budget`.
/// Otherwise sets with at most 20 elements are still enumerated exhaustively and
/// `subset_budget` uniformly random subsets of the larger ones are drawn (seed 0).
pub fn verify_dual_feasibility(
    system: &SetSystem,
    cert: &DualCertificate,
    subset_budget: u64,
) -> FeasibilityReport {
    let n = system.universe_size();
    let total: u128 = system
        .sets()
        .iter()
        .map(|s| 1u128.checked_shl(s.len() as u32).unwrap_or(u128::MAX))
        .fold(0u128, |a, b| a.saturating_add(b));
    let exhaustive = total <= subset_budget as u128;
    let mut report = FeasibilityReport {
        exhaustive,
        ..Default::default()
    };
    let mut large = Vec::new();
    for (i, set) in system.sets().iter().enumerate() {
        if exhaustive || set.len() <= EXHAUSTIVE_SET_SIZE {
            check_all_subsets(i, set, cert, n, &mut report);
        } else {
            large.push(i);
        }
    }
    if !large.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..subset_budget {
            let parent = *large.choose(&mut rng).expect("nonempty");
            let members: Vec<usize> = system
                .set(parent)
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            check_subset(parent, members, cert, n, &mut report);
        }
    }
    report
}

fn check_all_subsets(
    parent: usize,
    set: &[usize],
    cert: &DualCertificate,
    n: usize,
    report: &mut FeasibilityReport,
) {
    let k = set.len();
    for mask in 0u64..(1u64 << k) {
        let mut lhs = 0.0;
        for (b, &v) in set.iter().enumerate() {
            if mask >> b & 1 == 1 {
                lhs += cert.y[v];
            }
        }
        let size = mask.count_ones() as usize;
        report.checked += 1;
        let rhs = dual_rhs(size, n);
        if lhs > rhs + DUAL_TOLERANCE {
            let members = (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| set[b])
                .collect();
            report.violations.push(DualViolation {
                parent,
                members,
                lhs,
                rhs,
            });
        }
    }
}

fn check_subset(
    parent: usize,
    members: Vec<usize>,
    cert: &DualCertificate,
    n: usize,
    report: &mut FeasibilityReport,
) {
    let lhs = kahan_sum(members.iter().map(|&v| cert.y[v]));
    let rhs = dual_rhs(members.len(), n);
    report.checked += 1;
    if lhs > rhs + DUAL_TOLERANCE {
        report.violations.push(DualViolation {
            parent,
            members,
            lhs,
            rhs,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> SetSystem {
        SetSystem::new(4, vec![vec![0, 1, 2], vec![2, 3], vec![3]]).unwrap()
    }

    #[test]
    fn cover_entropy_examples() {
        let s = worked();
        let h = cover_entropy(&s, &[0, 0, 0, 1]).unwrap();
        assert!((h - 0.8113).abs() < 1e-3);
        let single = SetSystem::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(cover_entropy(&single, &[0, 0, 0]).unwrap(), 0.0);
        assert!(matches!(
            cover_entropy(&s, &[1, 0, 0, 1]),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn greedy_on_worked_instance() {
        let (a, trace) = greedy_cover(&worked());
        assert_eq!(a.assignment(), &[0, 0, 0, 1]);
        assert_eq!(a.counts(), &[3, 1, 0]);
        assert_eq!(trace.rounds.len(), 2);
        assert_eq!(trace.rounds[0].set, 0);
        assert_eq!(
            trace.rounds[1],
            GreedyRound {
                set: 1,
                covered: vec![3]
            }
        );
        assert!((a.entropy() - 0.8113).abs() < 1e-3);
    }

    #[test]
    fn greedy_single_set() {
        let s = SetSystem::new(5, vec![vec![0, 1, 2, 3, 4], vec![1]]).unwrap();
        let (a, trace) = greedy_cover(&s);
        assert_eq!(trace.rounds.len(), 1);
        assert_eq!(a.entropy(), 0.0);
    }

    #[test]
    fn exact_on_worked_instance() {
        let a = exact_cover(&worked(), DEFAULT_EXACT_LIMIT).unwrap();
        assert!((a.entropy() - 0.8113).abs() < 1e-3);
        assert_eq!(a.assignment(), &[0, 0, 0, 1]);
    }

    #[test]
    fn exact_on_partition() {
        let s = SetSystem::new(5, vec![vec![3, 4], vec![0, 1, 2]]).unwrap();
        let a = exact_cover(&s, DEFAULT_EXACT_LIMIT).unwrap();
        assert_eq!(a.assignment(), &[1, 1, 1, 0, 0]);
    }

    #[test]
    fn exact_budget() {
        let s = SetSystem::new(3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            exact_cover(&s, 7),
            Err(Error::BudgetExceeded {
                needed: 8,
                limit: 7,
                ..
            })
        ));
    }

    #[test]
    fn certificate_values() {
        let s = worked();
        let (_, trace) = greedy_cover(&s);
        let cert = dual_certificate(&s, &trace).unwrap();
        let first = -0.25 * (3.0 * std::f64::consts::E / 4.0).log2();
        assert!((cert.y[0] - first).abs() < 1e-15);
        assert!((cert.y[0] - (-0.2569)).abs() < 1e-4);
        assert!(cert.identity_residual().abs() < 1e-9);
        let report = verify_dual_feasibility(&s, &cert, DEFAULT_SUBSET_BUDGET);
        assert!(report.exhaustive);
        assert_eq!(report.checked, 8 + 4 + 2);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn certificate_single_round() {
        let s = SetSystem::new(3, vec![vec![0, 1, 2]]).unwrap();
        let (_, trace) = greedy_cover(&s);
        let cert = dual_certificate(&s, &trace).unwrap();
        for &y in &cert.y {
            assert!((y + LOG2_E / 3.0).abs() < 1e-15);
        }
        assert_eq!(cert.greedy_entropy, 0.0);
        assert!((cert.sum_y() + LOG2_E).abs() < 1e-12);
    }

    #[test]
    fn certificate_rejects_foreign_trace() {
        let s = worked();
        let bad = GreedyTrace {
            rounds: vec![GreedyRound {
                set: 2,
                covered: vec![0, 1, 2, 3],
            }],
        };
        assert!(matches!(
            dual_certificate(&s, &bad),
            Err(Error::Precondition(_))
        ));
        let partial = GreedyTrace {
            rounds: vec![GreedyRound {
                set: 0,
                covered: vec![0, 1, 2],
            }],
        };
        assert!(dual_certificate(&s, &partial).is_err());
    }

    #[test]
    fn empty_subset_never_violates() {
        assert_eq!(dual_rhs(0, 5), 0.0);
    }

    #[test]
    fn sampled_mode_covers_large_sets() {
        let n = 24;
        let s = SetSystem::new(n, vec![(0..n).collect(), vec![0, 1]]).unwrap();
        let (_, trace) = greedy_cover(&s);
        let cert = dual_certificate(&s, &trace).unwrap();
        let report = verify_dual_feasibility(&s, &cert, 1000);
        assert!(!report.exhaustive);
        assert_eq!(report.checked, 4 + 1000);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn likelihood_is_minus_n_entropy() {
        let s = worked();
        let a = CoverAssignment::new(&s, vec![0, 0, 0, 1]).unwrap();
        assert!((a.likelihood() + 4.0 * a.entropy()).abs() < 1e-12);
        assert!((likelihood(&a) - (-3.2451)).abs() < 1e-3);
        let one = CoverAssignment::new(&s, vec![0, 0, 0, 0]);
        assert!(one.is_err());
        let single = SetSystem::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(
            CoverAssignment::new(&single, vec![0, 0])
                .unwrap()
                .likelihood(),
            0.0
        );
    }
}
