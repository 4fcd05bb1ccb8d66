mod common;

use common::{h_counts, partitions_up_to};
use minent_core::entropy::{entropy_of_counts, kahan_sum};
use minent_core::{dominates, dominates_counts, interval_graph, Distribution, IntervalSet};
use proptest::prelude::*;

#[test]
fn five_four_two_distribution() {
    let d = Distribution::from_counts(&[5, 4, 2]).unwrap();
    assert!((d.entropy() - 1.4949).abs() < 1e-3);
    assert!((d.entropy() - h_counts(&[5, 4, 2])).abs() < 1e-12);
}

#[test]
fn dominance_orders_entropy_exhaustively() {
    let parts = partitions_up_to(12);
    let mut pairs = 0u64;
    for r in &parts {
        let total: u64 = r.iter().sum();
        for q in parts.iter().filter(|q| q.iter().sum::<u64>() == total) {
            if dominates_counts(r, q) {
                pairs += 1;
                assert!(
                    entropy_of_counts(q) >= entropy_of_counts(r) - 1e-12,
                    "{r:?} vs {q:?}"
                );
                let dr = Distribution::from_counts(r).unwrap();
                let dq = Distribution::from_counts(q).unwrap();
                assert!(dominates(&dr, &dq));
            }
        }
    }
    assert!(pairs > 1000);
}

#[test]
fn disjoint_intervals_are_independent() {
    let iv = IntervalSet::from_int_pairs(&[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let g = interval_graph(&iv);
    assert!(g.is_independent_set(&[0, 1, 2]));
    assert_eq!(g.m(), 3);
}

fn counts_strategy() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..50, 1..10)
        .prop_filter("nonzero total", |c| c.iter().any(|&x| x > 0))
}

proptest! {
    #[test]
    fn matches_definition(c in counts_strategy()) {
        let as_usize: Vec<usize> = c.iter().map(|&x| x as usize).collect();
        prop_assert!((entropy_of_counts(&c) - h_counts(&as_usize)).abs() < 1e-12);
    }

    #[test]
    fn permutation_and_zero_invariance(c in counts_strategy(), rot in 0usize..10, zeros in 0usize..4) {
        let h = entropy_of_counts(&c);
        let mut d = c.clone();
        d.rotate_left(rot % c.len());
        d.extend(std::iter::repeat_n(0, zeros));
        prop_assert!((entropy_of_counts(&d) - h).abs() < 1e-12);
        let total = c.iter().sum::<u64>() as f64;
        prop_assert!(h >= 0.0 && h <= total.log2().min((c.len() as f64).log2()) + 1e-12);
    }

    #[test]
    fn merging_parts_never_increases_entropy(c in counts_strategy(), i in 0usize..10, j in 0usize..10) {
        let (i, j) = (i % c.len(), j % c.len());
        prop_assume!(i != j);
        let mut merged = c.clone();
        merged[i] += merged[j];
        merged.remove(j);
        prop_assert!(entropy_of_counts(&merged) <= entropy_of_counts(&c) + 1e-12);
    }

    #[test]
    fn sorted_desc_dominates(c in counts_strategy()) {
        let d = Distribution::from_counts(&c).unwrap();
        prop_assert!(dominates(&d.sorted_desc(), &d));
        prop_assert!((d.sorted_desc().entropy() - d.entropy()).abs() < 1e-12);
    }

    #[test]
    fn compensated_sum(xs in prop::collection::vec(-1e6f64..1e6, 0..50)) {
        let naive: f64 = xs.iter().sum();
        prop_assert!((kahan_sum(xs.iter().copied()) - naive).abs() <= 1e-6);
    }
}
