//! Randomized laws for multiplicity vectors and their multisets.

use num_bigint::BigUint;
use proptest::prelude::*;

use plethysm::lambda::{
    enumerate_multisets, enumerate_vectors, factorial, EnumerationMode, PartitionVector,
    VectorMultiset,
};

fn arb_vector(max_weight: u64) -> impl Strategy<Value = PartitionVector> {
    proptest::sample::select(enumerate_vectors(max_weight, EnumerationMode::UpTo))
}

fn arb_multiset(max_len: u64, max_weight: u64) -> impl Strategy<Value = VectorMultiset> {
    let mut pool = Vec::new();
    for len in 0..=max_len {
        pool.extend(enumerate_multisets(len, max_weight));
    }
    proptest::sample::select(pool)
}

fn distinct_orderings(
    items: &[PartitionVector],
    current: &mut Vec<PartitionVector>,
    used: &mut Vec<bool>,
    out: &mut std::collections::BTreeSet<Vec<PartitionVector>>,
) {
    if current.len() == items.len() {
        out.insert(current.clone());
        return;
    }
    for i in 0..items.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        current.push(items[i].clone());
        distinct_orderings(items, current, used, out);
        current.pop();
        used[i] = false;
    }
}

/// Partition numbers by the independent Euler recurrence over largest
/// part: p(n, k) counts partitions of n into parts ≤ k.
fn partition_count(n: u64, largest: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    if largest == 0 {
        return 0;
    }
    let mut total = 0;
    for part in 1..=largest.min(n) {
        total += partition_count(n - part, part);
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dilation_composes(v in arb_vector(4), n in 1u64..=3, m in 1u64..=3) {
        prop_assert_eq!(v.verschiebung(n).verschiebung(m), v.verschiebung(n * m));
    }

    #[test]
    fn dilation_scales_weight_and_keeps_length(v in arb_vector(5), n in 1u64..=4) {
        let dilated = v.verschiebung(n);
        prop_assert_eq!(dilated.weight(), n * v.weight());
        prop_assert_eq!(dilated.length(), v.length());
        prop_assert_eq!(dilated.divided(n), Some(v));
    }

    #[test]
    fn addition_laws(a in arb_vector(4), b in arb_vector(4), c in arb_vector(4)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b).weight(), a.weight() + b.weight());
        prop_assert_eq!(a.add(&PartitionVector::zero()), a);
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_vector(4), b in arb_vector(4)) {
        prop_assert_eq!(a.add(&b).checked_sub(&b), Some(a.clone()));
        prop_assert_eq!(a.contains(&b), a.checked_sub(&b).is_some());
    }

    #[test]
    fn order_is_graded_and_transitive(
        a in arb_vector(4),
        b in arb_vector(4),
        c in arb_vector(4),
    ) {
        if a.weight() < b.weight() {
            prop_assert!(a < b);
        }
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        prop_assert_eq!(a == b, a.cmp(&b).is_eq());
    }

    #[test]
    fn autiv_of_a_dilated_unit(k in 1u64..=4, m in 1u64..=3) {
        // λ = m copies of a part of size k: autiv = (k!)^m · m!
        let v = PartitionVector::from_pairs([(k, m)]).unwrap();
        let expected = num_traits::pow::Pow::pow(factorial(k), m) * factorial(m);
        prop_assert_eq!(v.autiv(), expected);
    }

    #[test]
    fn multiset_symmetry_factors(a in arb_multiset(2, 3), b in arb_multiset(2, 3)) {
        // rep(𝛍) counts the orderings of the expansion that coincide, so
        // distinct orderings · rep(𝛍) = len!.
        let items = a.expand();
        let mut distinct = std::collections::BTreeSet::new();
        distinct_orderings(&items, &mut Vec::new(), &mut vec![false; items.len()], &mut distinct);
        prop_assert_eq!(
            BigUint::from(distinct.len()) * a.rep_count(),
            factorial(a.len())
        );

        let disjoint = a.counts().all(|(v, _)| b.counts().all(|(w, _)| v != w));
        if disjoint {
            prop_assert_eq!(a.union(&b).autiv(), a.autiv() * b.autiv());
        }
        prop_assert_eq!(a.union(&b).total_weight(), a.total_weight() + b.total_weight());
        prop_assert_eq!(a.union(&b).vector_sum(), a.vector_sum().add(&b.vector_sum()));
        prop_assert_eq!(a.union(&b).len(), a.len() + b.len());
    }
}

#[test]
fn enumeration_is_canonical_and_complete() {
    for w in 0..=6 {
        let exact = enumerate_vectors(w, EnumerationMode::Exact);
        assert!(exact.iter().all(|v| v.weight() == w));
        assert!(exact.windows(2).all(|pair| pair[0] < pair[1]));
        assert_eq!(exact.len() as u64, partition_count(w, w));

        let upto = enumerate_vectors(w, EnumerationMode::UpTo);
        assert!(upto.windows(2).all(|pair| pair[0] < pair[1]));
        let total: u64 = (0..=w).map(|u| partition_count(u, u)).sum();
        assert_eq!(upto.len() as u64, total);
    }
}

#[test]
fn multiset_enumeration_matches_rep_counting() {
    // Multisets of exactly two vectors with total weight ≤ 3: pairs {μ,ν}
    // with wt(μ)+wt(ν) ≤ 3 and both nonzero, counted by hand: weights
    // (1,1), (1,2) with 3 shapes for weight 2... enumerate instead against
    // a direct double loop.
    let singles = enumerate_vectors(3, EnumerationMode::UpTo);
    let mut expected = std::collections::BTreeSet::new();
    for a in &singles {
        for b in &singles {
            if !a.is_zero() && !b.is_zero() && a.weight() + b.weight() <= 3 {
                expected.insert(VectorMultiset::from_vectors([a.clone(), b.clone()]));
            }
        }
    }
    let got: std::collections::BTreeSet<VectorMultiset> =
        enumerate_multisets(2, 3).into_iter().collect();
    assert_eq!(got, expected);
}
