//! Multiplicity vectors with finite support and multisets of them.
//!
//! A vector λ = (λ_1, λ_2, …) records finitely many nonzero multiplicities
//! λ_k over indices k ≥ 1.  It encodes both a monomial
//! x_1^{λ_1} x_2^{λ_2} ⋯ and the class of a surjection of finite sets with
//! λ_k fibers of size k.  Everything above this module is graded by the
//! weight wt(λ) = Σ k·λ_k, which is the source cardinality under the second
//! reading.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LambdaError {
    #[error("vector indices start at 1; index 0 is not allowed")]
    ZeroIndex,
    #[error("vector weight does not fit in 64 bits")]
    WeightOverflow,
    #[error("cannot parse multiplicity vector from {0:?}")]
    Parse(String),
}

/// Exact n! as a big integer.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// A finitely supported vector of multiplicities λ_k over indices k ≥ 1.
///
/// Zero entries are never stored, so equality of the maps is equality of
/// the vectors.  The zero vector has an empty map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PartitionVector {
    entries: BTreeMap<u64, u64>,
}

impl PartitionVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The vector with a single entry λ_k = 1.
    pub fn unit(k: u64) -> Self {
        assert!(k >= 1, "vector indices start at 1");
        let mut entries = BTreeMap::new();
        entries.insert(k, 1);
        Self { entries }
    }

    /// Canonical form of a dense prefix: position i holds λ_{i+1}.
    /// Zero entries are dropped.  Idempotent by construction.
    ///
    /// Panics if the weight overflows 64 bits.
    pub fn from_dense(dense: &[u64]) -> Self {
        let entries = dense
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, &m)| (i as u64 + 1, m))
            .collect();
        let v = Self { entries };
        v.checked_weight().expect("vector weight overflows u64");
        v
    }

    /// Builds a vector from (index, multiplicity) pairs, summing duplicate
    /// indices and dropping zero multiplicities.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, LambdaError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut entries: BTreeMap<u64, u64> = BTreeMap::new();
        for (k, m) in pairs {
            if k == 0 {
                return Err(LambdaError::ZeroIndex);
            }
            if m != 0 {
                let slot = entries.entry(k).or_insert(0);
                *slot = slot.checked_add(m).ok_or(LambdaError::WeightOverflow)?;
            }
        }
        let v = Self { entries };
        v.checked_weight().ok_or(LambdaError::WeightOverflow)?;
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// λ_k, zero when the index is not stored.
    pub fn entry(&self, k: u64) -> u64 {
        self.entries.get(&k).copied().unwrap_or(0)
    }

    /// Largest index with a nonzero entry, 0 for the zero vector.
    pub fn max_index(&self) -> u64 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    /// Nonzero entries as (index, multiplicity) in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&k, &m)| (k, m))
    }

    /// Dense prefix up to the largest nonzero index; empty for zero.
    pub fn to_dense(&self) -> Vec<u64> {
        let mut dense = vec![0; self.max_index() as usize];
        for (&k, &m) in &self.entries {
            dense[k as usize - 1] = m;
        }
        dense
    }

    /// Number of parts |λ| = Σ λ_k.
    pub fn length(&self) -> u64 {
        self.entries.values().sum()
    }

    fn checked_weight(&self) -> Option<u64> {
        let mut acc: u64 = 0;
        for (&k, &m) in &self.entries {
            acc = acc.checked_add(k.checked_mul(m)?)?;
        }
        Some(acc)
    }

    /// wt(λ) = Σ k·λ_k.
    pub fn weight(&self) -> u64 {
        self.checked_weight().expect("vector weight overflows u64")
    }

    /// autiv(λ) = Π_k (k!)^{λ_k} λ_k!, the order of the automorphism group
    /// of a surjection with λ_k fibers of size k.  autiv(0) = 1.
    pub fn autiv(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (&k, &m) in &self.entries {
            acc *= Pow::pow(factorial(k), m);
            acc *= factorial(m);
        }
        acc
    }

    /// Verschiebung reindexing: (V^n λ)_{nk} = λ_k, other entries zero.
    /// Multiplies the weight by n and preserves the length.
    pub fn verschiebung(&self, n: u64) -> Self {
        assert!(n >= 1, "Verschiebung index must be at least 1");
        let entries = self
            .entries
            .iter()
            .map(|(&k, &m)| (k.checked_mul(n).expect("vector index overflows u64"), m))
            .collect();
        let v = Self { entries };
        v.checked_weight().expect("vector weight overflows u64");
        v
    }

    /// Inverse of `verschiebung` on vectors supported on multiples of n:
    /// keeps the entries at indices nk, reindexed to k.  Returns `None`
    /// when some entry sits at an index not divisible by n.
    pub fn divided(&self, n: u64) -> Option<Self> {
        assert!(n >= 1, "Verschiebung index must be at least 1");
        let mut entries = BTreeMap::new();
        for (&k, &m) in &self.entries {
            if k % n != 0 {
                return None;
            }
            entries.insert(k / n, m);
        }
        Some(Self { entries })
    }

    /// Projection onto indices divisible by n, reindexed by /n: the entry
    /// at k becomes the entry at nk of the input; other input entries are
    /// dropped.  Agrees with `divided` when that succeeds.
    pub fn projected_multiples(&self, n: u64) -> Self {
        assert!(n >= 1, "Verschiebung index must be at least 1");
        let entries = self
            .entries
            .iter()
            .filter(|(&k, _)| k % n == 0)
            .map(|(&k, &m)| (k / n, m))
            .collect();
        Self { entries }
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        for (&k, &m) in &other.entries {
            *entries.entry(k).or_insert(0) += m;
        }
        let v = Self { entries };
        v.checked_weight().expect("vector weight overflows u64");
        v
    }

    /// Componentwise difference, `None` unless other ≤ self everywhere.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut entries = self.entries.clone();
        for (&k, &m) in &other.entries {
            let slot = entries.get_mut(&k)?;
            if *slot < m {
                return None;
            }
            *slot -= m;
            if *slot == 0 {
                entries.remove(&k);
            }
        }
        Some(Self { entries })
    }

    /// True when other ≤ self componentwise.
    pub fn contains(&self, other: &Self) -> bool {
        other.entries.iter().all(|(&k, &m)| self.entry(k) >= m)
    }
}

/// Canonical order: grade by weight, then compare dense prefixes at the
/// first differing index with the larger entry coming first.  At weight 3
/// this yields (3), (1,1), (0,0,1).
impl Ord for PartitionVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| {
            let max = self.max_index().max(other.max_index());
            for k in 1..=max {
                match other.entry(k).cmp(&self.entry(k)) {
                    Ordering::Equal => continue,
                    unequal => return unequal,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for PartitionVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Text encoding: comma-separated dense prefix, zero vector as "0".
impl fmt::Display for PartitionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let dense = self.to_dense();
        let parts: Vec<String> = dense.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for PartitionVector {
    type Err = LambdaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(LambdaError::Parse(s.to_string()));
        }
        let mut dense = Vec::new();
        for token in trimmed.split(',') {
            let m: u64 = token
                .trim()
                .parse()
                .map_err(|_| LambdaError::Parse(s.to_string()))?;
            dense.push(m);
        }
        let v = Self::from_dense(&dense);
        v.checked_weight().ok_or(LambdaError::WeightOverflow)?;
        Ok(v)
    }
}

/// A finite multiset of nonzero multiplicity vectors.
///
/// The zero vector is never an element; constructors reject it.  Ordering
/// and iteration follow the canonical vector order, so equal multisets
/// serialize identically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorMultiset {
    counts: BTreeMap<PartitionVector, u64>,
}

impl VectorMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Collects vectors into a multiset.  Panics on the zero vector.
    pub fn from_vectors<I>(vectors: I) -> Self
    where
        I: IntoIterator<Item = PartitionVector>,
    {
        let mut ms = Self::new();
        for v in vectors {
            ms.insert(v);
        }
        ms
    }

    /// Adds one copy.  Panics on the zero vector, which is never a valid
    /// element.
    pub fn insert(&mut self, v: PartitionVector) {
        self.insert_many(v, 1);
    }

    /// Adds `count` copies.  Panics on the zero vector.
    pub fn insert_many(&mut self, v: PartitionVector, count: u64) {
        assert!(!v.is_zero(), "the zero vector cannot be a multiset element");
        if count != 0 {
            *self.counts.entry(v).or_insert(0) += count;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Total number of elements counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Distinct elements with their multiplicities, in canonical order.
    pub fn counts(&self) -> impl Iterator<Item = (&PartitionVector, u64)> + '_ {
        self.counts.iter().map(|(v, &m)| (v, m))
    }

    /// All elements with multiplicity, in canonical order.
    pub fn expand(&self) -> Vec<PartitionVector> {
        let mut out = Vec::new();
        for (v, m) in self.counts() {
            for _ in 0..m {
                out.push(v.clone());
            }
        }
        out
    }

    /// rep(𝛍) = Π_v m_v! over the distinct elements, the number of ways to
    /// permute equal copies.  rep(∅) = 1.
    pub fn rep_count(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (_, m) in self.counts() {
            acc *= factorial(m);
        }
        acc
    }

    /// autiv(𝛍) = Π_{μ∈𝛍} autiv(μ) · rep(𝛍), the order of the automorphism
    /// group of a disjoint union of surjections with classes 𝛍.
    pub fn autiv(&self) -> BigUint {
        let mut acc = self.rep_count();
        for (v, m) in self.counts() {
            acc *= Pow::pow(v.autiv(), m);
        }
        acc
    }

    /// Σ_{μ∈𝛍} wt(μ) with multiplicity.
    pub fn total_weight(&self) -> u64 {
        self.counts().map(|(v, m)| v.weight() * m).sum()
    }

    /// Componentwise sum of all elements.
    pub fn vector_sum(&self) -> PartitionVector {
        let mut acc = PartitionVector::zero();
        for (v, m) in self.counts() {
            for _ in 0..m {
                acc = acc.add(v);
            }
        }
        acc
    }

    /// Multiset union (multiplicities add).
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, m) in other.counts() {
            out.insert_many(v.clone(), m);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Vectors of weight exactly w.
    Exact,
    /// Vectors of every weight ≤ w, the zero vector included.
    UpTo,
}

/// All multiplicity vectors of weight w (or ≤ w), in canonical order.
/// There are p(w) vectors of weight exactly w, one per integer partition:
/// λ_k counts the parts equal to k.
pub fn enumerate_vectors(w: u64, mode: EnumerationMode) -> Vec<PartitionVector> {
    let mut out = Vec::new();
    match mode {
        EnumerationMode::Exact => collect_weight(w, &mut out),
        EnumerationMode::UpTo => {
            for v in 0..=w {
                collect_weight(v, &mut out);
            }
        }
    }
    out.sort();
    out
}

fn collect_weight(w: u64, out: &mut Vec<PartitionVector>) {
    let mut current = BTreeMap::new();
    descend(w, w, &mut current, out);
}

fn descend(
    remaining: u64,
    max_part: u64,
    current: &mut BTreeMap<u64, u64>,
    out: &mut Vec<PartitionVector>,
) {
    if remaining == 0 {
        out.push(PartitionVector {
            entries: current.clone(),
        });
        return;
    }
    let cap = max_part.min(remaining);
    for part in (1..=cap).rev() {
        *current.entry(part).or_insert(0) += 1;
        descend(remaining - part, part, current, out);
        let slot = current.get_mut(&part).unwrap();
        *slot -= 1;
        if *slot == 0 {
            current.remove(&part);
        }
    }
}

/// All vectors μ with μ ≤ bound componentwise, the zero vector included.
pub fn sub_vectors(bound: &PartitionVector) -> Vec<PartitionVector> {
    let support: Vec<(u64, u64)> = bound.iter().collect();
    let mut out = Vec::new();
    let mut current = BTreeMap::new();
    fill_sub(&support, 0, &mut current, &mut out);
    out
}

fn fill_sub(
    support: &[(u64, u64)],
    pos: usize,
    current: &mut BTreeMap<u64, u64>,
    out: &mut Vec<PartitionVector>,
) {
    if pos == support.len() {
        out.push(PartitionVector {
            entries: current.clone(),
        });
        return;
    }
    let (k, cap) = support[pos];
    for m in 0..=cap {
        if m != 0 {
            current.insert(k, m);
        }
        fill_sub(support, pos + 1, current, out);
        current.remove(&k);
    }
}

/// All multisets of nonzero vectors with exactly `len` elements and total
/// weight (sum over elements) at most `max_total_weight`.
pub fn enumerate_multisets(len: u64, max_total_weight: u64) -> Vec<VectorMultiset> {
    let pool: Vec<PartitionVector> = enumerate_vectors(max_total_weight, EnumerationMode::UpTo)
        .into_iter()
        .filter(|v| !v.is_zero())
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    pick_multiset(&pool, 0, len, max_total_weight, &mut current, &mut out);
    out
}

fn pick_multiset(
    pool: &[PartitionVector],
    from: usize,
    remaining: u64,
    budget: u64,
    current: &mut Vec<PartitionVector>,
    out: &mut Vec<VectorMultiset>,
) {
    if remaining == 0 {
        out.push(VectorMultiset::from_vectors(current.iter().cloned()));
        return;
    }
    for idx in from..pool.len() {
        let w = pool[idx].weight();
        // every later element weighs at least 1
        if w + (remaining - 1) > budget {
            continue;
        }
        current.push(pool[idx].clone());
        pick_multiset(pool, idx, remaining - 1, budget - w, current, out);
        current.pop();
    }
}
