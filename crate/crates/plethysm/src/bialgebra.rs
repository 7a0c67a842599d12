//! The polynomial bialgebra ℚ[{A_λ}] of coefficient functionals.
//!
//! The generator A_λ pairs with a series to f_λ; products of generators
//! pair to products of coefficients.  The comultiplication mirrors
//! plethystic substitution through ⟨Δ(A_σ), F ⊗ G⟩ = ⟨A_σ, G ⊛ F⟩ and is
//! computed on generators two independent ways: by enumerating ordered
//! grid decompositions of σ in the divided basis a_λ = A_λ/autiv(λ), and
//! by counting placements of a multiset into the grid.  Both must agree.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::lambda::{
    enumerate_multisets, enumerate_vectors, factorial, sub_vectors, EnumerationMode,
    PartitionVector, VectorMultiset,
};
use crate::series::{autiv_rational, Rational, SeriesError, TruncatedSeries};

/// A monomial in the generators: the multiset of its factors A_λ.
/// The empty multiset is the monomial 1.
pub type PMonomial = VectorMultiset;

/// A finite ℚ-linear combination of monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PElement {
    terms: BTreeMap<PMonomial, Rational>,
}

impl PElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut out = Self::zero();
        out.accumulate(PMonomial::new(), Rational::one());
        out
    }

    /// The generator A_λ for a nonzero index.
    pub fn generator(v: &PartitionVector) -> Self {
        assert!(!v.is_zero(), "generators are indexed by nonzero vectors");
        let mut out = Self::zero();
        out.accumulate(PMonomial::from_vectors([v.clone()]), Rational::one());
        out
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (PMonomial, Rational)>,
    {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.accumulate(m, c);
        }
        out
    }

    pub fn accumulate(&mut self, monomial: PMonomial, coeff: Rational) {
        accumulate_map(&mut self.terms, monomial, coeff);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMonomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &PMonomial) -> Rational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            for (n, d) in other.terms() {
                out.accumulate(m.union(n), c * d);
            }
        }
        out
    }

    /// Drops monomials whose total index weight exceeds the bound.
    pub fn retain_within(&self, weight: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_weight() <= weight)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluation against a series: A_λ ↦ f_λ(F) on every factor.
    pub fn pair_series(&self, f: &TruncatedSeries) -> Result<Rational, SeriesError> {
        let mut acc = Rational::zero();
        for (m, c) in self.terms() {
            acc += c * f.pair_monomial(m)?;
        }
        Ok(acc)
    }
}

/// A finite ℚ-linear combination of tensors (monomial ⊗ monomial).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PTensor {
    terms: BTreeMap<(PMonomial, PMonomial), Rational>,
}

impl PTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut out = Self::zero();
        out.accumulate(PMonomial::new(), PMonomial::new(), Rational::one());
        out
    }

    pub fn accumulate(&mut self, left: PMonomial, right: PMonomial, coeff: Rational) {
        accumulate_map(&mut self.terms, (left, right), coeff);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(PMonomial, PMonomial), &Rational)> + '_ {
        self.terms.iter()
    }

    /// Terms ordered by right leg first, the reading order of Δ.
    pub fn terms_right_major(&self) -> Vec<(&PMonomial, &PMonomial, &Rational)> {
        let mut out: Vec<_> = self.terms.iter().map(|((l, r), c)| (l, r, c)).collect();
        out.sort_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));
        out
    }

    pub fn coefficient(&self, left: &PMonomial, right: &PMonomial) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((l, r), c) in other.terms() {
            out.accumulate(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    /// Componentwise product, the algebra structure of 𝒫 ⊗ 𝒫.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((l1, r1), c) in self.terms() {
            for ((l2, r2), d) in other.terms() {
                out.accumulate(l1.union(l2), r1.union(r2), c * d);
            }
        }
        out
    }

    /// Drops terms with either leg heavier than the bound.
    pub fn retain_within(&self, weight: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((l, r), _)| l.total_weight() <= weight && r.total_weight() <= weight)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every term's right leg is a single generator.
    pub fn right_legs_are_generators(&self) -> bool {
        self.terms.keys().all(|(_, r)| r.len() == 1)
    }

    /// Evaluation ⟨·, F ⊗ G⟩.
    pub fn pair_series(
        &self,
        f: &TruncatedSeries,
        g: &TruncatedSeries,
    ) -> Result<Rational, SeriesError> {
        let mut acc = Rational::zero();
        for ((l, r), c) in self.terms() {
            acc += c * f.pair_monomial(l)? * g.pair_monomial(r)?;
        }
        Ok(acc)
    }
}

fn accumulate_map<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += coeff;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// One way of writing σ over the cell grid of λ: column i (present when
/// λ_i > 0) holds an ordered list of λ_i nonzero vectors μ_{i,1..λ_i},
/// and Σ_{i,j} V^i(μ_{i,j}) = σ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTuple {
    columns: Vec<(u64, Vec<PartitionVector>)>,
}

impl DecompositionTuple {
    pub fn columns(&self) -> &[(u64, Vec<PartitionVector>)] {
        &self.columns
    }

    /// Grid entries as (column index, vector), columns ascending.
    pub fn entries(&self) -> impl Iterator<Item = (u64, &PartitionVector)> + '_ {
        self.columns
            .iter()
            .flat_map(|(i, slots)| slots.iter().map(move |v| (*i, v)))
    }

    /// The multiset of grid entries, the shape that labels a left monomial.
    pub fn multiset(&self) -> VectorMultiset {
        VectorMultiset::from_vectors(self.entries().map(|(_, v)| v.clone()))
    }

    /// Σ_{i,j} V^i(μ_{i,j}), which reconstructs σ.
    pub fn vector_sum(&self) -> PartitionVector {
        let mut acc = PartitionVector::zero();
        for (i, v) in self.entries() {
            acc = acc.add(&v.verschiebung(i));
        }
        acc
    }
}

/// All decomposition tuples of σ over the grid of λ.
pub fn enumerate_decompositions(
    sigma: &PartitionVector,
    lambda: &PartitionVector,
) -> Vec<DecompositionTuple> {
    enumerate_decompositions_capped(sigma, lambda, None)
}

/// As `enumerate_decompositions`, but discarding branches whose entry
/// weights Σ wt(μ_{i,j}) would exceed the cap.
pub fn enumerate_decompositions_capped(
    sigma: &PartitionVector,
    lambda: &PartitionVector,
    entry_weight_cap: Option<u64>,
) -> Vec<DecompositionTuple> {
    let cells: Vec<u64> = lambda
        .iter()
        .flat_map(|(i, m)| std::iter::repeat_n(i, m as usize))
        .collect();
    // each remaining cell in column i consumes at least weight i from σ
    let mut min_consumption = vec![0u64; cells.len() + 1];
    for t in (0..cells.len()).rev() {
        min_consumption[t] = min_consumption[t + 1] + cells[t];
    }
    let mut out = Vec::new();
    let mut chosen: Vec<PartitionVector> = Vec::new();
    decompose(
        &cells,
        &min_consumption,
        0,
        sigma.clone(),
        0,
        entry_weight_cap,
        &mut chosen,
        &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn decompose(
    cells: &[u64],
    min_consumption: &[u64],
    t: usize,
    remaining: PartitionVector,
    entry_weight: u64,
    cap: Option<u64>,
    chosen: &mut Vec<PartitionVector>,
    out: &mut Vec<DecompositionTuple>,
) {
    if t == cells.len() {
        if remaining.is_zero() {
            let mut columns: Vec<(u64, Vec<PartitionVector>)> = Vec::new();
            for (cell, v) in cells.iter().zip(chosen.iter()) {
                match columns.last_mut() {
                    Some((i, slots)) if i == cell => slots.push(v.clone()),
                    _ => columns.push((*cell, vec![v.clone()])),
                }
            }
            out.push(DecompositionTuple { columns });
        }
        return;
    }
    if remaining.weight() < min_consumption[t] {
        return;
    }
    let column = cells[t];
    let future_cells = (cells.len() - t - 1) as u64;
    for candidate in sub_vectors(&remaining.projected_multiples(column)) {
        if candidate.is_zero() {
            continue;
        }
        let w = candidate.weight();
        if let Some(cap) = cap {
            if entry_weight + w + future_cells > cap {
                continue;
            }
        }
        let spread = candidate.verschiebung(column);
        let next = remaining
            .checked_sub(&spread)
            .expect("candidate fits inside the remaining vector");
        chosen.push(candidate);
        decompose(
            cells,
            min_consumption,
            t + 1,
            next,
            entry_weight + w,
            cap,
            chosen,
            out,
        );
        chosen.pop();
    }
}

/// |T^𝛍_{σ,λ}|: the number of bijections from the labeled copies of 𝛍 to
/// the cells of λ's grid whose weighted sum Σ V^{col} μ reproduces σ.
/// Copies of equal vectors placed in exchanged cells count separately.
/// Zero when the sizes differ.
pub fn count_placements(
    sigma: &PartitionVector,
    lambda: &PartitionVector,
    multiset: &VectorMultiset,
) -> BigUint {
    if multiset.len() != lambda.length() {
        return BigUint::zero();
    }
    let items = multiset.expand();
    let cells: Vec<u64> = lambda
        .iter()
        .flat_map(|(i, m)| std::iter::repeat_n(i, m as usize))
        .collect();
    let mut used = vec![false; items.len()];
    let mut count = BigUint::zero();
    place(&items, &cells, 0, sigma.clone(), &mut used, &mut count);
    count
}

fn place(
    items: &[PartitionVector],
    cells: &[u64],
    t: usize,
    remaining: PartitionVector,
    used: &mut Vec<bool>,
    count: &mut BigUint,
) {
    if t == cells.len() {
        if remaining.is_zero() {
            *count += 1u32;
        }
        return;
    }
    let column = cells[t];
    for idx in 0..items.len() {
        if used[idx] {
            continue;
        }
        let spread = items[idx].verschiebung(column);
        let Some(next) = remaining.checked_sub(&spread) else {
            continue;
        };
        used[idx] = true;
        place(items, cells, t + 1, next, used, count);
        used[idx] = false;
    }
}

fn delta_cache() -> &'static Mutex<HashMap<PartitionVector, PTensor>> {
    static CACHE: OnceLock<Mutex<HashMap<PartitionVector, PTensor>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Δ(A_σ) for a nonzero σ, via grid decompositions in the divided basis:
/// Δ(a_σ) = Σ_λ Σ_{tuples} Π a_{μ_{i,j}} ⊗ a_λ, rebased to the A-basis.
/// Memoized; the cache is shared and idempotent.
pub fn delta_generator(sigma: &PartitionVector) -> PTensor {
    assert!(!sigma.is_zero(), "Δ is defined on generators A_σ with σ ≠ 0");
    if let Some(hit) = delta_cache().lock().unwrap().get(sigma) {
        return hit.clone();
    }
    let computed = delta_generator_fresh(sigma, None);
    delta_cache()
        .lock()
        .unwrap()
        .entry(sigma.clone())
        .or_insert(computed)
        .clone()
}

/// The same sum without the cache, in the divided basis when `divided`
/// carries a leg cap (used by the grouplike identity): coefficients are
/// then those of Δ(a_σ) with both legs weight-capped.
fn delta_generator_fresh(sigma: &PartitionVector, divided_leg_cap: Option<u64>) -> PTensor {
    let mut out = PTensor::zero();
    let lambda_bound = match divided_leg_cap {
        Some(cap) => sigma.weight().min(cap),
        None => sigma.weight(),
    };
    for lambda in enumerate_vectors(lambda_bound, EnumerationMode::UpTo) {
        if lambda.is_zero() {
            continue;
        }
        for tuple in enumerate_decompositions_capped(sigma, &lambda, divided_leg_cap) {
            let mut denominator = autiv_rational(&lambda);
            for (_, v) in tuple.entries() {
                denominator *= autiv_rational(v);
            }
            let coeff = match divided_leg_cap {
                Some(_) => denominator.recip(),
                None => autiv_rational(sigma) / denominator,
            };
            out.accumulate(
                tuple.multiset(),
                PMonomial::from_vectors([lambda.clone()]),
                coeff,
            );
        }
    }
    out
}

/// Δ(A_σ) computed the other way: for each right index λ and multiset 𝛍,
/// the coefficient autiv(σ)·|T^𝛍_{σ,λ}| / (autiv(λ)·autiv(𝛍)) on
/// (Π_{μ∈𝛍} A_μ) ⊗ A_λ.  Must agree with `delta_generator`.
pub fn delta_generator_via_placements(sigma: &PartitionVector) -> PTensor {
    assert!(!sigma.is_zero(), "Δ is defined on generators A_σ with σ ≠ 0");
    let mut out = PTensor::zero();
    for lambda in enumerate_vectors(sigma.weight(), EnumerationMode::UpTo) {
        if lambda.is_zero() {
            continue;
        }
        for multiset in enumerate_multisets(lambda.length(), sigma.weight()) {
            let count = count_placements(sigma, &lambda, &multiset);
            if count.is_zero() {
                continue;
            }
            let numerator = Rational::from(BigInt::from(sigma.autiv() * count));
            let denominator =
                Rational::from(BigInt::from(lambda.autiv() * multiset.autiv()));
            out.accumulate(
                multiset,
                PMonomial::from_vectors([lambda.clone()]),
                numerator / denominator,
            );
        }
    }
    out
}

/// Δ on a monomial: the componentwise product of the generator images.
pub fn delta_monomial(monomial: &PMonomial) -> PTensor {
    let mut out = PTensor::one();
    for (v, m) in monomial.counts() {
        let image = delta_generator(v);
        for _ in 0..m {
            out = out.multiply(&image);
        }
    }
    out
}

/// Δ extended to arbitrary elements as an algebra map.
pub fn delta(x: &PElement) -> PTensor {
    let mut out = PTensor::zero();
    for (m, c) in x.terms() {
        out = out.add(&delta_monomial(m).scale(c));
    }
    out
}

/// The counit: A_{(1)} ↦ 1, every other generator ↦ 0, extended
/// multiplicatively and linearly.
pub fn counit(x: &PElement) -> Rational {
    let unit = PartitionVector::unit(1);
    let mut acc = Rational::zero();
    for (m, c) in x.terms() {
        if m.counts().all(|(v, _)| *v == unit) {
            acc += c;
        }
    }
    acc
}

/// The Bell polynomial P_{σ,λ}: the left cofactor of A_λ in Δ(A_σ).
/// Zero when wt(λ) > wt(σ).
pub fn bell(sigma: &PartitionVector, lambda: &PartitionVector) -> PElement {
    assert!(!sigma.is_zero() && !lambda.is_zero());
    let right = PMonomial::from_vectors([lambda.clone()]);
    let mut out = PElement::zero();
    for ((l, r), c) in delta_generator(sigma).terms() {
        if *r == right {
            out.accumulate(l.clone(), c.clone());
        }
    }
    out
}

/// Both sides of the grouplike identity for the sum A = Σ_λ a_λ:
/// Δ(A) = Σ_k A^k ⊗ a_k with a_k = Σ_{|λ|=k} a_λ.  Returned in the
/// A-basis with every tensor leg truncated to weight ≤ w, identically on
/// both sides.  Terms with legs inside the window arise from σ of weight
/// up to wt(left)·wt(right) ≤ w², so the left sum ranges that far with
/// capped enumeration.
pub fn green_delta(w: u64) -> (PTensor, PTensor) {
    let mut left = PTensor::zero();
    for sw in 1..=w.saturating_mul(w) {
        for sigma in enumerate_vectors(sw, EnumerationMode::Exact) {
            left = left.add(&delta_generator_fresh(&sigma, Some(w)));
        }
    }

    let mut a_sum = PElement::zero();
    for v in enumerate_vectors(w, EnumerationMode::UpTo) {
        if !v.is_zero() {
            a_sum.accumulate(
                PMonomial::from_vectors([v.clone()]),
                autiv_rational(&v).recip(),
            );
        }
    }
    let mut right = PTensor::zero();
    let mut power = PElement::one();
    for k in 1..=w {
        power = power.multiply(&a_sum).retain_within(w);
        let mut a_k = PElement::zero();
        for v in enumerate_vectors(w, EnumerationMode::UpTo) {
            if !v.is_zero() && v.length() == k {
                a_k.accumulate(
                    PMonomial::from_vectors([v.clone()]),
                    autiv_rational(&v).recip(),
                );
            }
        }
        for (m, c) in power.terms() {
            for (n, d) in a_k.terms() {
                right.accumulate(m.clone(), n.clone(), c * d);
            }
        }
    }

    (left.retain_within(w), right.retain_within(w))
}

/// The coproduct of the classical generator A_n = A_{(n,0,…)}, evaluated
/// independently by counting set partitions: a partition of an n-set into
/// blocks of sizes given by ν contributes n!/autiv(ν) once the equal
/// sizes are merged.
pub fn classical_delta(n: u64) -> PTensor {
    assert!(n >= 1);
    let n_factorial = Rational::from(BigInt::from(factorial(n)));
    let mut out = PTensor::zero();
    for nu in enumerate_vectors(n, EnumerationMode::Exact) {
        let coeff = &n_factorial / autiv_rational(&nu);
        let mut monomial = PMonomial::new();
        for (s, m) in nu.iter() {
            monomial.insert_many(PartitionVector::from_dense(&[s]), m);
        }
        let right = PMonomial::from_vectors([PartitionVector::from_dense(&[nu.length()])]);
        out.accumulate(monomial, right, coeff);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(dense: &[u64]) -> PartitionVector {
        PartitionVector::from_dense(dense)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn gen_monomial(dense_list: &[&[u64]]) -> PMonomial {
        PMonomial::from_vectors(dense_list.iter().map(|d| pv(d)))
    }

    #[test]
    fn decomposition_examples() {
        let tuples = enumerate_decompositions(&pv(&[2]), &pv(&[2]));
        assert_eq!(tuples.len(), 1);
        assert_eq!(tuples[0].columns(), &[(1, vec![pv(&[1]), pv(&[1])])]);

        let tuples = enumerate_decompositions(&pv(&[0, 1]), &pv(&[0, 1]));
        assert_eq!(tuples.len(), 1);
        assert_eq!(tuples[0].columns(), &[(2, vec![pv(&[1])])]);

        assert!(enumerate_decompositions(&pv(&[1]), &pv(&[0, 1])).is_empty());
    }

    #[test]
    fn decomposition_sum_reconstructs_sigma() {
        let sigma = pv(&[1, 2]);
        for lambda in enumerate_vectors(sigma.weight(), EnumerationMode::UpTo) {
            if lambda.is_zero() {
                continue;
            }
            for tuple in enumerate_decompositions(&sigma, &lambda) {
                assert_eq!(tuple.vector_sum(), sigma);
                assert_eq!(tuple.multiset().len(), lambda.length());
            }
        }
    }

    #[test]
    fn placement_examples() {
        let ms = VectorMultiset::from_vectors([pv(&[1]), pv(&[2])]);
        assert_eq!(count_placements(&pv(&[3]), &pv(&[2]), &ms), BigUint::from(2u32));

        let ms = VectorMultiset::from_vectors([pv(&[0, 1])]);
        assert_eq!(
            count_placements(&pv(&[0, 1]), &pv(&[1]), &ms),
            BigUint::from(1u32)
        );

        let ms = VectorMultiset::from_vectors([pv(&[1])]);
        assert_eq!(count_placements(&pv(&[2]), &pv(&[2]), &ms), BigUint::zero());
    }

    #[test]
    fn delta_generator_frozen_values() {
        let d1 = delta_generator(&pv(&[1]));
        assert_eq!(
            d1.coefficient(&gen_monomial(&[&[1]]), &gen_monomial(&[&[1]])),
            rat(1, 1)
        );
        assert_eq!(d1.terms().count(), 1);

        let d01 = delta_generator(&pv(&[0, 1]));
        assert_eq!(
            d01.coefficient(&gen_monomial(&[&[0, 1]]), &gen_monomial(&[&[1]])),
            rat(1, 1)
        );
        assert_eq!(
            d01.coefficient(&gen_monomial(&[&[1]]), &gen_monomial(&[&[0, 1]])),
            rat(1, 1)
        );
        assert_eq!(d01.terms().count(), 2);

        let d2 = delta_generator(&pv(&[2]));
        assert_eq!(
            d2.coefficient(&gen_monomial(&[&[2]]), &gen_monomial(&[&[1]])),
            rat(1, 1)
        );
        assert_eq!(
            d2.coefficient(&gen_monomial(&[&[1], &[1]]), &gen_monomial(&[&[2]])),
            rat(1, 1)
        );
        assert_eq!(d2.terms().count(), 2);
    }

    #[test]
    fn delta_routes_agree_small() {
        for w in 1..=3u64 {
            for sigma in enumerate_vectors(w, EnumerationMode::Exact) {
                assert_eq!(
                    delta_generator(&sigma),
                    delta_generator_via_placements(&sigma),
                    "σ = {sigma}"
                );
            }
        }
    }

    #[test]
    fn delta_is_multiplicative_and_unital() {
        assert_eq!(delta(&PElement::one()), PTensor::one());
        let x = PElement::generator(&pv(&[1]));
        let y = PElement::generator(&pv(&[0, 1]));
        let product = x.multiply(&y);
        assert_eq!(
            delta(&product),
            delta(&x).multiply(&delta(&y))
        );
    }

    #[test]
    fn counit_frozen_values() {
        assert_eq!(counit(&PElement::generator(&pv(&[1]))), rat(1, 1));
        assert_eq!(counit(&PElement::generator(&pv(&[0, 1]))), rat(0, 1));
        let square = PElement::generator(&pv(&[1])).multiply(&PElement::generator(&pv(&[1])));
        assert_eq!(counit(&square), rat(1, 1));
        assert_eq!(counit(&PElement::one()), rat(1, 1));
        let mixed = square.scale(&rat(3, 2)).add(&PElement::generator(&pv(&[2])));
        assert_eq!(counit(&mixed), rat(3, 2));
    }

    #[test]
    fn bell_frozen_values() {
        let p = bell(&pv(&[3]), &pv(&[2]));
        assert_eq!(p.coefficient(&gen_monomial(&[&[1], &[2]])), rat(3, 1));
        assert_eq!(p.terms().count(), 1);
        assert!(bell(&pv(&[1]), &pv(&[0, 1])).is_zero());
    }

    #[test]
    fn pairing_examples() {
        let x2 = TruncatedSeries::variable(2, 4);
        let x1 = TruncatedSeries::variable(1, 4);
        let a01 = PElement::generator(&pv(&[0, 1]));
        assert_eq!(a01.pair_series(&x2).unwrap(), rat(2, 1));
        let d = delta_generator(&pv(&[0, 1]));
        assert_eq!(d.pair_series(&x2, &x1).unwrap(), rat(2, 1));
    }

    #[test]
    fn green_delta_small() {
        let (l0, r0) = green_delta(0);
        assert!(l0.is_zero() && r0.is_zero());

        let (l1, r1) = green_delta(1);
        assert_eq!(l1, r1);
        assert_eq!(
            l1.coefficient(&gen_monomial(&[&[1]]), &gen_monomial(&[&[1]])),
            rat(1, 1)
        );
        assert_eq!(l1.terms().count(), 1);

        for w in 2..=3 {
            let (l, r) = green_delta(w);
            assert_eq!(l, r, "weight window {w}");
            assert!(!l.is_zero());
        }
    }

    #[test]
    fn classical_delta_frozen() {
        let d3 = classical_delta(3);
        assert_eq!(
            d3.coefficient(&gen_monomial(&[&[3]]), &gen_monomial(&[&[1]])),
            rat(1, 1)
        );
        assert_eq!(
            d3.coefficient(&gen_monomial(&[&[1], &[2]]), &gen_monomial(&[&[2]])),
            rat(3, 1)
        );
        assert_eq!(
            d3.coefficient(&gen_monomial(&[&[1], &[1], &[1]]), &gen_monomial(&[&[3]])),
            rat(1, 1)
        );
        assert_eq!(d3.terms().count(), 3);
        assert_eq!(classical_delta(3), delta_generator(&pv(&[3])));
    }

    #[test]
    fn delta_outputs_are_positive_with_generator_right_legs() {
        for w in 1..=4u64 {
            for sigma in enumerate_vectors(w, EnumerationMode::Exact) {
                let d = delta_generator(&sigma);
                assert!(d.right_legs_are_generators());
                for (_, c) in d.terms() {
                    assert!(c > &Rational::zero());
                }
            }
        }
    }
}
