//! Weight-truncated series in the variables x_1, x_2, … with exact
//! rational coefficients.
//!
//! A series is written F = Σ_λ f_λ 𝐱^λ / autiv(λ) with 𝐱^λ = x_1^{λ_1}
//! x_2^{λ_2} ⋯.  Internally the map stores the raw monomial coefficient
//! c_λ = f_λ / autiv(λ); the f-normalisation only appears at the API
//! boundary.  Every stored index has weight ≤ the truncation, and nothing
//! above the truncation is observable.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lambda::{PartitionVector, VectorMultiset};

pub type Rational = num_rational::BigRational;

/// autiv(λ) as a rational, for normalisation changes.
pub fn autiv_rational(v: &PartitionVector) -> Rational {
    Rational::from(BigInt::from(v.autiv()))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: u64, right: u64 },
    #[error("index of weight {weight} is not stored below truncation {truncation}")]
    AboveTruncation { weight: u64, truncation: u64 },
    #[error("inner series of a plethysm must have no constant term")]
    ConstantTerm,
}

/// A series truncated by total weight.
///
/// Equal series have equal truncations and identical nonzero coefficient
/// maps, so `==` is the right notion of equality at a fixed truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    truncation: u64,
    terms: BTreeMap<PartitionVector, Rational>,
}

impl TruncatedSeries {
    pub fn zero(truncation: u64) -> Self {
        Self {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(truncation: u64) -> Self {
        Self::from_raw_terms([(PartitionVector::zero(), Rational::one())], truncation)
    }

    /// The variable x_k (zero when its weight k exceeds the truncation).
    pub fn variable(k: u64, truncation: u64) -> Self {
        Self::from_raw_terms([(PartitionVector::unit(k), Rational::one())], truncation)
    }

    /// Builds a series from raw monomial coefficients c_λ, summing
    /// duplicates and dropping weights above the truncation.
    pub fn from_raw_terms<I>(terms: I, truncation: u64) -> Self
    where
        I: IntoIterator<Item = (PartitionVector, Rational)>,
    {
        let mut series = Self::zero(truncation);
        for (v, c) in terms {
            series.accumulate(v, c);
        }
        series
    }

    /// Builds a series from f-normalised coefficients: c_λ = f_λ/autiv(λ).
    /// Duplicate indices are summed; weights above the truncation dropped.
    pub fn from_f_coefficients<I>(terms: I, truncation: u64) -> Self
    where
        I: IntoIterator<Item = (PartitionVector, Rational)>,
    {
        Self::from_raw_terms(
            terms
                .into_iter()
                .map(|(v, f)| {
                    let c = f / autiv_rational(&v);
                    (v, c)
                }),
            truncation,
        )
    }

    fn accumulate(&mut self, v: PartitionVector, c: Rational) {
        if c.is_zero() || v.weight() > self.truncation {
            return;
        }
        match self.terms.entry(v) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the coefficient of the empty monomial vanishes.
    pub fn is_constant_free(&self) -> bool {
        !self.terms.contains_key(&PartitionVector::zero())
    }

    pub fn ensure_constant_free(&self) -> Result<(), SeriesError> {
        if self.is_constant_free() {
            Ok(())
        } else {
            Err(SeriesError::ConstantTerm)
        }
    }

    /// Nonzero raw coefficients in canonical index order.
    pub fn raw_terms(&self) -> impl Iterator<Item = (&PartitionVector, &Rational)> + '_ {
        self.terms.iter()
    }

    /// Raw coefficient c_λ; an error above the truncation, where the
    /// series stores no information.
    pub fn raw_coefficient(&self, v: &PartitionVector) -> Result<Rational, SeriesError> {
        if v.weight() > self.truncation {
            return Err(SeriesError::AboveTruncation {
                weight: v.weight(),
                truncation: self.truncation,
            });
        }
        Ok(self.terms.get(v).cloned().unwrap_or_else(Rational::zero))
    }

    /// f_λ = autiv(λ)·c_λ; an error above the truncation.
    pub fn coefficient(&self, v: &PartitionVector) -> Result<Rational, SeriesError> {
        Ok(self.raw_coefficient(v)? * autiv_rational(v))
    }

    fn check_truncation(&self, other: &Self) -> Result<(), SeriesError> {
        if self.truncation != other.truncation {
            return Err(SeriesError::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_truncation(other)?;
        let mut out = self.clone();
        for (v, c) in other.raw_terms() {
            out.accumulate(v.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.truncation);
        }
        Self {
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .map(|(v, c)| (v.clone(), c * factor))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product, truncated by weight: c^{FG}_σ = Σ_{λ+μ=σ} c^F_λ c^G_μ.
    pub fn multiply(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_truncation(other)?;
        let mut out = Self::zero(self.truncation);
        for (v, c) in self.raw_terms() {
            for (w, d) in other.raw_terms() {
                if v.weight() + w.weight() > self.truncation {
                    continue;
                }
                out.accumulate(v.add(w), c * d);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: u64) -> Self {
        let mut out = Self::one(self.truncation);
        for _ in 0..exponent {
            out = out.multiply(self).expect("equal truncations");
        }
        out
    }

    /// The substitution x_i ↦ x_{ki}, written F_k: monomials transport
    /// along the Verschiebung, c^{F_k}_{V^k μ} = c^F_μ, so
    /// f^{F_k}_{V^k μ} / autiv(V^k μ) = f^F_μ / autiv(μ).  Indices whose
    /// weight leaves the truncation window are dropped.
    pub fn verschiebung_substitute(&self, k: u64) -> Self {
        assert!(k >= 1, "Verschiebung index must be at least 1");
        Self::from_raw_terms(
            self.terms
                .iter()
                .filter(|(v, _)| v.weight().saturating_mul(k) <= self.truncation)
                .map(|(v, c)| (v.verschiebung(k), c.clone())),
            self.truncation,
        )
    }

    /// Plethystic substitution G ⊛ F = Σ_λ c^G_λ Π_k (F_k)^{λ_k}.
    ///
    /// F must be constant-free, which makes every product above converge
    /// weight by weight; a constant term of G passes through additively.
    pub fn plethysm(g: &Self, f: &Self) -> Result<Self, SeriesError> {
        g.check_truncation(f)?;
        f.ensure_constant_free()?;
        let truncation = g.truncation;
        let mut substituted: BTreeMap<u64, TruncatedSeries> = BTreeMap::new();
        let mut out = Self::zero(truncation);
        for (lambda, c) in g.raw_terms() {
            let mut product = Self::one(truncation);
            for (k, m) in lambda.iter() {
                let fk = substituted
                    .entry(k)
                    .or_insert_with(|| f.verschiebung_substitute(k));
                product = product.multiply(&fk.pow(m))?;
            }
            for (v, d) in product.raw_terms() {
                out.accumulate(v.clone(), c * d);
            }
        }
        Ok(out)
    }

    /// The restriction to the first variable: the list [f_{(1)}, …, f_{(W)}]
    /// of coefficients at the pure powers x_1^n.
    pub fn restrict_univariate(&self) -> Vec<Rational> {
        (1..=self.truncation)
            .map(|n| {
                self.coefficient(&PartitionVector::from_dense(&[n]))
                    .expect("weight n ≤ truncation")
            })
            .collect()
    }

    /// Π_{μ ∈ 𝛍} f_μ over a multiset of indices; the empty multiset gives 1.
    /// Errors when some index weight exceeds the truncation.
    pub fn pair_monomial(&self, monomial: &VectorMultiset) -> Result<Rational, SeriesError> {
        let mut acc = Rational::one();
        for (v, m) in monomial.counts() {
            let f = self.coefficient(v)?;
            for _ in 0..m {
                acc *= &f;
            }
        }
        Ok(acc)
    }
}
