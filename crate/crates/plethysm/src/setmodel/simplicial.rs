//! One- and two-step cells of the surjection calculus: spans of
//! surjections with a factorization constraint, pyramids whose inner
//! square is a strict pullback, faces, degeneracies, Segal gluing, and
//! the brute-force counts behind the objective comultiplication.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::bialgebra::{PMonomial, PTensor};
use crate::lambda::{
    enumerate_multisets, enumerate_vectors, EnumerationMode, PartitionVector, VectorMultiset,
};
use crate::series::Rational;

use super::{FinSurjection, SetModelError};

/// A span t₀₀ ↞ t₀₁ ↠ t₁₁ whose right leg is constant on the fibers of
/// the down leg, so that it factors through a unique bottom surjection
/// t₀₀ ↠ t₁₁.  A cell is connected when t₁₁ is a singleton.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct T1Cell {
    down: FinSurjection,
    right: FinSurjection,
}

impl T1Cell {
    pub fn new(down: FinSurjection, right: FinSurjection) -> Result<Self, SetModelError> {
        if down.source_size() != right.source_size() {
            return Err(SetModelError::SizeMismatch {
                expected: down.source_size(),
                found: right.source_size(),
            });
        }
        for fiber in down.fibers() {
            let first = fiber[0];
            for &x in &fiber[1..] {
                if right.apply(x) != right.apply(first) {
                    return Err(SetModelError::RightDoesNotFactor { first, second: x });
                }
            }
        }
        Ok(Self { down, right })
    }

    /// The identity cell on an n-set: both legs are identities.
    pub fn degenerate(n: usize) -> Self {
        Self {
            down: FinSurjection::identity(n),
            right: FinSurjection::identity(n),
        }
    }

    pub fn down(&self) -> &FinSurjection {
        &self.down
    }

    pub fn right(&self) -> &FinSurjection {
        &self.right
    }

    pub fn source_size(&self) -> usize {
        self.down.source_size()
    }

    pub fn base_size(&self) -> usize {
        self.down.target_size()
    }

    pub fn end_size(&self) -> usize {
        self.right.target_size()
    }

    /// The induced surjection t₀₀ ↠ t₁₁, recomputed from the legs.
    pub fn bottom(&self) -> FinSurjection {
        let assignment = self
            .down
            .fibers()
            .iter()
            .map(|fiber| self.right.apply(fiber[0]))
            .collect();
        FinSurjection::new(self.end_size(), assignment)
            .expect("bottom map of a valid cell is a surjection")
    }

    pub fn is_connected(&self) -> bool {
        self.end_size() == 1
    }

    /// Fiber profile of the down leg restricted to the component over r.
    pub fn component_profile(&self, r: usize) -> PartitionVector {
        let bottom = self.bottom();
        let mut counts = std::collections::BTreeMap::new();
        for b in bottom.fiber(r) {
            *counts.entry(self.down.fiber(b).len() as u64).or_insert(0u64) += 1;
        }
        PartitionVector::from_pairs(counts).expect("down fibers are nonempty")
    }

    /// The multiset of component profiles, one per element of t₁₁.
    pub fn t1_class(&self) -> VectorMultiset {
        VectorMultiset::from_vectors((0..self.end_size()).map(|r| self.component_profile(r)))
    }

    /// The connected sub-cells, renumbered, one per element of t₁₁.
    pub fn components(&self) -> Vec<T1Cell> {
        let bottom = self.bottom();
        (0..self.end_size())
            .map(|r| {
                let sources = self.right.fiber(r);
                let bases = bottom.fiber(r);
                let down = FinSurjection::new(
                    bases.len(),
                    sources
                        .iter()
                        .map(|&x| {
                            bases
                                .iter()
                                .position(|&b| b == self.down.apply(x))
                                .expect("down image stays inside the component")
                        })
                        .collect(),
                )
                .expect("component down map is onto its base");
                let right = FinSurjection::new(1, vec![0; sources.len()])
                    .expect("component has elements over its point");
                T1Cell::new(down, right).expect("component inherits the factorization")
            })
            .collect()
    }

    pub fn monoidal_sum(&self, other: &T1Cell) -> T1Cell {
        T1Cell::new(
            self.down.disjoint_union(&other.down),
            self.right.disjoint_union(&other.right),
        )
        .expect("disjoint union preserves the factorization")
    }

    /// Number of bijection triples on (t₀₀, t₀₁, t₁₁) commuting with both
    /// legs, counted by exhaustive search over permutations of t₀₁: a
    /// permutation induces well-defined maps on t₀₀ and t₁₁ exactly when
    /// it preserves both fiber relations, and those maps are then forced.
    ///
    /// The search assigns images one element at a time and abandons a
    /// partial assignment as soon as either induced map stops being a
    /// well-defined bijection between equal-sized fibers, which any
    /// completion would force anyway.
    pub fn aut_count(&self) -> BigUint {
        let n = self.source_size();
        let mut search = FiberSearch {
            legs: [
                FiberConstraint::new(&self.down),
                FiberConstraint::new(&self.right),
            ],
            element_used: vec![false; n],
            count: BigUint::zero(),
        };
        search.run(0);
        search.count
    }

    /// Post-composes the right leg with a bijection of t₁₁ given as an
    /// image list.
    pub fn relabel_end(&self, phi: &[usize]) -> Result<T1Cell, SetModelError> {
        let relabel = FinSurjection::new(phi.len(), phi.to_vec())?;
        T1Cell::new(self.down.clone(), self.right.compose(&relabel)?)
    }
}

/// One leg of the automorphism search: tracks the partial map induced on
/// the leg's target and which targets it has already claimed.
struct FiberConstraint {
    assignment: Vec<usize>,
    fiber_size: Vec<usize>,
    image: Vec<Option<usize>>,
    claimed: Vec<bool>,
}

impl FiberConstraint {
    fn new(map: &FinSurjection) -> Self {
        let mut fiber_size = vec![0; map.target_size()];
        for &t in map.assignment() {
            fiber_size[t] += 1;
        }
        Self {
            assignment: map.assignment().to_vec(),
            fiber_size,
            image: vec![None; map.target_size()],
            claimed: vec![false; map.target_size()],
        }
    }

    /// Records `x ↦ y` on this leg if consistent with the partial induced
    /// map; returns whether the leg's claim state changed (for unwinding).
    fn admit(&mut self, x: usize, y: usize) -> Option<bool> {
        let (tx, ty) = (self.assignment[x], self.assignment[y]);
        match self.image[tx] {
            Some(t) => (t == ty).then_some(false),
            None => {
                if self.claimed[ty] || self.fiber_size[tx] != self.fiber_size[ty] {
                    None
                } else {
                    self.image[tx] = Some(ty);
                    self.claimed[ty] = true;
                    Some(true)
                }
            }
        }
    }

    fn retract(&mut self, x: usize) {
        let tx = self.assignment[x];
        let ty = self.image[tx].take().expect("retracting a recorded claim");
        self.claimed[ty] = false;
    }
}

struct FiberSearch {
    legs: [FiberConstraint; 2],
    element_used: Vec<bool>,
    count: BigUint,
}

impl FiberSearch {
    fn run(&mut self, x: usize) {
        if x == self.element_used.len() {
            self.count += 1u32;
            return;
        }
        for y in 0..self.element_used.len() {
            if self.element_used[y] {
                continue;
            }
            let Some(claimed_down) = self.legs[0].admit(x, y) else {
                continue;
            };
            if let Some(claimed_right) = self.legs[1].admit(x, y) {
                self.element_used[y] = true;
                self.run(x + 1);
                self.element_used[y] = false;
                if claimed_right {
                    self.legs[1].retract(x);
                }
            }
            if claimed_down {
                self.legs[0].retract(x);
            }
        }
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    assert!(n <= 9, "brute-force searches are limited to 9 elements");
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fill_permutations(n, &mut current, &mut used, &mut out);
    out
}

fn fill_permutations(
    n: usize,
    current: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            current.push(v);
            fill_permutations(n, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
}

/// The connected cell with down-leg fiber profile λ over a single point.
pub fn connected_cell(profile: &PartitionVector) -> T1Cell {
    assert!(
        !profile.is_zero(),
        "a connected cell needs a nonempty source"
    );
    let mut assignment = Vec::new();
    let mut base = 0;
    for (k, m) in profile.iter() {
        for _ in 0..m {
            assignment.extend(std::iter::repeat_n(base, k as usize));
            base += 1;
        }
    }
    let down = FinSurjection::new(base, assignment).expect("profile blocks cover the base");
    let right = FinSurjection::to_point(down.source_size()).expect("source is nonempty");
    T1Cell::new(down, right).expect("constant right leg factors")
}

/// The disjoint sum of connected cells, one per entry of the class.
pub fn cell_from_class(class: &VectorMultiset) -> T1Cell {
    let mut cell = T1Cell::degenerate(0);
    for v in class.expand() {
        cell = cell.monoidal_sum(&connected_cell(&v));
    }
    cell
}

/// Whether a commuting square of surjections is a strict pullback: the
/// comparison map from the apex to the fiber product must be a bijection.
/// `top` holds the two legs out of the apex, `bottom` the two legs into
/// the far corner, paired so that `bottom.0 ∘ top.0 = bottom.1 ∘ top.1`.
pub fn is_pullback_square(
    top: (&FinSurjection, &FinSurjection),
    bottom: (&FinSurjection, &FinSurjection),
) -> Result<bool, SetModelError> {
    let (left, right) = top;
    let (left_base, right_base) = bottom;
    if left.source_size() != right.source_size() {
        return Err(SetModelError::SizeMismatch {
            expected: left.source_size(),
            found: right.source_size(),
        });
    }
    if left.target_size() != left_base.source_size() {
        return Err(SetModelError::SizeMismatch {
            expected: left.target_size(),
            found: left_base.source_size(),
        });
    }
    if right.target_size() != right_base.source_size() {
        return Err(SetModelError::SizeMismatch {
            expected: right.target_size(),
            found: right_base.source_size(),
        });
    }
    if left_base.target_size() != right_base.target_size() {
        return Err(SetModelError::SizeMismatch {
            expected: left_base.target_size(),
            found: right_base.target_size(),
        });
    }
    for x in 0..left.source_size() {
        if left_base.apply(left.apply(x)) != right_base.apply(right.apply(x)) {
            return Err(SetModelError::SquareDoesNotCommute { element: x });
        }
    }
    let mut images: Vec<(usize, usize)> = (0..left.source_size())
        .map(|x| (left.apply(x), right.apply(x)))
        .collect();
    images.sort_unstable();
    let injective = images.windows(2).all(|w| w[0] != w[1]);
    let mut fiber_product = 0usize;
    for a in 0..left_base.source_size() {
        for b in 0..right_base.source_size() {
            if left_base.apply(a) == right_base.apply(b) {
                fiber_product += 1;
            }
        }
    }
    Ok(injective && images.len() == fiber_product)
}

/// A two-step pyramid
///
/// ```text
/// t₀₂ → t₁₂ → t₂₂
///  ↓     ↓
/// t₀₁ → t₁₁
///  ↓
/// t₀₀
/// ```
///
/// of surjections whose inner square is a strict pullback and whose two
/// outer faces are valid one-step cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T2Cell {
    p0201: FinSurjection,
    p0100: FinSurjection,
    p0212: FinSurjection,
    p0111: FinSurjection,
    p1211: FinSurjection,
    p1222: FinSurjection,
}

impl T2Cell {
    pub fn new(
        p0201: FinSurjection,
        p0100: FinSurjection,
        p0212: FinSurjection,
        p0111: FinSurjection,
        p1211: FinSurjection,
        p1222: FinSurjection,
    ) -> Result<Self, SetModelError> {
        if p0201.source_size() != p0212.source_size() {
            return Err(SetModelError::SizeMismatch {
                expected: p0201.source_size(),
                found: p0212.source_size(),
            });
        }
        for (map, expected) in [
            (&p0100, p0201.target_size()),
            (&p0111, p0201.target_size()),
            (&p1211, p0212.target_size()),
            (&p1222, p0212.target_size()),
        ] {
            if map.source_size() != expected {
                return Err(SetModelError::SizeMismatch {
                    expected,
                    found: map.source_size(),
                });
            }
        }
        if p0111.target_size() != p1211.target_size() {
            return Err(SetModelError::SizeMismatch {
                expected: p0111.target_size(),
                found: p1211.target_size(),
            });
        }
        if !is_pullback_square((&p0201, &p0212), (&p0111, &p1211))? {
            return Err(SetModelError::NotAPullback);
        }
        T1Cell::new(p0100.clone(), p0111.clone())?;
        T1Cell::new(p1211.clone(), p1222.clone())?;
        Ok(Self {
            p0201,
            p0100,
            p0212,
            p0111,
            p1211,
            p1222,
        })
    }

    pub fn apex_size(&self) -> usize {
        self.p0201.source_size()
    }

    pub fn is_connected(&self) -> bool {
        self.p1222.target_size() == 1
    }

    pub fn d0(&self) -> T1Cell {
        T1Cell::new(self.p1211.clone(), self.p1222.clone()).expect("validated at construction")
    }

    pub fn d1(&self) -> T1Cell {
        let down = self
            .p0201
            .compose(&self.p0100)
            .expect("sizes agree by construction");
        let right = self
            .p0212
            .compose(&self.p1222)
            .expect("sizes agree by construction");
        T1Cell::new(down, right).expect("composite face inherits the factorization")
    }

    pub fn d2(&self) -> T1Cell {
        T1Cell::new(self.p0100.clone(), self.p0111.clone()).expect("validated at construction")
    }

    /// The three faces in the order (d₂, d₁, d₀).
    pub fn faces(&self) -> (T1Cell, T1Cell, T1Cell) {
        (self.d2(), self.d1(), self.d0())
    }

    /// s₀(c): repeats the base level of c.
    pub fn s0(c: &T1Cell) -> T2Cell {
        T2Cell::new(
            c.down().clone(),
            FinSurjection::identity(c.base_size()),
            FinSurjection::identity(c.source_size()),
            FinSurjection::identity(c.base_size()),
            c.down().clone(),
            c.right().clone(),
        )
        .expect("degeneracy squares are pullbacks")
    }

    /// s₁(c): repeats the end level of c.
    pub fn s1(c: &T1Cell) -> T2Cell {
        T2Cell::new(
            FinSurjection::identity(c.source_size()),
            c.down().clone(),
            c.right().clone(),
            c.right().clone(),
            FinSurjection::identity(c.end_size()),
            FinSurjection::identity(c.end_size()),
        )
        .expect("degeneracy squares are pullbacks")
    }

    /// Renumbers the apex along a permutation; the result is an
    /// isomorphic pyramid over the same faces.
    pub fn relabel_apex(&self, perm: &[usize]) -> T2Cell {
        let reindex = |map: &FinSurjection| {
            FinSurjection::new(
                map.target_size(),
                perm.iter().map(|&x| map.apply(x)).collect(),
            )
            .expect("relabeling preserves surjectivity")
        };
        T2Cell {
            p0201: reindex(&self.p0201),
            p0212: reindex(&self.p0212),
            p0100: self.p0100.clone(),
            p0111: self.p0111.clone(),
            p1211: self.p1211.clone(),
            p1222: self.p1222.clone(),
        }
    }

    /// Bijections between the apexes of two pyramids sharing both wings
    /// that commute with both apex projections.
    pub fn apex_isomorphisms(&self, other: &T2Cell) -> usize {
        if self.p0100 != other.p0100
            || self.p0111 != other.p0111
            || self.p1211 != other.p1211
            || self.p1222 != other.p1222
            || self.apex_size() != other.apex_size()
        {
            return 0;
        }
        permutations(self.apex_size())
            .into_iter()
            .filter(|perm| {
                (0..self.apex_size()).all(|x| {
                    other.p0201.apply(perm[x]) == self.p0201.apply(x)
                        && other.p0212.apply(perm[x]) == self.p0212.apply(x)
                })
            })
            .count()
    }
}

/// The two degeneracies (s₀, s₁) of a one-step cell.
pub fn degeneracies(c: &T1Cell) -> (T2Cell, T2Cell) {
    (T2Cell::s0(c), T2Cell::s1(c))
}

/// Fills the unique pyramid over two cells glued along the middle set:
/// the apex is the explicit fiber product of the left cell's right leg
/// with the right cell's down leg, ordered lexicographically.
pub fn segal_completion(left: &T1Cell, right: &T1Cell) -> Result<T2Cell, SetModelError> {
    if left.end_size() != right.base_size() {
        return Err(SetModelError::GluingMismatch {
            left: left.end_size(),
            right: right.base_size(),
        });
    }
    let mut pairs = Vec::new();
    for a in 0..left.source_size() {
        for b in 0..right.source_size() {
            if left.right().apply(a) == right.down().apply(b) {
                pairs.push((a, b));
            }
        }
    }
    let p0201 = FinSurjection::new(
        left.source_size(),
        pairs.iter().map(|&(a, _)| a).collect(),
    )
    .expect("first projection of the fiber product is onto");
    let p0212 = FinSurjection::new(
        right.source_size(),
        pairs.iter().map(|&(_, b)| b).collect(),
    )
    .expect("second projection of the fiber product is onto");
    Ok(T2Cell::new(
        p0201,
        left.down().clone(),
        p0212,
        left.right().clone(),
        right.down().clone(),
        right.right().clone(),
    )
    .expect("the fiber product square is a strict pullback"))
}

/// For a connected pyramid, the list of (μ_r, k_r): the component profile
/// of the d₂ face over r and the size of the t₁₂ fiber over r, for each
/// r ∈ t₁₁.  The down-leg profile of d₁ is then Σ_r V^{k_r} μ_r.
pub fn objective_verschiebung(
    t: &T2Cell,
) -> Result<Vec<(PartitionVector, u64)>, SetModelError> {
    if !t.is_connected() {
        return Err(SetModelError::NotConnected);
    }
    let d2 = t.d2();
    Ok((0..t.p1211.target_size())
        .map(|r| {
            (
                d2.component_profile(r),
                t.p1211.fiber(r).len() as u64,
            )
        })
        .collect())
}

/// |iso(d₀τ, d₁λcell)_σ|: pairs of an automorphism of σ and a bijection
/// φ from τ's end set to λcell's base set whose gluing composes to a cell
/// isomorphic to σ, counted by brute force.  Zero when the sets cannot be
/// matched.
pub fn iso_fiber_count(tau: &T1Cell, lambda_cell: &T1Cell, sigma: &T1Cell) -> BigUint {
    assert!(lambda_cell.is_connected() && sigma.is_connected());
    if tau.end_size() != lambda_cell.base_size() {
        return BigUint::zero();
    }
    let sigma_class = sigma.t1_class();
    let mut gluings = BigUint::zero();
    for phi in permutations(tau.end_size()) {
        let relabeled = tau.relabel_end(&phi).expect("relabeling along a bijection");
        let glued = segal_completion(&relabeled, lambda_cell).expect("gluing sizes match");
        if glued.d1().t1_class() == sigma_class {
            gluings += 1u32;
        }
    }
    sigma.aut_count() * gluings
}

/// The comultiplication computed objectively: coefficients are counted
/// isomorphism fibers divided by automorphism counts, over representative
/// cells for every candidate class pair.  Must agree with the generator
/// formula on the class of σ.
pub fn objective_delta(sigma: &T1Cell) -> Result<PTensor, SetModelError> {
    if !sigma.is_connected() {
        return Err(SetModelError::NotConnected);
    }
    let sigma_vec = sigma.component_profile(0);
    let mut out = PTensor::zero();
    for lambda in enumerate_vectors(sigma_vec.weight(), EnumerationMode::UpTo) {
        if lambda.is_zero() {
            continue;
        }
        let lambda_cell = connected_cell(&lambda);
        let lambda_aut = lambda_cell.aut_count();
        for class in enumerate_multisets(lambda.length(), sigma_vec.weight()) {
            let tau = cell_from_class(&class);
            let fiber = iso_fiber_count(&tau, &lambda_cell, sigma);
            if fiber.is_zero() {
                continue;
            }
            let coeff = Rational::new(
                BigInt::from(fiber),
                BigInt::from(lambda_aut.clone() * tau.aut_count()),
            );
            out.accumulate(
                class,
                PMonomial::from_vectors([lambda.clone()]),
                coeff,
            );
        }
    }
    Ok(out)
}

/// All one-step cells with at most `max_source` elements in t₀₁, built
/// as a down surjection followed by a quotient of its base.
pub fn enumerate_t1_cells(max_source: usize) -> Vec<T1Cell> {
    let mut out = Vec::new();
    for n in 0..=max_source {
        for m in 0..=n {
            for down in super::enumerate_surjections(n, m) {
                for p in 0..=m {
                    for quotient in super::enumerate_surjections(m, p) {
                        let right = down.compose(&quotient).expect("sizes match");
                        out.push(
                            T1Cell::new(down.clone(), right)
                                .expect("right leg factors by construction"),
                        );
                    }
                }
            }
        }
    }
    out
}
