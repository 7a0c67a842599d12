//! Surjections between initial segments {0..n−1}, the objects everything
//! else is built from.

use std::collections::BTreeMap;

use crate::lambda::PartitionVector;

use super::SetModelError;

/// A surjection {0..n−1} ↠ {0..m−1}, stored as the list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSurjection {
    target_size: usize,
    assignment: Vec<usize>,
}

impl FinSurjection {
    /// Validates that every assignment lands in range and every target
    /// element is hit.
    pub fn new(target_size: usize, assignment: Vec<usize>) -> Result<Self, SetModelError> {
        let mut hit = vec![false; target_size];
        for (element, &value) in assignment.iter().enumerate() {
            if value >= target_size {
                return Err(SetModelError::TargetOutOfRange {
                    element,
                    value,
                    target_size,
                });
            }
            hit[value] = true;
        }
        if let Some(target) = hit.iter().position(|h| !h) {
            return Err(SetModelError::NotSurjective { target });
        }
        Ok(Self {
            target_size,
            assignment,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target_size: n,
            assignment: (0..n).collect(),
        }
    }

    /// The unique map onto a point; fails on the empty source.
    pub fn to_point(n: usize) -> Result<Self, SetModelError> {
        Self::new(1, vec![0; n])
    }

    pub fn source_size(&self) -> usize {
        self.assignment.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// The composite x ↦ then(self(x)).
    pub fn compose(&self, then: &FinSurjection) -> Result<Self, SetModelError> {
        if self.target_size != then.source_size() {
            return Err(SetModelError::SizeMismatch {
                expected: self.target_size,
                found: then.source_size(),
            });
        }
        Ok(Self {
            target_size: then.target_size,
            assignment: self.assignment.iter().map(|&v| then.apply(v)).collect(),
        })
    }

    pub fn fiber(&self, t: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == t)
            .map(|(x, _)| x)
            .collect()
    }

    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.target_size];
        for (x, &v) in self.assignment.iter().enumerate() {
            out[v].push(x);
        }
        out
    }

    /// λ with λ_k = number of fibers of size k, so that wt(λ) is the
    /// source size and |λ| the target size.
    pub fn fiber_profile(&self) -> PartitionVector {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for fiber in self.fibers() {
            *counts.entry(fiber.len() as u64).or_insert(0) += 1;
        }
        PartitionVector::from_pairs(counts).expect("fibers of a surjection are nonempty")
    }

    pub fn is_bijection(&self) -> bool {
        self.source_size() == self.target_size
    }

    /// Side-by-side sum: both source and target are shifted copies.
    pub fn disjoint_union(&self, other: &FinSurjection) -> FinSurjection {
        let mut assignment = self.assignment.clone();
        assignment.extend(other.assignment.iter().map(|&v| v + self.target_size));
        FinSurjection {
            target_size: self.target_size + other.target_size,
            assignment,
        }
    }
}

/// All surjections from an n-set onto an m-set, in lexicographic order of
/// their assignment lists.
pub fn enumerate_surjections(source: usize, target: usize) -> Vec<FinSurjection> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; source];
    if target == 0 {
        if source == 0 {
            out.push(FinSurjection::identity(0));
        }
        return out;
    }
    loop {
        if let Ok(s) = FinSurjection::new(target, assignment.clone()) {
            out.push(s);
        }
        let mut pos = source;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if assignment[pos] + 1 < target {
                assignment[pos] += 1;
                for slot in assignment.iter_mut().skip(pos + 1) {
                    *slot = 0;
                }
                break;
            }
        }
    }
}
