//! Set partitions and their dictionary with the surjection calculus:
//! join and meet through the pushout diagram, commutation and
//! independence each computed two ways, and transversals both as the
//! four lattice conditions and as connected two-step cells.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::series::Rational;

use super::{FinSurjection, SetModelError, T2Cell};

/// A partition of {0..n−1} into disjoint nonempty blocks.  Blocks are
/// kept sorted internally and ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(ground_size: usize, blocks: Vec<Vec<usize>>) -> Result<Self, SetModelError> {
        if ground_size == 0 {
            return Err(SetModelError::InvalidPartition(
                "ground set must be nonempty".into(),
            ));
        }
        let mut seen = vec![false; ground_size];
        let mut canonical: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(SetModelError::InvalidPartition("empty block".into()));
            }
            let mut sorted = block;
            sorted.sort_unstable();
            for &e in &sorted {
                if e >= ground_size {
                    return Err(SetModelError::InvalidPartition(format!(
                        "element {e} outside the ground set of size {ground_size}"
                    )));
                }
                if seen[e] {
                    return Err(SetModelError::InvalidPartition(format!(
                        "element {e} appears twice"
                    )));
                }
                seen[e] = true;
            }
            canonical.push(sorted);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(SetModelError::InvalidPartition(format!(
                "element {missing} is not covered"
            )));
        }
        canonical.sort_by_key(|b| b[0]);
        Ok(Self {
            ground_size,
            blocks: canonical,
        })
    }

    /// The discrete partition 0̂ into singletons.
    pub fn discrete(n: usize) -> Result<Self, SetModelError> {
        Self::new(n, (0..n).map(|e| vec![e]).collect())
    }

    /// The indiscrete partition 1̂ with a single block.
    pub fn indiscrete(n: usize) -> Result<Self, SetModelError> {
        Self::new(n, vec![(0..n).collect()])
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.ground_size
    }

    pub fn is_indiscrete(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Block index of each element.
    pub fn membership(&self) -> Vec<usize> {
        let mut out = vec![0; self.ground_size];
        for (i, block) in self.blocks.iter().enumerate() {
            for &e in block {
                out[e] = i;
            }
        }
        out
    }

    /// The classifying surjection onto the block set.
    pub fn to_surjection(&self) -> FinSurjection {
        FinSurjection::new(self.blocks.len(), self.membership())
            .expect("blocks are nonempty and cover the ground set")
    }

    /// The partition into the fibers of a surjection.
    pub fn from_surjection(s: &FinSurjection) -> Result<Self, SetModelError> {
        Self::new(s.source_size(), s.fibers())
    }

    fn check_ground(&self, other: &SetPartition) -> Result<(), SetModelError> {
        if self.ground_size != other.ground_size {
            return Err(SetModelError::GroundMismatch {
                left: self.ground_size,
                right: other.ground_size,
            });
        }
        Ok(())
    }

    /// Whether every block of self lies inside a block of `coarser`.
    pub fn is_refinement(&self, coarser: &SetPartition) -> Result<bool, SetModelError> {
        self.check_ground(coarser)?;
        let membership = coarser.membership();
        Ok(self
            .blocks
            .iter()
            .all(|block| block.iter().all(|&e| membership[e] == membership[block[0]])))
    }

    /// The join π∨τ: connected components of the block-overlap graph,
    /// which is the pushout target I of the two classifying surjections.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition, SetModelError> {
        Ok(self.pushout(other)?.0)
    }

    /// The join together with the two block maps S → I and X → I of the
    /// pushout diagram.
    pub fn pushout(
        &self,
        other: &SetPartition,
    ) -> Result<(SetPartition, Vec<usize>, Vec<usize>), SetModelError> {
        self.check_ground(other)?;
        let mut parent: Vec<usize> = (0..self.ground_size).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for block in self.blocks.iter().chain(other.blocks.iter()) {
            for &e in &block[1..] {
                let a = find(&mut parent, block[0]);
                let b = find(&mut parent, e);
                parent[a] = b;
            }
        }
        let mut block_lists: Vec<Vec<usize>> = Vec::new();
        let mut root_index = vec![usize::MAX; self.ground_size];
        for e in 0..self.ground_size {
            let root = find(&mut parent, e);
            if root_index[root] == usize::MAX {
                root_index[root] = block_lists.len();
                block_lists.push(Vec::new());
            }
            block_lists[root_index[root]].push(e);
        }
        let join = SetPartition::new(self.ground_size, block_lists)?;
        let join_membership = join.membership();
        let self_map = self.blocks.iter().map(|b| join_membership[b[0]]).collect();
        let other_map = other.blocks.iter().map(|b| join_membership[b[0]]).collect();
        Ok((join, self_map, other_map))
    }

    /// The meet π∧τ: nonempty pairwise block intersections.
    pub fn meet(&self, other: &SetPartition) -> Result<SetPartition, SetModelError> {
        self.check_ground(other)?;
        let mine = self.membership();
        let theirs = other.membership();
        let mut groups: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
            std::collections::BTreeMap::new();
        for e in 0..self.ground_size {
            groups.entry((mine[e], theirs[e])).or_default().push(e);
        }
        SetPartition::new(self.ground_size, groups.into_values().collect())
    }

    /// The comparison map e ↦ (π-block, τ-block) with its codomain, the
    /// fiber product of the two classifying surjections over the pushout.
    pub fn phi_map(&self, other: &SetPartition) -> Result<PhiMap, SetModelError> {
        let (_, self_map, other_map) = self.pushout(other)?;
        let mine = self.membership();
        let theirs = other.membership();
        let image = (0..self.ground_size).map(|e| (mine[e], theirs[e])).collect();
        let mut fiber_product = Vec::new();
        for (i, &ii) in self_map.iter().enumerate() {
            for (j, &jj) in other_map.iter().enumerate() {
                if ii == jj {
                    fiber_product.push((i, j));
                }
            }
        }
        Ok(PhiMap {
            image,
            fiber_product,
        })
    }

    /// Blocks of the partition whose classes are the values of φ, the
    /// image factorization of `phi_map`.
    pub fn phi_image_partition(&self, other: &SetPartition) -> Result<SetPartition, SetModelError> {
        self.meet(other)
    }

    /// Commutation as block exchange: composing the two block relations
    /// in either order gives the same relation.
    pub fn commute_by_blocks(&self, other: &SetPartition) -> Result<bool, SetModelError> {
        self.check_ground(other)?;
        Ok(compose_relations(self, other) == compose_relations(other, self))
    }

    /// Commutation as surjectivity of φ onto the fiber product.
    pub fn commute_by_phi(&self, other: &SetPartition) -> Result<bool, SetModelError> {
        let phi = self.phi_map(other)?;
        Ok(phi.is_surjective())
    }

    /// Independence: every block of π meets every block of τ.
    pub fn independent_by_blocks(&self, other: &SetPartition) -> Result<bool, SetModelError> {
        self.check_ground(other)?;
        let mine = self.membership();
        let theirs = other.membership();
        let mut hit = vec![vec![false; other.block_count()]; self.block_count()];
        for e in 0..self.ground_size {
            hit[mine[e]][theirs[e]] = true;
        }
        Ok(hit.iter().all(|row| row.iter().all(|&h| h)))
    }

    /// Independence: φ surjective and the pushout target a point.
    pub fn independent_by_phi(&self, other: &SetPartition) -> Result<bool, SetModelError> {
        let (join, _, _) = self.pushout(other)?;
        let phi = self.phi_map(other)?;
        Ok(phi.is_surjective() && join.block_count() <= 1)
    }

    /// All partitions coarser than self, built by partitioning the set of
    /// blocks.
    pub fn coarsenings(&self) -> Vec<SetPartition> {
        enumerate_partitions(self.block_count())
            .into_iter()
            .map(|grouping| {
                let blocks = grouping
                    .blocks()
                    .iter()
                    .map(|group| {
                        group
                            .iter()
                            .flat_map(|&i| self.blocks[i].iter().copied())
                            .collect()
                    })
                    .collect();
                SetPartition::new(self.ground_size, blocks)
                    .expect("unions of blocks still partition the ground set")
            })
            .collect()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, element) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{element}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

fn compose_relations(first: &SetPartition, second: &SetPartition) -> Vec<(usize, usize)> {
    let n = first.ground_size();
    let first_mem = first.membership();
    let second_mem = second.membership();
    let mut pairs = Vec::new();
    for x in 0..n {
        for z in 0..n {
            let related = (0..n)
                .any(|y| first_mem[x] == first_mem[y] && second_mem[y] == second_mem[z]);
            if related {
                pairs.push((x, z));
            }
        }
    }
    pairs
}

/// The comparison map of a partition pair and its codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiMap {
    /// (π-block, τ-block) of each ground element.
    pub image: Vec<(usize, usize)>,
    /// The fiber product of the block maps over the pushout, sorted.
    pub fiber_product: Vec<(usize, usize)>,
}

impl PhiMap {
    pub fn is_injective(&self) -> bool {
        let mut sorted = self.image.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.fiber_product
            .iter()
            .all(|pair| self.image.contains(pair))
    }
}

/// The four lattice conditions: π ≤ σ, π∧τ = 0̂, π and τ commute, and
/// π∨τ = σ∨τ.
pub fn is_transversal_by_conditions(
    sigma: &SetPartition,
    pi: &SetPartition,
    tau: &SetPartition,
) -> Result<bool, SetModelError> {
    Ok(pi.is_refinement(sigma)?
        && pi.meet(tau)?.is_discrete()
        && pi.commute_by_blocks(tau)?
        && pi.join(tau)? == sigma.join(tau)?)
}

/// The diagram characterization: the partition data assembles into a
/// valid connected two-step cell, with the ground set as apex, the π- and
/// τ-blocks as wings, the σ-blocks as base, and the pushout as middle.
pub fn is_transversal_by_diagram(
    sigma: &SetPartition,
    pi: &SetPartition,
    tau: &SetPartition,
) -> Result<bool, SetModelError> {
    sigma.check_ground(pi)?;
    sigma.check_ground(tau)?;
    let sigma_membership = sigma.membership();
    let mut to_base = Vec::with_capacity(pi.block_count());
    for block in pi.blocks() {
        let image = sigma_membership[block[0]];
        if block.iter().any(|&e| sigma_membership[e] != image) {
            return Ok(false);
        }
        to_base.push(image);
    }
    let p0100 = match FinSurjection::new(sigma.block_count(), to_base) {
        Ok(map) => map,
        Err(_) => return Ok(false),
    };
    let (join, pi_map, tau_map) = pi.pushout(tau)?;
    let p0111 = FinSurjection::new(join.block_count(), pi_map)
        .expect("every join block contains a π-block");
    let p1211 = FinSurjection::new(join.block_count(), tau_map)
        .expect("every join block contains a τ-block");
    let p1222 = FinSurjection::to_point(tau.block_count())
        .expect("the ground set is nonempty");
    match T2Cell::new(
        pi.to_surjection(),
        p0100,
        tau.to_surjection(),
        p0111,
        p1211,
        p1222,
    ) {
        Ok(_) => Ok(true),
        Err(SetModelError::NotAPullback) => Ok(false),
        Err(SetModelError::RightDoesNotFactor { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Transversality; the lattice conditions are the canonical route.
pub fn is_transversal(
    sigma: &SetPartition,
    pi: &SetPartition,
    tau: &SetPartition,
) -> Result<bool, SetModelError> {
    is_transversal_by_conditions(sigma, pi, tau)
}

/// All partitions of {0..n−1}, by restricted-growth enumeration.
pub fn enumerate_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut labels = vec![0usize; n];
    grow(n, 1, &mut labels, &mut out);
    out
}

fn grow(n: usize, position: usize, labels: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
    if position == n {
        let block_count = labels.iter().max().copied().unwrap_or(0) + 1;
        let mut blocks = vec![Vec::new(); block_count];
        for (e, &label) in labels.iter().enumerate() {
            blocks[label].push(e);
        }
        out.push(
            SetPartition::new(n, blocks).expect("restricted-growth labels form a partition"),
        );
        return;
    }
    let ceiling = labels[..position].iter().max().copied().unwrap_or(0) + 1;
    for label in 0..=ceiling {
        labels[position] = label;
        grow(n, position + 1, labels, out);
    }
    labels[position] = 0;
}

/// Σ 1/aᵢ over a list of automorphism-group orders.
pub fn homotopy_cardinality(aut_counts: &[BigUint]) -> Result<Rational, SetModelError> {
    let mut total = Rational::zero();
    for a in aut_counts {
        if a.is_zero() {
            return Err(SetModelError::NonPositiveAutCount);
        }
        total += Rational::new(BigInt::from(1), BigInt::from(a.clone()));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: &[&[usize]]) -> SetPartition {
        SetPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn construction_is_validated() {
        assert!(SetPartition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(SetPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(SetPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(SetPartition::new(3, vec![vec![0, 1], vec![2], vec![]]).is_err());
        assert!(SetPartition::new(2, vec![vec![0, 1, 2]]).is_err());
        assert!(SetPartition::new(0, vec![]).is_err());
    }

    #[test]
    fn blocks_are_canonicalized() {
        let p = SetPartition::new(4, vec![vec![3, 2], vec![1, 0]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(p.membership(), vec![0, 0, 1, 1]);
    }

    #[test]
    fn surjection_round_trip() {
        for p in enumerate_partitions(4) {
            assert_eq!(SetPartition::from_surjection(&p.to_surjection()).unwrap(), p);
        }
    }

    #[test]
    fn join_meet_phi_frozen_example() {
        let pi = part(3, &[&[0, 1], &[2]]);
        let tau = part(3, &[&[0, 2], &[1]]);
        assert!(pi.join(&tau).unwrap().is_indiscrete());
        assert!(pi.meet(&tau).unwrap().is_discrete());
        let phi = pi.phi_map(&tau).unwrap();
        assert!(phi.is_injective());
        assert!(!phi.is_surjective());
        assert_eq!(phi.fiber_product.len(), 4);
    }

    #[test]
    fn self_operations_are_trivial() {
        for p in enumerate_partitions(4) {
            assert_eq!(p.join(&p).unwrap(), p);
            assert_eq!(p.meet(&p).unwrap(), p);
            let phi = p.phi_map(&p).unwrap();
            let mut image = phi.image.clone();
            image.sort_unstable();
            image.dedup();
            assert_eq!(image.len(), p.block_count());
        }
    }

    #[test]
    fn meet_with_discrete_is_discrete() {
        let zero = SetPartition::discrete(4).unwrap();
        for p in enumerate_partitions(4) {
            assert!(zero.meet(&p).unwrap().is_discrete());
        }
    }

    #[test]
    fn meet_is_the_image_factorization_of_phi() {
        for pi in enumerate_partitions(4) {
            for tau in enumerate_partitions(4) {
                let phi = pi.phi_map(&tau).unwrap();
                let meet = pi.meet(&tau).unwrap();
                assert_eq!(meet.block_count(), {
                    let mut values = phi.image.clone();
                    values.sort_unstable();
                    values.dedup();
                    values.len()
                });
                for block in meet.blocks() {
                    assert!(block.iter().all(|&e| phi.image[e] == phi.image[block[0]]));
                }
            }
        }
    }

    #[test]
    fn commute_frozen_example() {
        let pi = part(3, &[&[0, 1], &[2]]);
        let tau = part(3, &[&[0, 2], &[1]]);
        assert!(!pi.commute_by_blocks(&tau).unwrap());
        assert!(!pi.commute_by_phi(&tau).unwrap());
    }

    #[test]
    fn independent_frozen_examples() {
        let pi = part(4, &[&[0, 1], &[2, 3]]);
        let tau = part(4, &[&[0, 2], &[1, 3]]);
        assert!(pi.independent_by_blocks(&tau).unwrap());
        assert!(pi.independent_by_phi(&tau).unwrap());
        assert!(pi.commute_by_blocks(&tau).unwrap());

        let point = SetPartition::discrete(1).unwrap();
        assert!(point.independent_by_blocks(&point).unwrap());
        assert!(point.independent_by_phi(&point).unwrap());
    }

    #[test]
    fn predicates_agree_on_small_grounds() {
        for n in 1..=3usize {
            for pi in enumerate_partitions(n) {
                for tau in enumerate_partitions(n) {
                    assert_eq!(
                        pi.commute_by_blocks(&tau).unwrap(),
                        pi.commute_by_phi(&tau).unwrap(),
                        "commute on {pi:?} {tau:?}"
                    );
                    assert_eq!(
                        pi.independent_by_blocks(&tau).unwrap(),
                        pi.independent_by_phi(&tau).unwrap(),
                        "independent on {pi:?} {tau:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn transversal_frozen_examples() {
        let sigma = SetPartition::indiscrete(4).unwrap();
        let pi = part(4, &[&[0, 1], &[2, 3]]);
        let tau = part(4, &[&[0, 2], &[1, 3]]);
        assert!(is_transversal(&sigma, &pi, &tau).unwrap());
        assert!(is_transversal_by_diagram(&sigma, &pi, &tau).unwrap());

        let zero = SetPartition::discrete(4).unwrap();
        assert!(is_transversal(&pi, &pi, &zero).unwrap());
        assert!(is_transversal_by_diagram(&pi, &pi, &zero).unwrap());

        let narrow = part(4, &[&[0, 1], &[2], &[3]]);
        assert!(!is_transversal(&narrow, &pi, &tau).unwrap());
        assert!(!is_transversal_by_diagram(&narrow, &pi, &tau).unwrap());
    }

    #[test]
    fn transversal_routes_agree_on_small_grounds() {
        for n in 1..=3usize {
            for pi in enumerate_partitions(n) {
                for tau in enumerate_partitions(n) {
                    for sigma in enumerate_partitions(n) {
                        assert_eq!(
                            is_transversal_by_conditions(&sigma, &pi, &tau).unwrap(),
                            is_transversal_by_diagram(&sigma, &pi, &tau).unwrap(),
                            "σ={sigma:?} π={pi:?} τ={tau:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn partition_counts_are_bell_numbers() {
        let bell = [1usize, 2, 5, 15, 52];
        for (i, &b) in bell.iter().enumerate() {
            assert_eq!(enumerate_partitions(i + 1).len(), b);
        }
        assert!(enumerate_partitions(0).is_empty());
    }

    #[test]
    fn coarsenings_count() {
        let zero = SetPartition::discrete(4).unwrap();
        assert_eq!(zero.coarsenings().len(), 15);
        let one = SetPartition::indiscrete(4).unwrap();
        assert_eq!(one.coarsenings().len(), 1);
        for sigma in zero.coarsenings() {
            assert!(zero.is_refinement(&sigma).unwrap());
        }
    }

    #[test]
    fn homotopy_cardinality_examples() {
        let counts: Vec<BigUint> = [1u32, 2, 6].iter().map(|&a| BigUint::from(a)).collect();
        assert_eq!(
            homotopy_cardinality(&counts).unwrap(),
            Rational::new(BigInt::from(5), BigInt::from(3))
        );
        assert_eq!(
            homotopy_cardinality(&[BigUint::from(2u32)]).unwrap(),
            Rational::new(BigInt::from(1), BigInt::from(2))
        );
        assert_eq!(homotopy_cardinality(&[]).unwrap(), Rational::zero());
        assert_eq!(
            homotopy_cardinality(&[BigUint::zero()]),
            Err(SetModelError::NonPositiveAutCount)
        );
    }
}
