//! Finite-set realization of the surjection calculus: explicit
//! surjections with fiber profiles, one- and two-step cells with faces,
//! degeneracies and Segal gluing, brute-force isomorphism and
//! automorphism counting, the objective comultiplication oracle, and the
//! partition dictionary with transversals.

mod partitions;
mod simplicial;
mod surjection;

pub use partitions::{
    enumerate_partitions, homotopy_cardinality, is_transversal, is_transversal_by_conditions,
    is_transversal_by_diagram, PhiMap, SetPartition,
};
pub use simplicial::{
    cell_from_class, connected_cell, degeneracies, enumerate_t1_cells, is_pullback_square,
    iso_fiber_count, objective_delta, objective_verschiebung, segal_completion, T1Cell, T2Cell,
};
pub(crate) use simplicial::permutations;
pub use surjection::{enumerate_surjections, FinSurjection};

use thiserror::Error;

/// Errors from constructing or combining finite-set diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetModelError {
    #[error("assignment sends {element} to {value}, outside a target of size {target_size}")]
    TargetOutOfRange {
        element: usize,
        value: usize,
        target_size: usize,
    },
    #[error("target element {target} has an empty preimage")]
    NotSurjective { target: usize },
    #[error("expected a set of size {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("right map does not factor through the down map: {first} and {second} share a down image but not a right image")]
    RightDoesNotFactor { first: usize, second: usize },
    #[error("square does not commute at element {element}")]
    SquareDoesNotCommute { element: usize },
    #[error("comparison map to the fiber product is not a bijection")]
    NotAPullback,
    #[error("gluing mismatch: left cell ends on {left} elements, right cell is based on {right}")]
    GluingMismatch { left: usize, right: usize },
    #[error("cell is not connected")]
    NotConnected,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partitions live on different ground sets ({left} vs {right})")]
    GroundMismatch { left: usize, right: usize },
    #[error("automorphism counts must be positive")]
    NonPositiveAutCount,
}
