//! Exact arithmetic for plethystic calculus on power series in infinitely
//! many variables, the bialgebra of their Taylor coefficients, and the
//! finite-set model that explains its structure constants.
//!
//! The crate is organised bottom-up:
//!
//! * [`lambda`]: multiplicity vectors λ (finitely many nonzero entries
//!   λ_k, k ≥ 1), their weight grading, the normalisation constant
//!   `autiv`, the Verschiebung reindexing, and finite multisets of vectors.
//! * [`series`]: weight-truncated series F = Σ f_λ 𝐱^λ / autiv(λ) with
//!   exact rational coefficients, products, Verschiebung substitution and
//!   plethystic substitution G ⊛ F.
//! * [`bialgebra`]: the polynomial bialgebra on generators A_λ dual to the
//!   coefficient functionals, with the comultiplication computed two
//!   independent ways, counit, Bell polynomials and the grouplike sum.
//! * [`setmodel`]: surjections of finite sets, 1- and 2-cells of the
//!   associated simplicial groupoid, brute-force automorphism and
//!   isomorphism counts, and the partition-pair dictionary.
//! * [`univariate`]: dense one-variable composition used as an independent
//!   cross-check of the multivariate routines.
//! * [`io`]: JSON file formats and text encodings shared with the CLI.
//! * [`verify`]: the self-check suites exposed by `pleth verify`.

pub mod bialgebra;
pub mod io;
pub mod lambda;
pub mod series;
pub mod setmodel;
pub mod univariate;
pub mod verify;
