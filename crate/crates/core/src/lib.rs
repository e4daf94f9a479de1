//! Combinatorial machinery for bounding simplicial volume by counts of
//! maximally broken Morse trajectories.
//!
//! The crate is organised bottom-up:
//!
//! * [`complex`] — Δ-complexes, formal simplices and chains with exact
//!   rational coefficients, the boundary operator, barycentric subdivision
//!   (of complexes and of chains) and the subdivision chain homotopy.
//! * [`strat`] — generalized stratifications, their limit digraphs and
//!   partial orders, abstract posets with chain counting.
//! * [`stratified`] — the Σ-construction of a chain, the cellular / order /
//!   internality / loop conditions, essential simplices, the essential
//!   stratified norm, relative-cycle extension and the localization pipeline.
//! * [`corner`] — the stratified corner `[0,1]^n` and the essential-simplex /
//!   strata-chain bijection.
//! * [`morse`] — Morse-Smale flow graphs, broken-trajectory counts,
//!   descending-disk posets and the volume bound check.

pub mod complex;
pub mod corner;
mod error;
pub mod morse;
pub mod strat;
pub mod stratified;

pub use error::{Error, Result};

/// Exact rational coefficient used by every chain.
pub type Rational = num::BigRational;
