//! Exact enumeration of ordinary, simple and fully simple maps.
//!
//! The crate computes generating series of maps (mostly quadrangulations) with
//! ordinary, simple or fully simple boundaries by topological recursion on an
//! explicit rational spectral curve, and checks them against independent
//! oracles: brute-force enumeration of permutational maps, closed formulas,
//! and symmetric-group character computations for monotone Hurwitz numbers.
//!
//! All arithmetic is exact (ℚ(√3) coefficients, truncated power series with
//! tracked precision); there is no floating point anywhere.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod bijection;
pub mod closed_forms;
pub mod curve;
pub mod exact;
pub mod hurwitz;
pub mod oracle;
pub mod tables;
pub mod toprec;
pub mod verify;
