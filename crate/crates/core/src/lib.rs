//! Certified computation of zero-temperature thermodynamic invariants for
//! one-dimensional subshifts of finite type.
//!
//! The crate provides:
//!
//! * exact representations of transitive SFTs, admissible words/cylinders,
//!   higher-block recodings and locally constant potentials ([`sft`],
//!   [`potential`]);
//! * ergodic optimization on the block graph: extreme orbit integrals,
//!   maximizing elementary orbits, the `O`/`U`/`V` classification with
//!   stability certificates, critical subgraphs, zero-temperature measures
//!   and residual entropy ([`ergodic`]);
//! * positive-temperature machinery: certified pressure via transfer
//!   matrices, one-sided derivative and entropy enclosures, sandwich bounds
//!   and the nonincreasing upper-bound sequence for residual entropy
//!   ([`thermo`]);
//! * invariant measures, their integrals and entropies, and certified
//!   Wasserstein distances on cylinder marginals ([`measures`]);
//! * executable counterexample families ([`experiments`]).
//!
//! All numeric results are either exact rationals or dyadic intervals
//! certified to contain the true value; see [`num`].
//!
//! The crate is `no_std` (with `alloc`); IO and file formats live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod ergodic;
pub mod experiments;
pub mod measures;
pub mod num;
pub mod perron;
pub mod potential;
pub mod sft;
pub mod thermo;

pub use error::{Error, Result};
pub use num::{Enclosure, Rat, Scalar};
