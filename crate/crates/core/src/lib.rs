//! Exact-arithmetic toolkit for computing the rational cohomology of
//! complements of toric arrangements.
//!
//! The pipeline: integer lattice algorithms ([`lattice`]) feed the fan
//! geometry ([`fan`]); fans feed the Stanley-Reisner style graded algebras
//! ([`algebra`], [`toric`]); arrangements of subtori ([`arrangement`]) are
//! combined with a compatible fan into a finite rational model whose
//! cohomology gives the Betti numbers of the complement ([`morgan`]).
//! Independent cross-checks live in [`oracle`].
//!
//! Everything is computed over arbitrary-precision rationals; no floats.

#![no_std]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod algebra;
pub mod arrangement;
pub mod fan;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod morgan;
pub mod oracle;
pub mod toric;

pub use lattice::{Int, Rat};
