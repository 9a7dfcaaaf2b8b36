//! Exact order calculus for finite groups.
//!
//! The crate works with concrete finite groups (permutations and unitriangular
//! residue matrices), computes the mutual order `o(a, b)` of element pairs and
//! relates it to the order of the product `ab`. For nilpotent groups it carries
//! a symbolic collector for the free nilpotent group on two generators, which
//! yields Hall's power polynomials and the class constants used to bound the
//! ratio `o(ab) / o(a, b)`.
//!
//! Everything here is `no_std` with `alloc`; file formats, the catalog and the
//! command line live in the `ordcalc` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arith;
pub mod class2;
pub mod element;
pub mod error;
pub mod group;
pub mod hall;
pub mod order;

pub use arith::Ratio;
pub use element::{GroupElement, Permutation, Unitriangular};
pub use error::{CheckError, GroupError, HallError};
pub use group::{Ambient, ElemId, ElementSet, FiniteGroup, GenerateOptions, GroupArith};
