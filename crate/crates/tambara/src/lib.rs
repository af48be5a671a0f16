//! Exact computations in finite-group equivariant algebra.
//!
//! Everything here is desk-scale and exhaustively checkable: finite groups
//! given by multiplication tables, finite G-sets, the bispan category whose
//! morphisms compose through pullbacks and dependent products, Tambara
//! functors presented levelwise with restriction/transfer/norm/conjugation,
//! Nakaoka ideals, and the recognition procedure for functors that split as
//! coinductions of a field.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the command
//! line front end live in the companion `tambara-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bispans;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod free_poly;
pub mod functor;
pub mod groups;
pub mod gsets;
pub mod ideals;
pub mod rings;
pub mod rng;

pub use error::{Error, Result};
