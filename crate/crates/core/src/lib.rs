//! Inversion of the correlation functions of a classical gas into its
//! chemical potential and effective pair potential.
//!
//! Correlation families are combined with the subset-convolution product of
//! [`ruelle`]; [`omega`] extracts the one- and two-anchor cluster functions
//! from a [`models::CorrelationModel`], and [`inversion`] integrates them
//! order by order over a finite box. [`bounds`] evaluates the sufficient
//! convergence radius and [`oracles`] provides slow, independent graph and
//! partition sums for testing.
//!
//! The crate is `no_std` with `alloc`; the `std` feature only links the
//! standard library.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod bounds;
pub mod combinatorics;
pub mod error;
pub mod inversion;
pub mod models;
pub mod omega;
pub mod oracles;
pub mod point;
pub mod quadrature;
pub mod ruelle;

pub use error::{Error, Result};
pub use point::PointTuple;
