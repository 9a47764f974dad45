//! Configuration, table ingestion and the three commands behind the
//! `corrinv` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod config;
pub mod error;
pub mod invert;
pub mod oracle;
pub mod output;
pub mod tables;

pub use error::{CliError, Result};

/// Exit status for a run with warnings but no errors.
pub const EXIT_WARNINGS: i32 = 2;
/// Exit status for errors of any kind.
pub const EXIT_ERROR: i32 = 1;
/// Exit status when an oracle check fails.
pub const EXIT_ORACLE: i32 = 3;
