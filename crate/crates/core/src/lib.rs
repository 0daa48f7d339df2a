//! Energy spectrum of a quantum ring with a dipolar impurity and an
//! Aharonov–Bohm flux, in Hartree atomic units.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod cli;
pub mod config;
pub mod error;
pub mod hyper;
pub mod mathieu;
pub mod oracle;
pub mod output;
pub mod params;
pub mod quad;
pub mod spectrum;
pub mod tridiag;
pub mod verify;
pub mod wavefun;

pub use error::{Error, Result};
