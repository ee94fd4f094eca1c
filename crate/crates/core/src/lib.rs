//! Exact calculus of holomorphic Poisson structures and holomorphic Lie
//! algebroids on a single polynomial coordinate chart.

#![allow(clippy::needless_range_loop)]

pub mod algebroid;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod exactalg;
pub mod factors;
pub mod multivec;
pub mod poisson;

pub use error::{HpError, HpResult};
