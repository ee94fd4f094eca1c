//! Exact coefficient arithmetic: Gaussian rationals, canonical polynomials and charts.

pub mod chart;
pub mod gq;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use chart::{Chart, ChartKind};
pub use gq::GQ;
pub use parse::{parse_gq, parse_poly};
pub use poly::{monomials_of_degree, poly_arith, ArithOp, Mono, PolyGQ};
