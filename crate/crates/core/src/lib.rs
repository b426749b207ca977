//! Exact q-series machinery for Garvan's k-ranks.
//!
//! The crate computes the mock Eisenstein series `f_{k,j}` attached to
//! k-rank moments, every auxiliary q-series they are built from, and
//! checks the formal identities tying them together as exact residuals
//! of truncated power series.
//!
//! - [`series`]: truncated power series in `q` over exact rationals
//! - [`partitions`]: partition enumeration, Durfee squares, crank and k-rank
//! - [`qfunctions`]: Bernoulli data, Eisenstein and theta series,
//!   divisor-like sums, rank and crank moments
//! - [`mock`]: the `f_{k,j}` families, partition traces and their checks
//! - [`jacobi`]: Laurent jets in `w = 2πiz`, the heat-type operators, the
//!   level-5 rank–crank PDE and the theta ODE
//! - [`verify`]: named verification suites shared by the CLI

pub mod error;
pub mod jacobi;
pub mod mock;
pub mod partitions;
pub mod qfunctions;
pub mod rational;
pub mod residual;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use rational::ExactRational;
pub use series::QSeries;
