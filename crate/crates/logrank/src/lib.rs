//! Exact computations around matrices whose entries are Q-linear
//! combinations of abstract logarithm symbols: structural ranks,
//! determinantal representations of polynomials, zero-block decompositions,
//! multiplicative relation lattices of rationals, Siegel-lemma small
//! kernels, p-adic logarithms and exponentials, and truncated power series
//! — every result backed by an exact, machine-checkable certificate.
//!
//! Everything is computed in exact big-integer and rational arithmetic; the
//! one exception is `mult_rel::theta_exceeds_bound`, which compares an exact
//! integer against a transcendental constant in double precision. Randomized
//! search strategies take an explicit seed and are fully deterministic.
//!
//! The crate's `examples/` directory contains one runnable example per major
//! capability; the thin `logrank` binary exposes the same operations as
//! subcommands emitting JSON certificates (see the `cli` module).

pub mod cert;
pub mod cli;
pub mod det_rep;
pub mod jsonio;
pub mod linalg;
pub mod mult_rel;
pub mod padic;
pub mod poly;
pub mod rat;
pub mod series;
pub mod symbolic;
pub mod zero_block;

pub use linalg::{IMat, PMat, QMat};
pub use poly::{MinPolyData, Monomial, MultiPoly};
pub use rat::{Int, Rat};
