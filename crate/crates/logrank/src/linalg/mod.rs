//! Exact linear algebra over Q, Z and Q[x_1..x_n].

pub mod integer;
pub mod poly;
pub mod rational;

pub use integer::{
    column_hnf, image_count, kernel_basis, row_hnf, siegel_solve, siegel_solve_pigeonhole,
    size_reduce, snf, IMat, LatticeError, Snf,
};
pub use poly::PMat;
pub use rational::QMat;
