//! Every polynomial is the determinant of a matrix with affine entries.
//!
//! The construction factors the current matrix as A * (x (x) I) and embeds
//! the product into [[I, B], [-A, 0]] with equal determinant, once per
//! degree step. The dimension follows (nvars + 2)^(deg - 1) exactly.

use logrank::det_rep::{
    compress, determinantal_rep, expected_dimension, verify_rep, VerifyMode,
};
use logrank::poly::MultiPoly;
use logrank::rat::rat_int;

fn main() {
    let x = |i| MultiPoly::var(2, i);

    // p = x0 * x1 - 1
    let p = &(&x(0) * &x(1)) - &MultiPoly::one(2);
    let n = determinantal_rep(&p);
    println!("p = {p}");
    println!(
        "representation dimension: {} (expected {})",
        n.rows(),
        expected_dimension(2, 2)
    );
    println!(
        "symbolic verification: {}",
        verify_rep(&n, &p, VerifyMode::Symbolic)
    );
    println!("det(N) = {}", n.det());

    // a denser cubic
    let q = MultiPoly::from_terms(
        2,
        [
            (vec![3, 0], rat_int(1)),
            (vec![1, 1], rat_int(-2)),
            (vec![0, 2], rat_int(1)),
            (vec![0, 0], rat_int(5)),
        ],
    );
    let nq = determinantal_rep(&q);
    println!("\nq = {q}");
    println!(
        "dimension {} = (2+2)^2, verified: {}",
        nq.rows(),
        verify_rep(&nq, &q, VerifyMode::Symbolic)
    );

    // randomized spot check is cheaper than the symbolic expansion
    println!(
        "randomized verification (8 trials): {}",
        verify_rep(&nq, &q, VerifyMode::Randomized { trials: 8, seed: 1 })
    );

    // sparse inputs leave many unit rows; the compression pass removes them
    // while preserving the determinant exactly
    let c = compress(&nq);
    println!(
        "compressed from {} to {} rows; det still q: {}",
        nq.rows(),
        c.rows(),
        c.det() == q
    );
}
