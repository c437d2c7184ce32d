//! Structural rank of matrices over formal logarithm symbols.
//!
//! The 3x3 matrix [[x, z, 0], [0, y, -x], [y, 0, z]] has determinant zero
//! as a polynomial identity, so its rank is 2 no matter which Q-linearly
//! independent values are substituted for x, y, z — even though its rows
//! and columns are independent over Q.

use logrank::linalg::QMat;
use logrank::rat::rat_int;
use logrank::symbolic::singular_3x3_example;
use logrank::zero_block::rank_threshold;

fn main() {
    let m = singular_3x3_example();
    println!("matrix over symbols x, y, z:");
    println!("  [[x, z, 0], [0, y, -x], [y, 0, z]]");

    let mx = m.to_poly_matrix();
    println!("generic determinant: {}", mx.det());
    println!("structural rank:     {}", m.structural_rank());

    // the rank is invariant under any invertible change of the symbol basis
    let t = QMat::from_rows(vec![
        vec![rat_int(1), rat_int(2), rat_int(0)],
        vec![rat_int(0), rat_int(1), rat_int(5)],
        vec![rat_int(0), rat_int(0), rat_int(1)],
    ]);
    let changed = m.basis_change(&t).expect("t is invertible");
    println!(
        "rank after a symbol basis change: {}",
        changed.structural_rank()
    );

    // rows and columns are nevertheless Q-independent
    match m.row_col_dependence() {
        Some(cert) => println!("dependence found on {}: {:?}", cert.side, cert.coeffs),
        None => println!("no rational dependence among rows or columns"),
    }

    // the rank threshold m*n/(m+n) governing zero-block decompositions
    let rep = rank_threshold(&m);
    println!(
        "rank {} vs threshold {}: hypothesis met = {}",
        rep.structural_rank, rep.threshold, rep.hypothesis
    );
}
