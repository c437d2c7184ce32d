//! Zero-block decompositions: find invertible P, Q over Q such that P M Q
//! has an m' x n' block of exact zeros with m'/m + n'/n > 1 — the
//! conclusion shape of the low-rank decomposition theorem.

use logrank::linalg::QMat;
use logrank::rat::rat_int;
use logrank::symbolic::{SymbolSpace, SymbolicMatrix};
use logrank::zero_block::{find_zero_block, verify_zero_block, Strategy};

fn main() {
    // build a 3x3 matrix over two symbols with a hidden 2x2 zero block:
    // start from the block form and conjugate by rational matrices
    let space = SymbolSpace::fresh(2);
    let block_components: Vec<QMat> = (0..2)
        .map(|k| {
            QMat::from_fn(3, 3, |i, j| {
                if i < 2 && j >= 1 {
                    rat_int(0)
                } else {
                    rat_int(((i + 2 * j + k) % 3) as i64 + 1)
                }
            })
        })
        .collect();
    let block_form = SymbolicMatrix::from_components(space, &block_components);

    let p0 = QMat::from_rows(vec![
        vec![rat_int(1), rat_int(1), rat_int(0)],
        vec![rat_int(0), rat_int(1), rat_int(2)],
        vec![rat_int(1), rat_int(0), rat_int(1)],
    ]);
    let q0 = QMat::from_rows(vec![
        vec![rat_int(1), rat_int(0), rat_int(1)],
        vec![rat_int(2), rat_int(1), rat_int(0)],
        vec![rat_int(0), rat_int(0), rat_int(1)],
    ]);
    let hidden = block_form
        .left_mul(&p0.inverse().unwrap())
        .right_mul(&q0.inverse().unwrap());
    println!("hidden block planted; structural rank = {}", hidden.structural_rank());

    let cert = find_zero_block(&hidden, &Strategy::Exhaustive { height_bound: 2 })
        .expect("the planted block is within the sweep");
    println!(
        "found certificate with block {} x {} (threshold {}/3 + {}/3 > 1)",
        cert.m_prime, cert.n_prime, cert.m_prime, cert.n_prime
    );
    let report = verify_zero_block(&hidden, &cert).unwrap();
    println!(
        "exact verification: zero block = {}, threshold met = {}",
        report.ok, report.threshold_met
    );

    // the alternating heuristic takes a seed; useful beyond tiny heights
    let alt = find_zero_block(
        &hidden,
        &Strategy::Alternating { seed: 7, iters: 25 },
    );
    println!(
        "alternating heuristic (seed 7) found one: {} (the exhaustive sweep is the backstop)",
        alt.is_some()
    );

    // a generic full-rank matrix admits no certificate at this height
    let space9 = SymbolSpace::fresh(9);
    let generic = SymbolicMatrix::from_components(
        space9,
        &(0..9)
            .map(|k| QMat::from_fn(3, 3, |i, j| rat_int(((3 * i + j) == k) as i64)))
            .collect::<Vec<_>>(),
    );
    let none = find_zero_block(&generic, &Strategy::Exhaustive { height_bound: 1 });
    println!("generic 3x3 over 9 symbols: certificate found = {}", none.is_some());
}
