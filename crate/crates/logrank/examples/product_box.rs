//! The product set X(N) = { prod x_i^(a_i) : 0 <= a_i <= N } and the
//! search for a low-degree polynomial vanishing on it. Degenerate product
//! sets (collisions, i.e. multiplicative relations) are what make such
//! polynomials exist below the counting threshold.

use logrank::linalg::QMat;
use logrank::mult_rel::{enumerate_xn, vanishing_poly};
use logrank::rat::rat_int;

fn main() {
    // one generator row (2, 3): X(N) grows linearly, size N + 1
    let g = QMat::from_rows(vec![vec![rat_int(2), rat_int(3)]]);
    let xs = enumerate_xn(&g, 3, 1 << 20).unwrap();
    println!("X(3) for the row (2, 3): {} points", xs.len());
    for t in &xs {
        println!("  ({}, {})", t[0], t[1]);
    }

    // two multiplicatively dependent rows collide inside the box
    let g = QMat::from_rows(vec![
        vec![rat_int(2), rat_int(3)],
        vec![rat_int(4), rat_int(9)],
    ]);
    let xs = enumerate_xn(&g, 2, 1 << 20).unwrap();
    println!(
        "\ntwo dependent rows, N = 2: {} points instead of (2+1)^2 = 9",
        xs.len()
    );

    // a vanishing polynomial on the one-row product set: 4 points in the
    // plane admit a conic through them (6 monomials of degree < 3)
    let pts = enumerate_xn(
        &QMat::from_rows(vec![vec![rat_int(2), rat_int(3)]]),
        3,
        1 << 20,
    )
    .unwrap();
    match vanishing_poly(&pts, 3) {
        Some(p) => {
            println!("\ndegree-<3 polynomial vanishing on X(3): {p}");
            for pt in &pts {
                assert!(p.eval(pt).unwrap() == rat_int(0));
            }
            println!("vanishing re-verified at all {} points", pts.len());
        }
        None => println!("\nno vanishing polynomial below degree 3"),
    }
}
