//! Matrix-coefficient witnesses: for a square symbolic matrix M, nonzero
//! rational vectors w, v with w^t M v = 0 as a symbol combination. For the
//! singular 3x3 example such a witness exists; a generic matrix with as
//! many symbols as entries admits none.

use logrank::rat::Rat;
use logrank::symbolic::singular_3x3_example;
use logrank::zero_block::{mcc_witness, verify_mcc};

fn fmt(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(Rat::to_string).collect();
    format!("({})", parts.join(", "))
}

fn main() {
    let m = singular_3x3_example();
    println!("matrix: [[x, z, 0], [0, y, -x], [y, 0, z]]");
    println!("structural determinant vanishes; searching for a witness...");

    let wit = mcc_witness(&m, 2).unwrap().expect("witness exists");
    println!("w = {}", fmt(&wit.w));
    println!("v = {}", fmt(&wit.v));
    println!("w^t M_i v = 0 for every component: {}", verify_mcc(&m, &wit));

    // when the symbol count r is below n, a witness always exists: the
    // stacked columns M_1 v, ..., M_r v cannot span Q^n
    use logrank::linalg::QMat;
    use logrank::rat::rat_int;
    use logrank::symbolic::{SymbolSpace, SymbolicMatrix};
    let space = SymbolSpace::fresh(1);
    let single = SymbolicMatrix::from_components(
        space,
        &[QMat::from_fn(3, 3, |i, j| rat_int((2 * i + j) as i64 + 1))],
    );
    let wit = mcc_witness(&single, 1).unwrap().expect("rank-nullity guarantee");
    println!(
        "\nsingle-symbol 3x3: witness w = {}, v = {}",
        fmt(&wit.w),
        fmt(&wit.v)
    );

    // a generic full-symbol 2x2 has no witness up to height 3
    let space4 = SymbolSpace::fresh(4);
    let generic = SymbolicMatrix::from_components(
        space4,
        &(0..4)
            .map(|k| QMat::from_fn(2, 2, |i, j| rat_int((2 * i + j == k) as i64)))
            .collect::<Vec<_>>(),
    );
    println!(
        "generic 2x2 over 4 symbols, height 3 sweep found a witness: {}",
        mcc_witness(&generic, 3).unwrap().is_some()
    );
}
