//! Interpolation determinants det(u^(a_i y_j)) vanish to high p-adic order:
//! the valuation is at least theta_1(d) * v(u - 1), the one-variable shadow
//! of the interpolation-determinant method.

use logrank::padic::{interp_det_valuation, PadicNumber};
use logrank::rat::rat_int;

fn main() {
    let p = 5;
    let u = PadicNumber::from_rat(&rat_int(6), p, 60); // v(u - 1) = 1

    for d in 1..=6usize {
        let a: Vec<i64> = (0..d as i64).collect();
        let y: Vec<i64> = (0..d as i64).map(|i| 2 * i + 1).collect();
        let rep = interp_det_valuation(&u, &a, &y).unwrap();
        println!(
            "d = {d}: v_5(det) = {:>2}, bound theta_1({d}) * v(u-1) = {:>2}, ok = {}",
            rep.valuation, rep.bound, rep.satisfied
        );
    }

    // a higher-valuation u scales the bound
    let u = PadicNumber::from_rat(&rat_int(26), p, 80); // 26 = 1 + 25
    let a = [0i64, 1, 2, 3];
    let y = [0i64, 1, 2, 5];
    let rep = interp_det_valuation(&u, &a, &y).unwrap();
    println!(
        "\nu = 26 (v(u-1) = {}): v_5(det) = {} >= {}",
        rep.u_minus_1_valuation, rep.valuation, rep.bound
    );
}
