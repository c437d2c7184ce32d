//! Truncated power series: exact exp/log, detection of integer relations
//! among series, and the identity prod exp(y_i)^(m_i) = exp(sum m_i y_i).

use logrank::rat::{rat, rat_int};
use logrank::series::{
    product_exp_identity, relation_detect, series_exp, series_log, TruncatedSeries,
};

fn main() {
    let t = TruncatedSeries::var(10);

    let e = series_exp(&t).unwrap();
    println!("exp(t)      = {e}");
    println!("log(exp(t)) = {}", series_log(&e).unwrap());

    // relations: y3 = 3 y1 - 2 y2 is recovered from coefficients alone
    let y1 = TruncatedSeries::from_coeffs(
        (0..10).map(|k| if k == 0 { rat_int(0) } else { rat(1, k) }).collect(),
    );
    let y2 = {
        let mut c: Vec<_> = (0..10).map(|_| rat_int(0)).collect();
        c[1] = rat_int(2);
        c[3] = rat(-1, 2);
        TruncatedSeries::from_coeffs(c)
    };
    let y3 = y1.scale(&rat_int(3)).sub(&y2.scale(&rat_int(2)));
    let lattice = relation_detect(&[y1.clone(), y2.clone(), y3.clone()]).unwrap();
    println!("\nrelation lattice of (y1, y2, 3y1 - 2y2):");
    for j in 0..lattice.cols() {
        println!("  {:?} (valid to order 10)", lattice.col(j));
    }

    // no relation between t and t^2 at any usable order
    let t2 = {
        let mut c: Vec<_> = (0..10).map(|_| rat_int(0)).collect();
        c[2] = rat_int(1);
        TruncatedSeries::from_coeffs(c)
    };
    let none = relation_detect(&[t.clone(), t2]).unwrap();
    println!("relations between t and t^2: {} basis vectors", none.cols());

    // the multiplicative identity behind exp being a homomorphism
    let ok = product_exp_identity(&[y1, y2, y3], &[3, -2, -1]).unwrap();
    println!("\nexp(y1)^3 exp(y2)^-2 exp(y3)^-1 = exp(3y1 - 2y2 - y3) = 1: {ok}");
}
