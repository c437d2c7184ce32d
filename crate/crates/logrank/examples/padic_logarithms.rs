//! p-adic logarithms and exponentials with honest precision tracking,
//! Teichmueller lifts, Hensel lifting, and a toy logarithm matrix of the
//! kind appearing in unit-regulator questions.

use logrank::padic::{
    exp_p, hensel_root, log_matrix, log_p, teichmuller, PadicNumber, UnitInput,
};
use logrank::rat::{int, rat, rat_int};

fn main() {
    let p = 5;
    let k = 20;

    // log and exp are mutually inverse on 1-units
    let x = PadicNumber::from_rat(&rat_int(6), p, k);
    let lx = log_p(&x).unwrap();
    println!("log_5(6)  = {lx}");
    let back = exp_p(&lx).unwrap();
    println!("exp(log)  = {back}");

    // the Iwasawa normalization: log_p(p) = 0, and roots of unity vanish
    let five = PadicNumber::from_rat(&rat_int(5), p, k);
    println!("log_5(5)  = {}", log_p(&five).unwrap());
    let t = teichmuller(p, &int(2), k).unwrap();
    println!("teichmuller lift of 2: {t}");
    println!("its log:  {}", log_p(&t).unwrap());

    // the homomorphism property holds across valuations and unit classes
    let a = PadicNumber::from_rat(&rat(50, 3), p, k);
    let b = PadicNumber::from_rat(&rat(7, 25), p, k);
    let lhs = log_p(&a.mul(&b).unwrap()).unwrap();
    let rhs = log_p(&a).unwrap().add(&log_p(&b).unwrap()).unwrap();
    println!(
        "log(ab) == log a + log b at precision {}: {}",
        lhs.abs_prec().min(rhs.abs_prec()),
        lhs.agrees_at(&rhs, lhs.abs_prec().min(rhs.abs_prec()))
    );

    // Hensel lifting: sqrt(2) in Z_7
    let root = hensel_root(&[int(-2), int(0), int(1)], &int(3), 7, 20).unwrap();
    println!("\nsqrt(2) in Z_7: {root}");
    println!("squared: {}", root.pow(2).unwrap());

    // a 1x2 logarithm matrix for the fundamental unit 1 + sqrt(2) of
    // Q(sqrt 2) under its two embeddings into Q_7 (x^2 - 2x - 1 splits)
    let mp = vec![int(-1), int(-2), int(1)];
    let rows = vec![vec![
        UnitInput::AlgebraicRoot {
            minpoly: mp.clone(),
            residue: int(5),
        },
        UnitInput::AlgebraicRoot {
            minpoly: mp,
            residue: int(4),
        },
    ]];
    let (mat, rank) = log_matrix(&rows, 7, 20).unwrap();
    println!("\nlog matrix of 1 + sqrt(2) under both embeddings:");
    println!("  [{}, {}]", mat.at(0, 0), mat.at(0, 1));
    println!("rank >= {rank} certified at precision 20");
    println!("(a vanishing entry could never be certified at finite precision)");
}
