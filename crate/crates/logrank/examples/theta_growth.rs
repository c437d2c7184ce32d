//! theta(r, d): the minimal total degree sum of d distinct exponent tuples
//! in r variables. It controls the vanishing order of interpolation
//! determinants; in one variable it is exactly d(d-1)/2, and in general it
//! eventually clears (r/6e) * d^((r+1)/r).

use logrank::mult_rel::{theta, theta_exceeds_bound};

fn main() {
    println!("theta(1, d) = d(d-1)/2:");
    for d in [1u64, 2, 5, 10, 50, 200] {
        println!("  d = {d:>3}: {}", theta(1, d));
    }

    println!("\nshell filling in more variables:");
    for r in 2..=4u64 {
        let row: Vec<String> = (1..=10).map(|d| theta(r, d).to_string()).collect();
        println!("  r = {r}: {}", row.join(", "));
    }

    println!("\nlower bound (r/6e) * d^((r+1)/r):");
    for r in 2..=3u64 {
        let first_ok = (1..).find(|&d| theta_exceeds_bound(r, d)).unwrap();
        println!(
            "  r = {r}: bound first cleared at d = {first_ok}, holds through d = 200: {}",
            (first_ok..=200).all(|d| theta_exceeds_bound(r, d))
        );
    }
}
