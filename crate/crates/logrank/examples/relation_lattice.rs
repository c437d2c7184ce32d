//! Multiplicative relations among nonzero rationals, computed completely
//! via prime factorization, and the Vandermonde collision argument that
//! extracts a relation from a vanishing polynomial.

use logrank::mult_rel::{relation_lattice, vandermonde_relation, verify_relation};
use logrank::poly::MultiPoly;
use logrank::rat::{rat, rat_int};

fn main() {
    // 4^3 = 8^2, so (3, -2) generates the relations of (4, 8)
    let t = vec![rat_int(4), rat_int(8)];
    let lat = relation_lattice(&t).unwrap();
    println!("relations of (4, 8): rank {}", lat.rank());
    for j in 0..lat.basis.cols() {
        let col = lat.basis.col(j);
        println!(
            "  {col:?} verifies: {}",
            verify_relation(&t, &col).unwrap()
        );
    }

    // signs matter: (-2, 2) only satisfies even relations in the first slot
    let t = vec![rat_int(-2), rat_int(2)];
    let lat = relation_lattice(&t).unwrap();
    println!("\nrelations of (-2, 2):");
    for j in 0..lat.basis.cols() {
        println!("  {:?}", lat.basis.col(j));
    }

    // coprime entries have no relations at all
    let none = relation_lattice(&[rat_int(2), rat_int(3)]).unwrap();
    println!("\nrelations of (2, 3): rank {}", none.rank());

    // the collision route: a polynomial vanishing on all (a^z)
    // forces two monomials to take the same value
    let t = vec![rat_int(2), rat(1, 2)];
    let f = MultiPoly::from_terms(2, [(vec![1, 1], rat_int(1)), (vec![0, 0], rat_int(-1))]);
    println!("\nf = {f} vanishes at (2^z, (1/2)^z) for every z");
    let lam = vandermonde_relation(&t, &f, 1, 1 << 20).unwrap();
    println!("collision yields the relation {lam:?}: 2^{} * (1/2)^{} = 1", lam[0], lam[1]);

    // with an independent tuple the hypothesis check rejects every candidate
    let bad = vandermonde_relation(&[rat_int(2), rat_int(3)], &f, 1, 1 << 20);
    println!("\nsame f against (2, 3): {}", bad.unwrap_err());
}
