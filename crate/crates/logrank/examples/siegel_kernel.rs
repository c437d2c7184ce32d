//! Small integer kernel vectors: a wide integer matrix with entries below
//! H has a nonzero kernel vector with all coordinates below 2NH.

use logrank::linalg::{siegel_solve, siegel_solve_pigeonhole, IMat};
use logrank::rat::{int, Int};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    // a fixed 2 x 7 instance
    let a = IMat::from_rows(vec![
        vec![int(3), int(-1), int(4), int(0), int(-2), int(1), int(5)],
        vec![int(1), int(2), int(-3), int(4), int(0), int(-5), int(2)],
    ]);
    let h = int(6);
    let b = siegel_solve(&a, &h).expect("wide matrix with small entries");
    let bound = int(2) * int(7) * &h;
    println!("A (2 x 7, entries < {h}):");
    print!("{a}");
    println!("kernel vector b = {b:?}");
    println!(
        "A b = {:?}, max |b_i| = {} < {bound}",
        a.mul_vec(&b),
        b.iter().map(Int::abs).max().unwrap()
    );

    // the pigeonhole enumeration from the counting proof agrees on a tiny case
    let tiny = IMat::from_rows(vec![vec![int(1), int(2), int(-3)]]);
    let via_proof = siegel_solve_pigeonhole(&tiny, &int(4)).unwrap();
    println!("\npigeonhole reference on [[1, 2, -3]]: {via_proof:?}");

    // a batch of random instances, all verified exactly
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_ratio = 0.0f64;
    for _ in 0..50 {
        let m = rng.gen_range(1..=5);
        let n = rng.gen_range(2 * m + 1..=12);
        let hb = rng.gen_range(2i64..=10);
        let a = IMat::from_fn(m, n, |_, _| Int::from(rng.gen_range(-(hb - 1)..=hb - 1)));
        let b = siegel_solve(&a, &int(hb)).expect("guaranteed by the lemma");
        assert!(a.mul_vec(&b).iter().all(num_traits::Zero::is_zero));
        let sup: i64 = b.iter().map(Int::abs).max().unwrap().try_into().unwrap();
        let bound = 2 * n as i64 * hb;
        assert!(sup < bound);
        worst_ratio = worst_ratio.max(sup as f64 / bound as f64);
    }
    println!("\n50 random instances verified; worst sup-norm/bound ratio: {worst_ratio:.3}");
}
