//! Property tests for the algebraic invariants: polynomial ring axioms,
//! homogenization, kernel exactness, normal-form transforms, the rank-one
//! dependence shape, and pairing bilinearity.

use logrank::linalg::{column_hnf, kernel_basis, row_hnf, snf, IMat, QMat};
use logrank::mult_rel::pairing;
use logrank::poly::MultiPoly;
use logrank::rat::{int, rat, Int, Rat};
use logrank::symbolic::{SymbolSpace, SymbolicMatrix};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

/// Sparse polynomials in `nvars` variables with total degree at most 3.
fn arb_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    let term = (
        proptest::collection::vec(0u32..=2, nvars),
        arb_rat(),
    );
    proptest::collection::vec(term, 0..5).prop_map(move |terms| {
        MultiPoly::from_terms(
            nvars,
            terms
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= 3),
        )
    })
}

fn arb_imat(rows: usize, cols: usize) -> impl Strategy<Value = IMat> {
    proptest::collection::vec(-9i64..=9, rows * cols).prop_map(move |v| {
        IMat::from_fn(rows, cols, |i, j| Int::from(v[i * cols + j]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
        // associativity and distributivity hold exactly
        let ab_c = &(&a * &b) * &c;
        let a_bc = &a * &(&b * &c);
        prop_assert_eq!(&ab_c, &a_bc);
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poly_degree_additive(a in arb_poly(2), b in arb_poly(2)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(
            prod.total_degree(),
            Some(a.total_degree().unwrap() + b.total_degree().unwrap())
        );
    }

    #[test]
    fn homogenize_specialize_identity(p in arb_poly(3)) {
        let h = p.homogenize();
        prop_assert_eq!(h.substitute(0, &Rat::one()).drop_var(0), p.clone());
        if let Some(d) = p.total_degree() {
            prop_assert!(h.terms().all(|(m, _)| m.total_degree() == d));
        }
    }

    #[test]
    fn rational_kernel_is_exact(entries in proptest::collection::vec(-9i64..=9, 12)) {
        let m = QMat::from_fn(3, 4, |i, j| Rat::from_integer(Int::from(entries[i * 4 + j])));
        let (rank, kernel) = m.rank_kernel();
        prop_assert_eq!(rank + kernel.len(), 4);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Rat::is_zero));
            // canonical form: integer entries, content 1, first nonzero positive
            let first = v.iter().find(|x| !x.is_zero()).expect("kernel vectors are nonzero");
            prop_assert!(first.is_positive());
            prop_assert!(v.iter().all(Rat::is_integer));
        }
    }

    #[test]
    fn normal_forms_are_unimodular(a in arb_imat(3, 3)) {
        let (h, u) = row_hnf(&a);
        prop_assert_eq!(u.mul(&a), h);
        prop_assert_eq!(u.det().abs(), int(1));

        let nf = snf(&a);
        prop_assert_eq!(nf.u.mul(&a).mul(&nf.v), nf.s.clone());
        prop_assert_eq!(nf.u.det().abs(), int(1));
        prop_assert_eq!(nf.v.det().abs(), int(1));
    }

    #[test]
    fn integer_kernel_is_saturated(a in arb_imat(2, 4)) {
        let k = kernel_basis(&a);
        for j in 0..k.cols() {
            prop_assert!(a.mul_vec(&k.col(j)).iter().all(Int::is_zero));
        }
        // saturation: the HNF of the kernel basis is primitive columnwise
        let (h, _) = column_hnf(&k);
        for j in 0..h.cols() {
            let col = h.col(j);
            let content = col.iter().fold(Int::zero(), |g, x| num_integer::gcd(g, x.clone()));
            prop_assert!(content.is_zero() || content.is_one());
        }
    }

    #[test]
    fn rank_one_2x3_has_dependence(
        row_mults in proptest::collection::vec((-5i64..=5, 1i64..=3), 2),
        col_mults in proptest::collection::vec((-5i64..=5, 1i64..=3), 3),
    ) {
        // rank-one outer product of rational multipliers against one symbol
        prop_assume!(row_mults.iter().any(|&(n, _)| n != 0));
        prop_assume!(col_mults.iter().any(|&(n, _)| n != 0));
        let space = SymbolSpace::fresh(1);
        let grid: Vec<Vec<Vec<Rat>>> = row_mults
            .iter()
            .map(|&(rn, rd)| {
                col_mults
                    .iter()
                    .map(|&(cn, cd)| vec![rat(rn, rd) * rat(cn, cd)])
                    .collect()
            })
            .collect();
        let m = SymbolicMatrix::from_coeff_grid(space, grid);
        prop_assert!(m.structural_rank() <= 1);
        let cert = m.row_col_dependence();
        prop_assert!(cert.is_some());
        prop_assert!(m.check_dependence(&cert.unwrap()));
    }

    #[test]
    fn pairing_is_bilinear(
        grid in proptest::collection::vec((1i64..=9, 1i64..=5), 4),
        a1 in proptest::collection::vec(-3i64..=3, 2),
        a2 in proptest::collection::vec(-3i64..=3, 2),
        b in proptest::collection::vec(-3i64..=3, 2),
    ) {
        let g = QMat::from_fn(2, 2, |i, j| {
            let (n, d) = grid[i * 2 + j];
            rat(n, d)
        });
        let ai: Vec<Int> = a1.iter().map(|&x| Int::from(x)).collect();
        let aj: Vec<Int> = a2.iter().map(|&x| Int::from(x)).collect();
        let bv: Vec<Int> = b.iter().map(|&x| Int::from(x)).collect();
        let sum: Vec<Int> = ai.iter().zip(&aj).map(|(x, y)| x + y).collect();
        let lhs = pairing(&g, &sum, &bv).unwrap();
        let rhs = pairing(&g, &ai, &bv).unwrap() * pairing(&g, &aj, &bv).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
