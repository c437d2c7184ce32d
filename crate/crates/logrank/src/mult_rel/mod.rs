//! Multiplicative structure of tuples of nonzero rationals: exact relation
//! lattices via prime factorization, the Vandermonde collision criterion,
//! product-box enumeration, vanishing-polynomial search, the bilinear
//! pairing on generator grids, and the shell-count minimum `theta(r, d)`.

pub mod factor;

use crate::linalg::{column_hnf, kernel_basis, IMat, QMat};
use crate::poly::MultiPoly;
use crate::rat::{rat_pow, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

pub use factor::{factor, factor_rat, is_prime};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MultRelError {
    #[error("tuple entry {0} is zero")]
    ZeroEntry(usize),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("exponent does not fit in 64 bits")]
    ExponentTooLarge,
    #[error("{needed} hypothesis points exceed the cap of {cap}")]
    TooManyPoints { needed: u128, cap: u128 },
    #[error("candidate polynomial is zero")]
    ZeroPoly,
    #[error("degree in variable {var} is {deg}, exceeding the bound {bound}")]
    DegreeTooLarge { var: usize, deg: u32, bound: u32 },
    #[error("hypothesis fails: f does not vanish at z = {z}")]
    HypothesisFailed { z: u64 },
    #[error("internal contradiction: hypotheses hold but no collision was found")]
    NoCollision,
    #[error("basis columns are linearly dependent")]
    DependentBasis,
}

/// The lattice of integer relations `prod alpha_i^{lambda_i} = 1`, spanned
/// by the columns of `basis` (in column Hermite form, saturated: every
/// relation is an integer combination of the columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    pub basis: IMat,
}

impl RelationLattice {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Integer membership test by greedy reduction against the Hermite basis.
    pub fn contains(&self, lam: &[Int]) -> bool {
        assert_eq!(lam.len(), self.basis.rows());
        let mut target = lam.to_vec();
        for j in 0..self.basis.cols() {
            let col = self.basis.col(j);
            let Some(p) = col.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            if target[p].is_zero() {
                continue;
            }
            if !(&target[p] % &col[p]).is_zero() {
                return false;
            }
            let q = &target[p] / &col[p];
            for (t, c) in target.iter_mut().zip(&col) {
                *t -= &q * c;
            }
        }
        target.iter().all(|x| x.is_zero())
    }
}

fn check_nonzero(t: &[Rat]) -> Result<(), MultRelError> {
    for (i, x) in t.iter().enumerate() {
        if x.is_zero() {
            return Err(MultRelError::ZeroEntry(i));
        }
    }
    Ok(())
}

/// Exact check of `prod alpha_i^{lambda_i} = 1`.
pub fn verify_relation(t: &[Rat], lam: &[Int]) -> Result<bool, MultRelError> {
    if t.len() != lam.len() {
        return Err(MultRelError::LengthMismatch(format!(
            "tuple has {} entries, relation has {}",
            t.len(),
            lam.len()
        )));
    }
    check_nonzero(t)?;
    let mut acc = Rat::one();
    for (x, e) in t.iter().zip(lam) {
        let e: i64 = e.try_into().map_err(|_| MultRelError::ExponentTooLarge)?;
        acc *= rat_pow(x, e);
    }
    Ok(acc.is_one())
}

/// The full relation lattice of a tuple of nonzero rationals. Each entry is
/// factored over primes with a sign bit; relations are the integer kernel
/// of the exponent matrix, intersected with the even-sign sublattice, so the
/// result is complete. Every basis column is re-verified by exact
/// exponentiation before returning.
pub fn relation_lattice(t: &[Rat]) -> Result<RelationLattice, MultRelError> {
    check_nonzero(t)?;
    let n = t.len();
    let factored: Vec<(bool, std::collections::BTreeMap<Int, i64>)> =
        t.iter().map(factor_rat).collect();
    let primes: BTreeSet<Int> = factored
        .iter()
        .flat_map(|(_, m)| m.keys().cloned())
        .collect();
    let primes: Vec<Int> = primes.into_iter().collect();
    let expo = IMat::from_fn(primes.len(), n, |i, j| {
        Int::from(*factored[j].1.get(&primes[i]).unwrap_or(&0))
    });
    let kernel = kernel_basis(&expo);
    // intersect with the even-sign sublattice
    let parity = |col: &[Int]| -> bool {
        let mut odd = false;
        for (j, (neg, _)) in factored.iter().enumerate() {
            if *neg && col[j].is_odd() {
                odd = !odd;
            }
        }
        odd
    };
    let cols: Vec<Vec<Int>> = (0..kernel.cols()).map(|j| kernel.col(j)).collect();
    let odd_idx = cols.iter().position(|c| parity(c));
    let basis_cols: Vec<Vec<Int>> = match odd_idx {
        None => cols,
        Some(j0) => {
            let mut out = Vec::new();
            for (j, c) in cols.iter().enumerate() {
                if j == j0 {
                    out.push(c.iter().map(|x| x * Int::from(2)).collect());
                } else if parity(c) {
                    out.push(c.iter().zip(&cols[j0]).map(|(x, y)| x - y).collect());
                } else {
                    out.push(c.clone());
                }
            }
            out
        }
    };
    let raw = IMat::from_cols(basis_cols);
    let (h, _) = column_hnf(&raw);
    let nonzero: Vec<Vec<Int>> = (0..h.cols())
        .map(|j| h.col(j))
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let lattice = RelationLattice {
        basis: IMat::from_cols(nonzero),
    };
    for j in 0..lattice.basis.cols() {
        debug_assert!(verify_relation(t, &lattice.basis.col(j))?);
        if !verify_relation(t, &lattice.basis.col(j))? {
            return Err(MultRelError::NoCollision);
        }
    }
    Ok(lattice)
}

/// Vandermonde criterion: given a nonzero `f` of degree at most `l_bound`
/// in each variable that vanishes at `(alpha_1^z, ..., alpha_n^z)` for
/// `z = 1..(L+1)^n`, two exponent tuples in `{0..L}^n` must collide, and
/// their difference is a verified multiplicative relation. The hypothesis
/// is checked exactly before the collision search; `max_points` caps the
/// number of hypothesis points.
pub fn vandermonde_relation(
    t: &[Rat],
    f: &MultiPoly,
    l_bound: u32,
    max_points: u128,
) -> Result<Vec<Int>, MultRelError> {
    check_nonzero(t)?;
    let n = t.len();
    if f.nvars() != n {
        return Err(MultRelError::LengthMismatch(format!(
            "polynomial has {} variables, tuple has {n}",
            f.nvars()
        )));
    }
    if f.is_zero() {
        return Err(MultRelError::ZeroPoly);
    }
    for v in 0..n {
        let deg = f.degree_in(v).unwrap_or(0);
        if deg > l_bound {
            return Err(MultRelError::DegreeTooLarge {
                var: v,
                deg,
                bound: l_bound,
            });
        }
    }
    let points = (l_bound as u128 + 1).pow(n as u32);
    if points > max_points {
        return Err(MultRelError::TooManyPoints {
            needed: points,
            cap: max_points,
        });
    }
    // hypothesis: f(alpha^z) = 0 for z = 1..(L+1)^n, checked incrementally
    let mut powers: Vec<Rat> = vec![Rat::one(); n];
    for z in 1..=points as u64 {
        for (p, a) in powers.iter_mut().zip(t) {
            *p *= a;
        }
        let value = f.eval(&powers).expect("length checked");
        if !value.is_zero() {
            return Err(MultRelError::HypothesisFailed { z });
        }
    }
    // collision search over {0..L}^n by exact value
    let mut pow_table: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for a in t {
        let mut tbl = Vec::with_capacity(l_bound as usize + 1);
        let mut acc = Rat::one();
        for _ in 0..=l_bound {
            tbl.push(acc.clone());
            acc *= a;
        }
        pow_table.push(tbl);
    }
    let mut seen: HashMap<Rat, Vec<u32>> = HashMap::new();
    let mut lam = vec![0u32; n];
    loop {
        let mut value = Rat::one();
        for (i, &e) in lam.iter().enumerate() {
            value *= &pow_table[i][e as usize];
        }
        if let Some(prev) = seen.get(&value) {
            let diff: Vec<Int> = lam
                .iter()
                .zip(prev)
                .map(|(&a, &b)| Int::from(a as i64 - b as i64))
                .collect();
            let diff = normalize_sign(diff);
            if !verify_relation(t, &diff)? {
                return Err(MultRelError::NoCollision);
            }
            return Ok(diff);
        }
        seen.insert(value, lam.clone());
        // odometer, last index fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Err(MultRelError::NoCollision);
            }
            k -= 1;
            lam[k] += 1;
            if lam[k] > l_bound {
                lam[k] = 0;
            } else {
                break;
            }
        }
        if lam.iter().all(|&e| e == 0) {
            return Err(MultRelError::NoCollision);
        }
    }
}

fn normalize_sign(mut v: Vec<Int>) -> Vec<Int> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    v
}

/// All componentwise products `prod_i x_i^{a_i}` for `a` in `{0..N}^m`,
/// deduplicated with exact equality, in first-occurrence (odometer) order.
/// A size below `(N+1)^m` signals multiplicative relations among the rows.
pub fn enumerate_xn(
    g: &QMat,
    n_bound: u32,
    max_points: u128,
) -> Result<Vec<Vec<Rat>>, MultRelError> {
    let (m, n) = (g.rows(), g.cols());
    for i in 0..m {
        for j in 0..n {
            if g[(i, j)].is_zero() {
                return Err(MultRelError::ZeroEntry(i * n + j));
            }
        }
    }
    let points = (n_bound as u128 + 1).pow(m as u32);
    if points > max_points {
        return Err(MultRelError::TooManyPoints {
            needed: points,
            cap: max_points,
        });
    }
    let mut seen: std::collections::HashSet<Vec<Rat>> = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut a = vec![0u32; m];
    loop {
        let mut tuple = vec![Rat::one(); n];
        for (i, &e) in a.iter().enumerate() {
            if e > 0 {
                for (acc, x) in tuple.iter_mut().zip(g.row(i)) {
                    *acc *= rat_pow(x, e as i64);
                }
            }
        }
        if seen.insert(tuple.clone()) {
            out.push(tuple);
        }
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            a[k] += 1;
            if a[k] > n_bound {
                a[k] = 0;
            } else {
                break;
            }
        }
    }
}

/// Monomials in `n` variables of total degree below `d`, graded-lex order.
fn monomials_below(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn exact_degree(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            exact_degree(out, cur, pos + 1, left - e);
            cur[pos] = 0;
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    for deg in 0..d {
        exact_degree(&mut out, &mut cur, 0, deg);
    }
    out
}

/// A nonzero integer polynomial of total degree below `d` vanishing at all
/// the given points, found as an exact kernel vector of the evaluation
/// matrix; `None` when the evaluation matrix has full column rank.
pub fn vanishing_poly(points: &[Vec<Rat>], d: u32) -> Option<MultiPoly> {
    assert!(d >= 1);
    let n = points.first().map(|p| p.len())?;
    assert!(points.iter().all(|p| p.len() == n));
    let mons = monomials_below(n, d);
    let eval = QMat::from_fn(points.len(), mons.len(), |i, j| {
        let mut acc = Rat::one();
        for (v, &e) in mons[j].iter().enumerate() {
            if e > 0 {
                acc *= points[i][v].pow(e as i32);
            }
        }
        acc
    });
    let (_, kernel) = eval.rank_kernel();
    let coeffs = kernel.into_iter().next()?;
    let poly = MultiPoly::from_terms(
        n,
        mons.into_iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c)),
    )
    .primitive_integer_scale();
    debug_assert!(points
        .iter()
        .all(|p| poly.eval(p).expect("length checked").is_zero()));
    Some(poly)
}

/// The bilinear pairing `<a, b> = prod_{i,j} x_{ij}^{a_i b_j}`.
pub fn pairing(g: &QMat, a: &[Int], b: &[Int]) -> Result<Rat, MultRelError> {
    if a.len() != g.rows() || b.len() != g.cols() {
        return Err(MultRelError::LengthMismatch(format!(
            "grid is {} x {}, vectors have lengths {} and {}",
            g.rows(),
            g.cols(),
            a.len(),
            b.len()
        )));
    }
    let mut acc = Rat::one();
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            if g[(i, j)].is_zero() {
                return Err(MultRelError::ZeroEntry(i * g.cols() + j));
            }
            let e = &a[i] * &b[j];
            let e: i64 = (&e).try_into().map_err(|_| MultRelError::ExponentTooLarge)?;
            acc *= rat_pow(&g[(i, j)], e);
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingReport {
    pub trivial: bool,
    pub failing_pair: Option<(usize, usize)>,
    pub rank_a: usize,
    pub rank_b: usize,
    /// whether rank_a/m + rank_b/n > 1, compared exactly
    pub threshold_met: bool,
}

/// Whether `<A, B> = 1` on all basis pairs (sufficient by bilinearity),
/// together with the exact threshold comparison `m'/m + n'/n > 1`.
pub fn subgroup_pairing_trivial(
    g: &QMat,
    a_basis: &IMat,
    b_basis: &IMat,
) -> Result<PairingReport, MultRelError> {
    if a_basis.rows() != g.rows() || b_basis.rows() != g.cols() {
        return Err(MultRelError::LengthMismatch(
            "subgroup bases must live in Z^m and Z^n".into(),
        ));
    }
    if a_basis.to_qmat().rank() != a_basis.cols() || b_basis.to_qmat().rank() != b_basis.cols()
    {
        return Err(MultRelError::DependentBasis);
    }
    let (m, n) = (g.rows(), g.cols());
    let (ra, rb) = (a_basis.cols(), b_basis.cols());
    let mut failing = None;
    'outer: for i in 0..ra {
        for j in 0..rb {
            let v = pairing(g, &a_basis.col(i), &b_basis.col(j))?;
            if !v.is_one() {
                failing = Some((i, j));
                break 'outer;
            }
        }
    }
    let threshold_met = Rat::new(Int::from(ra as i64), Int::from(m as i64))
        + Rat::new(Int::from(rb as i64), Int::from(n as i64))
        > Rat::one();
    Ok(PairingReport {
        trivial: failing.is_none(),
        failing_pair: failing,
        rank_a: ra,
        rank_b: rb,
        threshold_met,
    })
}

/// Binomial coefficient as u128; panics on overflow (desk scale only).
fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial overflow")
            / (i as u128 + 1);
    }
    acc
}

/// Minimum of `sum_j |v_j|` over `d` distinct tuples in `(Z>=0)^r`:
/// fill total-degree shells from the bottom; shell `k` holds
/// `C(k + r - 1, r - 1)` tuples, each contributing `k`.
pub fn theta(r: u64, d: u64) -> u128 {
    assert!(r >= 1 && d >= 1);
    let mut remaining = d as u128;
    let mut acc: u128 = 0;
    let mut k: u64 = 0;
    while remaining > 0 {
        let shell = binomial(k + r - 1, r - 1);
        let take = shell.min(remaining);
        acc += take * k as u128;
        remaining -= take;
        k += 1;
    }
    acc
}

/// Whether `theta(r, d)` clears `(r / 6e) * d^((r+1)/r)`. The comparison is
/// done in double precision, which is ample at desk scale; everything else
/// in this module is exact.
pub fn theta_exceeds_bound(r: u64, d: u64) -> bool {
    let bound = (r as f64 / (6.0 * std::f64::consts::E))
        * (d as f64).powf((r as f64 + 1.0) / r as f64);
    (theta(r, d) as f64) > bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat, rat_int};

    fn tup(v: Vec<(i64, i64)>) -> Vec<Rat> {
        v.into_iter().map(|(a, b)| rat(a, b)).collect()
    }

    #[test]
    fn lattice_of_two_and_four() {
        let l = relation_lattice(&tup(vec![(2, 1), (4, 1)])).unwrap();
        assert_eq!(l.rank(), 1);
        // spanned by (2, -1)
        assert!(l.contains(&[int(2), int(-1)]));
        assert!(l.contains(&[int(-4), int(2)]));
        assert!(!l.contains(&[int(1), int(0)]));
    }

    #[test]
    fn lattice_of_coprime_primes_is_zero() {
        let l = relation_lattice(&tup(vec![(2, 1), (3, 1)])).unwrap();
        assert_eq!(l.rank(), 0);
    }

    #[test]
    fn lattice_of_four_and_eight() {
        // 4^3 = 8^2 = 64
        let l = relation_lattice(&tup(vec![(4, 1), (8, 1)])).unwrap();
        assert_eq!(l.rank(), 1);
        assert!(l.contains(&[int(3), int(-2)]));
        assert!(verify_relation(&tup(vec![(4, 1), (8, 1)]), &[int(3), int(-2)]).unwrap());
    }

    #[test]
    fn lattice_sign_handling() {
        // (-2, 2): (-2)^a 2^b = 1 needs a + b = 0 on primes and a even
        let t = tup(vec![(-2, 1), (2, 1)]);
        let l = relation_lattice(&t).unwrap();
        assert_eq!(l.rank(), 1);
        assert!(l.contains(&[int(2), int(-2)]));
        assert!(!l.contains(&[int(1), int(-1)])); // (-2)/2 = -1, not 1
        for j in 0..l.basis.cols() {
            assert!(verify_relation(&t, &l.basis.col(j)).unwrap());
        }
        // (-1) alone: only even powers
        let l = relation_lattice(&[rat(-1, 1)]).unwrap();
        assert_eq!(l.rank(), 1);
        assert!(l.contains(&[int(2)]));
        assert!(!l.contains(&[int(1)]));
    }

    #[test]
    fn lattice_completeness_box_spotcheck() {
        let t = tup(vec![(6, 1), (2, 1), (3, 1)]);
        let l = relation_lattice(&t).unwrap();
        // brute-force all relations with |lambda_i| <= 3
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    let lam = vec![int(a), int(b), int(c)];
                    let holds = verify_relation(&t, &lam).unwrap();
                    assert_eq!(
                        holds,
                        l.contains(&lam),
                        "box relation ({a},{b},{c}) mismatch"
                    );
                }
            }
        }
    }

    #[test]
    fn vandermonde_simple_collision() {
        // t = (2, 1/2), f = t1 t2 - 1 vanishes at all alpha^z
        let t = tup(vec![(2, 1), (1, 2)]);
        let f = MultiPoly::from_terms(2, [(vec![1, 1], rat_int(1)), (vec![0, 0], rat_int(-1))]);
        let lam = vandermonde_relation(&t, &f, 1, 1 << 20).unwrap();
        assert!(verify_relation(&t, &lam).unwrap());
        assert!(lam.iter().any(|x| !x.is_zero()));
        assert_eq!(lam, vec![int(1), int(1)]);
    }

    #[test]
    fn vandermonde_planted_from_lattice() {
        // t = (4, 8) with relation (3, -2): plant f = t1^3 - t2^2
        let t = tup(vec![(4, 1), (8, 1)]);
        let f = MultiPoly::from_terms(2, [(vec![3, 0], rat_int(1)), (vec![0, 2], rat_int(-1))]);
        let lam = vandermonde_relation(&t, &f, 3, 1 << 20).unwrap();
        assert!(verify_relation(&t, &lam).unwrap());
        // proportional to (3, -2)
        assert!((&lam[0] * int(-2)) == (&lam[1] * int(3)));
    }

    #[test]
    fn vandermonde_rejects_independent_tuple() {
        // (2, 3) admits no relation, so no valid f can pass the hypothesis
        let t = tup(vec![(2, 1), (3, 1)]);
        let f = MultiPoly::from_terms(2, [(vec![1, 1], rat_int(1)), (vec![0, 0], rat_int(-6))]);
        match vandermonde_relation(&t, &f, 1, 1 << 20) {
            Err(MultRelError::HypothesisFailed { z }) => assert!(z >= 1),
            other => panic!("expected hypothesis failure, got {other:?}"),
        }
    }

    #[test]
    fn vandermonde_input_validation() {
        let t = tup(vec![(2, 1), (3, 1)]);
        let zero = MultiPoly::zero(2);
        assert_eq!(
            vandermonde_relation(&t, &zero, 1, 1 << 20),
            Err(MultRelError::ZeroPoly)
        );
        let f = MultiPoly::from_terms(2, [(vec![2, 0], rat_int(1))]);
        assert!(matches!(
            vandermonde_relation(&t, &f, 1, 1 << 20),
            Err(MultRelError::DegreeTooLarge { var: 0, deg: 2, bound: 1 })
        ));
        let g = MultiPoly::from_terms(2, [(vec![1, 1], rat_int(1))]);
        assert!(matches!(
            vandermonde_relation(&t, &g, 9, 50),
            Err(MultRelError::TooManyPoints { .. })
        ));
    }

    #[test]
    fn xn_single_row() {
        let g = QMat::from_rows(vec![vec![rat_int(2), rat_int(3)]]);
        let xs = enumerate_xn(&g, 2, 1 << 20).unwrap();
        assert_eq!(
            xs,
            vec![
                vec![rat_int(1), rat_int(1)],
                vec![rat_int(2), rat_int(3)],
                vec![rat_int(4), rat_int(9)],
            ]
        );
    }

    #[test]
    fn xn_equal_rows_collide() {
        let g = QMat::from_rows(vec![
            vec![rat_int(2), rat_int(3)],
            vec![rat_int(2), rat_int(3)],
        ]);
        let xs = enumerate_xn(&g, 1, 1 << 20).unwrap();
        assert_eq!(xs.len(), 3); // (N+1)^m = 4 minus one collision
    }

    #[test]
    fn xn_independent_rows_full_size() {
        let g = QMat::from_rows(vec![
            vec![rat_int(2), rat_int(3)],
            vec![rat_int(5), rat_int(7)],
        ]);
        let xs = enumerate_xn(&g, 2, 1 << 20).unwrap();
        assert_eq!(xs.len(), 9);
    }

    #[test]
    fn vanishing_poly_single_point() {
        let p = vanishing_poly(&[vec![rat_int(1), rat_int(1)]], 2).unwrap();
        assert!(!p.is_zero());
        assert!(p.total_degree().unwrap() < 2);
        assert!(p.eval(&[rat_int(1), rat_int(1)]).unwrap().is_zero());
    }

    #[test]
    fn vanishing_poly_on_power_curve() {
        // points (2^a, 3^a) for a = 0..3: no linear polynomial vanishes on
        // all four (they are not collinear), matching the dense nullspace
        let points: Vec<Vec<Rat>> = (0..4)
            .map(|a| vec![rat_pow(&rat_int(2), a), rat_pow(&rat_int(3), a)])
            .collect();
        assert!(vanishing_poly(&points, 2).is_none());
        let mons = monomials_below(2, 2);
        let eval = QMat::from_fn(points.len(), mons.len(), |i, j| {
            let mut acc = Rat::one();
            for (v, &e) in mons[j].iter().enumerate() {
                for _ in 0..e {
                    acc *= &points[i][v];
                }
            }
            acc
        });
        assert_eq!(eval.rank(), mons.len());
        // at degree bound 3 the 6 monomials outnumber the 4 points
        let p = vanishing_poly(&points, 3).expect("counting guarantees a kernel vector");
        assert!(p.total_degree().unwrap() < 3);
        for pt in &points {
            assert!(p.eval(pt).unwrap().is_zero());
        }
    }

    #[test]
    fn vanishing_poly_five_generic_points() {
        // 5 points, 6 monomials of degree < 3 in 2 vars -> kernel nonempty
        let pts: Vec<Vec<Rat>> = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(5)],
            vec![rat_int(3), rat_int(-1)],
            vec![rat_int(-2), rat_int(7)],
            vec![rat_int(4), rat_int(4)],
        ];
        let p = vanishing_poly(&pts, 3).unwrap();
        assert!(p.total_degree().unwrap() < 3);
        for pt in &pts {
            assert!(p.eval(pt).unwrap().is_zero());
        }
    }

    #[test]
    fn vanishing_poly_none_when_full_rank() {
        // 3 generic points, only 3 monomials of degree < 2 in 2 vars
        let pts: Vec<Vec<Rat>> = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ];
        assert!(vanishing_poly(&pts, 2).is_none());
    }

    #[test]
    fn pairing_cases() {
        let g = QMat::from_rows(vec![vec![rat_int(2)]]);
        assert_eq!(pairing(&g, &[int(0)], &[int(5)]).unwrap(), rat_int(1));
        assert_eq!(pairing(&g, &[int(1)], &[int(3)]).unwrap(), rat_int(8));
    }

    #[test]
    fn pairing_bilinearity() {
        let g = QMat::from_rows(vec![
            vec![rat(2, 3), rat_int(5)],
            vec![rat(1, 7), rat(-3, 2)],
        ]);
        let a1 = [int(1), int(-2)];
        let a2 = [int(3), int(1)];
        let b = [int(2), int(1)];
        let sum: Vec<Int> = a1.iter().zip(&a2).map(|(x, y)| x + y).collect();
        let lhs = pairing(&g, &sum, &b).unwrap();
        let rhs = pairing(&g, &a1, &b).unwrap() * pairing(&g, &a2, &b).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn subgroup_pairing_reports() {
        let g = QMat::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(3), rat_int(1)],
        ]);
        // zero subgroups: trivially true, threshold false
        let empty_a = IMat::zeros(2, 0);
        let empty_b = IMat::zeros(2, 0);
        let rep = subgroup_pairing_trivial(&g, &empty_a, &empty_b).unwrap();
        assert!(rep.trivial);
        assert!(!rep.threshold_met);

        // x_11 = 1: A = e_1, B = e_1 pairs to 1
        let a = IMat::from_cols(vec![vec![int(1), int(0)]]);
        let b = IMat::from_cols(vec![vec![int(1), int(0)]]);
        let rep = subgroup_pairing_trivial(&g, &a, &b).unwrap();
        assert!(rep.trivial);
        assert!(!rep.threshold_met); // 1/2 + 1/2 = 1 is not > 1

        // dependent basis rejected
        let dep = IMat::from_cols(vec![vec![int(1), int(1)], vec![int(2), int(2)]]);
        assert_eq!(
            subgroup_pairing_trivial(&g, &dep, &b),
            Err(MultRelError::DependentBasis)
        );
    }

    #[test]
    fn theta_closed_form_r1() {
        for d in 1..=200u64 {
            assert_eq!(theta(1, d), (d as u128) * (d as u128 - 1) / 2);
        }
    }

    #[test]
    fn theta_small_values() {
        assert_eq!(theta(2, 3), 2); // 0 + 1 + 1
        for r in 1..=5 {
            assert_eq!(theta(r, 1), 0);
        }
    }

    #[test]
    fn theta_matches_sorted_enumeration() {
        // oracle: enumerate all tuples with norm <= K, sort by norm, take d
        for r in 1..=3u64 {
            for d in 1..=20u64 {
                let mut norms: Vec<u64> = Vec::new();
                let k_max = 25u32;
                let mut cur = vec![0u32; r as usize];
                fn rec(norms: &mut Vec<u64>, cur: &mut Vec<u32>, pos: usize, cap: u32) {
                    if pos == cur.len() {
                        norms.push(cur.iter().map(|&x| x as u64).sum());
                        return;
                    }
                    for e in 0..=cap {
                        cur[pos] = e;
                        rec(norms, cur, pos + 1, cap - e);
                        cur[pos] = 0;
                    }
                }
                rec(&mut norms, &mut cur, 0, k_max);
                norms.sort_unstable();
                let oracle: u128 = norms[..d as usize].iter().map(|&x| x as u128).sum();
                assert_eq!(theta(r, d), oracle, "r={r} d={d}");
            }
        }
    }

    #[test]
    fn theta_subset_brute_force_tiny() {
        // genuine subset minimization for r=2, d=3 over tuples of norm <= 2
        let tuples: Vec<(u32, u32)> = (0..=2)
            .flat_map(|a| (0..=2 - a).map(move |b| (a, b)))
            .collect();
        let mut best = u32::MAX;
        let m = tuples.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let s = tuples[i].0
                        + tuples[i].1
                        + tuples[j].0
                        + tuples[j].1
                        + tuples[k].0
                        + tuples[k].1;
                    best = best.min(s);
                }
            }
        }
        assert_eq!(theta(2, 3), best as u128);
    }

    #[test]
    fn theta_bound_above_empirical_threshold() {
        for r in 2..=3u64 {
            for d in 2..=20u64 {
                assert!(theta_exceeds_bound(r, d), "r={r} d={d}");
            }
            assert!(!theta_exceeds_bound(r, 1));
        }
    }
}
