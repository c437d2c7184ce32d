//! Constructive determinantal representations: factor a square polynomial
//! matrix as `A * B` with `B` the affine Kronecker column `x (x) I`, embed
//! `A * B` into the square block matrix `[[I, B], [-A, 0]]` with equal
//! determinant, and iterate until every entry is affine. Starting from the
//! 1 x 1 matrix `[p]` this yields a square matrix with affine entries whose
//! determinant is exactly `p`, of dimension `(n + 2)^(deg p - 1)`.

use crate::linalg::PMat;
use crate::poly::{Monomial, MultiPoly};
use crate::rat::{rat_int, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DetRepError {
    #[error("matrix must be square, got {0} x {1}")]
    NotSquare(usize, usize),
    #[error("degree bound violated: entry ({0}, {1}) has degree {2} > {3}")]
    DegreeBound(usize, usize, u32, u32),
    #[error("shape mismatch: a is {0} x {1}, b is {2} x {3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("degree bound must be at least 1")]
    ZeroDegreeBound,
}

/// Split `n = a * b` with `deg(a) <= d - 1` and `b = x (x) I` affine.
///
/// Every entry is written as `sum_l c_l * x_l + c_const` by sending each
/// monomial's quotient by its lowest-index variable (the whole monomial for
/// constants) into the matching slot; the quotients land in `a` and the
/// bare variables (plus the constant slot 1) make up `b`, so
/// `s = m * (nvars + 1)`.
pub fn factor_ab(n: &PMat, d: u32) -> Result<(PMat, PMat), DetRepError> {
    if n.rows() != n.cols() {
        return Err(DetRepError::NotSquare(n.rows(), n.cols()));
    }
    if d == 0 {
        return Err(DetRepError::ZeroDegreeBound);
    }
    let m = n.rows();
    let nv = n.nvars();
    for i in 0..m {
        for j in 0..m {
            if let Some(deg) = n.at(i, j).total_degree() {
                if deg > d {
                    return Err(DetRepError::DegreeBound(i, j, deg, d));
                }
            }
        }
    }
    let s = m * (nv + 1);
    let mut a = PMat::zeros(m, s, nv);
    for i in 0..m {
        for j in 0..m {
            // slot l < nv holds the quotient by x_l; slot nv the constants
            let mut slots = vec![MultiPoly::zero(nv); nv + 1];
            for (mon, coef) in n.at(i, j).terms() {
                match mon.0.iter().position(|&e| e > 0) {
                    Some(l) => {
                        let mut exps = mon.0.clone();
                        exps[l] -= 1;
                        slots[l] = &slots[l]
                            + &MultiPoly::from_terms(nv, [(exps, coef.clone())]);
                    }
                    None => {
                        slots[nv] = &slots[nv]
                            + &MultiPoly::from_terms(nv, [(mon.0.clone(), coef.clone())]);
                    }
                }
            }
            for (l, q) in slots.into_iter().enumerate() {
                a.set(i, l * m + j, q);
            }
        }
    }
    let b = PMat::from_fn(s, m, nv, |row, col| {
        let (l, r) = (row / m, row % m);
        if r != col {
            MultiPoly::zero(nv)
        } else if l < nv {
            MultiPoly::var(nv, l)
        } else {
            MultiPoly::one(nv)
        }
    });
    Ok((a, b))
}

/// The square embedding `[[I_s, b], [-a, 0]]` of dimension `m + s`, whose
/// determinant equals `det(a * b)`.
pub fn embed_square(a: &PMat, b: &PMat) -> Result<PMat, DetRepError> {
    if a.cols() != b.rows() || a.rows() != b.cols() || a.nvars() != b.nvars() {
        return Err(DetRepError::ShapeMismatch(
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
        ));
    }
    let (m, s) = (a.rows(), a.cols());
    let nv = a.nvars();
    Ok(PMat::from_fn(m + s, m + s, nv, |i, j| {
        if i < s && j < s {
            if i == j {
                MultiPoly::one(nv)
            } else {
                MultiPoly::zero(nv)
            }
        } else if i < s {
            b.at(i, j - s).clone()
        } else if j < s {
            -a.at(i - s, j)
        } else {
            MultiPoly::zero(nv)
        }
    }))
}

/// A square matrix with affine entries whose determinant is exactly `p`.
/// Degrees 0 and 1 short-circuit to the 1 x 1 matrix `[p]`; otherwise the
/// factor/embed recursion runs once per degree step, giving dimension
/// `(nvars + 2)^(deg p - 1)` with no size optimization.
pub fn determinantal_rep(p: &MultiPoly) -> PMat {
    let mut n = PMat::from_rows(p.nvars(), vec![vec![p.clone()]]);
    let mut d = p.total_degree().unwrap_or(0);
    while d > 1 {
        let (a, b) = factor_ab(&n, d).expect("degrees shrink by one per step");
        n = embed_square(&a, &b).expect("factor_ab shapes are compatible");
        d -= 1;
    }
    n
}

pub fn is_affine(n: &PMat) -> bool {
    (0..n.rows()).all(|i| {
        (0..n.cols()).all(|j| n.at(i, j).total_degree().map_or(true, |d| d <= 1))
    })
}

/// Expected dimension of the unoptimized representation.
pub fn expected_dimension(nvars: usize, degree: u32) -> usize {
    if degree <= 1 {
        1
    } else {
        (nvars + 2).pow(degree - 1)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum VerifyMode {
    Symbolic,
    Randomized { trials: u32, seed: u64 },
}

/// Check `det(n) = p`. Symbolic mode expands the determinant by
/// fraction-free elimination and compares term maps; randomized mode
/// compares exact evaluations at `trials` integer points drawn from
/// `[-10^6, 10^6]` (per-trial failure probability at most `deg / 2x10^6`).
pub fn verify_rep(n: &PMat, p: &MultiPoly, mode: VerifyMode) -> bool {
    if n.rows() != n.cols() || n.nvars() != p.nvars() {
        return false;
    }
    match mode {
        VerifyMode::Symbolic => n.det() == *p,
        VerifyMode::Randomized { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..trials).all(|_| {
                let point: Vec<Rat> = (0..p.nvars())
                    .map(|_| rat_int(rng.gen_range(-1_000_000i64..=1_000_000)))
                    .collect();
                let det = n.eval(&point).det();
                det == p.eval(&point).expect("point length matches")
            })
        }
    }
}

/// Optional post-pass: repeatedly expand along rows (or columns) that carry
/// a single nonzero constant entry, scaling a row of the minor so the
/// determinant is preserved exactly. Sparse inputs produce many such rows.
pub fn compress(n: &PMat) -> PMat {
    let mut cur = n.clone();
    loop {
        if cur.rows() <= 1 {
            return cur;
        }
        let dim = cur.rows();
        let mut target: Option<(usize, usize)> = None;
        // rows with a single nonzero constant entry
        'rows: for i in 0..dim {
            let mut nonzero = None;
            for j in 0..dim {
                let e = cur.at(i, j);
                if !e.is_zero() {
                    if nonzero.is_some() || e.total_degree() != Some(0) {
                        continue 'rows;
                    }
                    nonzero = Some(j);
                }
            }
            if let Some(j) = nonzero {
                target = Some((i, j));
                break;
            }
        }
        if target.is_none() {
            'cols: for j in 0..dim {
                let mut nonzero = None;
                for i in 0..dim {
                    let e = cur.at(i, j);
                    if !e.is_zero() {
                        if nonzero.is_some() || e.total_degree() != Some(0) {
                            continue 'cols;
                        }
                        nonzero = Some(i);
                    }
                }
                if let Some(i) = nonzero {
                    target = Some((i, j));
                    break;
                }
            }
        }
        let Some((pi, pj)) = target else {
            return cur;
        };
        let c = cur.at(pi, pj).coeff(&Monomial(vec![0; cur.nvars()]));
        let sign: Rat = if (pi + pj) % 2 == 0 {
            rat_int(1)
        } else {
            rat_int(-1)
        };
        let factor = &sign * &c;
        let rows: Vec<usize> = (0..dim).filter(|&r| r != pi).collect();
        let cols: Vec<usize> = (0..dim).filter(|&r| r != pj).collect();
        let mut minor = cur.submatrix(&rows, &cols);
        for j in 0..minor.cols() {
            let scaled = minor.at(0, j).scale(&factor);
            minor.set(0, j, scaled);
        }
        cur = minor;
    }
}
