//! Dense matrices over Q with exact rank, kernel, determinant and inverse.
//!
//! Kernel bases are canonicalized to primitive integer vectors (content 1,
//! first nonzero entry positive) so certificates are deterministic.

use crate::rat::{primitive_integer_vector, Rat};
use num_traits::{One, Zero};
use std::fmt;

/// Row-major matrix over Q. Zero-dimensional matrices are allowed; they show
/// up as empty subgroup bases and empty kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        QMat {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        QMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() && !other[(k, j)].is_zero() {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    if !self[(i, k)].is_zero() && !v[k].is_zero() {
                        acc += &self[(i, k)] * &v[k];
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &(&f * &self[(r, j)]);
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Rank together with the original row and column indices of the pivots,
    /// so a nonsingular `rank x rank` minor can be extracted.
    pub fn rank_profile(&self) -> (usize, Vec<usize>, Vec<usize>) {
        let mut m = self.clone();
        let mut row_idx: Vec<usize> = (0..self.rows).collect();
        let mut pivot_rows = Vec::new();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            row_idx.swap(r, p);
            let inv = m[(r, c)].recip();
            for i in r + 1..self.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..self.cols {
                    let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                    m[(i, j)] = v;
                }
            }
            pivot_rows.push(row_idx[r]);
            pivot_cols.push(c);
            r += 1;
        }
        (r, pivot_rows, pivot_cols)
    }

    /// Exact rank and a canonical basis of the right kernel. Each basis
    /// vector is a primitive integer vector; vector k has its distinguishing
    /// free coordinate nonzero and all later free coordinates zero.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Rat>>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let mut kernel = Vec::with_capacity(self.cols - rank);
        let mut next_pivot = 0;
        for c in 0..self.cols {
            if next_pivot < pivots.len() && pivots[next_pivot] == c {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[c] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, c)].clone();
            }
            let ints = primitive_integer_vector(&v);
            kernel.push(ints.into_iter().map(Rat::from_integer).collect());
        }
        (rank, kernel)
    }

    /// Canonical basis of the left kernel (vectors `w` with `w^T A = 0`).
    pub fn left_kernel(&self) -> Vec<Vec<Rat>> {
        self.transpose().rank_kernel().1
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            let inv = pivot.recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let v = &m[(i, j)] - &(&f * &m[(c, j)]);
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !self.det().is_zero()
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(QMat::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Extend the given independent rows to a basis of Q^n by greedily
    /// appending standard basis vectors; returns an invertible n x n matrix
    /// whose first rows are the inputs.
    pub fn complete_rows_to_basis(rows: &[Vec<Rat>], n: usize) -> QMat {
        let mut chosen: Vec<Vec<Rat>> = rows.to_vec();
        assert!(chosen.iter().all(|r| r.len() == n));
        let mut rank = QMat::from_rows(chosen.clone()).rank();
        assert_eq!(rank, chosen.len(), "input rows must be independent");
        for i in 0..n {
            if chosen.len() == n {
                break;
            }
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::one();
            let mut cand = chosen.clone();
            cand.push(e.clone());
            let r = QMat::from_rows(cand).rank();
            if r > rank {
                chosen.push(e);
                rank = r;
            }
        }
        assert_eq!(chosen.len(), n);
        QMat::from_rows(chosen)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(rows: Vec<Vec<i64>>) -> QMat {
        QMat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat_int).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_has_full_rank_empty_kernel() {
        let (rank, kernel) = QMat::identity(3).rank_kernel();
        assert_eq!(rank, 3);
        assert!(kernel.is_empty());
    }

    #[test]
    fn rank_one_kernel() {
        let (rank, kernel) = q(vec![vec![1, 2], vec![2, 4]]).rank_kernel();
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        // spanned by (-2, 1); the canonical representative is (2, -1)
        assert_eq!(kernel[0], vec![rat_int(2), rat_int(-1)]);
    }

    /// Elimination rank modulo a large prime (oracle for the rational rank).
    fn rank_mod_p(m: &QMat, p: u64) -> usize {
        let pb = int(p as i64);
        let to_fp = |x: &Rat| -> u64 {
            let n = ((x.numer() % &pb) + &pb) % &pb;
            let d = ((x.denom() % &pb) + &pb) % &pb;
            let n: u64 = n.try_into().unwrap();
            let d: u64 = d.try_into().unwrap();
            let mut inv = 1u64;
            let mut base = d % p;
            let mut e = p - 2;
            while e > 0 {
                if e & 1 == 1 {
                    inv = ((inv as u128 * base as u128) % p as u128) as u64;
                }
                base = ((base as u128 * base as u128) % p as u128) as u64;
                e >>= 1;
            }
            ((n as u128 * inv as u128) % p as u128) as u64
        };
        let mut a: Vec<Vec<u64>> = (0..m.rows())
            .map(|i| m.row(i).iter().map(to_fp).collect())
            .collect();
        let (rows, cols) = (m.rows(), m.cols());
        let mut rank = 0;
        for c in 0..cols {
            let Some(pr) = (rank..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(rank, pr);
            let pivot = a[rank][c];
            let mut inv = 1u64;
            let mut base = pivot;
            let mut e = p - 2;
            while e > 0 {
                if e & 1 == 1 {
                    inv = ((inv as u128 * base as u128) % p as u128) as u64;
                }
                base = ((base as u128 * base as u128) % p as u128) as u64;
                e >>= 1;
            }
            for i in rank + 1..rows {
                let f = ((a[i][c] as u128 * inv as u128) % p as u128) as u64;
                for j in c..cols {
                    let sub = (f as u128 * a[rank][j] as u128) % p as u128;
                    a[i][j] = ((a[i][j] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn random_rank_matches_modular_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..6 {
            let m = QMat::from_fn(5, 7, |_, _| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
            let rank = m.rank();
            // a handful of reductions modulo large primes; the max matches
            let p = 1_000_000_007u64;
            let oracle = rank_mod_p(&m, p);
            assert_eq!(rank, oracle);
            // sanity: kernel vectors actually lie in the kernel
            let (_, kernel) = m.rank_kernel();
            for v in kernel {
                assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn det_inverse_roundtrip() {
        let m = q(vec![vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 1]]);
        assert_eq!(m.det(), rat_int(7));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(3));
        let singular = q(vec![vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.det(), rat_int(0));
    }

    #[test]
    fn complete_basis() {
        let rows = vec![vec![rat_int(1), rat_int(1), rat_int(0)]];
        let b = QMat::complete_rows_to_basis(&rows, 3);
        assert!(b.is_invertible());
        assert_eq!(b.row(0), &rows[0][..]);
    }
}
