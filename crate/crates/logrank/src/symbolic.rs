//! Matrices over a formal symbol space: entries are Q-linear combinations
//! of symbols `l_1..l_r`, optionally including the constant symbol `1`.
//!
//! Symbols are treated as Q-linearly independent, so the rank computed here
//! is the generic (structural) one: the matrix `M = sum l_i M_i` is mapped
//! to `M_x = sum x_i M_i` over the rational function field and ranked
//! there. If the user's symbols secretly satisfy relations, the structural
//! rank is an upper bound for the actual rank, nothing more.

use crate::linalg::{PMat, QMat};
use crate::poly::MultiPoly;
use crate::rat::{primitive_integer_vector, Rat};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("symbol names must be distinct")]
    DuplicateSymbol,
    #[error("coefficient vector has length {0}, symbol space has {1}")]
    BadCoeffLength(usize, usize),
    #[error("basis change matrix is singular")]
    SingularBasis,
    #[error("basis change matrix must be {0} x {0}")]
    BadBasisShape(usize),
    #[error("matrix has no constant symbol")]
    NoConstantSymbol,
}

/// An ordered basis of formal symbols. When `one_index` is set, that
/// position denotes the constant symbol 1 (the space models L + Q rather
/// than L alone).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSpace {
    names: Vec<String>,
    one_index: Option<usize>,
}

impl SymbolSpace {
    pub fn new(names: Vec<String>) -> Result<Self, SymbolicError> {
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(SymbolicError::DuplicateSymbol);
            }
        }
        let one_index = names.iter().position(|n| n == "1");
        Ok(SymbolSpace { names, one_index })
    }

    pub fn fresh(r: usize) -> Self {
        SymbolSpace {
            names: (1..=r).map(|i| format!("l{i}")).collect(),
            one_index: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn includes_one(&self) -> bool {
        self.one_index.is_some()
    }

    pub fn one_index(&self) -> Option<usize> {
        self.one_index
    }
}

/// A Q-linear combination of the symbols of a space: just the coefficient
/// vector, in basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinCombo(pub Vec<Rat>);

impl LinCombo {
    pub fn zero(r: usize) -> Self {
        LinCombo(vec![Rat::zero(); r])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add_scaled(&mut self, other: &LinCombo, s: &Rat) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += s * b;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    space: SymbolSpace,
    rows: usize,
    cols: usize,
    entries: Vec<LinCombo>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Rows,
    Cols,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Rows => write!(f, "rows"),
            Side::Cols => write!(f, "cols"),
        }
    }
}

/// A nonzero rational vector annihilating one side of the matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceCertificate {
    pub side: Side,
    pub coeffs: Vec<Rat>,
}

impl SymbolicMatrix {
    pub fn new(
        space: SymbolSpace,
        rows: usize,
        cols: usize,
        entries: Vec<LinCombo>,
    ) -> Result<Self, SymbolicError> {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let r = space.dim();
        for e in &entries {
            if e.0.len() != r {
                return Err(SymbolicError::BadCoeffLength(e.0.len(), r));
            }
        }
        Ok(SymbolicMatrix {
            space,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_coeff_grid(space: SymbolSpace, grid: Vec<Vec<Vec<Rat>>>) -> Self {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        let entries: Vec<LinCombo> = grid
            .into_iter()
            .flat_map(|row| row.into_iter().map(LinCombo))
            .collect();
        Self::new(space, rows, cols, entries).expect("grid coefficients must match the space")
    }

    /// Assemble from the decomposition `M = sum l_i M_i`.
    pub fn from_components(space: SymbolSpace, components: &[QMat]) -> Self {
        assert_eq!(components.len(), space.dim());
        assert!(!components.is_empty());
        let rows = components[0].rows();
        let cols = components[0].cols();
        assert!(components
            .iter()
            .all(|m| m.rows() == rows && m.cols() == cols));
        let entries = (0..rows)
            .flat_map(|i| {
                (0..cols).map(move |j| {
                    LinCombo(components.iter().map(|m| m[(i, j)].clone()).collect())
                })
            })
            .collect();
        SymbolicMatrix {
            space,
            rows,
            cols,
            entries,
        }
    }

    pub fn space(&self) -> &SymbolSpace {
        &self.space
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &LinCombo {
        &self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// The component matrices `M_i` with `M = sum l_i M_i`.
    pub fn decompose(&self) -> Vec<QMat> {
        (0..self.space.dim())
            .map(|k| QMat::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).0[k].clone()))
            .collect()
    }

    /// The generic matrix `M_x = sum x_i M_i` over Q[x_1..x_r]; the constant
    /// symbol, when present, is carried as an ordinary variable.
    pub fn to_poly_matrix(&self) -> PMat {
        let r = self.space.dim();
        PMat::from_fn(self.rows, self.cols, r, |i, j| {
            MultiPoly::from_terms(
                r,
                self.entry(i, j).0.iter().enumerate().map(|(k, c)| {
                    let mut exps = vec![0u32; r];
                    exps[k] = 1;
                    (exps, c.clone())
                }),
            )
        })
    }

    /// Rank of the generic matrix over the rational function field.
    pub fn structural_rank(&self) -> usize {
        self.to_poly_matrix().rank()
    }

    /// Rank after specializing the constant symbol to 1 (the object on the
    /// other side of the homogenization step). Errors when the space has no
    /// constant symbol.
    pub fn specialized_rank(&self) -> Result<usize, SymbolicError> {
        let k = self.space.one_index().ok_or(SymbolicError::NoConstantSymbol)?;
        let m = self.to_poly_matrix();
        let one = Rat::from_integer(1.into());
        let spec = PMat::from_fn(m.rows(), m.cols(), m.nvars(), |i, j| {
            m.at(i, j).substitute(k, &one)
        });
        Ok(spec.rank())
    }

    /// Re-express the matrix in a new symbol basis. Row `j` of `t` gives the
    /// expansion of the new symbol `l'_j` in the old basis, so coefficient
    /// vectors transform by `(t^T)^{-1}`.
    pub fn basis_change(&self, t: &QMat) -> Result<SymbolicMatrix, SymbolicError> {
        let r = self.space.dim();
        if t.rows() != r || t.cols() != r {
            return Err(SymbolicError::BadBasisShape(r));
        }
        let inv_t = t
            .transpose()
            .inverse()
            .ok_or(SymbolicError::SingularBasis)?;
        let entries = self
            .entries
            .iter()
            .map(|e| LinCombo(inv_t.mul_vec(&e.0)))
            .collect();
        Ok(SymbolicMatrix {
            space: SymbolSpace::fresh(r),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Left-multiply by a rational matrix, extending Q-linearly.
    pub fn left_mul(&self, p: &QMat) -> SymbolicMatrix {
        assert_eq!(p.cols(), self.rows);
        let r = self.space.dim();
        let entries = (0..p.rows())
            .flat_map(|i| {
                (0..self.cols).map(move |j| {
                    let mut acc = LinCombo::zero(r);
                    for k in 0..self.rows {
                        if !p[(i, k)].is_zero() {
                            acc.add_scaled(self.entry(k, j), &p[(i, k)]);
                        }
                    }
                    acc
                })
            })
            .collect();
        SymbolicMatrix {
            space: self.space.clone(),
            rows: p.rows(),
            cols: self.cols,
            entries,
        }
    }

    /// Right-multiply by a rational matrix.
    pub fn right_mul(&self, q: &QMat) -> SymbolicMatrix {
        assert_eq!(self.cols, q.rows());
        let r = self.space.dim();
        let entries = (0..self.rows)
            .flat_map(|i| {
                (0..q.cols()).map(move |j| {
                    let mut acc = LinCombo::zero(r);
                    for k in 0..self.cols {
                        if !q[(k, j)].is_zero() {
                            acc.add_scaled(self.entry(i, k), &q[(k, j)]);
                        }
                    }
                    acc
                })
            })
            .collect();
        SymbolicMatrix {
            space: self.space.clone(),
            rows: self.rows,
            cols: q.cols(),
            entries,
        }
    }

    /// Block-diagonal direct sum (shared symbol space).
    pub fn direct_sum(&self, other: &SymbolicMatrix) -> SymbolicMatrix {
        assert_eq!(self.space, other.space);
        let r = self.space.dim();
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut entries = vec![LinCombo::zero(r); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[i * cols + j] = self.entry(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                entries[(self.rows + i) * cols + self.cols + j] = other.entry(i, j).clone();
            }
        }
        SymbolicMatrix {
            space: self.space.clone(),
            rows,
            cols,
            entries,
        }
    }

    /// A nonzero rational dependence among the rows or, failing that, the
    /// columns, found as an exact kernel of the coefficient flattening.
    /// Returns `None` when both sides are independent over Q.
    pub fn row_col_dependence(&self) -> Option<DependenceCertificate> {
        let r = self.space.dim();
        // rows: m x (n*r) flattening
        let row_flat = QMat::from_fn(self.rows, self.cols * r, |i, jk| {
            let (j, k) = (jk / r, jk % r);
            self.entry(i, j).0[k].clone()
        });
        if let Some(v) = row_flat.left_kernel().into_iter().next() {
            return Some(DependenceCertificate {
                side: Side::Rows,
                coeffs: canonical(&v),
            });
        }
        let col_flat = QMat::from_fn(self.cols, self.rows * r, |j, ik| {
            let (i, k) = (ik / r, ik % r);
            self.entry(i, j).0[k].clone()
        });
        if let Some(v) = col_flat.left_kernel().into_iter().next() {
            return Some(DependenceCertificate {
                side: Side::Cols,
                coeffs: canonical(&v),
            });
        }
        None
    }

    /// Check that a dependence certificate annihilates its side exactly.
    pub fn check_dependence(&self, cert: &DependenceCertificate) -> bool {
        if cert.coeffs.iter().all(|c| c.is_zero()) {
            return false;
        }
        let r = self.space.dim();
        match cert.side {
            Side::Rows => {
                if cert.coeffs.len() != self.rows {
                    return false;
                }
                (0..self.cols).all(|j| {
                    let mut acc = LinCombo::zero(r);
                    for (i, c) in cert.coeffs.iter().enumerate() {
                        acc.add_scaled(self.entry(i, j), c);
                    }
                    acc.is_zero()
                })
            }
            Side::Cols => {
                if cert.coeffs.len() != self.cols {
                    return false;
                }
                (0..self.rows).all(|i| {
                    let mut acc = LinCombo::zero(r);
                    for (j, c) in cert.coeffs.iter().enumerate() {
                        acc.add_scaled(self.entry(i, j), c);
                    }
                    acc.is_zero()
                })
            }
        }
    }
}

fn canonical(v: &[Rat]) -> Vec<Rat> {
    primitive_integer_vector(v)
        .into_iter()
        .map(Rat::from_integer)
        .collect()
}

/// The singular 3x3 matrix [[x, z, 0], [0, y, -x], [y, 0, z]] over three
/// independent symbols; its determinant vanishes identically while rows and
/// columns are independent over Q.
pub fn singular_3x3_example() -> SymbolicMatrix {
    let space = SymbolSpace::new(vec!["x".into(), "y".into(), "z".into()]).unwrap();
    let c = |x: i64, y: i64, z: i64| {
        vec![
            Rat::from_integer(x.into()),
            Rat::from_integer(y.into()),
            Rat::from_integer(z.into()),
        ]
    };
    SymbolicMatrix::from_coeff_grid(
        space,
        vec![
            vec![c(1, 0, 0), c(0, 0, 1), c(0, 0, 0)],
            vec![c(0, 0, 0), c(0, 1, 0), c(-1, 0, 0)],
            vec![c(0, 1, 0), c(0, 0, 0), c(0, 0, 1)],
        ],
    )
}
