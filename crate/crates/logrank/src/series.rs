//! Truncated formal power series over Q with exact exp/log and complete
//! detection of integer relations among truncations.
//!
//! Every series carries its truncation order T (coefficients of t^0..t^(T-1)
//! are known); arithmetic results carry the minimum of the input orders. A
//! detected relation is always qualified "valid to order T": truncation can
//! create relations that the untruncated series do not satisfy.

use crate::linalg::{column_hnf, kernel_basis, IMat};
use crate::rat::{Int, Rat};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term must be zero")]
    NonzeroConstantTerm,
    #[error("constant term must be one")]
    ConstantTermNotOne,
    #[error("series is not invertible (zero constant term)")]
    NotInvertible,
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
}

/// An element of Q[[t]] known modulo t^order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "order must be positive");
        TruncatedSeries {
            order: coeffs.len(),
            coeffs,
        }
    }

    pub fn zero(order: usize) -> Self {
        assert!(order >= 1);
        TruncatedSeries {
            order,
            coeffs: vec![Rat::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    /// The variable t (zero when the order is 1).
    pub fn var(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = Rat::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1);
        let order = order.min(self.order);
        TruncatedSeries {
            order,
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        TruncatedSeries {
            order,
            coeffs: (0..order)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        TruncatedSeries {
            order,
            coeffs: (0..order)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = vec![Rat::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { order, coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let order = self.order;
        let c0_inv = self.coeffs[0].recip();
        let mut out = vec![Rat::zero(); order];
        out[0] = c0_inv.clone();
        for k in 1..order {
            let mut acc = Rat::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(acc * &c0_inv);
        }
        Ok(TruncatedSeries {
            order,
            coeffs: out,
        })
    }

    /// Integer power, negative exponents via inversion.
    pub fn powi(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::one(self.order);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order)
    }
}

/// exp(y) mod t^T for y with zero constant term, by the exact recurrence
/// from z' = y' z: k z_k = sum_{j=1..k} j y_j z_{k-j}.
pub fn series_exp(y: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    if !y.coeffs[0].is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    let t = y.order;
    let mut z = vec![Rat::zero(); t];
    z[0] = Rat::one();
    for k in 1..t {
        let mut acc = Rat::zero();
        for j in 1..=k {
            if !y.coeffs[j].is_zero() {
                acc += Rat::from_integer(Int::from(j as i64)) * &y.coeffs[j] * &z[k - j];
            }
        }
        z[k] = acc / Rat::from_integer(Int::from(k as i64));
    }
    Ok(TruncatedSeries::from_coeffs(z))
}

/// log(z) mod t^T for z with constant term one; inverse of `series_exp`.
pub fn series_log(z: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    if !z.coeffs[0].is_one() {
        return Err(SeriesError::ConstantTermNotOne);
    }
    let t = z.order;
    let mut y = vec![Rat::zero(); t];
    for k in 1..t {
        let mut acc = Rat::zero();
        for j in 1..k {
            if !y[j].is_zero() {
                acc += Rat::from_integer(Int::from(j as i64)) * &y[j] * &z.coeffs[k - j];
            }
        }
        y[k] = &z.coeffs[k] - &(acc / Rat::from_integer(Int::from(k as i64)));
    }
    Ok(TruncatedSeries::from_coeffs(y))
}

/// The complete lattice of integer vectors m with sum m_i y_i = 0 mod t^T
/// (T = least input order), as columns in Hermite form. Inputs must have
/// zero constant terms. The relations are valid to order T only.
pub fn relation_detect(ys: &[TruncatedSeries]) -> Result<IMat, SeriesError> {
    if ys.is_empty() {
        return Err(SeriesError::LengthMismatch("no series given".into()));
    }
    for y in ys {
        if !y.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
    }
    let t = ys.iter().map(|y| y.order).min().expect("nonempty");
    let n = ys.len();
    // (T-1) x n rational coefficient matrix; scale rows to integers
    // (row scaling does not change the integer kernel)
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(t - 1);
    for k in 1..t {
        let mut den = Int::one();
        for y in ys {
            den = num_integer::lcm(den, y.coeffs[k].denom().clone());
        }
        rows.push(
            ys.iter()
                .map(|y| y.coeffs[k].numer() * (&den / y.coeffs[k].denom()))
                .collect(),
        );
    }
    let coeff = IMat::from_rows(rows);
    let kernel = kernel_basis(&coeff);
    let (h, _) = column_hnf(&kernel);
    let nonzero: Vec<Vec<Int>> = (0..h.cols())
        .map(|j| h.col(j))
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let _ = n;
    Ok(IMat::from_cols(nonzero))
}

/// Exact check of `prod exp(y_i)^{m_i} = exp(sum m_i y_i) mod t^T`.
pub fn product_exp_identity(
    ys: &[TruncatedSeries],
    ms: &[i64],
) -> Result<bool, SeriesError> {
    if ys.len() != ms.len() {
        return Err(SeriesError::LengthMismatch(format!(
            "{} series vs {} multipliers",
            ys.len(),
            ms.len()
        )));
    }
    if ys.is_empty() {
        return Ok(true);
    }
    let t = ys.iter().map(|y| y.order).min().expect("nonempty");
    let mut product = TruncatedSeries::one(t);
    let mut combo = TruncatedSeries::zero(t);
    for (y, &m) in ys.iter().zip(ms) {
        let y = y.truncate(t);
        product = product.mul(&series_exp(&y)?.powi(m)?);
        combo = combo.add(&y.scale(&Rat::from_integer(Int::from(m))));
    }
    Ok(product == series_exp(&combo)?)
}
