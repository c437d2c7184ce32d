//! Sparse multivariate polynomials over Q, plus the integer power-basis
//! recurrence for algebraic numbers given by an integral minimal polynomial.
//!
//! Monomials are exponent vectors ordered graded-lexicographically, so the
//! term map iterates (and serializes) in a canonical order.

use crate::rat::{content, Int, Rat};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("evaluation point has length {0}, polynomial has {1} variables")]
    PointLength(usize, usize),
}

/// Exponent vector of a single monomial. Total degree is the entry sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, `None` when some exponent would go negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: compare total degree, then exponents left to right.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Q. No stored coefficient is zero and
/// every monomial has exactly `nvars` exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial(exps), Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "monomial length must equal nvars");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Degree in variable `i`, `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    /// Leading term in graded-lex order, `None` for zero.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarMismatch(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarMismatch(self.nvars, other.nvars));
        }
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength(point.len(), self.nvars));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= point[i].pow(e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Homogenize with a fresh variable at index 0: every term is padded to
    /// the total degree of the polynomial, and substituting 1 for the new
    /// variable recovers the input.
    pub fn homogenize(&self) -> Self {
        let deg = self.total_degree().unwrap_or(0);
        let mut out = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut exps = Vec::with_capacity(self.nvars + 1);
            exps.push(deg - m.total_degree());
            exps.extend_from_slice(&m.0);
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Homogenize with a fresh variable at index 0, padding every term to
    /// the given target degree (which must be at least the total degree).
    pub fn homogenize_to(&self, target: u32) -> Self {
        assert!(self.total_degree().unwrap_or(0) <= target);
        let mut out = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut exps = Vec::with_capacity(self.nvars + 1);
            exps.push(target - m.total_degree());
            exps.extend_from_slice(&m.0);
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Substitute a rational value for variable `i`; the result keeps the
    /// variable (with exponent 0 everywhere), so the variable count is stable.
    pub fn substitute(&self, i: usize, value: &Rat) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut exps = m.0.clone();
            exps[i] = 0;
            let coef = if e > 0 {
                c * value.pow(e as i32)
            } else {
                c.clone()
            };
            out.add_term(Monomial(exps), coef);
        }
        out
    }

    /// Drop variable `i` entirely (it must not occur in any term).
    pub fn drop_var(&self, i: usize) -> Self {
        assert!(self.terms.keys().all(|m| m.0[i] == 0));
        let mut out = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.remove(i);
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Exact quotient `self / d`. Returns `None` if `d` does not divide
    /// `self` exactly (in particular for `d = 0`).
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.nvars, d.nvars);
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        if d.num_terms() == 1 {
            // monomial divisor: divide term by term
            let mut out = Self::zero(self.nvars);
            for (m, c) in &self.terms {
                let q = m.div(&dm)?;
                out.terms.insert(q, c / &dc);
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&dm)?;
            let qc = &rc / &dc;
            let t = MultiPoly::from_terms(self.nvars, [(qm.0.clone(), qc.clone())]);
            rem = &rem - &(&t * d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scale to integer coefficients with content 1; the sign is chosen so
    /// the graded-lex leading coefficient is positive. Zero stays zero.
    pub fn primitive_integer_scale(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = Int::one();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<Int> = self
            .terms
            .values()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let g = content(&ints);
        let lead_neg = ints.last().map(|x| x.is_negative()).unwrap_or(false);
        let scale = Rat::new(if lead_neg { -den } else { den }, g);
        self.scale(&scale)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ac = c.abs();
            let is_const = m.total_degree() == 0;
            if !ac.is_one() || is_const {
                write!(f, "{}", ac)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = "";
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    write!(f, "{sep}x{i}")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                    sep = "*";
                }
            }
        }
        Ok(())
    }
}

/// Integral minimal-polynomial data `c*x^d = b_{d-1} x^{d-1} + ... + b_0`
/// for an algebraic number of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPolyData {
    pub degree: usize,
    pub leading: Int,
    pub lower: Vec<Int>,
}

impl MinPolyData {
    pub fn new(leading: Int, lower: Vec<Int>) -> Self {
        assert!(!leading.is_zero(), "leading coefficient must be nonzero");
        assert!(!lower.is_empty(), "degree must be positive");
        MinPolyData {
            degree: lower.len(),
            leading,
            lower,
        }
    }
}

/// Coefficients `(a_{j,0}, ..., a_{j,d-1})` with `(c*alpha)^j = sum_s a_{j,s} alpha^s`,
/// computed by the integer recurrence: for `j < d` the expansion is `c^j alpha^j`,
/// and one step multiplies by `c*alpha` and rewrites `c*alpha^d` via the
/// minimal polynomial, giving
/// `a_{j,0} = a_{j-1,d-1} b_0` and `a_{j,s} = a_{j-1,d-1} b_s + c a_{j-1,s-1}`.
pub fn power_basis_coeffs(m: &MinPolyData, j: u64) -> Vec<Int> {
    let d = m.degree;
    if (j as usize) < d {
        let mut a = vec![Int::zero(); d];
        a[j as usize] = m.leading.pow(j as u32);
        return a;
    }
    let mut a: Vec<Int> = (0..d)
        .map(|s| {
            if s == d - 1 {
                m.leading.pow((d - 1) as u32)
            } else {
                Int::zero()
            }
        })
        .collect();
    for _ in d as u64..=j {
        let top = a[d - 1].clone();
        let mut next = vec![Int::zero(); d];
        next[0] = &top * &m.lower[0];
        for s in 1..d {
            next[s] = &top * &m.lower[s] + &m.leading * &a[s - 1];
        }
        a = next;
    }
    a
}
