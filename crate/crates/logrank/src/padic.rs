//! Exact-precision arithmetic in Q_p: numbers carry their valuation, unit
//! part and absolute precision, and every operation propagates precision
//! pessimistically, so a result is never claimed more precise than it is.
//!
//! The logarithm is built in layers: the 1-unit series, the unit extension
//! via `log(x) = log(x^n)/n` with `n = p - 1` (n = 2 for p = 2), and the
//! full extension that drops the `p`-power part (the Iwasawa normalization
//! `log_p(p) = 0`). The exponential enforces its convergence domain
//! strictly: `v(x) >= 1` for odd `p`, `v(x) >= 2` for `p = 2`. Series are
//! evaluated with derived guard digits covering the `v_p(n)` and `v_p(n!)`
//! divisions, and the claimed precision of the result is computed, not
//! assumed.

use crate::mult_rel::theta;
use crate::rat::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PadicError {
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by a value indistinguishable from zero")]
    DivisionByZero,
    #[error("zero input")]
    ZeroInput,
    #[error("input is not a p-adic unit: {0}")]
    NotAUnit(String),
    #[error("outside the convergence domain: {0}")]
    OutsideDomain(String),
    #[error("insufficient working precision: {0}; retry with more digits")]
    InsufficientPrecision(String),
    #[error("bad root datum: {0}")]
    BadRoot(String),
    #[error("exponent does not fit in 64 bits")]
    ExponentTooLarge,
}

fn pow_int(p: u64, e: i64) -> Int {
    assert!(e >= 0);
    Int::from(p).pow(e as u32)
}

fn mod_inverse(a: &Int, modulus: &Int) -> Option<Int> {
    let e = a.extended_gcd(modulus);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(modulus))
}

/// An element of Q_p known modulo `p^abs_prec`: either zero at that
/// precision, or `p^val * unit` with `unit` a unit residue modulo
/// `p^(abs_prec - val)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicNumber {
    prime: u64,
    /// `None` means indistinguishable from zero at this precision.
    val: Option<i64>,
    unit: Int,
    abs_prec: i64,
}

impl PadicNumber {
    pub fn zero_at(prime: u64, abs_prec: i64) -> Self {
        PadicNumber {
            prime,
            val: None,
            unit: Int::zero(),
            abs_prec,
        }
    }

    pub fn one(prime: u64, abs_prec: i64) -> Self {
        Self::from_int_mod(prime, Int::one(), abs_prec)
    }

    /// Interpret an integer representative known modulo `p^abs_prec`.
    pub fn from_int_mod(prime: u64, value: Int, abs_prec: i64) -> Self {
        assert!(abs_prec >= 1, "absolute precision must be positive");
        let modulus = pow_int(prime, abs_prec);
        let mut v = value.mod_floor(&modulus);
        if v.is_zero() {
            return Self::zero_at(prime, abs_prec);
        }
        let p = Int::from(prime);
        let mut val = 0i64;
        while (&v % &p).is_zero() {
            v /= &p;
            val += 1;
        }
        let rel = abs_prec - val;
        if rel <= 0 {
            return Self::zero_at(prime, abs_prec);
        }
        let unit = v.mod_floor(&pow_int(prime, rel));
        PadicNumber {
            prime,
            val: Some(val),
            unit,
            abs_prec,
        }
    }

    /// Embed an exact rational at the given absolute precision.
    pub fn from_rat(x: &Rat, prime: u64, abs_prec: i64) -> Self {
        if x.is_zero() {
            return Self::zero_at(prime, abs_prec);
        }
        let p = Int::from(prime);
        let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
        let mut val = 0i64;
        while (&num % &p).is_zero() {
            num /= &p;
            val += 1;
        }
        while (&den % &p).is_zero() {
            den /= &p;
            val -= 1;
        }
        let rel = abs_prec - val;
        if rel <= 0 {
            return Self::zero_at(prime, abs_prec);
        }
        let modulus = pow_int(prime, rel);
        let inv = mod_inverse(&den.mod_floor(&modulus), &modulus)
            .expect("denominator unit part is invertible");
        let unit = (num * inv).mod_floor(&modulus);
        PadicNumber {
            prime,
            val: Some(val),
            unit,
            abs_prec,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `None` when the value is indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        self.val
    }

    pub fn abs_prec(&self) -> i64 {
        self.abs_prec
    }

    pub fn unit_part(&self) -> &Int {
        &self.unit
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.val.is_none()
    }

    /// Relative precision of the unit part (zero for a vanished value).
    pub fn rel_prec(&self) -> i64 {
        match self.val {
            Some(v) => self.abs_prec - v,
            None => 0,
        }
    }

    /// Reduce the absolute precision (the value is unchanged otherwise).
    pub fn truncate(&self, abs_prec: i64) -> Self {
        assert!(abs_prec >= 1);
        if abs_prec >= self.abs_prec {
            return self.clone();
        }
        match self.val {
            None => Self::zero_at(self.prime, abs_prec),
            Some(v) => {
                if v >= abs_prec {
                    Self::zero_at(self.prime, abs_prec)
                } else {
                    PadicNumber {
                        prime: self.prime,
                        val: Some(v),
                        unit: self.unit.mod_floor(&pow_int(self.prime, abs_prec - v)),
                        abs_prec,
                    }
                }
            }
        }
    }

    fn check_prime(&self, other: &Self) -> Result<(), PadicError> {
        if self.prime != other.prime {
            return Err(PadicError::PrimeMismatch(self.prime, other.prime));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_prime(other)?;
        let k = self.abs_prec.min(other.abs_prec);
        match (self.val, other.val) {
            (None, _) => Ok(other.truncate(k)),
            (_, None) => Ok(self.truncate(k)),
            (Some(va), Some(vb)) => {
                let v0 = va.min(vb);
                let rel = k - v0;
                if rel <= 0 {
                    return Ok(Self::zero_at(self.prime, k));
                }
                let modulus = pow_int(self.prime, rel);
                let ra = (&self.unit * pow_int(self.prime, va - v0)).mod_floor(&modulus);
                let rb = (&other.unit * pow_int(self.prime, vb - v0)).mod_floor(&modulus);
                let s = (ra + rb).mod_floor(&modulus);
                let shifted = Self::from_int_mod(self.prime, s, rel);
                Ok(shifted.shift_valuation(v0, k))
            }
        }
    }

    /// Multiply the value by `p^shift` and clamp to the given precision.
    fn shift_valuation(&self, shift: i64, abs_prec: i64) -> Self {
        match self.val {
            None => Self::zero_at(self.prime, self.abs_prec + shift).truncate_safe(abs_prec),
            Some(v) => PadicNumber {
                prime: self.prime,
                val: Some(v + shift),
                unit: self.unit.clone(),
                abs_prec: self.abs_prec + shift,
            }
            .truncate_safe(abs_prec),
        }
    }

    fn truncate_safe(&self, abs_prec: i64) -> Self {
        if abs_prec >= self.abs_prec {
            self.clone()
        } else {
            self.truncate(abs_prec)
        }
    }

    pub fn neg(&self) -> Self {
        match self.val {
            None => self.clone(),
            Some(v) => {
                let modulus = pow_int(self.prime, self.abs_prec - v);
                PadicNumber {
                    prime: self.prime,
                    val: Some(v),
                    unit: (-&self.unit).mod_floor(&modulus),
                    abs_prec: self.abs_prec,
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_prime(other)?;
        match (self.val, other.val) {
            (None, None) => Ok(Self::zero_at(
                self.prime,
                self.abs_prec + other.abs_prec,
            )),
            (None, Some(vb)) => Ok(Self::zero_at(self.prime, self.abs_prec + vb)),
            (Some(va), None) => Ok(Self::zero_at(self.prime, other.abs_prec + va)),
            (Some(va), Some(vb)) => {
                let rel = self.rel_prec().min(other.rel_prec());
                let modulus = pow_int(self.prime, rel);
                let unit = (&self.unit * &other.unit).mod_floor(&modulus);
                Ok(PadicNumber {
                    prime: self.prime,
                    val: Some(va + vb),
                    unit,
                    abs_prec: va + vb + rel,
                })
            }
        }
    }

    pub fn inverse(&self) -> Result<Self, PadicError> {
        match self.val {
            None => Err(PadicError::DivisionByZero),
            Some(v) => {
                let rel = self.rel_prec();
                let modulus = pow_int(self.prime, rel);
                let unit = mod_inverse(&self.unit, &modulus)
                    .expect("unit part is invertible by construction");
                Ok(PadicNumber {
                    prime: self.prime,
                    val: Some(-v),
                    unit,
                    abs_prec: -v + rel,
                })
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_prime(other)?;
        self.mul(&other.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, PadicError> {
        if e == 0 {
            return Ok(Self::one(self.prime, self.rel_prec().max(1)));
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc: Option<PadicNumber> = None;
        let mut cur = base;
        let mut rest = e.unsigned_abs();
        while rest > 0 {
            if rest & 1 == 1 {
                acc = Some(match acc {
                    None => cur.clone(),
                    Some(a) => a.mul(&cur)?,
                });
            }
            rest >>= 1;
            if rest > 0 {
                cur = cur.mul(&cur)?;
            }
        }
        Ok(acc.expect("e != 0"))
    }

    /// Whether the two values agree modulo `p^k`.
    pub fn agrees_at(&self, other: &Self, k: i64) -> bool {
        if self.prime != other.prime {
            return false;
        }
        if self.abs_prec < k || other.abs_prec < k {
            return false;
        }
        match self.sub(other) {
            Ok(d) => d.truncate(k).is_zero_at_precision(),
            Err(_) => false,
        }
    }
}

impl fmt::Display for PadicNumber {
    /// Digit expansion `d0*p^v + d1*p^(v+1) + ... + O(p^k)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        match self.val {
            None => write!(f, "O({p}^{k})", k = self.abs_prec),
            Some(v) => {
                let mut digits = Vec::new();
                let mut rest = self.unit.clone();
                let pb = Int::from(p);
                for _ in 0..self.rel_prec() {
                    let (q, r) = rest.div_mod_floor(&pb);
                    digits.push(r);
                    rest = q;
                }
                let mut wrote = false;
                for (i, d) in digits.iter().enumerate() {
                    if d.is_zero() {
                        continue;
                    }
                    if wrote {
                        write!(f, " + ")?;
                    }
                    let e = v + i as i64;
                    if e == 0 {
                        write!(f, "{d}")?;
                    } else if e == 1 {
                        write!(f, "{d}*{p}")?;
                    } else {
                        write!(f, "{d}*{p}^{e}")?;
                    }
                    wrote = true;
                }
                if !wrote {
                    write!(f, "0")?;
                }
                write!(f, " + O({p}^{k})", k = self.abs_prec)
            }
        }
    }
}

fn ilog(p: u64, n: u64) -> i64 {
    let mut acc = 0i64;
    let mut x = n;
    while x >= p {
        x /= p;
        acc += 1;
    }
    acc
}

fn vp_u64(p: u64, mut n: u64) -> i64 {
    let mut acc = 0;
    while n % p == 0 {
        n /= p;
        acc += 1;
    }
    acc
}

fn vp_factorial(p: u64, n: u64) -> i64 {
    let mut acc = 0i64;
    let mut q = n / p;
    while q > 0 {
        acc += q as i64;
        q /= p;
    }
    acc
}

/// `log(1 + y) mod p^target` for `y` divisible by `p` (held as an integer
/// representative modulo at least `p^(target + guard)`), together with the
/// derived guard bookkeeping. The caller must pass `y` at working precision
/// `target + guard(target, w)` where `w = v_p(y) >= 1`.
fn log_one_unit_guard(p: u64, w: i64, target: i64) -> (u64, i64) {
    // smallest T with n*w - v_p(n) >= target for all n > T
    let mut t = 1u64;
    let mut n = 1u64;
    loop {
        if (n as i64) * w - ilog(p, n) >= target {
            // all later terms vanish too since n*w - log_p(n) grows
            break;
        }
        t = n + 1;
        n += 1;
    }
    let guard = ilog(p, t.max(1)) + 2;
    (t, guard)
}

fn log_one_unit(p: u64, y: &Int, w: i64, target: i64) -> Int {
    let (t_max, guard) = log_one_unit_guard(p, w, target);
    let work = target + guard;
    let modulus = pow_int(p, work);
    let target_mod = pow_int(p, target);
    let mut sum = Int::zero();
    let mut y_pow = Int::one();
    for n in 1..=t_max {
        y_pow = (&y_pow * y).mod_floor(&modulus);
        let a = vp_u64(p, n);
        let n_unit = Int::from(n) / pow_int(p, a);
        let inv = mod_inverse(&n_unit.mod_floor(&modulus), &modulus)
            .expect("n with p-part removed is a unit");
        // y^n is divisible by p^(n*w) >= p^a, so the exact shift is valid
        let term = (&y_pow / pow_int(p, a) * inv).mod_floor(&modulus);
        if n % 2 == 1 {
            sum = (sum + term).mod_floor(&modulus);
        } else {
            sum = (sum - term).mod_floor(&modulus);
        }
    }
    sum.mod_floor(&target_mod)
}

fn exp_series(p: u64, x: &Int, w: i64, target: i64) -> Int {
    // term valuation is n*w - v_p(n!) >= n*w - (n-1)/(p-1), which grows
    // strictly inside the convergence domain; solve for the cutoff
    let denom = w * (p as i64 - 1) - 1;
    assert!(denom > 0, "exp domain violated");
    let numer = target * (p as i64 - 1) - 1;
    let t_max = ((numer + denom - 1) / denom).max(1) as u64;
    let guard = vp_factorial(p, t_max) + 2;
    let work = target + guard;
    let modulus = pow_int(p, work);
    let target_mod = pow_int(p, target);
    let mut sum = Int::one();
    let mut x_pow = Int::one();
    let mut fact_unit = Int::one();
    let mut fact_val = 0i64;
    for n in 1..=t_max {
        x_pow = (&x_pow * x).mod_floor(&modulus);
        let a = vp_u64(p, n);
        fact_val += a;
        fact_unit = (&fact_unit * (Int::from(n) / pow_int(p, a))).mod_floor(&modulus);
        let inv = mod_inverse(&fact_unit, &modulus).expect("factorial unit part");
        let term = (&x_pow / pow_int(p, fact_val) * inv).mod_floor(&modulus);
        sum = (sum + term).mod_floor(&modulus);
    }
    sum.mod_floor(&target_mod)
}

/// The Iwasawa logarithm on Q_p^*: drops the p-power part (log_p(p) = 0),
/// reduces a general unit to a 1-unit via `x -> x^(p-1)` (for p = 2 via
/// `x -> x^2`, using `x^2 = 1 mod 8` for odd `x`), and sums the 1-unit
/// series with derived guard digits. The reported precision is the
/// relative precision of the input's unit part.
pub fn log_p(x: &PadicNumber) -> Result<PadicNumber, PadicError> {
    if x.is_zero_at_precision() {
        return Err(PadicError::ZeroInput);
    }
    let p = x.prime;
    let k = x.rel_prec();
    if k < 1 {
        return Err(PadicError::InsufficientPrecision(
            "no unit digits available".into(),
        ));
    }
    if p == 2 {
        // u odd known mod 2^k; u^2 is then known mod 2^(k+1) and
        // u^2 = 1 mod 8, so the series target k+1 loses nothing after
        // the final division by 2
        let modulus = pow_int(2, k + 1);
        let u2 = (&x.unit * &x.unit).mod_floor(&modulus);
        let y = (u2 - Int::one()).mod_floor(&modulus);
        if y.is_zero() {
            return Ok(PadicNumber::zero_at(2, k));
        }
        let w = y.clone().mod_floor(&modulus);
        let mut v = 0i64;
        let mut yv = w;
        let two = Int::from(2);
        while (&yv % &two).is_zero() && !yv.is_zero() {
            yv /= &two;
            v += 1;
        }
        let v = v.min(k);
        if v >= k + 1 {
            return Ok(PadicNumber::zero_at(2, k));
        }
        let s = log_one_unit(2, &y, v.max(1), k + 1);
        // s is divisible by 8; halving shifts the known modulus down by one
        let half = s / &two;
        Ok(PadicNumber::from_int_mod(2, half, k))
    } else {
        let modulus = pow_int(p, k);
        let t = x.unit.modpow(&Int::from(p - 1), &modulus);
        let y = (t - Int::one()).mod_floor(&modulus);
        if y.is_zero() {
            return Ok(PadicNumber::zero_at(p, k));
        }
        let mut v = 0i64;
        let mut yv = y.clone();
        let pb = Int::from(p);
        while (&yv % &pb).is_zero() {
            yv /= &pb;
            v += 1;
        }
        let s = log_one_unit(p, &y, v, k);
        let inv = mod_inverse(&Int::from(p - 1), &pow_int(p, k)).expect("p-1 is a unit");
        let result = (s * inv).mod_floor(&pow_int(p, k));
        Ok(PadicNumber::from_int_mod(p, result, k))
    }
}

/// The p-adic exponential. The convergence domain is enforced strictly:
/// `v(x) >= 1` for odd `p` and `v(x) >= 2` for `p = 2`.
pub fn exp_p(x: &PadicNumber) -> Result<PadicNumber, PadicError> {
    let p = x.prime;
    let min_val = if p == 2 { 2 } else { 1 };
    match x.val {
        None => {
            if x.abs_prec < min_val {
                return Err(PadicError::OutsideDomain(format!(
                    "need v(x) >= {min_val}, input is only known modulo {p}^{}",
                    x.abs_prec
                )));
            }
            // x = 0 at this precision: exp(x) = 1 with matching digits
            Ok(PadicNumber::one(p, x.abs_prec))
        }
        Some(v) => {
            if v < min_val {
                return Err(PadicError::OutsideDomain(format!(
                    "need v(x) >= {min_val}, got v = {v}"
                )));
            }
            let k = x.abs_prec;
            let repr = (&x.unit * pow_int(p, v)).mod_floor(&pow_int(p, k));
            let s = exp_series(p, &repr, v, k);
            Ok(PadicNumber::from_int_mod(p, s, k))
        }
    }
}

/// The Teichmueller lift of a unit residue: the unique (p-1)-th root of
/// unity congruent to `a` modulo `p` (for p = 2: the sign +-1 congruent to
/// `a` modulo 4 is the analogue; here we return +-1 by the mod-4 residue).
pub fn teichmuller(p: u64, a: &Int, abs_prec: i64) -> Result<PadicNumber, PadicError> {
    let modulus = pow_int(p, abs_prec);
    let a0 = a.mod_floor(&Int::from(p));
    if a0.is_zero() {
        return Err(PadicError::NotAUnit(format!("{a} = 0 mod {p}")));
    }
    if p == 2 {
        let r = a.mod_floor(&Int::from(4));
        let v = if r == Int::from(3) {
            (-Int::one()).mod_floor(&modulus)
        } else {
            Int::one()
        };
        return Ok(PadicNumber::from_int_mod(2, v, abs_prec));
    }
    // iterate x -> x^p to the fixpoint
    let mut x = a.mod_floor(&modulus);
    loop {
        let next = x.modpow(&Int::from(p), &modulus);
        if next == x {
            break;
        }
        x = next;
    }
    Ok(PadicNumber::from_int_mod(p, x, abs_prec))
}

fn eval_int_poly(coeffs: &[Int], x: &Int, modulus: &Int) -> Int {
    let mut acc = Int::zero();
    for c in coeffs.iter().rev() {
        acc = (acc * x + c).mod_floor(modulus);
    }
    acc
}

fn derivative(coeffs: &[Int]) -> Vec<Int> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Int::from(i as i64))
        .collect()
}

/// Hensel lifting: the root of an integer polynomial in Z_p to absolute
/// precision `k`, by Newton iteration from a simple root modulo `p`.
/// Requires `f(r0) = 0 mod p` and `f'(r0) != 0 mod p`.
pub fn hensel_root(
    coeffs: &[Int],
    r0: &Int,
    p: u64,
    k: i64,
) -> Result<PadicNumber, PadicError> {
    if coeffs.iter().all(|c| c.is_zero()) {
        return Err(PadicError::BadRoot("zero polynomial".into()));
    }
    let pb = Int::from(p);
    if !eval_int_poly(coeffs, r0, &pb).is_zero() {
        return Err(PadicError::BadRoot(format!("f({r0}) != 0 mod {p}")));
    }
    let deriv = derivative(coeffs);
    if eval_int_poly(&deriv, r0, &pb).is_zero() {
        return Err(PadicError::BadRoot(format!("f'({r0}) = 0 mod {p}")));
    }
    let mut x = r0.mod_floor(&pb);
    let mut prec = 1i64;
    while prec < k {
        prec = (2 * prec).min(k);
        let modulus = pow_int(p, prec);
        let fx = eval_int_poly(coeffs, &x, &modulus);
        let dfx = eval_int_poly(&deriv, &x, &modulus);
        let inv = mod_inverse(&dfx, &modulus)
            .expect("derivative stays a unit along the Newton iteration");
        x = (&x - fx * inv).mod_floor(&modulus);
    }
    let modulus = pow_int(p, k);
    debug_assert!(eval_int_poly(coeffs, &x, &modulus).is_zero());
    if !eval_int_poly(coeffs, &x, &modulus).is_zero() {
        return Err(PadicError::BadRoot("lift verification failed".into()));
    }
    Ok(PadicNumber::from_int_mod(p, x, k))
}

/// A matrix of p-adic numbers sharing one prime, with per-entry precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicMatrix {
    pub prime: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<PadicNumber>,
}

impl PadicMatrix {
    pub fn from_fn(
        prime: u64,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> PadicNumber,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.prime(), prime);
                entries.push(e);
            }
        }
        PadicMatrix {
            prime,
            rows,
            cols,
            entries,
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &PadicNumber {
        &self.entries[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: PadicNumber) {
        self.entries[i * self.cols + j] = v;
    }

    /// Certified rank lower bound by elimination with minimal-valuation
    /// pivoting: a pivot certified nonzero at the working precision raises
    /// the rank; entries indistinguishable from zero stop the elimination
    /// (they are only "zero at this precision", never proven zero).
    pub fn certified_rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut used_rows = vec![false; m.rows];
        let mut used_cols = vec![false; m.cols];
        loop {
            let mut best: Option<(usize, usize, i64)> = None;
            for i in 0..m.rows {
                if used_rows[i] {
                    continue;
                }
                for j in 0..m.cols {
                    if used_cols[j] {
                        continue;
                    }
                    if let Some(v) = m.at(i, j).valuation() {
                        if best.map_or(true, |(_, _, bv)| v < bv) {
                            best = Some((i, j, v));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return rank;
            };
            let pivot = m.at(pi, pj).clone();
            for i in 0..m.rows {
                if used_rows[i] || i == pi {
                    continue;
                }
                let factor = m.at(i, pj).div(&pivot).expect("pivot is certified nonzero");
                for j in 0..m.cols {
                    if used_cols[j] {
                        continue;
                    }
                    let delta = factor.mul(m.at(pi, j)).expect("same prime");
                    let updated = m.at(i, j).sub(&delta).expect("same prime");
                    m.set(i, j, updated);
                }
            }
            used_rows[pi] = true;
            used_cols[pj] = true;
            rank += 1;
        }
    }

    /// Exact valuation of the determinant, or an error when the working
    /// precision cannot certify it.
    pub fn det_valuation(&self) -> Result<i64, PadicError> {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut acc = 0i64;
        let mut used_rows = vec![false; n];
        let mut used_cols = vec![false; n];
        for _step in 0..n {
            let mut best: Option<(usize, usize, i64)> = None;
            for i in 0..n {
                if used_rows[i] {
                    continue;
                }
                for j in 0..n {
                    if used_cols[j] {
                        continue;
                    }
                    if let Some(v) = m.at(i, j).valuation() {
                        if best.map_or(true, |(_, _, bv)| v < bv) {
                            best = Some((i, j, v));
                        }
                    }
                }
            }
            let Some((pi, pj, pv)) = best else {
                return Err(PadicError::InsufficientPrecision(
                    "all remaining entries are indistinguishable from zero".into(),
                ));
            };
            acc += pv;
            let pivot = m.at(pi, pj).clone();
            for i in 0..n {
                if used_rows[i] || i == pi {
                    continue;
                }
                let factor = m.at(i, pj).div(&pivot).expect("pivot certified nonzero");
                for j in 0..n {
                    if used_cols[j] {
                        continue;
                    }
                    let delta = factor.mul(m.at(pi, j)).expect("same prime");
                    let updated = m.at(i, j).sub(&delta).expect("same prime");
                    m.set(i, j, updated);
                }
            }
            used_rows[pi] = true;
            used_cols[pj] = true;
        }
        Ok(acc)
    }
}

/// One cell of a logarithm matrix: a rational unit, or a quadratic (or
/// higher) unit described by an integral minimal polynomial and the residue
/// selecting the Hensel root for this embedding.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitInput {
    Rational(Rat),
    AlgebraicRoot { minpoly: Vec<Int>, residue: Int },
}

/// Build the matrix of logarithms of the given unit descriptions and
/// report a certified lower bound on its rank at precision `k`. Vanishing
/// can never be concluded at finite precision, so the rank is reported as
/// "at least" only.
pub fn log_matrix(
    rows: &[Vec<UnitInput>],
    p: u64,
    k: i64,
) -> Result<(PadicMatrix, usize), PadicError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(PadicError::BadRoot("ragged unit rows".into()));
    }
    let mut values = Vec::with_capacity(nrows * ncols);
    for row in rows {
        for cell in row {
            let v = match cell {
                UnitInput::Rational(x) => {
                    if x.is_zero() {
                        return Err(PadicError::ZeroInput);
                    }
                    PadicNumber::from_rat(x, p, k)
                }
                UnitInput::AlgebraicRoot { minpoly, residue } => {
                    hensel_root(minpoly, residue, p, k)?
                }
            };
            if v.valuation() != Some(0) {
                return Err(PadicError::NotAUnit(format!(
                    "valuation {:?} != 0",
                    v.valuation()
                )));
            }
            values.push(log_p(&v)?);
        }
    }
    let mut it = values.into_iter();
    let mat = PadicMatrix::from_fn(p, nrows, ncols, |_, _| it.next().expect("sized"));
    let rank = mat.certified_rank();
    Ok((mat, rank))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpDetReport {
    pub valuation: i64,
    pub theta_1: u128,
    pub u_minus_1_valuation: i64,
    /// `theta_1 * v(u - 1)`, the certified lower bound
    pub bound: i128,
    pub satisfied: bool,
}

/// Valuation of the interpolation determinant `det(u^(a_i y_j))` against
/// the bound `Theta_1(d) * v(u - 1)`. Exponents must be pairwise distinct
/// on each side. Errors with a retry hint when the input precision cannot
/// certify the determinant's valuation.
pub fn interp_det_valuation(
    u: &PadicNumber,
    a: &[i64],
    y: &[i64],
) -> Result<InterpDetReport, PadicError> {
    if a.len() != y.len() || a.is_empty() {
        return Err(PadicError::BadRoot(
            "exponent lists must be nonempty and of equal length".into(),
        ));
    }
    for (i, x) in a.iter().enumerate() {
        if a[..i].contains(x) {
            return Err(PadicError::BadRoot(format!("duplicate exponent a = {x}")));
        }
    }
    for (i, x) in y.iter().enumerate() {
        if y[..i].contains(x) {
            return Err(PadicError::BadRoot(format!("duplicate power y = {x}")));
        }
    }
    let one = PadicNumber::one(u.prime(), u.abs_prec());
    let w = u
        .sub(&one)?
        .valuation()
        .ok_or_else(|| PadicError::InsufficientPrecision("u - 1 vanishes at this precision".into()))?;
    if w < 1 {
        return Err(PadicError::OutsideDomain(format!(
            "need v(u - 1) >= 1, got {w}"
        )));
    }
    let d = a.len();
    let mut mat = Vec::with_capacity(d * d);
    for &ai in a {
        for &yj in y {
            let e = ai.checked_mul(yj).ok_or(PadicError::ExponentTooLarge)?;
            mat.push(u.pow(e)?);
        }
    }
    let mut it = mat.into_iter();
    let m = PadicMatrix::from_fn(u.prime(), d, d, |_, _| it.next().expect("sized"));
    let valuation = m.det_valuation()?;
    let theta_1 = theta(1, d as u64);
    let bound = theta_1 as i128 * w as i128;
    Ok(InterpDetReport {
        valuation,
        theta_1,
        u_minus_1_valuation: w,
        bound,
        satisfied: valuation as i128 >= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p5(x: i64, k: i64) -> PadicNumber {
        PadicNumber::from_rat(&rat_int(x), 5, k)
    }

    #[test]
    fn construction_and_valuations() {
        let x = p5(75, 10);
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(*x.unit_part(), int(3));
        let y = PadicNumber::from_rat(&rat(1, 5), 5, 10);
        assert_eq!(y.valuation(), Some(-1));
        let z = PadicNumber::from_rat(&rat_int(0), 5, 10);
        assert!(z.is_zero_at_precision());
    }

    #[test]
    fn five_times_one_fifth_is_one() {
        let five = p5(5, 10);
        let fifth = PadicNumber::one(5, 10).div(&five).unwrap();
        let prod = five.mul(&fifth).unwrap();
        assert_eq!(prod.valuation(), Some(0));
        assert!(prod.agrees_at(&PadicNumber::one(5, 10), 9));
    }

    #[test]
    fn valuation_of_sum() {
        let a = p5(5, 10);
        let b = p5(25, 10);
        assert_eq!(a.add(&b).unwrap().valuation(), Some(1));
        // cancellation: v(5 + (-5)) is only bounded below by the precision
        let c = a.add(&a.neg()).unwrap();
        assert!(c.is_zero_at_precision());
    }

    #[test]
    fn prime_mismatch_and_division_errors() {
        let a = p5(1, 10);
        let b = PadicNumber::from_rat(&rat_int(1), 7, 10);
        assert!(matches!(a.add(&b), Err(PadicError::PrimeMismatch(5, 7))));
        let z = PadicNumber::zero_at(5, 10);
        assert!(matches!(a.div(&z), Err(PadicError::DivisionByZero)));
    }

    #[test]
    fn arithmetic_matches_rational_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for p in [2u64, 3, 5, 7] {
            for _ in 0..25 {
                let k = 20;
                let xr = rat(rng.gen_range(-200i64..=200), rng.gen_range(1i64..=60));
                let yr = rat(rng.gen_range(-200i64..=200), rng.gen_range(1i64..=60));
                if xr.is_zero() || yr.is_zero() {
                    continue;
                }
                let x = PadicNumber::from_rat(&xr, p, k);
                let y = PadicNumber::from_rat(&yr, p, k);
                let sum = x.add(&y).unwrap();
                let sum_oracle = PadicNumber::from_rat(&(&xr + &yr), p, k);
                assert!(sum.agrees_at(&sum_oracle, sum.abs_prec().min(k)));
                let prod = x.mul(&y).unwrap();
                let prod_oracle = PadicNumber::from_rat(&(&xr * &yr), p, prod.abs_prec());
                assert!(prod.agrees_at(&prod_oracle, prod.abs_prec()));
                let quot = x.div(&y).unwrap();
                let quot_oracle = PadicNumber::from_rat(&(&xr / &yr), p, quot.abs_prec());
                assert!(quot.agrees_at(&quot_oracle, quot.abs_prec()));
            }
        }
    }

    #[test]
    fn log_of_one_and_p_vanish() {
        for p in [2u64, 3, 5, 7] {
            let one = PadicNumber::one(p, 30);
            assert!(log_p(&one).unwrap().is_zero_at_precision());
            let pp = PadicNumber::from_rat(&rat_int(p as i64), p, 30);
            assert!(log_p(&pp).unwrap().is_zero_at_precision());
        }
    }

    #[test]
    fn log_matches_rational_partial_sums() {
        // log_5(1 + 5) to 10 digits against exact rational partial sums
        let x = p5(6, 10);
        let got = log_p(&x).unwrap();
        let mut partial = Rat::zero();
        let y = rat_int(5);
        for n in 1..=20i64 {
            let term = crate::rat::rat_pow(&y, n) / rat_int(n);
            if n % 2 == 1 {
                partial += term;
            } else {
                partial -= term;
            }
        }
        let oracle = PadicNumber::from_rat(&partial, 5, 10);
        assert!(got.agrees_at(&oracle, 10), "got {got}, oracle {oracle}");
    }

    #[test]
    fn log_of_teichmuller_lift_is_zero() {
        let t = teichmuller(5, &int(2), 30).unwrap();
        // t^4 = 1
        let t4 = t.pow(4).unwrap();
        assert!(t4.agrees_at(&PadicNumber::one(5, 30), 30));
        assert!(log_p(&t).unwrap().is_zero_at_precision());
        // p = 2: the lift of 3 is -1
        let m1 = teichmuller(2, &int(3), 30).unwrap();
        assert!(m1.pow(2).unwrap().agrees_at(&PadicNumber::one(2, 30), 30));
        assert!(log_p(&m1).unwrap().is_zero_at_precision());
    }

    #[test]
    fn exp_basics_and_domain() {
        let zero = PadicNumber::zero_at(5, 10);
        let e = exp_p(&zero).unwrap();
        assert!(e.agrees_at(&PadicNumber::one(5, 10), 10));

        // exp_5(5) against exact rational partial sums mod 5^8
        let x = p5(5, 8);
        let got = exp_p(&x).unwrap();
        let mut partial = Rat::one();
        let mut fact = rat_int(1);
        for n in 1..=20i64 {
            fact *= rat_int(n);
            partial += crate::rat::rat_pow(&rat_int(5), n) / &fact;
        }
        let oracle = PadicNumber::from_rat(&partial, 5, 8);
        assert!(got.agrees_at(&oracle, 8), "got {got}, oracle {oracle}");

        // p = 2 with v = 1 is outside the domain
        let two = PadicNumber::from_rat(&rat_int(2), 2, 10);
        assert!(matches!(exp_p(&two), Err(PadicError::OutsideDomain(_))));
        let four = PadicNumber::from_rat(&rat_int(4), 2, 10);
        assert!(exp_p(&four).is_ok());
    }

    #[test]
    fn exp_log_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 3, 5, 7] {
            let min_v = if p == 2 { 2 } else { 1 };
            for _ in 0..20 {
                let k = 25;
                // x = 1 + p^min_v * t, a 1-unit in the isometry domain
                let t = rng.gen_range(1i64..=50);
                let xr = rat_int(1)
                    + rat_int(t) * crate::rat::rat_pow(&rat_int(p as i64), min_v);
                let x = PadicNumber::from_rat(&xr, p, k);
                let lx = log_p(&x).unwrap();
                let elx = exp_p(&lx).unwrap();
                let prec = elx.abs_prec().min(x.abs_prec());
                assert!(elx.agrees_at(&x, prec), "p={p} x={xr}: {elx} vs {x}");

                // log(exp(y)) = y for y in the exp domain
                let yr = rat_int(t) * crate::rat::rat_pow(&rat_int(p as i64), min_v);
                let y = PadicNumber::from_rat(&yr, p, k);
                let ey = exp_p(&y).unwrap();
                let ley = log_p(&ey).unwrap();
                let prec = ley.abs_prec().min(y.abs_prec());
                assert!(ley.agrees_at(&y, prec), "p={p} y={yr}");
            }
        }
    }

    #[test]
    fn log_is_a_homomorphism_across_layers() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for p in [2u64, 3, 5, 7] {
            for _ in 0..15 {
                let k = 25;
                // arbitrary nonzero rationals (any valuation, any unit class)
                let xr = rat(rng.gen_range(1i64..=400), rng.gen_range(1i64..=60));
                let yr = rat(rng.gen_range(1i64..=400), rng.gen_range(1i64..=60));
                let x = PadicNumber::from_rat(&xr, p, k);
                let y = PadicNumber::from_rat(&yr, p, k);
                let lhs = log_p(&x.mul(&y).unwrap()).unwrap();
                let rhs = log_p(&x).unwrap().add(&log_p(&y).unwrap()).unwrap();
                let prec = lhs.abs_prec().min(rhs.abs_prec());
                assert!(lhs.agrees_at(&rhs, prec), "p={p} x={xr} y={yr}");
            }
        }
    }

    #[test]
    fn precision_honesty() {
        // recompute at k+10 and truncate: bit-exact agreement
        for p in [2u64, 3, 5, 7] {
            let k = 20;
            let xr = rat(1 + p as i64 * p as i64, 1);
            let lo = log_p(&PadicNumber::from_rat(&xr, p, k)).unwrap();
            let hi = log_p(&PadicNumber::from_rat(&xr, p, k + 10)).unwrap();
            assert_eq!(hi.truncate(lo.abs_prec()), lo, "p={p}");

            let er = crate::rat::rat_pow(&rat_int(p as i64), if p == 2 { 2 } else { 1 });
            let lo = exp_p(&PadicNumber::from_rat(&er, p, k)).unwrap();
            let hi = exp_p(&PadicNumber::from_rat(&er, p, k + 10)).unwrap();
            assert_eq!(hi.truncate(lo.abs_prec()), lo, "p={p}");
        }
    }

    #[test]
    fn hensel_examples() {
        // x^2 - 2 at p = 7 from r0 = 3
        let root = hensel_root(&[int(-2), int(0), int(1)], &int(3), 7, 30).unwrap();
        let sq = root.pow(2).unwrap();
        let two = PadicNumber::from_rat(&rat_int(2), 7, 30);
        assert!(sq.agrees_at(&two, 30));

        // x - 5 is exact
        let r = hensel_root(&[int(-5), int(1)], &int(5), 7, 10).unwrap();
        assert!(r.agrees_at(&PadicNumber::from_rat(&rat_int(5), 7, 10), 10));

        // x^2 + 1 at p = 5 from r0 = 2
        let i = hensel_root(&[int(1), int(0), int(1)], &int(2), 5, 25).unwrap();
        let sq = i.pow(2).unwrap();
        let minus1 = PadicNumber::from_rat(&rat_int(-1), 5, 25);
        assert!(sq.agrees_at(&minus1, 25));

        // bad data rejected
        assert!(hensel_root(&[int(-2), int(0), int(1)], &int(1), 7, 10).is_err());
        assert!(hensel_root(&[int(4), int(0), int(1)], &int(0), 2, 10).is_err());
    }

    #[test]
    fn log_matrix_rank_certificates() {
        // single rational unit 1 + p
        let (m, rank) = log_matrix(
            &[vec![UnitInput::Rational(rat_int(6))]],
            5,
            30,
        )
        .unwrap();
        assert_eq!(rank, 1);
        assert_eq!(m.rows, 1);

        // fundamental unit 1 + sqrt(2) of Q(sqrt 2): minpoly x^2 - 2x - 1,
        // p = 7 splits; both embeddings in one row
        let mp = vec![int(-1), int(-2), int(1)];
        let (m, rank) = log_matrix(
            &[vec![
                UnitInput::AlgebraicRoot {
                    minpoly: mp.clone(),
                    residue: int(5),
                },
                UnitInput::AlgebraicRoot {
                    minpoly: mp,
                    residue: int(4),
                },
            ]],
            7,
            20,
        )
        .unwrap();
        assert_eq!(m.cols, 2);
        assert!(rank >= 1);

        // a root-of-unity row is zero at any precision
        let (m, rank) = log_matrix(
            &[vec![UnitInput::Rational(rat_int(-1))]],
            5,
            30,
        )
        .unwrap();
        assert_eq!(rank, 0);
        assert!(m.at(0, 0).is_zero_at_precision());

        // non-units rejected
        assert!(matches!(
            log_matrix(&[vec![UnitInput::Rational(rat_int(5))]], 5, 30),
            Err(PadicError::NotAUnit(_))
        ));
    }

    #[test]
    fn interp_det_hand_cases() {
        // d = 1: determinant u^(a1 y1), valuation 0, bound 0
        let u = PadicNumber::from_rat(&rat_int(6), 5, 40);
        let rep = interp_det_valuation(&u, &[2], &[3]).unwrap();
        assert_eq!(rep.valuation, 0);
        assert_eq!(rep.bound, 0);
        assert!(rep.satisfied);

        // d = 2 hand expansion: v(det) >= 1 = Theta_1(2) * v(u-1)
        let rep = interp_det_valuation(&u, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(rep.theta_1, 1);
        assert!(rep.valuation >= 1);
        assert!(rep.satisfied);

        //duplicate exponents rejected
        assert!(interp_det_valuation(&u, &[1, 1], &[0, 1]).is_err());
    }

    #[test]
    fn interp_det_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for p in [3u64, 5] {
            for _ in 0..10 {
                let d = rng.gen_range(2usize..=4);
                let u = PadicNumber::from_rat(
                    &rat_int(1 + p as i64 * rng.gen_range(1i64..=6)),
                    p,
                    60,
                );
                let mut a: Vec<i64> = Vec::new();
                while a.len() < d {
                    let c = rng.gen_range(0i64..=10);
                    if !a.contains(&c) {
                        a.push(c);
                    }
                }
                let mut y: Vec<i64> = Vec::new();
                while y.len() < d {
                    let c = rng.gen_range(0i64..=10);
                    if !y.contains(&c) {
                        y.push(c);
                    }
                }
                let rep = interp_det_valuation(&u, &a, &y).unwrap();
                assert!(rep.satisfied, "p={p} a={a:?} y={y:?} rep={rep:?}");
            }
        }
    }

    #[test]
    fn display_digits() {
        let x = p5(77, 6); // 77 = 2 + 0*5 + 3*25
        let s = x.to_string();
        assert!(s.contains("2"), "{s}");
        assert!(s.ends_with("O(5^6)"), "{s}");
        assert_eq!(PadicNumber::zero_at(3, 4).to_string(), "O(3^4)");
    }
}
