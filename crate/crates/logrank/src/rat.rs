//! Exact scalar arithmetic: arbitrary-precision integers and rationals.
//!
//! `Int` and `Rat` are the only scalar types used anywhere in the crate;
//! there is no floating point on any computational path. The canonical
//! text form of a rational is `a/b` with `b > 0`, shortened to `a` when
//! `b = 1` (this is what `num_rational`'s `Display` already produces).

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Integer constant as a `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// `n/d` as a `Rat`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Parse the canonical form `a` or `a/b`. The denominator may carry a
/// sign; the result is normalized with a positive denominator.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    match s.split_once('/') {
        None => s
            .parse::<Int>()
            .map(Rat::from_integer)
            .map_err(|e| format!("bad integer {s:?}: {e}")),
        Some((a, b)) => {
            let num = a
                .trim()
                .parse::<Int>()
                .map_err(|e| format!("bad numerator {a:?}: {e}"))?;
            let den = b
                .trim()
                .parse::<Int>()
                .map_err(|e| format!("bad denominator {b:?}: {e}"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// `x^e` for a possibly negative exponent. Panics on `0^e` with `e < 0`.
pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let exp: i32 = e.unsigned_abs().try_into().expect("exponent magnitude too large");
    let p = x.pow(exp);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Greatest common divisor of a slice, nonnegative; 0 for an all-zero slice.
pub fn content(v: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in v {
        g = num_integer::gcd(g, x.clone());
        if g.is_one() {
            break;
        }
    }
    g
}

/// Scale a rational vector to a primitive integer vector (content 1) whose
/// first nonzero entry is positive. Zero vectors map to zero vectors.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<Int> {
    let mut den = Int::one();
    for x in v {
        den = num_integer::lcm(den, x.denom().clone());
    }
    let mut ints: Vec<Int> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = content(&ints);
    if g.is_zero() {
        return ints;
    }
    for x in ints.iter_mut() {
        *x /= &g;
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.sign() == Sign::Minus {
            for x in ints.iter_mut() {
                *x = -(x.clone());
            }
        }
    }
    ints
}

/// Round to the nearest integer, ties away from zero.
pub fn round_rat(x: &Rat) -> Int {
    let two = Int::from(2);
    let num = x.numer();
    let den = x.denom();
    if num.is_negative() {
        -((-num * &two + den) / (den * &two))
    } else {
        (num * &two + den) / (den * &two)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_form() {
        assert_eq!(rat(3, 1).to_string(), "3");
        assert_eq!(rat(-6, 4).to_string(), "-3/2");
        assert_eq!(parse_rat("7/ -2").unwrap(), rat(-7, 2));
        assert_eq!(parse_rat("5").unwrap(), rat_int(5));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn pow_and_round() {
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(rat_pow(&rat(5, 1), 0), rat_int(1));
        assert_eq!(round_rat(&rat(7, 2)), int(4));
        assert_eq!(round_rat(&rat(-7, 2)), int(-4));
        assert_eq!(round_rat(&rat(1, 3)), int(0));
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![rat(-2, 3), rat(4, 3), rat_int(0)];
        assert_eq!(primitive_integer_vector(&v), vec![int(1), int(-2), int(0)]);
        let z = vec![rat_int(0), rat_int(0)];
        assert_eq!(primitive_integer_vector(&z), vec![int(0), int(0)]);
    }
}
