//! Integer factorization at desk scale: trial division by small primes,
//! deterministic-range Miller-Rabin, and Brent's cycle variant of Pollard
//! rho for what remains. Everything here is exact and deterministic.

use crate::rat::Int;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

const TRIAL_LIMIT: u64 = 10_000;

/// Strong probable-prime test to the given base.
fn miller_rabin_witness(n: &Int, base: u64) -> bool {
    let base = Int::from(base);
    if (&base % n).is_zero() {
        return true;
    }
    let n_minus_1: Int = n - 1;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&Int::from(2), n);
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Primality for positive integers. The fixed base set is deterministic for
/// every value below 3.3 * 10^24, far beyond anything reachable here.
pub fn is_prime(n: &Int) -> bool {
    if *n < Int::from(2) {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if *n == Int::from(p) {
            return true;
        }
        if (n % Int::from(p)).is_zero() {
            return false;
        }
    }
    [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .all(|&b| miller_rabin_witness(n, b))
}

/// One nontrivial factor of an odd composite, by Brent's rho with
/// deterministic parameter sweep.
fn pollard_rho(n: &Int) -> Int {
    for c in 1u64..64 {
        let c = Int::from(c);
        let f = |x: &Int| (x * x + &c) % n;
        let mut x = Int::from(2);
        let mut y = Int::from(2);
        let mut d = Int::one();
        let mut count = 0u64;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
            count += 1;
            if count > 1_000_000 {
                break;
            }
        }
        if !d.is_one() && d != *n {
            return d;
        }
    }
    panic!("pollard rho failed on {n}; input far beyond supported scale");
}

/// Prime factorization of a positive integer as an exponent map.
pub fn factor(n: &Int) -> BTreeMap<Int, u64> {
    assert!(n.is_positive(), "factor() expects a positive integer");
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    let divide_out = |rest: &mut Int, p: &Int, out: &mut BTreeMap<Int, u64>| {
        while (&*rest % p).is_zero() {
            *rest /= p;
            *out.entry(p.clone()).or_insert(0) += 1;
        }
    };
    divide_out(&mut rest, &Int::from(2), &mut out);
    let mut p = 3u64;
    while p <= TRIAL_LIMIT {
        let pb = Int::from(p);
        if &pb * &pb > rest {
            break;
        }
        divide_out(&mut rest, &pb, &mut out);
        p += 2;
    }
    // whatever is left has no factors below the trial limit
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(&m);
        let q = &m / &d;
        stack.push(d);
        stack.push(q);
    }
    out
}

/// Signed factorization of a nonzero rational: `(negative, prime -> exponent)`
/// with numerator exponents positive and denominator exponents negative.
pub fn factor_rat(x: &crate::rat::Rat) -> (bool, BTreeMap<Int, i64>) {
    assert!(!x.is_zero(), "factor_rat() expects a nonzero rational");
    let negative = x.is_negative();
    let mut map: BTreeMap<Int, i64> = BTreeMap::new();
    for (p, e) in factor(&x.numer().abs()) {
        *map.entry(p).or_insert(0) += e as i64;
    }
    for (p, e) in factor(x.denom()) {
        *map.entry(p).or_insert(0) -= e as i64;
    }
    map.retain(|_, e| *e != 0);
    (negative, map)
}
