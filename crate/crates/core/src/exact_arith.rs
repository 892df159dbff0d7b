//! Big integers, canonical rationals and the small number-theory kit the
//! rest of the crate is built on.
//!
//! [`Integer`] and [`Rational`] are `num-bigint` / `num-rational` types. A
//! `Ratio` is kept reduced with a positive denominator by every constructor
//! and operator, which is exactly the canonical form the 2-adic arguments
//! need.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

/// Builds the canonical rational `num/den`.
pub fn canonicalize(num: Integer, den: Integer) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// `r = (2^p_exp · k_odd) / (2^q_exp · l_odd)` with `k_odd`, `l_odd` odd and
/// `l_odd > 0`. For a canonical rational at most one of the exponents is
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoAdicForm {
    pub p_exp: u64,
    pub q_exp: u64,
    pub k_odd: Integer,
    pub l_odd: Integer,
}

impl TwoAdicForm {
    /// Reassembles the rational this form describes.
    pub fn value(&self) -> Rational {
        let num = &self.k_odd << self.p_exp;
        let den = &self.l_odd << self.q_exp;
        Rational::new(num, den)
    }
}

fn split_twos(x: &Integer) -> (u64, Integer) {
    let tz = x.trailing_zeros().unwrap_or(0);
    (tz, x >> tz)
}

pub fn two_adic_form(r: &Rational) -> Result<TwoAdicForm> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (p_exp, k_odd) = split_twos(r.numer());
    let (q_exp, l_odd) = split_twos(r.denom());
    Ok(TwoAdicForm {
        p_exp,
        q_exp,
        k_odd,
        l_odd,
    })
}

/// Largest `e` with `p^e | x`.
pub fn p_adic_valuation(x: &Integer, p: &Integer) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_prime(p) {
        return Err(Error::NonPrimeModulus(format!("{p}")));
    }
    if p == &BigInt::from(2u8) {
        return Ok(x.trailing_zeros().unwrap_or(0));
    }
    let p = p.magnitude();
    let mut rest = x.magnitude().clone();
    let mut e = 0;
    loop {
        let (q, rem) = rest.div_rem(p);
        if !rem.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

const SMALL_PRIMES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin with the first 13 primes as bases is exact below this bound
/// (Sorenson & Webster).
const MR_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // Above 2^64 the product can overflow u128; fall back to double-and-add.
    if m <= u64::MAX as u128 {
        return a * b % m;
    }
    let mut acc = 0u128;
    let mut a = a % m;
    let mut b = b;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime(n: u128, a: u128) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn is_prime_small(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = p as u128;
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    SMALL_PRIMES
        .iter()
        .all(|&a| strong_probable_prime(n, a as u128))
}

/// Deterministic primality test.
///
/// Exact Miller–Rabin below `3.3 · 10^24`; above that, trial division by odd
/// numbers up to the integer square root, which is slow but never wrong.
pub fn is_prime(x: &Integer) -> bool {
    if x.sign() != Sign::Plus {
        return false;
    }
    if let Some(n) = x.to_u128() {
        if n < MR_DETERMINISTIC_BOUND {
            return is_prime_small(n);
        }
    }
    let n = x.magnitude();
    if n.is_even() {
        return false;
    }
    let root = n.sqrt();
    let mut d = BigUint::from(3u8);
    while d <= root {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2u8;
    }
    true
}

/// Product of the consecutive integers `lo..=hi`; `1` when `lo > hi`.
pub fn rising_product(lo: u64, hi: u64) -> Integer {
    if lo > hi {
        return Integer::one();
    }
    if hi - lo < 16 {
        return (lo..=hi).fold(Integer::one(), |acc, k| acc * k);
    }
    let mid = lo + (hi - lo) / 2;
    rising_product(lo, mid) * rising_product(mid + 1, hi)
}

pub fn factorial(n: u64) -> Integer {
    rising_product(1, n)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    rising_product(n - k + 1, n) / factorial(k)
}

/// Integer square root of a nonnegative integer.
pub fn isqrt(x: &Integer) -> Option<Integer> {
    if x.is_negative() {
        return None;
    }
    Some(x.sqrt())
}

/// `Some(m)` with `m ≥ 0` and `m² = x` when `x` is a perfect square.
pub fn exact_sqrt(x: &Integer) -> Option<Integer> {
    let m = isqrt(x)?;
    (&m * &m == *x).then_some(m)
}

/// The numerator of `r` when it is an integer.
pub fn as_integer(r: &Rational) -> Option<Integer> {
    r.is_integer().then(|| r.numer().clone())
}

/// Smallest odd prime that is at least `lower`.
pub fn next_odd_prime_at_least(lower: u64) -> u64 {
    let mut p = lower.max(3) | 1;
    while !is_prime(&Integer::from(p)) {
        p += 2;
    }
    p
}

/// Odd primes up to and including `hi`.
pub fn odd_primes_up_to(hi: u64) -> Vec<u64> {
    (3..=hi)
        .step_by(2)
        .filter(|&x| is_prime(&Integer::from(x)))
        .collect()
}
