//! Niven's polynomials `f_n(x) = (b^n / n!) · x^n (r − x)^n` and their
//! alternating even-derivative sums `F_n = Σ_j (−1)^j f_n^{(2j)}`.
//!
//! `F_n` is built literally from the derivative sum and then checked against
//! the three facts the argument needs: `F_n(0) = F_n(r)`, `F_n(0) ∈ ℤ`, and
//! `F_n + F_n'' = f_n`. A failed check is reported as
//! [`Error::PropertyViolation`]; it can only mean a bug.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::exact_arith::{factorial, Integer, Rational};
use crate::poly::RatPolynomial;
use crate::{Error, Result};

fn check_params(r: &Rational, n: u64) -> Result<()> {
    if !r.is_positive() {
        return Err(Error::InvalidInput(format!("r must be positive, got {r}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    Ok(())
}

/// A rational polynomial held as integer coefficients over one common
/// denominator: `Σ numer[i] x^i / denom`.
///
/// Large-`n` work stays in this form so no rational ever needs reducing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPolynomial {
    pub numer: Vec<Integer>,
    pub denom: Integer,
}

impl ScaledPolynomial {
    pub fn to_rat_polynomial(&self) -> RatPolynomial {
        RatPolynomial::new(
            self.numer
                .iter()
                .map(|c| Rational::new(c.clone(), self.denom.clone()))
                .collect(),
        )
    }

    /// Numerator of `p^{(k)}(0) = k! · numer[k] / denom`.
    pub fn derivative_at_zero_numer(&self, k: usize) -> Integer {
        match self.numer.get(k) {
            Some(c) if !c.is_zero() => c * factorial(k as u64),
            _ => Integer::zero(),
        }
    }
}

/// Expands `f_n` with the binomial theorem.
///
/// With `r = a/b` the polynomial is `x^n (a − b x)^n / n!`, so the
/// coefficient of `x^{n+m}` is `C(n, m) a^{n−m} (−b)^m / n!`.
pub fn build_f_scaled(r: &Rational, n: u64) -> Result<ScaledPolynomial> {
    check_params(r, n)?;
    let a = r.numer();
    let neg_b = -r.denom();
    let denom = factorial(n);
    let n = n as usize;

    // a^{n-m} for m = 0..=n, built from the top.
    let mut a_pows = Vec::with_capacity(n + 1);
    a_pows.push(Integer::one());
    for _ in 0..n {
        let next = a_pows.last().unwrap() * a;
        a_pows.push(next);
    }

    let mut numer = alloc::vec![Integer::zero(); 2 * n + 1];
    let mut binom = Integer::one();
    let mut b_pow = Integer::one();
    for m in 0..=n {
        numer[n + m] = &binom * &a_pows[n - m] * &b_pow;
        binom = binom * (n - m) / (m + 1);
        b_pow *= &neg_b;
    }
    Ok(ScaledPolynomial { numer, denom })
}

/// `f_n(x) = (b^n / n!) · x^n (r − x)^n`, expanded.
pub fn build_f(r: &Rational, n: u64) -> Result<RatPolynomial> {
    Ok(build_f_scaled(r, n)?.to_rat_polynomial())
}

/// `Σ_{j=0}^{n} (−1)^j f^{(2j)}` for any polynomial `f` of degree at most `2n`.
pub fn alternating_even_derivative_sum(f: &RatPolynomial, n: u64) -> RatPolynomial {
    (0..=n as usize).fold(RatPolynomial::zero(), |acc, j| {
        let d = f.derivative(2 * j);
        if j % 2 == 0 {
            &acc + &d
        } else {
            &acc - &d
        }
    })
}

/// `f_n` and `F_n` together with the exact values `F_n(0)` and `F_n(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NivenPair {
    pub n: u64,
    pub r: Rational,
    pub f: RatPolynomial,
    /// `F_n`.
    pub big_f: RatPolynomial,
    pub big_f_at_0: Rational,
    pub big_f_at_r: Rational,
}

impl NivenPair {
    /// `F_n(0)` as an integer. Construction guarantees integrality.
    pub fn big_f_at_0_integer(&self) -> Integer {
        self.big_f_at_0.numer().clone()
    }
}

/// Builds `F_n` from the derivative sum and checks it before returning.
pub fn build_big_f(r: &Rational, n: u64) -> Result<NivenPair> {
    let f = build_f(r, n)?;
    let big_f = alternating_even_derivative_sum(&f, n);
    let big_f_at_0 = big_f.eval(&Rational::zero());
    let big_f_at_r = big_f.eval(r);
    let pair = NivenPair {
        n,
        r: r.clone(),
        f,
        big_f,
        big_f_at_0,
        big_f_at_r,
    };
    check_pair(&pair)?;
    Ok(pair)
}

fn check_pair(pair: &NivenPair) -> Result<()> {
    let violation = |what: &str| {
        Err(Error::PropertyViolation(format!(
            "{what} (r = {}, n = {})",
            pair.r, pair.n
        )))
    };
    let deg = Some(2 * pair.n as usize);
    if pair.f.degree() != deg || pair.big_f.degree() != deg {
        return violation("deg f = deg F = 2n");
    }
    if pair.f.leading_coeff() != pair.big_f.leading_coeff() {
        return violation("leading coefficient of F equals that of f");
    }
    if pair.big_f_at_0 != pair.big_f_at_r {
        return violation("F(0) = F(r)");
    }
    if !pair.big_f_at_0.is_integer() {
        return violation("F(0) is an integer");
    }
    if &pair.big_f + &pair.big_f.derivative(2) != pair.f {
        return violation("F + F'' = f");
    }
    Ok(())
}

/// `f_n^{(j)}` evaluated exactly at both endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointDerivative {
    pub j: u64,
    pub at_zero: Rational,
    pub at_r: Rational,
}

/// All derivatives `0 ≤ j ≤ 2n` of `f_n` at `0` and at `r`.
pub fn derivatives_at_endpoints(pair: &NivenPair) -> Vec<EndpointDerivative> {
    (0..=2 * pair.n)
        .map(|j| {
            let d = pair.f.derivative(j as usize);
            EndpointDerivative {
                j,
                at_zero: d.eval(&Rational::zero()),
                at_r: d.eval(&pair.r),
            }
        })
        .collect()
}

/// `F_n(0)` straight from the derivatives of `f_n` at zero, without building
/// `F_n`.
///
/// The alternating sum `Σ_j (−1)^j f^{(2j)}(0)` is accumulated over the
/// common denominator `n!` and divided once at the end; a nonzero remainder
/// means `F_n(0)` is not an integer and is reported as a violation. This is
/// the route used at large `n`.
pub fn big_f_at_zero(r: &Rational, n: u64) -> Result<Integer> {
    let f = build_f_scaled(r, n)?;
    let mut acc = Integer::zero();
    let mut fact = Integer::one(); // (2j)!
    for j in 0..=n as usize {
        if j > 0 {
            fact *= (2 * j - 1) * (2 * j);
        }
        let term = &f.numer[2 * j] * &fact;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let (value, rem) = acc.div_rem(&f.denom);
    if !rem.is_zero() {
        return Err(Error::PropertyViolation(format!(
            "F(0) = {acc}/{} is not an integer (r = {r}, n = {n})",
            f.denom
        )));
    }
    Ok(value)
}
