//! Dense univariate polynomials over the rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exact_arith::{rising_product, Integer, Rational};

/// Dense polynomial, `coeffs[i]` is the coefficient of `x^i`.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial has
/// an empty coefficient list and every other polynomial has a nonzero leading
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// The `k`-th formal derivative; zero once `k` exceeds the degree.
    pub fn derivative(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        if k >= self.coeffs.len() {
            return Self::zero();
        }
        let coeffs = self.coeffs[k..]
            .iter()
            .enumerate()
            .map(|(m, c)| c * falling(m + k, k))
            .collect();
        Self::new(coeffs)
    }

    /// `p^{(k)}(0) = k! · c_k`, without forming the derivative polynomial.
    pub fn derivative_at_zero(&self, k: usize) -> Rational {
        match self.coeffs.get(k) {
            Some(c) if !c.is_zero() => c * falling(k, k),
            _ => Rational::zero(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(x) ↦ p(shift + scale · x)`, by Horner over polynomials.
    pub fn compose_linear(&self, shift: &Rational, scale: &Rational) -> Self {
        let inner = Self::new(vec![shift.clone(), scale.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &inner) + &Self::constant(c.clone()))
    }

    /// `∫_0^upper p(x) · x^shift dx`, exactly.
    pub fn integrate_against_power(&self, shift: usize, upper: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut power = upper.clone();
        for _ in 0..shift {
            power *= upper;
        }
        for (m, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (m + shift + 1) as u64;
                acc += c * &power / Rational::from_integer(e.into());
            }
            power *= upper;
        }
        acc
    }
}

/// `m (m−1) ⋯ (m−k+1)` as a rational.
fn falling(m: usize, k: usize) -> Rational {
    Rational::from_integer(rising_product((m - k + 1) as u64, m as u64))
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;

    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        RatPolynomial::new(coeffs)
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;

    fn neg(self) -> RatPolynomial {
        RatPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;

    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;

    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPolynomial::new(coeffs)
    }
}

impl fmt::Display for RatPolynomial {
    /// Ascending powers, e.g. `2 + x - x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) if mag.is_integer() => write!(f, "{mag}*")?,
                (_, false) => write!(f, "({mag})*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl From<Integer> for RatPolynomial {
    fn from(c: Integer) -> Self {
        Self::constant(Rational::from_integer(c))
    }
}
