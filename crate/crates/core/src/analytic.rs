//! The analytic side of the argument, done with certified error bounds.
//!
//! * [`envelope_check`]: `0 < f_n(x) < (b r²)^n / n!` on `(0, r)`, exactly.
//! * [`threshold`]: the first `n` with `r (b r²)^n / n! < 1`.
//! * [`sin_series`] / [`cos_series`]: Taylor series with the first omitted
//!   term as the tail bound.
//! * [`quadrature_vs_bracket`]: `∫_0^r f_n(x) sin x dx` by term-wise
//!   integration against the sine series, compared with the antiderivative
//!   bracket `F'(r) sin r − F(r) cos r + F(0)`.
//!
//! Values are carried as [`HighPrecision`]: a decimal fixed-point number
//! with an error radius. Every bound is a rational computed exactly before
//! rounding, so the enclosures are rigorous.

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::exact_arith::{factorial, Integer, Rational};
use crate::niven::{self, NivenPair};
use crate::{Error, Result};

/// Largest requested digit count the series evaluators accept.
pub const MAX_DIGITS: u32 = 200;
/// Largest `|x|` the series evaluators accept; no argument reduction is done.
pub const MAX_ABS_ARGUMENT: i64 = 16;
/// Extra decimal digits carried beyond the requested precision.
pub const GUARD_DIGITS: u32 = 10;

fn pow10(e: u32) -> Integer {
    num_traits::pow(Integer::from(10u8), e as usize)
}

/// `10^e` for any sign of `e`.
pub fn ten_to(e: i64) -> Rational {
    let mag = pow10(e.unsigned_abs() as u32);
    if e < 0 {
        Rational::new(Integer::one(), mag)
    } else {
        Rational::from_integer(mag)
    }
}

/// `mantissa / 10^scale ± error_ulps / 10^scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighPrecision {
    mantissa: Integer,
    scale: u32,
    error_ulps: Integer,
}

impl HighPrecision {
    /// Rounds `value` to `scale` decimals and widens `error` to cover the
    /// rounding.
    pub fn enclose(value: &Rational, error: &Rational, scale: u32) -> Self {
        let unit = Rational::from_integer(pow10(scale));
        let scaled = value * &unit;
        let mantissa = scaled.round().to_integer();
        let mut error_ulps = (error.abs() * &unit).ceil().to_integer();
        if Rational::from_integer(mantissa.clone()) != scaled {
            error_ulps += 1;
        }
        HighPrecision {
            mantissa,
            scale,
            error_ulps,
        }
    }

    pub fn exact(value: &Rational, scale: u32) -> Self {
        Self::enclose(value, &Rational::zero(), scale)
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn value(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow10(self.scale))
    }

    pub fn error_bound(&self) -> Rational {
        Rational::new(self.error_ulps.clone(), pow10(self.scale))
    }

    pub fn lower(&self) -> Rational {
        Rational::new(&self.mantissa - &self.error_ulps, pow10(self.scale))
    }

    pub fn upper(&self) -> Rational {
        Rational::new(&self.mantissa + &self.error_ulps, pow10(self.scale))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower() <= x && x <= &self.upper()
    }

    pub fn overlaps(&self, other: &HighPrecision) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Exact product with a rational, re-rounded to the same scale.
    pub fn mul_rational(&self, q: &Rational) -> Self {
        Self::enclose(
            &(self.value() * q),
            &(self.error_bound() * q.abs()),
            self.scale,
        )
    }

    pub fn add(&self, other: &HighPrecision) -> Self {
        let scale = self.scale.max(other.scale);
        Self::enclose(
            &(self.value() + other.value()),
            &(self.error_bound() + other.error_bound()),
            scale,
        )
    }

    pub fn sub(&self, other: &HighPrecision) -> Self {
        let scale = self.scale.max(other.scale);
        Self::enclose(
            &(self.value() - other.value()),
            &(self.error_bound() + other.error_bound()),
            scale,
        )
    }

    /// `(x ± e)(y ± f) ⊆ xy ± (|x| f + |y| e + e f)`.
    pub fn mul(&self, other: &HighPrecision) -> Self {
        let (x, e) = (self.value(), self.error_bound());
        let (y, f) = (other.value(), other.error_bound());
        let err = x.abs() * &f + y.abs() * &e + &e * &f;
        Self::enclose(&(x * y), &err, self.scale.max(other.scale))
    }

    /// Decimal expansion of the midpoint, truncated to `digits` places.
    pub fn to_decimal(&self, digits: u32) -> String {
        let digits = digits.min(self.scale);
        let drop = pow10(self.scale - digits);
        let (q, _) = self.mantissa.abs().div_rem(&drop);
        let unit = pow10(digits);
        let (int_part, frac) = q.div_rem(&unit);
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        let mut frac_str = format!("{frac}");
        while frac_str.len() < digits as usize {
            frac_str.insert(0, '0');
        }
        format!("{sign}{int_part}.{frac_str}")
    }
}

impl fmt::Display for HighPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {}e-{}",
            self.to_decimal(self.scale),
            self.error_ulps,
            self.scale
        )
    }
}

fn check_series_args(x: &Rational, digits: u32) -> Result<()> {
    if digits > MAX_DIGITS {
        return Err(Error::PrecisionUnachievable(format!(
            "{digits} digits requested, at most {MAX_DIGITS} supported"
        )));
    }
    if x.abs() > Rational::from_integer(MAX_ABS_ARGUMENT.into()) {
        return Err(Error::PrecisionUnachievable(format!(
            "|x| = {} exceeds {MAX_ABS_ARGUMENT}; no argument reduction is performed",
            x.abs()
        )));
    }
    Ok(())
}

/// Sums `Σ_k (−1)^k x^{2k+offset}/(2k+offset)!` until the next term is below
/// `eps` and the magnitudes are decreasing from there on. Returns the partial
/// sum and the first omitted term's magnitude, which bounds the tail.
fn alternating_taylor(x: &Rational, offset: u64, eps: &Rational) -> (Rational, Rational) {
    let x2 = x * x;
    let mut term = if offset == 1 { x.clone() } else { Rational::one() };
    let mut sum = Rational::zero();
    let mut k: u64 = 0;
    loop {
        let lo = 2 * k + offset + 1;
        let decreasing = Rational::from_integer(Integer::from(lo * (lo + 1))) > x2;
        if term.abs() < *eps && decreasing {
            return (sum, term.abs());
        }
        sum += &term;
        term = -term * &x2 / Rational::from_integer(Integer::from(lo * (lo + 1)));
        k += 1;
    }
}

/// `sin x` to `digits` decimals, certified.
pub fn sin_series(x: &Rational, digits: u32) -> Result<HighPrecision> {
    check_series_args(x, digits)?;
    let scale = digits + GUARD_DIGITS;
    let (sum, tail) = alternating_taylor(x, 1, &ten_to(-(scale as i64)));
    Ok(HighPrecision::enclose(&sum, &tail, scale))
}

/// `cos x` to `digits` decimals, certified.
pub fn cos_series(x: &Rational, digits: u32) -> Result<HighPrecision> {
    check_series_args(x, digits)?;
    let scale = digits + GUARD_DIGITS;
    let (sum, tail) = alternating_taylor(x, 0, &ten_to(-(scale as i64)));
    Ok(HighPrecision::enclose(&sum, &tail, scale))
}

/// `(b r²)^n / n!`, the envelope of `f_n` on `(0, r)`.
pub fn envelope_bound(r: &Rational, n: u64) -> Rational {
    let br2 = Rational::from_integer(r.denom().clone()) * r * r;
    num_traits::pow(br2, n as usize) / Rational::from_integer(factorial(n))
}

/// Checks `0 < f_n(x) < (b r²)^n / n!` exactly at every sample, and at the
/// maximiser `r/2` where `f_n(r/2) = b^n r^{2n} / (4^n n!)`.
pub fn envelope_check(pair: &NivenPair, samples: &[Rational]) -> Result<bool> {
    let zero = Rational::zero();
    for x in samples {
        if x <= &zero || x >= &pair.r {
            return Err(Error::SampleOutOfRange(format!("{x}")));
        }
    }
    let bound = envelope_bound(&pair.r, pair.n);
    let inside = |x: &Rational| {
        let v = pair.f.eval(x);
        v > zero && v < bound
    };
    let mid = &pair.r / Rational::from_integer(2.into());
    let n = pair.n as usize;
    let peak = num_traits::pow(Rational::from_integer(pair.r.denom().clone()), n)
        * num_traits::pow(pair.r.clone(), 2 * n)
        / (num_traits::pow(Rational::from_integer(4.into()), n)
            * Rational::from_integer(factorial(pair.n)));
    Ok(samples.iter().all(inside) && pair.f.eval(&mid) == peak && peak < bound)
}

/// The smallest `n*` with `r (b r²)^n / n! < 1` for every `n ≥ n*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdResult {
    pub r: Rational,
    pub n_star: u64,
    pub term_at_n_star: Rational,
}

/// `r (b r²)^n / n! = a^{2n+1} / (b^{n+1} n!)`.
pub fn threshold_term(r: &Rational, n: u64) -> Rational {
    envelope_bound(r, n) * r
}

/// Walks `t_{n+1} = t_n · (b r²)/(n+1)` from `t_0 = r` in integer
/// numerator/denominator form.
///
/// The terms are not monotone while `n + 1 < b r²` and can dip below 1 and
/// rise again, so the walk continues until `t_n < 1` and the ratio
/// `a²/(b (n+1))` is at most 1. From there on every term stays below 1, and
/// `n*` is the start of the final run of terms below 1.
pub fn threshold(r: &Rational) -> Result<ThresholdResult> {
    if !r.is_positive() {
        return Err(Error::InvalidInput(format!("r must be positive, got {r}")));
    }
    let a = r.numer();
    let b = r.denom();
    let a2 = a * a;
    let mut num = a.clone();
    let mut den = b.clone();
    let mut n: u64 = 0;
    let mut run_start: Option<(u64, Integer, Integer)> = None;
    loop {
        n += 1;
        num *= &a2;
        den *= b * Integer::from(n);
        if num >= den {
            run_start = None;
            continue;
        }
        if run_start.is_none() {
            run_start = Some((n, num.clone(), den.clone()));
        }
        if a2 <= b * Integer::from(n + 1) {
            let (n_star, num, den) = run_start.expect("set above");
            return Ok(ThresholdResult {
                r: r.clone(),
                n_star,
                term_at_n_star: Rational::new(num, den),
            });
        }
    }
}

/// Both sides of `∫_0^r f_n sin = [F' sin − F cos]_0^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadratureComparison {
    pub lhs: HighPrecision,
    pub rhs: HighPrecision,
    /// `|lhs − rhs|` between the midpoints.
    pub gap: Rational,
    pub agree: bool,
}

/// Decimal digits of `|x|` rounded up, at least 1.
fn magnitude_digits(x: &Rational) -> u32 {
    let int = x.abs().ceil().to_integer();
    format!("{int}").len() as u32
}

/// `∫_0^r f(x) sin x dx` as `Σ_j (−1)^j/(2j+1)! · ∫_0^r f(x) x^{2j+1} dx`.
///
/// Each inner integral is exact. For `f ≥ 0` on `[0, r]` the inner integrals
/// shrink by at most `r²` per step, so once `(2j+2)(2j+3) > r²` the series
/// alternates with decreasing terms and the first omitted term bounds the
/// tail.
pub fn integral_f_sin(pair: &NivenPair, scale: u32) -> HighPrecision {
    let eps = ten_to(-(scale as i64));
    let r2 = &pair.r * &pair.r;
    let mut sum = Rational::zero();
    let mut inv_fact = Rational::one(); // 1/(2j+1)!
    let mut j: u64 = 0;
    loop {
        let inner = pair.f.integrate_against_power(2 * j as usize + 1, &pair.r);
        let term = &inner * &inv_fact;
        let next = Rational::from_integer(Integer::from((2 * j + 2) * (2 * j + 3)));
        if term.abs() < eps && next > r2 {
            return HighPrecision::enclose(&sum, &term.abs(), scale);
        }
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        inv_fact /= next;
        j += 1;
    }
}

/// Computes both sides to `digits` decimals and compares them.
///
/// Working precision is `digits + GUARD_DIGITS` plus enough extra digits to
/// absorb multiplying the sine and cosine enclosures by `F'(r)` and `F(r)`.
/// `agree` requires the enclosures to overlap and the midpoints to differ by
/// at most `10^{−(digits−5)}`.
pub fn quadrature_vs_bracket(r: &Rational, n: u64, digits: u32) -> Result<QuadratureComparison> {
    check_series_args(r, digits)?;
    let pair = niven::build_big_f(r, n)?;
    let df_r = pair.big_f.derivative(1).eval(r);
    let f_r = pair.big_f_at_r.clone();
    let f_0 = pair.big_f_at_0.clone();

    let extra = magnitude_digits(&df_r).max(magnitude_digits(&f_r));
    let scale = digits + GUARD_DIGITS + extra;
    let eps = ten_to(-(scale as i64));

    let (sin_sum, sin_tail) = alternating_taylor(r, 1, &eps);
    let (cos_sum, cos_tail) = alternating_taylor(r, 0, &eps);
    let sin_r = HighPrecision::enclose(&sin_sum, &sin_tail, scale);
    let cos_r = HighPrecision::enclose(&cos_sum, &cos_tail, scale);
    let rhs = sin_r
        .mul_rational(&df_r)
        .sub(&cos_r.mul_rational(&f_r))
        .add(&HighPrecision::exact(&f_0, scale));

    let lhs = integral_f_sin(&pair, scale);
    let gap = (lhs.value() - rhs.value()).abs();
    let agree = lhs.overlaps(&rhs) && gap <= ten_to(5 - digits as i64);
    Ok(QuadratureComparison {
        lhs,
        rhs,
        gap,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn dec(s: &str) -> Rational {
        let (int, frac) = s.split_once('.').unwrap();
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let v = Rational::new(digits.parse().unwrap(), pow10(frac.len() as u32));
        if neg {
            -v
        } else {
            v
        }
    }

    // 50-digit reference values from an independent multiprecision library.
    const SIN_1: &str = "0.84147098480789650665250232163029899962256306079837";
    const COS_1: &str = "0.54030230586813971740093660744297660373231042061792";
    const SIN_355_113: &str = "-0.00000026676418906241914840637452887346888682210542624283";
    const BRACKET_1_1: &str = "0.077924403455824058545624463483747792912816097965783";

    #[test]
    fn series_at_zero_are_exact() {
        let s = sin_series(&q(0, 1), 30).unwrap();
        assert_eq!(s.value(), q(0, 1));
        assert!(s.error_bound().is_zero());
        let c = cos_series(&q(0, 1), 30).unwrap();
        assert_eq!(c.value(), q(1, 1));
        assert!(c.error_bound().is_zero());
    }

    #[test]
    fn sin_cos_one_against_reference() {
        let d = 40;
        let s = sin_series(&q(1, 1), d).unwrap();
        let c = cos_series(&q(1, 1), d).unwrap();
        assert!(s.error_bound() <= ten_to(-(d as i64)));
        // The reference is itself rounded at 50 digits.
        let slack = ten_to(-48);
        assert!((s.value() - dec(SIN_1)).abs() <= s.error_bound() + &slack);
        assert!((c.value() - dec(COS_1)).abs() <= c.error_bound() + &slack);
        assert!(s.to_decimal(9).starts_with("0.841470984"));
        assert!(c.to_decimal(9).starts_with("0.540302305"));
    }

    #[test]
    fn sin_near_pi_is_small_and_nonzero() {
        let s = sin_series(&q(355, 113), 30).unwrap();
        assert!(s.contains(&s.value()));
        assert!((s.value() - dec(SIN_355_113)).abs() <= s.error_bound() + ten_to(-48));
        assert!(s.upper() < q(0, 1));
        assert!(s.value().abs() > q(2667, 10_000_000_000));
        assert!(s.value().abs() < q(2668, 10_000_000_000));
    }

    #[test]
    fn series_argument_limits() {
        assert!(matches!(sin_series(&q(1, 1), 201), Err(Error::PrecisionUnachievable(_))));
        assert!(matches!(cos_series(&q(17, 1), 20), Err(Error::PrecisionUnachievable(_))));
        let s = sin_series(&q(16, 1), 200).unwrap();
        let c = cos_series(&q(-16, 1), 200).unwrap();
        let one = s.mul(&s).add(&c.mul(&c));
        assert!(one.contains(&q(1, 1)));
    }

    #[test]
    fn pythagorean_identity_at_22_over_7() {
        let d = 40;
        let x = q(22, 7);
        let s = sin_series(&x, d).unwrap();
        let c = cos_series(&x, d).unwrap();
        let one = s.mul(&s).add(&c.mul(&c));
        assert!(one.contains(&q(1, 1)));
        assert!((one.value() - q(1, 1)).abs() < ten_to(2 - d as i64));
    }

    #[test]
    fn envelope_examples() {
        let pair = niven::build_big_f(&q(1, 1), 1).unwrap();
        assert_eq!(pair.f.eval(&q(1, 2)), q(1, 4));
        assert_eq!(envelope_bound(&q(1, 1), 1), q(1, 1));
        assert!(envelope_check(&pair, &[q(1, 2)]).unwrap());

        let pair = niven::build_big_f(&q(1, 1), 2).unwrap();
        assert_eq!(pair.f.eval(&q(1, 2)), q(1, 32));
        assert_eq!(envelope_bound(&q(1, 1), 2), q(1, 2));
        assert!(envelope_check(&pair, &[q(1, 2), q(1, 10), q(99, 100)]).unwrap());

        assert!(matches!(envelope_check(&pair, &[q(1, 1)]), Err(Error::SampleOutOfRange(_))));
        assert!(matches!(envelope_check(&pair, &[q(0, 1)]), Err(Error::SampleOutOfRange(_))));
    }

    #[test]
    fn envelope_holds_on_a_grid() {
        for (a, b) in [(22, 7), (355, 113), (5, 2)] {
            let r = q(a, b);
            for n in 1..=8 {
                let pair = niven::build_big_f(&r, n).unwrap();
                let samples: Vec<_> = (1..40).map(|i| &r * q(i, 40)).collect();
                assert!(envelope_check(&pair, &samples).unwrap());
            }
        }
    }

    /// Oracle: the terms in plain rationals up to well past `b r²`; `n*` is
    /// one more than the last term that is at least 1.
    fn threshold_oracle(r: &Rational) -> u64 {
        let br2 = Rational::from_integer(r.denom().clone()) * r * r;
        let horizon: u64 = format!("{}", br2.ceil().to_integer()).parse::<u64>().unwrap() + 400;
        let mut t = r.clone();
        let mut last_bad = 0;
        for n in 1..=horizon {
            t = t * &br2 / Rational::from_integer(n.into());
            if t >= Rational::one() {
                last_bad = n;
            }
        }
        assert!(t < Rational::one());
        last_bad + 1
    }

    #[test]
    fn threshold_values() {
        let t = threshold(&q(1, 1)).unwrap();
        assert_eq!(t.n_star, 2);
        assert_eq!(t.term_at_n_star, q(1, 2));
        assert_eq!(threshold(&q(2, 1)).unwrap().n_star, 10);
        assert_eq!(threshold(&q(22, 7)).unwrap().n_star, 186);
        for r in [q(1, 1), q(2, 1), q(22, 7), q(1, 3), q(7, 2), q(100, 1001), q(31, 97)] {
            let t = threshold(&r).unwrap();
            assert_eq!(t.n_star, threshold_oracle(&r));
            assert_eq!(t.term_at_n_star, threshold_term(&r, t.n_star));
            assert!(t.term_at_n_star < Rational::one());
            if t.n_star > 1 {
                assert!(threshold_term(&r, t.n_star - 1) >= Rational::one());
            }
        }
        assert!(matches!(threshold(&q(0, 1)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn threshold_skips_early_dip() {
        // t_1 = 10^6/1001^2 < 1, but t_2 = t_1 · 10^4/2002 > 1.
        let r = q(100, 1001);
        assert!(threshold_term(&r, 1) < Rational::one());
        assert!(threshold_term(&r, 2) >= Rational::one());
        let t = threshold(&r).unwrap();
        assert_eq!(t.n_star, threshold_oracle(&r));
        assert_eq!(t.n_star, 22);
        assert!(threshold_term(&r, t.n_star - 1) >= Rational::one());
        for n in t.n_star..t.n_star + 40 {
            assert!(threshold_term(&r, n) < Rational::one(), "n = {n}");
        }
    }

    #[test]
    fn small_r_threshold_is_one() {
        let t = threshold(&q(1, 3)).unwrap();
        assert_eq!(t.n_star, 1);
        assert_eq!(t.term_at_n_star, q(1, 9));
    }

    #[test]
    fn terms_decay_past_br2() {
        let r = q(22, 7);
        let start = (Rational::from_integer(7.into()) * &r * &r).ceil().to_integer();
        let start: u64 = format!("{start}").parse().unwrap();
        for n in start..start + 50 {
            assert!(threshold_term(&r, n + 1) < threshold_term(&r, n));
        }
    }

    #[test]
    fn bracket_at_r1_n1() {
        let cmp = quadrature_vs_bracket(&q(1, 1), 1, 40).unwrap();
        assert!(cmp.agree);
        assert!(cmp.gap < ten_to(-35));
        let reference = dec(BRACKET_1_1);
        let slack = ten_to(-49);
        assert!((cmp.lhs.value() - &reference).abs() <= cmp.lhs.error_bound() + &slack);
        assert!((cmp.rhs.value() - &reference).abs() <= cmp.rhs.error_bound() + &slack);
        assert!(cmp.lhs.to_decimal(7).starts_with("0.0779244"));
    }

    #[test]
    fn bracket_agrees_for_small_n() {
        for r in [q(1, 1), q(2, 1), q(22, 7), q(355, 113)] {
            for n in 1..=6 {
                let cmp = quadrature_vs_bracket(&r, n, 40).unwrap();
                assert!(cmp.agree, "r = {r}, n = {n}");
                assert!(cmp.gap < ten_to(-35));
                assert!(cmp.lhs.value().abs() < threshold_term(&r, n));
            }
        }
    }

    #[test]
    fn quadrature_rejects_out_of_range() {
        assert!(matches!(
            quadrature_vs_bracket(&q(1, 1), 1, 300),
            Err(Error::PrecisionUnachievable(_))
        ));
        assert!(matches!(
            quadrature_vs_bracket(&q(20, 1), 1, 40),
            Err(Error::PrecisionUnachievable(_))
        ));
    }

    #[test]
    fn decimal_rendering() {
        let h = HighPrecision::exact(&q(-1, 8), 4);
        assert_eq!(h.to_decimal(4), "-0.1250");
        assert_eq!(h.to_decimal(2), "-0.12");
        assert_eq!(HighPrecision::exact(&q(5, 2), 0).to_decimal(0), "3");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn pythagorean_identity(num in 1i64..4000, den in 1i64..1000) {
            let x = q(num, den);
            prop_assume!(x < q(4, 1));
            let s = sin_series(&x, 40).unwrap();
            let c = cos_series(&x, 40).unwrap();
            let one = s.mul(&s).add(&c.mul(&c));
            prop_assert!(one.contains(&q(1, 1)));
        }
    }
}
