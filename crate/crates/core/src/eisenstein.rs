//! Closed-form coefficients of `F_n(0) / b^n` as a polynomial in `r`, and
//! the Eisenstein certificate showing it is irreducible when `n = p − 1`.
//!
//! For even `n`,
//!
//! ```text
//! F_n(0) = b^n Σ_{i=0}^{n} a_{n,i} r^i,
//! a_{n,i} = (−1)^{i/2} C(n, n−i) (2n−i)!/n!   (i even),   0   (i odd).
//! ```
//!
//! With `p = n + 1` prime, `p` divides every `a_{n,i}` with `i < n` because
//! the product `(n+1)(n+2)⋯(2n−i)` contains `p`, and `p²` does not divide
//! `a_{n,0} = (n+1)⋯(2n)` because `2p > 2n`. The leading coefficient is `±1`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::exact_arith::{
    binomial, is_prime, next_odd_prime_at_least, p_adic_valuation, rising_product, Integer,
    Rational,
};
use crate::niven;
use crate::{Error, Result};

/// `a_{n,0} … a_{n,n}` for one even `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub n: u64,
    pub entries: Vec<Integer>,
}

impl CoefficientTable {
    /// `b^n Σ a_{n,i} r^i`, computed as the integer `Σ a_{n,i} a^i b^{n−i}`
    /// by homogeneous Horner.
    pub fn scaled_value(&self, r: &Rational) -> Integer {
        let a = r.numer();
        let b = r.denom();
        let mut acc = Integer::zero();
        let mut b_pow = Integer::one();
        for c in self.entries.iter().rev() {
            acc = acc * a + c * &b_pow;
            b_pow *= b;
        }
        acc
    }
}

fn check_even(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 2".into()));
    }
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    Ok(())
}

/// `a_{n,i}` straight from the formula, one binomial and one product per call.
pub fn closed_form_coeff(n: u64, i: u64) -> Result<Integer> {
    check_even(n)?;
    if i > n {
        return Err(Error::InvalidInput(format!("index {i} exceeds n = {n}")));
    }
    if i % 2 == 1 {
        return Ok(Integer::zero());
    }
    let mag = binomial(n, n - i) * rising_product(n + 1, 2 * n - i);
    Ok(if (i / 2).is_multiple_of(2) { mag } else { -mag })
}

/// The full table, built downward from `a_{n,n} = (−1)^{n/2}` with
///
/// ```text
/// a_{n,i−2} = −a_{n,i} · i(i−1)/((n−i+2)(n−i+1)) · (2n−i+1)(2n−i+2).
/// ```
pub fn closed_form_coeffs(n: u64) -> Result<CoefficientTable> {
    check_even(n)?;
    let mut entries = alloc::vec![Integer::zero(); n as usize + 1];
    // |a_{n,i}| = C(n, i) · rising_product(n+1, 2n−i); track the two factors.
    let mut binom = Integer::one();
    let mut rising = Integer::one();
    let mut i = n;
    loop {
        let mag = &binom * &rising;
        entries[i as usize] = if (i / 2).is_multiple_of(2) { mag } else { -mag };
        if i == 0 {
            break;
        }
        binom = binom * (i * (i - 1)) / ((n - i + 2) * (n - i + 1));
        rising *= (2 * n - i + 1) * (2 * n - i + 2);
        i -= 2;
    }
    Ok(CoefficientTable { n, entries })
}

/// Compares the closed form against `F_n(0)` computed from derivatives of
/// `f_n`.
pub fn cross_check_closed_form(r: &Rational, n: u64) -> Result<bool> {
    let table = closed_form_coeffs(n)?;
    let symbolic = niven::big_f_at_zero(r, n)?;
    Ok(table.scaled_value(r) == symbolic)
}

/// Eisenstein data for `F_{p−1}(0) / b^{p−1}` at an odd prime `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisensteinCertificate {
    pub p: u64,
    pub n: u64,
    /// `(i, v_p(a_{n,i}))` for even `i ≤ n − 2`; odd-index coefficients vanish.
    pub divisibility_evidence: Vec<(u64, u64)>,
    pub constant_term_valuation: u64,
    pub leading_term: Integer,
}

pub fn eisenstein_check(p: u64) -> Result<EisensteinCertificate> {
    if p < 3 || !is_prime(&Integer::from(p)) {
        return Err(Error::NotOddPrime(format!("{p}")));
    }
    let n = p - 1;
    let table = closed_form_coeffs(n)?;
    certificate_from_table(p, &table)
}

fn certificate_from_table(p: u64, table: &CoefficientTable) -> Result<EisensteinCertificate> {
    let n = table.n;
    let prime = Integer::from(p);
    let mut divisibility_evidence = Vec::with_capacity(n as usize / 2);
    for i in (0..n).step_by(2) {
        let v = p_adic_valuation(&table.entries[i as usize], &prime)?;
        if v == 0 {
            return Err(Error::CheckFailed(format!("{p} does not divide a_{{{n},{i}}}")));
        }
        divisibility_evidence.push((i, v));
    }
    for i in (1..n).step_by(2) {
        if !table.entries[i as usize].is_zero() {
            return Err(Error::CheckFailed(format!("a_{{{n},{i}}} is nonzero")));
        }
    }
    let constant_term_valuation = divisibility_evidence[0].1;
    if constant_term_valuation != 1 {
        return Err(Error::CheckFailed(format!(
            "v_{p}(a_{{{n},0}}) = {constant_term_valuation}, expected 1"
        )));
    }
    let leading_term = table.entries[n as usize].clone();
    if !leading_term.abs().is_one() || (&leading_term % &prime).is_zero() {
        return Err(Error::CheckFailed(format!(
            "leading coefficient {leading_term} is not a unit mod {p}"
        )));
    }
    Ok(EisensteinCertificate {
        p,
        n,
        divisibility_evidence,
        constant_term_valuation,
        leading_term,
    })
}

/// `n ≥ N` with `F_n(0) ≠ 0`, backed by an Eisenstein certificate and a
/// direct evaluation at the given `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Property3Witness {
    pub big_n: u64,
    pub p: u64,
    pub n: u64,
    pub certificate: EisensteinCertificate,
    pub r: Rational,
    pub f0: Integer,
}

/// Picks the smallest odd prime `p > N`, takes `n = p − 1`, certifies it and
/// evaluates `F_n(0)` at `r`.
pub fn find_witness(big_n: u64, r: &Rational) -> Result<Property3Witness> {
    if big_n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    if !r.is_positive() {
        return Err(Error::InvalidInput(format!("r must be positive, got {r}")));
    }
    let p = next_odd_prime_at_least(big_n + 1);
    let certificate = eisenstein_check(p)?;
    let n = p - 1;
    let f0 = niven::big_f_at_zero(r, n)?;
    if f0.is_zero() {
        return Err(Error::PropertyViolation(format!(
            "F_{n}(0) vanishes at r = {r} despite the Eisenstein certificate"
        )));
    }
    Ok(Property3Witness {
        big_n,
        p,
        n,
        certificate,
        r: r.clone(),
        f0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::odd_primes_up_to;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(xs: &[i64]) -> Vec<Integer> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn table_examples() {
        assert_eq!(closed_form_coeffs(2).unwrap().entries, ints(&[12, 0, -1]));
        let t4 = closed_form_coeffs(4).unwrap();
        assert_eq!(t4.entries[0], 1680.into());
        // a_{4,2} = -C(4,2) * (6!/4!) = -6 * 30
        assert_eq!(t4.entries, ints(&[1680, 0, -180, 0, 1]));
        for n in (2..=40).step_by(2) {
            let t = closed_form_coeffs(n).unwrap();
            assert!(t.entries[n as usize].abs().is_one());
            for i in 0..=n {
                assert_eq!(t.entries[i as usize], closed_form_coeff(n, i).unwrap(), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn odd_and_zero_n_rejected() {
        assert_eq!(closed_form_coeffs(3), Err(Error::OddN(3)));
        assert!(matches!(closed_form_coeffs(0), Err(Error::InvalidInput(_))));
        assert_eq!(cross_check_closed_form(&q(1, 1), 5), Err(Error::OddN(5)));
    }

    #[test]
    fn cross_check_examples() {
        assert!(cross_check_closed_form(&q(1, 1), 2).unwrap());
        assert_eq!(closed_form_coeffs(2).unwrap().scaled_value(&q(1, 1)), 11.into());
        assert!(cross_check_closed_form(&q(22, 7), 2).unwrap());
        assert_eq!(closed_form_coeffs(2).unwrap().scaled_value(&q(22, 7)), 104.into());
        assert!(cross_check_closed_form(&q(1, 1), 4).unwrap());
    }

    #[test]
    fn closed_form_matches_full_f_construction() {
        for n in (2..=12).step_by(2) {
            for (a, b) in [(1, 1), (22, 7), (9, 4), (355, 113)] {
                let r = q(a, b);
                let pair = niven::build_big_f(&r, n).unwrap();
                let closed = closed_form_coeffs(n).unwrap().scaled_value(&r);
                assert_eq!(Rational::from_integer(closed), pair.big_f_at_0);
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let c = eisenstein_check(3).unwrap();
        assert_eq!((c.p, c.n), (3, 2));
        assert_eq!(c.divisibility_evidence, [(0, 1)]);
        assert_eq!(c.constant_term_valuation, 1);
        assert_eq!(c.leading_term, (-1).into());

        let c = eisenstein_check(5).unwrap();
        assert_eq!(c.divisibility_evidence, [(0, 1), (2, 1)]);
        assert_eq!(c.leading_term, 1.into());

        let c = eisenstein_check(101).unwrap();
        assert_eq!(c.n, 100);
        assert_eq!(c.divisibility_evidence.len(), 50);
        assert!(c.divisibility_evidence.iter().all(|&(_, v)| v >= 1));
    }

    #[test]
    fn certificate_rejects_non_odd_primes() {
        for p in [0, 1, 2, 4, 9, 15, 100] {
            assert!(matches!(eisenstein_check(p), Err(Error::NotOddPrime(_))), "p = {p}");
        }
    }

    #[test]
    fn broken_table_is_caught() {
        let mut t = closed_form_coeffs(4).unwrap();
        t.entries[0] *= 5;
        assert!(matches!(certificate_from_table(5, &t), Err(Error::CheckFailed(_))));
        let mut t = closed_form_coeffs(4).unwrap();
        t.entries[2] += 1;
        assert!(matches!(certificate_from_table(5, &t), Err(Error::CheckFailed(_))));
        let mut t = closed_form_coeffs(4).unwrap();
        t.entries[4] = 5.into();
        assert!(matches!(certificate_from_table(5, &t), Err(Error::CheckFailed(_))));
    }

    #[test]
    fn every_odd_prime_up_to_101_certifies() {
        for p in odd_primes_up_to(101) {
            let c = eisenstein_check(p).unwrap();
            assert_eq!(c.constant_term_valuation, 1, "p = {p}");
        }
    }

    #[test]
    fn constant_term_has_single_factor_of_p() {
        for p in odd_primes_up_to(101) {
            let n = p - 1;
            let a0 = rising_product(n + 1, 2 * n);
            assert_eq!(closed_form_coeff(n, 0).unwrap(), a0);
            let without = rising_product(n + 2, 2 * n);
            assert_eq!(p_adic_valuation(&without, &p.into()).unwrap(), 0, "p = {p}");
        }
    }

    #[test]
    fn witness_examples() {
        let w = find_witness(1, &q(1, 1)).unwrap();
        assert_eq!((w.p, w.n, w.f0.clone()), (3, 2, 11.into()));
        let w = find_witness(2, &q(22, 7)).unwrap();
        assert_eq!((w.p, w.n, w.f0.clone()), (3, 2, 104.into()));
        let w = find_witness(4, &q(1, 1)).unwrap();
        assert_eq!((w.p, w.n), (5, 4));
        assert!(w.n >= w.big_n);
        assert!(matches!(find_witness(0, &q(1, 1)), Err(Error::InvalidInput(_))));
        assert!(matches!(find_witness(3, &q(-1, 1)), Err(Error::InvalidInput(_))));
    }
}
