//! Refutation certificates for a claimed rational value of `π`.
//!
//! A claim is a positive rational `r` together with `k = cos r ∈ {−1, 1}`,
//! under the premise `sin r = 0`. For such `r` and any `n`,
//!
//! ```text
//! ∫_0^r f_n(x) sin x dx = [F_n' sin − F_n cos]_0^r = (1 − k) F_n(0),
//! |∫_0^r f_n(x) sin x dx| < r (b r²)^n / n!.
//! ```
//!
//! Once the right-hand bound is below 1 the integer `(1 − k) F_n(0)` must
//! vanish, and an `n` with `F_n(0) ≠ 0` then forces `k = 1`. A certificate
//! records every integer this chain depends on so that [`verify`] can redo
//! the arithmetic without trusting [`certify`]. Claims with `k = 1` are
//! consistent with the chain and are never refuted.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::analytic::{threshold, threshold_term, ThresholdResult};
use crate::eisenstein::{closed_form_coeffs, eisenstein_check, EisensteinCertificate};
use crate::exact_arith::{is_prime, next_odd_prime_at_least, p_adic_valuation, Integer, Rational};
use crate::niven::big_f_at_zero;
use crate::{CertField, Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const FORCES_K_EQUALS_1: &str = "FORCES_K_EQUALS_1";

/// `r` is claimed to satisfy `sin r = 0` and `cos r = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiClaim {
    pub r: Rational,
    pub k: i8,
}

impl PiClaim {
    pub fn new(r: Rational, k: i8) -> Result<Self> {
        let claim = PiClaim { r, k };
        claim.validate()?;
        Ok(claim)
    }

    fn validate(&self) -> Result<()> {
        if !self.r.is_positive() {
            return Err(Error::InvalidClaim(alloc::format!(
                "r must be positive, got {}",
                self.r
            )));
        }
        if self.k != 1 && self.k != -1 {
            return Err(Error::InvalidClaim(alloc::format!(
                "k must be 1 or -1 since sin² + cos² = 1, got {}",
                self.k
            )));
        }
        Ok(())
    }
}

/// `r (b r²)^n / n! < 1` at the certificate's `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub term: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationCertificate {
    pub schema_version: u32,
    pub claim: PiClaim,
    pub threshold: ThresholdResult,
    pub prime: u64,
    pub n: u64,
    pub eisenstein: EisensteinCertificate,
    /// `F_n(0)` at the claimed `r`.
    pub f0: Integer,
    pub bound_check: BoundCheck,
    pub conclusion: String,
}

/// Builds the certificate refuting a `k = −1` claim.
///
/// `n = p − 1` for the smallest odd prime `p` with `p − 1 ≥ n*`, where `n*`
/// is the threshold for `r`.
pub fn certify(claim: &PiClaim) -> Result<RefutationCertificate> {
    claim.validate()?;
    if claim.k == 1 {
        return Err(Error::NotRefutable);
    }
    let r = &claim.r;
    let threshold = threshold(r)?;
    let prime = next_odd_prime_at_least(threshold.n_star + 1);
    let n = prime - 1;
    let eisenstein = eisenstein_check(prime)?;

    let closed = closed_form_coeffs(n)?.scaled_value(r);
    let symbolic = big_f_at_zero(r, n)?;
    if closed != symbolic {
        return Err(Error::PropertyViolation(alloc::format!(
            "closed form and derivative sum disagree on F_{n}(0) at r = {r}"
        )));
    }
    if symbolic.is_zero() {
        return Err(Error::PropertyViolation(alloc::format!(
            "F_{n}(0) vanishes at r = {r}"
        )));
    }

    let term = threshold_term(r, n);
    let holds = term < Rational::one();
    if !holds {
        return Err(Error::PropertyViolation(alloc::format!(
            "bound {term} is not below 1 at n = {n}"
        )));
    }

    Ok(RefutationCertificate {
        schema_version: SCHEMA_VERSION,
        claim: claim.clone(),
        threshold,
        prime,
        n,
        eisenstein,
        f0: symbolic,
        bound_check: BoundCheck { term, holds },
        conclusion: FORCES_K_EQUALS_1.into(),
    })
}

fn ensure(ok: bool, field: CertField) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::VerificationFailed(field))
    }
}

/// Re-derives every recorded quantity from the certificate's own integers.
///
/// Fields are checked in declaration order and the first mismatch is
/// reported.
pub fn verify(cert: &RefutationCertificate) -> Result<()> {
    use CertField as F;
    let one = Rational::one();

    ensure(cert.schema_version == SCHEMA_VERSION, F::SchemaVersion)?;

    let r = &cert.claim.r;
    ensure(r.is_positive() && cert.claim.k == -1, F::Claim)?;

    let t = &cert.threshold;
    ensure(&t.r == r && t.n_star >= 1, F::Threshold)?;
    ensure(t.term_at_n_star == threshold_term(r, t.n_star), F::Threshold)?;
    ensure(t.term_at_n_star < one, F::Threshold)?;
    ensure(t.n_star == 1 || threshold_term(r, t.n_star - 1) >= one, F::Threshold)?;
    let recomputed = threshold(r).map_err(|_| Error::VerificationFailed(F::Threshold))?;
    ensure(&recomputed == t, F::Threshold)?;

    let p = cert.prime;
    ensure(p >= 3 && is_prime(&Integer::from(p)), F::Prime)?;
    ensure(cert.n == p - 1 && cert.n >= t.n_star, F::N)?;

    verify_eisenstein(&cert.eisenstein, p, cert.n)?;

    let table = closed_form_coeffs(cert.n).map_err(|_| Error::VerificationFailed(F::N))?;
    ensure(!cert.f0.is_zero(), F::F0)?;
    ensure(table.scaled_value(r) == cert.f0, F::F0)?;
    let symbolic = big_f_at_zero(r, cert.n).map_err(|_| Error::VerificationFailed(F::F0))?;
    ensure(symbolic == cert.f0, F::F0)?;

    let b = &cert.bound_check;
    ensure(b.holds && b.term < one, F::BoundCheck)?;
    ensure(b.term == threshold_term(r, cert.n), F::BoundCheck)?;

    ensure(cert.conclusion == FORCES_K_EQUALS_1, F::Conclusion)
}

fn verify_eisenstein(e: &EisensteinCertificate, p: u64, n: u64) -> Result<()> {
    let fail = || Error::VerificationFailed(CertField::Eisenstein);
    ensure(e.p == p && e.n == n, CertField::Eisenstein)?;
    let table = closed_form_coeffs(n).map_err(|_| fail())?;
    let prime = Integer::from(p);
    let expected: Vec<(u64, u64)> = (0..n)
        .step_by(2)
        .map(|i| p_adic_valuation(&table.entries[i as usize], &prime).map(|v| (i, v)))
        .collect::<Result<_>>()
        .map_err(|_| fail())?;
    ensure(e.divisibility_evidence == expected, CertField::Eisenstein)?;
    ensure(expected.iter().all(|&(_, v)| v >= 1), CertField::Eisenstein)?;
    ensure(
        (1..n).step_by(2).all(|i| table.entries[i as usize].is_zero()),
        CertField::Eisenstein,
    )?;
    ensure(
        e.constant_term_valuation == 1 && expected.first() == Some(&(0, 1)),
        CertField::Eisenstein,
    )?;
    let lead = &table.entries[n as usize];
    ensure(
        &e.leading_term == lead && lead.abs().is_one() && !(lead % &prime).is_zero(),
        CertField::Eisenstein,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claim(a: i64, b: i64, k: i8) -> PiClaim {
        PiClaim::new(Rational::new(a.into(), b.into()), k).unwrap()
    }

    #[test]
    fn claim_validation() {
        let r = Rational::new(1.into(), 1.into());
        assert!(matches!(PiClaim::new(r.clone(), 0), Err(Error::InvalidClaim(_))));
        assert!(matches!(PiClaim::new(r.clone(), 2), Err(Error::InvalidClaim(_))));
        assert!(matches!(PiClaim::new(-r, -1), Err(Error::InvalidClaim(_))));
    }

    #[test]
    fn certify_r_equals_one() {
        let cert = certify(&claim(1, 1, -1)).unwrap();
        assert_eq!(cert.threshold.n_star, 2);
        assert_eq!((cert.prime, cert.n), (3, 2));
        assert_eq!(cert.f0, 11.into());
        assert_eq!(cert.bound_check.term, Rational::new(1.into(), 2.into()));
        assert!(cert.bound_check.holds);
        assert_eq!(cert.conclusion, FORCES_K_EQUALS_1);
        assert_eq!(verify(&cert), Ok(()));
    }

    #[test]
    fn certify_22_over_7() {
        let cert = certify(&claim(22, 7, -1)).unwrap();
        assert_eq!(cert.threshold.n_star, 186);
        assert_eq!((cert.prime, cert.n), (191, 190));
        assert_eq!(verify(&cert), Ok(()));
    }

    #[test]
    fn certify_when_terms_dip_early() {
        let cert = certify(&claim(100, 1001, -1)).unwrap();
        assert!(cert.threshold.n_star > 2);
        assert_eq!(verify(&cert), Ok(()));

        let mut c = cert.clone();
        c.threshold.n_star = 1;
        c.threshold.term_at_n_star = threshold_term(&c.claim.r, 1);
        assert_eq!(verify(&c), Err(Error::VerificationFailed(CertField::Threshold)));
    }

    #[test]
    fn k_plus_one_is_not_refutable() {
        assert_eq!(certify(&claim(1, 1, 1)), Err(Error::NotRefutable));
    }

    #[test]
    fn tampering_is_detected() {
        let cert = certify(&claim(1, 1, -1)).unwrap();
        let check = |f: &dyn Fn(&mut RefutationCertificate), field: CertField| {
            let mut c = cert.clone();
            f(&mut c);
            assert_eq!(verify(&c), Err(Error::VerificationFailed(field)));
        };
        check(&|c| c.f0 = 0.into(), CertField::F0);
        check(&|c| c.f0 += 1, CertField::F0);
        check(&|c| c.prime = 9, CertField::Prime);
        check(&|c| c.prime = 5, CertField::N);
        check(&|c| c.schema_version = 2, CertField::SchemaVersion);
        check(&|c| c.claim.k = 1, CertField::Claim);
        check(&|c| c.threshold.n_star = 3, CertField::Threshold);
        check(&|c| c.threshold.term_at_n_star = Rational::new(1.into(), 3.into()), CertField::Threshold);
        check(&|c| c.eisenstein.divisibility_evidence[0].1 = 2, CertField::Eisenstein);
        check(&|c| c.eisenstein.leading_term = 1.into(), CertField::Eisenstein);
        check(&|c| c.bound_check.holds = false, CertField::BoundCheck);
        check(&|c| c.conclusion = "FORCES_K_EQUALS_MINUS_1".into(), CertField::Conclusion);
    }

    #[test]
    fn certify_is_deterministic() {
        let c = claim(7, 2, -1);
        assert_eq!(certify(&c).unwrap(), certify(&c).unwrap());
    }
}
