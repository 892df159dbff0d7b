use alloc::string::String;

/// Certificate fields a verifier can reject.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertField {
    SchemaVersion,
    Claim,
    Threshold,
    Prime,
    N,
    Eisenstein,
    F0,
    BoundCheck,
    Conclusion,
}

impl CertField {
    pub fn as_str(self) -> &'static str {
        match self {
            CertField::SchemaVersion => "schema_version",
            CertField::Claim => "claim",
            CertField::Threshold => "threshold",
            CertField::Prime => "prime",
            CertField::N => "n",
            CertField::Eisenstein => "eisenstein",
            CertField::F0 => "F0",
            CertField::BoundCheck => "bound_check",
            CertField::Conclusion => "conclusion",
        }
    }
}

impl core::fmt::Display for CertField {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("closed-form coefficients are defined for even n only, got n = {0}")]
    OddN(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),
    #[error("internal property violated: {0}")]
    PropertyViolation(String),
    #[error("Eisenstein check failed: {0}")]
    CheckFailed(String),
    #[error("sample {0} lies outside the open interval (0, r)")]
    SampleOutOfRange(String),
    #[error("precision unachievable: {0}")]
    PrecisionUnachievable(String),
    #[error("invalid claim: {0}")]
    InvalidClaim(String),
    #[error("claim with cos r = +1 is consistent with the argument and cannot be refuted")]
    NotRefutable,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("verification failed at field `{0}`")]
    VerificationFailed(CertField),
}
