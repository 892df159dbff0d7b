//! The certificate file format.
//!
//! UTF-8 JSON, one object per file. Every integer is written as a decimal
//! string so nothing is truncated to 64 bits, rationals are `{num, den}`
//! pairs in lowest terms, and object keys appear in sorted order, so the
//! same certificate always serialises to the same bytes. Unknown keys and
//! non-canonical numbers are rejected.

use std::str::FromStr;

use niven_core::analytic::ThresholdResult;
use niven_core::certificate::{BoundCheck, PiClaim, RefutationCertificate};
use niven_core::eisenstein::EisensteinCertificate;
use niven_core::{Error, Integer, Rational};
use serde::{Deserialize, Serialize};

// Field order below is sorted by the serialized key bytes (so `F0` comes
// first); serde_json writes keys in declaration order.

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalJson {
    den: String,
    num: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClaimJson {
    k: String,
    r: RationalJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThresholdJson {
    n_star: String,
    r: RationalJson,
    term_at_n_star: RationalJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvidenceJson {
    i: String,
    valuation: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EisensteinJson {
    constant_term_valuation: String,
    divisibility_evidence: Vec<EvidenceJson>,
    leading_term: String,
    n: String,
    p: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundCheckJson {
    holds: bool,
    term: RationalJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateJson {
    #[serde(rename = "F0")]
    f0: String,
    bound_check: BoundCheckJson,
    claim: ClaimJson,
    conclusion: String,
    eisenstein: EisensteinJson,
    n: String,
    prime: String,
    schema_version: String,
    threshold: ThresholdJson,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedCertificate(msg.into())
}

/// Parses a canonical decimal integer: optional `-`, no `+`, no leading zeros.
fn parse_int<T: FromStr + ToString>(s: &str, what: &str) -> Result<T, Error> {
    let v: T = s
        .parse()
        .map_err(|_| malformed(format!("{what}: `{s}` is not an integer")))?;
    if v.to_string() != s {
        return Err(malformed(format!("{what}: `{s}` is not in canonical form")));
    }
    Ok(v)
}

fn rational_to_json(r: &Rational) -> RationalJson {
    RationalJson {
        den: r.denom().to_string(),
        num: r.numer().to_string(),
    }
}

fn rational_from_json(r: &RationalJson, what: &str) -> Result<Rational, Error> {
    let num: Integer = parse_int(&r.num, what)?;
    let den: Integer = parse_int(&r.den, what)?;
    if den <= Integer::from(0) {
        return Err(malformed(format!("{what}: denominator must be positive")));
    }
    let q = Rational::new(num.clone(), den.clone());
    if q.numer() != &num || q.denom() != &den {
        return Err(malformed(format!("{what}: fraction is not in lowest terms")));
    }
    Ok(q)
}

fn to_json_struct(cert: &RefutationCertificate) -> CertificateJson {
    let e = &cert.eisenstein;
    CertificateJson {
        f0: cert.f0.to_string(),
        bound_check: BoundCheckJson {
            holds: cert.bound_check.holds,
            term: rational_to_json(&cert.bound_check.term),
        },
        claim: ClaimJson {
            k: cert.claim.k.to_string(),
            r: rational_to_json(&cert.claim.r),
        },
        conclusion: cert.conclusion.clone(),
        eisenstein: EisensteinJson {
            constant_term_valuation: e.constant_term_valuation.to_string(),
            divisibility_evidence: e
                .divisibility_evidence
                .iter()
                .map(|(i, v)| EvidenceJson {
                    i: i.to_string(),
                    valuation: v.to_string(),
                })
                .collect(),
            leading_term: e.leading_term.to_string(),
            n: e.n.to_string(),
            p: e.p.to_string(),
        },
        n: cert.n.to_string(),
        prime: cert.prime.to_string(),
        schema_version: cert.schema_version.to_string(),
        threshold: ThresholdJson {
            n_star: cert.threshold.n_star.to_string(),
            r: rational_to_json(&cert.threshold.r),
            term_at_n_star: rational_to_json(&cert.threshold.term_at_n_star),
        },
    }
}

fn from_json_struct(j: &CertificateJson) -> Result<RefutationCertificate, Error> {
    let e = &j.eisenstein;
    let divisibility_evidence = e
        .divisibility_evidence
        .iter()
        .map(|ev| {
            Ok((
                parse_int(&ev.i, "eisenstein.divisibility_evidence.i")?,
                parse_int(&ev.valuation, "eisenstein.divisibility_evidence.valuation")?,
            ))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(RefutationCertificate {
        schema_version: parse_int(&j.schema_version, "schema_version")?,
        claim: PiClaim {
            r: rational_from_json(&j.claim.r, "claim.r")?,
            k: parse_int(&j.claim.k, "claim.k")?,
        },
        threshold: ThresholdResult {
            r: rational_from_json(&j.threshold.r, "threshold.r")?,
            n_star: parse_int(&j.threshold.n_star, "threshold.n_star")?,
            term_at_n_star: rational_from_json(
                &j.threshold.term_at_n_star,
                "threshold.term_at_n_star",
            )?,
        },
        prime: parse_int(&j.prime, "prime")?,
        n: parse_int(&j.n, "n")?,
        eisenstein: EisensteinCertificate {
            p: parse_int(&e.p, "eisenstein.p")?,
            n: parse_int(&e.n, "eisenstein.n")?,
            divisibility_evidence,
            constant_term_valuation: parse_int(
                &e.constant_term_valuation,
                "eisenstein.constant_term_valuation",
            )?,
            leading_term: parse_int(&e.leading_term, "eisenstein.leading_term")?,
        },
        f0: parse_int(&j.f0, "F0")?,
        bound_check: BoundCheck {
            term: rational_from_json(&j.bound_check.term, "bound_check.term")?,
            holds: j.bound_check.holds,
        },
        conclusion: j.conclusion.clone(),
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(cert: &RefutationCertificate) -> String {
    let mut s = serde_json::to_string_pretty(&to_json_struct(cert))
        .expect("certificate JSON contains only strings, bools and arrays");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<RefutationCertificate, Error> {
    let j: CertificateJson =
        serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    from_json_struct(&j)
}

/// Parses and verifies in one step.
pub fn verify_json(text: &str) -> Result<RefutationCertificate, Error> {
    let cert = from_json(text)?;
    niven_core::certificate::verify(&cert)?;
    Ok(cert)
}
