//! Deciding whether `√n` is rational.
//!
//! If `r = (2^p k)/(2^q l)` with `k`, `l` odd, then `r² = 4^{p−q} (k/l)²`.
//! So a positive integer with a rational square root is either an odd square
//! or divisible by 4. Repeating the test on `n/4` turns that necessary
//! condition into a complete decision procedure; the descent is an extension
//! of the two-case argument, which on its own only settles `n = 2` and
//! `n = 3`.

use alloc::vec::Vec;

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::exact_arith::{exact_sqrt, two_adic_form, Integer, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescentStep {
    DividedBy4 { from: Integer, to: Integer },
    OddSquareHit(Integer),
    /// `n'` is neither an odd square nor divisible by 4.
    CriterionFailed(Integer),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    RationalRoot(Integer),
    Irrational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtClassification {
    pub n: Integer,
    pub verdict: Verdict,
    pub trace: Vec<DescentStep>,
}

fn odd_square_root(n: &Integer) -> Option<Integer> {
    if n.is_even() {
        return None;
    }
    exact_sqrt(n)
}

pub fn classify_sqrt(n: &Integer) -> Result<SqrtClassification> {
    if n < &Integer::one() {
        return Err(Error::InvalidInput(alloc::format!("n must be at least 1, got {n}")));
    }
    let mut trace = Vec::new();
    let mut current = n.clone();
    let mut twos = 0u64;
    let verdict = loop {
        if let Some(m) = odd_square_root(&current) {
            trace.push(DescentStep::OddSquareHit(m.clone()));
            break Verdict::RationalRoot(m << twos);
        }
        if (&current % 4u8).is_zero() {
            let to = &current >> 2u8;
            trace.push(DescentStep::DividedBy4 {
                from: current,
                to: to.clone(),
            });
            current = to;
            twos += 1;
        } else {
            trace.push(DescentStep::CriterionFailed(current));
            break Verdict::Irrational;
        }
    };
    Ok(SqrtClassification {
        n: n.clone(),
        verdict,
        trace,
    })
}

impl SqrtClassification {
    /// Replays the trace from `n` and checks it ends in the recorded verdict.
    pub fn replay(&self) -> bool {
        let mut current = self.n.clone();
        let mut twos = 0u64;
        for (idx, step) in self.trace.iter().enumerate() {
            let last = idx + 1 == self.trace.len();
            match step {
                DescentStep::DividedBy4 { from, to } => {
                    if last || from != &current || Integer::from(4u8) * to != current {
                        return false;
                    }
                    current = to.clone();
                    twos += 1;
                }
                DescentStep::OddSquareHit(m) => {
                    return last
                        && m.is_odd()
                        && m * m == current
                        && self.verdict == Verdict::RationalRoot(m << twos);
                }
                DescentStep::CriterionFailed(v) => {
                    return last
                        && v == &current
                        && odd_square_root(v).is_none()
                        && !(v % 4u8).is_zero()
                        && self.verdict == Verdict::Irrational;
                }
            }
        }
        false
    }
}

/// `(p − q, k/l)` with `r² = 4^{p−q} (k/l)²` and `k`, `l` odd.
pub fn two_adic_square_expression(r: &Rational) -> Result<(i64, Rational)> {
    let form = two_adic_form(r)?;
    let exponent = form.p_exp as i64 - form.q_exp as i64;
    Ok((exponent, Rational::new(form.k_odd, form.l_odd)))
}

/// `4^e` as a rational, for any sign of `e`.
pub fn power_of_four(e: i64) -> Rational {
    let mag = Integer::one() << (2 * e.unsigned_abs());
    if e.is_negative() {
        Rational::new(Integer::one(), mag)
    } else {
        Rational::from_integer(mag)
    }
}
