//! Exact arithmetic engine for irrationality certificates.
//!
//! The crate covers two arguments:
//!
//! * rationality of `√n`, decided by a 2-adic descent ([`sqrt_descent`]);
//! * the Niven-polynomial argument for `π`, split into exact polynomial
//!   machinery ([`niven`]), the Eisenstein certificate for the non-vanishing
//!   of `F_n(0)` ([`eisenstein`]), certified series and quadrature
//!   ([`analytic`]) and the refutation certificate tying them together
//!   ([`certificate`]).
//!
//! Everything here is pure and allocation-only; IO, JSON and the command
//! line live in the companion `niven` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analytic;
pub mod certificate;
pub mod eisenstein;
mod error;
pub mod exact_arith;
pub mod niven;
pub mod poly;
pub mod sqrt_descent;

pub use error::{CertField, Error};
pub use exact_arith::{Integer, Rational};

pub type Result<T, E = Error> = core::result::Result<T, E>;
