use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use niven::json;
use niven_core::analytic::{self, threshold_term};
use niven_core::certificate::{self, PiClaim};
use niven_core::eisenstein;
use niven_core::niven as niven_poly;
use niven_core::sqrt_descent::{self, DescentStep, Verdict};
use niven_core::{Error, Integer, Rational};
use num_traits::{One, Signed};

/// Exact-arithmetic irrationality certificates for √n and π.
#[derive(Parser)]
#[command(name = "niven", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether √n is rational, with the descent trace.
    SqrtClassify { n: Integer },
    /// Niven polynomial commands.
    Niven {
        #[command(subcommand)]
        command: NivenCommand,
    },
    /// Print the closed-form coefficients a_{n,i} for even n.
    Coeffs {
        #[arg(long)]
        n: u64,
    },
    /// Print the Eisenstein certificate for n = p - 1.
    Eisenstein {
        #[arg(long)]
        prime: u64,
    },
    /// Smallest n* with r (b r^2)^n / n! < 1 for all n >= n*, where r = a/b.
    Threshold {
        #[arg(long, allow_hyphen_values = true)]
        a: Integer,
        #[arg(long)]
        b: Integer,
    },
    /// Compare the integral of f_n(x) sin x on [0, r] with the antiderivative bracket.
    Quadrature {
        #[arg(long, allow_hyphen_values = true)]
        a: Integer,
        #[arg(long)]
        b: Integer,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 40)]
        digits: u32,
    },
    /// Build a refutation certificate for the claim sin(a/b) = 0, cos(a/b) = k.
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        a: Integer,
        #[arg(long)]
        b: Integer,
        #[arg(long, allow_hyphen_values = true)]
        k: i8,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file.
    Verify { file: PathBuf },
}

#[derive(Subcommand)]
enum NivenCommand {
    /// Build f_n and F_n for r = a/b and print F_n(0), F_n(r) and the property checks.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        a: Integer,
        #[arg(long)]
        b: Integer,
        #[arg(long)]
        n: u64,
    },
}

enum Failure {
    Usage(String),
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed(_)
            | Error::MalformedCertificate(_)
            | Error::NotRefutable
            | Error::PropertyViolation(_)
            | Error::CheckFailed(_) => Failure::Rejected(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Rejected(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn rational(a: Integer, b: Integer) -> Result<Rational, Failure> {
    Ok(niven_core::exact_arith::canonicalize(a, b)?)
}

fn yes_no(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn run(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::SqrtClassify { n } => {
            let c = sqrt_descent::classify_sqrt(&n)?;
            match &c.verdict {
                Verdict::RationalRoot(m) => writeln!(out, "sqrt({n}) = {m} (rational)"),
                Verdict::Irrational => writeln!(out, "sqrt({n}) is irrational"),
            }
            .unwrap();
            for step in &c.trace {
                match step {
                    DescentStep::DividedBy4 { from, to } => {
                        writeln!(out, "  {from} -> {to}: divided by 4")
                    }
                    DescentStep::OddSquareHit(m) => {
                        writeln!(out, "  {} = {m}^2: odd square", m * m)
                    }
                    DescentStep::CriterionFailed(v) => writeln!(
                        out,
                        "  {v}: neither an odd square nor divisible by 4"
                    ),
                }
                .unwrap();
            }
        }
        Command::Niven {
            command: NivenCommand::Eval { a, b, n },
        } => {
            let r = rational(a, b)?;
            let pair = niven_poly::build_big_f(&r, n)?;
            let mid = &r / Rational::from_integer(2.into());
            let envelope = analytic::envelope_check(&pair, &[mid])?;
            writeln!(out, "r = {r}, n = {n}").unwrap();
            writeln!(out, "deg f = {}, deg F = {}", 2 * n, 2 * n).unwrap();
            if n <= 8 {
                writeln!(out, "f(x) = {}", pair.f).unwrap();
                writeln!(out, "F(x) = {}", pair.big_f).unwrap();
            }
            writeln!(out, "F(0) = {}", pair.big_f_at_0).unwrap();
            writeln!(out, "F(r) = {}", pair.big_f_at_r).unwrap();
            writeln!(out, "F(0) = F(r): {}", yes_no(pair.big_f_at_0 == pair.big_f_at_r)).unwrap();
            writeln!(out, "F(0) integer: {}", yes_no(pair.big_f_at_0.is_integer())).unwrap();
            let tele = &pair.big_f + &pair.big_f.derivative(2) == pair.f;
            writeln!(out, "F + F'' = f: {}", yes_no(tele)).unwrap();
            writeln!(out, "0 < f(r/2) < (b r^2)^n/n!: {}", yes_no(envelope)).unwrap();
        }
        Command::Coeffs { n } => {
            let table = eisenstein::closed_form_coeffs(n)?;
            for (i, c) in table.entries.iter().enumerate() {
                writeln!(out, "a_{{{n},{i}}} = {c}").unwrap();
            }
        }
        Command::Eisenstein { prime } => {
            let c = eisenstein::eisenstein_check(prime)?;
            writeln!(out, "p = {}, n = {}", c.p, c.n).unwrap();
            for (i, v) in &c.divisibility_evidence {
                writeln!(out, "v_{}(a_{{{},{i}}}) = {v}", c.p, c.n).unwrap();
            }
            writeln!(out, "constant term valuation = {}", c.constant_term_valuation).unwrap();
            writeln!(out, "leading term = {}", c.leading_term).unwrap();
            writeln!(out, "Eisenstein criterion: satisfied").unwrap();
        }
        Command::Threshold { a, b } => {
            let r = rational(a, b)?;
            let t = analytic::threshold(&r)?;
            writeln!(out, "r = {r}").unwrap();
            writeln!(out, "n* = {}", t.n_star).unwrap();
            writeln!(out, "term(n*) = {}", exact_or_approx(&t.term_at_n_star)).unwrap();
            if t.n_star > 1 {
                let prev = threshold_term(&r, t.n_star - 1);
                writeln!(out, "term(n*-1) >= 1: {}", yes_no(prev >= Rational::one())).unwrap();
            }
        }
        Command::Quadrature { a, b, n, digits } => {
            let r = rational(a, b)?;
            let cmp = analytic::quadrature_vs_bracket(&r, n, digits)?;
            writeln!(out, "integral = {} ± {}", cmp.lhs.to_decimal(digits), show(&cmp.lhs.error_bound())).unwrap();
            writeln!(out, "bracket  = {} ± {}", cmp.rhs.to_decimal(digits), show(&cmp.rhs.error_bound())).unwrap();
            writeln!(out, "gap      = {}", show(&cmp.gap)).unwrap();
            writeln!(out, "agree: {}", cmp.agree).unwrap();
            if !cmp.agree {
                return Err(Failure::Rejected("the two evaluations disagree".into()));
            }
        }
        Command::Certify { a, b, k, out: path } => {
            let claim = PiClaim::new(rational(a, b)?, k)?;
            let cert = certificate::certify(&claim)?;
            let text = json::to_json(&cert);
            match path {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    writeln!(
                        out,
                        "refuted: r = {}, k = -1 (n* = {}, p = {}, n = {}); wrote {}",
                        claim.r,
                        cert.threshold.n_star,
                        cert.prime,
                        cert.n,
                        path.display()
                    )
                    .unwrap();
                }
                None => out.push_str(&text),
            }
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let cert = json::verify_json(&text)?;
            writeln!(
                out,
                "verified: claim r = {}, k = -1 is refuted (p = {}, n = {})",
                cert.claim.r, cert.prime, cert.n
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn exact_or_approx(x: &Rational) -> String {
    let exact = x.to_string();
    if exact.len() <= 60 {
        exact
    } else {
        format!("{} (exact value has {} characters)", show(x), exact.len())
    }
}

/// Short scientific rendering of a nonnegative rational for error radii.
fn show(x: &Rational) -> String {
    if x.is_integer() && !x.is_negative() && x.numer() < &Integer::from(1_000_000) {
        return x.numer().to_string();
    }
    let mut e = 0i64;
    let mut v = x.abs();
    let ten = Rational::from_integer(10.into());
    let one = Rational::one();
    while v < one && e > -10_000 {
        v *= &ten;
        e -= 1;
    }
    while v >= ten {
        v /= &ten;
        e += 1;
    }
    let hundredths = (v * Rational::from_integer(100.into())).round().to_integer();
    format!("{}.{:0>2}e{e}", &hundredths / 100, &hundredths % 100)
}
