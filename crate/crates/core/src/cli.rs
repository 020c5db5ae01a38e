//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 when an input is outside
//! the verb's domain, a stream fails, or `verify` reports FAIL.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{One, Signed};

use crate::error::Error;
use crate::limit::{limit_with, Modulus, SeqShift, StreamSeq};
use crate::oracle::{embed, enclosure, int, parse_rat, rat, sqrt_bounds, Enclosure, Rat};
use crate::render::{decimal_approx, format_digits};
use crate::sqrt::{sqrt_stream_with, HeronModulus, SqrtConfig};
use crate::stream::SdStream;
use crate::transforms::{average, divide};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sdreal",
    version,
    about = "Exact real arithmetic on [-1, 1] with signed-digit streams"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    #[command(flatten)]
    Run(Computation),
    /// Recompute with the exact rational oracle and report PASS/FAIL
    #[command(subcommand)]
    Verify(Computation),
}

#[derive(Debug, Subcommand)]
enum Computation {
    /// Signed digits of a rational in [-1, 1]
    Digits(Unary),
    /// Square root of a rational in [0, 1]
    Sqrt(SqrtArgs),
    /// Average (a + b) / 2
    Avg(Binary),
    /// Quotient a / b, needs |a| <= b and b >= 1/4
    Div(Binary),
    /// Limit of the constant sequence n -> q with modulus p -> 0
    LimitDemo(LimitArgs),
}

#[derive(Debug, Args)]
struct Count {
    /// Number of digits
    #[arg(short = 'n', default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    digits: u32,
}

#[derive(Debug, Args)]
struct Unary {
    #[arg(value_name = "Q", allow_hyphen_values = true)]
    q: String,
    #[command(flatten)]
    count: Count,
}

#[derive(Debug, Args)]
struct Binary {
    #[arg(value_name = "A", allow_hyphen_values = true)]
    a: String,
    #[arg(value_name = "B", allow_hyphen_values = true)]
    b: String,
    #[command(flatten)]
    count: Count,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModulusArg {
    Iota,
    Poslog,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ShiftArg {
    Max,
    Plus,
}

impl From<ShiftArg> for SeqShift {
    fn from(s: ShiftArg) -> SeqShift {
        match s {
            ShiftArg::Max => SeqShift::Max,
            ShiftArg::Plus => SeqShift::Plus,
        }
    }
}

#[derive(Debug, Args)]
struct SqrtArgs {
    #[arg(value_name = "Q", allow_hyphen_values = true)]
    q: String,
    #[command(flatten)]
    count: Count,
    /// Modulus used in the Heron limit
    #[arg(long, value_enum, default_value = "iota")]
    modulus: ModulusArg,
    /// Re-indexing of the sequence after each limit digit
    #[arg(long = "seq-shift", value_enum, default_value = "max")]
    seq_shift: ShiftArg,
}

#[derive(Debug, Args)]
struct LimitArgs {
    #[arg(value_name = "Q", allow_hyphen_values = true)]
    q: String,
    #[command(flatten)]
    count: Count,
    #[arg(long = "seq-shift", value_enum, default_value = "max")]
    seq_shift: ShiftArg,
}

/// What a computation should produce: the stream and the value it must denote.
struct Job {
    label: String,
    stream: SdStream,
    digits: usize,
    target: Target,
}

enum Target {
    Exact(Rat),
    SqrtOf(Rat),
}

impl Target {
    fn within(&self, e: &Enclosure) -> bool {
        match self {
            Target::Exact(q) => e.contains(q),
            Target::SqrtOf(q) => e.contains_sqrt_of(q),
        }
    }

    fn describe(&self, p: u32) -> Result<String, Error> {
        Ok(match self {
            Target::Exact(q) => q.to_string(),
            Target::SqrtOf(q) => format!("sqrt({q}) within {}", sqrt_bounds(q, p)?),
        })
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

impl From<crate::error::StreamError> for Failure {
    fn from(e: crate::error::StreamError) -> Failure {
        Failure::Domain(e.to_string())
    }
}

fn rational(text: &str) -> Result<Rat, Failure> {
    parse_rat(text).map_err(|e| Failure::Usage(e.to_string()))
}

fn unit(q: &Rat) -> Result<SdStream, Failure> {
    Ok(embed(q)?)
}

fn build(c: &Computation) -> Result<Job, Failure> {
    Ok(match c {
        Computation::Digits(u) => {
            let q = rational(&u.q)?;
            Job {
                label: format!("digits {q} -n {}", u.count.digits),
                stream: unit(&q)?,
                digits: u.count.digits as usize,
                target: Target::Exact(q),
            }
        }
        Computation::Sqrt(a) => {
            let q = rational(&a.q)?;
            if q.is_negative() || q > Rat::one() {
                return Err(Failure::Domain(format!("{q} is outside [0, 1]")));
            }
            let config = SqrtConfig {
                modulus: match a.modulus {
                    ModulusArg::Iota => HeronModulus::Iota,
                    ModulusArg::Poslog => HeronModulus::Poslog,
                },
                shift: a.seq_shift.into(),
                ..SqrtConfig::default()
            };
            Job {
                label: format!("sqrt {q} -n {}", a.count.digits),
                stream: sqrt_stream_with(unit(&q)?, config),
                digits: a.count.digits as usize,
                target: Target::SqrtOf(q),
            }
        }
        Computation::Avg(b) => {
            let (x, y) = (rational(&b.a)?, rational(&b.b)?);
            let stream = average(unit(&x)?, unit(&y)?);
            Job {
                label: format!("avg {x} {y} -n {}", b.count.digits),
                stream,
                digits: b.count.digits as usize,
                target: Target::Exact((x + y) / int(2)),
            }
        }
        Computation::Div(b) => {
            let (x, y) = (rational(&b.a)?, rational(&b.b)?);
            let (sx, sy) = (unit(&x)?, unit(&y)?);
            if x.abs() > y || y < rat(1, 4) {
                return Err(Error::DivisionPrecondition { a: x, b: y }.into());
            }
            Job {
                label: format!("div {x} {y} -n {}", b.count.digits),
                stream: divide(sx, sy),
                digits: b.count.digits as usize,
                target: Target::Exact(x / y),
            }
        }
        Computation::LimitDemo(l) => {
            let q = rational(&l.q)?;
            let stream = limit_with(
                Modulus::constant(0),
                StreamSeq::constant(unit(&q)?),
                l.seq_shift.into(),
            );
            Job {
                label: format!("limit-demo {q} -n {}", l.count.digits),
                stream,
                digits: l.count.digits as usize,
                target: Target::Exact(q),
            }
        }
    })
}

fn compute(c: &Computation, out: &mut dyn Write) -> Result<(), Failure> {
    let job = build(c)?;
    let digits = job.stream.prefix(job.digits)?;
    let _ = writeln!(out, "{}", format_digits(&digits));
    if !matches!(c, Computation::Digits(_)) {
        let _ = writeln!(out, "{}", decimal_approx(&job.stream, job.digits as u32)?);
    }
    Ok(())
}

/// Returns whether the check passed.
fn verify(c: &Computation, out: &mut dyn Write) -> Result<bool, Failure> {
    let job = build(c)?;
    let digits = job.stream.prefix(job.digits)?;
    let e = enclosure(&job.stream, job.digits)?;
    let pass = job.target.within(&e);
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{verdict} {}", job.label);
    let _ = writeln!(out, "digits: {}", format_digits(&digits));
    let _ = writeln!(out, "enclosure: {e}");
    let _ = writeln!(out, "target: {}", job.target.describe(job.digits as u32 + 8)?);
    Ok(pass)
}

/// Parse `args` (including the program name) and execute. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.verb {
        Verb::Run(c) => compute(c, out).map(|()| true),
        Verb::Verify(c) => verify(c, out),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILURE,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}
