//! Helpers over `rug::Float` for the bound pipeline.
//!
//! All bound computations run at a caller-chosen working precision
//! (default 256 bits). Directed rounding is applied at the final step of
//! quantities that must be certified over-estimates: [`ceil_certified`]
//! inflates by a relative guard of 2^-(prec-GUARD_BITS) before taking the
//! ceiling, so the accumulated rounding of the preceding correctly-rounded
//! operations cannot pull a threshold below its true value.

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::{Float, Integer, Rational};

/// Relative inflation applied by `ceil_certified`, in bits below working
/// precision. Large enough to absorb hundreds of correctly rounded
/// operations, small enough never to cross an integer in practice.
pub const GUARD_BITS: u32 = 40;

pub fn f(prec: u32) -> Float {
    Float::new(prec)
}

pub fn f_u64(prec: u32, v: u64) -> Float {
    Float::with_val(prec, v)
}

pub fn f_i64(prec: u32, v: i64) -> Float {
    Float::with_val(prec, v)
}

pub fn f_ratio(prec: u32, r: &Rational) -> Float {
    Float::with_val(prec, r)
}

pub fn f_int(prec: u32, v: &Integer) -> Float {
    Float::with_val(prec, v)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// x^e for real exponents, x > 0.
pub fn powf(x: &Float, e: &Float) -> Float {
    debug_assert!(x.is_sign_positive() && !x.is_zero());
    let prec = x.prec().max(e.prec());
    Float::with_val(prec, rug::ops::Pow::pow(x, e))
}

pub fn powr(x: &Float, num: i64, den: u64, prec: u32) -> Float {
    let e = Float::with_val(prec, num) / Float::with_val(prec, den);
    powf(x, &e)
}

/// Decimal rendering at full stored precision, suitable for reproducible
/// report files.
pub fn decimal(x: &Float) -> String {
    x.to_string_radix(10, None)
}

/// Ceiling of a positive float after inflating it by one relative guard,
/// as an explicit round-up at the final step.
pub fn ceil_certified(x: &Float) -> Result<u64> {
    if !x.is_finite() || x.is_sign_negative() {
        return Err(Error::Domain(format!("ceil_certified on non-finite or negative value {x}")));
    }
    let prec = x.prec();
    let guard = Float::with_val(prec, 1u32)
        + Float::with_val(prec, Float::i_exp(1, -(prec.saturating_sub(GUARD_BITS) as i32)));
    let inflated: Float = guard * x;
    let c = inflated.ceil();
    c.to_integer()
        .and_then(|i| i.to_u64())
        .ok_or_else(|| Error::Domain(format!("threshold {c} does not fit in u64")))
}

/// log(sum(exp(t))) for log-scale magnitudes, stable for exponents far
/// outside machine-float range.
pub fn log_sum_exp(terms: &[Float], prec: u32) -> Float {
    assert!(!terms.is_empty());
    let max = terms.iter().cloned().reduce(|a, b| if b > a { b } else { a }).unwrap();
    if !max.is_finite() {
        return max;
    }
    let mut sum = Float::new(prec);
    for t in terms {
        sum += (t - &max).complete(prec).exp();
    }
    max + sum.ln()
}

/// log(exp(a) - exp(b)) for a > b.
pub fn log_diff_exp(a: &Float, b: &Float, prec: u32) -> Result<Float> {
    if a <= b {
        return Err(Error::Domain(format!("log_diff_exp needs a > b, got a={a} b={b}")));
    }
    let one = Float::with_val(prec, 1u32);
    let inner = one - (b - a).complete(prec).exp();
    Ok(a.clone() + inner.ln())
}

/// Relative agreement in bits between two values: floor(-log2(|x-y|/|y|)).
/// Returns u32::MAX for exact equality.
pub fn agreement_bits(x: &Float, y: &Float) -> u32 {
    let prec = x.prec().max(y.prec());
    let diff = (x - y).complete(prec).abs();
    if diff.is_zero() {
        return u32::MAX;
    }
    let rel = diff / y.clone().abs();
    let log = -rel.log2();
    log.to_f64().max(0.0) as u32
}
