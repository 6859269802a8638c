//! Arbitrary-precision exact arithmetic: rationals, Gaussian rationals, the
//! quartic field Q(i, sqrt 5), and rigorous interval enclosures of reals.

mod funcs;
mod gauss;
mod interval;
mod quartic;

pub use funcs::{
    atan_enclosure, atan_enclosure_of, cos_small_enclosure, ln_enclosure, log10_enclosure,
    pi_enclosure_width, sin_small_enclosure, sqrt5_enclosure,
};
pub use gauss::{gauss_int_pow, gauss_int_ray, gauss_pow, unit_ray, GaussRat};
pub use interval::Enclosure;
pub use quartic::QuarticNum;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The universal scalar: an arbitrary-precision rational, always in lowest
/// terms with a positive denominator. Parses and prints as `p/q` or `p`.
pub type Rat = num_rational::BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("zero base with negative exponent")]
    ZeroToNegativePower,
    #[error("conjugate product has nonzero irrational coordinates")]
    NormNotRational,
}

/// `n/d` as a rational from machine integers.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Number of decimal digits of `|x|` (0 has one digit).
///
/// Uses the bit length and a float estimate, falling back to an exact
/// comparison with a power of ten only when the estimate is too close to a
/// digit boundary to trust.
pub fn digits10(x: &BigInt) -> u64 {
    if x.is_zero() {
        return 1;
    }
    let l = log10_bigint_abs(x);
    let fl = l.floor();
    if l - fl > 1e-9 && fl + 1.0 - l > 1e-9 {
        return fl as u64 + 1;
    }
    // Near a boundary: settle it exactly.
    let k = fl as u64;
    let ten_k = BigInt::from(10u32).pow(k as u32);
    if x.abs() >= ten_k {
        k + 1
    } else {
        k
    }
}

/// `log10 |x|` for a nonzero big integer, via bit length plus a 64-bit
/// leading-mantissa correction. Absolute error is a few ulps of the bit
/// count, far below 1e-9 for any integer that fits in memory.
pub fn log10_bigint_abs(x: &BigInt) -> f64 {
    debug_assert!(!x.is_zero());
    let bits = x.bits();
    let mant = if bits <= 64 {
        x.abs().to_u64().unwrap() as f64
    } else {
        let top: BigInt = x.abs() >> (bits - 64);
        top.to_u64().unwrap() as f64
    };
    let shift = if bits <= 64 { 0 } else { bits - 64 } as f64;
    mant.log2().mul_add(std::f64::consts::LOG10_2, shift * std::f64::consts::LOG10_2)
}

/// `log10 |x|` for a nonzero rational; exact enough for 10+ significant
/// digits even when numerator and denominator have millions of digits.
pub fn log10_rat_abs(x: &Rat) -> f64 {
    log10_bigint_abs(x.numer()) - log10_bigint_abs(x.denom())
}

/// Convert a rational to `f64`, surviving components far outside the `f64`
/// exponent range by going through `log10`.
pub fn rat_to_f64(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.numer().bits() < 900 && x.denom().bits() < 900 {
        if let Some(v) = x.to_f64() {
            if v.is_finite() {
                return v;
            }
        }
    }
    let l = log10_rat_abs(x);
    let v = 10f64.powf(l - l.floor()) * 10f64.powi(l.floor() as i32);
    if x.is_negative() {
        -v
    } else {
        v
    }
}

/// `10^k` as a rational, for signed `k`.
pub fn pow10(k: i64) -> Rat {
    let p = BigInt::from(10u32).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}
