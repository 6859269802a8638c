//! High-precision pi digits from any verified formula via the Gregory
//! series, with certified error bounds, plus the bootstrap pi enclosures
//! used across the crate.
//!
//! The evaluation carrier is a base-10 fixed point (mantissa / 10^scale);
//! every truncating integer division is charged one ulp to a running error
//! budget, and the final rounding is accepted only when the whole error
//! interval rounds to the same digit string.

use crate::exact::{pow10, Enclosure, Rat};
use crate::formula::{verify, MachinFormula};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PiError {
    #[error("Gregory series needs |x| < 1, got {0}")]
    SeriesArgument(Rat),
    #[error("digit count must be at least 1")]
    DigitsZero,
    #[error("formula does not verify")]
    Unverified,
    #[error("formula has arguments with |arg| >= 1; normalize first")]
    NotNormalized,
    #[error("formula right-hand side is zero")]
    ZeroRhs,
}

/// Decimal fixed-point value `mantissa / 10^scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoint {
    pub mantissa: BigInt,
    pub scale: u32,
}

impl FixedPoint {
    pub fn to_rat(&self) -> Rat {
        Rat::new(self.mantissa.clone(), BigInt::from(10u32).pow(self.scale))
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.mantissa.is_negative();
        let digits = self.mantissa.abs().to_string();
        let scale = self.scale as usize;
        let (int_part, frac_part) = if digits.len() > scale {
            let (a, b) = digits.split_at(digits.len() - scale);
            (a.to_string(), b.to_string())
        } else {
            ("0".to_string(), format!("{:0>width$}", digits, width = scale))
        };
        if neg {
            write!(f, "-")?;
        }
        if scale == 0 {
            write!(f, "{}", int_part)
        } else {
            write!(f, "{}.{}", int_part, frac_part)
        }
    }
}

/// Result of a fixed-point Gregory evaluation.
#[derive(Debug, Clone)]
pub struct GregoryAtan {
    pub value: FixedPoint,
    /// Guaranteed bound on |value - arctan x| in units of 10^-scale.
    pub error_ulps: u64,
    /// Number of series terms consumed.
    pub terms: usize,
}

/// Truncated alternating Gregory sum for `arctan x`, `|x| < 1`, rounded to
/// `digits` decimals with a certified error of at most one ulp.
///
/// Internally works at `digits + 12` decimals, charging each truncating
/// division one internal ulp and bounding the dropped tail geometrically;
/// the guard is widened if that budget is ever threatened.
pub fn gregory_atan_fp(x: &Rat, digits: u32) -> Result<GregoryAtan, PiError> {
    if x.abs() >= Rat::one() {
        return Err(PiError::SeriesArgument(x.clone()));
    }
    if digits == 0 {
        return Err(PiError::DigitsZero);
    }
    if x.is_zero() {
        return Ok(GregoryAtan {
            value: FixedPoint {
                mantissa: BigInt::zero(),
                scale: digits,
            },
            error_ulps: 0,
            terms: 0,
        });
    }

    let p = x.numer().abs();
    let q = x.denom().clone();
    let p2 = &p * &p;
    let q2 = &q * &q;
    // geometric tail factor 1/(1 - x^2) = q^2/(q^2 - p^2), rounded up
    let geom = (&q2 + (&q2 - &p2) - 1u32).div_floor(&(&q2 - &p2));
    let geom = geom.to_u64().unwrap_or(u64::MAX);

    let mut guard = 12u32;
    loop {
        let scale = digits + guard;
        let s10 = BigInt::from(10u32).pow(scale);
        let out_ulp = BigInt::from(10u32).pow(guard);
        let mut t = (&s10 * &p).div_floor(&q);
        let mut acc = t.clone();
        let mut err_t: u64 = 1;
        let mut err_acc: u64 = 1;
        let mut m: u64 = 1;
        // count only terms that reach the requested digits
        let mut terms: usize = usize::from(t >= out_ulp);
        while !t.is_zero() {
            t = (&t * &p2).div_floor(&q2);
            err_t += 1;
            let term = (&t).div_floor(&BigInt::from(2 * m + 1));
            if term.is_zero() && t.is_zero() {
                break;
            }
            if m % 2 == 1 {
                acc -= &term;
            } else {
                acc += &term;
            }
            err_acc = err_acc.saturating_add(err_t).saturating_add(1);
            if term >= out_ulp {
                terms += 1;
            }
            m += 1;
        }
        // tail after power underflow: the true dropped power is below
        // err_t internal ulps, and the series tail below geom times that
        let tail = err_t.saturating_mul(geom);
        let total_err = err_acc.saturating_add(tail);
        let budget = 10u64.pow(guard.min(18)) / 2;
        if total_err >= budget {
            guard *= 2;
            continue;
        }
        // round to the requested scale; the total error collapses to 1 ulp
        let g10 = BigInt::from(10u32).pow(guard);
        let mantissa = round_div(&acc, &g10);
        let signed = if x.is_negative() { -mantissa } else { mantissa };
        return Ok(GregoryAtan {
            value: FixedPoint {
                mantissa: signed,
                scale: digits,
            },
            error_ulps: 1,
            terms,
        });
    }
}

/// Round-to-nearest division (ties away from zero) for nonnegative values.
fn round_div(v: &BigInt, m: &BigInt) -> BigInt {
    debug_assert!(!v.is_negative() && m.is_positive());
    let num: BigInt = 2 * v + m;
    let den: BigInt = 2 * m;
    num.div_floor(&den)
}

/// Pi digits from a verified formula: returns `3.` followed by `digits`
/// certified decimals (the last one settled by recomputation with doubled
/// guard digits whenever the error interval straddles a rounding boundary).
pub fn compute_pi(f: &MachinFormula, digits: u32) -> Result<String, PiError> {
    Ok(compute_pi_detail(f, digits)?.0)
}

/// As `compute_pi`, also reporting the series term count per formula term.
pub fn compute_pi_detail(f: &MachinFormula, digits: u32) -> Result<(String, Vec<usize>), PiError> {
    if digits == 0 {
        return Err(PiError::DigitsZero);
    }
    if f.rhs().is_zero() {
        return Err(PiError::ZeroRhs);
    }
    for t in f.terms() {
        if t.arg.abs() >= Rat::one() {
            return Err(PiError::NotNormalized);
        }
    }
    if !verify(f).valid() {
        return Err(PiError::Unverified);
    }

    // pi = (sum coef_k atan(arg_k)) / rhs
    let coef_mass: Rat = f
        .terms()
        .iter()
        .map(|t| t.coef.abs() * Rat::from_integer(t.coef.denom().clone()))
        .sum();
    let mut guard = 10 + crate::exact::digits10(&(coef_mass.ceil().to_integer() + 1)) as u32;

    loop {
        let scale = digits + guard;
        let mut total = BigInt::zero();
        let mut err = Rat::zero();
        let mut term_counts = Vec::with_capacity(f.terms().len());
        for t in f.terms() {
            let g = gregory_atan_fp(&t.arg, scale)?;
            term_counts.push(g.terms);
            let contrib = (g.value.mantissa * t.coef.numer()).div_floor(t.coef.denom());
            total += contrib;
            // |coef| * series error + truncation of this division
            err += t.coef.abs() * Rat::from_integer(BigInt::from(g.error_ulps)) + Rat::one();
        }
        // divide by rhs
        let total = (total * f.rhs().denom()).div_floor(f.rhs().numer());
        let err = err / f.rhs().abs() + Rat::one();
        let err_ulps = err.ceil().to_integer();

        // accept only if the whole error interval rounds identically
        let g10 = BigInt::from(10u32).pow(guard);
        let low = round_div(&(&total - &err_ulps), &g10);
        let high = round_div(&(&total + &err_ulps), &g10);
        if low == high {
            let s = low.to_string();
            debug_assert!(s.starts_with('3'));
            return Ok((format!("{}.{}", &s[..1], &s[1..]), term_counts));
        }
        guard *= 2;
    }
}

/// Rational interval of width at most `10^-digits` containing pi, built
/// from Machin's combination with rigorous per-term remainder bounds and
/// memoized per precision level.
pub fn pi_enclosure(digits: u32) -> Enclosure {
    crate::exact::pi_enclosure_width(&pow10(-(digits as i64)))
}

/// One row of the formula benchmark table.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub formula: String,
    pub terms_per_series: Vec<usize>,
    pub total_terms: usize,
    pub wall_ms: f64,
}

/// Deterministic series-size comparison across formulas (wall time is
/// informational only).
pub fn benchmark(formulas: &[MachinFormula], digits: u32) -> Result<Vec<BenchRow>, PiError> {
    let mut rows = Vec::with_capacity(formulas.len());
    for f in formulas {
        let start = std::time::Instant::now();
        let (_, counts) = compute_pi_detail(f, digits)?;
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        rows.push(BenchRow {
            formula: f.to_string(),
            total_terms: counts.iter().sum(),
            terms_per_series: counts,
            wall_ms,
        });
    }
    Ok(rows)
}
