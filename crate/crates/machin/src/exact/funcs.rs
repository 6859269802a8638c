//! Rigorous enclosures of the elementary functions this crate needs: arctan
//! via the Gregory series, natural/decimal logarithms via atanh, sine and
//! cosine near zero, sqrt 5 by bisection, and a bootstrapped pi.
//!
//! Every function returns a closed rational interval guaranteed to contain
//! the exact real value; truncation remainders are added as explicit padding.

use super::interval::Enclosure;
use super::{rat, rat_int, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Mutex;

static PI_CACHE: Mutex<Option<Enclosure>> = Mutex::new(None);
static LN2_CACHE: Mutex<Option<Enclosure>> = Mutex::new(None);
static LN10_CACHE: Mutex<Option<Enclosure>> = Mutex::new(None);
static SQRT5_CACHE: Mutex<Option<Enclosure>> = Mutex::new(None);

/// Alternating Gregory series for `arctan x`, `0 < x < 1`. The remainder
/// after truncation is bounded by the first omitted term.
fn gregory_partial(x: &Rat, eps: &Rat) -> Enclosure {
    debug_assert!(x.is_positive() && x < &Rat::one());
    let x2 = x * x;
    let mut pow = x.clone();
    let mut m: u64 = 0;
    let mut sum = Rat::zero();
    loop {
        let term = &pow / Rat::from_integer(BigInt::from(2 * m + 1));
        if &term <= eps {
            return if m % 2 == 0 {
                Enclosure::new(sum.clone(), sum + term)
            } else {
                Enclosure::new(&sum - &term, sum)
            };
        }
        if m % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        pow *= &x2;
        m += 1;
    }
}

/// Arguments with components beyond this size are first rounded outward to
/// a power-of-ten grid; exact rational arithmetic on the raw components
/// would otherwise trigger huge gcd reductions inside the series.
const HUGE_ARG_BITS: u64 = 4096;

/// Enclosure of `arctan x` with width at most `eps`, total on the rationals.
///
/// `|x| < 1` sums the alternating series; `|x| >= 1` reduces through
/// `arctan x = sgn(x) pi/2 - arctan(1/x)` using the bootstrapped pi.
pub fn atan_enclosure(x: &Rat, eps: &Rat) -> Enclosure {
    assert!(eps.is_positive(), "atan_enclosure needs eps > 0");
    if x.is_zero() {
        return Enclosure::zero();
    }
    if x.is_negative() {
        return atan_enclosure(&-x.clone(), eps).neg();
    }
    if x.numer().bits() > HUGE_ARG_BITS || x.denom().bits() > HUGE_ARG_BITS {
        // |atan' | <= 1, so outward rounding of x costs at most its own
        // width; then each endpoint is a small rational.
        let quarter = eps / rat_int(4);
        let mut scale = 0u32;
        let mut p = Rat::one();
        let ten = rat_int(10);
        while p > quarter {
            p /= &ten;
            scale += 1;
        }
        let grid = Enclosure::point(x.clone()).round_out(scale);
        let lo = atan_enclosure(grid.lo(), &quarter);
        let hi = atan_enclosure(grid.hi(), &quarter);
        return Enclosure::new(lo.lo().clone(), hi.hi().clone());
    }
    let one = Rat::one();
    if *x == one {
        return pi_enclosure_width(&(eps * rat_int(4))).scale(&rat(1, 4));
    }
    if *x > one {
        let pi = pi_enclosure_width(eps);
        let inner = atan_enclosure(&x.recip(), &(eps / rat_int(2)));
        return pi.scale(&rat(1, 2)).sub(&inner);
    }
    gregory_partial(x, eps)
}

/// Enclosure of `arctan` over an interval, via monotonicity. Width is at
/// most `input width + 2 eps`.
pub fn atan_enclosure_of(e: &Enclosure, eps: &Rat) -> Enclosure {
    let lo = atan_enclosure(e.lo(), eps);
    let hi = atan_enclosure(e.hi(), eps);
    Enclosure::new(lo.lo().clone(), hi.hi().clone())
}

/// Enclosure of pi with width at most `width`, from Machin's combination
/// `16 arctan(1/5) - 4 arctan(1/239)` with per-series remainder bounds.
/// Memoized: repeated calls only refine, so later enclosures nest inside
/// earlier ones.
pub fn pi_enclosure_width(width: &Rat) -> Enclosure {
    assert!(width.is_positive());
    let mut guard = PI_CACHE.lock().unwrap();
    if let Some(e) = guard.as_ref() {
        if &e.width() <= width {
            return e.clone();
        }
    }
    let pi = compute_pi_enclosure(width);
    *guard = Some(pi.clone());
    pi
}

/// Uncached pi enclosure (16 e1 - 4 e2 has width w/4 + w/4 = w/2 <= w).
pub(crate) fn compute_pi_enclosure(width: &Rat) -> Enclosure {
    let e1 = gregory_partial(&rat(1, 5), &(width / rat_int(64)));
    let e2 = gregory_partial(&rat(1, 239), &(width / rat_int(16)));
    e1.scale(&rat_int(16)).sub(&e2.scale(&rat_int(4)))
}

/// Series for `atanh x`, `0 < x < 1`; the geometric tail bound
/// `t_N / (1 - x^2)` pads the upper endpoint.
fn atanh_enclosure(x: &Rat, eps: &Rat) -> Enclosure {
    debug_assert!(x.is_positive() && x < &Rat::one());
    let x2 = x * x;
    let geom = (Rat::one() - &x2).recip();
    let mut pow = x.clone();
    let mut m: u64 = 0;
    let mut sum = Rat::zero();
    loop {
        let term = &pow / Rat::from_integer(BigInt::from(2 * m + 1));
        let tail = &term * &geom;
        if &tail <= eps {
            return Enclosure::new(sum.clone(), sum + tail);
        }
        sum += &term;
        pow *= &x2;
        m += 1;
    }
}

/// `floor(log2 r)` for a positive rational.
fn ilog2_floor(r: &Rat) -> i64 {
    debug_assert!(r.is_positive());
    let mut k = r.numer().bits() as i64 - r.denom().bits() as i64;
    let two = rat_int(2);
    let mut p = pow2(k);
    while r < &p {
        k -= 1;
        p /= &two;
    }
    while *r >= &p * &two {
        k += 1;
        p *= &two;
    }
    k
}

fn pow2(k: i64) -> Rat {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

/// Enclosure of `ln 2`, memoized.
fn ln2_enclosure(eps: &Rat) -> Enclosure {
    let mut guard = LN2_CACHE.lock().unwrap();
    if let Some(e) = guard.as_ref() {
        if &e.width() <= eps {
            return e.clone();
        }
    }
    let e = atanh_enclosure(&rat(1, 3), &(eps / rat_int(2))).scale(&rat_int(2));
    *guard = Some(e.clone());
    e
}

/// Enclosure of `ln r` for rational `r > 0`, width at most `eps`.
///
/// Reduces to `j ln 2 + 2 atanh((m-1)/(m+1))` with `m = r / 2^j` in `[1, 2)`,
/// so the series argument never exceeds 1/3.
pub fn ln_enclosure(r: &Rat, eps: &Rat) -> Enclosure {
    assert!(r.is_positive(), "ln of a nonpositive rational");
    assert!(eps.is_positive());
    if r == &Rat::one() {
        return Enclosure::zero();
    }
    if r < &Rat::one() {
        return ln_enclosure(&r.recip(), eps).neg();
    }
    let j = ilog2_floor(r);
    debug_assert!(j >= 0);
    let m = r / pow2(j);
    let frac = (&m - Rat::one()) / (&m + Rat::one());
    let series_eps = eps / rat_int(4);
    let series = if frac.is_zero() {
        Enclosure::zero()
    } else {
        atanh_enclosure(&frac, &series_eps).scale(&rat_int(2))
    };
    if j == 0 {
        series
    } else {
        let ln2 = ln2_enclosure(&(eps / rat_int(2 * j)));
        ln2.scale(&rat_int(j)).add(&series)
    }
}

/// Enclosure of `log10 r` for rational `r > 0`, width at most `eps`.
pub fn log10_enclosure(r: &Rat, eps: &Rat) -> Enclosure {
    let mut work = eps.clone();
    loop {
        let lnr = ln_enclosure(r, &work);
        let ln10 = {
            let mut guard = LN10_CACHE.lock().unwrap();
            let need = &work / rat_int(4);
            match guard.as_ref() {
                Some(e) if e.width() <= need => e.clone(),
                _ => {
                    let e = ln_enclosure(&rat_int(10), &need);
                    *guard = Some(e.clone());
                    e
                }
            }
        };
        let out = lnr.div(&ln10);
        if &out.width() <= eps {
            return out;
        }
        work /= rat_int(8);
    }
}

/// Sine of a rational `|r| <= 1` by the alternating Taylor series.
fn sin_rat_enclosure(r: &Rat, eps: &Rat) -> Enclosure {
    if r.is_zero() {
        return Enclosure::zero();
    }
    if r.is_negative() {
        return sin_rat_enclosure(&-r.clone(), eps).neg();
    }
    debug_assert!(*r <= Rat::one());
    let r2 = r * r;
    let mut pow = r.clone();
    let mut fact = BigInt::one();
    let mut m: u64 = 0;
    let mut sum = Rat::zero();
    loop {
        let term = &pow / Rat::from_integer(fact.clone());
        if &term <= eps {
            return if m % 2 == 0 {
                Enclosure::new(sum.clone(), sum + term)
            } else {
                Enclosure::new(&sum - &term, sum)
            };
        }
        if m % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        pow *= &r2;
        fact *= BigInt::from((2 * m + 2) * (2 * m + 3));
        m += 1;
    }
}

fn cos_rat_enclosure(r: &Rat, eps: &Rat) -> Enclosure {
    let r = r.abs();
    debug_assert!(r <= Rat::one());
    let r2 = &r * &r;
    let mut pow = Rat::one();
    let mut fact = BigInt::one();
    let mut m: u64 = 0;
    let mut sum = Rat::zero();
    loop {
        let term = &pow / Rat::from_integer(fact.clone());
        if &term <= eps {
            return if m % 2 == 0 {
                Enclosure::new(sum.clone(), sum + term)
            } else {
                Enclosure::new(&sum - &term, sum)
            };
        }
        if m % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        pow *= &r2;
        fact *= BigInt::from((2 * m + 1) * (2 * m + 2));
        m += 1;
    }
}

/// Sine over an interval with `|e| <= 1`, exact by monotonicity there.
pub fn sin_small_enclosure(e: &Enclosure, eps: &Rat) -> Enclosure {
    assert!(e.abs_hi() <= Rat::one(), "sin_small_enclosure needs |e| <= 1");
    let lo = sin_rat_enclosure(e.lo(), eps);
    let hi = sin_rat_enclosure(e.hi(), eps);
    Enclosure::new(lo.lo().clone(), hi.hi().clone())
}

/// Cosine over an interval with `|e| <= 1`; decreasing in `|x|` there.
pub fn cos_small_enclosure(e: &Enclosure, eps: &Rat) -> Enclosure {
    let b = e.abs_hi();
    assert!(b <= Rat::one(), "cos_small_enclosure needs |e| <= 1");
    let lo_bound = cos_rat_enclosure(&b, eps);
    let hi_bound = if e.contains_zero() {
        Enclosure::point(Rat::one())
    } else {
        let a = if e.lo().is_positive() { e.lo().clone() } else { -e.hi().clone() };
        cos_rat_enclosure(&a, eps)
    };
    Enclosure::new(lo_bound.lo().clone(), hi_bound.hi().clone())
}

/// Enclosure of sqrt 5 with width at most `width`, by bisection from [2, 3].
/// Memoized; refinements bisect the cached interval, so enclosures nest.
pub fn sqrt5_enclosure(width: &Rat) -> Enclosure {
    assert!(width.is_positive());
    let mut guard = SQRT5_CACHE.lock().unwrap();
    let five = rat_int(5);
    let two = rat_int(2);
    let (mut lo, mut hi) = match guard.as_ref() {
        Some(e) => (e.lo().clone(), e.hi().clone()),
        None => (rat_int(2), rat_int(3)),
    };
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        if &mid * &mid >= five {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let e = Enclosure::new(lo, hi);
    *guard = Some(e.clone());
    e
}

#[cfg(test)]
mod tests {
    use super::super::{pow10, rat_to_f64};
    use super::*;

    #[test]
    fn atan_zero_is_point() {
        let e = atan_enclosure(&Rat::zero(), &rat(1, 100));
        assert_eq!(e, Enclosure::zero());
    }

    #[test]
    fn atan_one_contains_quarter_pi() {
        let e = atan_enclosure(&Rat::one(), &pow10(-6));
        assert!(e.width() <= pow10(-6));
        let v = rat_to_f64(&e.midpoint());
        assert!((v - 0.7853981633974483).abs() < 1e-6);
    }

    #[test]
    fn atan_fifth_matches_reference() {
        // Reference digits obtained by summing the alternating series with
        // its remainder bound at higher precision.
        let e = atan_enclosure(&rat(1, 5), &pow10(-10));
        assert!(e.width() <= pow10(-10));
        // true value lies in [0.19739555984988, 0.19739555984989]
        let lo = rat(19739555984988, 1) * pow10(-14);
        let hi = rat(19739555984989, 1) * pow10(-14);
        assert!(e.lo() <= &hi && e.hi() >= &lo, "0.19739555984988... expected");
    }

    #[test]
    fn atan_large_argument_reduces() {
        let e = atan_enclosure(&rat_int(2), &pow10(-8));
        assert!(e.width() <= pow10(-8));
        assert!((rat_to_f64(&e.midpoint()) - 1.1071487177940904).abs() < 1e-8);
        let en = atan_enclosure(&rat_int(-2), &pow10(-8));
        assert!((rat_to_f64(&en.midpoint()) + 1.1071487177940904).abs() < 1e-8);
    }

    #[test]
    fn atan_nesting() {
        let coarse = atan_enclosure(&rat(3, 7), &pow10(-5));
        let fine = atan_enclosure(&rat(3, 7), &pow10(-15));
        assert!(fine.subset_of(&coarse));
    }

    #[test]
    fn pi_enclosure_brackets_pi() {
        let e = pi_enclosure_width(&pow10(-12));
        assert!(e.width() <= pow10(-12));
        // pi is inside [3.14159265358979, 3.14159265358980]
        let lo = rat(314159265358979i64, 1) * pow10(-14);
        let hi = rat(314159265358980i64, 1) * pow10(-14);
        assert!(e.hi() >= &lo && e.lo() <= &hi);
        let tighter = pi_enclosure_width(&pow10(-30));
        assert!(tighter.subset_of(&e));
    }

    #[test]
    fn ln_and_log10() {
        let e = ln_enclosure(&rat_int(2), &pow10(-12));
        assert!((rat_to_f64(&e.midpoint()) - std::f64::consts::LN_2).abs() < 1e-12);
        let e = ln_enclosure(&rat(1, 3), &pow10(-10));
        assert!((rat_to_f64(&e.midpoint()) + 1.0986122886681098).abs() < 1e-10);
        let e = log10_enclosure(&rat_int(424), &pow10(-10));
        assert!(e.width() <= pow10(-10));
        assert!((rat_to_f64(&e.midpoint()) - 2.6273658565927325).abs() < 1e-10);
    }

    #[test]
    fn sin_cos_small() {
        let t = Enclosure::point(rat(1, 10));
        let s = sin_small_enclosure(&t, &pow10(-12));
        assert!((rat_to_f64(&s.midpoint()) - 0.09983341664682815).abs() < 1e-12);
        let c = cos_small_enclosure(&t, &pow10(-12));
        assert!((rat_to_f64(&c.midpoint()) - 0.9950041652780258).abs() < 1e-12);
        let across = Enclosure::new(rat(-1, 100), rat(1, 50));
        let c2 = cos_small_enclosure(&across, &pow10(-12));
        assert!(c2.contains(&Rat::one()) || c2.hi() == &Rat::one());
        let s2 = sin_small_enclosure(&across, &pow10(-12));
        assert!(s2.contains_zero());
    }

    #[test]
    fn sqrt5_bisection() {
        let e = sqrt5_enclosure(&pow10(-15));
        assert!(e.width() <= pow10(-15));
        let m = rat_to_f64(&e.midpoint());
        assert!((m - 5f64.sqrt()).abs() < 1e-14);
        assert!(e.lo() * e.lo() < rat_int(5));
        assert!(e.hi() * e.hi() > rat_int(5));
    }
}
