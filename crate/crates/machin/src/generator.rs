//! Constructors of small-Lehmer-measure identities: certified
//! continued-fraction convergents, the convergent-of-pi builder, the
//! power-of-two builder, and the two-term grid search.
//!
//! Small rows are materialized exactly and run through the generic
//! verifier. Rows whose tail fraction would have millions to billions of
//! digits are instead certified by the branch argument (`n atan(x)` inside
//! the validity window makes the identity exact by construction) with all
//! reported magnitudes (digit counts, approximation, measure) derived from
//! rigorous enclosures; digit counts are only accepted when the enclosure
//! of `log10` excludes every integer boundary.

use crate::exact::{
    atan_enclosure, cos_small_enclosure, gauss_int_pow, log10_enclosure, pi_enclosure_width,
    pow10, rat, rat_int, rat_to_f64, sin_small_enclosure, Enclosure, Rat,
};
use crate::formula::{
    digit_counts, lehmer_measure, theorem2_eval, verify, FormulaError, MachinFormula,
};
use crate::ratfun::{eval_r, RatfunError, RjValue, Strategy};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::sync::Mutex;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("enclosure too wide to certify continued-fraction quotient {index}")]
    InsufficientPrecision { index: usize },
    #[error("precision ladder exhausted")]
    LadderExhausted,
    #[error("convergent index {0} unavailable")]
    ConvergentIndex(usize),
    #[error("search grid has {0} points; refusing to scan")]
    GridTooLarge(u64),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Ratfun(#[from] RatfunError),
    #[error("generated row failed verification")]
    RowRejected,
}

/// Certified continued-fraction convergent `p/q` of index `index`
/// (index 0 is the integer part).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    pub index: usize,
}

impl Convergent {
    pub fn value(&self) -> Rat {
        Rat::new(self.p.clone(), self.q.clone())
    }
}

fn cf_expand(x: &Enclosure, count: usize, strict: bool) -> Result<Vec<Convergent>, GeneratorError> {
    let mut out = Vec::new();
    if count == 0 {
        return Ok(out);
    }
    let (mut pm1, mut qm1) = (BigInt::one(), BigInt::zero());
    let (mut pm2, mut qm2) = (BigInt::zero(), BigInt::one());
    let mut lo = x.lo().clone();
    let mut hi = x.hi().clone();
    for index in 0..count {
        let c_lo = lo.floor();
        let c_hi = hi.floor();
        if c_lo != c_hi {
            if strict {
                return Err(GeneratorError::InsufficientPrecision { index });
            }
            return Ok(out);
        }
        let c = c_lo.to_integer();
        let p = &c * &pm1 + &pm2;
        let q = &c * &qm1 + &qm2;
        // certify |x - p/q| <= 1/q^2 against both original endpoints
        let approx = Rat::new(p.clone(), q.clone());
        let bound = Rat::new(BigInt::one(), &q * &q);
        if (x.lo() - &approx).abs() > bound || (x.hi() - &approx).abs() > bound {
            if strict {
                return Err(GeneratorError::InsufficientPrecision { index });
            }
            return Ok(out);
        }
        out.push(Convergent {
            p: p.clone(),
            q: q.clone(),
            index,
        });
        pm2 = pm1;
        pm1 = p;
        qm2 = qm1;
        qm1 = q;

        let fl = &lo - Rat::from_integer(c.clone());
        let fh = &hi - Rat::from_integer(c);
        if lo == hi {
            // exact rational input: terminate with the finite expansion
            if fl.is_zero() {
                return Ok(out);
            }
            lo = fl.recip();
            hi = lo.clone();
        } else {
            if fl.is_zero() || fh.is_zero() {
                if strict {
                    return Err(GeneratorError::InsufficientPrecision { index: index + 1 });
                }
                return Ok(out);
            }
            let nl = fh.recip();
            let nh = fl.recip();
            lo = nl;
            hi = nh;
        }
    }
    Ok(out)
}

/// First `count` continued-fraction convergents of the real certified by
/// the enclosure, each checked against `|x - p/q| <= 1/q^2`. Fails with the
/// first ambiguous partial quotient if the enclosure is too wide; an exact
/// rational input terminates with its finite expansion.
pub fn convergents_of(x: &Enclosure, count: usize) -> Result<Vec<Convergent>, GeneratorError> {
    cf_expand(x, count, true)
}

/// As `convergents_of`, but returns however many convergents are
/// certifiable instead of failing.
pub fn convergents_available(x: &Enclosure, max: usize) -> Vec<Convergent> {
    cf_expand(x, max, false).expect("lenient expansion cannot fail")
}

static PI_CONVERGENTS: Mutex<Vec<Convergent>> = Mutex::new(Vec::new());

/// Convergents of pi through a precision ladder (64, 256, 1024, ... digit
/// enclosures), cached across calls.
pub fn pi_convergents(count: usize) -> Result<Vec<Convergent>, GeneratorError> {
    let mut cache = PI_CONVERGENTS.lock().unwrap();
    if cache.len() >= count {
        return Ok(cache[..count].to_vec());
    }
    let mut digits = 64u32;
    while digits <= 1 << 20 {
        match convergents_of(&crate::pi::pi_enclosure(digits), count) {
            Ok(v) => {
                *cache = v.clone();
                return Ok(v);
            }
            Err(GeneratorError::InsufficientPrecision { .. }) => digits *= 4,
            Err(e) => return Err(e),
        }
    }
    Err(GeneratorError::LadderExhausted)
}

/// How a generated row was validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowCheck {
    /// Tail fraction materialized and the formula run through the generic
    /// two-stage verifier.
    ExactVerified,
    /// Tail fraction too large to materialize; validity certified by the
    /// branch argument (`n atan(x)` provably inside `(0, 3 pi/4)`, where
    /// the identity holds by construction), with magnitudes from rigorous
    /// enclosures.
    BranchCertified,
}

/// One generated identity `n atan(x) - atan(a2/b2) = pi/4` (or the search
/// variant) with its reported magnitudes.
#[derive(Debug, Clone)]
pub struct GeneratedRow {
    /// Multiplier of the leading arctangent.
    pub n: BigInt,
    /// Leading argument `a1/b1`.
    pub x: Rat,
    /// Decimal digits of the reduced tail numerator.
    pub a2_digits: u64,
    /// Decimal digits of the reduced tail denominator.
    pub b2_digits: u64,
    /// Numeric value of the published `a2/b2` column; see the module notes
    /// on the sign conventions of the two tables.
    pub a2b2_approx: f64,
    /// Lehmer measure of the identity.
    pub measure: f64,
    /// The exact formula when the tail was materialized.
    pub formula: Option<MachinFormula>,
    pub check: RowCheck,
}

/// Tails beyond this approximate decimal size use the enclosure route
/// (materializing and verifying a 2e6-digit tail costs a few seconds;
/// beyond that the table budgets would suffer for no extra assurance).
const MATERIALIZE_DIGIT_LIMIT: f64 = 2.0e6;

/// Magnitudes of the reduced tail fraction `R_3(n, x) = (B - A)/(B + A)`
/// with `A + iB = (b + ia)^n`, computed from `psi = n atan(x) - pi/4` via
/// `|B - A| = sqrt2 |w| |sin psi|` and `B + A = sqrt2 |w| cos psi`,
/// `log10 |w| = (n/2) log10(a^2 + b^2)`, without materializing A and B.
/// `v2` is the exact power of two cancelled by reduction.
struct TailMagnitudes {
    num_digits: u64,
    den_digits: u64,
    /// Signed value of R_3(n, x).
    tan_psi: f64,
    /// `log10 (b2 / |a2|)`, the measure denominator of the tail term.
    log10_cot: f64,
}

fn digits_from_log(l: &Enclosure) -> Option<u64> {
    let flo = l.lo().floor();
    let fhi = l.hi().floor();
    if flo == fhi {
        Some((flo.to_integer().to_u64()?) + 1)
    } else {
        None
    }
}

/// `[log10 lo, log10 hi]` of a positive interval.
fn log10_interval(e: &Enclosure, eps: &Rat) -> Enclosure {
    assert!(e.lo().is_positive());
    let lo = log10_enclosure(e.lo(), eps);
    let hi = log10_enclosure(e.hi(), eps);
    Enclosure::new(lo.lo().clone(), hi.hi().clone())
}

fn tail_magnitudes(n: u64, x: &Rat, v2: u64) -> Result<TailMagnitudes, GeneratorError> {
    let n_rat = Rat::from_integer(BigInt::from(n));
    let norm = Rat::from_integer(x.numer() * x.numer() + x.denom() * x.denom());
    let log_eps = pow10(-6) / &n_rat;
    let half_log2 = log10_enclosure(&rat_int(2), &(&log_eps / rat_int(4))).scale(&rat(1, 2));
    let v2_log2 = log10_enclosure(
        &rat_int(2),
        &(&log_eps / (rat_int(4) * (n_rat.clone() + Rat::one()))),
    )
    .scale(&Rat::from_integer(BigInt::from(v2)));
    let shared = log10_enclosure(&norm, &log_eps)
        .scale(&(&n_rat / rat_int(2)))
        .add(&half_log2)
        .sub(&v2_log2);

    let mut target = pow10(-30);
    for _ in 0..12 {
        // psi = n atan(x) - pi/4, width below target
        let atan_eps = &target / (rat_int(2) * &n_rat);
        let psi = atan_enclosure(x, &atan_eps)
            .scale(&n_rat)
            .sub(&pi_enclosure_width(&(&target / rat_int(2))).scale(&rat(1, 4)));
        if !psi.sign_definite() || psi.width() * pow10(9) > psi.abs().lo().clone() {
            target *= pow10(-10);
            continue;
        }
        // branch window: psi tiny means n atan(x) = pi/4 + psi in (0, 3pi/4)
        assert!(
            psi.abs_hi() < rat(1, 2),
            "generated point outside the validity window"
        );
        let series_eps = psi.abs().lo().clone() * pow10(-12);
        let sin_abs = sin_small_enclosure(&psi, &series_eps).abs();
        let cos = cos_small_enclosure(&psi, &pow10(-20));
        let log_term_eps = pow10(-11);
        let l_num = shared.add(&log10_interval(&sin_abs, &log_term_eps));
        let l_den = shared.add(&log10_interval(&cos, &log_term_eps));
        let (Some(num_digits), Some(den_digits)) =
            (digits_from_log(&l_num), digits_from_log(&l_den))
        else {
            target *= pow10(-10);
            continue;
        };
        let tan = sin_small_enclosure(&psi, &series_eps).div(&cos);
        let tan_psi = rat_to_f64(&tan.midpoint());
        let log10_cot = rat_to_f64(&l_den.sub(&l_num).midpoint());
        return Ok(TailMagnitudes {
            num_digits,
            den_digits,
            tan_psi,
            log10_cot,
        });
    }
    Err(GeneratorError::LadderExhausted)
}

/// Estimated decimal size of the unreduced tail components.
fn estimated_tail_digits(n: u64, x: &Rat) -> f64 {
    let norm = x.numer() * x.numer() + x.denom() * x.denom();
    n as f64 / 2.0 * crate::exact::log10_bigint_abs(&norm)
}

fn measure_of_tail(x: &Rat, log10_cot: f64) -> f64 {
    1.0 / -crate::exact::log10_rat_abs(x) + 1.0 / log10_cot
}

/// Build the row for `p_k atan(1/(4 q_k)) - atan(R_3(p_k, 1/(4 q_k))) =
/// pi/4` from the k-th convergent of pi (k >= 1). The published table
/// prints the approximation column with the sign of `-R_3`; `a2b2_approx`
/// follows that convention while any materialized formula stores the true
/// argument.
pub fn theorem3_formula(k: usize) -> Result<GeneratedRow, GeneratorError> {
    if k < 1 {
        return Err(GeneratorError::ConvergentIndex(k));
    }
    let convs = pi_convergents(k + 1)?;
    let c = &convs[k];
    let p = c.p.clone();
    let n = p.to_u64().ok_or(GeneratorError::ConvergentIndex(k))?;
    let b1: BigInt = 4 * &c.q;
    let x = Rat::new(BigInt::one(), b1.clone());

    if estimated_tail_digits(n, &x) <= MATERIALIZE_DIGIT_LIMIT {
        // A + iB = (b1 + i)^p; the tail (B-A)/(B+A) is already reduced:
        // the norm is odd, so B-A and B+A are odd, and an odd common
        // factor would violate the coprimality of (b1 + i) with its
        // conjugate.
        let (a_re, b_im) = gauss_int_pow(&b1, &BigInt::one(), n);
        let num = &b_im - &a_re;
        let den = &b_im + &a_re;
        assert!(den.is_positive() && num.is_odd() && den.is_odd());
        let arg2 = Rat::new_raw(num, den);
        let formula = MachinFormula::two_term(
            Rat::from_integer(p.clone()),
            x.clone(),
            -Rat::one(),
            arg2.clone(),
            rat(1, 4),
        );
        if !verify(&formula).valid() {
            return Err(GeneratorError::RowRejected);
        }
        let (a2_digits, b2_digits) = digit_counts(&arg2);
        let measure = lehmer_measure(&formula)?;
        Ok(GeneratedRow {
            n: p,
            x,
            a2_digits,
            b2_digits,
            a2b2_approx: -rat_to_f64(&arg2),
            measure,
            formula: Some(formula),
            check: RowCheck::ExactVerified,
        })
    } else {
        let mags = tail_magnitudes(n, &x, 0)?;
        Ok(GeneratedRow {
            n: p,
            x: x.clone(),
            a2_digits: mags.num_digits,
            b2_digits: mags.den_digits,
            a2b2_approx: -mags.tan_psi,
            measure: measure_of_tail(&x, mags.log10_cot),
            formula: None,
            check: RowCheck::BranchCertified,
        })
    }
}

/// Build the row for `2^m atan(x) - atan(R_3(2^m, x)) = pi/4` with `x` the
/// conv_index-th nonzero convergent (1-based) of `pi / 2^(m+2)`. The
/// published table prints the approximation column with the sign of `R_3`
/// itself.
pub fn pow2_formula(m: u32, conv_index: usize) -> Result<GeneratedRow, GeneratorError> {
    if m == 0 || m > 60 || conv_index == 0 {
        return Err(GeneratorError::ConvergentIndex(conv_index));
    }
    let n: u64 = 1 << m;
    let scale = Rat::new(BigInt::one(), BigInt::one() << (m + 2));

    // pi/2^(m+2) < 1, so convergent 0 is the zero integer part and the
    // conv_index-th nonzero convergent sits at index conv_index
    let mut digits = 64u32;
    let convs = loop {
        if digits > 1 << 20 {
            return Err(GeneratorError::LadderExhausted);
        }
        let enc = crate::pi::pi_enclosure(digits).scale(&scale);
        match convergents_of(&enc, conv_index + 1) {
            Ok(v) => break v,
            Err(GeneratorError::InsufficientPrecision { .. }) => digits *= 4,
            Err(e) => return Err(e),
        }
    };
    let c = &convs[conv_index];
    assert!(!c.p.is_zero(), "nonzero convergent expected");
    let x = c.value();

    if estimated_tail_digits(n, &x) <= MATERIALIZE_DIGIT_LIMIT {
        let value = eval_r(3, n as u32, &x, Strategy::Pow2Chain)?;
        let RjValue::Finite(arg2) = value else {
            return Err(GeneratorError::RowRejected);
        };
        let formula = MachinFormula::two_term(
            Rat::from_integer(BigInt::from(n)),
            x.clone(),
            -Rat::one(),
            arg2.clone(),
            rat(1, 4),
        );
        if !verify(&formula).valid() {
            return Err(GeneratorError::RowRejected);
        }
        let (a2_digits, b2_digits) = digit_counts(&arg2);
        let measure = lehmer_measure(&formula)?;
        Ok(GeneratedRow {
            n: BigInt::from(n),
            x,
            a2_digits,
            b2_digits,
            a2b2_approx: rat_to_f64(&arg2),
            measure,
            formula: Some(formula),
            check: RowCheck::ExactVerified,
        })
    } else {
        // an exact power of two cancels in reduction: (1+i) divides b + ia
        // exactly when a and b are both odd, and then (b+ia)^n carries
        // 2^(n/2)
        let v2 = if x.numer().is_odd() && x.denom().is_odd() {
            n / 2
        } else {
            0
        };
        let mags = tail_magnitudes(n, &x, v2)?;
        Ok(GeneratedRow {
            n: BigInt::from(n),
            x: x.clone(),
            a2_digits: mags.num_digits,
            b2_digits: mags.den_digits,
            a2b2_approx: mags.tan_psi,
            measure: measure_of_tail(&x, mags.log10_cot),
            formula: None,
            check: RowCheck::BranchCertified,
        })
    }
}

/// Grid search for x where both `|R_j(n, x)|` and `|R_i(m, x)|` fall below
/// `eps`; located minima are refined by bisection on the sign of the
/// steeper function and replaced by the nearby small-height rationals read
/// off its continued fraction. Every emitted row carries a fully verified
/// formula with rhs determined by branch pinning; rows pinned to rhs 0 are
/// discarded.
#[allow(clippy::too_many_arguments)]
pub fn search_two_term(
    j: u8,
    i: u8,
    n: u32,
    m: u32,
    eps: &Rat,
    lo: &Rat,
    hi: &Rat,
    step: &Rat,
) -> Result<Vec<GeneratedRow>, GeneratorError> {
    if !eps.is_positive() || lo > hi || !step.is_positive() {
        return Ok(Vec::new());
    }
    let points_est = ((hi - lo) / step).ceil().to_integer();
    let points = points_est.to_u64().unwrap_or(u64::MAX).saturating_add(1);
    if points > 2_000_000 {
        return Err(GeneratorError::GridTooLarge(points));
    }

    let eval2 = |x: &Rat| -> Result<(RjValue, RjValue), GeneratorError> {
        Ok((
            eval_r(j, n, x, Strategy::BinPow)?,
            eval_r(i, m, x, Strategy::BinPow)?,
        ))
    };
    let qualifies = |pair: &(RjValue, RjValue)| -> bool {
        matches!((&pair.0, &pair.1), (RjValue::Finite(a), RjValue::Finite(b))
            if &a.abs() < eps && &b.abs() < eps)
    };

    // scan
    let mut grid = Vec::with_capacity(points as usize);
    let mut x = lo.clone();
    while &x <= hi {
        let pair = eval2(&x)?;
        grid.push((x.clone(), qualifies(&pair), pair.1));
        x += step;
    }
    if grid.is_empty() {
        return Ok(Vec::new());
    }

    // cluster qualifying stretches
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    let mut run: Option<(usize, usize)> = None;
    for (idx, (_, ok, _)) in grid.iter().enumerate() {
        if *ok {
            run = Some(match run {
                Some((s, _)) => (s, idx),
                None => (idx, idx),
            });
        } else if let Some(r) = run.take() {
            clusters.push(r);
        }
    }
    if let Some(r) = run.take() {
        clusters.push(r);
    }

    let mut seen: BTreeSet<Rat> = BTreeSet::new();
    let mut rows = Vec::new();
    for (s, e) in clusters {
        let a_idx = s.saturating_sub(1);
        let b_idx = (e + 1).min(grid.len() - 1);
        let mut a = grid[a_idx].0.clone();
        let mut b = grid[b_idx].0.clone();
        // refine on a sign change of the steeper function, if present
        let sign_of = |v: &RjValue| v.finite().map(|r| r.is_negative());
        let (sa, sb) = (sign_of(&grid[a_idx].2), sign_of(&grid[b_idx].2));
        if let (Some(sa), Some(sb)) = (sa, sb) {
            if sa != sb {
                for _ in 0..120 {
                    let mid = (&a + &b) / rat_int(2);
                    let fm = eval_r(i, m, &mid, Strategy::BinPow)?;
                    match sign_of(&fm) {
                        Some(smid) if smid == sa => a = mid,
                        Some(_) => b = mid,
                        None => break,
                    }
                }
            }
        }
        let zone = Enclosure::new(a, b);
        for cand in convergents_available(&zone, 14) {
            if cand.p.is_zero() {
                continue;
            }
            let xc = cand.value();
            if !seen.insert(xc.clone()) {
                continue;
            }
            let pair = eval2(&xc)?;
            if !qualifies(&pair) {
                continue;
            }
            let l = (n as u64).lcm(&(m as u64));
            let weights = vec![
                (Rat::from_integer(BigInt::from(l)), j, n),
                (-Rat::from_integer(BigInt::from(l)), i, m),
            ];
            let Ok((formula, rhs)) = theorem2_eval(&weights, &xc) else {
                continue;
            };
            if rhs.is_zero() {
                continue;
            }
            let (RjValue::Finite(arg1), RjValue::Finite(arg2)) = pair else {
                continue;
            };
            let Ok(measure) = lehmer_measure(&formula) else {
                continue;
            };
            let (a2_digits, b2_digits) = digit_counts(&arg2);
            rows.push(GeneratedRow {
                n: BigInt::from(l / n as u64),
                x: arg1,
                a2_digits,
                b2_digits,
                a2b2_approx: rat_to_f64(&arg2),
                measure,
                formula: Some(formula),
                check: RowCheck::ExactVerified,
            });
        }
    }
    rows.sort_by(|a, b| a.x.cmp(&b.x));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_convergents_match_table() {
        let convs = pi_convergents(5).unwrap();
        let want = [
            (3i64, 1i64),
            (22, 7),
            (333, 106),
            (355, 113),
            (103_993, 33_102),
        ];
        for (c, (p, q)) in convs.iter().zip(want) {
            assert_eq!(c.p, BigInt::from(p));
            assert_eq!(c.q, BigInt::from(q));
        }
    }

    #[test]
    fn convergents_of_pi_over_128() {
        // pi / 2^7: nonzero convergents 1/40, 1/41, 3/122
        let enc = crate::pi::pi_enclosure(40).scale(&rat(1, 128));
        let convs = convergents_of(&enc, 4).unwrap();
        assert!(convs[0].p.is_zero());
        assert_eq!(convs[1].value(), rat(1, 40));
        assert_eq!(convs[2].value(), rat(1, 41));
        assert_eq!(convs[3].value(), rat(3, 122));
    }

    #[test]
    fn convergents_of_exact_rational_terminate() {
        let e = Enclosure::point(rat(7, 3));
        let convs = convergents_of(&e, 5).unwrap();
        assert_eq!(convs.len(), 2);
        assert_eq!(convs[0].value(), rat_int(2));
        assert_eq!(convs[1].value(), rat(7, 3));
    }

    #[test]
    fn convergents_certified_against_quality_bound() {
        let convs = pi_convergents(10).unwrap();
        let pi = crate::pi::pi_enclosure(80);
        for c in &convs {
            let bound = Rat::new(BigInt::one(), &c.q * &c.q);
            assert!((pi.lo() - c.value()).abs() <= bound);
        }
    }

    #[test]
    fn wide_enclosure_reports_insufficient_precision() {
        let e = Enclosure::new(rat(314, 100), rat(315, 100));
        match convergents_of(&e, 5) {
            Err(GeneratorError::InsufficientPrecision { index }) => assert!(index >= 1),
            other => panic!("expected precision error, got {:?}", other),
        }
        assert!(convergents_available(&e, 5).len() < 5);
    }

    #[test]
    fn theorem3_first_row() {
        let row = theorem3_formula(1).unwrap();
        assert_eq!(row.n, BigInt::from(22));
        assert_eq!(row.x, rat(1, 28));
        assert_eq!((row.a2_digits, row.b2_digits), (28, 32));
        assert!((row.a2b2_approx - 1.76845e-5).abs() / 1.76845e-5 < 1e-5);
        assert!((row.measure - 0.901429).abs() < 1e-5);
        assert_eq!(row.check, RowCheck::ExactVerified);
        let f = row.formula.unwrap();
        assert!(verify(&f).valid());
    }

    #[test]
    fn theorem3_third_row() {
        let row = theorem3_formula(3).unwrap();
        assert_eq!(row.n, BigInt::from(355));
        assert_eq!(row.x, rat(1, 452));
        assert_eq!((row.a2_digits, row.b2_digits), (937, 943));
        assert!((row.a2b2_approx - 1.21473e-6).abs() / 1.21473e-6 < 1e-5);
        assert!((row.measure - 0.545675).abs() < 1e-5);
    }

    #[test]
    fn magnitude_machinery_agrees_with_exact_rows() {
        // cross-check the no-materialization route against exact fractions
        for k in 1..=3usize {
            let row = theorem3_formula(k).unwrap();
            let n = row.n.to_u64().unwrap();
            let mags = tail_magnitudes(n, &row.x, 0).unwrap();
            assert_eq!(mags.num_digits, row.a2_digits, "k = {}", k);
            assert_eq!(mags.den_digits, row.b2_digits, "k = {}", k);
            assert!((-mags.tan_psi - row.a2b2_approx).abs() <= row.a2b2_approx.abs() * 1e-8);
            let mu = measure_of_tail(&row.x, mags.log10_cot);
            assert!((mu - row.measure).abs() < 1e-9);
        }
    }

    #[test]
    fn pow2_first_rows() {
        let row = pow2_formula(5, 1).unwrap();
        assert_eq!(row.x, rat(1, 40));
        assert_eq!((row.a2_digits, row.b2_digits), (50, 52));
        assert!((row.a2b2_approx - 0.014436).abs() < 1e-6);
        assert!((row.measure - 1.16751).abs() < 1e-5);
        assert_eq!(row.check, RowCheck::ExactVerified);

        let row = pow2_formula(5, 2).unwrap();
        assert_eq!(row.x, rat(1, 41));
        assert_eq!((row.a2_digits, row.b2_digits), (45, 47));
        assert!((row.a2b2_approx + 0.00506511).abs() < 1e-7);
        assert!((row.measure - 1.0557).abs() < 1e-4);

        let row = pow2_formula(6, 3).unwrap();
        assert_eq!(row.x, rat(39, 3178));
        assert_eq!((row.a2_digits, row.b2_digits), (220, 225));
        assert!((row.measure - 0.749474).abs() < 1e-5);
    }

    #[test]
    fn pow2_parity_reduction_cross_check() {
        // 1/41 has both components odd, so reduction strips 2^(n/2); the
        // materialized row exercises that against the plain gcd route
        let row = pow2_formula(5, 2).unwrap();
        let f = row.formula.unwrap();
        let arg2 = &f.terms()[0].arg;
        let n = 32u64;
        let mags = tail_magnitudes(n, &rat(1, 41), n / 2).unwrap();
        assert_eq!(mags.num_digits, crate::exact::digits10(arg2.numer()));
        assert_eq!(mags.den_digits, crate::exact::digits10(arg2.denom()));
    }

    #[test]
    fn search_finds_published_discovery() {
        // 33 atan(1/42) - atan(f50/54) = pi/4
        let rows = search_two_term(
            0,
            3,
            1,
            33,
            &rat(3, 100),
            &rat(1, 50),
            &rat(1, 35),
            &rat(1, 2000),
        )
        .unwrap();
        let hit = rows.iter().find(|r| r.x == rat(1, 42)).expect("1/42 row");
        assert_eq!((hit.a2_digits, hit.b2_digits), (50, 54));
        assert!((hit.measure - 0.880916).abs() < 1e-5);
        assert_eq!(hit.n, BigInt::from(33));
        let f = hit.formula.clone().unwrap();
        assert!(verify(&f).valid());
        assert_eq!(f.rhs(), &rat(1, 4));
    }

    #[test]
    fn search_empty_when_eps_zero() {
        let rows = search_two_term(
            0,
            3,
            1,
            33,
            &Rat::zero(),
            &rat(1, 50),
            &rat(1, 35),
            &rat(1, 100),
        )
        .unwrap();
        assert!(rows.is_empty());
    }
}
