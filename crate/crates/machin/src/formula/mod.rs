//! Machin-formula data model, textual format, rigorous verification,
//! Lehmer measure, argument normalization, and term splitting.
//!
//! Verification is two-stage. Stage 1 multiplies the associated Gaussian
//! integers and checks the product lies on the expected ray of argument
//! `k pi/4`, which proves the identity modulo `2 pi / T` (T clears all
//! coefficient denominators). Stage 2 pins the branch with a rational
//! interval enclosure tight enough that the only reachable multiple is zero.

mod parse;

pub use parse::parse_formula;

use crate::exact::{
    atan_enclosure, digits10, log10_rat_abs, pi_enclosure_width, rat, rat_int, Enclosure, Rat,
};
use crate::ratfun::{eval_r, Strategy};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("zero denominator at byte {position}")]
    ZeroDenominator { position: usize },
    #[error("formula has no terms left after canonicalization")]
    EmptyFormula,
    #[error("Lehmer measure undefined: |argument| {arg} is not in (0, 1)")]
    MeasureUndefined { arg: Rat },
    #[error("term index {index} out of range for {len} terms")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("coefficient numerators must sum to zero")]
    CoefficientSumNonzero,
    #[error("R_j(n, x) has a pole at the given x (term {index})")]
    PoleAtIndex { index: usize },
    #[error("branch pinning failed to certify a unique multiple of pi")]
    BranchPinningFailed,
    #[error("formula fails verification")]
    NotVerified,
}

/// One signed arctangent term `coef * atan(arg)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArctanTerm {
    pub coef: Rat,
    pub arg: Rat,
}

impl ArctanTerm {
    pub fn new(coef: Rat, arg: Rat) -> Self {
        ArctanTerm { coef, arg }
    }
}

/// A signed rational combination of arctangents of rationals equated to a
/// rational multiple of pi.
///
/// Canonical form: arguments strictly positive (arctan is odd, so negative
/// arguments flip the coefficient sign), zero coefficients and zero
/// arguments dropped, equal arguments merged, terms sorted by argument
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachinFormula {
    terms: Vec<ArctanTerm>,
    rhs: Rat,
}

impl MachinFormula {
    pub fn new(terms: Vec<ArctanTerm>, rhs: Rat) -> Self {
        let mut flipped: Vec<ArctanTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            if t.coef.is_zero() || t.arg.is_zero() {
                continue;
            }
            if t.arg.is_negative() {
                flipped.push(ArctanTerm::new(-t.coef, -t.arg));
            } else {
                flipped.push(t);
            }
        }
        flipped.sort_by(|a, b| a.arg.cmp(&b.arg));
        let mut merged: Vec<ArctanTerm> = Vec::with_capacity(flipped.len());
        for t in flipped {
            match merged.last_mut() {
                Some(last) if last.arg == t.arg => last.coef += t.coef,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coef.is_zero());
        MachinFormula { terms: merged, rhs }
    }

    pub fn terms(&self) -> &[ArctanTerm] {
        &self.terms
    }

    pub fn rhs(&self) -> &Rat {
        &self.rhs
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Two-term convenience constructor `x1 atan(z1) + x2 atan(z2) = rhs pi`.
    pub fn two_term(x1: Rat, z1: Rat, x2: Rat, z2: Rat, rhs: Rat) -> Self {
        MachinFormula::new(vec![ArctanTerm::new(x1, z1), ArctanTerm::new(x2, z2)], rhs)
    }
}

impl fmt::Display for MachinFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0*atan(0)")?;
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i == 0 {
                if t.coef.is_negative() {
                    write!(f, "-")?;
                }
            } else if t.coef.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}*atan({})", t.coef.abs(), t.arg)?;
        }
        write!(f, " = {} pi", self.rhs)
    }
}

/// Outcome of the two-stage verifier.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub gaussian_ok: bool,
    pub branch_ok: bool,
    /// Whether the reduced rhs denominator divides 4, i.e. tan(rhs pi) is
    /// rational or infinite. Integer-coefficient formulas can only be true
    /// with a representable rhs; fractional coefficients admit others.
    pub rhs_representable: bool,
    /// `4 T rhs mod 8`: which ray of argument `k pi/4` the Gaussian product
    /// must land on.
    pub direction_exponent: u8,
    /// Enclosure of `LHS - rhs pi`.
    pub enclosure: Enclosure,
}

impl VerificationReport {
    pub fn valid(&self) -> bool {
        self.gaussian_ok && self.branch_ok
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "valid={} gaussian={} branch={} dir={}",
            self.valid(),
            self.gaussian_ok,
            self.branch_ok,
            self.direction_exponent
        )
    }
}

use crate::exact::gauss_int_ray as int_ray;

/// Smallest `k` with `10^-k <= bound`.
fn decimal_scale_for(bound: &Rat) -> u32 {
    let ten = rat_int(10);
    let mut p = Rat::one();
    let mut k = 0u32;
    while &p > bound {
        p /= &ten;
        k += 1;
        assert!(k < 1_000_000, "absurd precision request");
    }
    k
}

const HUGE_BITS: u64 = 4096;

/// Enclosure of `atan(arg)` with width <= eps; arguments with huge
/// components get their endpoints rounded outward to a power-of-ten
/// denominator so later interval arithmetic stays cheap.
fn atan_term_enclosure(arg: &Rat, eps: &Rat) -> Enclosure {
    if arg.numer().bits() > HUGE_BITS || arg.denom().bits() > HUGE_BITS {
        let e = atan_enclosure(arg, &(eps / rat_int(2)));
        e.round_out(decimal_scale_for(&(eps / rat_int(4))))
    } else {
        atan_enclosure(arg, eps)
    }
}

/// Enclosure of `sum coef_k atan(arg_k) - rhs pi` with width at most `wt`.
fn residual_enclosure(f: &MachinFormula, wt: &Rat) -> Enclosure {
    let mut acc = if f.rhs.is_zero() {
        Enclosure::zero()
    } else {
        let w_pi = wt / (rat_int(2) * f.rhs.abs());
        pi_enclosure_width(&w_pi).scale(&-f.rhs.clone())
    };
    let n = f.terms.len().max(1);
    for t in &f.terms {
        let eps = wt / (rat_int(2 * n as i64) * t.coef.abs());
        acc = acc.add(&atan_term_enclosure(&t.arg, &eps).scale(&t.coef));
    }
    acc
}

/// Two-stage verification.
///
/// Stage 1 (exact, mod 2 pi / T): with T the least positive integer making
/// every `T coef_k` and `4 T rhs` integral, the product of
/// `(b_k + i a_k)^(T coef_k)` must lie on the ray of argument
/// `(4 T rhs mod 8) pi/4`. Negative powers contribute their conjugate
/// numerator; the positive-rational denominators they leave behind cannot
/// move the ray.
///
/// Stage 2 (branch): an enclosure of `LHS - rhs pi` of width below
/// `2 pi / T` containing zero rules out every nonzero multiple left open by
/// stage 1. Width 3/(8T) is used, comfortably below.
pub fn verify(f: &MachinFormula) -> VerificationReport {
    let four_rhs = &f.rhs * rat_int(4);
    let mut t_mult: BigInt = four_rhs.denom().clone();
    for term in &f.terms {
        t_mult = t_mult.lcm(term.coef.denom());
    }

    let mut p_re = BigInt::one();
    let mut p_im = BigInt::zero();
    for term in &f.terms {
        let e = (&t_mult * term.coef.numer()) / term.coef.denom();
        let a = term.arg.numer();
        let b = term.arg.denom();
        let exp = e
            .abs()
            .to_u64()
            .expect("scaled exponent exceeds u64; formula out of supported range");
        let im = if e.is_negative() { -a } else { a.clone() };
        let (r, i) = crate::exact::gauss_int_pow(b, &im, exp);
        let nr = &p_re * &r - &p_im * &i;
        let ni = &p_re * &i + &p_im * &r;
        p_re = nr;
        p_im = ni;
    }
    let e_dir_int = (&four_rhs * Rat::from_integer(t_mult.clone())).to_integer();
    let eight = BigInt::from(8);
    let e_dir = ((&e_dir_int % &eight + &eight) % &eight).to_u8().unwrap();
    let gaussian_ok = int_ray(&p_re, &p_im) == Some(e_dir);

    let wt = rat(3, 8) / Rat::from_integer(t_mult);
    let enclosure = residual_enclosure(f, &wt);
    let six = rat_int(6);
    let branch_ok =
        enclosure.contains_zero() && enclosure.hi() <= &six && enclosure.lo() >= &-six.clone();

    let rhs_representable = {
        let d = f.rhs.denom();
        *d == BigInt::one() || *d == BigInt::from(2) || *d == BigInt::from(4)
    };

    VerificationReport {
        gaussian_ok,
        branch_ok,
        rhs_representable,
        direction_exponent: e_dir,
        enclosure,
    }
}

/// Lehmer measure: sum of `1 / log10 |b_k / a_k|` over the arguments
/// `a_k / b_k`. Requires every `|arg|` strictly inside (0, 1). Computed from
/// digit counts plus a leading-mantissa correction, good to well over ten
/// significant digits even for arguments with millions of digits.
pub fn lehmer_measure(f: &MachinFormula) -> Result<f64, FormulaError> {
    let mut mu = 0.0;
    for t in &f.terms {
        let a = t.arg.abs();
        if a >= Rat::one() {
            return Err(FormulaError::MeasureUndefined { arg: t.arg.clone() });
        }
        mu += 1.0 / -log10_rat_abs(&a);
    }
    Ok(mu)
}

/// Rewrite every term to satisfy `|arg| < 1` using
/// `atan(x) = sgn(x) pi/2 - atan(1/x)`, folding `atan(+-1) = +-pi/4` into
/// the rhs. Verification validity is preserved.
pub fn normalize_args(f: &MachinFormula) -> MachinFormula {
    let mut terms = Vec::with_capacity(f.terms.len());
    let mut rhs = f.rhs.clone();
    for t in &f.terms {
        // canonical arguments are positive
        if t.arg == Rat::one() {
            rhs -= &t.coef / rat_int(4);
        } else if t.arg > Rat::one() {
            rhs -= &t.coef / rat_int(2);
            terms.push(ArctanTerm::new(-t.coef.clone(), t.arg.recip()));
        } else {
            terms.push(t.clone());
        }
    }
    MachinFormula::new(terms, rhs)
}

/// Replace term `k`'s `coef atan(x)` by
/// `2 coef atan(2x) - coef atan(4x^3 + 3x)`, then canonicalize. The identity
/// holds for all real x (its arguments are polynomials, so no branch jumps),
/// hence validity is preserved.
pub fn split_term(f: &MachinFormula, k: usize) -> Result<MachinFormula, FormulaError> {
    let t = f.terms.get(k).ok_or(FormulaError::IndexOutOfRange {
        index: k,
        len: f.terms.len(),
    })?;
    let x = &t.arg;
    let double = rat_int(2) * x;
    let cubic = rat_int(4) * x * x * x + rat_int(3) * x;
    let mut terms: Vec<ArctanTerm> = Vec::with_capacity(f.terms.len() + 1);
    for (i, other) in f.terms.iter().enumerate() {
        if i == k {
            terms.push(ArctanTerm::new(rat_int(2) * &t.coef, double.clone()));
            terms.push(ArctanTerm::new(-t.coef.clone(), cubic.clone()));
        } else {
            terms.push(other.clone());
        }
    }
    Ok(MachinFormula::new(terms, f.rhs.clone()))
}

/// Build `sum (r_k / n_k) atan(R_{j_k}(n_k, x)) = (r/s) pi` from evaluation
/// data, determining the right-hand side by branch pinning: the value is a
/// multiple of `pi / (4 L)` with L the lcm of the coefficient denominators,
/// and an enclosure of width below that spacing identifies it uniquely.
///
/// The weights `r_k` may be rational (the derivative argument only needs
/// their exact sum to vanish).
pub fn theorem2_eval(
    spec: &[(Rat, u8, u32)],
    x: &Rat,
) -> Result<(MachinFormula, Rat), FormulaError> {
    let sum: Rat = spec.iter().map(|(r, _, _)| r.clone()).sum();
    if !sum.is_zero() {
        return Err(FormulaError::CoefficientSumNonzero);
    }
    let mut terms = Vec::with_capacity(spec.len());
    let mut lattice: BigInt = BigInt::one();
    for (index, (r, j, n)) in spec.iter().enumerate() {
        let coef = r / Rat::from_integer(BigInt::from(*n));
        lattice = lattice.lcm(coef.denom());
        let value = eval_r(*j, *n, x, Strategy::BinPow)
            .expect("binpow accepts all n")
            .finite()
            .cloned()
            .ok_or(FormulaError::PoleAtIndex { index })?;
        terms.push(ArctanTerm::new(coef, value));
    }
    let skeleton = MachinFormula::new(terms, Rat::zero());

    // Width 1/(8L) < spacing pi/(4L); rhs = M/(4L) for a unique integer M.
    let l_rat = Rat::from_integer(lattice.clone());
    let wt = Rat::new(BigInt::one(), 8 * &lattice);
    let value_enc = residual_enclosure(&skeleton, &wt);
    let pi_mid = crate::exact::rat_to_f64(&pi_enclosure_width(&rat(1, 1_000_000)).midpoint());
    let guess = (crate::exact::rat_to_f64(&value_enc.midpoint()) * 4.0
        * crate::exact::rat_to_f64(&l_rat)
        / pi_mid)
        .round() as i64;
    let mut rhs = None;
    for m in [guess, guess - 1, guess + 1] {
        let cand = Rat::new(BigInt::from(m), 4 * &lattice);
        let w_pi = if cand.is_zero() {
            rat(1, 8)
        } else {
            &wt / (rat_int(2) * cand.abs())
        };
        let diff = value_enc.sub(&pi_enclosure_width(&w_pi).scale(&cand));
        if diff.contains_zero() {
            rhs = Some(cand);
            break;
        }
    }
    let rhs = rhs.ok_or(FormulaError::BranchPinningFailed)?;
    let formula = MachinFormula::new(skeleton.terms, rhs.clone());
    if !verify(&formula).valid() {
        return Err(FormulaError::NotVerified);
    }
    Ok((formula, rhs))
}

/// Decimal digit counts `(numerator, denominator)` of a reduced rational.
pub fn digit_counts(x: &Rat) -> (u64, u64) {
    (digits10(x.numer()), digits10(x.denom()))
}
