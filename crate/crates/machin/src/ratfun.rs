//! The rational functions R_j(n, x) = tan(n arctan x + j pi/4), j = 0..3:
//! explicit integer-coefficient polynomials, three evaluation strategies,
//! and the algebraic laws connecting them.

use crate::exact::{gauss_int_pow, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RatfunError {
    #[error("pow2chain strategy requires n to be a power of two, got {0}")]
    NotPowerOfTwo(u32),
    #[error("R_2(0, x) is undefined (reciprocal of the zero constant)")]
    UndefinedR20,
}

/// Dense integer polynomial; index = degree, highest stored coefficient
/// nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    fn div_exact(&self, d: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c / d).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match deg {
                0 => write!(f, "{}", mag)?,
                1 if mag.is_one() => write!(f, "x")?,
                1 => write!(f, "{}*x", mag)?,
                _ if mag.is_one() => write!(f, "x^{}", deg)?,
                _ => write!(f, "{}*x^{}", mag, deg)?,
            }
        }
        Ok(())
    }
}

/// Result of evaluating R_j(n, .) at a rational point: a rational value, or
/// the pole marker where the defining denominator vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RjValue {
    Finite(Rat),
    Pole,
}

impl RjValue {
    fn from_pair(num: Rat, den: Rat) -> RjValue {
        if den.is_zero() {
            assert!(!num.is_zero(), "numerator and denominator vanish together");
            RjValue::Pole
        } else {
            RjValue::Finite(num / den)
        }
    }

    fn from_int_pair(num: BigInt, den: BigInt) -> RjValue {
        if den.is_zero() {
            assert!(!num.is_zero(), "numerator and denominator vanish together");
            RjValue::Pole
        } else {
            RjValue::Finite(Rat::new(num, den))
        }
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            RjValue::Finite(r) => Some(r),
            RjValue::Pole => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, RjValue::Pole)
    }
}

impl fmt::Display for RjValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RjValue::Finite(r) => write!(f, "{}", r),
            RjValue::Pole => write!(f, "pole"),
        }
    }
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(c.clone());
    }
    row
}

/// numer_n(x) = sum over r of (-1)^r C(n, 2r+1) x^(2r+1); numer_0 = 0.
pub fn numer_poly(n: u32) -> IntPolynomial {
    let binom = binomial_row(n);
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    let mut r = 0usize;
    while 2 * r + 1 <= n as usize {
        let mut c = binom[2 * r + 1].clone();
        if r % 2 == 1 {
            c = -c;
        }
        coeffs[2 * r + 1] = c;
        r += 1;
    }
    IntPolynomial::new(coeffs)
}

/// denom_n(x) = sum over r of (-1)^r C(n, 2r) x^(2r); denom_0 = 1.
pub fn denom_poly(n: u32) -> IntPolynomial {
    let binom = binomial_row(n);
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    let mut r = 0usize;
    while 2 * r <= n as usize {
        let mut c = binom[2 * r].clone();
        if r % 2 == 1 {
            c = -c;
        }
        coeffs[2 * r] = c;
        r += 1;
    }
    IntPolynomial::new(coeffs)
}

/// Evaluation strategy for `eval_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Evaluate the explicit numer/denom polynomials.
    Poly,
    /// Successive squaring of (1 + i x)^n in Z[i].
    BinPow,
    /// Composition chain of R_0(2, .) steps; n must be a power of two.
    Pow2Chain,
}

/// Combine the building pair (numerator, denominator) of R_0 into the pair
/// for R_j.
fn apply_j<T>(j: u8, num: T, den: T) -> (T, T)
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Neg<Output = T>,
{
    match j {
        0 => (num, den),
        1 => (den.clone() + num.clone(), den - num),
        2 => (-den, num),
        3 => (num.clone() - den.clone(), num + den),
        _ => panic!("j must be in 0..=3"),
    }
}

/// Evaluate R_j(n, x) by the requested strategy. All strategies agree on
/// their common domain; poles are returned as values, not errors.
pub fn eval_r(j: u8, n: u32, x: &Rat, strategy: Strategy) -> Result<RjValue, RatfunError> {
    assert!(j <= 3, "j must be in 0..=3");
    match strategy {
        Strategy::Poly => {
            let nu = numer_poly(n).eval(x);
            let de = denom_poly(n).eval(x);
            let (num, den) = apply_j(j, nu, de);
            Ok(RjValue::from_pair(num, den))
        }
        Strategy::BinPow => {
            // (1+ix)^n = (q+ip)^n / q^n with x = p/q; the q^n cancels in
            // every quotient below.
            let (re, im) = gauss_int_pow(x.denom(), x.numer(), n as u64);
            let (num, den) = apply_j(j, im, re);
            Ok(RjValue::from_int_pair(num, den))
        }
        Strategy::Pow2Chain => {
            if n == 0 || n & (n - 1) != 0 {
                return Err(RatfunError::NotPowerOfTwo(n));
            }
            if n == 1 {
                let (num, den) = apply_j(j, x.numer().clone(), x.denom().clone());
                return Ok(RjValue::from_int_pair(num, den));
            }
            // Projective chain through R_0(2, t) = 2t / (1 - t^2); working
            // with (p, q) pairs keeps intermediate poles composable.
            let mut p = x.numer().clone();
            let mut q = x.denom().clone();
            let mut m = n;
            while m > 2 {
                let np = 2 * (&p * &q);
                let nq = &q * &q - &p * &p;
                p = np;
                q = nq;
                m /= 2;
            }
            let num2 = 2 * (&p * &q);
            let den2 = &q * &q - &p * &p;
            let (num, den) = apply_j(j, num2, den2);
            Ok(RjValue::from_int_pair(num, den))
        }
    }
}

/// The (numerator, denominator) polynomial pair of R_j(n, .), content
/// reduced jointly with the denominator's leading coefficient normalized
/// positive.
pub fn rj_display(j: u8, n: u32) -> Result<(IntPolynomial, IntPolynomial), RatfunError> {
    assert!(j <= 3, "j must be in 0..=3");
    if j == 2 && n == 0 {
        return Err(RatfunError::UndefinedR20);
    }
    let nu = numer_poly(n);
    let de = denom_poly(n);
    let (mut num, mut den) = match j {
        0 => (nu, de),
        1 => (de.add(&nu), de.sub(&nu)),
        2 => (de.neg(), nu),
        3 => (nu.sub(&de), nu.add(&de)),
        _ => unreachable!(),
    };
    let g = num.content().gcd(&den.content());
    if g > BigInt::one() {
        num = num.div_exact(&g);
        den = den.div_exact(&g);
    }
    if den.leading().map_or(false, |c| c.is_negative()) {
        num = num.neg();
        den = den.neg();
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;
    use super::Strategy as Js;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn numer_examples() {
        assert_eq!(numer_poly(2), poly(&[0, 2]));
        assert_eq!(numer_poly(5), poly(&[0, 5, 0, -10, 0, 1]));
        assert_eq!(numer_poly(0), IntPolynomial::zero());
    }

    #[test]
    fn denom_examples() {
        assert_eq!(denom_poly(2), poly(&[1, 0, -1]));
        assert_eq!(denom_poly(4), poly(&[1, 0, -6, 0, 1]));
        assert_eq!(denom_poly(0), poly(&[1]));
    }

    #[test]
    fn eval_identity_and_known_values() {
        for x in [rat(3, 7), rat(-5, 2), rat_int(0)] {
            assert_eq!(
                eval_r(0, 1, &x, Js::Poly).unwrap(),
                RjValue::Finite(x.clone())
            );
        }
        assert_eq!(
            eval_r(1, 2, &rat_int(3), Js::Poly).unwrap(),
            RjValue::Finite(rat(1, 7))
        );
        assert_eq!(
            eval_r(3, 4, &rat(1, 5), Js::Poly).unwrap(),
            RjValue::Finite(rat(1, 239))
        );
        assert_eq!(
            eval_r(0, 5, &rat_int(3), Js::BinPow).unwrap(),
            RjValue::Finite(rat(-3, 79))
        );
    }

    #[test]
    fn poles_are_values() {
        // R_0(2, 1) has denominator 1 - x^2 = 0.
        assert_eq!(eval_r(0, 2, &rat_int(1), Js::Poly).unwrap(), RjValue::Pole);
        assert_eq!(eval_r(0, 2, &rat_int(1), Js::BinPow).unwrap(), RjValue::Pole);
        assert_eq!(
            eval_r(0, 2, &rat_int(1), Js::Pow2Chain).unwrap(),
            RjValue::Pole
        );
        // R_2 poles where R_0 vanishes.
        assert_eq!(eval_r(2, 1, &rat_int(0), Js::Poly).unwrap(), RjValue::Pole);
    }

    #[test]
    fn pow2chain_rejects_non_powers() {
        assert_eq!(
            eval_r(0, 3, &rat(1, 2), Js::Pow2Chain),
            Err(RatfunError::NotPowerOfTwo(3))
        );
        assert!(eval_r(0, 1, &rat(1, 2), Js::Pow2Chain).is_ok());
    }

    #[test]
    fn display_pairs_match_printed_forms() {
        let (n, d) = rj_display(0, 3).unwrap();
        assert_eq!((n, d), (poly(&[0, -3, 0, 1]), poly(&[-1, 0, 3])));
        // R_1(3, x): the reflection law R_1(n,-x) R_1(n,x) = 1 pins the
        // denominator as x^3 - 3x^2 - 3x + 1.
        let (n, d) = rj_display(1, 3).unwrap();
        assert_eq!((n, d), (poly(&[1, 3, -3, -1]), poly(&[1, -3, -3, 1])));
        let (n, d) = rj_display(3, 1).unwrap();
        assert_eq!((n, d), (poly(&[-1, 1]), poly(&[1, 1])));
        let (n, d) = rj_display(1, 2).unwrap();
        assert_eq!((n, d), (poly(&[-1, -2, 1]), poly(&[-1, 2, 1])));
        let (n, d) = rj_display(1, 5).unwrap();
        assert_eq!(
            (n, d),
            (poly(&[-1, -5, 10, 10, -5, -1]), poly(&[-1, 5, 10, -10, -5, 1]))
        );
        assert_eq!(rj_display(2, 0), Err(RatfunError::UndefinedR20));
        // R_3(0, x) is the constant -1.
        let (n, d) = rj_display(3, 0).unwrap();
        assert_eq!((n, d), (poly(&[-1]), poly(&[1])));
    }

    #[test]
    fn display_formatting() {
        let (n, d) = rj_display(1, 3).unwrap();
        assert_eq!(n.to_string(), "-x^3 - 3*x^2 + 3*x + 1");
        assert_eq!(d.to_string(), "x^3 - 3*x^2 - 3*x + 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(poly(&[0, 2]).to_string(), "2*x");
    }

    #[test]
    fn sum_of_squares_identity() {
        // numer_n^2 + denom_n^2 = (1 + x^2)^n, so the two never share a
        // root; this backs the pole-marker invariant.
        let base = poly(&[1, 0, 1]);
        let mut pow = poly(&[1]);
        for n in 0..=64u32 {
            let nu = numer_poly(n);
            let de = denom_poly(n);
            assert_eq!(nu.mul(&nu).add(&de.mul(&de)), pow, "n = {}", n);
            pow = pow.mul(&base);
        }
    }

    fn rat_arg() -> impl proptest::strategy::Strategy<Value = Rat> {
        use proptest::strategy::Strategy as _;
        (-1000i64..=1000, 1i64..=1000).prop_map(|(p, q)| rat(p, q))
    }

    proptest! {
        #[test]
        fn strategies_agree(j in 0u8..=3, n in 0u32..=64, x in rat_arg()) {
            let a = eval_r(j, n, &x, Js::Poly).unwrap();
            let b = eval_r(j, n, &x, Js::BinPow).unwrap();
            prop_assert_eq!(&a, &b);
        }

        #[test]
        fn pow2chain_agrees(j in 0u8..=3, m in 1u32..=10, x in rat_arg()) {
            let n = 1u32 << m;
            let a = eval_r(j, n, &x, Js::BinPow).unwrap();
            let b = eval_r(j, n, &x, Js::Pow2Chain).unwrap();
            prop_assert_eq!(&a, &b);
        }

        #[test]
        fn reciprocal_laws(n in 1u32..=32, x in rat_arg()) {
            let r0 = eval_r(0, n, &x, Js::Poly).unwrap();
            let r2 = eval_r(2, n, &x, Js::Poly).unwrap();
            if let (Some(a), Some(b)) = (r0.finite(), r2.finite()) {
                prop_assert_eq!(a * b, rat_int(-1));
            }
            let r1 = eval_r(1, n, &x, Js::Poly).unwrap();
            let r3 = eval_r(3, n, &x, Js::Poly).unwrap();
            if let (Some(a), Some(b)) = (r1.finite(), r3.finite()) {
                prop_assert_eq!(a * b, rat_int(-1));
            }
        }

        #[test]
        fn inversion_laws(n in 0u32..=16, x in rat_arg()) {
            prop_assume!(!x.is_zero());
            let inv = x.recip();
            let even = 2 * n;
            let odd = 2 * n + 1;
            let a = eval_r(0, even, &inv, Js::Poly).unwrap();
            let b = eval_r(0, even, &x, Js::Poly).unwrap();
            if let (Some(a), Some(b)) = (a.finite(), b.finite()) {
                prop_assert_eq!(a.clone(), -b.clone());
            }
            let a = eval_r(0, odd, &inv, Js::Poly).unwrap();
            let b = eval_r(0, odd, &x, Js::Poly).unwrap();
            if let (Some(a), Some(b)) = (a.finite(), b.finite()) {
                prop_assert_eq!(a * b, Rat::one());
            }
            let a = eval_r(1, even, &inv, Js::Poly).unwrap();
            let b = eval_r(1, even, &x, Js::Poly).unwrap();
            if let (Some(a), Some(b)) = (a.finite(), b.finite()) {
                prop_assert_eq!(a * b, Rat::one());
            }
            let a = eval_r(1, odd, &inv, Js::Poly).unwrap();
            let b = eval_r(1, odd, &x, Js::Poly).unwrap();
            if let (Some(a), Some(b)) = (a.finite(), b.finite()) {
                prop_assert_eq!(a.clone(), -b.clone());
            }
        }

        #[test]
        fn reflection_laws(n in 0u32..=32, x in rat_arg()) {
            let neg = -x.clone();
            let a = eval_r(0, n, &neg, Js::Poly).unwrap();
            let b = eval_r(0, n, &x, Js::Poly).unwrap();
            if let (Some(a), Some(b)) = (a.finite(), b.finite()) {
                prop_assert_eq!(a.clone(), -b.clone());
            }
            let a = eval_r(1, n, &neg, Js::Poly).unwrap();
            let b = eval_r(1, n, &x, Js::Poly).unwrap();
            if let (Some(a), Some(b)) = (a.finite(), b.finite()) {
                prop_assert_eq!(a * b, Rat::one());
            }
        }

        #[test]
        fn composition_law(i in 0u8..=3, j in 0u8..=3, n in 1u32..=12, m in 1u32..=12, x in rat_arg()) {
            let inner = eval_r(i, m, &x, Js::Poly).unwrap();
            if let Some(t) = inner.finite() {
                let lhs = eval_r(j, n, t, Js::Poly).unwrap();
                let k = ((i as u32 * n + j as u32) % 4) as u8;
                let rhs = eval_r(k, n * m, &x, Js::Poly).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn tangent_addition_recurrence(j in 0u8..=3, n in 0u32..=24, x in rat_arg()) {
            let cur = eval_r(j, n, &x, Js::Poly).unwrap();
            let next = eval_r(j, n + 1, &x, Js::Poly).unwrap();
            if let Some(f) = cur.finite() {
                let den = Rat::one() - &x * f;
                if den.is_zero() {
                    prop_assert!(next.is_pole());
                } else {
                    prop_assert_eq!(next, RjValue::Finite((f + &x) / den));
                }
            }
        }
    }
}
