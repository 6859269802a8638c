//! The biquadratic field Q(i, sqrt 5), represented over the basis
//! {1, sqrt5, i, i sqrt5}. Multiplication is determined by sqrt5^2 = 5 and
//! i^2 = -1.

use super::{ExactError, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of Q(i, sqrt 5) as four rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticNum {
    /// coefficient of 1
    pub c1: Rat,
    /// coefficient of sqrt 5
    pub c5: Rat,
    /// coefficient of i
    pub ci: Rat,
    /// coefficient of i sqrt 5
    pub ci5: Rat,
}

impl QuarticNum {
    pub fn new(c1: Rat, c5: Rat, ci: Rat, ci5: Rat) -> Self {
        QuarticNum { c1, c5, ci, ci5 }
    }

    pub fn zero() -> Self {
        QuarticNum::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        QuarticNum::new(Rat::one(), Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn from_rat(r: Rat) -> Self {
        QuarticNum::new(r, Rat::zero(), Rat::zero(), Rat::zero())
    }

    /// Real element `a + b sqrt5`.
    pub fn real(a: Rat, b: Rat) -> Self {
        QuarticNum::new(a, b, Rat::zero(), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c5.is_zero() && self.ci.is_zero() && self.ci5.is_zero()
    }

    /// Lies in the real subfield Q(sqrt 5).
    pub fn is_real(&self) -> bool {
        self.ci.is_zero() && self.ci5.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.c5.is_zero() && self.is_real()
    }

    /// The conjugate sending i to -i (fixed on the real subfield); an
    /// involution and a ring homomorphism.
    pub fn conj_i(&self) -> Self {
        QuarticNum::new(self.c1.clone(), self.c5.clone(), -self.ci.clone(), -self.ci5.clone())
    }

    /// The conjugate sending sqrt 5 to -sqrt 5.
    pub fn conj_sqrt5(&self) -> Self {
        QuarticNum::new(self.c1.clone(), -self.c5.clone(), self.ci.clone(), -self.ci5.clone())
    }

    /// Full norm down to Q: the product of the element with its three
    /// conjugates under (i -> +/-i, sqrt5 -> +/-sqrt5).
    pub fn norm(&self) -> Result<Rat, ExactError> {
        let p = self.clone()
            * self.conj_i()
            * self.conj_sqrt5()
            * self.conj_i().conj_sqrt5();
        if p.is_rational() {
            Ok(p.c1)
        } else {
            Err(ExactError::NormNotRational)
        }
    }

    /// Multiplicative inverse (conjugate product over the norm).
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroToNegativePower);
        }
        let n = self.norm()?;
        debug_assert!(!n.is_zero());
        let adj = self.conj_i() * self.conj_sqrt5() * self.conj_i().conj_sqrt5();
        let inv_n = n.recip();
        Ok(QuarticNum::new(
            adj.c1 * &inv_n,
            adj.c5 * &inv_n,
            adj.ci * &inv_n,
            adj.ci5 * inv_n,
        ))
    }

    /// `q^n` by binary exponentiation, negative exponents via the inverse.
    pub fn pow(&self, n: i64) -> Result<Self, ExactError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut base = self.clone();
        let mut acc = QuarticNum::one();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        Ok(acc)
    }
}

impl Add for QuarticNum {
    type Output = QuarticNum;
    fn add(self, o: QuarticNum) -> QuarticNum {
        QuarticNum::new(self.c1 + o.c1, self.c5 + o.c5, self.ci + o.ci, self.ci5 + o.ci5)
    }
}

impl Sub for QuarticNum {
    type Output = QuarticNum;
    fn sub(self, o: QuarticNum) -> QuarticNum {
        QuarticNum::new(self.c1 - o.c1, self.c5 - o.c5, self.ci - o.ci, self.ci5 - o.ci5)
    }
}

impl Neg for QuarticNum {
    type Output = QuarticNum;
    fn neg(self) -> QuarticNum {
        QuarticNum::new(-self.c1, -self.c5, -self.ci, -self.ci5)
    }
}

impl Mul for QuarticNum {
    type Output = QuarticNum;
    fn mul(self, o: QuarticNum) -> QuarticNum {
        let five = super::rat_int(5);
        // basis products: s^2 = 5, i^2 = -1, (is)^2 = -5,
        // s*(is) = 5i, i*(is) = -s
        let c1 = &self.c1 * &o.c1 + &five * (&self.c5 * &o.c5)
            - &self.ci * &o.ci
            - &five * (&self.ci5 * &o.ci5);
        let c5 = &self.c1 * &o.c5 + &self.c5 * &o.c1 - &self.ci * &o.ci5 - &self.ci5 * &o.ci;
        let ci = &self.c1 * &o.ci + &self.ci * &o.c1
            + &five * (&self.c5 * &o.ci5)
            + &five * (&self.ci5 * &o.c5);
        let ci5 = &self.c1 * &o.ci5 + &self.ci5 * &o.c1 + &self.c5 * &o.ci + &self.ci * &o.c5;
        QuarticNum::new(c1, c5, ci, ci5)
    }
}

impl fmt::Display for QuarticNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*sqrt5 + {}*i + {}*i*sqrt5",
            self.c1, self.c5, self.ci, self.ci5
        )
    }
}
