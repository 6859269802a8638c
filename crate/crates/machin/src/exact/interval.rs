//! Closed rational intervals. All endpoints are exact rationals, so interval
//! operations introduce no rounding at all; widths grow only through series
//! truncation terms added explicitly by the callers.

use super::Rat;
use num_traits::{Signed, Zero};
use std::fmt;

/// A closed rational interval `[lo, hi]` certifying a real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rat,
    hi: Rat,
}

impl Enclosure {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Enclosure { lo, hi }
    }

    /// Degenerate interval containing exactly one rational.
    pub fn point(x: Rat) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Enclosure::point(Rat::zero())
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / super::rat_int(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn subset_of(&self, other: &Enclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Largest absolute value attained on the interval.
    pub fn abs_hi(&self) -> Rat {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// The interval is entirely on one side of zero.
    pub fn sign_definite(&self) -> bool {
        self.lo.is_positive() || self.hi.is_negative()
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn scale(&self, c: &Rat) -> Enclosure {
        if c.is_negative() {
            Enclosure::new(c * &self.hi, c * &self.lo)
        } else {
            Enclosure::new(c * &self.lo, c * &self.hi)
        }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Enclosure::new(lo, hi)
    }

    /// Reciprocal of an interval that does not straddle zero.
    pub fn recip(&self) -> Enclosure {
        assert!(self.sign_definite(), "reciprocal of interval containing zero");
        Enclosure::new(Rat::new(1.into(), 1.into()) / &self.hi, Rat::new(1.into(), 1.into()) / &self.lo)
    }

    pub fn div(&self, other: &Enclosure) -> Enclosure {
        self.mul(&other.recip())
    }

    /// Interval of absolute values (requires sign definiteness so the result
    /// stays an interval of the same width).
    pub fn abs(&self) -> Enclosure {
        assert!(self.sign_definite() || (self.lo.is_zero() && self.hi.is_zero()));
        if self.hi.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Widen symmetrically by `r >= 0`.
    pub fn pad(&self, r: &Rat) -> Enclosure {
        debug_assert!(!r.is_negative());
        Enclosure::new(&self.lo - r, &self.hi + r)
    }

    /// Outward rounding of both endpoints to denominator `10^scale`.
    /// Containment is preserved; the width grows by at most `2 * 10^-scale`.
    /// Keeps representation sizes bounded when endpoints carry huge
    /// numerators and denominators.
    pub fn round_out(&self, scale: u32) -> Enclosure {
        use num_integer::Integer;
        let p = num_bigint::BigInt::from(10u32).pow(scale);
        let lo_num = (self.lo.numer() * &p).div_floor(self.lo.denom());
        let hi_num = (self.hi.numer() * &p).div_ceil(self.hi.denom());
        Enclosure::new(Rat::new(lo_num, p.clone()), Rat::new(hi_num, p))
    }

    /// Convex hull.
    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(
            if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() },
            if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() },
        )
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
