//! Gaussian rationals and binary exponentiation in Q[i].

use super::{ExactError, Rat};
use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, Zero};

/// Element of Q[i] with rational real and imaginary parts. Gaussian integers
/// are the sub-case with integer components. Prints as `a+bi`.
pub type GaussRat = Complex<Rat>;

/// `z^n` by binary exponentiation; negative exponents go through
/// `conj(z)^|n| / norm(z)^|n|`, staying inside Q[i].
pub fn gauss_pow(z: &GaussRat, n: i64) -> Result<GaussRat, ExactError> {
    if n < 0 {
        if z.is_zero() {
            return Err(ExactError::ZeroToNegativePower);
        }
        let num = gauss_pow(&z.conj(), -n)?;
        let den = z.norm_sqr().pow((-n) as i32);
        return Ok(GaussRat::new(num.re / &den, num.im / den));
    }
    let mut base = z.clone();
    let mut acc = GaussRat::one();
    let mut e = n as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    Ok(acc)
}

/// `(re + i im)^n` for big integers, `n >= 0`. Kept separate from the
/// rational path so large powers avoid per-step gcd reductions.
pub fn gauss_int_pow(re: &BigInt, im: &BigInt, n: u64) -> (BigInt, BigInt) {
    let mut base = (re.clone(), im.clone());
    let mut acc = (BigInt::one(), BigInt::zero());
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = gauss_int_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = gauss_int_mul(&base, &base);
        }
    }
    acc
}

fn gauss_int_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// Which of the eight rays of argument `k pi/4` a nonzero Gaussian rational
/// lies on, if any. Ray 0 is the positive real axis, counting
/// counterclockwise.
pub fn unit_ray(z: &GaussRat) -> Option<u8> {
    ray_impl(&z.re, &z.im)
}

/// `unit_ray` for an integer pair `re + i im`.
pub fn gauss_int_ray(re: &BigInt, im: &BigInt) -> Option<u8> {
    ray_impl(re, im)
}

fn ray_impl<T>(re: &T, im: &T) -> Option<u8>
where
    T: Signed + PartialEq + Clone,
{
    if im.is_zero() {
        if re.is_positive() {
            return Some(0);
        }
        if re.is_negative() {
            return Some(4);
        }
        return None;
    }
    if re.is_zero() {
        return Some(if im.is_positive() { 2 } else { 6 });
    }
    if re == im {
        return Some(if re.is_positive() { 1 } else { 5 });
    }
    if *re == -im.clone() {
        return Some(if im.is_positive() { 3 } else { 7 });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    fn gi(re: i64, im: i64) -> GaussRat {
        GaussRat::new(rat_int(re), rat_int(im))
    }

    // Repeated naive multiplication, the oracle for the binary route.
    fn naive_pow(z: &GaussRat, n: u64) -> GaussRat {
        let mut acc = GaussRat::one();
        for _ in 0..n {
            acc *= z;
        }
        acc
    }

    #[test]
    fn fourth_power_of_5_plus_i() {
        assert_eq!(gauss_pow(&gi(5, 1), 4).unwrap(), gi(476, 480));
    }

    #[test]
    fn machin_product_identity() {
        // (7+i)^5 (79+3i)^2 = 2^3 5^10 (1+i)
        let p = gauss_pow(&gi(7, 1), 5).unwrap() * gauss_pow(&gi(79, 3), 2).unwrap();
        assert_eq!(p, gi(78_125_000, 78_125_000));
    }

    #[test]
    fn zeroth_power_is_one() {
        assert_eq!(gauss_pow(&gi(3, -2), 0).unwrap(), GaussRat::one());
    }

    #[test]
    fn negative_exponent_is_inverse() {
        let z = GaussRat::new(rat(3, 2), rat(-1, 5));
        let w = gauss_pow(&z, -3).unwrap();
        let back = gauss_pow(&z, 3).unwrap() * w;
        assert_eq!(back, GaussRat::one());
        assert_eq!(
            gauss_pow(&GaussRat::zero(), -1),
            Err(ExactError::ZeroToNegativePower)
        );
    }

    #[test]
    fn binary_matches_naive_on_random_bases() {
        let mut seed = 0x2545f4914f6cdd1du64;
        for _ in 0..60 {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            let re = (seed % 19) as i64 - 9;
            let im = ((seed >> 8) % 19) as i64 - 9;
            let n = (seed >> 16) % 65;
            let z = gi(re, im);
            if z.is_zero() {
                continue;
            }
            assert_eq!(gauss_pow(&z, n as i64).unwrap(), naive_pow(&z, n));
        }
    }

    #[test]
    fn int_pow_matches_rational_pow() {
        let (a, b) = gauss_int_pow(&BigInt::from(5), &BigInt::from(1), 4);
        assert_eq!((a, b), (BigInt::from(476), BigInt::from(480)));
    }

    #[test]
    fn ray_classification() {
        assert_eq!(unit_ray(&gi(3, 0)), Some(0));
        assert_eq!(unit_ray(&gi(2, 2)), Some(1));
        assert_eq!(unit_ray(&gi(0, 5)), Some(2));
        assert_eq!(unit_ray(&gi(-1, 1)), Some(3));
        assert_eq!(unit_ray(&gi(-7, 0)), Some(4));
        assert_eq!(unit_ray(&gi(-2, -2)), Some(5));
        assert_eq!(unit_ray(&gi(0, -1)), Some(6));
        assert_eq!(unit_ray(&gi(4, -4)), Some(7));
        assert_eq!(unit_ray(&gi(2, 1)), None);
        assert_eq!(unit_ray(&gi(0, 0)), None);
    }

    #[test]
    fn norm_is_multiplicative() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        for _ in 0..50 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            let z = GaussRat::new(
                rat((seed % 21) as i64 - 10, 1 + (seed % 7) as i64),
                rat(((seed >> 16) % 21) as i64 - 10, 1 + ((seed >> 24) % 5) as i64),
            );
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            let w = GaussRat::new(
                rat((seed % 21) as i64 - 10, 1 + (seed % 7) as i64),
                rat(((seed >> 16) % 21) as i64 - 10, 1 + ((seed >> 24) % 5) as i64),
            );
            assert_eq!((&z * &w).norm_sqr(), z.norm_sqr() * w.norm_sqr());
        }
    }
}
