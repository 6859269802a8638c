//! Two-term identities in powers of the golden section, verified in exact
//! Q(i, sqrt 5) arithmetic: `a atan(phi^kappa) + b atan(phi^ell) = pi/4`.

use crate::exact::{
    atan_enclosure_of, pi_enclosure_width, rat, rat_int, sqrt5_enclosure, Enclosure, QuarticNum,
    Rat,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// Candidate identity `a atan(phi^kappa) + b atan(phi^ell) = pi/4`.
/// The published table has `|kappa| >= |ell|` and `kappa + ell != 0`
/// (equal-and-opposite exponents give only the trivial pi/2 relation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenQuadruple {
    pub a: Rat,
    pub b: Rat,
    pub kappa: i64,
    pub ell: i64,
}

impl GoldenQuadruple {
    pub fn new(a: Rat, b: Rat, kappa: i64, ell: i64) -> Self {
        GoldenQuadruple { a, b, kappa, ell }
    }
}

impl std::fmt::Display for GoldenQuadruple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.kappa, self.ell)
    }
}

/// Signed Fibonacci number, `F(-k) = (-1)^(k+1) F(k)`.
pub fn fibonacci(k: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..k.unsigned_abs() {
        let next = &a + &b;
        a = b;
        b = next;
    }
    if k < 0 && k % 2 == 0 {
        -a
    } else {
        a
    }
}

/// Signed Lucas number, `L(-k) = (-1)^k L(k)`.
pub fn lucas(k: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..k.unsigned_abs() {
        let next = &a + &b;
        a = b;
        b = next;
    }
    if k < 0 && k % 2 != 0 {
        -a
    } else {
        a
    }
}

/// `phi^k = (L_k + F_k sqrt5) / 2` as a quartic number with zero imaginary
/// coordinates; valid for all integer k.
pub fn phi_power(k: i64) -> QuarticNum {
    let half = rat(1, 2);
    QuarticNum::real(
        Rat::from_integer(lucas(k)) * &half,
        Rat::from_integer(fibonacci(k)) * half,
    )
}

/// Rational interval containing `phi^k`.
fn phi_power_enclosure(k: i64, width: &Rat) -> Enclosure {
    let f = Rat::from_integer(fibonacci(k));
    let l = Rat::from_integer(lucas(k));
    let w5 = width / (f.abs() + Rat::one());
    let s5 = sqrt5_enclosure(&w5);
    s5.scale(&(&f / rat_int(2)))
        .add(&Enclosure::point(l / rat_int(2)))
}

/// `1 + i * (real quartic value)`.
fn one_plus_i_times(real: QuarticNum) -> QuarticNum {
    assert!(real.is_real());
    QuarticNum::new(Rat::one(), Rat::zero(), real.c1, real.c5)
}

/// Two-stage check of `a atan(phi^kappa) + b atan(phi^ell) = pi/4`.
///
/// Stage 1 is the exact identity: with `a = u/w`, `b = v/w` over the least
/// common denominator w, the product
/// `(1 + i phi^kappa)^(4u) (1 + i phi^ell)^(4v)` must equal its own
/// i-conjugate, i.e. lie in the real subfield; that pins the left-hand side
/// to a multiple of `pi/(4w)`. Stage 2 closes the branch with an enclosure
/// of width below that spacing around pi/4.
pub fn verify_golden(q: &GoldenQuadruple) -> bool {
    let w_den: BigInt = q.a.denom().lcm(q.b.denom());
    let u = (&q.a * Rat::from_integer(w_den.clone())).to_integer();
    let v = (&q.b * Rat::from_integer(w_den.clone())).to_integer();
    let w = w_den.to_i64().expect("common denominator out of range");

    let base_k = one_plus_i_times(phi_power(q.kappa));
    let base_l = one_plus_i_times(phi_power(q.ell));
    let eu = 4 * u.to_i64().expect("4u out of range");
    let ev = 4 * v.to_i64().expect("4v out of range");
    let product = match (base_k.pow(eu), base_l.pow(ev)) {
        (Ok(p), Ok(r)) => p * r,
        _ => return false,
    };
    if !product.is_real() {
        return false;
    }

    // stage 2: enclosure of a atan(phi^kappa) + b atan(phi^ell) - pi/4
    // with width below pi/(4w); 1/(4w) suffices since 1 < pi
    let wt = Rat::new(BigInt::one(), 4 * BigInt::from(w));
    let mass = q.a.abs() + q.b.abs() + Rat::one();
    let eps = &wt / (rat_int(16) * &mass);
    let mut acc = pi_enclosure_width(&eps).scale(&rat(-1, 4));
    for (coef, k) in [(&q.a, q.kappa), (&q.b, q.ell)] {
        if coef.is_zero() {
            continue;
        }
        let phi = phi_power_enclosure(k, &eps);
        let at = atan_enclosure_of(&phi, &eps);
        acc = acc.add(&at.scale(coef));
    }
    acc.contains_zero() && acc.width() <= wt
}

/// The sixteen published quadruples, row by row.
pub fn sixteen_quadruples() -> Vec<GoldenQuadruple> {
    let q = |an: i64, ad: i64, bn: i64, bd: i64, k: i64, l: i64| {
        GoldenQuadruple::new(rat(an, ad), rat(bn, bd), k, l)
    };
    vec![
        q(1, 3, 1, 3, 3, 1),
        q(1, 1, 1, 1, -3, -1),
        q(-1, 1, 1, 1, -3, 1),
        q(1, 1, -1, 1, 3, -1),
        q(1, 5, 2, 5, 6, 2),
        q(1, 1, 2, 1, -6, -2),
        q(-1, 3, 2, 3, -6, 2),
        q(1, 1, -2, 1, 6, -2),
        q(1, 7, 3, 7, 5, 3),
        q(1, 1, 3, 1, -5, -3),
        q(-1, 5, 3, 5, -5, 3),
        q(1, 1, -3, 1, 5, -3),
        q(-1, 2, 3, 2, 5, 1),
        q(-1, 2, 3, 2, -5, -1),
        q(1, 4, 3, 4, -5, 1),
        q(1, 4, 3, 4, 5, -1),
    ]
}

/// `N(1 + i phi^kappa)` as an integer: `5 F_kappa^2` for odd kappa,
/// `L_kappa^2` for even kappa.
pub fn golden_norm(kappa: u32) -> BigInt {
    let q = one_plus_i_times(phi_power(kappa as i64));
    let n = q.norm().expect("norm must be rational");
    assert!(n.is_integer(), "norm of 1 + i phi^k must be an integer");
    n.to_integer()
}

fn odd_prime_factors(n: &BigInt) -> BTreeSet<u64> {
    let mut n = n.abs().to_u64().expect("norm fits in u64 at desk scale");
    let mut out = BTreeSet::new();
    while n % 2 == 0 {
        n /= 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            out.insert(d);
            while n % d == 0 {
                n /= d;
            }
        } else {
            d += 2;
        }
    }
    if n > 1 {
        out.insert(n);
    }
    out
}

/// All pairs `1 <= ell < kappa <= max_k` whose norms `N(1 + i phi^kappa)`
/// and `N(1 + i phi^ell)` have the same set of odd prime factors, the
/// necessary condition for an identity. For `max_k = 12` these are exactly
/// (3,1), (5,1), (5,3), (6,2).
pub fn golden_search(max_k: u32) -> Vec<(u32, u32)> {
    let norms: Vec<BTreeSet<u64>> = (1..=max_k)
        .map(|k| odd_prime_factors(&golden_norm(k)))
        .collect();
    let mut out = Vec::new();
    for kappa in 2..=max_k {
        for ell in 1..kappa {
            if norms[(kappa - 1) as usize] == norms[(ell - 1) as usize] {
                out.push((kappa, ell));
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_power_examples() {
        assert_eq!(phi_power(1), QuarticNum::real(rat(1, 2), rat(1, 2)));
        assert_eq!(phi_power(3), QuarticNum::real(rat_int(2), rat_int(1)));
        assert_eq!(phi_power(-1), QuarticNum::real(rat(-1, 2), rat(1, 2)));
        for k in -8i64..=8 {
            let prod = phi_power(k) * phi_power(-k);
            assert_eq!(prod, QuarticNum::one(), "phi^{k} phi^-{k}");
        }
    }

    #[test]
    fn golden_norm_examples() {
        assert_eq!(golden_norm(1), BigInt::from(5));
        assert_eq!(golden_norm(2), BigInt::from(9));
        assert_eq!(golden_norm(5), BigInt::from(125));
        assert_eq!(golden_norm(12), BigInt::from(103_684));
    }

    #[test]
    fn golden_norm_matches_fibonacci_lucas() {
        // independent recurrence for F and L
        let (mut f0, mut f1) = (BigInt::zero(), BigInt::one());
        let (mut l0, mut l1) = (BigInt::from(2), BigInt::one());
        for k in 1..=30u32 {
            let fk = f1.clone();
            let lk = l1.clone();
            let expected = if k % 2 == 1 { 5 * &fk * &fk } else { &lk * &lk };
            assert_eq!(golden_norm(k), expected, "kappa = {}", k);
            let nf = &f0 + &f1;
            f0 = f1;
            f1 = nf;
            let nl = &l0 + &l1;
            l0 = l1;
            l1 = nl;
        }
    }

    #[test]
    fn verify_published_examples() {
        assert!(verify_golden(&GoldenQuadruple::new(rat(1, 3), rat(1, 3), 3, 1)));
        assert!(verify_golden(&GoldenQuadruple::new(rat(-1, 2), rat(3, 2), 5, 1)));
        assert!(!verify_golden(&GoldenQuadruple::new(rat(1, 3), rat(1, 3), 3, 2)));
    }

    #[test]
    fn sixteen_all_verify() {
        let table = sixteen_quadruples();
        assert_eq!(table.len(), 16);
        for q in &table {
            assert!(q.kappa.abs() >= q.ell.abs());
            assert_ne!(q.kappa + q.ell, 0);
            assert!(verify_golden(q), "{} fails", q);
        }
        assert!(table.contains(&GoldenQuadruple::new(rat(1, 5), rat(2, 5), 6, 2)));
        assert!(table.contains(&GoldenQuadruple::new(rat(1, 4), rat(3, 4), -5, 1)));
        // the phi-limit identity atan(1/phi) + atan(1/phi^3) = pi/4
        assert!(table.contains(&GoldenQuadruple::new(rat_int(1), rat_int(1), -3, -1)));
    }

    #[test]
    fn perturbed_quadruples_fail() {
        let mut seed = 0xfeed5eedu64;
        let table = sixteen_quadruples();
        let mut checked = 0;
        while checked < 40 {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            let q0 = &table[(seed % 16) as usize];
            let mut q = q0.clone();
            match (seed >> 8) % 4 {
                0 => q.a += rat_int(1),
                1 => q.b -= rat(1, 2),
                2 => q.kappa += 1,
                _ => q.ell = if q.ell == 1 { 2 } else { q.ell - 1 },
            }
            if q.kappa + q.ell == 0 || table.contains(&q) {
                continue;
            }
            assert!(!verify_golden(&q), "perturbed {} still verifies", q);
            checked += 1;
        }
    }

    #[test]
    fn search_results() {
        assert_eq!(golden_search(12), vec![(3, 1), (5, 1), (5, 3), (6, 2)]);
        assert_eq!(golden_search(3), vec![(3, 1)]);
        assert_eq!(golden_search(2), Vec::<(u32, u32)>::new());
    }

    #[test]
    fn search_pairs_have_table_entries() {
        let table = sixteen_quadruples();
        for (kappa, ell) in golden_search(12) {
            assert!(
                table
                    .iter()
                    .any(|q| q.kappa.unsigned_abs() as u32 == kappa
                        && q.ell.unsigned_abs() as u32 == ell),
                "no table entry for ({}, {})",
                kappa,
                ell
            );
        }
    }
}
