//! Built-in verified corpus: the ten sporadic power-of-two solutions and the
//! two parametric families, a brute-force confirmation harness over the
//! published parameter ranges, the classical formulas, the Fibonacci family,
//! and the R_j-form restatements.

use crate::exact::{gauss_int_pow, gauss_int_ray, rat, rat_int, Rat};
use crate::formula::{verify, ArctanTerm, MachinFormula};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("family index must be 1 or 2")]
    UnknownFamily(u8),
    #[error("the second parametric family needs a >= 1 (z2 vanishes at a = 0)")]
    FamilyParameterZero,
    #[error("restatement index must be 1..=12")]
    RestatementIndex(usize),
}

/// A solution quadruple `(x1, z1, x2, z2)` of
/// `x1 atan(z1) + x2 atan(z2) = pi/4` with `z1 < z2` in (0, 1), both of the
/// form `2^a/b` or `b/2^a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PowerTwoSolution {
    pub x1: Rat,
    pub z1: Rat,
    pub x2: Rat,
    pub z2: Rat,
}

impl PowerTwoSolution {
    pub fn new(x1: Rat, z1: Rat, x2: Rat, z2: Rat) -> Self {
        PowerTwoSolution { x1, z1, x2, z2 }
    }

    pub fn to_formula(&self) -> MachinFormula {
        MachinFormula::two_term(
            self.x1.clone(),
            self.z1.clone(),
            self.x2.clone(),
            self.z2.clone(),
            rat(1, 4),
        )
    }
}

impl std::fmt::Display for PowerTwoSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.x1, self.z1, self.x2, self.z2)
    }
}

/// The ten sporadic solutions, in the published order.
pub fn sporadic_solutions() -> Vec<PowerTwoSolution> {
    let q = |a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)| {
        PowerTwoSolution::new(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1), rat(d.0, d.1))
    };
    vec![
        q((-1, 1), (1, 239), (4, 1), (1, 5)),
        q((-1, 1), (1, 7), (2, 1), (1, 2)),
        q((-1, 1), (2, 11), (3, 2), (3, 4)),
        q((-1, 1), (2, 11), (3, 1), (1, 3)),
        q((1, 3), (1, 239), (4, 3), (2, 3)),
        q((1, 2), (2, 11), (3, 2), (1, 2)),
        q((1, 1), (1, 41), (2, 1), (2, 5)),
        q((1, 1), (1, 7), (2, 1), (1, 3)),
        q((1, 1), (1, 2), (1, 2), (3, 4)),
        q((3, 1), (1, 7), (2, 1), (2, 11)),
    ]
}

/// Member of one of the two parametric families:
/// family 1 is `(1, 1/(2^(a+1)+1), 1, 2^a/(2^a+1))` (a = 0 allowed, giving
/// the member shared with family 2); family 2 is
/// `(1, 1/(2^(a+1)-1), 1, (2^a-1)/2^a)` for a >= 1.
pub fn parametric_family(which: u8, a: u32) -> Result<PowerTwoSolution, CatalogError> {
    let two_a = BigInt::one() << a;
    let two_a1 = BigInt::one() << (a + 1);
    match which {
        1 => Ok(PowerTwoSolution::new(
            Rat::one(),
            Rat::new(BigInt::one(), &two_a1 + 1),
            Rat::one(),
            Rat::new(two_a.clone(), &two_a + 1),
        )),
        2 => {
            if a == 0 {
                return Err(CatalogError::FamilyParameterZero);
            }
            Ok(PowerTwoSolution::new(
                Rat::one(),
                Rat::new(BigInt::one(), &two_a1 - 1),
                Rat::one(),
                Rat::new(&two_a - 1, two_a.clone()),
            ))
        }
        other => Err(CatalogError::UnknownFamily(other)),
    }
}

fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & &(n - 1)).is_zero()
}

/// Does the quadruple belong to one of the two parametric families?
fn is_family_member(s: &PowerTwoSolution) -> bool {
    if !s.x1.is_one() || !s.x2.is_one() || !s.z1.numer().is_one() {
        return false;
    }
    let m = s.z1.denom();
    // family 1: z1 denominator is 2^(a+1) + 1
    let down = m - 1;
    if is_power_of_two(&down) && down.bits() >= 2 {
        let a = (down.bits() - 2) as u32;
        if parametric_family(1, a).map(|f| f.z2 == s.z2).unwrap_or(false) {
            return true;
        }
    }
    // family 2: z1 denominator is 2^(a+1) - 1
    let up = m + 1;
    if is_power_of_two(&up) && up.bits() >= 3 {
        let a = (up.bits() - 2) as u32;
        if parametric_family(2, a).map(|f| f.z2 == s.z2).unwrap_or(false) {
            return true;
        }
    }
    false
}

/// The admissible argument values over the published ground set:
/// `2^a/b` and `b/2^a` with `a` in {0,1,2}, `b` in the listed set, value in
/// (0,1), and `b` odd unless `a = 0`.
fn admissible_args() -> BTreeSet<Rat> {
    let bs = [1i64, 2, 3, 5, 7, 11, 41, 239];
    let mut out = BTreeSet::new();
    for a in 0..=2u32 {
        let p = 1i64 << a;
        for &b in &bs {
            if a > 0 && b % 2 == 0 {
                continue;
            }
            for z in [rat(p, b), rat(b, p)] {
                if z > Rat::zero() && z < Rat::one() {
                    out.insert(z);
                }
            }
        }
    }
    out
}

/// Exhaustive confirmation of the two-term power-of-two classification:
/// enumerate `u1 atan(z1) + u2 atan(z2) = (c/d) pi` over the published
/// ranges (|u_k| <= 4 coprime, d in {1,2,3,4,6}, 0 < |c| <= 24, arguments
/// over the admissible shapes with z1 < z2), verify every candidate with
/// the exact two-stage verifier, normalize hits to the `pi/4` convention,
/// and drop parametric-family members. The result is exactly the ten
/// sporadic solutions.
pub fn brute_force_theorem1() -> Vec<PowerTwoSolution> {
    let args: Vec<Rat> = admissible_args().into_iter().collect();

    let mut u_pairs = Vec::new();
    for u1 in 1i64..=4 {
        for mag in 1i64..=4 {
            if u1.gcd(&mag) != 1 {
                continue;
            }
            u_pairs.push((u1, mag));
            u_pairs.push((u1, -mag));
        }
    }

    let mut rhs_set = BTreeSet::new();
    for d in [1i64, 2, 3, 4, 6] {
        for c in 1..=24i64 {
            rhs_set.insert(rat(c, d));
            rhs_set.insert(rat(-c, d));
        }
    }

    let eight = BigInt::from(8);
    let mut found = BTreeSet::new();
    for (i, z1) in args.iter().enumerate() {
        for z2 in args.iter().skip(i + 1) {
            for &(u1, u2) in &u_pairs {
                // Gaussian ray of the product at scaling T: negative
                // exponents contribute conjugates; the positive rational
                // denominators they leave cannot move the ray.
                let ray_at = |t: u64| -> Option<u8> {
                    let im1 = if u1 < 0 { -z1.numer() } else { z1.numer().clone() };
                    let (r1, i1) = gauss_int_pow(z1.denom(), &im1, t * u1.unsigned_abs());
                    let im2 = if u2 < 0 { -z2.numer() } else { z2.numer().clone() };
                    let (r2, i2) = gauss_int_pow(z2.denom(), &im2, t * u2.unsigned_abs());
                    gauss_int_ray(&(&r1 * &r2 - &i1 * &i2), &(&r1 * &i2 + &i1 * &r2))
                };
                let ray1 = ray_at(1);
                let ray3 = ray_at(3);

                for rhs in &rhs_set {
                    let four_rhs = rhs * rat_int(4);
                    let t = if four_rhs.denom().is_one() { 1i64 } else { 3 };
                    let ray = if t == 1 { ray1 } else { ray3 };
                    let Some(r) = ray else { continue };
                    let e_int = (four_rhs * rat_int(t)).to_integer();
                    let e = ((&e_int % &eight + &eight) % &eight).to_u8().unwrap();
                    if r != e {
                        continue;
                    }
                    // stage 1 passed: run the full verifier
                    let f = MachinFormula::two_term(
                        rat_int(u1),
                        z1.clone(),
                        rat_int(u2),
                        z2.clone(),
                        rhs.clone(),
                    );
                    if verify(&f).valid() {
                        let scale = (rhs * rat_int(4)).recip();
                        found.insert(PowerTwoSolution::new(
                            rat_int(u1) * &scale,
                            z1.clone(),
                            rat_int(u2) * &scale,
                            z2.clone(),
                        ));
                    }
                }
            }
        }
    }

    found
        .into_iter()
        .filter(|s| !is_family_member(s))
        .collect()
}

/// `atan(F_n/F_(n+1)) + atan(F_(n-1)/F_(n+2)) = pi/4`.
pub fn fibonacci_formula(n: u32) -> MachinFormula {
    assert!(n >= 1);
    let mut fibs = vec![BigInt::zero(), BigInt::one()];
    for i in 2..=(n as usize + 2) {
        let next = &fibs[i - 1] + &fibs[i - 2];
        fibs.push(next);
    }
    let t1 = Rat::new(fibs[n as usize].clone(), fibs[n as usize + 1].clone());
    let t2 = Rat::new(fibs[n as usize - 1].clone(), fibs[n as usize + 2].clone());
    MachinFormula::new(
        vec![
            ArctanTerm::new(Rat::one(), t1),
            ArctanTerm::new(Rat::one(), t2),
        ],
        rat(1, 4),
    )
}

/// The R_j-form restatements of the ten sporadic solutions (indices 1..=10,
/// in theorem order) and the two parametric families (11 and 12, using the
/// parameter `a`). Feeding the returned `(weights, x)` to `theorem2_eval`
/// reproduces the corresponding formula with rhs 1/4.
pub fn rj_restatement(index: usize, a: u32) -> Result<(Vec<(Rat, u8, u32)>, Rat), CatalogError> {
    let spec = |list: &[(i64, i64, u8, u32)], x: Rat| {
        let weights = list
            .iter()
            .map(|&(rn, rd, j, n)| (rat(rn, rd), j, n))
            .collect::<Vec<_>>();
        Ok((weights, x))
    };
    match index {
        1 => spec(&[(4, 1, 0, 1), (-4, 1, 3, 4)], rat(1, 5)),
        2 => spec(&[(2, 1, 0, 1), (-2, 1, 3, 2)], rat(1, 2)),
        3 => spec(&[(-3, 1, 0, 2), (3, 1, 3, 3)], rat_int(3)),
        4 => spec(&[(-3, 1, 0, 3), (3, 1, 3, 1)], rat_int(2)),
        5 => spec(&[(4, 3, 0, 1), (-4, 3, 1, 4)], rat(2, 3)),
        6 => spec(&[(3, 2, 0, 3), (-3, 2, 2, 1)], rat_int(2)),
        7 => spec(&[(2, 1, 0, 1), (-2, 1, 3, 2)], rat(2, 5)),
        8 => spec(&[(2, 1, 0, 1), (-2, 1, 3, 2)], rat(1, 3)),
        9 => spec(&[(-1, 1, 0, 2), (1, 1, 3, 1)], rat_int(3)),
        10 => spec(&[(6, 1, 0, 3), (-6, 1, 1, 2)], rat_int(2)),
        11 => {
            let x = Rat::new(BigInt::one(), (BigInt::one() << (a + 1)) + 1);
            spec(&[(1, 1, 0, 1), (-1, 1, 3, 1)], x)
        }
        12 => {
            let x = Rat::new(BigInt::one(), (BigInt::one() << (a + 1)) - 1);
            spec(&[(1, 1, 0, 1), (-1, 1, 3, 1)], x)
        }
        other => Err(CatalogError::RestatementIndex(other)),
    }
}

/// Machin's formula `4 atan(1/5) - atan(1/239) = pi/4`.
pub fn machin() -> MachinFormula {
    MachinFormula::two_term(rat_int(4), rat(1, 5), rat_int(-1), rat(1, 239), rat(1, 4))
}

/// Euler's formula `atan(1/2) + atan(1/3) = pi/4`.
pub fn euler() -> MachinFormula {
    MachinFormula::two_term(Rat::one(), rat(1, 2), Rat::one(), rat(1, 3), rat(1, 4))
}

/// Hermann's formula `2 atan(1/2) - atan(1/7) = pi/4`.
pub fn hermann() -> MachinFormula {
    MachinFormula::two_term(rat_int(2), rat(1, 2), rat_int(-1), rat(1, 7), rat(1, 4))
}

/// Hutton's formula `2 atan(1/3) + atan(1/7) = pi/4`.
pub fn hutton() -> MachinFormula {
    MachinFormula::two_term(rat_int(2), rat(1, 3), Rat::one(), rat(1, 7), rat(1, 4))
}

/// `5 atan(1/7) + 2 atan(3/79) = pi/4`.
pub fn five_seven() -> MachinFormula {
    MachinFormula::two_term(rat_int(5), rat(1, 7), rat_int(2), rat(3, 79), rat(1, 4))
}

/// `22 atan(24478/873121) + 17 atan(685601/69049993) = pi/4`.
pub fn twenty_two_seventeen() -> MachinFormula {
    MachinFormula::two_term(
        rat_int(22),
        rat(24_478, 873_121),
        rat_int(17),
        rat(685_601, 69_049_993),
        rat(1, 4),
    )
}

/// `22 atan(1/28) + atan(a/b) = pi/4` with the 28/32-digit fraction.
pub fn twenty_two_28() -> MachinFormula {
    let num: BigInt = "1744507482180328366854565127".parse().unwrap();
    let den: BigInt = "98646395734210062276153190241239".parse().unwrap();
    MachinFormula::two_term(
        rat_int(22),
        rat(1, 28),
        Rat::one(),
        Rat::new(num, den),
        rat(1, 4),
    )
}

/// The named corpus used by the CLI and the test suites.
pub fn corpus() -> Vec<(&'static str, MachinFormula)> {
    let mut list = vec![
        ("machin", machin()),
        ("euler", euler()),
        ("hermann", hermann()),
        ("hutton", hutton()),
        ("five-seven", five_seven()),
        ("twenty-two-seventeen", twenty_two_seventeen()),
        ("twenty-two-28", twenty_two_28()),
    ];
    for s in sporadic_solutions() {
        list.push(("sporadic", s.to_formula()));
    }
    for a in 1..=4u32 {
        list.push(("family-1", parametric_family(1, a).unwrap().to_formula()));
        list.push(("family-2", parametric_family(2, a).unwrap().to_formula()));
    }
    for n in 1..=8u32 {
        list.push(("fibonacci", fibonacci_formula(n)));
    }
    list
}
