//! Exact arithmetic over the Gaussian integers `Z[i]` and the Gaussian
//! rationals `Q(i)`.
//!
//! Every state, projector and unitary handled by this crate lives in one of
//! these two rings, so no floating point ever enters a comparison.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A Gaussian integer `re + im·i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl From<[i64; 2]> for GaussianInt {
    fn from([re, im]: [i64; 2]) -> Self {
        Self { re, im }
    }
}

impl From<GaussianInt> for [i64; 2] {
    fn from(z: GaussianInt) -> Self {
        [z.re, z.im]
    }
}

impl From<i64> for GaussianInt {
    fn from(re: i64) -> Self {
        Self { re, im: 0 }
    }
}

impl GaussianInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const I: Self = Self::new(0, 1);

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// Squared modulus `re² + im²`.
    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    /// The four units `1, i, -1, -i`, in that order.
    pub fn units() -> [Self; 4] {
        [Self::ONE, Self::I, -Self::ONE, -Self::I]
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// Division that is exact or nothing.
    pub fn checked_div(self, rhs: Self) -> Option<Self> {
        let n = rhs.norm();
        if n == 0 {
            return None;
        }
        let p = self * rhs.conj();
        if p.re % n != 0 || p.im % n != 0 {
            return None;
        }
        Some(Self::new(p.re / n, p.im / n))
    }

    /// Euclidean division with the quotient rounded to the nearest lattice
    /// point, so the remainder has norm at most half that of `rhs`.
    fn div_rem(self, rhs: Self) -> (Self, Self) {
        let n = rhs.norm();
        let p = self * rhs.conj();
        let q = Self::new(round_div(p.re, n), round_div(p.im, n));
        (q, self - q * rhs)
    }

    /// Greatest common divisor, normalized by [`GaussianInt::normalized`].
    pub fn gcd(a: Self, b: Self) -> Self {
        let (mut a, mut b) = (a, b);
        while !b.is_zero() {
            let (_, r) = a.div_rem(b);
            a = b;
            b = r;
        }
        a.normalized().0
    }

    /// The associate of `self` lying in the quadrant `re > 0, im >= 0`,
    /// together with the unit `u` such that `self * u` is that associate.
    /// Zero maps to itself with unit one.
    pub fn normalized(self) -> (Self, Self) {
        if self.is_zero() {
            return (self, Self::ONE);
        }
        Self::units()
            .into_iter()
            .map(|u| (self * u, u))
            .find(|(z, _)| z.re > 0 && z.im >= 0)
            .expect("every nonzero Gaussian integer has a first-quadrant associate")
    }
}

fn round_div(a: i64, n: i64) -> i64 {
    // n > 0; nearest integer to a / n
    (2 * a + n).div_euclid(2 * n)
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, 1) => write!(f, "{re}+i"),
            (re, -1) => write!(f, "{re}-i"),
            (re, im) if im > 0 => write!(f, "{re}+{im}i"),
            (re, im) => write!(f, "{re}{im}i"),
        }
    }
}

/// A Gaussian rational `num / den` with `den > 0` and the fraction reduced
/// over the rational integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub num: GaussianInt,
    pub den: i64,
}

fn igcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl GaussianRational {
    pub const ZERO: Self = Self { num: GaussianInt::ZERO, den: 1 };
    pub const ONE: Self = Self { num: GaussianInt::ONE, den: 1 };

    pub fn new(num: GaussianInt, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = igcd(igcd(num.re, num.im), den);
        let s = if den < 0 { -g } else { g };
        Self {
            num: GaussianInt::new(num.re / s, num.im / s),
            den: den / s,
        }
    }

    pub fn is_zero(self) -> bool {
        self.num.is_zero()
    }

    pub fn conj(self) -> Self {
        Self { num: self.num.conj(), den: self.den }
    }
}

impl From<GaussianInt> for GaussianRational {
    fn from(num: GaussianInt) -> Self {
        Self { num, den: 1 }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let den = self.den / igcd(self.den, rhs.den) * rhs.den;
        let a = self.num * GaussianInt::from(den / self.den);
        let b = rhs.num * GaussianInt::from(den / rhs.den);
        Self::new(a + b, den)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { num: -self.num, den: self.den }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.num * rhs.num, self.den * rhs.den)
    }
}

/// Rank of a matrix over `Z[i]` by fraction-free (Bareiss) elimination.
///
/// Every intermediate division is exact, so the result is exact for any
/// input whose entries stay within `i64`.
pub fn rank<const C: usize>(rows: &[[GaussianInt; C]]) -> usize {
    let mut m: Vec<[GaussianInt; C]> = rows.to_vec();
    let nrows = m.len();
    let mut rank = 0;
    let mut prev = GaussianInt::ONE;
    for col in 0..C {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col];
        for r in rank + 1..nrows {
            let f = m[r][col];
            for c in 0..C {
                let v = p * m[r][c] - f * m[rank][c];
                m[r][c] = v
                    .checked_div(prev)
                    .expect("Bareiss elimination divides exactly");
            }
        }
        prev = p;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn ring_basics() {
        assert_eq!(GaussianInt::I * GaussianInt::I, -GaussianInt::ONE);
        assert_eq!(g(1, 1) * g(1, -1), g(2, 0));
        assert_eq!(g(1, 1).norm(), 2);
        assert_eq!(g(2, 0).checked_div(g(1, 1)), Some(g(1, -1)));
        assert_eq!(g(1, 0).checked_div(g(1, 1)), None);
    }

    #[test]
    fn gcd_is_normalized() {
        assert_eq!(GaussianInt::gcd(g(2, 0), g(1, 1)), g(1, 1));
        assert_eq!(GaussianInt::gcd(g(0, 3), g(0, -6)), g(3, 0));
        assert_eq!(GaussianInt::gcd(g(0, 0), g(0, -1)), g(1, 0));
        assert_eq!(GaussianInt::gcd(g(3, 0), g(2, 0)), g(1, 0));
    }

    #[test]
    fn rank_small_cases() {
        let z = GaussianInt::ZERO;
        let o = GaussianInt::ONE;
        assert_eq!(rank(&[[o, z, z, z], [o, o, o, o], [o, -o, -o, -o]]), 2);
        assert_eq!(rank(&[[o, z, z, z], [z, o, z, z], [z, z, o, z]]), 3);
        assert_eq!(rank::<4>(&[[z, z, z, z]]), 0);
        let i = GaussianInt::I;
        assert_eq!(rank(&[[o, i, z, z], [-i, o, z, z]]), 1);
    }

    #[test]
    fn rational_reduces() {
        let half = GaussianRational::new(g(1, 1), 2);
        let p = half * half;
        assert_eq!(p, GaussianRational::new(g(0, 1), 2));
        assert_eq!(half + half, GaussianRational::from(g(1, 1)));
        assert_eq!(GaussianRational::new(g(2, -4), -6), GaussianRational::new(g(-1, 2), 3));
    }

    proptest! {
        #[test]
        fn euclid_remainder_shrinks(a in (-50i64..50, -50i64..50), b in (-50i64..50, -50i64..50)) {
            let (a, b) = (g(a.0, a.1), g(b.0, b.1));
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(b);
            prop_assert_eq!(q * b + r, a);
            prop_assert!(2 * r.norm() <= b.norm());
        }

        #[test]
        fn gcd_divides_both(a in (-30i64..30, -30i64..30), b in (-30i64..30, -30i64..30)) {
            let (a, b) = (g(a.0, a.1), g(b.0, b.1));
            prop_assume!(!a.is_zero() || !b.is_zero());
            let d = GaussianInt::gcd(a, b);
            prop_assert!(a.checked_div(d).is_some());
            prop_assert!(b.checked_div(d).is_some());
        }
    }
}
