//! Dense 4×4 matrices over an exact scalar ring.

use std::ops::{Add, Mul, Neg, Sub};

use crate::gaussian::{GaussianInt, GaussianRational};

pub trait Scalar:
    Copy + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    const ZERO: Self;
    const ONE: Self;
    fn conj(self) -> Self;
}

impl Scalar for GaussianInt {
    const ZERO: Self = GaussianInt::ZERO;
    const ONE: Self = GaussianInt::ONE;
    fn conj(self) -> Self {
        GaussianInt::conj(self)
    }
}

impl Scalar for GaussianRational {
    const ZERO: Self = GaussianRational::ZERO;
    const ONE: Self = GaussianRational::ONE;
    fn conj(self) -> Self {
        GaussianRational::conj(self)
    }
}

/// Row-major 4×4 matrix. Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with the
/// first qubit as the high bit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4<T>(pub [[T; 4]; 4]);

pub type IntMat = Mat4<GaussianInt>;
pub type RatMat = Mat4<GaussianRational>;

impl<T: Scalar> Mat4<T> {
    pub fn zero() -> Self {
        Self([[T::ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = T::ONE;
        }
        m
    }

    /// Kronecker product of two 2×2 blocks, `a` on the first qubit.
    pub fn kron(a: [[T; 2]; 2], b: [[T; 2]; 2]) -> Self {
        let mut m = Self::zero();
        for (i, j, k, l) in (0..2)
            .flat_map(|i| (0..2).flat_map(move |j| (0..2).flat_map(move |k| (0..2).map(move |l| (i, j, k, l)))))
        {
            m.0[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: T) -> Self {
        Self(self.0.map(|row| row.map(|x| s * x)))
    }

    pub fn apply(&self, v: &[T; 4]) -> [T; 4] {
        std::array::from_fn(|i| (0..4).fold(T::ZERO, |acc, j| acc + self.0[i][j] * v[j]))
    }

    pub fn column(&self, j: usize) -> [T; 4] {
        std::array::from_fn(|i| self.0[i][j])
    }
}

impl<T: Scalar> Mul for Mat4<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = (0..4).fold(T::ZERO, |acc, k| acc + self.0[i][k] * rhs.0[k][j]);
            }
        }
        m
    }
}

impl<T: Scalar> Add for Mat4<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        m
    }
}

impl<T: Scalar> Neg for Mat4<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|row| row.map(|x| -x)))
    }
}

impl From<IntMat> for RatMat {
    fn from(m: IntMat) -> Self {
        Mat4(m.0.map(|row| row.map(GaussianRational::from)))
    }
}
