//! The fifteen two-qubit Pauli observables modulo phase.
//!
//! An [`Observable`] is a nonzero vector `(x₁, z₁, x₂, z₂)` over GF(2); two
//! observables commute exactly when their symplectic product vanishes.
//! Phases only appear through [`multiply`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::matrix::IntMat;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const PAULIS: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    /// Symplectic bits `(x, z)`.
    pub fn bits(self) -> (u8, u8) {
        match self {
            Letter::I => (0, 0),
            Letter::X => (1, 0),
            Letter::Y => (1, 1),
            Letter::Z => (0, 1),
        }
    }

    pub fn from_bits(x: u8, z: u8) -> Self {
        match (x & 1, z & 1) {
            (0, 0) => Letter::I,
            (1, 0) => Letter::X,
            (1, 1) => Letter::Y,
            _ => Letter::Z,
        }
    }

    /// Sort rank: `I < Z < X < Y`, the order in which the eigenstate table
    /// introduces the axes.
    fn rank(self) -> u8 {
        match self {
            Letter::I => 0,
            Letter::Z => 1,
            Letter::X => 2,
            Letter::Y => 3,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }

    /// Hermitian 2×2 Pauli matrix.
    pub fn matrix(self) -> [[GaussianInt; 2]; 2] {
        let (z, o, i) = (GaussianInt::ZERO, GaussianInt::ONE, GaussianInt::I);
        match self {
            Letter::I => [[o, z], [z, o]],
            Letter::X => [[z, o], [o, z]],
            Letter::Y => [[z, -i], [i, z]],
            Letter::Z => [[o, z], [z, -o]],
        }
    }

    /// `self · rhs = phase · letter` for single-qubit Paulis.
    fn product(self, rhs: Letter) -> (Letter, Phase) {
        use Letter::*;
        match (self, rhs) {
            (I, p) | (p, I) => (p, Phase::One),
            (a, b) if a == b => (I, Phase::One),
            (X, Y) => (Z, Phase::PlusI),
            (Y, Z) => (X, Phase::PlusI),
            (Z, X) => (Y, Phase::PlusI),
            (Y, X) => (Z, Phase::MinusI),
            (Z, Y) => (X, Phase::MinusI),
            (X, Z) => (Y, Phase::MinusI),
            _ => unreachable!(),
        }
    }
}

/// A power of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    fn exponent(self) -> u8 {
        match self {
            Phase::One => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    fn from_exponent(e: u8) -> Self {
        match e % 4 {
            0 => Phase::One,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn as_gaussian(self) -> GaussianInt {
        GaussianInt::units()[self.exponent() as usize]
    }

    /// `Some(±1)` for real phases.
    pub fn as_sign(self) -> Option<i8> {
        match self {
            Phase::One => Some(1),
            Phase::MinusOne => Some(-1),
            _ => None,
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_exponent(self.exponent() + rhs.exponent())
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::One => "+1",
            Phase::PlusI => "+i",
            Phase::MinusOne => "-1",
            Phase::MinusI => "-i",
        })
    }
}

/// A two-qubit Pauli product modulo phase, never the identity.
///
/// Bits are packed as `x₁ z₁ x₂ z₂` from most to least significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Observable(u8);

impl Observable {
    /// Packed symplectic vector; `None` for zero (the identity) or values
    /// above 15.
    pub fn from_bits(bits: u8) -> Option<Self> {
        (1..16).contains(&bits).then_some(Self(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn from_letters(first: Letter, second: Letter) -> Option<Self> {
        let (x1, z1) = first.bits();
        let (x2, z2) = second.bits();
        Self::from_bits(x1 << 3 | z1 << 2 | x2 << 1 | z2)
    }

    pub fn letters(self) -> (Letter, Letter) {
        let b = self.0;
        (Letter::from_bits(b >> 3, b >> 2), Letter::from_bits(b >> 1, b))
    }

    /// All fifteen observables in canonical order.
    pub fn all() -> Vec<Observable> {
        let mut v: Vec<_> = (1..16).map(Observable).collect();
        v.sort();
        v
    }

    /// Symplectic inner product `x₁z₁′ + z₁x₁′ + x₂z₂′ + z₂x₂′ (mod 2)`.
    pub fn symplectic_product(self, other: Observable) -> u8 {
        symplectic_form(self.0, other.0)
    }

    /// Hermitian 4×4 matrix of the observable.
    pub fn matrix(self) -> IntMat {
        let (a, b) = self.letters();
        IntMat::kron(a.matrix(), b.matrix())
    }

    /// Number of qubits acted on nontrivially.
    pub fn weight(self) -> usize {
        let (a, b) = self.letters();
        usize::from(a != Letter::I) + usize::from(b != Letter::I)
    }
}

/// Symplectic form on packed 4-bit vectors.
pub(crate) fn symplectic_form(a: u8, b: u8) -> u8 {
    let swapped = (b & 0b1010) >> 1 | (b & 0b0101) << 1;
    ((a & swapped).count_ones() % 2) as u8
}

impl Ord for Observable {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |o: &Observable| {
            let (a, b) = o.letters();
            (a.rank(), b.rank())
        };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Observable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.letters();
        write!(f, "{}{}", a.as_char(), b.as_char())
    }
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ParseObservable(s.to_string());
        let mut chars = s.chars();
        let (Some(a), Some(b), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(err());
        };
        let a = Letter::from_char(a).ok_or_else(err)?;
        let b = Letter::from_char(b).ok_or_else(err)?;
        Observable::from_letters(a, b).ok_or_else(err)
    }
}

impl TryFrom<String> for Observable {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Observable> for String {
    fn from(o: Observable) -> String {
        o.to_string()
    }
}

pub fn commutes(a: Observable, b: Observable) -> bool {
    a.symplectic_product(b) == 0
}

/// Operator product `a · b = phase · result`; `result` is `None` when the
/// product is the identity (that is, when `a == b`).
pub fn multiply(a: Observable, b: Observable) -> (Option<Observable>, Phase) {
    let (a1, a2) = a.letters();
    let (b1, b2) = b.letters();
    let (c1, p1) = a1.product(b1);
    let (c2, p2) = a2.product(b2);
    (Observable::from_letters(c1, c2), p1 * p2)
}

/// Three mutually commuting observables together with the sign `s` of their
/// product `O₁O₂O₃ = s·I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triad {
    members: [Observable; 3],
    sign: i8,
}

impl Triad {
    /// Builds a triad from three distinct pairwise-commuting observables
    /// whose product is `±I`.
    pub fn new(a: Observable, b: Observable, c: Observable) -> Option<Triad> {
        let mut members = [a, b, c];
        members.sort();
        if members[0] == members[1] || members[1] == members[2] {
            return None;
        }
        if !(commutes(a, b) && commutes(b, c) && commutes(a, c)) {
            return None;
        }
        let (ab, phase) = multiply(members[0], members[1]);
        if ab != Some(members[2]) {
            return None;
        }
        // O₃² = I, so O₁O₂O₃ = phase · I.
        let sign = phase.as_sign()?;
        Some(Triad { members, sign })
    }

    /// Members in canonical observable order.
    pub fn members(&self) -> [Observable; 3] {
        self.members
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn contains(&self, o: Observable) -> bool {
        self.members.contains(&o)
    }
}

impl fmt::Display for Triad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.members;
        write!(f, "{{{a},{b},{c}}}")
    }
}

impl FromStr for Triad {
    type Err = Error;

    /// Parses three whitespace- or comma-separated observables.
    fn from_str(s: &str) -> Result<Self> {
        let obs: Vec<Observable> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        match obs[..] {
            [a, b, c] => Triad::new(a, b, c)
                .ok_or_else(|| Error::Consistency(format!("{s:?} is not a commuting triad"))),
            _ => Err(Error::ParseObservable(s.to_string())),
        }
    }
}

/// All maximal mutually commuting subsets of the fifteen observables, in
/// canonical order.
pub fn enumerate_triads() -> Vec<Triad> {
    let all = Observable::all();
    let mut out = Vec::new();
    for (i, &a) in all.iter().enumerate() {
        for (j, &b) in all.iter().enumerate().skip(i + 1) {
            if !commutes(a, b) {
                continue;
            }
            for &c in &all[j + 1..] {
                if let Some(t) = Triad::new(a, b, c) {
                    out.push(t);
                }
            }
        }
    }
    out.sort();
    out
}
