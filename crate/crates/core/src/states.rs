//! Exact two-qubit states: the sixty joint eigenstates of the commuting
//! triads, computed from projectors and checked against the reference
//! table.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{rank, GaussianInt, GaussianRational};
use crate::golden::EigenstateRow;
use crate::matrix::IntMat;
use crate::pauli::Triad;
use crate::Label;

/// An unnormalized state `a|00⟩ + b|01⟩ + c|10⟩ + d|11⟩`, regarded
/// projectively.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateVec {
    coords: [GaussianInt; 4],
}

impl StateVec {
    /// `None` for the zero vector.
    pub fn new(coords: [GaussianInt; 4]) -> Option<Self> {
        coords.iter().any(|c| !c.is_zero()).then_some(Self { coords })
    }

    /// Clears denominators, then canonicalizes.
    pub fn from_rational(coords: [GaussianRational; 4]) -> Option<Self> {
        let lcm = coords.iter().fold(1i64, |l, c| l / gcd(l, c.den) * c.den);
        let scaled = coords.map(|c| c.num * GaussianInt::from(lcm / c.den));
        Self::new(scaled).map(|s| s.canonical())
    }

    pub fn coords(&self) -> [GaussianInt; 4] {
        self.coords
    }

    /// Divides out the Gaussian-integer content and rotates by a unit so
    /// the first nonzero coordinate has `re > 0, im >= 0` (a positive
    /// integer whenever the projective class allows one).
    pub fn canonical(&self) -> StateVec {
        let content = self.coords.iter().fold(GaussianInt::ZERO, |g, &c| GaussianInt::gcd(g, c));
        let reduced = self.coords.map(|c| c.checked_div(content).expect("content divides every coordinate"));
        let lead = *reduced.iter().find(|c| !c.is_zero()).expect("nonzero state");
        let (_, unit) = lead.normalized();
        StateVec { coords: reduced.map(|c| c * unit) }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// Squared norm `⟨v|v⟩`.
    pub fn norm_sq(&self) -> i64 {
        self.coords.iter().map(|c| c.norm()).sum()
    }

    pub fn apply(&self, m: &IntMat) -> [GaussianInt; 4] {
        m.apply(&self.coords)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for StateVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coords;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl fmt::Debug for StateVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Σ conj(aᵢ)·bᵢ`.
pub fn inner_product(a: &StateVec, b: &StateVec) -> GaussianInt {
    a.coords
        .iter()
        .zip(&b.coords)
        .fold(GaussianInt::ZERO, |acc, (x, y)| acc + x.conj() * *y)
}

/// True iff every 2×2 minor of the stacked coordinates vanishes.
pub fn projective_equal(a: &StateVec, b: &StateVec) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| (a.coords[i] * b.coords[j] - a.coords[j] * b.coords[i]).is_zero()))
}

/// `|⟨a|b⟩|² / (‖a‖²‖b‖²)` as a reduced fraction `(num, den)`.
pub fn overlap_ratio(a: &StateVec, b: &StateVec) -> (i64, i64) {
    let num = inner_product(a, b).norm();
    let den = a.norm_sq() * b.norm_sq();
    let g = gcd(num, den).max(1);
    (num / g, den / g)
}

/// Eigenvalues of a joint eigenstate, one per triad member in canonical
/// member order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature(pub [i8; 3]);

impl Signature {
    pub fn product(&self) -> i8 {
        self.0.iter().product()
    }
}

/// The four joint eigenstates of a triad with their signatures, ordered by
/// the sign pattern `(ε₁, ε₂) = (+,+), (+,−), (−,+), (−,−)` on the first two
/// members.
pub fn eigenbasis(t: &Triad) -> Result<[(StateVec, Signature); 4]> {
    let [o1, o2, _] = t.members();
    let id = IntMat::identity();
    let patterns = [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)];
    let mut out = Vec::with_capacity(4);
    for (e1, e2) in patterns {
        let p1 = id + o1.matrix().scale(GaussianInt::from(e1 as i64));
        let p2 = id + o2.matrix().scale(GaussianInt::from(e2 as i64));
        let proj = p1 * p2;
        if rank(&proj.0) != 1 {
            return Err(Error::Consistency(format!("projector for {t} {e1:+}{e2:+} is not rank one")));
        }
        let col = (0..4)
            .map(|j| proj.column(j))
            .find_map(StateVec::new)
            .expect("rank-one projector has a nonzero column");
        let state = col.canonical();
        let sig = eigenvalue_signature(&state, t)?;
        debug_assert_eq!(sig.0[..2], [e1, e2]);
        out.push((state, sig));
    }
    Ok(out.try_into().expect("four sign patterns"))
}

/// Exact eigenvalue of `v` under each member of `t`.
pub fn eigenvalue_signature(v: &StateVec, t: &Triad) -> Result<Signature> {
    let mut signs = [0i8; 3];
    for (s, o) in signs.iter_mut().zip(t.members()) {
        let w = v.apply(&o.matrix());
        *s = if w == v.coords {
            1
        } else if w == v.coords.map(|c| -c) {
            -1
        } else {
            return Err(Error::NotAnEigenstate(t.to_string()));
        };
    }
    Ok(Signature(signs))
}

/// The sixty labeled eigenstates, grouped by triad.
#[derive(Clone, Debug)]
pub struct Catalog {
    rows: Vec<(Triad, [Label; 4])>,
    states: Vec<StateVec>,
    signatures: Vec<Signature>,
    orthogonal: Vec<u64>,
}

/// Computes every triad's eigenbasis in table row order and checks it
/// against the table: each table state must be in canonical form and equal
/// to exactly one computed state.
pub fn build_catalog(table: &[EigenstateRow]) -> Result<Catalog> {
    let mut rows = Vec::with_capacity(table.len());
    let mut states = Vec::with_capacity(4 * table.len());
    let mut signatures = Vec::with_capacity(4 * table.len());
    for (r, row) in table.iter().enumerate() {
        let [a, b, c] = row.observables;
        let triad = Triad::new(a, b, c)
            .ok_or_else(|| Error::Consistency(format!("table row {} is not a commuting triad", r + 1)))?;
        if triad.sign() != row.sign {
            return Err(Error::Consistency(format!("table row {} has sign {} but {triad} has {}", r + 1, row.sign, triad.sign())));
        }
        let computed = eigenbasis(&triad)?;
        let mut labels = [0; 4];
        for (k, coords) in row.states.iter().enumerate() {
            let label = (4 * r + k + 1) as Label;
            let listed = StateVec::new(*coords)
                .ok_or_else(|| Error::Consistency(format!("state {label} is zero")))?;
            if !listed.is_canonical() {
                return Err(Error::Consistency(format!("state {label} = {listed} is not in canonical form")));
            }
            let (state, sig) = computed
                .iter()
                .find(|(s, _)| projective_equal(s, &listed))
                .ok_or_else(|| Error::Consistency(format!("state {label} = {listed} is not an eigenstate of {triad}")))?;
            if *state != listed {
                return Err(Error::Consistency(format!("state {label}: computed {state}, listed {listed}")));
            }
            labels[k] = label;
            states.push(*state);
            signatures.push(*sig);
        }
        rows.push((triad, labels));
    }
    for (i, a) in states.iter().enumerate() {
        if let Some(j) = states[i + 1..].iter().position(|b| projective_equal(a, b)) {
            return Err(Error::Consistency(format!("states {} and {} coincide", i + 1, i + j + 2)));
        }
    }
    let orthogonal = states
        .iter()
        .map(|a| {
            states
                .iter()
                .enumerate()
                .filter(|(_, b)| inner_product(a, b).is_zero())
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();
    Ok(Catalog { rows, states, signatures, orthogonal })
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        (1..=self.states.len()).map(|l| l as Label)
    }

    pub fn state(&self, label: Label) -> &StateVec {
        &self.states[label as usize - 1]
    }

    /// Signature of `label` under its own row's triad.
    pub fn signature(&self, label: Label) -> Signature {
        self.signatures[label as usize - 1]
    }

    /// Triads in table row order with their state labels.
    pub fn rows(&self) -> &[(Triad, [Label; 4])] {
        &self.rows
    }

    pub fn basis_of(&self, t: &Triad) -> Option<[Label; 4]> {
        self.rows.iter().find(|(r, _)| r == t).map(|(_, l)| *l)
    }

    pub fn triad_of(&self, label: Label) -> Triad {
        self.rows[(label as usize - 1) / 4].0
    }

    pub fn orthogonal(&self, a: Label, b: Label) -> bool {
        self.orthogonal[a as usize - 1] >> (b - 1) & 1 == 1
    }

    /// Label of the catalog state projectively equal to `v`.
    pub fn find(&self, v: &StateVec) -> Option<Label> {
        let c = v.canonical();
        self.states.iter().position(|s| *s == c).map(|i| (i + 1) as Label)
    }
}
