//! Symmetries relating the ten squares.
//!
//! At the observable level every symmetry is a 4×4 GF(2) matrix preserving
//! the symplectic form; there are 720 of them and the 36 block-diagonal
//! ones are the local (per-qubit) relabelings. Each one lifts to an exact
//! two-qubit Clifford unitary, found here by breadth-first search over
//! products of Hadamard, phase and CNOT gates.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, GaussianRational};
use crate::geometry::Tetrad;
use crate::hexagon::{MagicSquare, SquareId};
use crate::matrix::{Mat4, RatMat};
use crate::pauli::{symplectic_form, Letter, Observable};
use crate::states::{Catalog, StateVec};
use crate::Label;

/// A linear map on packed `x₁ z₁ x₂ z₂` vectors; `rows[i]` holds row `i`
/// with column 0 in the most significant of the four bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticMap {
    rows: [u8; 4],
}

impl SymplecticMap {
    pub const IDENTITY: SymplecticMap = SymplecticMap { rows: [0b1000, 0b0100, 0b0010, 0b0001] };

    pub fn from_rows(rows: [u8; 4]) -> Self {
        SymplecticMap { rows: rows.map(|r| r & 0xf) }
    }

    /// Matrix whose column `j` is `images[j]`.
    fn from_columns(images: [u8; 4]) -> Self {
        let mut rows = [0u8; 4];
        for (j, img) in images.iter().enumerate() {
            for (i, row) in rows.iter_mut().enumerate() {
                *row |= (img >> (3 - i) & 1) << (3 - j);
            }
        }
        SymplecticMap { rows }
    }

    pub fn rows(&self) -> [[u8; 4]; 4] {
        self.rows.map(|r| std::array::from_fn(|j| r >> (3 - j) & 1))
    }

    pub fn apply_bits(&self, v: u8) -> u8 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |out, (i, r)| out | (((r & v).count_ones() % 2) as u8) << (3 - i))
    }

    /// `None` only if the map is singular.
    pub fn apply(&self, o: Observable) -> Option<Observable> {
        Observable::from_bits(self.apply_bits(o.bits()))
    }

    pub fn is_invertible(&self) -> bool {
        (1..16).all(|v| self.apply_bits(v) != 0)
    }

    pub fn preserves_form(&self) -> bool {
        let basis = [8u8, 4, 2, 1];
        basis.iter().all(|&a| {
            basis
                .iter()
                .all(|&b| symplectic_form(self.apply_bits(a), self.apply_bits(b)) == symplectic_form(a, b))
        })
    }

    /// Block-diagonal: each qubit's coordinates map into themselves.
    pub fn is_local(&self) -> bool {
        self.rows[0] & 0b0011 == 0 && self.rows[1] & 0b0011 == 0 && self.rows[2] & 0b1100 == 0 && self.rows[3] & 0b1100 == 0
    }

    pub fn compose(&self, inner: &SymplecticMap) -> SymplecticMap {
        SymplecticMap::from_columns([8u8, 4, 2, 1].map(|e| self.apply_bits(inner.apply_bits(e))))
    }
}

impl fmt::Display for SymplecticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(|r| r.iter().map(|b| b.to_string()).collect()).collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl fmt::Debug for SymplecticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymplecticMap({self})")
    }
}

impl Serialize for SymplecticMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// Every invertible form-preserving map, in ascending matrix order.
pub fn enumerate_symplectic() -> Vec<SymplecticMap> {
    (0u32..1 << 16)
        .map(|m| SymplecticMap::from_rows([(m >> 12) as u8, (m >> 8) as u8, (m >> 4) as u8, m as u8]))
        .filter(|m| m.is_invertible() && m.preserves_form())
        .collect()
}

/// Independent letter permutations on the two qubits, stored as the images
/// of `X, Y, Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalMap {
    pub first: [Letter; 3],
    pub second: [Letter; 3],
}

const XYZ_PERMUTATIONS: [[Letter; 3]; 6] = {
    use Letter::*;
    [[X, Y, Z], [X, Z, Y], [Y, X, Z], [Y, Z, X], [Z, X, Y], [Z, Y, X]]
};

fn image(perm: &[Letter; 3], l: Letter) -> Letter {
    match l {
        Letter::I => Letter::I,
        Letter::X => perm[0],
        Letter::Y => perm[1],
        Letter::Z => perm[2],
    }
}

impl LocalMap {
    pub const IDENTITY: LocalMap = LocalMap { first: XYZ_PERMUTATIONS[0], second: XYZ_PERMUTATIONS[0] };

    /// All 36 local maps.
    pub fn all() -> Vec<LocalMap> {
        XYZ_PERMUTATIONS
            .iter()
            .flat_map(|&first| XYZ_PERMUTATIONS.iter().map(move |&second| LocalMap { first, second }))
            .collect()
    }

    pub fn apply(&self, o: Observable) -> Observable {
        let (a, b) = o.letters();
        Observable::from_letters(image(&self.first, a), image(&self.second, b)).expect("nonidentity image")
    }

    pub fn to_symplectic(&self) -> SymplecticMap {
        let bits = |o: &str| self.apply(o.parse().expect("basis observable")).bits();
        SymplecticMap::from_columns([bits("XI"), bits("ZI"), bits("IX"), bits("IZ")])
    }
}

impl fmt::Display for LocalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |p: &[Letter; 3], q: u8| {
            Letter::PAULIS
                .iter()
                .zip(p)
                .filter(|(a, b)| a != b)
                .map(|(a, b)| format!("{}{q}→{}{q}", a.as_char(), b.as_char()))
                .collect::<Vec<_>>()
        };
        let all = [part(&self.first, 1), part(&self.second, 2)].concat();
        if all.is_empty() {
            write!(f, "identity")
        } else {
            write!(f, "{}", all.join(", "))
        }
    }
}

/// The square (by position in `squares`) that `m` carries `s` onto.
pub fn apply_local_map(m: &LocalMap, s: &MagicSquare, squares: &[MagicSquare]) -> Result<SquareId> {
    let image: std::collections::BTreeSet<Observable> = s.observables().iter().map(|&o| m.apply(o)).collect();
    squares
        .iter()
        .position(|q| q.observables() == image)
        .and_then(|i| SquareId::new(i as u8 + 1))
        .ok_or_else(|| Error::Consistency(format!("image of square under {m} is not a magic square")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FoundMap {
    pub map: SymplecticMap,
    pub local: bool,
}

/// Maps in `group` sending `from`'s nine observables onto `to`'s.
pub fn find_maps(group: &[SymplecticMap], from: &MagicSquare, to: &MagicSquare) -> Vec<FoundMap> {
    let src = from.observables();
    let dst = to.observables();
    group
        .iter()
        .filter(|m| src.iter().all(|&o| m.apply(o).is_some_and(|p| dst.contains(&p))))
        .map(|&map| FoundMap { map, local: map.is_local() })
        .collect()
}

/// An exact Clifford unitary realizing a symplectic map, with the sign each
/// observable picks up under conjugation.
#[derive(Clone, Debug, PartialEq)]
pub struct Lift {
    pub map: SymplecticMap,
    pub unitary: RatMat,
    /// `(O, s)` with `U·O·U† = s·m(O)`.
    pub signs: Vec<(Observable, i8)>,
}

impl Serialize for Lift {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            num: [i64; 2],
            den: i64,
        }
        let matrix: Vec<Vec<Entry>> = self
            .unitary
            .0
            .iter()
            .map(|r| r.iter().map(|e| Entry { num: [e.num.re, e.num.im], den: e.den }).collect())
            .collect();
        let signs: BTreeMap<String, i8> = self.signs.iter().map(|(o, s)| (o.to_string(), *s)).collect();
        let mut st = s.serialize_struct("Lift", 3)?;
        st.serialize_field("map", &self.map)?;
        st.serialize_field("matrix", &matrix)?;
        st.serialize_field("signs", &signs)?;
        st.end()
    }
}

fn rat_matrix(o: Observable) -> RatMat {
    o.matrix().into()
}

/// Conjugation action of `u` on the fifteen observables, if it permutes
/// them up to sign.
pub fn conjugation_action(u: &RatMat) -> Option<(SymplecticMap, Vec<(Observable, i8)>)> {
    let ud = u.adjoint();
    let mut images = Vec::with_capacity(15);
    for o in Observable::all() {
        let c = *u * rat_matrix(o) * ud;
        let hit = Observable::all().into_iter().find_map(|p| {
            let m = rat_matrix(p);
            if c == m {
                Some((p, 1))
            } else if c == -m {
                Some((p, -1))
            } else {
                None
            }
        })?;
        images.push((o, hit));
    }
    let img = |s: &str| {
        let o: Observable = s.parse().expect("basis observable");
        images.iter().find(|(k, _)| *k == o).expect("all observables").1 .0.bits()
    };
    let map = SymplecticMap::from_columns([img("XI"), img("ZI"), img("IX"), img("IZ")]);
    for (o, (p, _)) in &images {
        if map.apply(*o) != Some(*p) {
            return None;
        }
    }
    Some((map, images.into_iter().map(|(o, (_, s))| (o, s)).collect()))
}

fn generators() -> Vec<RatMat> {
    let q = |re, im, den| GaussianRational::new(GaussianInt::new(re, im), den);
    let (z, o) = (GaussianRational::ZERO, GaussianRational::ONE);
    let id2 = [[o, z], [z, o]];
    // e^{iπ/4}·H keeps every entry in Q(i)
    let h = [[q(1, 1, 2), q(1, 1, 2)], [q(1, 1, 2), q(-1, -1, 2)]];
    let s = [[o, z], [z, q(0, 1, 1)]];
    let mut cnot = Mat4::<GaussianRational>::zero();
    for (i, j) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        cnot.0[i][j] = o;
    }
    vec![Mat4::kron(h, id2), Mat4::kron(id2, h), Mat4::kron(s, id2), Mat4::kron(id2, s), cnot]
}

fn clifford_table() -> &'static HashMap<SymplecticMap, RatMat> {
    static TABLE: OnceLock<HashMap<SymplecticMap, RatMat>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let gens: Vec<(RatMat, SymplecticMap)> = generators()
            .into_iter()
            .map(|g| {
                let (m, _) = conjugation_action(&g).expect("generators are Clifford");
                (g, m)
            })
            .collect();
        let mut table = HashMap::new();
        table.insert(SymplecticMap::IDENTITY, Mat4::identity());
        let mut queue = VecDeque::from([SymplecticMap::IDENTITY]);
        while let Some(m) = queue.pop_front() {
            let u = table[&m];
            for (g, gm) in &gens {
                let next = gm.compose(&m);
                if let std::collections::hash_map::Entry::Vacant(e) = table.entry(next) {
                    e.insert(*g * u);
                    queue.push_back(next);
                }
            }
        }
        table
    })
}

/// Exact unitary whose conjugation action is `m`, verified on all fifteen
/// observables.
pub fn lift_to_unitary(m: &SymplecticMap) -> Result<Lift> {
    let u = *clifford_table()
        .get(m)
        .ok_or_else(|| Error::Consistency(format!("{m} is not in the symplectic group")))?;
    let (got, signs) =
        conjugation_action(&u).ok_or_else(|| Error::Consistency(format!("lift of {m} is not Clifford")))?;
    if got != *m {
        return Err(Error::Consistency(format!("lift of {m} realizes {got}")));
    }
    Ok(Lift { map: *m, unitary: u, signs })
}

/// Labels of the catalog states `u·v` for each source label, or `None` if
/// some image is not in the catalog.
pub fn state_action(u: &RatMat, labels: &[Label], catalog: &Catalog) -> Option<Vec<Label>> {
    labels
        .iter()
        .map(|&l| {
            let v = catalog.state(l).coords().map(GaussianRational::from);
            StateVec::from_rational(u.apply(&v)).and_then(|w| catalog.find(&w))
        })
        .collect()
}

/// A state relabeling `S1 → target` from the reference table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relabeling {
    pub target: SquareId,
    pub map: BTreeMap<Label, Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelabelingReport {
    pub target: SquareId,
    pub injective: bool,
    pub image_is_target_states: bool,
    pub fixed_points: usize,
    pub tetrads_match: bool,
    pub first_mismatch: Option<Tetrad>,
}

impl RelabelingReport {
    pub fn passed(&self) -> bool {
        self.injective && self.image_is_target_states && self.fixed_points == 8 && self.tetrads_match
    }
}

/// Pushes S1's tetrads through the relabeling and compares with the
/// target square's tetrads.
pub fn apply_relabeling(
    r: &Relabeling,
    source_tetrads: &[Tetrad],
    target_states: &[Label],
    target_tetrads: &[Tetrad],
) -> RelabelingReport {
    let mut image: Vec<Label> = r.map.values().copied().collect();
    image.sort_unstable();
    let injective = image.windows(2).all(|w| w[0] != w[1]);
    let mut want_states = target_states.to_vec();
    want_states.sort_unstable();
    let fixed_points = r.map.iter().filter(|(a, b)| a == b).count();
    let mapped: Vec<Option<Tetrad>> = source_tetrads
        .iter()
        .map(|t| t.0.iter().all(|l| r.map.contains_key(l)).then(|| t.map(|l| r.map[&l])))
        .collect();
    let first_mismatch = source_tetrads
        .iter()
        .zip(&mapped)
        .find(|(_, m)| m.is_none_or(|m| !target_tetrads.contains(&m)))
        .map(|(t, _)| *t);
    let mut got: Vec<Tetrad> = mapped.into_iter().flatten().collect();
    got.sort_unstable();
    let mut want = target_tetrads.to_vec();
    want.sort_unstable();
    RelabelingReport {
        target: r.target,
        injective,
        image_is_target_states: image == want_states,
        fixed_points,
        tetrads_match: first_mismatch.is_none() && got == want,
        first_mismatch,
    }
}

/// How a found map's lift (times a Pauli correction) acts on a square's
/// states compared with a reference relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationReport {
    pub candidates: usize,
    /// Candidates whose bare lift reproduces the relabeling exactly.
    pub exact_lifts: usize,
    /// `(candidate index, Pauli correction)` pairs reproducing it; `None`
    /// is the uncorrected lift.
    pub with_pauli_correction: Vec<(usize, Option<Observable>)>,
}

pub fn realizations(
    candidates: &[FoundMap],
    relabeling: &Relabeling,
    catalog: &Catalog,
) -> Result<RealizationReport> {
    let (sources, targets): (Vec<Label>, Vec<Label>) = relabeling.map.iter().map(|(a, b)| (*a, *b)).unzip();
    let corrections: Vec<Option<Observable>> = std::iter::once(None).chain(Observable::all().into_iter().map(Some)).collect();
    let mut hits = Vec::new();
    for (k, c) in candidates.iter().enumerate() {
        let lift = lift_to_unitary(&c.map)?;
        for &p in &corrections {
            let u = match p {
                None => lift.unitary,
                Some(o) => lift.unitary * rat_matrix(o),
            };
            if state_action(&u, &sources, catalog).as_deref() == Some(targets.as_slice()) {
                hits.push((k, p));
            }
        }
    }
    Ok(RealizationReport {
        candidates: candidates.len(),
        exact_lifts: hits.iter().filter(|(_, p)| p.is_none()).count(),
        with_pauli_correction: hits,
    })
}
