//! The hexagon model of the fifteen observables and the ten magic squares
//! it produces.
//!
//! The six single-qubit Paulis sit on the vertices of a hexagon; each edge
//! is the (phase-dropped) product of its endpoints. Removing two
//! vertex-disjoint triangles leaves nine edges that arrange uniquely, up to
//! row and column symmetries, into a magic square.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::Golden;
use crate::pauli::{commutes, Letter, Observable, Triad};
use crate::states::Catalog;
use crate::Label;

/// Name of one of the ten squares, `S1..S10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SquareId(u8);

impl SquareId {
    pub fn new(n: u8) -> Option<Self> {
        (1..=10).contains(&n).then_some(Self(n))
    }

    pub fn number(self) -> u8 {
        self.0
    }

    /// Zero-based position, `S1 → 0`.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn all() -> impl Iterator<Item = SquareId> {
        (1..=10).map(SquareId)
    }
}

impl fmt::Display for SquareId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.0)
    }
}

impl FromStr for SquareId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix('S')
            .or_else(|| s.strip_prefix('s'))
            .and_then(|n| n.parse().ok())
            .and_then(SquareId::new)
            .ok_or_else(|| Error::ParseSquareId(s.to_string()))
    }
}

impl TryFrom<String> for SquareId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SquareId> for String {
    fn from(id: SquareId) -> String {
        id.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HexVertex {
    pub qubit: u8,
    pub axis: Letter,
}

impl HexVertex {
    /// The six vertices `x¹ y¹ z¹ x² y² z²`.
    pub fn all() -> [HexVertex; 6] {
        let mut v = [HexVertex { qubit: 1, axis: Letter::X }; 6];
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = HexVertex { qubit: 1 + (i / 3) as u8, axis: Letter::PAULIS[i % 3] };
        }
        v
    }
}

/// The observable carried by the edge between two distinct vertices.
pub fn edge(a: HexVertex, b: HexVertex) -> Observable {
    assert_ne!(a, b, "an edge needs two distinct vertices");
    let (first, second) = if a.qubit == b.qubit {
        let third = Letter::PAULIS
            .into_iter()
            .find(|&l| l != a.axis && l != b.axis)
            .expect("three axes");
        if a.qubit == 1 { (third, Letter::I) } else { (Letter::I, third) }
    } else if a.qubit == 1 {
        (a.axis, b.axis)
    } else {
        (b.axis, a.axis)
    };
    Observable::from_letters(first, second).expect("edge observables are never the identity")
}

/// Two complementary vertex triangles; `left` always holds `x¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TrianglePartition {
    pub left: [HexVertex; 3],
    pub right: [HexVertex; 3],
}

impl TrianglePartition {
    /// The six observables on the two triangles' edges.
    pub fn triangle_edges(&self) -> [Observable; 6] {
        let [a, b, c] = self.left;
        let [d, e, f] = self.right;
        [edge(a, b), edge(a, c), edge(b, c), edge(d, e), edge(d, f), edge(e, f)]
    }

    /// The nine observables left over.
    pub fn remaining(&self) -> Vec<Observable> {
        let used = self.triangle_edges();
        Observable::all().into_iter().filter(|o| !used.contains(o)).collect()
    }
}

/// All ten partitions of the hexagon into two vertex-disjoint triangles.
pub fn enumerate_triangle_partitions() -> Vec<TrianglePartition> {
    let v = HexVertex::all();
    let mut out = Vec::new();
    for i in 1..6 {
        for j in i + 1..6 {
            let rest: Vec<HexVertex> = (1..6).filter(|&k| k != i && k != j).map(|k| v[k]).collect();
            out.push(TrianglePartition { left: [v[0], v[i], v[j]], right: [rest[0], rest[1], rest[2]] });
        }
    }
    out
}

/// A 3×3 grid of observables whose rows and columns are commuting triads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MagicSquare {
    grid: [[Observable; 3]; 3],
    line_signs: [i8; 6],
}

impl MagicSquare {
    /// Builds a square from its grid, computing line signs. Fails when a
    /// row or column is not a commuting triad.
    pub fn new(grid: [[Observable; 3]; 3]) -> Result<Self> {
        let lines = lines_of(&grid);
        let mut line_signs = [0; 6];
        for (s, [a, b, c]) in line_signs.iter_mut().zip(lines) {
            *s = Triad::new(a, b, c)
                .ok_or_else(|| Error::Consistency(format!("{a},{b},{c} is not a commuting triad")))?
                .sign();
        }
        Ok(MagicSquare { grid, line_signs })
    }

    /// Same grid with the given line signs, for probing the parity check.
    pub fn with_line_signs(mut self, signs: [i8; 6]) -> Self {
        self.line_signs = signs;
        self
    }

    pub fn grid(&self) -> &[[Observable; 3]; 3] {
        &self.grid
    }

    /// Signs of rows 1–3 then columns 1–3.
    pub fn line_signs(&self) -> [i8; 6] {
        self.line_signs
    }

    pub fn rows(&self) -> [Triad; 3] {
        std::array::from_fn(|r| triad(self.grid[r]))
    }

    pub fn columns(&self) -> [Triad; 3] {
        std::array::from_fn(|c| triad([self.grid[0][c], self.grid[1][c], self.grid[2][c]]))
    }

    /// Rows then columns.
    pub fn lines(&self) -> [Triad; 6] {
        let (r, c) = (self.rows(), self.columns());
        [r[0], r[1], r[2], c[0], c[1], c[2]]
    }

    pub fn observables(&self) -> BTreeSet<Observable> {
        self.grid.iter().flatten().copied().collect()
    }

    /// Canonical orientation: the all-positive parallel class as rows, the
    /// negative columns last, then the lexicographically least row-major
    /// grid.
    pub fn canonical(&self) -> MagicSquare {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut best: Option<(bool, [[Observable; 3]; 3], [i8; 6])> = None;
        for transpose in [false, true] {
            for rp in perms {
                for cp in perms {
                    let grid: [[Observable; 3]; 3] = std::array::from_fn(|r| {
                        std::array::from_fn(|c| {
                            let (i, j) = (rp[r], cp[c]);
                            if transpose { self.grid[j][i] } else { self.grid[i][j] }
                        })
                    });
                    let signs = line_signs_of(&grid, self);
                    let preferred = signs[..3].iter().all(|&s| s == 1)
                        && signs[3..].windows(2).all(|w| w[0] >= w[1]);
                    let cand = (!preferred, grid, signs);
                    if best.as_ref().is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                        best = Some(cand);
                    }
                }
            }
        }
        let (_, grid, line_signs) = best.expect("72 orientations");
        MagicSquare { grid, line_signs }
    }

    /// Rows and columns each text lines of three observables.
    pub fn to_text(&self) -> String {
        self.grid
            .iter()
            .map(|r| format!("{} {} {}", r[0], r[1], r[2]))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn lines_of(g: &[[Observable; 3]; 3]) -> [[Observable; 3]; 6] {
    let col = |c: usize| [g[0][c], g[1][c], g[2][c]];
    [g[0], g[1], g[2], col(0), col(1), col(2)]
}

// Line signs of a reoriented grid, looked up from the original square so
// hypothetical sign assignments survive reorientation.
fn line_signs_of(grid: &[[Observable; 3]; 3], orig: &MagicSquare) -> [i8; 6] {
    let orig_lines = lines_of(&orig.grid).map(|l| l.iter().copied().collect::<BTreeSet<_>>());
    lines_of(grid).map(|l| {
        let set: BTreeSet<_> = l.iter().copied().collect();
        let k = orig_lines.iter().position(|o| *o == set).expect("same lines");
        orig.line_signs[k]
    })
}

fn triad(l: [Observable; 3]) -> Triad {
    Triad::new(l[0], l[1], l[2]).expect("square lines are commuting triads")
}

/// Arranges a partition's nine leftover observables into a square.
pub fn build_square(p: &TrianglePartition) -> Result<MagicSquare> {
    let nine = p.remaining();
    let mut triads = Vec::new();
    for (i, &a) in nine.iter().enumerate() {
        for (j, &b) in nine.iter().enumerate().skip(i + 1) {
            for &c in &nine[j + 1..] {
                if commutes(a, b) && commutes(a, c) && commutes(b, c) {
                    triads.push([a, b, c]);
                }
            }
        }
    }
    if triads.len() != 6 {
        return Err(Error::Consistency(format!("{} commuting triples among the leftover nine", triads.len())));
    }
    let disjoint = |x: &[Observable; 3], y: &[Observable; 3]| x.iter().all(|o| !y.contains(o));
    let (rows, cols): (Vec<&[Observable; 3]>, Vec<&[Observable; 3]>) = triads.iter().partition(|t| disjoint(t, &triads[0]) || **t == triads[0]);
    if rows.len() != 3 || cols.len() != 3 {
        return Err(Error::Consistency("leftover triads do not split into rows and columns".into()));
    }
    let mut grid = [[nine[0]; 3]; 3];
    for (r, row) in rows.iter().enumerate() {
        for (c, col) in cols.iter().enumerate() {
            let common: Vec<_> = row.iter().filter(|o| col.contains(o)).collect();
            let [&o] = common[..] else {
                return Err(Error::Consistency("a row and column do not meet in one observable".into()));
            };
            grid[r][c] = o;
        }
    }
    Ok(MagicSquare::new(grid)?.canonical())
}

/// Outcome of Mermin's parity argument on one square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MagicReport {
    pub odd_minus_count: bool,
    /// Number of the 512 ±1 value assignments whose line products all
    /// match the line signs.
    pub satisfying_assignments: u32,
}

pub fn verify_magic(s: &MagicSquare) -> MagicReport {
    let minus = s.line_signs.iter().filter(|&&x| x < 0).count();
    let cells: Vec<Observable> = s.grid.iter().flatten().copied().collect();
    let lines = lines_of(&s.grid);
    let satisfying = (0u32..512)
        .filter(|bits| {
            let value = |o: &Observable| {
                let k = cells.iter().position(|c| c == o).expect("cell");
                if bits >> k & 1 == 1 { -1i8 } else { 1 }
            };
            lines.iter().zip(s.line_signs).all(|(l, sign)| l.iter().map(value).product::<i8>() == sign)
        })
        .count() as u32;
    MagicReport { odd_minus_count: minus % 2 == 1, satisfying_assignments: satisfying }
}

/// The 24 eigenstate labels of a square: row-triad states, then
/// column-triad states, each sorted.
pub fn square_state_sets(s: &MagicSquare, catalog: &Catalog) -> Result<(Vec<Label>, Vec<Label>)> {
    let collect = |ts: [Triad; 3]| -> Result<Vec<Label>> {
        let mut v = Vec::with_capacity(12);
        for t in ts {
            v.extend(catalog.basis_of(&t).ok_or_else(|| Error::Consistency(format!("{t} missing from catalog")))?);
        }
        v.sort_unstable();
        Ok(v)
    };
    Ok((collect(s.rows())?, collect(s.columns())?))
}

/// The ten squares in `S1..S10` order. Labels come from the relabeling
/// table: `Sj` is the square whose 24 states are the image of S1's states
/// under column `j`.
pub fn enumerate_squares(catalog: &Catalog, golden: &Golden) -> Result<Vec<MagicSquare>> {
    let built = enumerate_triangle_partitions()
        .iter()
        .map(build_square)
        .collect::<Result<Vec<_>>>()?;
    let state_sets = built
        .iter()
        .map(|s| {
            let (mut a, b) = square_state_sets(s, catalog)?;
            a.extend(b);
            Ok(a.into_iter().collect::<BTreeSet<Label>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(10);
    for id in SquareId::all() {
        let image: BTreeSet<Label> = golden
            .relabelings
            .iter()
            .map(|&(l, _)| golden.relabel(id, l).expect("row exists"))
            .collect();
        let matches: Vec<usize> = (0..built.len()).filter(|&k| state_sets[k] == image).collect();
        let [k] = matches[..] else {
            return Err(Error::Consistency(format!("{} squares match the state image for {id}", matches.len())));
        };
        out.push(built[k]);
    }
    let distinct: BTreeSet<_> = out.iter().map(|s| s.grid).collect();
    if distinct.len() != 10 {
        return Err(Error::Consistency("square labeling is not a bijection".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::enumerate_triads;

    fn o(s: &str) -> Observable {
        s.parse().unwrap()
    }

    #[test]
    fn edge_rule() {
        let v = HexVertex::all();
        assert_eq!(edge(v[0], v[2]), o("YI")); // x¹ z¹
        assert_eq!(edge(v[3], v[4]), o("IZ")); // x² y²
        assert_eq!(edge(v[0], v[5]), o("XZ"));
        let mut all: Vec<Observable> =
            (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).map(|(i, j)| edge(v[i], v[j])).collect();
        all.sort();
        assert_eq!(all, Observable::all());
    }

    #[test]
    fn commutation_iff_disjoint_edges() {
        let v = HexVertex::all();
        let edges: Vec<(usize, usize)> = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
        let mut pairs = 0;
        for (k, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[k + 1..] {
                let disjoint = a != c && a != d && b != c && b != d;
                assert_eq!(commutes(edge(v[a], v[b]), edge(v[c], v[d])), disjoint);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 105);
    }

    #[test]
    fn partitions() {
        let p = enumerate_triangle_partitions();
        assert_eq!(p.len(), 10);
        for q in &p {
            assert!(q.left.iter().all(|v| !q.right.contains(v)));
            assert_eq!(q.remaining().len(), 9);
        }
    }

    #[test]
    fn goodmanson_square_from_figure() {
        let want: BTreeSet<Observable> =
            ["IZ", "ZI", "ZZ", "XI", "IX", "XX", "XZ", "ZX", "YY"].iter().map(|s| o(s)).collect();
        let p = enumerate_triangle_partitions()
            .into_iter()
            .find(|p| p.remaining().into_iter().collect::<BTreeSet<_>>() == want)
            .expect("partition of the figure exists");
        let s = build_square(&p).unwrap();
        assert_eq!(s.to_text(), "IZ ZI ZZ\nXI IX XX\nXZ ZX YY");
        assert_eq!(s.line_signs(), [1, 1, 1, 1, 1, -1]);
        assert_eq!(verify_magic(&s), MagicReport { odd_minus_count: true, satisfying_assignments: 0 });
    }

    #[test]
    fn all_positive_square_is_satisfiable() {
        let p = enumerate_triangle_partitions()[0];
        let s = build_square(&p).unwrap().with_line_signs([1; 6]);
        let r = verify_magic(&s);
        assert!(!r.odd_minus_count);
        assert!(r.satisfying_assignments > 0);
    }

    #[test]
    fn every_built_square_is_magic() {
        let triads = enumerate_triads();
        let mut negatives = Vec::new();
        for p in enumerate_triangle_partitions() {
            let s = build_square(&p).unwrap();
            assert!(s.lines().iter().all(|l| triads.contains(l)));
            assert_eq!(verify_magic(&s).satisfying_assignments, 0);
            assert_eq!(s.canonical(), s);
            negatives.push(s.line_signs().iter().filter(|&&x| x < 0).count());
        }
        negatives.sort();
        assert_eq!(negatives, [1, 1, 1, 1, 1, 1, 1, 1, 1, 3]);
    }

    #[test]
    fn square_ids() {
        assert_eq!("S10".parse::<SquareId>().unwrap().index(), 9);
        assert!("S0".parse::<SquareId>().is_err());
        assert!("S11".parse::<SquareId>().is_err());
        assert!("T1".parse::<SquareId>().is_err());
    }
}
