//! Incidence geometry on the state catalog: orthogonal tetrads, the
//! 12-point/16-line Reye configurations, partner lines and triangles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::rank;
use crate::hexagon::{square_state_sets, MagicSquare};
use crate::states::{inner_product, Catalog};
use crate::Label;

/// Four mutually orthogonal states, labels sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Tetrad(pub [Label; 4]);

impl Tetrad {
    pub fn contains(&self, l: Label) -> bool {
        self.0.contains(&l)
    }

    pub fn map(&self, f: impl Fn(Label) -> Label) -> Tetrad {
        let mut t = self.0.map(f);
        t.sort_unstable();
        Tetrad(t)
    }
}

/// Three collinear points, labels sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Line(pub [Label; 3]);

/// Three points of one configuration with pairwise overlap `|⟨a|b⟩|² = ¼`
/// (normalized) that are not collinear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Triangle(pub [Label; 3]);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReyeConfig {
    pub points: Vec<Label>,
    pub lines: Vec<Line>,
}

/// Each line of one configuration with its totally orthogonal partner in
/// the dual configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PartnerPairing {
    pub pairs: Vec<(Line, Line)>,
}

/// The 24 states of a square split by the triads they come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareStates {
    pub rows: Vec<Label>,
    pub columns: Vec<Label>,
}

impl SquareStates {
    pub fn all(&self) -> Vec<Label> {
        let mut v: Vec<Label> = self.rows.iter().chain(&self.columns).copied().collect();
        v.sort_unstable();
        v
    }
}

pub fn square_states(catalog: &Catalog, s: &MagicSquare) -> Result<SquareStates> {
    let (rows, columns) = square_state_sets(s, catalog)?;
    Ok(SquareStates { rows, columns })
}

/// All pairwise-orthogonal 4-subsets of `labels`, sorted.
pub fn enumerate_tetrads(catalog: &Catalog, labels: &[Label]) -> Vec<Tetrad> {
    let mut ls = labels.to_vec();
    ls.sort_unstable();
    ls.dedup();
    let orth = |a: Label, b: Label| catalog.orthogonal(a, b);
    let mut out = Vec::new();
    for (i, &a) in ls.iter().enumerate() {
        let after_a: Vec<Label> = ls[i + 1..].iter().copied().filter(|&b| orth(a, b)).collect();
        for (j, &b) in after_a.iter().enumerate() {
            let after_b: Vec<Label> = after_a[j + 1..].iter().copied().filter(|&c| orth(b, c)).collect();
            for (k, &c) in after_b.iter().enumerate() {
                for &d in &after_b[k + 1..] {
                    if orth(c, d) {
                        out.push(Tetrad([a, b, c, d]));
                    }
                }
            }
        }
    }
    out
}

/// Whether the points' coordinate vectors span a plane (rank exactly 2).
pub fn collinear(catalog: &Catalog, pts: &[Label]) -> bool {
    let rows: Vec<_> = pts.iter().map(|&p| catalog.state(p).coords()).collect();
    rank(&rows) == 2
}

/// Finds every line among `points` by closing each pair under collinearity,
/// then checks the Reye incidence counts.
pub fn extract_reye(catalog: &Catalog, points: &[Label]) -> Result<ReyeConfig> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() != 12 {
        return Err(Error::NotReye(format!("{} distinct points, expected 12", pts.len())));
    }
    let mut lines: Vec<Vec<Label>> = Vec::new();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            let on: Vec<Label> = pts
                .iter()
                .copied()
                .filter(|&c| c == a || c == b || collinear(catalog, &[a, b, c]))
                .collect();
            if on.len() > 2 && !lines.contains(&on) {
                lines.push(on);
            }
        }
    }
    if let Some(l) = lines.iter().find(|l| l.len() != 3) {
        return Err(Error::NotReye(format!("line {l:?} has {} points", l.len())));
    }
    if lines.len() != 16 {
        return Err(Error::NotReye(format!("{} lines, expected 16", lines.len())));
    }
    if let Some(p) = pts.iter().find(|p| lines.iter().filter(|l| l.contains(p)).count() != 4) {
        return Err(Error::NotReye(format!("point {p} is not on exactly 4 lines")));
    }
    let mut lines: Vec<Line> = lines.into_iter().map(|l| Line([l[0], l[1], l[2]])).collect();
    lines.sort_unstable();
    Ok(ReyeConfig { points: pts, lines })
}

fn totally_orthogonal(catalog: &Catalog, a: &Line, b: &Line) -> bool {
    a.0.iter().all(|&p| b.0.iter().all(|&q| catalog.orthogonal(p, q)))
}

/// Pairs each line of `a` with the unique line of `b` whose points are all
/// orthogonal to its points.
pub fn partner_pairing(catalog: &Catalog, a: &ReyeConfig, b: &ReyeConfig) -> Result<PartnerPairing> {
    let mut pairs = Vec::with_capacity(a.lines.len());
    for la in &a.lines {
        let partners: Vec<&Line> = b.lines.iter().filter(|lb| totally_orthogonal(catalog, la, lb)).collect();
        let [lb] = partners[..] else {
            return Err(Error::Pairing(format!("line {:?} has {} partners", la.0, partners.len())));
        };
        pairs.push((*la, *lb));
    }
    let mut images: Vec<Line> = pairs.iter().map(|p| p.1).collect();
    images.sort_unstable();
    images.dedup();
    if images.len() != b.lines.len() {
        return Err(Error::Pairing("pairing is not a bijection".into()));
    }
    Ok(PartnerPairing { pairs })
}

/// `4·|⟨a|b⟩|² = ‖a‖²‖b‖²`.
pub fn half_overlap(catalog: &Catalog, a: Label, b: Label) -> bool {
    let (sa, sb) = (catalog.state(a), catalog.state(b));
    4 * inner_product(sa, sb).norm() == sa.norm_sq() * sb.norm_sq()
}

pub fn triangles(catalog: &Catalog, c: &ReyeConfig) -> Vec<Triangle> {
    let p = &c.points;
    let mut out = Vec::new();
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in p.iter().enumerate().skip(i + 1) {
            if !half_overlap(catalog, a, b) {
                continue;
            }
            for &d in &p[j + 1..] {
                if half_overlap(catalog, a, d) && half_overlap(catalog, b, d) && !collinear(catalog, &[a, b, d]) {
                    out.push(Triangle([a, b, d]));
                }
            }
        }
    }
    out
}

/// Everything the apparition generators need about one square.
#[derive(Clone, Debug)]
pub struct SquareGeometry {
    pub states: SquareStates,
    pub tetrads: Vec<Tetrad>,
    pub row_config: ReyeConfig,
    pub column_config: ReyeConfig,
    pub pairing: PartnerPairing,
    pub row_triangles: Vec<Triangle>,
    pub column_triangles: Vec<Triangle>,
}

impl SquareGeometry {
    pub fn build(catalog: &Catalog, s: &MagicSquare) -> Result<Self> {
        let states = square_states(catalog, s)?;
        let tetrads = enumerate_tetrads(catalog, &states.all());
        let row_config = extract_reye(catalog, &states.rows)?;
        let column_config = extract_reye(catalog, &states.columns)?;
        let pairing = partner_pairing(catalog, &row_config, &column_config)?;
        let row_triangles = triangles(catalog, &row_config);
        let column_triangles = triangles(catalog, &column_config);
        Ok(SquareGeometry { states, tetrads, row_config, column_config, pairing, row_triangles, column_triangles })
    }

    /// For each of the 24 states (ascending), the triangles of the opposite
    /// configuration all of whose points are orthogonal to it.
    pub fn point_triangles(&self, catalog: &Catalog) -> Vec<(Label, Vec<Triangle>)> {
        self.states
            .all()
            .into_iter()
            .map(|p| {
                let opposite = if self.states.rows.contains(&p) { &self.column_triangles } else { &self.row_triangles };
                let tris = opposite
                    .iter()
                    .filter(|t| t.0.iter().all(|&q| catalog.orthogonal(p, q)))
                    .copied()
                    .collect();
                (p, tris)
            })
            .collect()
    }
}
