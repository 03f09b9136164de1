//! Parity proofs ("apparitions") carved out of each square's 24 tetrads,
//! and an independent coloring search that confirms each one is
//! uncolorable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{SquareGeometry, Tetrad};
use crate::hexagon::SquareId;
use crate::states::Catalog;
use crate::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Partner-line exclusion: 9 tetrads over 18 states.
    Eighteen,
    /// Point-and-triangle exclusion: 11 tetrads over 20 states.
    Twenty,
}

impl Kind {
    pub fn states(self) -> usize {
        match self {
            Kind::Eighteen => 18,
            Kind::Twenty => 20,
        }
    }

    pub fn tetrads(self) -> usize {
        match self {
            Kind::Eighteen => 9,
            Kind::Twenty => 11,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.states())
    }
}

impl Serialize for Kind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.states() as u8)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Apparition {
    pub square: SquareId,
    pub kind: Kind,
    pub excluded: Vec<Label>,
    pub tetrads: Vec<Tetrad>,
    #[serde(skip)]
    pub multiplicity: BTreeMap<Label, u32>,
}

impl Apparition {
    fn new(square: SquareId, kind: Kind, mut excluded: Vec<Label>, all: &[Tetrad]) -> Apparition {
        excluded.sort_unstable();
        let tetrads: Vec<Tetrad> =
            all.iter().filter(|t| !excluded.iter().any(|&e| t.contains(e))).copied().collect();
        Apparition { square, kind, excluded, multiplicity: multiplicity(&tetrads), tetrads }
    }

    pub fn states(&self) -> Vec<Label> {
        self.multiplicity.keys().copied().collect()
    }

    fn check_shape(&self) -> Result<()> {
        let k = self.kind;
        let mut counts: Vec<u32> = self.multiplicity.values().copied().collect();
        counts.sort_unstable();
        let expected: Vec<u32> = match k {
            Kind::Eighteen => vec![2; 18],
            Kind::Twenty => [vec![2; 18], vec![4; 2]].concat(),
        };
        if self.tetrads.len() != k.tetrads() || counts != expected {
            return Err(Error::Consistency(format!(
                "{} excluding {:?}: {} tetrads, multiplicities {counts:?}",
                self.square,
                self.excluded,
                self.tetrads.len()
            )));
        }
        Ok(())
    }
}

pub fn multiplicity(tetrads: &[Tetrad]) -> BTreeMap<Label, u32> {
    let mut m = BTreeMap::new();
    for t in tetrads {
        for &l in &t.0 {
            *m.entry(l).or_insert(0) += 1;
        }
    }
    m
}

/// One apparition per partner-line pair.
pub fn gen18(id: SquareId, g: &SquareGeometry) -> Result<Vec<Apparition>> {
    g.pairing
        .pairs
        .iter()
        .map(|(a, b)| {
            let excluded = a.0.iter().chain(&b.0).copied().collect();
            let app = Apparition::new(id, Kind::Eighteen, excluded, &g.tetrads);
            app.check_shape()?;
            Ok(app)
        })
        .collect()
}

/// One apparition per point and orthogonal triangle of the opposite
/// configuration.
pub fn gen20(id: SquareId, g: &SquareGeometry, catalog: &Catalog) -> Result<Vec<Apparition>> {
    let mut out = Vec::with_capacity(96);
    for (p, tris) in g.point_triangles(catalog) {
        for t in tris {
            let excluded = std::iter::once(p).chain(t.0).collect();
            let app = Apparition::new(id, Kind::Twenty, excluded, &g.tetrads);
            app.check_shape()?;
            out.push(app);
        }
    }
    Ok(out)
}

/// Odd number of tetrads with every state appearing an even number of
/// times: no one-green-per-tetrad coloring can exist.
pub fn parity_check(tetrads: &[Tetrad]) -> bool {
    tetrads.len() % 2 == 1 && multiplicity(tetrads).values().all(|m| m % 2 == 0)
}

/// Above this many states `color_search` switches to backtracking.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Number of subsets `G ⊆ states` meeting every tetrad in exactly one
/// state.
pub fn color_search(states: &[Label], tetrads: &[Tetrad]) -> u64 {
    if states.len() <= EXHAUSTIVE_LIMIT {
        color_search_exhaustive(states, tetrads)
    } else {
        color_search_backtracking(states, tetrads)
    }
}

fn masks(states: &[Label], tetrads: &[Tetrad]) -> Vec<u64> {
    tetrads
        .iter()
        .map(|t| {
            t.0.iter().fold(0u64, |m, l| {
                let bit = states.iter().position(|s| s == l).expect("tetrad state not in the state list");
                m | 1 << bit
            })
        })
        .collect()
}

/// Tries all `2^n` subsets.
pub fn color_search_exhaustive(states: &[Label], tetrads: &[Tetrad]) -> u64 {
    assert!(states.len() < 32, "exhaustive search over {} states", states.len());
    let masks = masks(states, tetrads);
    let n = states.len() as u32;
    let total: u64 = 1 << n;
    let chunk = 1u64 << n.saturating_sub(6);
    (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            (c * chunk..((c + 1) * chunk).min(total))
                .filter(|g| masks.iter().all(|m| (g & m).count_ones() == 1))
                .count() as u64
        })
        .sum()
}

/// Depth-first search that branches on the unsatisfied tetrad with the
/// fewest undecided states.
pub fn color_search_backtracking(states: &[Label], tetrads: &[Tetrad]) -> u64 {
    assert!(states.len() <= 64, "at most 64 states");
    let masks = masks(states, tetrads);
    let covered = masks.iter().fold(0u64, |a, m| a | m);
    let free = states.len() as u32 - covered.count_ones();
    search(&masks, 0, 0) << free
}

// green/red are bitsets over state positions; every tetrad with a green
// member has all its other members red.
fn search(masks: &[u64], green: u64, red: u64) -> u64 {
    let mut best: Option<(u32, u64)> = None;
    for &m in masks {
        if m & green != 0 {
            continue;
        }
        let open = m & !red;
        let n = open.count_ones();
        if n == 0 {
            return 0;
        }
        if best.is_none_or(|(bn, _)| n < bn) {
            best = Some((n, open));
        }
    }
    let Some((_, mut open)) = best else {
        return 1;
    };
    let mut count = 0;
    while open != 0 {
        let bit = open & open.wrapping_neg();
        open &= open - 1;
        let g = green | bit;
        let mut r = red;
        let mut ok = true;
        for &m in masks {
            if m & bit != 0 {
                if m & green != 0 {
                    ok = false;
                    break;
                }
                r |= m & !bit;
            }
        }
        if ok && r & g == 0 {
            count += search(masks, g, r);
        }
    }
    count
}

/// All 112 apparitions of each listed square; fails on any malformed or
/// duplicated apparition.
pub fn enumerate_all(catalog: &Catalog, squares: &[(SquareId, &SquareGeometry)]) -> Result<Vec<Apparition>> {
    let per_square: Vec<Vec<Apparition>> = squares
        .par_iter()
        .map(|(id, g)| {
            let mut v = gen18(*id, g)?;
            v.extend(gen20(*id, g, catalog)?);
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let all: Vec<Apparition> = per_square.into_iter().flatten().collect();
    let distinct: BTreeSet<&[Tetrad]> = all.iter().map(|a| a.tetrads.as_slice()).collect();
    if distinct.len() != all.len() {
        return Err(Error::Consistency(format!("{} duplicate apparitions", all.len() - distinct.len())));
    }
    Ok(all)
}
