//! Reference tables shipped with the crate.
//!
//! These are the published tables the computed structures are checked
//! against. Nothing in the computation reads them except to assign labels
//! (state numbers and square names) and to compare.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::hexagon::SquareId;
use crate::pauli::{Letter, Observable, Triad};
use crate::Label;

const EIGENSTATES: &str = include_str!("../data/eigenstates.txt");
const S1_TETRADS: &str = include_str!("../data/s1_tetrads.txt");
const ALL_TETRADS: &str = include_str!("../data/all_tetrads.txt");
const S1_PARTNER_LINES: &str = include_str!("../data/s1_partner_lines.txt");
const S1_POINT_TRIANGLES: &str = include_str!("../data/s1_point_triangles.txt");
const RELABELINGS: &str = include_str!("../data/relabelings.txt");
const MUB_SETS: &str = include_str!("../data/mub_sets.txt");
const LOCAL_MAPS: &str = include_str!("../data/local_maps.txt");

/// One row of the eigenstate table: a triad and its four labeled states.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenstateRow {
    pub observables: [Observable; 3],
    pub sign: i8,
    pub states: [[GaussianInt; 4]; 4],
}

/// A local relabeling `S1 → target`, given as the images of `X, Y, Z` on
/// each qubit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalMapRow {
    pub target: SquareId,
    #[serde(serialize_with = "ser_letters")]
    pub first: [Letter; 3],
    #[serde(serialize_with = "ser_letters")]
    pub second: [Letter; 3],
}

fn ser_letters<S: serde::Serializer>(l: &[Letter; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(l.iter().map(|c| c.as_char().to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Golden {
    /// Fifteen rows; labels are `4·row + column + 1`.
    pub eigenstates: Vec<EigenstateRow>,
    /// The 24 tetrads of S1.
    pub s1_tetrads: Vec<[Label; 4]>,
    /// The 105 tetrads of all 60 states.
    pub all_tetrads: Vec<[Label; 4]>,
    /// S1 row-configuration lines with their partner column-configuration lines.
    pub s1_partner_lines: Vec<([Label; 3], [Label; 3])>,
    /// For each S1 state, the four triangles of the opposite configuration
    /// orthogonal to it.
    pub s1_point_triangles: Vec<(Label, [[Label; 3]; 4])>,
    /// For each S1 state, its image in S2..S10.
    pub relabelings: Vec<(Label, [Label; 9])>,
    /// Six maximal families of mutually unbiased triads.
    pub mub_sets: Vec<[Triad; 5]>,
    pub local_maps: Vec<LocalMapRow>,
}

fn data_lines(src: &str) -> impl Iterator<Item = &str> {
    src.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn bad(table: &'static str, detail: impl Into<String>) -> Error {
    Error::Golden { table, detail: detail.into() }
}

fn labels<const N: usize>(table: &'static str, s: &str) -> Result<[Label; N]> {
    let v: Vec<Label> = s
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad(table, format!("bad label {t:?}"))))
        .collect::<Result<_>>()?;
    v.try_into()
        .map_err(|v: Vec<Label>| bad(table, format!("expected {N} labels, found {}", v.len())))
}

fn coordinate(t: &str) -> Option<GaussianInt> {
    Some(match t {
        "0" => GaussianInt::ZERO,
        "1" => GaussianInt::ONE,
        "-1" => -GaussianInt::ONE,
        "i" => GaussianInt::I,
        "-i" => -GaussianInt::I,
        _ => return None,
    })
}

fn parse_eigenstates(src: &str) -> Result<Vec<EigenstateRow>> {
    const T: &str = "eigenstates";
    data_lines(src)
        .map(|line| {
            let mut parts = line.split(';').map(str::trim);
            let head: Vec<&str> = parts.next().unwrap_or_default().split_whitespace().collect();
            let [mark, a, b, c] = head[..] else {
                return Err(bad(T, format!("bad row head {line:?}")));
            };
            let sign = match mark {
                "+" => 1,
                "-" => -1,
                _ => return Err(bad(T, format!("bad sign marker {mark:?}"))),
            };
            let observables = [a.parse()?, b.parse()?, c.parse()?];
            let states: Vec<[GaussianInt; 4]> = parts
                .map(|s| {
                    let v: Option<Vec<GaussianInt>> = s.split(',').map(|t| coordinate(t.trim())).collect();
                    v.and_then(|v| v.try_into().ok())
                        .ok_or_else(|| bad(T, format!("bad state {s:?}")))
                })
                .collect::<Result<_>>()?;
            let states = states
                .try_into()
                .map_err(|_| bad(T, format!("expected four states in {line:?}")))?;
            Ok(EigenstateRow { observables, sign, states })
        })
        .collect()
}

fn parse_tetrads(table: &'static str, src: &str) -> Result<Vec<[Label; 4]>> {
    data_lines(src).map(|l| labels(table, l)).collect()
}

fn parse_partner_lines(src: &str) -> Result<Vec<([Label; 3], [Label; 3])>> {
    const T: &str = "s1_partner_lines";
    data_lines(src)
        .map(|l| {
            let (a, b) = l.split_once('|').ok_or_else(|| bad(T, l))?;
            Ok((labels(T, a)?, labels(T, b)?))
        })
        .collect()
}

fn parse_point_triangles(src: &str) -> Result<Vec<(Label, [[Label; 3]; 4])>> {
    const T: &str = "s1_point_triangles";
    data_lines(src)
        .map(|l| {
            let (p, rest) = l.split_once('|').ok_or_else(|| bad(T, l))?;
            let [p] = labels::<1>(T, p)?;
            let flat = labels::<12>(T, rest)?;
            let tri = std::array::from_fn(|i| [flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]]);
            Ok((p, tri))
        })
        .collect()
}

fn parse_relabelings(src: &str) -> Result<Vec<(Label, [Label; 9])>> {
    data_lines(src)
        .map(|l| {
            let row = labels::<10>("relabelings", l)?;
            Ok((row[0], std::array::from_fn(|i| row[i + 1])))
        })
        .collect()
}

fn parse_mub_sets(src: &str) -> Result<Vec<[Triad; 5]>> {
    data_lines(src)
        .map(|l| {
            let v: Vec<Triad> = l.split('|').map(str::parse).collect::<Result<_>>()?;
            v.try_into().map_err(|_| bad("mub_sets", format!("expected five triads in {l:?}")))
        })
        .collect()
}

fn parse_local_maps(src: &str) -> Result<Vec<LocalMapRow>> {
    const T: &str = "local_maps";
    let letters = |s: &str| -> Result<[Letter; 3]> {
        let v: Option<Vec<Letter>> = s
            .split_whitespace()
            .map(|t| t.chars().next().and_then(Letter::from_char))
            .collect();
        v.and_then(|v| v.try_into().ok()).ok_or_else(|| bad(T, s))
    };
    data_lines(src)
        .map(|l| {
            let parts: Vec<&str> = l.split('|').map(str::trim).collect();
            let [target, first, second] = parts[..] else {
                return Err(bad(T, l));
            };
            Ok(LocalMapRow {
                target: target.parse()?,
                first: letters(first)?,
                second: letters(second)?,
            })
        })
        .collect()
}

impl Golden {
    /// Parses the tables compiled into the crate.
    pub fn embedded() -> Result<Golden> {
        Ok(Golden {
            eigenstates: parse_eigenstates(EIGENSTATES)?,
            s1_tetrads: parse_tetrads("s1_tetrads", S1_TETRADS)?,
            all_tetrads: parse_tetrads("all_tetrads", ALL_TETRADS)?,
            s1_partner_lines: parse_partner_lines(S1_PARTNER_LINES)?,
            s1_point_triangles: parse_point_triangles(S1_POINT_TRIANGLES)?,
            relabelings: parse_relabelings(RELABELINGS)?,
            mub_sets: parse_mub_sets(MUB_SETS)?,
            local_maps: parse_local_maps(LOCAL_MAPS)?,
        })
    }

    /// Image of S1's state `label` in square `target`; S1 maps to itself.
    pub fn relabel(&self, target: SquareId, label: Label) -> Option<Label> {
        let row = self.relabelings.iter().find(|(l, _)| *l == label)?;
        match target.index() {
            0 => Some(label),
            col => Some(row.1[col - 1]),
        }
    }
}
