//! JSON records for the command-line listings and the C interface.

use serde::Serialize;
use serde_json::{json, Value};

use crate::apparitions::{color_search, parity_check, Apparition, Kind};
use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::geometry::{Line, ReyeConfig, Tetrad};
use crate::hexagon::{MagicSquare, SquareId};
use crate::pauli::{Observable, Triad};
use crate::transforms::{enumerate_symplectic, find_maps, lift_to_unitary};
use crate::{Kaleidoscope, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListKind {
    Observables,
    Triads,
    States,
    Squares,
    Tetrads,
    Lines,
    MubSets,
}

#[derive(Serialize)]
pub struct SquareRecord {
    pub id: SquareId,
    pub rows: [[Observable; 3]; 3],
    pub line_signs: [i8; 6],
}

impl SquareRecord {
    pub fn new(id: SquareId, s: &MagicSquare) -> Self {
        SquareRecord { id, rows: *s.grid(), line_signs: s.line_signs() }
    }
}

#[derive(Serialize)]
pub struct StateRecord {
    pub label: Label,
    pub coords: [GaussianInt; 4],
    pub state: String,
    pub triad: [Observable; 3],
    pub signature: [i8; 3],
}

fn value<T: Serialize>(t: T) -> Value {
    serde_json::to_value(t).expect("records serialize")
}

pub fn state_record(k: &Kaleidoscope, label: Label) -> Result<StateRecord> {
    if !(1..=k.catalog.len()).contains(&(label as usize)) {
        return Err(Error::Consistency(format!("no state {label}")));
    }
    let s = k.catalog.state(label);
    Ok(StateRecord {
        label,
        coords: s.coords(),
        state: s.to_string(),
        triad: k.catalog.triad_of(label).members(),
        signature: k.catalog.signature(label).0,
    })
}

fn triad_value(t: &Triad) -> Value {
    json!({ "members": t.members(), "sign": t.sign() })
}

fn lines_of(square: SquareId, config: &str, c: &ReyeConfig, partner: impl Fn(&Line) -> Option<Line>) -> Vec<Value> {
    c.lines
        .iter()
        .map(|l| json!({ "square": square, "config": config, "line": l, "partner": partner(l) }))
        .collect()
}

/// Records for `list`, in canonical order. `square` restricts tetrads and
/// lines; without it tetrads cover all 60 states and lines every square.
pub fn list(k: &Kaleidoscope, kind: ListKind, square: Option<SquareId>) -> Result<Vec<Value>> {
    Ok(match kind {
        ListKind::Observables => Observable::all()
            .into_iter()
            .map(|o| {
                let b = o.bits();
                json!({ "observable": o, "bits": [b >> 3 & 1, b >> 2 & 1, b >> 1 & 1, b & 1], "weight": o.weight() })
            })
            .collect(),
        ListKind::Triads => k.triads.iter().map(triad_value).collect(),
        ListKind::States => k
            .catalog
            .labels()
            .map(|l| state_record(k, l).map(value))
            .collect::<Result<_>>()?,
        ListKind::Squares => SquareId::all().map(|id| value(SquareRecord::new(id, k.square(id)))).collect(),
        ListKind::Tetrads => match square {
            Some(id) => k.geometry(id).tetrads.iter().map(value).collect(),
            None => k.tetrads.iter().map(value).collect(),
        },
        ListKind::Lines => {
            let ids: Vec<SquareId> = square.map_or_else(|| SquareId::all().collect(), |id| vec![id]);
            let mut out = Vec::new();
            for id in ids {
                let g = k.geometry(id);
                let pairs = &g.pairing.pairs;
                out.extend(lines_of(id, "rows", &g.row_config, |l| pairs.iter().find(|p| p.0 == *l).map(|p| p.1)));
                out.extend(lines_of(id, "columns", &g.column_config, |l| {
                    pairs.iter().find(|p| p.1 == *l).map(|p| p.0)
                }));
            }
            out
        }
        ListKind::MubSets => k
            .golden
            .mub_sets
            .iter()
            .enumerate()
            .map(|(i, s)| json!({ "index": i + 1, "triads": s.iter().map(|t| t.members()).collect::<Vec<_>>() }))
            .collect(),
    })
}

/// Apparitions of the selected squares and kinds; with `check`, each
/// record also carries its parity result and coloring count.
pub fn apparitions(k: &Kaleidoscope, squares: &[SquareId], kind: Option<Kind>, check: bool) -> Result<Vec<Value>> {
    let all: Vec<Apparition> = k.apparitions(squares)?.into_iter().filter(|a| kind.is_none_or(|kd| a.kind == kd)).collect();
    Ok(all
        .iter()
        .map(|a| {
            let mut v = value(a);
            if check {
                v["parity"] = json!(parity_check(&a.tetrads));
                v["colorings"] = json!(color_search(&a.states(), &a.tetrads));
            }
            v
        })
        .collect())
}

/// Symplectic maps carrying `from` onto `to`, optionally with lifts.
pub fn maps(k: &Kaleidoscope, from: SquareId, to: SquareId, lift: bool) -> Result<Vec<Value>> {
    let group = enumerate_symplectic();
    find_maps(&group, k.square(from), k.square(to))
        .into_iter()
        .map(|f| {
            let mut v = json!({ "from": from, "to": to, "map": f.map, "local": f.local });
            if lift {
                v["lift"] = value(lift_to_unitary(&f.map)?);
            }
            Ok(v)
        })
        .collect()
}

#[derive(Serialize)]
struct SquareExport<'a> {
    id: SquareId,
    rows: [[Observable; 3]; 3],
    line_signs: [i8; 6],
    row_states: &'a [Label],
    column_states: &'a [Label],
    tetrads: &'a [Tetrad],
    row_config: &'a ReyeConfig,
    column_config: &'a ReyeConfig,
    pairing: &'a [(Line, Line)],
}

/// Every derived object as one JSON document.
pub fn export(k: &Kaleidoscope) -> Result<Value> {
    let squares: Vec<Value> = SquareId::all()
        .map(|id| {
            let (s, g) = (k.square(id), k.geometry(id));
            value(SquareExport {
                id,
                rows: *s.grid(),
                line_signs: s.line_signs(),
                row_states: &g.states.rows,
                column_states: &g.states.columns,
                tetrads: &g.tetrads,
                row_config: &g.row_config,
                column_config: &g.column_config,
                pairing: &g.pairing.pairs,
            })
        })
        .collect();
    Ok(json!({
        "observables": Observable::all(),
        "triads": k.triads.iter().map(triad_value).collect::<Vec<_>>(),
        "states": list(k, ListKind::States, None)?,
        "tetrads": k.tetrads,
        "squares": squares,
    }))
}
