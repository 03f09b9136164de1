//! The twelve acceptance criteria, one PASS/FAIL line each. Each criterion
//! recomputes its claim with the independent arithmetic in `common` and
//! compares against the library and the embedded reference tables.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use kaleidoscope::apparitions::{color_search, color_search_exhaustive, parity_check, Kind};
use kaleidoscope::designs::qbd_profile;
use kaleidoscope::gaussian::GaussianInt;
use kaleidoscope::geometry::Tetrad;
use kaleidoscope::hexagon::{edge, HexVertex, MagicSquare, SquareId};
use kaleidoscope::pauli::{commutes, Letter, Observable};
use kaleidoscope::records::{self, ListKind};
use kaleidoscope::states::{eigenbasis, projective_equal, StateVec};
use kaleidoscope::transforms::{enumerate_symplectic, find_maps, lift_to_unitary};
use kaleidoscope::verify::{self, Scope};
use kaleidoscope::{Kaleidoscope, Label};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Vertices of the hexagon edge for an observable, as (qubit, axis).
fn hex_edge(o: &str) -> [(u8, char); 2] {
    let l: Vec<char> = o.chars().collect();
    let others = |a: char| -> Vec<char> { ['X', 'Y', 'Z'].into_iter().filter(|&c| c != a).collect() };
    match (l[0], l[1]) {
        (a, 'I') => {
            let v = others(a);
            [(1, v[0]), (1, v[1])]
        }
        ('I', b) => {
            let v = others(b);
            [(2, v[0]), (2, v[1])]
        }
        (a, b) => [(1, a), (2, b)],
    }
}

fn key(o: Observable) -> String {
    o.to_string()
}

fn sorted3(v: [String; 3]) -> [String; 3] {
    let mut v = v;
    v.sort();
    v
}

/// Every commuting triple of observables, by brute force.
fn brute_triads() -> Vec<([String; 3], i64)> {
    let obs = observables();
    let mut out = Vec::new();
    for i in 0..15 {
        for j in i + 1..15 {
            for k in j + 1..15 {
                let (a, b, c) = (&obs[i], &obs[j], &obs[k]);
                if commute(a, b) && commute(a, c) && commute(b, c) {
                    let sign = triple_sign(a, b, c).expect("commuting triple multiplies to ±I");
                    out.push((sorted3([a.clone(), b.clone(), c.clone()]), sign));
                }
            }
        }
    }
    out.sort();
    out
}

fn square_lines(s: &MagicSquare) -> Vec<[String; 3]> {
    let g = s.grid();
    let mut v: Vec<[String; 3]> = g.iter().map(|r| r.map(key)).collect();
    v.extend((0..3).map(|c| [key(g[0][c]), key(g[1][c]), key(g[2][c])]));
    v
}

/// Labels of the table rows whose triad is among `lines`.
fn states_of(g: &kaleidoscope::golden::Golden, lines: &[[String; 3]]) -> Vec<Label> {
    let want: BTreeSet<[String; 3]> = lines.iter().map(|l| sorted3(l.clone())).collect();
    let mut out = Vec::new();
    for (r, row) in g.eigenstates.iter().enumerate() {
        if want.contains(&sorted3(row.observables.map(key))) {
            out.extend((1..=4).map(|c| (4 * r + c) as Label));
        }
    }
    out.sort_unstable();
    out
}

fn c1_commutation(k: &Kaleidoscope) -> Outcome {
    let obs = observables();
    let mut exceptions = 0;
    let mut pairs = 0;
    for i in 0..15 {
        for j in i + 1..15 {
            pairs += 1;
            let (ea, eb) = (hex_edge(&obs[i]), hex_edge(&obs[j]));
            let disjoint = ea.iter().all(|v| !eb.contains(v));
            let lib = commutes(obs[i].parse().unwrap(), obs[j].parse().unwrap());
            if disjoint != commute(&obs[i], &obs[j]) || lib != disjoint {
                exceptions += 1;
            }
        }
    }
    // the library's edge labeling agrees with the one used here
    for (i, a) in HexVertex::all().iter().enumerate() {
        for b in &HexVertex::all()[i + 1..] {
            let o = key(edge(*a, *b));
            let mut got = hex_edge(&o).to_vec();
            got.sort();
            let mut want = vec![(a.qubit, a.axis.as_char()), (b.qubit, b.axis.as_char())];
            want.sort();
            ensure!(got == want, "edge {o} labeled differently");
        }
    }
    ensure!(pairs == 105 && exceptions == 0, "{exceptions} exceptions over {pairs} pairs");
    let _ = k;
    Ok(format!("{pairs} pairs, 0 exceptions"))
}

fn c2_triads(k: &Kaleidoscope) -> Outcome {
    let brute = brute_triads();
    let lib: Vec<([String; 3], i64)> =
        k.triads.iter().map(|t| (sorted3(t.members().map(key)), t.sign() as i64)).collect();
    let mut lib_sorted = lib.clone();
    lib_sorted.sort();
    ensure!(brute.len() == 15, "{} commuting triples", brute.len());
    ensure!(lib_sorted == brute, "library triads or signs differ from brute force");
    let negative: BTreeSet<[String; 3]> = brute.iter().filter(|(_, s)| *s < 0).map(|(t, _)| t.clone()).collect();
    let starred: BTreeSet<[String; 3]> =
        k.golden.eigenstates.iter().filter(|r| r.sign < 0).map(|r| sorted3(r.observables.map(key))).collect();
    ensure!(negative.len() == 3 && negative == starred, "negative {negative:?} vs starred {starred:?}");
    for o in observables() {
        let n = brute.iter().filter(|(t, _)| t.contains(&o)).count();
        ensure!(n == 3, "{o} in {n} triads");
    }
    Ok("15 triads, 3 negative (the starred rows), 3 per observable".into())
}

fn c3_squares(k: &Kaleidoscope) -> Outcome {
    ensure!(k.squares.len() == 10, "{} squares", k.squares.len());
    // the nine edges crossing each split of the hexagon into two triangles
    let verts: Vec<(u8, char)> = [(1, 'X'), (1, 'Y'), (1, 'Z'), (2, 'X'), (2, 'Y'), (2, 'Z')].to_vec();
    let mut crossing_sets = BTreeSet::new();
    for a in 1..6 {
        for b in a + 1..6 {
            let left = [verts[0], verts[a], verts[b]];
            let set: BTreeSet<String> = observables()
                .into_iter()
                .filter(|o| {
                    let e = hex_edge(o);
                    left.contains(&e[0]) != left.contains(&e[1])
                })
                .collect();
            crossing_sets.insert(set);
        }
    }
    let lib_sets: BTreeSet<BTreeSet<String>> =
        k.squares.iter().map(|s| s.observables().into_iter().map(key).collect()).collect();
    ensure!(crossing_sets.len() == 10 && lib_sets == crossing_sets, "squares are not the ten triangle complements");
    for (id, s) in SquareId::all().zip(&k.squares) {
        let lines = square_lines(s);
        let signs: Vec<i64> = lines
            .iter()
            .map(|l| {
                ensure!(commute(&l[0], &l[1]) && commute(&l[0], &l[2]) && commute(&l[1], &l[2]), "{id} line {l:?}");
                Ok(triple_sign(&l[0], &l[1], &l[2]).unwrap())
            })
            .collect::<Result<_, String>>()?;
        let minus = signs.iter().filter(|&&s| s < 0).count();
        ensure!(minus % 2 == 1, "{id} has {minus} negative lines");
        let cells: Vec<String> = s.grid().iter().flatten().map(|o| key(*o)).collect();
        let satisfying = (0u32..512)
            .filter(|bits| {
                let val = |o: &String| if bits >> cells.iter().position(|c| c == o).unwrap() & 1 == 1 { -1 } else { 1 };
                lines.iter().zip(&signs).all(|(l, s)| l.iter().map(val).product::<i64>() == *s)
            })
            .count();
        ensure!(satisfying == 0, "{id}: {satisfying} of 512 assignments satisfy the line signs");
    }
    let states: Vec<BTreeSet<Label>> =
        k.squares.iter().map(|s| states_of(&k.golden, &square_lines(s)).into_iter().collect()).collect();
    for i in 0..10 {
        for j in 0..10 {
            if i == j {
                continue;
            }
            let lines_j: BTreeSet<[String; 3]> = square_lines(&k.squares[j]).into_iter().map(sorted3).collect();
            let li = square_lines(&k.squares[i]);
            let rows = li[..3].iter().filter(|l| lines_j.contains(&sorted3((*l).clone()))).count();
            let cols = li[3..].iter().filter(|l| lines_j.contains(&sorted3((*l).clone()))).count();
            ensure!(rows == 1 && cols == 1, "S{} and S{} share {rows} rows and {cols} columns", i + 1, j + 1);
            let common = states[i].intersection(&states[j]).count();
            ensure!(common == 8, "S{} and S{} share {common} states", i + 1, j + 1);
        }
    }
    Ok("10 squares, each magic with 0 of 512 assignments; pairs share 1 row, 1 column, 8 states".into())
}

fn show(z: GaussianInt) -> String {
    match (z.re, z.im) {
        (r, 0) => r.to_string(),
        (0, 1) => "i".into(),
        (0, -1) => "-i".into(),
        (r, i) => format!("{r}{i:+}i"),
    }
}

fn c4_states(k: &Kaleidoscope) -> Outcome {
    let table = table_states(&k.golden);
    ensure!(table.len() == 60, "{} table states", table.len());
    for (r, row) in k.golden.eigenstates.iter().enumerate() {
        let names = row.observables.map(key);
        let mut sigs = BTreeSet::new();
        for c in 0..4 {
            let (label, v) = table[4 * r + c];
            let mut sig = Vec::new();
            for o in &names {
                let w = apply(&obs(o), &v);
                let e = [1i64, -1].into_iter().find(|&e| w == v.map(|z| mul(z, (e, 0))));
                ensure!(e.is_some(), "state {label} is not an eigenvector of {o}");
                sig.push(e.unwrap());
            }
            ensure!(sig.iter().product::<i64>() == row.sign as i64, "state {label} signature product");
            sigs.insert(sig);
            let text = format!("({})", row.states[c].map(show).join(","));
            ensure!(k.catalog.state(label).to_string() == text, "state {label}: {} vs {text}", k.catalog.state(label));
        }
        ensure!(sigs.len() == 4, "row {} signatures not unique", r + 1);
        // computed eigenbasis matches the row projectively
        let t = kaleidoscope::pauli::Triad::new(row.observables[0], row.observables[1], row.observables[2]).unwrap();
        for (computed, _) in eigenbasis(&t).map_err(|e| e.to_string())? {
            let hits = (0..4)
                .filter(|&c| projective_equal(&computed, &StateVec::new(row.states[c]).unwrap()))
                .count();
            ensure!(hits == 1, "computed state {computed} matches {hits} table entries in row {}", r + 1);
        }
    }
    for i in 0..60 {
        for j in i + 1..60 {
            let (a, b) = (&table[i].1, &table[j].1);
            ensure!(norm(ip(a, b)) != norm_sq(a) * norm_sq(b), "states {} and {} coincide", i + 1, j + 1);
        }
    }
    Ok("60 states match the table exactly; signatures unique per row; starred products -1".into())
}

fn c5_tetrads(k: &Kaleidoscope) -> Outcome {
    let table = table_states(&k.golden);
    let brute = brute_tetrads(&table);
    let lib: Vec<[Label; 4]> = k.tetrads.iter().map(|t| t.0).collect();
    let mut golden = k.golden.all_tetrads.clone();
    golden.iter_mut().for_each(|t| t.sort_unstable());
    golden.sort_unstable();
    ensure!(brute.len() == 105, "{} tetrads by brute force", brute.len());
    ensure!(lib == brute && golden == brute, "library or reference tetrads differ from brute force");
    let labels: Vec<Label> = (1..=60).collect();
    for l in &labels {
        let n = brute.iter().filter(|t| t.contains(l)).count();
        ensure!(n == 7, "state {l} in {n} tetrads");
    }
    let blocks: Vec<Vec<Label>> = brute.iter().map(|t| t.to_vec()).collect();
    let profile = co_occurrence(&labels, &blocks);
    ensure!(profile == Some(vec![(1, 12), (3, 3)]), "profile {profile:?}");
    Ok("105 tetrads, 7 per state, profile (1,12),(3,3); a co-occurrence count of nine does not arise".into())
}

type LineSet = BTreeSet<[Label; 3]>;

fn oracle_lines(states: &BTreeMap<Label, V4>, pts: &[Label]) -> LineSet {
    let mut out = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for l in j + 1..pts.len() {
                let (a, b, c) = (pts[i], pts[j], pts[l]);
                if collinear(&states[&a], &states[&b], &states[&c]) {
                    out.insert([a, b, c]);
                }
            }
        }
    }
    out
}

fn c6_reye(k: &Kaleidoscope) -> Outcome {
    let states: BTreeMap<Label, V4> = table_states(&k.golden).into_iter().collect();
    let orth = |a: Label, b: Label| ip(&states[&a], &states[&b]) == ZERO;
    for (id, s) in SquareId::all().zip(&k.squares) {
        let lines = square_lines(s);
        let rows = states_of(&k.golden, &lines[..3]);
        let cols = states_of(&k.golden, &lines[3..]);
        let (la, lb) = (oracle_lines(&states, &rows), oracle_lines(&states, &cols));
        for (pts, ls) in [(&rows, &la), (&cols, &lb)] {
            ensure!(pts.len() == 12 && ls.len() == 16, "{id}: {} points, {} lines", pts.len(), ls.len());
            for p in pts.iter() {
                let n = ls.iter().filter(|l| l.contains(p)).count();
                ensure!(n == 4, "{id}: point {p} on {n} lines");
            }
        }
        let mut pairs = BTreeSet::new();
        for a in &la {
            let partners: Vec<&[Label; 3]> =
                lb.iter().filter(|b| a.iter().all(|&p| b.iter().all(|&q| orth(p, q)))).collect();
            ensure!(partners.len() == 1, "{id}: line {a:?} has {} partners", partners.len());
            pairs.insert((*a, *partners[0]));
        }
        let images: BTreeSet<[Label; 3]> = pairs.iter().map(|p| p.1).collect();
        ensure!(pairs.len() == 16 && images.len() == 16, "{id}: pairing is not a bijection");
        let g = k.geometry(id);
        let lib: BTreeSet<([Label; 3], [Label; 3])> = g.pairing.pairs.iter().map(|(a, b)| (a.0, b.0)).collect();
        ensure!(lib == pairs, "{id}: library pairing differs");
        if id.number() == 1 {
            let sort3 = |mut l: [Label; 3]| {
                l.sort_unstable();
                l
            };
            let reference: BTreeSet<([Label; 3], [Label; 3])> =
                k.golden.s1_partner_lines.iter().map(|&(a, b)| (sort3(a), sort3(b))).collect();
            ensure!(reference == pairs, "S1 pairing differs from the reference arrows");
        }
    }
    Ok("every square: two 12-point/16-line configurations, 16-pair partner bijection; S1 equals the reference".into())
}

fn c7_apparitions(k: &Kaleidoscope) -> Outcome {
    let ids: Vec<SquareId> = SquareId::all().collect();
    let all = k.apparitions(&ids).map_err(|e| e.to_string())?;
    ensure!(all.len() == 1120, "{} apparitions", all.len());
    for id in &ids {
        let n18 = all.iter().filter(|a| a.square == *id && a.kind == Kind::Eighteen).count();
        let n20 = all.iter().filter(|a| a.square == *id && a.kind == Kind::Twenty).count();
        ensure!((n18, n20) == (16, 96), "{id}: {n18} and {n20}");
    }
    let distinct: BTreeSet<&Vec<Tetrad>> = all.iter().map(|a| &a.tetrads).collect();
    ensure!(distinct.len() == 1120, "{} distinct", distinct.len());
    for a in &all {
        let mut mult = BTreeMap::<Label, usize>::new();
        for t in &a.tetrads {
            for &l in &t.0 {
                *mult.entry(l).or_default() += 1;
            }
        }
        let mut counts: Vec<usize> = mult.values().copied().collect();
        counts.sort_unstable();
        let want = match a.kind {
            Kind::Eighteen => (9, vec![2; 18]),
            Kind::Twenty => (11, [vec![2; 18], vec![4; 2]].concat()),
        };
        ensure!((a.tetrads.len(), counts) == want, "{} {:?} has the wrong shape", a.square, a.excluded);
        ensure!(parity_check(&a.tetrads), "{} {:?} fails the parity check", a.square, a.excluded);
        let states: Vec<Label> = mult.keys().copied().collect();
        let n = color_search_exhaustive(&states, &a.tetrads);
        ensure!(n == 0, "{} {:?} has {n} colorings", a.square, a.excluded);
    }
    let labels: Vec<Label> = (1..=60).collect();
    let full = color_search(&labels, &k.tetrads);
    ensure!(full == 0, "{full} colorings of the full system");
    Ok("1120 distinct apparitions (16 + 96 per square), all parity proofs, none colorable; full system 0".into())
}

fn c8_point_triangles(k: &Kaleidoscope) -> Outcome {
    let states: BTreeMap<Label, V4> = table_states(&k.golden).into_iter().collect();
    let s = |l: Label| &states[&l];
    let configs: [Vec<Label>; 2] = [(1..=12).collect(), (13..=24).collect()];
    let mut table = BTreeMap::<Label, BTreeSet<[Label; 3]>>::new();
    for p in 1..=24u8 {
        let other = &configs[if p <= 12 { 1 } else { 0 }];
        let mut tris = BTreeSet::new();
        for i in 0..12 {
            for j in i + 1..12 {
                for l in j + 1..12 {
                    let t = [other[i], other[j], other[l]];
                    let tri = half(s(t[0]), s(t[1])) && half(s(t[0]), s(t[2])) && half(s(t[1]), s(t[2]));
                    let line = collinear(s(t[0]), s(t[1]), s(t[2]));
                    if tri && !line && t.iter().all(|&q| ip(s(p), s(q)) == ZERO) {
                        tris.insert(t);
                    }
                }
            }
        }
        table.insert(p, tris);
    }
    let reference: BTreeMap<Label, BTreeSet<[Label; 3]>> = k
        .golden
        .s1_point_triangles
        .iter()
        .map(|(p, ts)| {
            let set = ts
                .iter()
                .map(|t| {
                    let mut t = *t;
                    t.sort_unstable();
                    t
                })
                .collect();
            (*p, set)
        })
        .collect();
    ensure!(table.len() == 24 && table == reference, "computed point/triangle table differs from the reference");
    let lib: BTreeMap<Label, BTreeSet<[Label; 3]>> = k.geometries[0]
        .point_triangles(&k.catalog)
        .into_iter()
        .map(|(p, ts)| (p, ts.into_iter().map(|t| t.0).collect()))
        .collect();
    ensure!(lib == table, "library table differs");
    Ok("24 points x 4 triangles, identical to the reference table".into())
}

fn c9_relabelings(k: &Kaleidoscope) -> Outcome {
    let table = table_states(&k.golden);
    let mut s1: Vec<[Label; 4]> = k.golden.s1_tetrads.clone();
    s1.iter_mut().for_each(|t| t.sort_unstable());
    for (col, id) in SquareId::all().enumerate().skip(1) {
        let map: BTreeMap<Label, Label> = k.golden.relabelings.iter().map(|(l, imgs)| (*l, imgs[col - 1])).collect();
        let image: BTreeSet<Label> = map.values().copied().collect();
        let target: Vec<Label> = states_of(&k.golden, &square_lines(k.square(id)));
        ensure!(image.len() == 24 && image.iter().copied().eq(target.iter().copied()), "{id}: image is not the square's states");
        let fixed = map.iter().filter(|(a, b)| a == b).count();
        ensure!(fixed == 8, "{id}: {fixed} fixed states");
        let sub: Vec<(Label, V4)> = table.iter().filter(|(l, _)| target.contains(l)).cloned().collect();
        let want = brute_tetrads(&sub);
        let mut got: Vec<[Label; 4]> = s1
            .iter()
            .map(|t| {
                let mut m = t.map(|l| map[&l]);
                m.sort_unstable();
                m
            })
            .collect();
        got.sort_unstable();
        ensure!(got == want, "{id}: mapped tetrads differ from the square's own");
    }
    ensure!(k.golden.relabel(SquareId::new(6).unwrap(), 1) == Some(37), "S6 image of state 1");
    Ok("9 relabeling columns carry S1's 24 tetrads onto each target's, 8 fixed states each".into())
}

fn unbiased_rows(a: &[V4], b: &[V4]) -> bool {
    a.iter().all(|x| b.iter().all(|y| half(x, y)))
}

fn c10_designs(k: &Kaleidoscope) -> Outcome {
    let check = |name: &str, v: usize, blocks: &[Vec<Label>], want: (usize, usize, usize, usize, Vec<(usize, usize)>)| -> Result<(), String> {
        let points: Vec<Label> = blocks.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let b = blocks.len();
        let kk = blocks[0].len();
        let r = b * kk / v;
        let prof = co_occurrence(&points, blocks).ok_or(format!("{name}: irregular"))?;
        let got = (b, points.len(), r, kk, prof.clone());
        ensure!(got == want, "{name}: {got:?}");
        ensure!(b * kk == v * r && r * (kk - 1) == prof.iter().map(|(l, x)| l * x).sum::<usize>(), "{name}: identities");
        let lib = qbd_profile(&points, blocks).map_err(|e| e.to_string())?;
        ensure!((lib.b, lib.v, lib.r, lib.k, lib.pairs.clone()) == got, "{name}: library symbol {lib}");
        Ok(())
    };
    let obs = observables();
    let idx = |o: &str| obs.iter().position(|x| x == o).unwrap() as Label;
    let triads: Vec<Vec<Label>> = brute_triads().iter().map(|(t, _)| t.iter().map(|o| idx(o)).collect()).collect();
    check("observables", 15, &triads, (15, 15, 3, 3, vec![(1, 6)]))?;
    let s1: Vec<Vec<Label>> = k.golden.s1_tetrads.iter().map(|t| t.to_vec()).collect();
    check("S1", 24, &s1, (24, 24, 4, 4, vec![(1, 6), (2, 3)]))?;
    let all: Vec<Vec<Label>> = brute_tetrads(&table_states(&k.golden)).iter().map(|t| t.to_vec()).collect();
    check("all", 60, &all, (105, 60, 7, 4, vec![(1, 12), (3, 3)]))?;
    let triad_ids: Vec<[String; 3]> = brute_triads().into_iter().map(|(t, _)| t).collect();
    let tid = |t: &[String; 3]| triad_ids.iter().position(|x| x == t).unwrap() as Label;
    let mub: Vec<Vec<Label>> = k
        .golden
        .mub_sets
        .iter()
        .map(|s| s.iter().map(|t| tid(&sorted3(t.members().map(key)))).collect())
        .collect();
    check("mub", 15, &mub, (6, 15, 2, 5, vec![(1, 8)]))?;

    let states: BTreeMap<Label, V4> = table_states(&k.golden).into_iter().collect();
    let basis = |t: &[String; 3]| -> Vec<V4> {
        let r = k.golden.eigenstates.iter().position(|row| sorted3(row.observables.map(key)) == *t).unwrap();
        (1..=4).map(|c| states[&((4 * r + c) as Label)]).collect()
    };
    for (i, set) in k.golden.mub_sets.iter().enumerate() {
        let bases: Vec<Vec<V4>> = set.iter().map(|t| basis(&sorted3(t.members().map(key)))).collect();
        for a in 0..5 {
            for b in a + 1..5 {
                ensure!(unbiased_rows(&bases[a], &bases[b]), "set {} pair {a},{b} is biased", i + 1);
            }
        }
        let extendable = triad_ids.iter().any(|t| bases.iter().all(|b| unbiased_rows(&basis(t), b)));
        ensure!(!extendable, "set {} is not maximal", i + 1);
    }
    for (id, s) in SquareId::all().zip(&k.squares) {
        let lines = square_lines(s);
        let bs: Vec<Vec<V4>> = lines.iter().map(|l| basis(&sorted3(l.clone()))).collect();
        for a in 0..6 {
            for b in a + 1..6 {
                let same_kind = (a < 3) == (b < 3);
                ensure!(unbiased_rows(&bs[a], &bs[b]) == same_kind, "{id}: lines {a},{b}");
            }
        }
    }
    Ok("{15,15,3,3;(1,6)} {24,24,4,4;(1,6),(2,3)} {105,60,7,4;(1,12),(3,3)} {6,15,2,5;(1,8)}; six maximal MUB sets; square lines as claimed".into())
}

fn letter_map(perm: &[Letter; 3], c: char) -> char {
    match c {
        'X' => perm[0].as_char(),
        'Y' => perm[1].as_char(),
        'Z' => perm[2].as_char(),
        other => other,
    }
}

/// `(x1, z1, x2, z2)` of an observable string.
fn bits(o: &str) -> u8 {
    let b = |c: char| match c {
        'I' => 0,
        'X' => 2,
        'Z' => 1,
        _ => 3,
    };
    let l: Vec<char> = o.chars().collect();
    b(l[0]) << 2 | b(l[1])
}

fn apply_rows(rows: &[u8; 4], v: u8) -> u8 {
    (0..4).fold(0, |acc, i| acc | ((((rows[i] & v).count_ones() & 1) as u8) << (3 - i)))
}

fn c11_transforms(k: &Kaleidoscope) -> Outcome {
    let s1: BTreeSet<String> = k.squares[0].observables().into_iter().map(key).collect();
    for row in &k.golden.local_maps {
        let image: BTreeSet<String> = s1
            .iter()
            .map(|o| {
                let l: Vec<char> = o.chars().collect();
                format!("{}{}", letter_map(&row.first, l[0]), letter_map(&row.second, l[1]))
            })
            .collect();
        let target: BTreeSet<String> = k.square(row.target).observables().into_iter().map(key).collect();
        ensure!(image == target, "local map to {} lands elsewhere", row.target);
    }
    let obs = observables();
    let obits: Vec<u8> = obs.iter().map(|o| bits(o)).collect();
    let comm: Vec<Vec<bool>> = obs.iter().map(|a| obs.iter().map(|b| commute(a, b)).collect()).collect();
    let mut group = Vec::new();
    for m in 0u32..1 << 16 {
        let rows = [(m >> 12) as u8 & 15, (m >> 8) as u8 & 15, (m >> 4) as u8 & 15, m as u8 & 15];
        let img: Vec<u8> = obits.iter().map(|&v| apply_rows(&rows, v)).collect();
        if img.contains(&0) || img.iter().collect::<BTreeSet<_>>().len() != 15 {
            continue;
        }
        let pos = |v: u8| obits.iter().position(|&b| b == v).unwrap();
        let keeps = (0..15).all(|i| (0..15).all(|j| comm[pos(img[i])][pos(img[j])] == comm[i][j]));
        if keeps {
            group.push(rows);
        }
    }
    let local = |r: &[u8; 4]| r[0] & 3 == 0 && r[1] & 3 == 0 && r[2] & 12 == 0 && r[3] & 12 == 0;
    let n_local = group.iter().filter(|r| local(r)).count();
    ensure!(group.len() == 720 && n_local == 36, "{} maps, {n_local} local", group.len());
    let lib: Vec<[u8; 4]> = enumerate_symplectic()
        .iter()
        .map(|m| m.rows().map(|r| r.iter().fold(0u8, |a, b| a << 1 | b)))
        .collect();
    ensure!(lib == group, "library group differs");

    let s6: BTreeSet<u8> = k.squares[5].observables().into_iter().map(|o| bits(&key(o))).collect();
    let s1b: Vec<u8> = s1.iter().map(|o| bits(o)).collect();
    let to_s6: Vec<&[u8; 4]> = group.iter().filter(|r| s1b.iter().all(|&v| s6.contains(&apply_rows(r, v)))).collect();
    ensure!(!to_s6.is_empty() && to_s6.iter().all(|r| !local(r)), "{} maps to S6", to_s6.len());
    let lib_s6 = find_maps(&enumerate_symplectic(), &k.squares[0], &k.squares[5]);
    ensure!(lib_s6.len() == to_s6.len() && lib_s6.iter().all(|f| !f.local), "library S6 maps differ");

    // U·O·U† = ±m(O), checked on D·U with D clearing denominators
    for m in enumerate_symplectic() {
        let lift = lift_to_unitary(&m).map_err(|e| e.to_string())?;
        let d = lift.unitary.0.iter().flatten().fold(1i64, |acc, e| {
            let g = gcd(acc, e.den);
            acc / g * e.den
        });
        let w: M4 = lift.unitary.0.map(|r| r.map(|e| (e.num.re * (d / e.den), e.num.im * (d / e.den))));
        let wd: M4 = std::array::from_fn(|i| std::array::from_fn(|j| conj(w[j][i])));
        let d2 = (d * d, 0);
        ensure!(matmul(&w, &wd) == scaled(&identity(), d2), "lift of {m} is not unitary");
        for o in &obs {
            let img = m.apply(o.parse().unwrap()).unwrap();
            let lhs = matmul(&matmul(&w, &obs_matrix(o)), &wd);
            let rhs = scaled(&obs_matrix(&key(img)), d2);
            ensure!(lhs == rhs || lhs == scaled(&rhs, (-1, 0)), "lift of {m} on {o}");
        }
    }
    Ok(format!("8 local maps land correctly; 720 maps, 36 local; {} S1->S6 maps, none local; all lifts exact", to_s6.len()))
}

fn obs_matrix(o: &str) -> M4 {
    obs(o)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn c12_properties(k: &Kaleidoscope) -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 256, failure_persistence: None, ..Config::default() });
    let system = (4u8..=16).prop_flat_map(|n| {
        let t = proptest::sample::subsequence((1..=n).collect::<Vec<Label>>(), 4).prop_map(|v| Tetrad([v[0], v[1], v[2], v[3]]));
        (Just((1..=n).collect::<Vec<Label>>()), proptest::collection::vec(t, 1..9))
    });
    runner
        .run(&system, |(states, tetrads)| {
            if parity_check(&tetrads) {
                prop_assert_eq!(color_search(&states, &tetrads), 0);
            }
            Ok(())
        })
        .map_err(|e| format!("parity soundness: {e}"))?;
    let vec4 = proptest::array::uniform4((-5i64..=5, -5i64..=5));
    let unit = prop_oneof![Just((1i64, 0i64)), Just((0, 1)), Just((-1, 0)), Just((0, -1))];
    runner
        .run(&(vec4, unit, 1i64..4), |(c, u, s)| {
            let Some(v) = StateVec::new(c.map(|(a, b)| GaussianInt::new(a, b))) else {
                return Ok(());
            };
            let canon = v.canonical();
            prop_assert_eq!(canon.canonical(), canon.clone());
            prop_assert!(projective_equal(&v, &canon));
            let scale = GaussianInt::new(u.0 * s, u.1 * s);
            let w = StateVec::new(v.coords().map(|z| z * scale)).unwrap();
            prop_assert!(projective_equal(&v, &w) && projective_equal(&w, &v));
            prop_assert_eq!(w.canonical(), canon);
            Ok(())
        })
        .map_err(|e| format!("canonical form: {e}"))?;
    let again = Kaleidoscope::new().map_err(|e| e.to_string())?;
    for kind in [ListKind::States, ListKind::Squares, ListKind::Tetrads, ListKind::Lines] {
        ensure!(
            records::list(k, kind, None).unwrap() == records::list(&again, kind, None).unwrap(),
            "{kind:?} listing differs between runs"
        );
    }
    let s1 = [SquareId::new(1).unwrap()];
    ensure!(records::apparitions(k, &s1, None, false).unwrap() == records::apparitions(&again, &s1, None, false).unwrap(), "apparitions differ");
    let (a, b) = (verify::run(Scope::Designs, k.golden.clone()), verify::run(Scope::Designs, k.golden.clone()));
    ensure!(a.content() == b.content(), "verification report differs between runs");
    Ok("parity soundness, canonical idempotence, projective consistency (256 cases each); repeated runs identical".into())
}

fn main() -> ExitCode {
    let k = match Kaleidoscope::new() {
        Ok(k) => k,
        Err(e) => {
            println!("FAIL  build: {e}");
            return ExitCode::FAILURE;
        }
    };
    let criteria: [(&str, fn(&Kaleidoscope) -> Outcome); 12] = [
        ("commutation rule", c1_commutation),
        ("triads", c2_triads),
        ("squares", c3_squares),
        ("states", c4_states),
        ("tetrads", c5_tetrads),
        ("reye structure", c6_reye),
        ("apparitions", c7_apparitions),
        ("point/triangle table", c8_point_triangles),
        ("relabeling table", c9_relabelings),
        ("designs", c10_designs),
        ("transforms", c11_transforms),
        ("property suite", c12_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&k))).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
