//! Verification suites behind the `verify` command.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::apparitions::{color_search, color_search_exhaustive, parity_check, Apparition, Kind};
use crate::designs::{qbd_profile, square_mub_relations, verify_mub_sets, QbdSymbol};
use crate::error::{Error, Result};
use crate::geometry::{Line, Tetrad, Triangle};
use crate::golden::Golden;
use crate::hexagon::{edge, enumerate_triangle_partitions, verify_magic, HexVertex, SquareId};
use crate::matrix::IntMat;
use crate::pauli::{commutes, Observable};
use crate::states::eigenbasis;
use crate::transforms::{
    apply_local_map, apply_relabeling, enumerate_symplectic, find_maps, lift_to_unitary, realizations, LocalMap,
    SymplecticMap,
};
use crate::{Kaleidoscope, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scope {
    All,
    Observables,
    Squares,
    States,
    Reye,
    Apparitions,
    Designs,
    Transforms,
}

impl Scope {
    pub const ALL: [Scope; 8] = [
        Scope::All,
        Scope::Observables,
        Scope::Squares,
        Scope::States,
        Scope::Reye,
        Scope::Apparitions,
        Scope::Designs,
        Scope::Transforms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Observables => "observables",
            Scope::Squares => "squares",
            Scope::States => "states",
            Scope::Reye => "reye",
            Scope::Apparitions => "apparitions",
            Scope::Designs => "designs",
            Scope::Transforms => "transforms",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Scope::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| format!("unknown scope {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A finding that is reported but not asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Note {
    pub name: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<Note>,
    pub counts: BTreeMap<String, usize>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn new(scope: Scope) -> Self {
        VerificationReport {
            suite: scope.name().to_string(),
            passed: true,
            checks: Vec::new(),
            notes: Vec::new(),
            counts: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.passed &= pass;
        self.checks.push(Check { name: name.to_string(), pass, detail: detail.into() });
    }

    /// Records `r` as a check, with any error as the failure detail.
    fn attempt(&mut self, name: &str, r: Result<(bool, String)>) {
        match r {
            Ok((pass, detail)) => self.check(name, pass, detail),
            Err(e) => self.check(name, false, e.to_string()),
        }
    }

    fn note(&mut self, name: &str, detail: impl Into<String>) {
        self.notes.push(Note { name: name.to_string(), detail: detail.into() });
    }

    fn count(&mut self, name: &str, n: usize) {
        self.counts.insert(name.to_string(), n);
    }

    /// Everything except the timing, for comparing runs.
    pub fn content(&self) -> (bool, &[Check], &[Note], &BTreeMap<String, usize>) {
        (self.passed, &self.checks, &self.notes, &self.counts)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out += &format!("[{}] {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        for n in &self.notes {
            out += &format!("[NOTE] {}: {}\n", n.name, n.detail);
        }
        let counts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if !counts.is_empty() {
            out += &format!("counts: {}\n", counts.join(" "));
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out += &format!(
            "{}: {} checks, {} failed, {} ms\n",
            self.suite,
            self.checks.len(),
            failed,
            self.elapsed_ms
        );
        out
    }
}

/// Builds everything from `golden` and runs the suites in `scope`. A
/// table that fails to build is reported as a failed check.
pub fn run(scope: Scope, golden: Golden) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new(scope);
    match Kaleidoscope::from_golden(golden) {
        Err(e) => r.check("build", false, e.to_string()),
        Ok(k) => {
            r.check("build", true, "reference tables parsed and reproduced");
            run_on(scope, &k, &mut r);
        }
    }
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r
}

fn run_on(scope: Scope, k: &Kaleidoscope, r: &mut VerificationReport) {
    let suites: [(Scope, fn(&Kaleidoscope, &mut VerificationReport)); 7] = [
        (Scope::Observables, observables),
        (Scope::Squares, squares),
        (Scope::States, states),
        (Scope::Reye, reye),
        (Scope::Apparitions, apparitions),
        (Scope::Designs, designs),
        (Scope::Transforms, transforms),
    ];
    for (s, f) in suites {
        if scope == Scope::All || scope == s {
            f(k, r);
        }
    }
}

fn fail_list<T: fmt::Debug>(bad: &[T]) -> String {
    match bad.len() {
        0 => String::new(),
        n if n <= 3 => format!("; failures: {bad:?}"),
        n => format!("; {n} failures, first {:?}", &bad[..3]),
    }
}

fn observables(k: &Kaleidoscope, r: &mut VerificationReport) {
    let all = Observable::all();
    r.count("observables", all.len());
    let v = HexVertex::all();
    let mut edges: BTreeMap<Observable, [HexVertex; 2]> = BTreeMap::new();
    for i in 0..6 {
        for j in i + 1..6 {
            edges.insert(edge(v[i], v[j]), [v[i], v[j]]);
        }
    }
    let mut pairs = 0;
    let mut bad = Vec::new();
    for (i, &a) in all.iter().enumerate() {
        for &b in &all[i + 1..] {
            pairs += 1;
            let disjoint = edges[&a].iter().all(|x| !edges[&b].contains(x));
            let (ma, mb) = (a.matrix(), b.matrix());
            let matrix_commute = ma * mb == mb * ma;
            if commutes(a, b) != disjoint || commutes(a, b) != matrix_commute {
                bad.push((a, b));
            }
        }
    }
    r.check(
        "observables.commutation_rule",
        edges.len() == 15 && pairs == 105 && bad.is_empty(),
        format!("{} edges, {pairs} pairs, {} exceptions{}", edges.len(), bad.len(), fail_list(&bad)),
    );

    let triads = &k.triads;
    r.count("triads", triads.len());
    let per_obs: BTreeSet<usize> = all.iter().map(|o| triads.iter().filter(|t| t.contains(*o)).count()).collect();
    r.check(
        "triads.count",
        triads.len() == 15 && per_obs == BTreeSet::from([3]),
        format!("{} triads; triads per observable {per_obs:?}", triads.len()),
    );
    let id = IntMat::identity();
    let sign_bad: Vec<String> = triads
        .iter()
        .filter(|t| {
            let [a, b, c] = t.members().map(|o| o.matrix());
            let p = a * b * c;
            p != if t.sign() > 0 { id } else { -id }
        })
        .map(|t| t.to_string())
        .collect();
    let negative: BTreeSet<String> = triads.iter().filter(|t| t.sign() < 0).map(|t| t.to_string()).collect();
    let starred: BTreeSet<String> = k
        .golden
        .eigenstates
        .iter()
        .filter(|row| row.sign < 0)
        .filter_map(|row| {
            let [a, b, c] = row.observables;
            crate::pauli::Triad::new(a, b, c).map(|t| t.to_string())
        })
        .collect();
    r.check(
        "triads.signs",
        sign_bad.is_empty() && negative.len() == 3 && negative == starred,
        format!("negative {:?}; starred table rows {:?}{}", negative, starred, fail_list(&sign_bad)),
    );
    let blocks: Vec<Vec<Observable>> = triads.iter().map(|t| t.members().to_vec()).collect();
    symbol_check(r, "triads.design", qbd_profile(&all, &blocks), QbdSymbol::new(15, 15, 3, 3, &[(1, 6)]));
}

fn symbol_check(r: &mut VerificationReport, name: &str, got: Result<QbdSymbol>, want: QbdSymbol) {
    r.attempt(name, got.map(|s| (s == want, format!("{s}, expected {want}"))));
}

fn squares(k: &Kaleidoscope, r: &mut VerificationReport) {
    r.count("squares", k.squares.len());
    let distinct: BTreeSet<_> = k.squares.iter().map(|s| s.observables()).collect();
    r.check(
        "squares.count",
        enumerate_triangle_partitions().len() == 10 && k.squares.len() == 10 && distinct.len() == 10,
        format!("{} partitions, {} distinct squares", enumerate_triangle_partitions().len(), distinct.len()),
    );
    let mut bad = Vec::new();
    let mut profile = Vec::new();
    for (id, s) in SquareId::all().zip(&k.squares) {
        let m = verify_magic(s);
        let minus = s.line_signs().iter().filter(|&&x| x < 0).count();
        profile.push(minus);
        if !m.odd_minus_count || m.satisfying_assignments != 0 {
            bad.push(id);
        }
    }
    r.check(
        "squares.magic",
        bad.is_empty(),
        format!("negative lines per square {profile:?}; 0 of 512 sign assignments satisfy each{}", fail_list(&bad)),
    );
    let mut line_bad = Vec::new();
    let mut state_bad = Vec::new();
    let states: Vec<BTreeSet<Label>> = k.geometries.iter().map(|g| g.states.all().into_iter().collect()).collect();
    for i in 0..10 {
        for j in 0..10 {
            if i == j {
                continue;
            }
            let (a, b) = (&k.squares[i], &k.squares[j]);
            let lines_b = b.lines();
            let rows = a.rows().iter().filter(|t| lines_b.contains(t)).count();
            let cols = a.columns().iter().filter(|t| lines_b.contains(t)).count();
            if rows != 1 || cols != 1 {
                line_bad.push((i + 1, j + 1));
            }
            if states[i].intersection(&states[j]).count() != 8 {
                state_bad.push((i + 1, j + 1));
            }
        }
    }
    r.check(
        "squares.shared_lines",
        line_bad.is_empty(),
        format!("every pair shares exactly one row and one column triad{}", fail_list(&line_bad)),
    );
    r.check(
        "squares.shared_states",
        state_bad.is_empty(),
        format!("every pair shares exactly 8 states{}", fail_list(&state_bad)),
    );
}

fn states(k: &Kaleidoscope, r: &mut VerificationReport) {
    r.count("states", k.catalog.len());
    let mut mismatched = Vec::new();
    for (i, row) in k.golden.eigenstates.iter().enumerate() {
        let Some(t) = crate::pauli::Triad::new(row.observables[0], row.observables[1], row.observables[2]) else {
            mismatched.push(format!("row {}", i + 1));
            continue;
        };
        match eigenbasis(&t) {
            Ok(basis) => {
                // table entries as written, against computed canonical forms
                let table: BTreeSet<String> = row
                    .states
                    .iter()
                    .map(|c| c.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                let computed: BTreeSet<String> = basis
                    .iter()
                    .map(|(v, _)| v.coords().iter().map(|z| z.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                if table != computed {
                    mismatched.push(format!("row {} {t}", i + 1));
                }
            }
            Err(e) => mismatched.push(e.to_string()),
        }
    }
    r.check(
        "states.table",
        k.catalog.len() == 60 && mismatched.is_empty(),
        format!("{} states; computed canonical forms identical to the table{}", k.catalog.len(), fail_list(&mismatched)),
    );
    let mut bad = Vec::new();
    for (t, labels) in k.catalog.rows() {
        let sigs: BTreeSet<_> = labels.iter().map(|&l| k.catalog.signature(l).0).collect();
        let products_ok = labels.iter().all(|&l| k.catalog.signature(l).product() == t.sign());
        let orthogonal = labels.iter().all(|&a| labels.iter().all(|&b| a == b || k.catalog.orthogonal(a, b)));
        if sigs.len() != 4 || !products_ok || !orthogonal {
            bad.push(t.to_string());
        }
    }
    r.check(
        "states.signatures",
        bad.is_empty(),
        format!("signatures distinct within each row, products equal the triad sign{}", fail_list(&bad)),
    );
}

fn tetrad_set(v: &[[Label; 4]]) -> BTreeSet<Tetrad> {
    v.iter()
        .map(|t| {
            let mut t = *t;
            t.sort_unstable();
            Tetrad(t)
        })
        .collect()
}

fn reye(k: &Kaleidoscope, r: &mut VerificationReport) {
    let computed: BTreeSet<Tetrad> = k.tetrads.iter().copied().collect();
    r.count("tetrads", k.tetrads.len());
    r.check(
        "tetrads.count",
        k.tetrads.len() == 105 && computed == tetrad_set(&k.golden.all_tetrads),
        format!("{} tetrads over {} states; equal to the reference list: {}", k.tetrads.len(), k.catalog.len(), computed == tetrad_set(&k.golden.all_tetrads)),
    );
    let labels: Vec<Label> = k.catalog.labels().collect();
    let blocks: Vec<Vec<Label>> = k.tetrads.iter().map(|t| t.0.to_vec()).collect();
    let all_sym = qbd_profile(&labels, &blocks);
    if let Ok(s) = &all_sym {
        let partners: usize = s.pairs.iter().map(|p| p.1).sum();
        r.note("tetrads.co_occurrence", format!("each state shares a tetrad with {partners} others; profile {:?}", s.pairs));
    }
    symbol_check(r, "tetrads.design", all_sym, QbdSymbol::new(105, 60, 7, 4, &[(1, 12), (3, 3)]));

    let want24 = QbdSymbol::new(24, 24, 4, 4, &[(1, 6), (2, 3)]);
    let mut bad = Vec::new();
    for (id, g) in SquareId::all().zip(&k.geometries) {
        let blocks: Vec<Vec<Label>> = g.tetrads.iter().map(|t| t.0.to_vec()).collect();
        match qbd_profile(&g.states.all(), &blocks) {
            Ok(s) if s == want24 => {}
            Ok(s) => bad.push(format!("{id}: {s}")),
            Err(e) => bad.push(format!("{id}: {e}")),
        }
    }
    r.check("squares.tetrads", bad.is_empty(), format!("every square has 24 tetrads forming {want24}{}", fail_list(&bad)));
    let s1: BTreeSet<Tetrad> = k.geometries[0].tetrads.iter().copied().collect();
    r.check("squares.s1_tetrads", s1 == tetrad_set(&k.golden.s1_tetrads), "S1 tetrads equal the reference list");

    let mut bad = Vec::new();
    for (id, g) in SquareId::all().zip(&k.geometries) {
        for c in [&g.row_config, &g.column_config] {
            let per_point: BTreeSet<usize> =
                c.points.iter().map(|p| c.lines.iter().filter(|l| l.0.contains(p)).count()).collect();
            if c.points.len() != 12 || c.lines.len() != 16 || per_point != BTreeSet::from([4]) {
                bad.push(id);
            }
        }
        let left: BTreeSet<Line> = g.pairing.pairs.iter().map(|p| p.0).collect();
        let right: BTreeSet<Line> = g.pairing.pairs.iter().map(|p| p.1).collect();
        if g.pairing.pairs.len() != 16 || left.len() != 16 || right.len() != 16 {
            bad.push(id);
        }
    }
    r.check(
        "reye.configurations",
        bad.is_empty(),
        format!("each square: two 12-point, 16-line configurations (3 points per line, 4 lines per point) and a 16-pair partner bijection{}", fail_list(&bad)),
    );
    let line = |l: [Label; 3]| {
        let mut l = l;
        l.sort_unstable();
        Line(l)
    };
    let want: BTreeSet<(Line, Line)> = k.golden.s1_partner_lines.iter().map(|&(a, b)| (line(a), line(b))).collect();
    let got: BTreeSet<(Line, Line)> = k.geometries[0].pairing.pairs.iter().copied().collect();
    r.check("reye.s1_partners", got == want, format!("S1 partner pairs equal the reference arrows ({} pairs)", got.len()));

    let tri = |t: [Label; 3]| {
        let mut t = t;
        t.sort_unstable();
        Triangle(t)
    };
    let want: BTreeMap<Label, BTreeSet<Triangle>> = k
        .golden
        .s1_point_triangles
        .iter()
        .map(|(p, ts)| (*p, ts.iter().map(|&t| tri(t)).collect()))
        .collect();
    let got: BTreeMap<Label, BTreeSet<Triangle>> = k.geometries[0]
        .point_triangles(&k.catalog)
        .into_iter()
        .map(|(p, ts)| (p, ts.into_iter().collect()))
        .collect();
    let four = SquareId::all()
        .zip(&k.geometries)
        .all(|(_, g)| g.point_triangles(&k.catalog).iter().all(|(_, ts)| ts.len() == 4));
    r.check(
        "reye.s1_point_triangles",
        got == want && four,
        format!("S1 point/triangle table equals the reference ({} points); 4 triangles per point in every square: {four}", got.len()),
    );
}

fn apparitions(k: &Kaleidoscope, r: &mut VerificationReport) {
    let ids: Vec<SquareId> = SquareId::all().collect();
    let all = match k.apparitions(&ids) {
        Ok(a) => a,
        Err(e) => {
            r.check("apparitions.generate", false, e.to_string());
            return;
        }
    };
    r.count("apparitions", all.len());
    let per: BTreeSet<(usize, usize)> = ids
        .iter()
        .map(|id| {
            let mine = all.iter().filter(|a| a.square == *id);
            let (a, b): (Vec<&Apparition>, Vec<&Apparition>) = mine.partition(|a| a.kind == Kind::Eighteen);
            (a.len(), b.len())
        })
        .collect();
    r.check(
        "apparitions.count",
        all.len() == 1120 && per == BTreeSet::from([(16, 96)]),
        format!("{} apparitions, all distinct; (18-state, 20-state) per square {per:?}", all.len()),
    );
    let not_parity: Vec<_> = all.iter().filter(|a| !parity_check(&a.tetrads)).map(|a| (a.square, a.excluded.clone())).collect();
    r.check(
        "apparitions.parity",
        not_parity.is_empty(),
        format!("odd tetrad count and even multiplicities in all{}", fail_list(&not_parity)),
    );
    let colorable: Vec<_> = all
        .iter()
        .filter(|a| color_search_exhaustive(&a.states(), &a.tetrads) != 0)
        .map(|a| (a.square, a.excluded.clone()))
        .collect();
    r.check(
        "apparitions.uncolorable",
        colorable.is_empty(),
        format!("exhaustive search finds no coloring for any of {}{}", all.len(), fail_list(&colorable)),
    );
    let labels: Vec<Label> = k.catalog.labels().collect();
    let full = color_search(&labels, &k.tetrads);
    r.check("apparitions.full_system", full == 0, format!("{full} colorings of all 60 states and 105 tetrads"));

    let g1 = k.geometry(SquareId::all().next().expect("ten squares"));
    let s1_full = parity_check(&g1.tetrads);
    r.check("apparitions.s1_all_tetrads", !s1_full, "the 24 tetrads of S1 do not satisfy the parity condition");

    // dropping one tetrad from an 18-state apparition
    let mut critical = 0;
    let mut probes = 0;
    for a in all.iter().filter(|a| a.square.number() == 1 && a.kind == Kind::Eighteen) {
        for skip in 0..a.tetrads.len() {
            let rest: Vec<Tetrad> = a.tetrads.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, t)| *t).collect();
            probes += 1;
            critical += (color_search(&a.states(), &rest) > 0) as usize;
        }
    }
    r.note("apparitions.minimality", format!("{critical} of {probes} single-tetrad deletions from S1's 18-state apparitions become colorable"));
}

fn designs(k: &Kaleidoscope, r: &mut VerificationReport) {
    match verify_mub_sets(&k.catalog, &k.golden.mub_sets) {
        Ok(m) => {
            let bad_sets: Vec<usize> = m.sets.iter().filter(|s| !s.passed()).map(|s| s.index + 1).collect();
            r.check(
                "designs.mub_sets",
                m.passed(),
                format!(
                    "{} sets of 5 mutually unbiased triads, maximal; {}; pairwise distinct: {}; locally equivalent: {}{}",
                    m.sets.len(),
                    m.symbol.as_ref().map_or_else(|| m.symbol_error.clone().unwrap_or_default(), |s| s.to_string()),
                    m.pairwise_distinct,
                    m.locally_inequivalent.is_empty(),
                    fail_list(&bad_sets)
                ),
            );
            r.note(
                "designs.maximal_families",
                format!(
                    "{} families of 5 pairwise unbiased triads exist; three disjoint ones: {}",
                    m.all_maximal_families,
                    if m.disjoint_partition_exists { "yes" } else { "no" }
                ),
            );
        }
        Err(e) => r.check("designs.mub_sets", false, e.to_string()),
    }
    let mut bad = Vec::new();
    for (id, s) in SquareId::all().zip(&k.squares) {
        match square_mub_relations(&k.catalog, s) {
            Ok(m) if m.passed() => {}
            Ok(m) => bad.push(format!("{id}: {m:?}")),
            Err(e) => bad.push(format!("{id}: {e}")),
        }
    }
    r.check(
        "designs.square_lines",
        bad.is_empty(),
        format!("rows pairwise unbiased, columns pairwise unbiased, no row unbiased to a column{}", fail_list(&bad)),
    );
}

fn transforms(k: &Kaleidoscope, r: &mut VerificationReport) {
    let group = enumerate_symplectic();
    let local: BTreeSet<SymplecticMap> = group.iter().filter(|m| m.is_local()).copied().collect();
    let from_letters: BTreeSet<SymplecticMap> = LocalMap::all().iter().map(LocalMap::to_symplectic).collect();
    r.count("symplectic_maps", group.len());
    r.check(
        "transforms.group",
        group.len() == 720 && local.len() == 36 && local == from_letters,
        format!("{} maps, {} local, equal to the 36 letter permutations: {}", group.len(), local.len(), local == from_letters),
    );

    let s1 = &k.squares[0];
    let mut bad = Vec::new();
    for row in &k.golden.local_maps {
        let m = LocalMap { first: row.first, second: row.second };
        match apply_local_map(&m, s1, &k.squares) {
            Ok(t) if t == row.target => {
                let found = find_maps(&group, s1, k.square(t));
                if !found.iter().any(|f| f.map == m.to_symplectic() && f.local) {
                    bad.push(format!("{}: not among the found maps", row.target));
                }
            }
            Ok(t) => bad.push(format!("{}: lands on {t}", row.target)),
            Err(e) => bad.push(format!("{}: {e}", row.target)),
        }
    }
    r.check(
        "transforms.local_maps",
        bad.is_empty() && k.golden.local_maps.len() == 8,
        format!("{} reference local maps carry S1 to their targets{}", k.golden.local_maps.len(), fail_list(&bad)),
    );

    let mut sizes = BTreeSet::new();
    let mut empty = Vec::new();
    let mut no_local = Vec::new();
    for (i, a) in k.squares.iter().enumerate() {
        for (j, b) in k.squares.iter().enumerate() {
            let f = find_maps(&group, a, b);
            sizes.insert(f.len());
            if f.is_empty() {
                empty.push((i + 1, j + 1));
            }
            if i == 0 && j != 5 && !f.iter().any(|m| m.local) {
                no_local.push(j + 1);
            }
        }
    }
    let self_maps = find_maps(&group, s1, s1);
    let to_s6 = find_maps(&group, s1, &k.squares[5]);
    r.check(
        "transforms.orbit",
        empty.is_empty() && sizes.len() == 1 && sizes.first() == Some(&(group.len() / 10)),
        format!("maps per ordered pair {sizes:?} over 100 pairs{}", fail_list(&empty)),
    );
    r.check(
        "transforms.s1_stabilizer",
        self_maps.iter().any(|f| f.map == SymplecticMap::IDENTITY) && no_local.is_empty(),
        format!("identity fixes S1; local maps reach every square except S6{}", fail_list(&no_local)),
    );
    r.check(
        "transforms.s1_to_s6",
        !to_s6.is_empty() && to_s6.iter().all(|f| !f.local),
        format!("{} maps carry S1 onto S6, {} of them local", to_s6.len(), to_s6.iter().filter(|f| f.local).count()),
    );

    let mut lift_bad = Vec::new();
    for m in &group {
        match lift_to_unitary(m) {
            Ok(l) if l.unitary * l.unitary.adjoint() == crate::matrix::Mat4::identity() => {}
            Ok(_) => lift_bad.push(format!("{m}: not unitary")),
            Err(e) => lift_bad.push(e.to_string()),
        }
    }
    r.check(
        "transforms.lifts",
        lift_bad.is_empty(),
        format!("all {} maps lift to exact unitaries with U·O·U† = ±m(O) on all 15 observables{}", group.len(), fail_list(&lift_bad)),
    );

    let mut bad = Vec::new();
    for id in SquareId::all().skip(1) {
        let rep = k.relabeling(id).map(|rel| {
            let g = k.geometry(id);
            apply_relabeling(&rel, &k.geometries[0].tetrads, &g.states.all(), &g.tetrads)
        });
        match rep {
            Ok(rep) if rep.passed() => {}
            Ok(rep) => bad.push(format!("{id}: {rep:?}")),
            Err(e) => bad.push(format!("{id}: {e}")),
        }
    }
    r.check(
        "transforms.relabelings",
        bad.is_empty(),
        format!("9 relabeling columns carry S1's tetrads onto the target's, 8 fixed states each{}", fail_list(&bad)),
    );

    match k.relabeling(SquareId::new(6).expect("S6")).and_then(|rel| realizations(&to_s6, &rel, &k.catalog)) {
        Ok(rep) => {
            let hits: Vec<String> = rep
                .with_pauli_correction
                .iter()
                .map(|(i, p)| {
                    format!("map {} ({}){}", i, to_s6[*i].map, p.map_or(String::new(), |o| format!(" applied after {o}")))
                })
                .collect();
            r.note(
                "transforms.s6_relabeling",
                format!(
                    "{} of {} candidate lifts reproduce the S6 relabeling as-is; with a Pauli correction: {}",
                    rep.exact_lifts,
                    rep.candidates,
                    if hits.is_empty() { "none".to_string() } else { hits.join("; ") }
                ),
            );
        }
        Err(e) => r.note("transforms.s6_relabeling", e.to_string()),
    }
}

/// Tables accepted by [`corrupt`].
pub const CORRUPTIBLE: [&str; 8] =
    ["eigenstates", "s1_tetrads", "all_tetrads", "partner_lines", "point_triangles", "relabelings", "mub_sets", "local_maps"];

/// Deliberate damage to one reference table, for exercising failure paths.
pub fn corrupt(golden: &mut Golden, table: &str) -> Result<()> {
    match table {
        "eigenstates" => {
            let c = &mut golden.eigenstates[0].states[0][0];
            *c = -*c;
        }
        "s1_tetrads" => golden.s1_tetrads[0][0] = 60,
        "all_tetrads" => {
            golden.all_tetrads.pop();
        }
        "partner_lines" => {
            let first = golden.s1_partner_lines[0].1;
            golden.s1_partner_lines[0].1 = golden.s1_partner_lines[1].1;
            golden.s1_partner_lines[1].1 = first;
        }
        "point_triangles" => golden.s1_point_triangles[0].1[0] = [13, 14, 15],
        "relabelings" => golden.relabelings[0].1[0] = 60,
        "mub_sets" => golden.mub_sets[1][1] = "XI IX XX".parse()?,
        "local_maps" => golden.local_maps[0].target = SquareId::new(6).expect("S6"),
        _ => return Err(Error::Consistency(format!("unknown table {table:?}"))),
    }
    Ok(())
}
