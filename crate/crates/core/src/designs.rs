//! Quantum block designs and mutually unbiased bases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hexagon::MagicSquare;
use crate::pauli::{enumerate_triads, Triad};
use crate::states::{inner_product, Catalog, StateVec};
use crate::transforms::LocalMap;

/// `{b, v, r, k; (λ₁, x₁), …}`: `b` blocks of size `k` over `v` points,
/// each point in `r` blocks and sharing a block exactly `λᵢ` times with
/// `xᵢ` other points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QbdSymbol {
    pub b: usize,
    pub v: usize,
    pub r: usize,
    pub k: usize,
    /// Sorted by `λ`.
    pub pairs: Vec<(usize, usize)>,
}

impl QbdSymbol {
    pub fn new(b: usize, v: usize, r: usize, k: usize, pairs: &[(usize, usize)]) -> Self {
        let mut pairs = pairs.to_vec();
        pairs.sort_unstable();
        QbdSymbol { b, v, r, k, pairs }
    }

    /// `bk = vr`.
    pub fn counting_identity(&self) -> bool {
        self.b * self.k == self.v * self.r
    }

    /// `r(k − 1) = Σ λᵢxᵢ`.
    pub fn pair_identity(&self) -> bool {
        self.r * (self.k - 1) == self.pairs.iter().map(|(l, x)| l * x).sum::<usize>()
    }
}

impl fmt::Display for QbdSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pairs.iter().map(|(l, x)| format!("({l},{x})")).collect();
        write!(f, "{{{},{},{},{};{}}}", self.b, self.v, self.r, self.k, pairs.join(","))
    }
}

/// Profiles `blocks` over `points`, failing with [`Error::NotQbd`] unless
/// block size, replication and the per-point co-occurrence histogram are
/// all uniform and both identities hold.
pub fn qbd_profile<P: Ord + Copy + fmt::Debug>(points: &[P], blocks: &[Vec<P>]) -> Result<QbdSymbol> {
    let pts: BTreeSet<P> = points.iter().copied().collect();
    if pts.len() != points.len() {
        return Err(Error::NotQbd("repeated point".into()));
    }
    let Some(first) = blocks.first() else {
        return Err(Error::NotQbd("no blocks".into()));
    };
    let k = first.len();
    for blk in blocks {
        if blk.len() != k {
            return Err(Error::NotQbd(format!("block {blk:?} has size {}, expected {k}", blk.len())));
        }
        if let Some(p) = blk.iter().find(|p| !pts.contains(p)) {
            return Err(Error::NotQbd(format!("block {blk:?} contains unknown point {p:?}")));
        }
        if blk.iter().collect::<BTreeSet<_>>().len() != k {
            return Err(Error::NotQbd(format!("block {blk:?} repeats a point")));
        }
    }
    let mut r = None;
    let mut profile: Option<Vec<(usize, usize)>> = None;
    for &p in &pts {
        let mine: Vec<&Vec<P>> = blocks.iter().filter(|b| b.contains(&p)).collect();
        match r {
            None => r = Some(mine.len()),
            Some(r0) if r0 != mine.len() => {
                return Err(Error::NotQbd(format!("{p:?} is in {} blocks, expected {r0}", mine.len())));
            }
            _ => {}
        }
        let mut together: BTreeMap<P, usize> = BTreeMap::new();
        for q in mine.iter().flat_map(|b| b.iter()).filter(|&&q| q != p) {
            *together.entry(*q).or_default() += 1;
        }
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for lambda in together.values() {
            *hist.entry(*lambda).or_default() += 1;
        }
        let hist: Vec<(usize, usize)> = hist.into_iter().collect();
        match &profile {
            None => profile = Some(hist),
            Some(h0) if *h0 != hist => {
                return Err(Error::NotQbd(format!("{p:?} has co-occurrence profile {hist:?}, expected {h0:?}")));
            }
            _ => {}
        }
    }
    let sym = QbdSymbol::new(blocks.len(), pts.len(), r.unwrap_or(0), k, &profile.unwrap_or_default());
    if !sym.counting_identity() || !sym.pair_identity() {
        return Err(Error::NotQbd(format!("{sym} violates a constraint identity")));
    }
    Ok(sym)
}

/// `4·|⟨α|β⟩|² = ‖α‖²‖β‖²` for all sixteen pairs.
pub fn unbiased(a: &[StateVec; 4], b: &[StateVec; 4]) -> bool {
    a.iter()
        .all(|x| b.iter().all(|y| 4 * inner_product(x, y).norm() == x.norm_sq() * y.norm_sq()))
}

fn basis(catalog: &Catalog, t: &Triad) -> Result<[StateVec; 4]> {
    let labels = catalog
        .basis_of(t)
        .ok_or_else(|| Error::Consistency(format!("no eigenbasis for {t}")))?;
    Ok(labels.map(|l| catalog.state(l).clone()))
}

/// Unbiasedness between the eigenbases of two triads.
pub fn triads_unbiased(catalog: &Catalog, a: &Triad, b: &Triad) -> Result<bool> {
    Ok(unbiased(&basis(catalog, a)?, &basis(catalog, b)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MubSetCheck {
    pub index: usize,
    /// First pair of triads in the set that is not unbiased.
    pub biased_pair: Option<(Triad, Triad)>,
    /// A triad outside the set unbiased to all five, if any.
    pub extension: Option<Triad>,
}

impl MubSetCheck {
    pub fn passed(&self) -> bool {
        self.biased_pair.is_none() && self.extension.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MubReport {
    pub sets: Vec<MubSetCheck>,
    /// How many sets each triad belongs to, in triad order.
    pub triad_multiplicity: Vec<(Triad, usize)>,
    pub symbol: Option<QbdSymbol>,
    pub symbol_error: Option<String>,
    pub pairwise_distinct: bool,
    /// Pairs `(i, j)` of sets with no local map carrying `i` onto `j`.
    pub locally_inequivalent: Vec<(usize, usize)>,
    /// Every family of five pairwise unbiased triads.
    pub all_maximal_families: usize,
    /// Whether three of those families are pairwise disjoint.
    pub disjoint_partition_exists: bool,
}

impl MubReport {
    pub fn passed(&self) -> bool {
        self.sets.iter().all(MubSetCheck::passed)
            && self.triad_multiplicity.iter().all(|(_, n)| *n == 2)
            && self.symbol.as_ref() == Some(&QbdSymbol::new(6, 15, 2, 5, &[(1, 8)]))
            && self.pairwise_distinct
            && self.locally_inequivalent.is_empty()
    }
}

fn map_family(m: &LocalMap, set: &BTreeSet<Triad>) -> Option<BTreeSet<Triad>> {
    set.iter()
        .map(|t| {
            let [a, b, c] = t.members().map(|o| m.apply(o));
            Triad::new(a, b, c)
        })
        .collect()
}

/// Checks the given families of five triads: maximality, the 2-regular
/// cover, the design symbol and local equivalence, plus an independent
/// enumeration of every maximal family.
pub fn verify_mub_sets(catalog: &Catalog, sets: &[[Triad; 5]]) -> Result<MubReport> {
    let triads = enumerate_triads();
    let mut unb = BTreeMap::new();
    for a in &triads {
        for b in &triads {
            unb.insert((*a, *b), a != b && triads_unbiased(catalog, a, b)?);
        }
    }
    let checks = sets
        .iter()
        .enumerate()
        .map(|(index, set)| {
            let biased_pair = set
                .iter()
                .enumerate()
                .flat_map(|(i, a)| set[i + 1..].iter().map(move |b| (*a, *b)))
                .find(|p| !unb[p]);
            let extension = triads
                .iter()
                .find(|t| !set.contains(t) && set.iter().all(|s| unb[&(**t, *s)]))
                .copied();
            MubSetCheck { index, biased_pair, extension }
        })
        .collect();
    let triad_multiplicity = triads
        .iter()
        .map(|t| (*t, sets.iter().filter(|s| s.contains(t)).count()))
        .collect();
    let blocks: Vec<Vec<Triad>> = sets.iter().map(|s| s.to_vec()).collect();
    let (symbol, symbol_error) = match qbd_profile(&triads, &blocks) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let as_sets: Vec<BTreeSet<Triad>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    let pairwise_distinct = as_sets.iter().collect::<BTreeSet<_>>().len() == as_sets.len();
    let maps = LocalMap::all();
    let mut locally_inequivalent = Vec::new();
    for i in 0..as_sets.len() {
        for j in i + 1..as_sets.len() {
            if !maps.iter().any(|m| map_family(m, &as_sets[i]).as_ref() == Some(&as_sets[j])) {
                locally_inequivalent.push((i, j));
            }
        }
    }
    let families = maximal_families(&triads, |a, b| unb[&(*a, *b)]);
    let disjoint_partition_exists = families.iter().enumerate().any(|(i, a)| {
        families[i + 1..].iter().enumerate().any(|(j, b)| {
            a.is_disjoint(b) && families[i + j + 2..].iter().any(|c| c.is_disjoint(a) && c.is_disjoint(b))
        })
    });
    Ok(MubReport {
        sets: checks,
        triad_multiplicity,
        symbol,
        symbol_error,
        pairwise_distinct,
        locally_inequivalent,
        all_maximal_families: families.len(),
        disjoint_partition_exists,
    })
}

/// All 5-cliques of the unbiasedness graph.
fn maximal_families(triads: &[Triad], unb: impl Fn(&Triad, &Triad) -> bool) -> Vec<BTreeSet<Triad>> {
    fn extend(
        triads: &[Triad],
        unb: &impl Fn(&Triad, &Triad) -> bool,
        from: usize,
        cur: &mut Vec<Triad>,
        out: &mut Vec<BTreeSet<Triad>>,
    ) {
        if cur.len() == 5 {
            out.push(cur.iter().copied().collect());
            return;
        }
        for i in from..triads.len() {
            if cur.iter().all(|c| unb(c, &triads[i])) {
                cur.push(triads[i]);
                extend(triads, unb, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(triads, &unb, 0, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareMubReport {
    pub rows_unbiased: bool,
    pub columns_unbiased: bool,
    /// Number of the nine row/column pairs that are unbiased.
    pub unbiased_row_column_pairs: usize,
}

impl SquareMubReport {
    pub fn passed(&self) -> bool {
        self.rows_unbiased && self.columns_unbiased && self.unbiased_row_column_pairs == 0
    }
}

pub fn square_mub_relations(catalog: &Catalog, s: &MagicSquare) -> Result<SquareMubReport> {
    let pairwise = |lines: &[Triad; 3]| -> Result<bool> {
        Ok(triads_unbiased(catalog, &lines[0], &lines[1])?
            && triads_unbiased(catalog, &lines[0], &lines[2])?
            && triads_unbiased(catalog, &lines[1], &lines[2])?)
    };
    let (rows, cols) = (s.rows(), s.columns());
    let mut mixed = 0;
    for r in &rows {
        for c in &cols {
            mixed += triads_unbiased(catalog, r, c)? as usize;
        }
    }
    Ok(SquareMubReport { rows_unbiased: pairwise(&rows)?, columns_unbiased: pairwise(&cols)?, unbiased_row_column_pairs: mixed })
}
