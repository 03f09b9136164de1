//! Independent arithmetic for cross-checking the library: complex integers
//! as plain tuples, Pauli matrices built from scratch, brute-force linear
//! algebra. Nothing here calls into the library's math.

#![allow(dead_code)]

use kaleidoscope::golden::Golden;
use kaleidoscope::Label;

pub type C = (i64, i64);
pub type M4 = [[C; 4]; 4];
pub type V4 = [C; 4];

pub const ZERO: C = (0, 0);
pub const ONE: C = (1, 0);

pub fn add(a: C, b: C) -> C {
    (a.0 + b.0, a.1 + b.1)
}

pub fn sub(a: C, b: C) -> C {
    (a.0 - b.0, a.1 - b.1)
}

pub fn mul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn conj(a: C) -> C {
    (a.0, -a.1)
}

pub fn norm(a: C) -> i64 {
    a.0 * a.0 + a.1 * a.1
}

fn pauli(letter: char) -> [[C; 2]; 2] {
    match letter {
        'I' => [[ONE, ZERO], [ZERO, ONE]],
        'X' => [[ZERO, ONE], [ONE, ZERO]],
        'Y' => [[ZERO, (0, -1)], [(0, 1), ZERO]],
        'Z' => [[ONE, ZERO], [ZERO, (-1, 0)]],
        _ => panic!("bad letter {letter}"),
    }
}

/// Matrix of a two-letter observable, first letter on the high qubit.
pub fn obs(s: &str) -> M4 {
    let l: Vec<char> = s.chars().collect();
    let (a, b) = (pauli(l[0]), pauli(l[1]));
    let mut m = [[ZERO; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = mul(a[i / 2][j / 2], b[i % 2][j % 2]);
        }
    }
    m
}

pub fn matmul(a: &M4, b: &M4) -> M4 {
    let mut m = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                m[i][j] = add(m[i][j], mul(a[i][k], b[k][j]));
            }
        }
    }
    m
}

pub fn scaled(a: &M4, s: C) -> M4 {
    a.map(|r| r.map(|e| mul(e, s)))
}

pub fn identity() -> M4 {
    obs("II")
}

pub fn apply(m: &M4, v: &V4) -> V4 {
    std::array::from_fn(|i| (0..4).fold(ZERO, |acc, k| add(acc, mul(m[i][k], v[k]))))
}

pub fn ip(a: &V4, b: &V4) -> C {
    (0..4).fold(ZERO, |acc, i| add(acc, mul(conj(a[i]), b[i])))
}

pub fn norm_sq(a: &V4) -> i64 {
    ip(a, a).0
}

/// The fifteen observables as strings.
pub fn observables() -> Vec<String> {
    let letters = ['I', 'X', 'Y', 'Z'];
    let mut v = Vec::new();
    for a in letters {
        for b in letters {
            if (a, b) != ('I', 'I') {
                v.push(format!("{a}{b}"));
            }
        }
    }
    v
}

pub fn commute(a: &str, b: &str) -> bool {
    let (ma, mb) = (obs(a), obs(b));
    matmul(&ma, &mb) == matmul(&mb, &ma)
}

/// `Some(s)` when `a·b·c = s·I`.
pub fn triple_sign(a: &str, b: &str, c: &str) -> Option<i64> {
    let p = matmul(&matmul(&obs(a), &obs(b)), &obs(c));
    [1, -1].into_iter().find(|&s| p == scaled(&identity(), (s, 0)))
}

fn det3(m: [[C; 3]; 3]) -> C {
    let minor = |c0: usize, c1: usize| sub(mul(m[1][c0], m[2][c1]), mul(m[1][c1], m[2][c0]));
    let t0 = mul(m[0][0], minor(1, 2));
    let t1 = mul(m[0][1], minor(0, 2));
    let t2 = mul(m[0][2], minor(0, 1));
    add(sub(t0, t1), t2)
}

/// Three vectors spanning exactly a plane: every 3×3 minor vanishes and
/// no two are parallel.
pub fn collinear(a: &V4, b: &V4, c: &V4) -> bool {
    let cols = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let flat = cols.iter().all(|cs| det3([cs.map(|i| a[i]), cs.map(|i| b[i]), cs.map(|i| c[i])]) == ZERO);
    let parallel = |x: &V4, y: &V4| {
        (0..4).all(|i| (0..4).all(|j| sub(mul(x[i], y[j]), mul(x[j], y[i])) == ZERO))
    };
    flat && !parallel(a, b) && !parallel(a, c) && !parallel(b, c)
}

/// `|⟨a|b⟩|² / (‖a‖²‖b‖²) = ¼`.
pub fn half(a: &V4, b: &V4) -> bool {
    4 * norm(ip(a, b)) == norm_sq(a) * norm_sq(b)
}

/// The sixty reference states by label, straight from the embedded table.
pub fn table_states(g: &Golden) -> Vec<(Label, V4)> {
    let mut out = Vec::new();
    for (r, row) in g.eigenstates.iter().enumerate() {
        for (c, s) in row.states.iter().enumerate() {
            out.push(((4 * r + c + 1) as Label, s.map(|z| (z.re, z.im))));
        }
    }
    out
}

/// All pairwise-orthogonal 4-subsets, by brute force over every subset.
pub fn brute_tetrads(states: &[(Label, V4)]) -> Vec<[Label; 4]> {
    let n = states.len();
    let orth = |i: usize, j: usize| ip(&states[i].1, &states[j].1) == ZERO;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if orth(a, b) && orth(a, c) && orth(a, d) && orth(b, c) && orth(b, d) && orth(c, d) {
                        let mut t = [states[a].0, states[b].0, states[c].0, states[d].0];
                        t.sort_unstable();
                        out.push(t);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// `(λ, x)` histogram of how often one point shares a block with others,
/// if it is the same for every point.
pub fn co_occurrence(points: &[Label], blocks: &[Vec<Label>]) -> Option<Vec<(usize, usize)>> {
    let mut profile = None;
    for &p in points {
        let mut together = std::collections::BTreeMap::<Label, usize>::new();
        for b in blocks.iter().filter(|b| b.contains(&p)) {
            for &q in b.iter().filter(|&&q| q != p) {
                *together.entry(q).or_default() += 1;
            }
        }
        let mut hist = std::collections::BTreeMap::<usize, usize>::new();
        for l in together.values() {
            *hist.entry(*l).or_default() += 1;
        }
        let hist: Vec<(usize, usize)> = hist.into_iter().collect();
        match &profile {
            None => profile = Some(hist),
            Some(h) if *h != hist => return None,
            _ => {}
        }
    }
    profile
}
