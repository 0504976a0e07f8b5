//! A_2 matrices as printed, and the sign normalization that carries ours
//! onto them.

#![allow(dead_code)]

use chevalley::decompose::{compose, FactoredElement};
use chevalley::group::Chevalley;
use chevalley::lie::t_matrix;
use chevalley::matrix::SparseInt;
use chevalley::{Elem, Ring};

/// 1-based `(row, col, value)`. The printed `X_{a_1}` has `-e_{3,5}`; the
/// bracket `[x_{a_1}, x_{a_2}]` lands in row 5, column 3, so we use `e_{5,3}`.
pub fn printed() -> Vec<(&'static str, Option<usize>, Vec<(usize, usize, i64)>)> {
    vec![
        ("T1", None, vec![(1, 1, 1), (2, 2, -1), (5, 5, 1), (6, 6, -1)]),
        ("T2", None, vec![(3, 3, 1), (4, 4, -1), (5, 5, 1), (6, 6, -1)]),
        ("X_a1", Some(0), vec![(1, 7, -2), (1, 8, 1), (4, 6, 1), (5, 3, -1), (7, 2, 1)]),
        ("X_a2", Some(2), vec![(3, 7, 1), (3, 8, -2), (2, 6, 1), (5, 1, -1), (8, 4, 1)]),
        ("X_a1+a2", Some(4), vec![(5, 7, -1), (5, 8, -1), (1, 4, -1), (3, 2, 1), (7, 6, 1), (8, 6, 1)]),
        ("X_-a1", Some(1), vec![(2, 7, -2), (2, 8, 1), (3, 5, 1), (6, 4, -1), (7, 1, 1)]),
        ("X_-a2", Some(3), vec![(4, 7, 1), (4, 8, -2), (1, 5, -1), (6, 2, 1), (8, 3, 1)]),
        ("X_-a1-a2", Some(5), vec![(6, 7, -1), (6, 8, -1), (2, 3, -1), (4, 1, 1), (7, 5, 1), (8, 5, 1)]),
    ]
}

pub fn ours(ch: &Chevalley, which: Option<usize>, name: &str) -> SparseInt {
    match which {
        Some(a) => ch.ad(a).clone(),
        None => t_matrix(&ch.sys, if name == "T1" { 0 } else { 1 }),
    }
}

/// Whether every matrix has the printed support and magnitudes.
pub fn magnitudes_match(ch: &Chevalley) -> bool {
    printed().iter().all(|(name, which, cells)| {
        let m = ours(ch, *which, name);
        let mut a: Vec<(usize, usize, i64)> = m.entries.iter().map(|&(r, c, v)| (r + 1, c + 1, v.abs())).collect();
        let mut b: Vec<(usize, usize, i64)> = cells.iter().map(|&(r, c, v)| (r, c, v.abs())).collect();
        a.sort();
        b.sort();
        a == b
    })
}

/// Basis signs `sigma` (8) and per-matrix signs `tau` (by root id, 6) with
/// `printed = tau S ours S`, chosen to leave the fewest cells out of place.
/// `T_i` take no `tau`.
pub struct Normalization {
    pub sigma: Vec<i64>,
    pub tau: Vec<i64>,
    /// `(matrix, row, col)` still differing in sign, 1-based.
    pub residual: Vec<(&'static str, usize, usize)>,
}

pub fn normalization(ch: &Chevalley) -> Normalization {
    let cells: Vec<(&'static str, Option<usize>, usize, usize, i64, i64)> = printed()
        .into_iter()
        .flat_map(|(name, which, cells)| {
            let m = ours(ch, which, name);
            cells.into_iter().map(move |(r, c, v)| (name, which, r, c, v, m.get(r - 1, c - 1)))
        })
        .collect();
    let bit = |mask: u32, i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
    let mut best: Option<Normalization> = None;
    for mask in 0u32..1 << 14 {
        let residual: Vec<_> = cells
            .iter()
            .filter(|&&(_, which, r, c, v, o)| {
                let tau = which.map_or(1, |a| bit(mask, 8 + a));
                tau * bit(mask, r - 1) * bit(mask, c - 1) * o != v
            })
            .map(|&(name, _, r, c, _, _)| (name, r, c))
            .collect();
        if best.as_ref().map_or(true, |b| residual.len() < b.residual.len()) {
            best = Some(Normalization {
                sigma: (0..8).map(|i| bit(mask, i)).collect(),
                tau: (8..14).map(|i| bit(mask, i)).collect(),
                residual,
            });
        }
    }
    best.expect("nonempty search")
}

/// Whether the printed matrices bracket like a Lie algebra:
/// `[X_{a_1}, X_{a_2}] = +-X_{a_1+a_2}`.
pub fn printed_is_closed() -> bool {
    let dense = |cells: &[(usize, usize, i64)]| {
        let mut m = [[0i64; 8]; 8];
        for &(r, c, v) in cells {
            m[r - 1][c - 1] = v;
        }
        m
    };
    let p = printed();
    let (a, b, ab) = (dense(&p[2].2), dense(&p[3].2), dense(&p[4].2));
    let mul = |x: &[[i64; 8]; 8], y: &[[i64; 8]; 8]| {
        let mut z = [[0i64; 8]; 8];
        for i in 0..8 {
            for k in 0..8 {
                for j in 0..8 {
                    z[i][j] += x[i][k] * y[k][j];
                }
            }
        }
        z
    };
    let (xy, yx) = (mul(&a, &b), mul(&b, &a));
    let br: Vec<i64> = (0..64).map(|k| xy[k / 8][k % 8] - yx[k / 8][k % 8]).collect();
    let t: Vec<i64> = (0..64).map(|k| ab[k / 8][k % 8]).collect();
    br == t || br.iter().zip(&t).all(|(x, y)| *x == -*y)
}

/// Whether `tau S ours S` equals the printed matrices exactly.
pub fn normalized_match(ch: &Chevalley, n: &Normalization) -> bool {
    n.residual.is_empty() && printed().iter().all(|(name, which, cells)| {
        let m = ours(ch, *which, name);
        let tau = which.map_or(1, |a| n.tau[a]);
        let mut got: Vec<(usize, usize, i64)> =
            m.entries.iter().map(|&(r, c, v)| (r + 1, c + 1, tau * n.sigma[r] * n.sigma[c] * v)).collect();
        let mut want = cells.clone();
        got.sort();
        want.sort();
        got == want
    })
}

/// Displayed entries that agree with our product only up to sign; they
/// carry the same inconsistent `X_{a_2}` signs.
pub const SIGN_ONLY: [(usize, usize); 4] = [(2, 6), (4, 6), (6, 2), (6, 4)];

/// Printed entries of the big-cell product, as `(row, col, value)` with
/// 1-based cells, in the printed parameters.
pub fn printed_entries(r: &Ring, f: &FactoredElement) -> Vec<(usize, usize, Elem)> {
    let inv = |x: Elem| r.inv(x).expect("unit");
    let (l, s1, s2) = (f.lambda, f.s[0], f.s[1]);
    let (t, u) = (&f.t, &f.u);
    let d1 = r.mul(l, inv(s1));
    let d2 = r.mul(l, inv(s2));
    let d12 = r.mul(l, inv(r.mul(s1, s2)));
    let one = r.one();
    vec![
        (2, 2, r.mul(d1, r.sub(one, r.mul(t[1], u[1])))),
        (2, 6, r.mul(d1, t[1])),
        (4, 4, r.mul(d2, r.sub(one, r.mul(t[0], u[0])))),
        (4, 6, r.neg(r.mul(d2, t[0]))),
        (6, 2, r.neg(r.mul(d12, u[1]))),
        (6, 4, r.mul(d12, u[0])),
        (6, 6, d12),
        (6, 8, r.neg(r.mul(d12, r.add(u[2], r.mul(r.from_int(2), r.mul(u[0], u[1])))))),
        (8, 6, r.mul(l, t[2])),
    ]
}

/// Printed parameters in our convention: `t_a, u_a` scaled by `tau`.
pub fn to_ours(r: &Ring, n: &Normalization, f: &FactoredElement) -> FactoredElement {
    let sg = |a: usize, x: Elem| if n.tau[a] < 0 { r.neg(x) } else { x };
    FactoredElement {
        lambda: f.lambda,
        s: f.s.clone(),
        t: f.t.iter().enumerate().map(|(a, &x)| sg(2 * a, x)).collect(),
        u: f.u.iter().enumerate().map(|(a, &x)| sg(2 * a + 1, x)).collect(),
    }
}

/// Our product at printed parameters, moved to the printed basis.
pub fn normalized_compose(ch: &Chevalley, r: &Ring, n: &Normalization, f: &FactoredElement) -> chevalley::matrix::Mat {
    let mut m = compose(ch, r, &to_ours(r, n, f)).expect("valid parameters").mat;
    for i in 0..8 {
        for j in 0..8 {
            if n.sigma[i] * n.sigma[j] < 0 {
                m.set(i, j, r.neg(m.get(i, j)));
            }
        }
    }
    m
}
