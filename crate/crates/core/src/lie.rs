//! Chevalley basis structure constants and adjoint matrices.
//!
//! Basis index `i < 2m` is the root with id `i`; index `2m + j` is `h_{j+1}`.
//! Adjoint matrices act on columns: column `j` of `X_a` holds the
//! coordinates of `[x_a, v_j]`.

use std::collections::BTreeMap;

use crate::matrix::SparseInt;
use crate::roots::RootSystem;

/// Signs `N(a, b)` with `[x_a, x_b] = N(a, b) x_{a+b}`.
///
/// Built from the asymmetry function `eps(a, b) = (-1)^{sum a_i b_j E_ij}`
/// where `E` is upper triangular: ones on the diagonal and on the Dynkin
/// edges `i < j`. With `x_a = E_a` for positive `a` and `x_a = -E_a` for
/// negative `a`, this gives `[x_a, x_{-a}] = h_a`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    nr: usize,
    table: Vec<i8>,
}

pub const CONVENTION: &str = "asymmetry-function";

fn eps(sys: &RootSystem, a: &[i64], b: &[i64]) -> i64 {
    let l = sys.rank();
    let mut s = 0i64;
    for i in 0..l {
        if a[i] == 0 {
            continue;
        }
        for j in i..l {
            if j == i || sys.cartan(i, j) == -1 {
                s += a[i] * b[j];
            }
        }
    }
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl StructureConstants {
    pub fn new(sys: &RootSystem) -> StructureConstants {
        let nr = sys.num_roots();
        let mut table = vec![0i8; nr * nr];
        let sign = |id: usize| if sys.is_positive(id) { 1 } else { -1 };
        for a in sys.ids() {
            for b in sys.ids() {
                if let Some(c) = sys.sum(a, b) {
                    let v = sign(a) * sign(b) * sign(c) * eps(sys, sys.coeffs(a), sys.coeffs(b));
                    table[a * nr + b] = v as i8;
                }
            }
        }
        StructureConstants { nr, table }
    }

    /// `N(a, b)` when `a + b` is a root.
    pub fn get(&self, a: usize, b: usize) -> Option<i64> {
        match self.table[a * self.nr + b] {
            0 => None,
            v => Some(i64::from(v)),
        }
    }

    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.get(a, b).unwrap_or(0)
    }
}

pub fn structure_constants(sys: &RootSystem) -> StructureConstants {
    StructureConstants::new(sys)
}

/// `[v_u, v_v]` as a list of (basis index, coefficient).
pub fn bracket(sys: &RootSystem, sc: &StructureConstants, u: usize, v: usize) -> Vec<(usize, i64)> {
    let nr = sys.num_roots();
    match (u < nr, v < nr) {
        (true, true) => {
            if v == sys.neg(u) {
                sys.coeffs(u)
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (nr + i, c))
                    .collect()
            } else if let Some(s) = sys.sum(u, v) {
                vec![(s, sc.n(u, v))]
            } else {
                vec![]
            }
        }
        (true, false) => vec![(u, -sys.pairing_simple(u, v - nr))],
        (false, true) => vec![(v, sys.pairing_simple(v, u - nr))],
        (false, false) => vec![],
    }
    .into_iter()
    .filter(|e| e.1 != 0)
    .collect()
}

/// Matrix of `ad x_a`.
pub fn ad_x(sys: &RootSystem, sc: &StructureConstants, a: usize) -> SparseInt {
    let n = sys.dim();
    let mut e = Vec::new();
    for j in 0..n {
        for (r, v) in bracket(sys, sc, a, j) {
            e.push((r, j, v));
        }
    }
    SparseInt::new(n, e)
}

/// Diagonal matrix of `ad h_a`: entry `<b, a>` at each root position `b`.
pub fn h_matrix(sys: &RootSystem, a: usize) -> SparseInt {
    let e = sys.ids().map(|b| (b, b, sys.pairing(b, a))).collect();
    SparseInt::new(sys.dim(), e)
}

/// `T_i`: diagonal, with the coefficient of `a_i` in `b` at root position `b`.
pub fn t_matrix(sys: &RootSystem, i: usize) -> SparseInt {
    let e = sys.ids().map(|b| (b, b, sys.coeffs(b)[i])).collect();
    SparseInt::new(sys.dim(), e)
}

/// Whether the Jacobi identity holds for three basis vectors.
pub fn jacobi_triple(sys: &RootSystem, sc: &StructureConstants, a: usize, b: usize, c: usize) -> bool {
    let mut total: BTreeMap<usize, i64> = BTreeMap::new();
    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
        for (w, k) in bracket(sys, sc, y, z) {
            for (u, j) in bracket(sys, sc, x, w) {
                *total.entry(u).or_default() += k * j;
            }
        }
    }
    total.values().all(|&v| v == 0)
}

pub fn commutator(a: &SparseInt, b: &SparseInt) -> SparseInt {
    a.mul(b).add(&b.mul(a), -1)
}

/// Human readable basis label: `v1`, `v-1`, ..., `V1`.
pub fn basis_label(sys: &RootSystem, i: usize) -> String {
    let nr = sys.num_roots();
    if i >= nr {
        format!("V{}", i - nr + 1)
    } else if sys.is_positive(i) {
        format!("v{}", i / 2 + 1)
    } else {
        format!("v-{}", i / 2 + 1)
    }
}
