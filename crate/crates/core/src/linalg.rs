//! Sparse exact linear algebra over a prime field `F_p`.

use std::collections::BTreeMap;

/// Sparse row: sorted `(column, value)` pairs with nonzero values in `[0, p)`.
pub type SparseRow = Vec<(usize, u64)>;

fn inv_mod_p(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Incremental row echelon form. Rows are reduced against existing pivots
/// in increasing column order; a row that survives is stored normalized
/// with its first nonzero column as pivot, so ranks are deterministic.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u64,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(p: u64) -> Echelon {
        Echelon { p, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = &usize> {
        self.pivots.keys()
    }

    /// Adds a row; returns whether the rank increased.
    pub fn insert(&mut self, row: &[(usize, u64)]) -> bool {
        let p = self.p;
        let mut work: BTreeMap<usize, u64> = row.iter().filter(|e| e.1 % p != 0).map(|&(c, v)| (c, v % p)).collect();
        while let Some((&c, &v)) = work.iter().next() {
            match self.pivots.get(&c) {
                Some(prow) => {
                    for &(j, w) in prow {
                        let cur = work.get(&j).copied().unwrap_or(0);
                        let nv = (cur + (p - v) * w) % p;
                        if nv == 0 {
                            work.remove(&j);
                        } else {
                            work.insert(j, nv);
                        }
                    }
                }
                None => {
                    let iv = inv_mod_p(v, p);
                    let stored: SparseRow = work.into_iter().map(|(j, w)| (j, w * iv % p)).collect();
                    self.pivots.insert(c, stored);
                    return true;
                }
            }
        }
        false
    }

    /// Basis of the null space in `ncols` unknowns, one vector per free column.
    pub fn kernel_basis(&self, ncols: usize) -> Vec<Vec<u64>> {
        let p = self.p;
        let free: Vec<usize> = (0..ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u64; ncols];
                x[f] = 1;
                for (&c, row) in self.pivots.iter().rev() {
                    let mut s = 0u64;
                    for &(j, w) in row.iter().skip(1) {
                        s = (s + w * x[j]) % p;
                    }
                    x[c] = (p - s) % p;
                }
                x
            })
            .collect()
    }

    /// A solution of the affine system whose right-hand side is stored in
    /// column `ncols`, with free unknowns set to zero.
    pub fn affine_solution(&self, ncols: usize) -> Option<Vec<u64>> {
        if self.pivots.contains_key(&ncols) {
            return None;
        }
        let p = self.p;
        let mut x = vec![0u64; ncols + 1];
        x[ncols] = p - 1;
        for (&c, row) in self.pivots.iter().rev() {
            let mut s = 0u64;
            for &(j, w) in row.iter().skip(1) {
                s = (s + w * x[j]) % p;
            }
            x[c] = (p - s) % p;
        }
        x.truncate(ncols);
        Some(x)
    }
}

/// Solves `sum_{v in vars} x_v = rhs` over `F_2`; free unknowns set to 0.
pub fn solve_gf2(nvars: usize, equations: &[(Vec<usize>, bool)]) -> Option<Vec<bool>> {
    let mut ech = Echelon::new(2);
    for (vars, rhs) in equations {
        let mut row: BTreeMap<usize, u64> = BTreeMap::new();
        for &v in vars {
            *row.entry(v).or_insert(0) ^= 1;
        }
        if *rhs {
            row.insert(nvars, 1);
        }
        let row: SparseRow = row.into_iter().filter(|e| e.1 != 0).collect();
        ech.insert(&row);
    }
    ech.affine_solution(nvars).map(|x| x.into_iter().map(|b| b == 1).collect())
}
