//! Dense matrices over a `Ring` and sparse integer matrices.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

/// Sparse integer matrix, entries sorted by row then column.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseInt {
    pub n: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseInt {
    pub fn new(n: usize, mut entries: Vec<(usize, usize, i64)>) -> SparseInt {
        entries.retain(|e| e.2 != 0);
        entries.sort_unstable();
        let mut merged: Vec<(usize, usize, i64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != 0);
        SparseInt { n, entries: merged }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(r, c)))
            .map(|i| self.entries[i].2)
            .unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.n]; self.n];
        for &(r, c, v) in &self.entries {
            d[r][c] = v;
        }
        d
    }

    pub fn mul(&self, o: &SparseInt) -> SparseInt {
        let mut out = Vec::new();
        for &(r, k, v) in &self.entries {
            let start = o.entries.partition_point(|e| e.0 < k);
            for &(_, c, w) in o.entries[start..].iter().take_while(|e| e.0 == k) {
                out.push((r, c, v * w));
            }
        }
        SparseInt::new(self.n, out)
    }

    pub fn add(&self, o: &SparseInt, scale: i64) -> SparseInt {
        let mut e = self.entries.clone();
        e.extend(o.entries.iter().map(|&(r, c, v)| (r, c, v * scale)));
        SparseInt::new(self.n, e)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn trace(&self) -> i64 {
        self.entries.iter().filter(|e| e.0 == e.1).map(|e| e.2).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "ring": "int", "rows": self.dense() })
    }
}

/// Row-major square matrix over a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub n: usize,
    pub data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(n: usize) -> Mat {
        Mat { n, data: vec![Elem(0); n * n] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Elem(1);
        }
        m
    }

    pub fn scalar(n: usize, x: Elem) -> Mat {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn diagonal(d: &[Elem]) -> Mat {
        let n = d.len();
        let mut m = Mat::zeros(n);
        for (i, &x) in d.iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn from_int(ring: &Ring, s: &SparseInt) -> Mat {
        let mut m = Mat::zeros(s.n);
        for &(r, c, v) in &s.entries {
            m.data[r * s.n + c] = ring.from_int(v);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.n + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.data.iter().enumerate().all(|(k, &x)| x == Elem(u64::from(k / n == k % n)))
    }

    pub fn mul(&self, ring: &Ring, o: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            let orow = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.0 == 0 {
                    continue;
                }
                let brow = &o.data[k * n..(k + 1) * n];
                for j in 0..n {
                    if brow[j].0 != 0 {
                        orow[j] = ring.add(orow[j], ring.mul(a, brow[j]));
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, ring: &Ring, o: &Mat) -> Mat {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| ring.sub(*a, *b)).collect();
        Mat { n: self.n, data }
    }

    /// `M <- (I + sum_k c_k S_k) M`, using the original `M` on the right.
    pub fn apply_left(&mut self, ring: &Ring, terms: &[(Elem, &SparseInt)]) {
        let n = self.n;
        let mut updates: Vec<(usize, Vec<Elem>)> = Vec::new();
        for &(coef, s) in terms {
            if coef.0 == 0 {
                continue;
            }
            let mut i = 0;
            let e = &s.entries;
            while i < e.len() {
                let r = e[i].0;
                let mut acc = vec![Elem(0); n];
                while i < e.len() && e[i].0 == r {
                    let (_, c, v) = e[i];
                    let f = ring.mul(coef, ring.from_int(v));
                    let src = &self.data[c * n..(c + 1) * n];
                    for j in 0..n {
                        if src[j].0 != 0 {
                            acc[j] = ring.add(acc[j], ring.mul(f, src[j]));
                        }
                    }
                    i += 1;
                }
                updates.push((r, acc));
            }
        }
        for (r, acc) in updates {
            let dst = &mut self.data[r * n..(r + 1) * n];
            for j in 0..n {
                dst[j] = ring.add(dst[j], acc[j]);
            }
        }
    }

    /// `M <- M (I + sum_k c_k S_k)`, using the original `M` on the left.
    pub fn apply_right(&mut self, ring: &Ring, terms: &[(Elem, &SparseInt)]) {
        let n = self.n;
        let mut factors: Vec<(usize, usize, Elem)> = Vec::new();
        for &(coef, s) in terms {
            if coef.0 == 0 {
                continue;
            }
            for &(r, c, v) in &s.entries {
                factors.push((r, c, ring.mul(coef, ring.from_int(v))));
            }
        }
        if factors.is_empty() {
            return;
        }
        let mut delta = vec![Elem(0); n];
        for i in 0..n {
            let row = &mut self.data[i * n..(i + 1) * n];
            for d in delta.iter_mut() {
                *d = Elem(0);
            }
            for &(r, c, f) in &factors {
                if row[r].0 != 0 {
                    delta[c] = ring.add(delta[c], ring.mul(row[r], f));
                }
            }
            for j in 0..n {
                row[j] = ring.add(row[j], delta[j]);
            }
        }
    }

    /// Scales row `i` by `d[i]`.
    pub fn scale_rows(&mut self, ring: &Ring, d: &[Elem]) {
        let n = self.n;
        for (i, &x) in d.iter().enumerate() {
            if x == Elem(1) {
                continue;
            }
            for v in &mut self.data[i * n..(i + 1) * n] {
                *v = ring.mul(*v, x);
            }
        }
    }

    /// Scales column `j` by `d[j]`.
    pub fn scale_cols(&mut self, ring: &Ring, d: &[Elem]) {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if d[j] != Elem(1) {
                    self.data[i * n + j] = ring.mul(self.data[i * n + j], d[j]);
                }
            }
        }
    }

    /// Inverse by Gauss-Jordan elimination with unit pivots. Over a local ring
    /// an invertible matrix always has a unit pivot available.
    pub fn inverse(&self, ring: &Ring) -> Result<Mat> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for c in 0..n {
            let piv = (c..n).find(|&r| ring.is_unit(a.get(r, c))).ok_or(Error::Singular)?;
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                    inv.data.swap(piv * n + j, c * n + j);
                }
            }
            let iv = ring.inv(a.get(c, c)).ok_or(Error::Singular)?;
            for j in 0..n {
                a.data[c * n + j] = ring.mul(a.data[c * n + j], iv);
                inv.data[c * n + j] = ring.mul(inv.data[c * n + j], iv);
            }
            for r in 0..n {
                let f = a.get(r, c);
                if r == c || f.0 == 0 {
                    continue;
                }
                for j in 0..n {
                    let (x, y) = (a.data[c * n + j], inv.data[c * n + j]);
                    if x.0 != 0 {
                        a.data[r * n + j] = ring.sub(a.data[r * n + j], ring.mul(f, x));
                    }
                    if y.0 != 0 {
                        inv.data[r * n + j] = ring.sub(inv.data[r * n + j], ring.mul(f, y));
                    }
                }
            }
        }
        Ok(inv)
    }

    pub fn to_json(&self, ring: &Ring) -> Value {
        let rows: Vec<Vec<Value>> =
            (0..self.n).map(|i| self.row(i).iter().map(|&x| ring.to_json(x)).collect()).collect();
        json!({ "n": self.n, "ring": ring.to_string(), "rows": rows })
    }

    /// Reads `{n, ring, rows}`; returns the ring named in the document.
    pub fn from_json(v: &Value) -> Result<(Ring, Mat)> {
        let n = v["n"].as_u64().ok_or_else(|| Error::Json("missing `n`".into()))? as usize;
        let desc = v["ring"].as_str().ok_or_else(|| Error::Json("missing `ring`".into()))?;
        let ring = Ring::parse(desc)?;
        let rows = v["rows"].as_array().ok_or_else(|| Error::Json("missing `rows`".into()))?;
        if rows.len() != n {
            return Err(Error::Dimension { expected: n, got: rows.len() });
        }
        let mut m = Mat::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| Error::Json(format!("row {i} is not an array")))?;
            if row.len() != n {
                return Err(Error::Dimension { expected: n, got: row.len() });
            }
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, ring.from_json(x)?);
            }
        }
        Ok((ring, m))
    }
}
