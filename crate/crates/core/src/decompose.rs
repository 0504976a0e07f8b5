//! Big-cell normal form
//! `X = lambda t_{a_1}(s_1)...t_{a_l}(s_l) x_{a_1}(t_1)...x_{a_m}(t_m) x_{-a_1}(u_1)...x_{-a_m}(u_m)`
//! and recovery of its `n + 1` parameters from designated matrix cells.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Character, Chevalley, Factor, GroupElement};
use crate::matrix::Mat;
use crate::rings::{Elem, Ring};
use crate::roots::{marked_sequence, Class, MarkedSequence, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredElement {
    pub lambda: Elem,
    pub s: Vec<Elem>,
    /// Indexed by positive root number (root id `2a`).
    pub t: Vec<Elem>,
    pub u: Vec<Elem>,
}

impl FactoredElement {
    pub fn trivial(ring: &Ring, sys: &RootSystem) -> FactoredElement {
        let m = sys.num_positive();
        FactoredElement {
            lambda: ring.one(),
            s: vec![ring.one(); sys.rank()],
            t: vec![ring.zero(); m],
            u: vec![ring.zero(); m],
        }
    }

    /// `lambda, s_i` uniform in `1 + J`; `t, u` uniform in `J`.
    pub fn random<R: Rng + ?Sized>(ring: &Ring, sys: &RootSystem, rng: &mut R) -> FactoredElement {
        let m = sys.num_positive();
        FactoredElement {
            lambda: ring.random_principal_unit(rng),
            s: (0..sys.rank()).map(|_| ring.random_principal_unit(rng)).collect(),
            t: (0..m).map(|_| ring.random_radical(rng)).collect(),
            u: (0..m).map(|_| ring.random_radical(rng)).collect(),
        }
    }

    pub fn word(&self) -> Vec<Factor> {
        let m = self.t.len();
        let mut w = Vec::with_capacity(2 * m + 2);
        w.push(Factor::Scalar { lambda: self.lambda });
        w.push(Factor::Torus { chi: Character { values: self.s.clone() } });
        for a in 0..m {
            w.push(Factor::Unipotent { root: 2 * a, t: self.t[a] });
        }
        for a in 0..m {
            w.push(Factor::Unipotent { root: 2 * a + 1, t: self.u[a] });
        }
        w
    }

    pub fn to_json(&self, ring: &Ring) -> Value {
        let arr = |v: &[Elem]| v.iter().map(|&x| ring.to_json(x)).collect::<Vec<_>>();
        json!({ "lambda": ring.to_json(self.lambda), "s": arr(&self.s), "t": arr(&self.t), "u": arr(&self.u) })
    }

    pub fn from_json(ring: &Ring, v: &Value) -> Result<FactoredElement> {
        let arr = |k: &str| -> Result<Vec<Elem>> {
            v[k].as_array()
                .ok_or_else(|| Error::Json(format!("missing `{k}`")))?
                .iter()
                .map(|x| ring.from_json(x))
                .collect()
        };
        Ok(FactoredElement { lambda: ring.from_json(&v["lambda"])?, s: arr("s")?, t: arr("t")?, u: arr("u")? })
    }
}

/// The exact product matrix of a normal form.
pub fn compose(ch: &Chevalley, ring: &Ring, f: &FactoredElement) -> Result<GroupElement> {
    let sys = &ch.sys;
    if f.s.len() != sys.rank() {
        return Err(Error::Dimension { expected: sys.rank(), got: f.s.len() });
    }
    for v in [&f.t, &f.u] {
        if v.len() != sys.num_positive() {
            return Err(Error::Dimension { expected: sys.num_positive(), got: v.len() });
        }
    }
    if !ring.is_unit(f.lambda) {
        return Err(Error::NotAUnit(ring.format(f.lambda)));
    }
    ch.word_elem(ring, f.word())
}

/// Exponents of `s_1..s_l` in `d_mu = lambda s_1^{c_1} ... s_l^{c_l}`: the
/// coefficients of `mu` over the simple roots.
pub fn d_exponent(sys: &RootSystem, mu: usize) -> Vec<i64> {
    sys.coeffs(mu).to_vec()
}

/// What a designated cell determines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pin {
    /// `d_{-mu}` for the member with this index in `PositionTable::members`.
    D(usize),
    /// `t_a` for positive root number `a`.
    T(usize),
    U(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    pub row: usize,
    pub col: usize,
    pub pin: Pin,
    pub stage: usize,
    /// Coefficient of the pinned parameter in the cell, `X_rho[row][col]`.
    pub kappa: i64,
}

#[derive(Clone, Debug)]
pub struct PositionTable {
    /// The marked sequence, followed by auxiliary members when the sequence
    /// has fewer than `l + 1` roots.
    pub members: Vec<usize>,
    pub positions: Vec<Position>,
    /// Integer inverse of the exponent matrix `[1 | -c(gamma_j)]`; row 0 gives
    /// `lambda`, row `i + 1` gives `s_i` as products of powers of the `d`s.
    pub exp_inverse: Vec<Vec<i64>>,
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of an integer matrix when it is unimodular.
fn unimodular_inverse(a: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = a.len();
    // Rational Gauss-Jordan on (num, den) pairs.
    let mut m: Vec<Vec<(i128, i128)>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<(i128, i128)> = row.iter().map(|&x| (x as i128, 1)).collect();
            r.extend((0..n).map(|j| (i128::from(i == j), 1)));
            r
        })
        .collect();
    let norm = |(p, q): (i128, i128)| {
        let g = gcd(p, q).max(1);
        let s = if q < 0 { -1 } else { 1 };
        (s * p / g, s * q / g)
    };
    for c in 0..n {
        let piv = (c..n).find(|&r| m[r][c].0 != 0)?;
        m.swap(c, piv);
        let (p, q) = m[c][c];
        for x in m[c].iter_mut() {
            *x = norm((x.0 * q, x.1 * p));
        }
        for r in 0..n {
            if r == c || m[r][c].0 == 0 {
                continue;
            }
            let f = m[r][c];
            for j in 0..2 * n {
                let (a1, b1) = m[r][j];
                let (a2, b2) = m[c][j];
                m[r][j] = norm((a1 * f.1 * b2 - f.0 * a2 * b1, b1 * f.1 * b2));
            }
        }
    }
    let inv: Vec<Vec<i64>> = m
        .iter()
        .map(|row| row[n..].iter().map(|&(p, q)| if q == 1 { Some(p as i64) } else { None }).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    Some(inv)
}

fn is_power_of_two(c: i64) -> bool {
    c > 0 && c & (c - 1) == 0
}

/// The `n + 1` cells that determine a normal form.
pub fn designated_positions(ch: &Chevalley, seq: &MarkedSequence) -> Result<PositionTable> {
    let sys = &ch.sys;
    let l = sys.rank();
    let nr = sys.num_roots();
    let mut members = seq.gamma.clone();
    if members.len() < l + 1 && members.len() >= 2 {
        if let Some(aux) = sys.diff(members[0], members[1]) {
            if !members.contains(&aux) {
                members.push(aux);
            }
        }
    }
    if members.len() < l + 1 {
        return Err(Error::Coverage(format!("only {} members for rank {l}", members.len())));
    }
    let k = seq.gamma.len();

    let exp: Vec<Vec<i64>> = members[..=l]
        .iter()
        .map(|&g| std::iter::once(1).chain(sys.coeffs(g).iter().map(|c| -c)).collect())
        .collect();
    let exp_inverse = unimodular_inverse(&exp)
        .ok_or_else(|| Error::Coverage("exponent matrix of the first l + 1 members is not unimodular".into()))?;

    let weight_diff = |r: usize, c: usize| -> Option<usize> {
        match (r < nr, c < nr) {
            (true, true) => sys.diff(r, c),
            (true, false) => Some(r),
            (false, true) => Some(sys.neg(c)),
            (false, false) => None,
        }
    };
    let pin_cell = |row: usize, col: usize, stage: usize| -> Result<Position> {
        let rho = weight_diff(row, col).ok_or_else(|| Error::Coverage(format!("cell ({row},{col}) pins nothing")))?;
        let kappa = ch.ad(rho).get(row, col);
        if !matches!(kappa.abs(), 1 | 2 | 4) {
            return Err(Error::Coverage(format!("cell ({row},{col}) has coefficient {kappa}")));
        }
        let pin = if sys.is_positive(rho) { Pin::T(rho / 2) } else { Pin::U(rho / 2) };
        Ok(Position { row, col, pin, stage, kappa })
    };

    let mut positions = Vec::with_capacity(sys.dim() + 1);
    for (j, &g) in members[..=l].iter().enumerate() {
        let ng = sys.neg(g);
        positions.push(Position { row: ng, col: ng, pin: Pin::D(j), stage: j + 1, kappa: 1 });
    }
    let mut member_cells = Vec::new();
    let mut exception_cells = Vec::new();
    for beta in sys.positive_ids() {
        let pair = (0..members.len())
            .flat_map(|p| (0..members.len()).map(move |q| (p, q)))
            .find(|&(p, q)| sys.diff(members[p], members[q]) == Some(beta));
        if let Some((p, q)) = pair {
            let (np, nq) = (sys.neg(members[p]), sys.neg(members[q]));
            let stage = p.max(q) + 1;
            positions.push(pin_cell(np, nq, stage)?);
            positions.push(pin_cell(nq, np, stage)?);
        } else if seq.gamma.contains(&beta) {
            let c = sys.coeffs(beta);
            let j = (0..l)
                .rev()
                .find(|&j| sys.pairing_simple(beta, j) != 0 && is_power_of_two(c[j]))
                .ok_or_else(|| Error::Coverage(format!("no h cell for member {c:?}")))?;
            let nb = sys.neg(beta);
            member_cells.push(pin_cell(nb, nr + j, k + 1)?);
            member_cells.push(pin_cell(nr + j, nb, k + 1)?);
        } else if let Some(i) = seq.exceptions.iter().position(|e| e.beta == beta) {
            let e = &seq.exceptions[i];
            let (na, nd) = (sys.neg(seq.gamma[e.anchor]), sys.neg(e.delta));
            exception_cells.push((i, pin_cell(na, nd, k + 2 + i)?));
            exception_cells.push((i, pin_cell(nd, na, k + 2 + i)?));
        } else {
            return Err(Error::Coverage(format!("root {:?} is not pinned", sys.coeffs(beta))));
        }
    }
    positions.extend(member_cells);
    exception_cells.sort_by_key(|(i, _)| *i);
    positions.extend(exception_cells.into_iter().map(|(_, p)| p));

    let table = PositionTable { members, positions, exp_inverse };
    check_coverage(sys, &table)?;
    Ok(table)
}

fn check_coverage(sys: &RootSystem, table: &PositionTable) -> Result<()> {
    let n = sys.dim();
    if table.positions.len() != n + 1 {
        return Err(Error::Coverage(format!("{} positions, expected {}", table.positions.len(), n + 1)));
    }
    let cells: HashSet<(usize, usize)> = table.positions.iter().map(|p| (p.row, p.col)).collect();
    let pins: HashSet<Pin> = table.positions.iter().map(|p| p.pin).collect();
    if cells.len() != n + 1 || pins.len() != n + 1 {
        return Err(Error::Coverage("repeated cell or parameter".into()));
    }
    Ok(())
}

/// Positions for the system's own marked sequence.
pub fn default_positions(ch: &Chevalley) -> Result<PositionTable> {
    designated_positions(ch, &marked_sequence(&ch.sys)?)
}

impl PositionTable {
    /// `lambda, s` from the `d` values of the first `l + 1` members.
    fn torus_from_d(&self, ring: &Ring, d: &[Elem]) -> Result<(Elem, Vec<Elem>)> {
        let mut out = Vec::with_capacity(d.len());
        for row in &self.exp_inverse {
            let mut acc = ring.one();
            for (j, &e) in row.iter().enumerate() {
                let p = ring.powi(d[j], e).ok_or(Error::NotInNormalForm("non-unit diagonal cell".into()))?;
                acc = ring.mul(acc, p);
            }
            out.push(acc);
        }
        let lambda = out.remove(0);
        Ok((lambda, out))
    }

    /// Cells as 1-based `(row, col)` pairs.
    pub fn cells_one_based(&self) -> Vec<(usize, usize)> {
        self.positions.iter().map(|p| (p.row + 1, p.col + 1)).collect()
    }

    pub fn to_json(&self, sys: &RootSystem) -> Value {
        let label = |i: usize| crate::lie::basis_label(sys, i);
        let pos: Vec<Value> = self
            .positions
            .iter()
            .map(|p| {
                let pin = match p.pin {
                    Pin::D(j) => format!("d[-{:?}]", sys.coeffs(self.members[j])),
                    Pin::T(a) => format!("t[{:?}]", sys.coeffs(2 * a)),
                    Pin::U(a) => format!("u[{:?}]", sys.coeffs(2 * a)),
                };
                json!({ "row": label(p.row), "col": label(p.col), "pin": pin, "stage": p.stage })
            })
            .collect();
        Value::Array(pos)
    }
}

/// Result of gauging a matrix against the normal form.
#[derive(Clone, Debug)]
pub struct Gauge {
    pub params: FactoredElement,
    /// `D^{-1} C` where `D = compose(params)`.
    pub residual: Mat,
    pub iterations: usize,
}

/// `D^{-1} M` for `D = compose(f)`, applying inverse factors on the left.
pub fn apply_compose_inverse(ch: &Chevalley, ring: &Ring, f: &FactoredElement, m: &Mat) -> Result<Mat> {
    let mut r = m.clone();
    for fac in f.word() {
        let inv = ch.invert_factor(ring, &fac)?;
        ch.apply_factor_left(ring, &mut r, &inv)?;
    }
    Ok(r)
}

/// Finds normal-form parameters with `D^{-1} C` equal to the identity at
/// every designated cell, by fixed-point iteration. Each sweep corrects the
/// pinned parameter of every cell through its unit coefficient; the error
/// moves one power of `J` deeper per sweep, so the loop ends once `J^k = 0`.
pub fn gauge(ch: &Chevalley, ring: &Ring, table: &PositionTable, c: &Mat) -> Result<Gauge> {
    let sys = &ch.sys;
    let l = sys.rank();
    let m = sys.num_positive();
    let mut d = vec![ring.one(); l + 1];
    let mut t = vec![ring.zero(); m];
    let mut u = vec![ring.zero(); m];
    let max_iter = 2 * ring.nilpotency_index() as usize + 4;
    let kinv: Vec<Elem> = table
        .positions
        .iter()
        .map(|p| ring.inv(ring.from_int(p.kappa)).expect("kappa is a power of two up to sign"))
        .collect();
    for it in 0..=max_iter {
        let (lambda, s) = table.torus_from_d(ring, &d)?;
        let params = FactoredElement { lambda, s, t: t.clone(), u: u.clone() };
        let r = apply_compose_inverse(ch, ring, &params, c)?;
        let settled = table.positions.iter().all(|p| {
            let want = if matches!(p.pin, Pin::D(_)) { ring.one() } else { ring.zero() };
            r.get(p.row, p.col) == want
        });
        if settled {
            return Ok(Gauge { params, residual: r, iterations: it });
        }
        for (p, &ki) in table.positions.iter().zip(&kinv) {
            let v = r.get(p.row, p.col);
            match p.pin {
                Pin::D(j) => {
                    if !ring.is_unit(v) {
                        return Err(Error::NotInNormalForm(format!("designated diagonal cell ({}, {}) is not a unit", p.row + 1, p.col + 1)));
                    }
                    d[j] = ring.mul(d[j], v);
                }
                Pin::T(a) => t[a] = ring.add(t[a], ring.mul(v, ki)),
                Pin::U(a) => u[a] = ring.add(u[a], ring.mul(v, ki)),
            }
        }
    }
    Err(Error::NotInNormalForm(format!("no convergence within {max_iter} sweeps")))
}

/// Recovers `(lambda, s, t, u)` with `compose(result) = x`.
pub fn recover(ch: &Chevalley, ring: &Ring, table: &PositionTable, x: &Mat) -> Result<FactoredElement> {
    let g = gauge(ch, ring, table, x)?;
    if !g.residual.is_identity() {
        return Err(Error::NotInNormalForm("designated cells match but other entries differ".into()));
    }
    Ok(g.params)
}

/// Symbolic entry of `compose` at `(row, col)`: the value is
/// `d_row * sum coeff * prod t^e prod u^e`, where `d_row = lambda s^c(row)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryFormula {
    pub row: usize,
    pub col: usize,
    /// Exponents of `s_1..s_l` in `d_row` (zero for `h` rows).
    pub d_exponent: Vec<i64>,
    /// Monomials keyed by exponent vector over `t_1..t_m, u_1..u_m`.
    pub terms: BTreeMap<Vec<u8>, i64>,
}

type Poly = BTreeMap<Vec<u8>, i64>;

fn poly_add_scaled(dst: &mut Poly, src: &Poly, var: usize, power: u8, coef: i64) {
    for (mono, &c) in src {
        let mut k = mono.clone();
        k[var] += power;
        let e = dst.entry(k).or_insert(0);
        *e += c * coef;
    }
}

/// Sum over admissible root sequences, built by pushing `e_col` through the
/// factors from right to left; each factor contributes `1`, `p X` or
/// `p^2 X^2 / 2`.
pub fn entry_formula(ch: &Chevalley, row: usize, col: usize) -> EntryFormula {
    let sys = &ch.sys;
    let n = sys.dim();
    let m = sys.num_positive();
    let mut state: Vec<Poly> = vec![Poly::new(); n];
    state[col].insert(vec![0u8; 2 * m], 1);
    let order: Vec<(usize, usize)> = (0..m).map(|a| (2 * a, a)).chain((0..m).map(|a| (2 * a + 1, m + a))).collect();
    for &(root, var) in order.iter().rev() {
        let mut next = state.clone();
        for (power, mat) in [(1u8, ch.ad(root)), (2u8, ch.ad2_half(root))] {
            for &(r, c, v) in &mat.entries {
                if state[c].is_empty() {
                    continue;
                }
                let src = state[c].clone();
                poly_add_scaled(&mut next[r], &src, var, power, v);
            }
        }
        for p in next.iter_mut() {
            p.retain(|_, c| *c != 0);
        }
        state = next;
    }
    let d_exponent = if row < sys.num_roots() { d_exponent(sys, row) } else { vec![0; sys.rank()] };
    EntryFormula { row, col, d_exponent, terms: std::mem::take(&mut state[row]) }
}

impl EntryFormula {
    pub fn evaluate(&self, ring: &Ring, f: &FactoredElement) -> Result<Elem> {
        let m = f.t.len();
        let mut sum = ring.zero();
        for (mono, &c) in &self.terms {
            let mut term = ring.from_int(c);
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    let v = if i < m { f.t[i] } else { f.u[i - m] };
                    term = ring.mul(term, ring.pow(v, u64::from(e)));
                }
            }
            sum = ring.add(sum, term);
        }
        let mut d = f.lambda;
        for (i, &e) in self.d_exponent.iter().enumerate() {
            d = ring.mul(d, ring.powi(f.s[i], e).ok_or_else(|| Error::NotAUnit(ring.format(f.s[i])))?);
        }
        Ok(ring.mul(d, sum))
    }

    /// Readable form, e.g. `d*(1 - t1*u1)`.
    pub fn render(&self) -> String {
        let m = self.terms.keys().next().map(|k| k.len() / 2).unwrap_or(0);
        let mut parts = Vec::new();
        for (mono, &c) in &self.terms {
            let mut vars = Vec::new();
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    let name = if i < m { format!("t{}", i + 1) } else { format!("u{}", i - m + 1) };
                    vars.push(if e == 1 { name } else { format!("{name}^{e}") });
                }
            }
            let body = vars.join("*");
            let s = match (c, body.is_empty()) {
                (_, true) => format!("{c}"),
                (1, false) => body,
                (-1, false) => format!("-{body}"),
                _ => format!("{c}*{body}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            format!("d*({})", parts.join(" + ").replace("+ -", "- "))
        }
    }
}

/// Classification summary used by reports: which positive roots are pinned
/// via member differences, members, or exceptions.
pub fn pin_classes(sys: &RootSystem, seq: &MarkedSequence) -> Vec<(usize, Class)> {
    crate::roots::verify_marked_properties(sys, seq).classes
}
