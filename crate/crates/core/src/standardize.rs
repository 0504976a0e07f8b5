//! Reduction of a normalizing matrix to the identity and the linearized
//! systems over the residue field.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde_json::{json, Value};

use crate::decompose::{compose, gauge, FactoredElement, PositionTable};
use crate::error::{Error, Result};
use crate::group::{Chevalley, Factor, GroupElement};
use crate::lie::t_matrix;
use crate::linalg::{Echelon, SparseRow};
use crate::matrix::{Mat, SparseInt};
use crate::rings::Ring;

/// `g_a = x_a(1)^{-1} C x_a(1) C^{-1}` and whether it is congruent to the
/// identity modulo the radical.
pub fn conjugation_defect(ch: &Chevalley, ring: &Ring, c: &Mat, a: usize) -> Result<(Mat, bool)> {
    let cinv = c.inverse(ring)?;
    let mut g = c.clone();
    ch.apply_x_right(ring, &mut g, a, ring.one());
    let mut g = g.mul(ring, &cinv);
    ch.apply_x_left(ring, &mut g, a, ring.neg(ring.one()));
    let congruent = ch.congruence_member(&GroupElement::from_matrix(ring, g.clone()))?;
    Ok((g, congruent))
}

/// `D` read from the designated cells of `C`, and `C' = D^{-1} C`.
pub fn lemma2_gauge(ch: &Chevalley, ring: &Ring, table: &PositionTable, c: &Mat) -> Result<(FactoredElement, Mat)> {
    let g = gauge(ch, ring, table, c)?;
    Ok((g.params, g.residual))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LinOptions {
    /// Drop the term `X_e` of the block's own root: `b_i` for `e = a_i`,
    /// `c_i` for `e = -a_i`.
    pub omit_own_b: bool,
    /// Commutation with every `x_e(1)` only: no `a, b, c` unknowns and no
    /// structural zeros.
    pub control: bool,
}

/// Unknown of the linearized system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unknown {
    Z(usize, usize),
    A { block: usize, i: usize },
    B { block: usize, j: usize },
    C { block: usize, j: usize },
}

/// `Z x_e(1) - x_e(1)(Z + sum a_i T_i + sum b_j X_{a_j} + sum c_j X_{-a_j}) = 0`
/// for `e` ranging over the simple roots and their negatives, over `F_p`.
#[derive(Clone, Debug)]
pub struct LinSystem {
    pub p: u64,
    pub n: usize,
    /// Root ids `a_1, -a_1, a_2, -a_2, ...`.
    pub blocks: Vec<usize>,
    pub unknowns: Vec<Unknown>,
    pub rows: Vec<SparseRow>,
    pub options: LinOptions,
}

impl LinSystem {
    pub fn num_unknowns(&self) -> usize {
        self.unknowns.len()
    }

    pub fn num_equations(&self) -> usize {
        self.rows.len()
    }

    pub fn num_z(&self) -> usize {
        self.unknowns.iter().filter(|u| matches!(u, Unknown::Z(..))).count()
    }
}

pub fn build_linearized_system(ch: &Chevalley, table: &PositionTable, p: u64, options: LinOptions) -> LinSystem {
    let sys = &ch.sys;
    let n = sys.dim();
    let l = sys.rank();
    let m = sys.num_positive();
    let zeros: HashSet<(usize, usize)> = if options.control {
        HashSet::new()
    } else {
        table.positions.iter().map(|q| (q.row, q.col)).collect()
    };
    let mut unknowns = Vec::new();
    let mut zcol = HashMap::new();
    for r in 0..n {
        for c in 0..n {
            if !zeros.contains(&(r, c)) {
                zcol.insert((r, c), unknowns.len());
                unknowns.push(Unknown::Z(r, c));
            }
        }
    }
    let blocks: Vec<usize> = (0..l).flat_map(|i| [sys.simple(i), sys.neg(sys.simple(i))]).collect();
    let ts: Vec<SparseInt> = (0..l).map(|i| t_matrix(sys, i)).collect();
    let modp = |v: i64| v.rem_euclid(p as i64) as u64;

    let mut rows = Vec::with_capacity(blocks.len() * n * n);
    for (bi, &e) in blocks.iter().enumerate() {
        let x = SparseInt::new(n, vec![]).add(ch.ad(e), 1).add(ch.ad2_half(e), 1);
        let x = x.add(&SparseInt::new(n, (0..n).map(|i| (i, i, 1)).collect()), 1);
        // Products x * M for every private unknown of the block.
        let mut private: Vec<(usize, SparseInt)> = Vec::new();
        if !options.control {
            for (i, t) in ts.iter().enumerate() {
                private.push((unknowns.len(), x.mul(t)));
                unknowns.push(Unknown::A { block: bi, i });
            }
            for j in 0..m {
                if options.omit_own_b && 2 * j == e {
                    continue;
                }
                private.push((unknowns.len(), x.mul(ch.ad(2 * j))));
                unknowns.push(Unknown::B { block: bi, j });
            }
            for j in 0..m {
                if options.omit_own_b && 2 * j + 1 == e {
                    continue;
                }
                private.push((unknowns.len(), x.mul(ch.ad(2 * j + 1))));
                unknowns.push(Unknown::C { block: bi, j });
            }
        }
        let mut eqs: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); n * n];
        for &(k, c, v) in &x.entries {
            // (Z x)[r][c] gets Z[r][k] x[k][c]
            for r in 0..n {
                if let Some(&col) = zcol.get(&(r, k)) {
                    *eqs[r * n + c].entry(col).or_default() += v;
                }
            }
            // -(x Z)[k'][c'] with x[k'][k] = v, here (r = k, k = c)
            let (r, kk) = (k, c);
            for cc in 0..n {
                if let Some(&col) = zcol.get(&(kk, cc)) {
                    *eqs[r * n + cc].entry(col).or_default() -= v;
                }
            }
        }
        for (col, prod) in &private {
            for &(r, c, v) in &prod.entries {
                *eqs[r * n + c].entry(*col).or_default() -= v;
            }
        }
        for eq in eqs {
            let row: SparseRow = eq.into_iter().map(|(c, v)| (c, modp(v))).filter(|e| e.1 != 0).collect();
            rows.push(row);
        }
    }
    LinSystem { p, n, blocks, unknowns, rows, options }
}

/// Nullity by exact elimination.
pub fn kernel_dimension(lin: &LinSystem) -> usize {
    let mut ech = Echelon::new(lin.p);
    for row in &lin.rows {
        ech.insert(row);
    }
    lin.num_unknowns() - ech.rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Standard,
    NonstandardOrOutsideScope,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Standard => "standard",
            Verdict::NonstandardOrOutsideScope => "nonstandard-or-outside-scope",
        }
    }
}

/// Residue-field data for a matrix that is not congruent to the identity:
/// a diagram symmetry and a word over the residue field.
#[derive(Clone, Debug, Default)]
pub struct ResidueData {
    pub delta: Option<Vec<usize>>,
    pub gbar: Vec<Factor>,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub verdict: Verdict,
    pub delta: Option<Vec<usize>>,
    /// `g'` as lifted to the ring.
    pub lifted: Vec<Factor>,
    pub d: Option<FactoredElement>,
    pub residual_is_identity: bool,
    pub reason: Option<String>,
}

impl Certificate {
    pub fn to_json(&self, ch: &Chevalley, ring: &Ring) -> Value {
        let d_word = self.d.as_ref().map(|d| ch.word_to_json(ring, &d.word()));
        json!({
            "verdict": self.verdict.as_str(),
            "delta": self.delta.as_ref().map(|p| p.iter().map(|i| i + 1).collect::<Vec<_>>()),
            "lifted": ch.word_to_json(ring, &self.lifted),
            "D_word": d_word,
            "residual_norm_zero": self.residual_is_identity,
            "reason": self.reason,
        })
    }
}

/// Canonical lift of a residue-field word: every parameter `a` in `[0, p)`
/// becomes the ring element `a`.
pub fn lift_word(ring: &Ring, field: &Ring, word: &[Factor]) -> Vec<Factor> {
    let up = |x: crate::rings::Elem| ring.lift_residue(field.residue(x).unwrap_or(0));
    word.iter()
        .map(|f| match f {
            Factor::Unipotent { root, t } => Factor::Unipotent { root: *root, t: up(*t) },
            Factor::Torus { chi } => Factor::Torus {
                chi: crate::group::Character { values: chi.values.iter().map(|&v| up(v)).collect() },
            },
            Factor::Scalar { lambda } => Factor::Scalar { lambda: up(*lambda) },
            Factor::Graph { perm } => Factor::Graph { perm: perm.clone() },
        })
        .collect()
}

/// Reduces `C` to the congruence subgroup with the supplied residue data,
/// gauges it, and checks that nothing is left over.
pub fn standardness_certificate(
    ch: &Chevalley,
    ring: &Ring,
    table: &PositionTable,
    c: &Mat,
    residue: Option<&ResidueData>,
) -> Result<Certificate> {
    let field = ring.residue_field();
    let mut cert = Certificate {
        verdict: Verdict::NonstandardOrOutsideScope,
        delta: residue.and_then(|r| r.delta.clone()),
        lifted: residue.map(|r| lift_word(ring, &field, &r.gbar)).unwrap_or_default(),
        d: None,
        residual_is_identity: false,
        reason: None,
    };
    // C1 = A_delta^{-1} g'^{-1} C
    let mut c1 = c.clone();
    for f in ch.invert_word(ring, &cert.lifted)?.iter().rev() {
        ch.apply_factor_left(ring, &mut c1, f)?;
    }
    if let Some(perm) = &cert.delta {
        let a = ch.graph_matrix(ring, perm)?;
        c1 = ch.inverse(&a)?.mat.mul(ring, &c1);
    }
    if !ch.congruence_member(&GroupElement::from_matrix(ring, c1.clone()))? {
        cert.reason = Some(if residue.is_some() {
            "reduced matrix is not congruent to the identity".into()
        } else {
            "matrix is not congruent to the identity and no residue data was supplied".into()
        });
        return Ok(cert);
    }
    match gauge(ch, ring, table, &c1) {
        Ok(g) => {
            cert.residual_is_identity = g.residual.is_identity();
            cert.d = Some(g.params);
            if cert.residual_is_identity {
                cert.verdict = Verdict::Standard;
            } else {
                cert.reason = Some("residual differs from the identity".into());
            }
        }
        Err(Error::NotInNormalForm(why)) => cert.reason = Some(why),
        Err(e) => return Err(e),
    }
    Ok(cert)
}

/// Rebuilds `g' A_delta D` from a certificate.
pub fn reconstruct(ch: &Chevalley, ring: &Ring, cert: &Certificate) -> Result<Mat> {
    let mut word = cert.lifted.clone();
    if let Some(p) = &cert.delta {
        word.push(Factor::Graph { perm: p.clone() });
    }
    let mut m = ch.word_matrix(ring, &word)?;
    if let Some(d) = &cert.d {
        m = m.mul(ring, &compose(ch, ring, d)?.mat);
    }
    Ok(m)
}
