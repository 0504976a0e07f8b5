//! Elementary generators, torus elements and graph automorphism matrices of
//! the adjoint Chevalley group.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lie::{ad_x, structure_constants, StructureConstants};
use crate::matrix::{Mat, SparseInt};
use crate::rings::{Elem, Ring};
use crate::roots::RootSystem;

/// A homomorphism from the root lattice to the units, given on simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Unipotent { root: usize, t: Elem },
    Torus { chi: Character },
    Scalar { lambda: Elem },
    /// Diagram symmetry as a permutation of simple-root indices.
    Graph { perm: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub ring: Ring,
    pub mat: Mat,
    pub word: Option<Vec<Factor>>,
}

impl GroupElement {
    pub fn identity(ring: &Ring, n: usize) -> GroupElement {
        GroupElement { ring: ring.clone(), mat: Mat::identity(n), word: Some(vec![]) }
    }

    pub fn from_matrix(ring: &Ring, mat: Mat) -> GroupElement {
        GroupElement { ring: ring.clone(), mat, word: None }
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        let word = match (&self.word, &o.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        GroupElement { ring: self.ring.clone(), mat: self.mat.mul(&self.ring, &o.mat), word }
    }

    pub fn n(&self) -> usize {
        self.mat.n
    }
}

/// Root system with cached structure constants and adjoint matrices.
#[derive(Clone, Debug)]
pub struct Chevalley {
    pub sys: RootSystem,
    pub sc: StructureConstants,
    ad: Vec<SparseInt>,
    ad2: Vec<SparseInt>,
}

impl Chevalley {
    pub fn new(sys: RootSystem) -> Chevalley {
        let sc = structure_constants(&sys);
        let ad: Vec<SparseInt> = sys.ids().map(|a| ad_x(&sys, &sc, a)).collect();
        let ad2 = ad
            .iter()
            .map(|x| {
                let sq = x.mul(x);
                debug_assert!(sq.entries.iter().all(|e| e.2 % 2 == 0));
                SparseInt::new(sq.n, sq.entries.iter().map(|&(r, c, v)| (r, c, v / 2)).collect())
            })
            .collect();
        Chevalley { sys, sc, ad, ad2 }
    }

    pub fn parse(name: &str) -> Result<Chevalley> {
        Ok(Chevalley::new(RootSystem::parse(name)?))
    }

    pub fn n(&self) -> usize {
        self.sys.dim()
    }

    /// `X_a`.
    pub fn ad(&self, a: usize) -> &SparseInt {
        &self.ad[a]
    }

    /// `X_a^2 / 2`, an integral matrix.
    pub fn ad2_half(&self, a: usize) -> &SparseInt {
        &self.ad2[a]
    }

    fn x_terms(&self, ring: &Ring, a: usize, t: Elem) -> [(Elem, &SparseInt); 2] {
        [(t, &self.ad[a]), (ring.mul(t, t), &self.ad2[a])]
    }

    /// `x_a(t) = I + t X_a + t^2 X_a^2 / 2`.
    pub fn x_matrix(&self, ring: &Ring, a: usize, t: Elem) -> Mat {
        let mut m = Mat::identity(self.n());
        self.apply_x_left(ring, &mut m, a, t);
        m
    }

    pub fn x_elem(&self, ring: &Ring, a: usize, t: Elem) -> GroupElement {
        GroupElement {
            ring: ring.clone(),
            mat: self.x_matrix(ring, a, t),
            word: Some(vec![Factor::Unipotent { root: a, t }]),
        }
    }

    /// `M <- x_a(t) M`.
    pub fn apply_x_left(&self, ring: &Ring, m: &mut Mat, a: usize, t: Elem) {
        m.apply_left(ring, &self.x_terms(ring, a, t));
    }

    /// `M <- M x_a(t)`.
    pub fn apply_x_right(&self, ring: &Ring, m: &mut Mat, a: usize, t: Elem) {
        m.apply_right(ring, &self.x_terms(ring, a, t));
    }

    /// `chi(b)` for a root (or any lattice vector given by id).
    pub fn character_value(&self, ring: &Ring, chi: &Character, b: usize) -> Result<Elem> {
        let mut acc = ring.one();
        for (i, &c) in self.sys.coeffs(b).iter().enumerate() {
            let v = ring.powi(chi.values[i], c).ok_or_else(|| Error::NotAUnit(ring.format(chi.values[i])))?;
            acc = ring.mul(acc, v);
        }
        Ok(acc)
    }

    /// Diagonal of `h(chi)`: `chi(b)` at root positions, 1 at `h_i` positions.
    pub fn torus_diag(&self, ring: &Ring, chi: &Character) -> Result<Vec<Elem>> {
        if chi.values.len() != self.sys.rank() {
            return Err(Error::Dimension { expected: self.sys.rank(), got: chi.values.len() });
        }
        if let Some(bad) = chi.values.iter().find(|&&v| !ring.is_unit(v)) {
            return Err(Error::NotAUnit(ring.format(*bad)));
        }
        let mut d: Vec<Elem> = self.sys.ids().map(|b| self.character_value(ring, chi, b)).collect::<Result<_>>()?;
        d.extend(std::iter::repeat(ring.one()).take(self.sys.rank()));
        Ok(d)
    }

    pub fn h_elem(&self, ring: &Ring, chi: &Character) -> Result<GroupElement> {
        let d = self.torus_diag(ring, chi)?;
        Ok(GroupElement {
            ring: ring.clone(),
            mat: Mat::diagonal(&d),
            word: Some(vec![Factor::Torus { chi: chi.clone() }]),
        })
    }

    /// `chi_{a,u}: b -> u^{<b, a>}`.
    pub fn h_alpha_character(&self, ring: &Ring, a: usize, u: Elem) -> Result<Character> {
        let values = (0..self.sys.rank())
            .map(|j| {
                ring.powi(u, self.sys.pairing(self.sys.simple(j), a)).ok_or_else(|| Error::NotAUnit(ring.format(u)))
            })
            .collect::<Result<_>>()?;
        Ok(Character { values })
    }

    pub fn h_alpha(&self, ring: &Ring, a: usize, u: Elem) -> Result<GroupElement> {
        let chi = self.h_alpha_character(ring, a, u)?;
        self.h_elem(ring, &chi)
    }

    /// Character with `chi(a_k) = x` and `chi(a_j) = 1` otherwise.
    pub fn t_k_character(&self, ring: &Ring, k: usize, x: Elem) -> Character {
        let mut values = vec![ring.one(); self.sys.rank()];
        values[k] = x;
        Character { values }
    }

    pub fn t_k(&self, ring: &Ring, k: usize, x: Elem) -> Result<GroupElement> {
        self.h_elem(ring, &self.t_k_character(ring, k, x))
    }

    pub fn scalar(&self, ring: &Ring, lambda: Elem) -> Result<GroupElement> {
        if !ring.is_unit(lambda) {
            return Err(Error::NotAUnit(ring.format(lambda)));
        }
        Ok(GroupElement {
            ring: ring.clone(),
            mat: Mat::scalar(self.n(), lambda),
            word: Some(vec![Factor::Scalar { lambda }]),
        })
    }

    /// Signs `eps(a)` with `A x_a(t) A^{-1} = x_{perm(a)}(eps(a) t)`, equal to
    /// 1 on all simple roots and their negatives.
    pub fn graph_signs(&self, perm: &[usize]) -> Result<Vec<i64>> {
        let sys = &self.sys;
        if !sys.is_diagram_symmetry(perm) {
            return Err(Error::NotADiagramSymmetry(perm.to_vec()));
        }
        let mut eps = vec![0i64; sys.num_roots()];
        for a in sys.positive_ids() {
            for id in [a, sys.neg(a)] {
                if sys.height(a) == 1 {
                    eps[id] = 1;
                    continue;
                }
                let (b, s) = (0..sys.rank())
                    .map(|i| {
                        let s = sys.simple(i);
                        if sys.is_positive(id) { s } else { sys.neg(s) }
                    })
                    .find_map(|s| sys.diff(id, s).map(|b| (b, s)))
                    .expect("every non-simple root has a simple predecessor");
                let (db, ds) = (sys.permute(perm, b), sys.permute(perm, s));
                eps[id] = eps[b] * eps[s] * self.sc.n(b, s) * self.sc.n(db, ds);
            }
        }
        Ok(eps)
    }

    /// `A_delta`: `v_a -> eps(a) v_{delta a}`, `h_i -> h_{delta i}`.
    pub fn graph_matrix(&self, ring: &Ring, perm: &[usize]) -> Result<GroupElement> {
        let eps = self.graph_signs(perm)?;
        let sys = &self.sys;
        let nr = sys.num_roots();
        let mut m = Mat::zeros(self.n());
        for a in sys.ids() {
            m.set(sys.permute(perm, a), a, ring.from_int(eps[a]));
        }
        for (i, &p) in perm.iter().enumerate() {
            m.set(nr + p, nr + i, ring.one());
        }
        Ok(GroupElement { ring: ring.clone(), mat: m, word: Some(vec![Factor::Graph { perm: perm.to_vec() }]) })
    }

    /// Matrix of a single factor.
    pub fn factor_matrix(&self, ring: &Ring, f: &Factor) -> Result<Mat> {
        match f {
            Factor::Unipotent { root, t } => Ok(self.x_matrix(ring, *root, *t)),
            Factor::Torus { chi } => Ok(Mat::diagonal(&self.torus_diag(ring, chi)?)),
            Factor::Scalar { lambda } => Ok(self.scalar(ring, *lambda)?.mat),
            Factor::Graph { perm } => Ok(self.graph_matrix(ring, perm)?.mat),
        }
    }

    /// `M <- F M`.
    pub fn apply_factor_left(&self, ring: &Ring, m: &mut Mat, f: &Factor) -> Result<()> {
        match f {
            Factor::Unipotent { root, t } => self.apply_x_left(ring, m, *root, *t),
            Factor::Torus { chi } => m.scale_rows(ring, &self.torus_diag(ring, chi)?),
            Factor::Scalar { lambda } => m.scale_rows(ring, &vec![*lambda; self.n()]),
            Factor::Graph { .. } => *m = self.factor_matrix(ring, f)?.mul(ring, m),
        }
        Ok(())
    }

    /// Product of a word, evaluated right to left with sparse updates.
    pub fn word_matrix(&self, ring: &Ring, word: &[Factor]) -> Result<Mat> {
        let mut m = Mat::identity(self.n());
        for f in word.iter().rev() {
            self.apply_factor_left(ring, &mut m, f)?;
        }
        Ok(m)
    }

    pub fn word_elem(&self, ring: &Ring, word: Vec<Factor>) -> Result<GroupElement> {
        let mat = self.word_matrix(ring, &word)?;
        Ok(GroupElement { ring: ring.clone(), mat, word: Some(word) })
    }

    pub fn invert_factor(&self, ring: &Ring, f: &Factor) -> Result<Factor> {
        let not_unit = |x: Elem| Error::NotAUnit(ring.format(x));
        Ok(match f {
            Factor::Unipotent { root, t } => Factor::Unipotent { root: *root, t: ring.neg(*t) },
            Factor::Torus { chi } => Factor::Torus {
                chi: Character {
                    values: chi.values.iter().map(|&v| ring.inv(v).ok_or_else(|| not_unit(v))).collect::<Result<_>>()?,
                },
            },
            Factor::Scalar { lambda } => Factor::Scalar { lambda: ring.inv(*lambda).ok_or_else(|| not_unit(*lambda))? },
            Factor::Graph { perm } => {
                let mut inv = vec![0; perm.len()];
                for (i, &p) in perm.iter().enumerate() {
                    inv[p] = i;
                }
                Factor::Graph { perm: inv }
            }
        })
    }

    pub fn invert_word(&self, ring: &Ring, word: &[Factor]) -> Result<Vec<Factor>> {
        word.iter().rev().map(|f| self.invert_factor(ring, f)).collect()
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        match &g.word {
            Some(w) => self.word_elem(&g.ring, self.invert_word(&g.ring, w)?),
            None => Ok(GroupElement::from_matrix(&g.ring, g.mat.inverse(&g.ring)?)),
        }
    }

    /// `[g, h] = g h g^{-1} h^{-1}`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        Ok(g.mul(h).mul(&self.inverse(g)?).mul(&self.inverse(h)?))
    }

    /// `[x_a(t), x_b(u)] = x_{a+b}(N(a,b) t u)` when `a + b` is a root, and
    /// the identity otherwise.
    pub fn chevalley_comm_check(&self, ring: &Ring, a: usize, b: usize, t: Elem, u: Elem) -> Result<bool> {
        let c = self.commutator(&self.x_elem(ring, a, t), &self.x_elem(ring, b, u))?;
        Ok(match self.sys.sum(a, b) {
            Some(s) => {
                let coef = ring.mul(ring.from_int(self.sc.n(a, b)), ring.mul(t, u));
                c.mat == self.x_matrix(ring, s, coef)
            }
            None => c.mat.is_identity(),
        })
    }

    /// `h(chi) x_b(xi) h(chi)^{-1} = x_b(chi(b) xi)`.
    pub fn conj_check_eq1(&self, ring: &Ring, chi: &Character, b: usize, xi: Elem) -> Result<bool> {
        let d = self.torus_diag(ring, chi)?;
        let dinv: Vec<Elem> = d.iter().map(|&x| ring.inv(x).expect("torus entries are units")).collect();
        let mut m = self.x_matrix(ring, b, xi);
        m.scale_rows(ring, &d);
        m.scale_cols(ring, &dinv);
        let rhs = self.x_matrix(ring, b, ring.mul(self.character_value(ring, chi, b)?, xi));
        Ok(m == rhs)
    }

    /// Whether every entry of `g - I` lies in the maximal ideal.
    pub fn congruence_member(&self, g: &GroupElement) -> Result<bool> {
        let r = &g.ring;
        let n = g.n();
        for i in 0..n {
            for j in 0..n {
                let x = g.mat.get(i, j);
                let d = if i == j { r.sub(x, r.one()) } else { x };
                if !r.radical_member(d)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn factor_to_json(&self, ring: &Ring, f: &Factor) -> Value {
        match f {
            Factor::Unipotent { root, t } => {
                json!({ "type": "unipotent", "root": self.sys.coeffs(*root), "t": ring.to_json(*t) })
            }
            Factor::Torus { chi } => {
                json!({ "type": "torus", "chi": chi.values.iter().map(|&v| ring.to_json(v)).collect::<Vec<_>>() })
            }
            Factor::Scalar { lambda } => json!({ "type": "scalar", "lambda": ring.to_json(*lambda) }),
            Factor::Graph { perm } => {
                json!({ "type": "graph", "perm": perm.iter().map(|p| p + 1).collect::<Vec<_>>() })
            }
        }
    }

    pub fn word_to_json(&self, ring: &Ring, w: &[Factor]) -> Value {
        Value::Array(w.iter().map(|f| self.factor_to_json(ring, f)).collect())
    }

    pub fn factor_from_json(&self, ring: &Ring, v: &Value) -> Result<Factor> {
        let bad = |what: &str| Error::Json(format!("factor {v}: {what}"));
        match v["type"].as_str() {
            Some("unipotent") => {
                let c: Vec<i64> = serde_json::from_value(v["root"].clone()).map_err(|_| bad("root"))?;
                Ok(Factor::Unipotent { root: self.sys.root_id(&c)?, t: ring.from_json(&v["t"])? })
            }
            Some("torus") => {
                let vals = v["chi"].as_array().ok_or_else(|| bad("chi"))?;
                let values = vals.iter().map(|x| ring.from_json(x)).collect::<Result<_>>()?;
                Ok(Factor::Torus { chi: Character { values } })
            }
            Some("scalar") => Ok(Factor::Scalar { lambda: ring.from_json(&v["lambda"])? }),
            Some("graph") => {
                let p: Vec<usize> = serde_json::from_value(v["perm"].clone()).map_err(|_| bad("perm"))?;
                Ok(Factor::Graph { perm: p.iter().map(|x| x.wrapping_sub(1)).collect() })
            }
            _ => Err(bad("unknown type")),
        }
    }

    pub fn word_from_json(&self, ring: &Ring, v: &Value) -> Result<Vec<Factor>> {
        v.as_array()
            .ok_or_else(|| Error::Json("word is not an array".into()))?
            .iter()
            .map(|f| self.factor_from_json(ring, f))
            .collect()
    }
}
