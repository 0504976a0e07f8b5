//! Torus elements acting as `x_a(u) -> x_a(r^k u)`, where `k` is the
//! coefficient of `a_1` in `a`, over a ring extension when a root of `r` is
//! needed.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Character, Chevalley, GroupElement};
use crate::rings::{Elem, Ring};
use crate::roots::SystemType;

#[derive(Clone, Debug)]
pub struct TorusLift {
    pub base: Ring,
    pub r: Elem,
    /// `S`, equal to `base` when no root is adjoined.
    pub ring: Ring,
    /// Power of the adjoined root, `s^m = r`.
    pub m: Option<u32>,
    /// `s` when adjoined, otherwise `r`.
    pub generator: Elem,
    /// `t = prod h_{a_i}(generator^{exponents[i]})`.
    pub exponents: Vec<i64>,
    pub t: GroupElement,
}

/// Exponents and root degree for a system: `(exponents, m)`.
pub fn lift_exponents(ty: SystemType, l: usize) -> Result<(Vec<i64>, Option<u32>)> {
    Ok(match (ty, l) {
        (SystemType::A, _) => ((1..=l as i64).rev().collect(), Some(l as u32 + 1)),
        (SystemType::D, _) => {
            let mut e = vec![2; l - 2];
            e.extend([1, 1]);
            (e, Some(2))
        }
        (SystemType::E, 6) => (vec![4, 3, 5, 6, 4, 2], Some(3)),
        (SystemType::E, 7) => (vec![2, 2, 3, 4, 3, 2, 1], None),
        (SystemType::E, 8) => (vec![4, 5, 7, 10, 8, 6, 4, 2], None),
        _ => return Err(Error::UnsupportedSystem(format!("{ty:?}{l}"))),
    })
}

pub fn build_lift(ch: &Chevalley, base: &Ring, r: Elem) -> Result<TorusLift> {
    if !base.is_unit(r) {
        return Err(Error::NotAUnit(base.format(r)));
    }
    let sys = &ch.sys;
    let (exponents, m) = lift_exponents(sys.system_type(), sys.rank())?;
    let (ring, generator) = match m {
        Some(m) => Ring::adjoin_root(base, r, m)?,
        None => (base.clone(), r),
    };
    let mut values = vec![ring.one(); sys.rank()];
    for (i, &e) in exponents.iter().enumerate() {
        let v = ring.powi(generator, e).ok_or_else(|| Error::NotAUnit(ring.format(generator)))?;
        let chi = ch.h_alpha_character(&ring, sys.simple(i), v)?;
        for (acc, x) in values.iter_mut().zip(chi.values) {
            *acc = ring.mul(*acc, x);
        }
    }
    let t = ch.h_elem(&ring, &Character { values })?;
    Ok(TorusLift { base: base.clone(), r, ring, m, generator, exponents, t })
}

#[derive(Clone, Debug)]
pub struct LiftCheck {
    pub root: Vec<i64>,
    pub k: i64,
    pub u: Elem,
    pub passed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct LiftReport {
    pub simple: Vec<LiftCheck>,
    pub general: Vec<LiftCheck>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.simple.iter().chain(&self.general).all(|c| c.passed)
    }

    pub fn max_k(&self) -> i64 {
        self.simple.iter().chain(&self.general).map(|c| c.k).max().unwrap_or(0)
    }

    pub fn to_json(&self, lift: &TorusLift) -> Value {
        let f = |c: &LiftCheck| json!({ "root": c.root, "k": c.k, "u": lift.base.to_json(c.u), "pass": c.passed });
        json!({
            "ring": lift.ring.to_string(),
            "r": lift.base.to_json(lift.r),
            "exponents": lift.exponents,
            "simple": self.simple.iter().map(f).collect::<Vec<_>>(),
            "general": self.general.iter().map(f).collect::<Vec<_>>(),
            "pass": self.passed(),
        })
    }
}

/// `t x_a(u) t^{-1} = x_a(r^k u)` for one root, with `t` diagonal.
fn check_root(ch: &Chevalley, lift: &TorusLift, a: usize, u: Elem) -> Result<LiftCheck> {
    let s = &lift.ring;
    let k = ch.sys.coeffs(a)[0];
    let d: Vec<Elem> = (0..ch.n()).map(|i| lift.t.mat.get(i, i)).collect();
    let dinv: Vec<Elem> = d.iter().map(|&x| s.inv(x).ok_or_else(|| Error::NotAUnit(s.format(x)))).collect::<Result<_>>()?;
    let mut lhs = ch.x_matrix(s, a, u);
    lhs.scale_rows(s, &d);
    lhs.scale_cols(s, &dinv);
    let rk = s.powi(s.embed(lift.r), k).ok_or_else(|| Error::NotAUnit(s.format(lift.r)))?;
    let rhs = ch.x_matrix(s, a, s.mul(rk, u));
    Ok(LiftCheck { root: ch.sys.coeffs(a).to_vec(), k, u, passed: lhs == rhs })
}

/// Checks every simple root and its negative, the maximal root, and
/// `general` further roots drawn at random; `u` is random in the base ring.
pub fn verify_lift<R: Rng + ?Sized>(ch: &Chevalley, lift: &TorusLift, general: usize, rng: &mut R) -> Result<LiftReport> {
    let sys = &ch.sys;
    let mut report = LiftReport::default();
    for i in 0..sys.rank() {
        for a in [sys.simple(i), sys.neg(sys.simple(i))] {
            let u = lift.base.random(rng);
            report.simple.push(check_root(ch, lift, a, lift.ring.embed(u))?);
        }
    }
    let ids: Vec<usize> = sys.ids().collect();
    let mut roots = vec![sys.highest_root()];
    roots.extend(ids.choose_multiple(rng, general.min(ids.len())).copied());
    for a in roots {
        let u = lift.base.random(rng);
        report.general.push(check_root(ch, lift, a, lift.ring.embed(u))?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exponent_tables() {
        assert_eq!(lift_exponents(SystemType::E, 7).unwrap(), (vec![2, 2, 3, 4, 3, 2, 1], None));
        assert_eq!(lift_exponents(SystemType::E, 8).unwrap().0, vec![4, 5, 7, 10, 8, 6, 4, 2]);
        assert_eq!(lift_exponents(SystemType::A, 3).unwrap(), (vec![3, 2, 1], Some(4)));
        assert_eq!(lift_exponents(SystemType::D, 5).unwrap(), (vec![2, 2, 2, 1, 1], Some(2)));
    }

    #[test]
    fn trivial_r() {
        let ch = Chevalley::parse("D4").unwrap();
        let r = Ring::zmod(5, 3).unwrap();
        let lift = build_lift(&ch, &r, r.one()).unwrap();
        assert!(lift.t.mat.is_identity());
        let rep = verify_lift(&ch, &lift, 5, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn a3_over_z125() {
        let ch = Chevalley::parse("A3").unwrap();
        let r = Ring::zmod(5, 3).unwrap();
        let lift = build_lift(&ch, &r, r.from_int(2)).unwrap();
        assert_eq!(lift.m, Some(4));
        let rep = verify_lift(&ch, &lift, 20, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.simple.len(), 6);
    }

    #[test]
    fn wrong_exponents_fail() {
        let ch = Chevalley::parse("A2").unwrap();
        let r = Ring::zmod(5, 3).unwrap();
        let mut lift = build_lift(&ch, &r, r.from_int(2)).unwrap();
        lift.t = ch.h_alpha(&lift.ring, 0, lift.generator).unwrap();
        let rep = verify_lift(&ch, &lift, 0, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn non_unit_rejected() {
        let ch = Chevalley::parse("A2").unwrap();
        let r = Ring::zmod(5, 3).unwrap();
        assert!(matches!(build_lift(&ch, &r, r.from_int(5)), Err(Error::NotAUnit(_))));
    }
}
