//! Exact arithmetic in the finite local rings `Z/p^k`, `F_p`, `F_p[e]/(e^k)`
//! and in root-adjunction extensions `R0[y]/(y^m - r)`.
//!
//! Elements are plain `Elem` codes interpreted by a `Ring`. Codes are
//! canonical, so two elements are equal exactly when their codes are.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde_json::Value;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Canonical code of a ring element.
///
/// For `Z/p^k` and `F_p` this is the residue itself. For `F_p[e]/(e^k)` the
/// code is `sum c_i p^i` where `c_i` is the coefficient of `e^i`. Extension
/// elements `sum b_i y^i` are encoded as `sum code(b_i) |R0|^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u64);

type Digits = SmallVec<[u64; 8]>;

#[derive(Clone, Debug)]
pub enum RingKind {
    Zmod { p: u64, k: u32 },
    Gf { p: u64 },
    Trunc { p: u64, k: u32 },
    Ext { base: Ring, r: Elem, m: u32 },
}

#[derive(Debug)]
struct Inner {
    kind: RingKind,
    size: u64,
    half: Elem,
}

/// Shared handle to a ring. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<Inner>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.to_string() == other.to_string()
    }
}
impl Eq for Ring {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn inv_mod(a: u64, q: u64) -> Option<u64> {
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(q as i128) as u64)
}

impl Ring {
    fn build(kind: RingKind, size: u64) -> Ring {
        let mut ring = Ring(Arc::new(Inner { kind, size, half: Elem(0) }));
        let two = ring.from_int(2);
        let half = ring.inv(two).expect("2 is a unit in odd characteristic");
        Arc::get_mut(&mut ring.0).expect("fresh handle").half = half;
        ring
    }

    /// `Z/p^k` for an odd prime `p`.
    pub fn zmod(p: u64, k: u32) -> Result<Ring> {
        check_prime(p)?;
        if k == 0 {
            return Err(Error::InvalidDescriptor(format!("zmod:{p}^0")));
        }
        let q = p.checked_pow(k).ok_or(Error::RingTooLarge)?;
        Ok(Ring::build(RingKind::Zmod { p, k }, q))
    }

    pub fn gf(p: u64) -> Result<Ring> {
        check_prime(p)?;
        Ok(Ring::build(RingKind::Gf { p }, p))
    }

    /// `F_p[e]/(e^k)`.
    pub fn trunc(p: u64, k: u32) -> Result<Ring> {
        check_prime(p)?;
        if k == 0 {
            return Err(Error::InvalidDescriptor(format!("trunc:{p}:0")));
        }
        let q = p.checked_pow(k).ok_or(Error::RingTooLarge)?;
        Ok(Ring::build(RingKind::Trunc { p, k }, q))
    }

    /// `base[y]/(y^m - r)` together with the class of `y`.
    pub fn adjoin_root(base: &Ring, r: Elem, m: u32) -> Result<(Ring, Elem)> {
        if !base.is_local() {
            return Err(Error::LocalityNotGuaranteed);
        }
        if m < 2 {
            return Err(Error::InvalidDescriptor(format!("ext:{base}:_:{m}")));
        }
        if r.0 >= base.size() {
            return Err(Error::ForeignElement(base.to_string()));
        }
        if !base.is_unit(r) {
            return Err(Error::NotAUnit(base.format(r)));
        }
        let size = base.size().checked_pow(m).ok_or(Error::RingTooLarge)?;
        let ring = Ring::build(RingKind::Ext { base: base.clone(), r, m }, size);
        let y = Elem(base.size());
        Ok((ring, y))
    }

    /// Parses `zmod:<p>^<k>`, `gf:<p>`, `trunc:<p>:<k>` or `ext:<base>:<r>:<m>`.
    pub fn parse(desc: &str) -> Result<Ring> {
        let bad = || Error::InvalidDescriptor(desc.to_string());
        let desc = desc.trim();
        if let Some(rest) = desc.strip_prefix("zmod:") {
            let (p, k) = rest.split_once('^').ok_or_else(bad)?;
            Ring::zmod(p.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?)
        } else if let Some(rest) = desc.strip_prefix("gf:") {
            Ring::gf(rest.parse().map_err(|_| bad())?)
        } else if let Some(rest) = desc.strip_prefix("trunc:") {
            let (p, k) = rest.split_once(':').ok_or_else(bad)?;
            Ring::trunc(p.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?)
        } else if let Some(rest) = desc.strip_prefix("ext:") {
            let mut parts = rest.rsplitn(3, ':');
            let m: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let r = parts.next().ok_or_else(bad)?;
            let base = Ring::parse(parts.next().ok_or_else(bad)?)?;
            let r = base.parse_elem(r)?;
            Ok(Ring::adjoin_root(&base, r, m)?.0)
        } else {
            Err(bad())
        }
    }

    /// Reads an element in descriptor notation: an integer, or for truncated
    /// rings a comma separated coefficient list (a bare integer is a constant).
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let bad = || Error::InvalidDescriptor(s.to_string());
        let s = s.trim();
        match &self.0.kind {
            RingKind::Zmod { .. } | RingKind::Gf { .. } => {
                let v: i64 = s.parse().map_err(|_| bad())?;
                Ok(self.from_int(v))
            }
            RingKind::Trunc { p, k } => {
                let cs: Vec<i64> = s
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad())?;
                if cs.len() > *k as usize {
                    return Err(bad());
                }
                let ds: Digits = cs.iter().map(|c| c.rem_euclid(*p as i64) as u64).collect();
                Ok(self.pack(&ds))
            }
            RingKind::Ext { base, m, .. } => {
                let cs: Vec<&str> = s.split(';').collect();
                if cs.len() > *m as usize {
                    return Err(bad());
                }
                let ds = cs
                    .iter()
                    .map(|c| base.parse_elem(c).map(|e| e.0))
                    .collect::<Result<Digits>>()?;
                Ok(self.pack(&ds))
            }
        }
    }

    pub fn kind(&self) -> &RingKind {
        &self.0.kind
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// The residue characteristic `p`.
    pub fn prime(&self) -> u64 {
        match &self.0.kind {
            RingKind::Zmod { p, .. } | RingKind::Gf { p } | RingKind::Trunc { p, .. } => *p,
            RingKind::Ext { base, .. } => base.prime(),
        }
    }

    pub fn is_local(&self) -> bool {
        !matches!(self.0.kind, RingKind::Ext { .. })
    }

    /// Smallest `k` with `J^k = 0`.
    pub fn nilpotency_index(&self) -> u32 {
        match &self.0.kind {
            RingKind::Zmod { k, .. } | RingKind::Trunc { k, .. } => *k,
            RingKind::Gf { .. } => 1,
            RingKind::Ext { base, .. } => base.nilpotency_index(),
        }
    }

    pub fn residue_field(&self) -> Ring {
        Ring::gf(self.prime()).expect("prime already validated")
    }

    fn radix(&self) -> (u64, usize) {
        match &self.0.kind {
            RingKind::Trunc { p, k } => (*p, *k as usize),
            RingKind::Ext { base, m, .. } => (base.size(), *m as usize),
            _ => (self.size(), 1),
        }
    }

    fn unpack(&self, x: Elem) -> Digits {
        let (b, len) = self.radix();
        let mut v = x.0;
        let mut out = Digits::with_capacity(len);
        for _ in 0..len {
            out.push(v % b);
            v /= b;
        }
        out
    }

    fn pack(&self, ds: &[u64]) -> Elem {
        let (b, _) = self.radix();
        let mut v = 0u64;
        for d in ds.iter().rev() {
            v = v * b + d;
        }
        Elem(v)
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    pub fn half(&self) -> Elem {
        self.0.half
    }

    pub fn from_int(&self, v: i64) -> Elem {
        match &self.0.kind {
            RingKind::Zmod { .. } | RingKind::Gf { .. } => {
                Elem(v.rem_euclid(self.size() as i64) as u64)
            }
            RingKind::Trunc { p, .. } => Elem(v.rem_euclid(*p as i64) as u64),
            RingKind::Ext { base, .. } => base.from_int(v),
        }
    }

    /// Embeds an element of the base ring of an extension.
    pub fn embed(&self, x: Elem) -> Elem {
        x
    }

    /// Canonical lift of a residue class `0 <= a < p`.
    pub fn lift_residue(&self, a: u64) -> Elem {
        self.from_int((a % self.prime()) as i64)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.kind {
            RingKind::Zmod { .. } | RingKind::Gf { .. } => {
                let q = self.size();
                let s = a.0 + b.0;
                Elem(if s >= q { s - q } else { s })
            }
            RingKind::Trunc { p, .. } => {
                let (x, y) = (self.unpack(a), self.unpack(b));
                let s: Digits = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
                self.pack(&s)
            }
            RingKind::Ext { base, .. } => {
                let (x, y) = (self.unpack(a), self.unpack(b));
                let s: Digits = x.iter().zip(&y).map(|(u, v)| base.add(Elem(*u), Elem(*v)).0).collect();
                self.pack(&s)
            }
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.kind {
            RingKind::Zmod { .. } | RingKind::Gf { .. } => {
                Elem(if a.0 == 0 { 0 } else { self.size() - a.0 })
            }
            RingKind::Trunc { p, .. } => {
                let s: Digits = self.unpack(a).iter().map(|u| (p - u) % p).collect();
                self.pack(&s)
            }
            RingKind::Ext { base, .. } => {
                let s: Digits = self.unpack(a).iter().map(|u| base.neg(Elem(*u)).0).collect();
                self.pack(&s)
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.kind {
            RingKind::Zmod { .. } | RingKind::Gf { .. } => {
                let q = self.size();
                if q < (1 << 32) {
                    Elem(a.0 * b.0 % q)
                } else {
                    Elem(mulmod(a.0, b.0, q))
                }
            }
            RingKind::Trunc { p, k } => {
                if a.0 < *p && b.0 < *p {
                    return Elem(a.0 * b.0 % p);
                }
                let (x, y) = (self.unpack(a), self.unpack(b));
                let k = *k as usize;
                let mut c: Digits = SmallVec::from_elem(0, k);
                for i in 0..k {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..k - i {
                        c[i + j] = (c[i + j] + x[i] * y[j]) % p;
                    }
                }
                self.pack(&c)
            }
            RingKind::Ext { base, r, m } => {
                let (x, y) = (self.unpack(a), self.unpack(b));
                let m = *m as usize;
                let mut c: Digits = SmallVec::from_elem(0, 2 * m - 1);
                for i in 0..m {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..m {
                        let t = base.mul(Elem(x[i]), Elem(y[j]));
                        c[i + j] = base.add(Elem(c[i + j]), t).0;
                    }
                }
                for d in (m..2 * m - 1).rev() {
                    let t = base.mul(Elem(c[d]), *r);
                    c[d - m] = base.add(Elem(c[d - m]), t).0;
                }
                c.truncate(m);
                self.pack(&c)
            }
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for a signed exponent; `None` if `e < 0` and `a` is not a unit.
    pub fn powi(&self, a: Elem, e: i64) -> Option<Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            Some(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        match &self.0.kind {
            RingKind::Zmod { .. } | RingKind::Gf { .. } => inv_mod(a.0, self.size()).map(Elem),
            RingKind::Trunc { p, k } => {
                let x = self.unpack(a);
                let c0 = inv_mod(x[0], *p)?;
                let k = *k as usize;
                // b_n = -c0 * sum_{i=1..n} x_i b_{n-i}
                let mut b: Digits = SmallVec::from_elem(0, k);
                b[0] = c0;
                for n in 1..k {
                    let mut s = 0;
                    for i in 1..=n {
                        s = (s + x[i] * b[n - i]) % p;
                    }
                    b[n] = (p - s) % p * c0 % p;
                }
                Some(self.pack(&b))
            }
            RingKind::Ext { base, m, .. } => {
                let m = *m as usize;
                // Solve M z = e_0 where column j of M holds a * y^j.
                let mut cols = Vec::with_capacity(m);
                let mut cur = a;
                for _ in 0..m {
                    cols.push(self.unpack(cur));
                    cur = self.mul(cur, Elem(base.size()));
                }
                let mut mat: Vec<Vec<Elem>> = (0..m)
                    .map(|i| {
                        let mut row: Vec<Elem> = (0..m).map(|j| Elem(cols[j][i])).collect();
                        row.push(if i == 0 { base.one() } else { base.zero() });
                        row
                    })
                    .collect();
                for c in 0..m {
                    let piv = (c..m).find(|&r| base.is_unit(mat[r][c]))?;
                    mat.swap(c, piv);
                    let iv = base.inv(mat[c][c])?;
                    for x in mat[c].iter_mut() {
                        *x = base.mul(*x, iv);
                    }
                    for r in 0..m {
                        if r != c && mat[r][c] != base.zero() {
                            let f = mat[r][c];
                            for j in c..=m {
                                let t = base.mul(f, mat[c][j]);
                                mat[r][j] = base.sub(mat[r][j], t);
                            }
                        }
                    }
                }
                let z: Digits = mat.iter().map(|row| row[m].0).collect();
                Some(self.pack(&z))
            }
        }
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        match &self.0.kind {
            RingKind::Zmod { p, .. } | RingKind::Gf { p } => a.0 % p != 0,
            RingKind::Trunc { p, .. } => a.0 % p != 0,
            RingKind::Ext { .. } => self.inv(a).is_some(),
        }
    }

    /// Membership in the maximal ideal. Only defined for local kinds.
    pub fn radical_member(&self, a: Elem) -> Result<bool> {
        if !self.is_local() {
            return Err(Error::LocalityNotGuaranteed);
        }
        Ok(!self.is_unit(a))
    }

    /// Image in the residue field `F_p`, as an integer in `[0, p)`.
    pub fn residue(&self, a: Elem) -> Result<u64> {
        if !self.is_local() {
            return Err(Error::LocalityNotGuaranteed);
        }
        Ok(a.0 % self.prime())
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.gen_range(0..self.size()))
    }

    /// Uniform element of `J`. For extensions, a random element with all
    /// coefficients in the radical of the base.
    pub fn random_radical<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.0.kind {
            RingKind::Zmod { p, .. } => Elem(p * rng.gen_range(0..self.size() / p)),
            RingKind::Gf { .. } => Elem(0),
            RingKind::Trunc { p, .. } => Elem(p * rng.gen_range(0..self.size() / p)),
            RingKind::Ext { base, m, .. } => {
                let ds: Digits = (0..*m).map(|_| base.random_radical(rng).0).collect();
                self.pack(&ds)
            }
        }
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random(rng);
            if self.is_unit(x) {
                return x;
            }
        }
    }

    /// Uniform element of `1 + J`.
    pub fn random_principal_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        let j = self.random_radical(rng);
        self.add(self.one(), j)
    }

    /// Human readable form; also accepted by `parse_elem`.
    pub fn format(&self, a: Elem) -> String {
        match &self.0.kind {
            RingKind::Zmod { .. } | RingKind::Gf { .. } => a.0.to_string(),
            RingKind::Trunc { .. } => {
                let ds = self.unpack(a);
                ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
            }
            RingKind::Ext { base, .. } => {
                let ds = self.unpack(a);
                ds.iter().map(|d| base.format(Elem(*d))).collect::<Vec<_>>().join(";")
            }
        }
    }

    /// JSON form: an integer for `Z/p^k` and `F_p`, a coefficient array otherwise.
    pub fn to_json(&self, a: Elem) -> Value {
        match &self.0.kind {
            RingKind::Zmod { .. } | RingKind::Gf { .. } => Value::from(a.0),
            RingKind::Trunc { .. } => Value::from(self.unpack(a).to_vec()),
            RingKind::Ext { base, .. } => {
                Value::Array(self.unpack(a).iter().map(|d| base.to_json(Elem(*d))).collect())
            }
        }
    }

    pub fn from_json(&self, v: &Value) -> Result<Elem> {
        let bad = || Error::Json(format!("`{v}` is not an element of {self}"));
        match &self.0.kind {
            RingKind::Zmod { .. } | RingKind::Gf { .. } => {
                let x = v.as_u64().ok_or_else(bad)?;
                if x >= self.size() {
                    return Err(bad());
                }
                Ok(Elem(x))
            }
            RingKind::Trunc { p, k } => {
                let arr = v.as_array().ok_or_else(bad)?;
                if arr.len() != *k as usize {
                    return Err(bad());
                }
                let ds = arr
                    .iter()
                    .map(|d| d.as_u64().filter(|d| d < p).ok_or_else(bad))
                    .collect::<Result<Digits>>()?;
                Ok(self.pack(&ds))
            }
            RingKind::Ext { base, m, .. } => {
                let arr = v.as_array().ok_or_else(bad)?;
                if arr.len() != *m as usize {
                    return Err(bad());
                }
                let ds = arr.iter().map(|d| base.from_json(d).map(|e| e.0)).collect::<Result<Digits>>()?;
                Ok(self.pack(&ds))
            }
        }
    }

    pub fn elem(&self, value: Elem) -> RingElem {
        RingElem { ring: self.clone(), value }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            RingKind::Zmod { p, k } => write!(f, "zmod:{p}^{k}"),
            RingKind::Gf { p } => write!(f, "gf:{p}"),
            RingKind::Trunc { p, k } => write!(f, "trunc:{p}:{k}"),
            RingKind::Ext { base, r, m } => write!(f, "ext:{base}:{}:{m}", base.format(*r)),
        }
    }
}

/// An element bundled with its ring, for callers that want value semantics.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    pub ring: Ring,
    pub value: Elem,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format(self.value))
    }
}

impl RingElem {
    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.value)
    }

    pub fn radical_member(&self) -> Result<bool> {
        self.ring.radical_member(self.value)
    }

    /// Image in the residue field.
    pub fn residue(&self) -> Result<RingElem> {
        let f = self.ring.residue_field();
        let v = self.ring.residue(self.value)?;
        Ok(f.elem(Elem(v)))
    }

    pub fn inverse(&self) -> Result<RingElem> {
        self.ring
            .inv(self.value)
            .map(|v| self.ring.elem(v))
            .ok_or_else(|| Error::NotAUnit(self.ring.format(self.value)))
    }

    pub fn pow(&self, e: u64) -> RingElem {
        self.ring.elem(self.ring.pow(self.value, e))
    }
}

impl std::ops::Add for &RingElem {
    type Output = RingElem;
    fn add(self, o: &RingElem) -> RingElem {
        self.ring.elem(self.ring.add(self.value, o.value))
    }
}

impl std::ops::Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, o: &RingElem) -> RingElem {
        self.ring.elem(self.ring.sub(self.value, o.value))
    }
}

impl std::ops::Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, o: &RingElem) -> RingElem {
        self.ring.elem(self.ring.mul(self.value, o.value))
    }
}

impl std::ops::Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.ring.elem(self.ring.neg(self.value))
    }
}

/// Builds `R0[y]/(y^m - r)` and returns it with `s = y`.
pub fn adjoin_root(r: &RingElem, m: u32) -> Result<(Ring, RingElem)> {
    let (s_ring, y) = Ring::adjoin_root(&r.ring, r.value, m)?;
    let s = s_ring.elem(y);
    Ok((s_ring, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn kinds() -> Vec<Ring> {
        ["zmod:3^3", "gf:5", "trunc:5:3", "zmod:7^2", "trunc:3:4", "ext:zmod:5^2:6:2", "ext:trunc:3:2:2,1:3"]
            .iter()
            .map(|d| Ring::parse(d).unwrap())
            .collect()
    }

    #[test]
    fn make_ring_examples() {
        let r = Ring::parse("zmod:3^3").unwrap();
        assert_eq!(r.size(), 27);
        assert_eq!(r.half(), Elem(14));
        let f = Ring::parse("gf:5").unwrap();
        assert_eq!(f.size(), 5);
        assert_eq!(f.half(), Elem(3));
        assert_eq!(Ring::parse("zmod:2^3"), Err(Error::EvenCharacteristic));
        assert_eq!(Ring::parse("gf:9"), Err(Error::NotPrime(9)));
        assert!(Ring::parse("poly:3").is_err());
    }

    #[test]
    fn units_and_radical() {
        let r = Ring::zmod(3, 3).unwrap();
        assert!(r.radical_member(Elem(3)).unwrap());
        assert!(r.is_unit(Elem(14)));
        let t = Ring::trunc(5, 3).unwrap();
        let eps = t.parse_elem("0,1").unwrap();
        assert!(t.radical_member(eps).unwrap());
        assert_eq!(t.residue(eps).unwrap(), 0);
        assert_eq!(r.residue(Elem(14)).unwrap(), 2);
        assert_eq!(r.residue(r.one()).unwrap(), 1);
        let e = Ring::parse("ext:zmod:5^2:6:2").unwrap();
        assert_eq!(e.radical_member(Elem(1)), Err(Error::LocalityNotGuaranteed));
    }

    #[test]
    fn unit_xor_radical_exhaustive_and_nilpotent() {
        for r in [Ring::zmod(3, 3).unwrap(), Ring::trunc(3, 3).unwrap(), Ring::gf(7).unwrap()] {
            let k = r.nilpotency_index();
            for v in 0..r.size() {
                let x = Elem(v);
                assert_ne!(r.is_unit(x), r.radical_member(x).unwrap());
                assert_eq!(r.is_unit(x), r.residue(x).unwrap() != 0);
                if !r.is_unit(x) {
                    assert_eq!(r.pow(x, k as u64), r.zero(), "{r} {v}");
                }
            }
        }
    }

    #[test]
    fn ring_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for r in kinds() {
            for _ in 0..300 {
                let (a, b, c) = (r.random(&mut rng), r.random(&mut rng), r.random(&mut rng));
                assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
                assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                assert_eq!(r.mul(a, b), r.mul(b, a));
                assert_eq!(r.add(a, r.neg(a)), r.zero());
                if let Some(ia) = r.inv(a) {
                    assert_eq!(r.mul(a, ia), r.one());
                }
            }
            assert_eq!(r.mul(r.half(), r.from_int(2)), r.one());
        }
    }

    #[test]
    fn residue_is_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = Ring::trunc(5, 3).unwrap();
        let p = 5;
        for _ in 0..200 {
            let (a, b) = (r.random(&mut rng), r.random(&mut rng));
            let (ra, rb) = (r.residue(a).unwrap(), r.residue(b).unwrap());
            assert_eq!(r.residue(r.add(a, b)).unwrap(), (ra + rb) % p);
            assert_eq!(r.residue(r.mul(a, b)).unwrap(), ra * rb % p);
        }
    }

    #[test]
    fn adjoin_root_examples() {
        let z25 = Ring::zmod(5, 2).unwrap();
        let (s_ring, s) = adjoin_root(&z25.elem(Elem(6)), 2).unwrap();
        assert_eq!(s.pow(2), s_ring.elem(Elem(6)));
        let six_inv = z25.inv(Elem(6)).unwrap();
        assert_eq!(six_inv, Elem(21));
        let s_inv = &s * &s_ring.elem(six_inv);
        assert_eq!((&s * &s_inv).value, s_ring.one());
        assert_eq!(s.inverse().unwrap(), s_inv);

        let (s1_ring, s1) = adjoin_root(&z25.elem(Elem(1)), 2).unwrap();
        assert_eq!(s1.pow(2), s1_ring.elem(s1_ring.one()));

        let z27 = Ring::zmod(3, 3).unwrap();
        assert!(matches!(adjoin_root(&z27.elem(Elem(3)), 2), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn embedding_commutes_with_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let base = Ring::zmod(5, 3).unwrap();
        let (s, y) = Ring::adjoin_root(&base, Elem(2), 4).unwrap();
        assert_eq!(s.pow(y, 4), s.embed(Elem(2)));
        for _ in 0..200 {
            let (a, b) = (base.random(&mut rng), base.random(&mut rng));
            assert_eq!(s.embed(base.mul(a, b)), s.mul(s.embed(a), s.embed(b)));
            assert_eq!(s.embed(base.add(a, b)), s.add(s.embed(a), s.embed(b)));
        }
        let iy = s.inv(y).unwrap();
        assert_eq!(s.mul(y, iy), s.one());
    }

    #[test]
    fn descriptor_and_json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for r in kinds() {
            assert_eq!(Ring::parse(&r.to_string()).unwrap().to_string(), r.to_string());
            for _ in 0..50 {
                let a = r.random(&mut rng);
                assert_eq!(r.from_json(&r.to_json(a)).unwrap(), a);
                assert_eq!(r.parse_elem(&r.format(a)).unwrap(), a);
            }
        }
    }

    #[test]
    fn random_radical_lands_in_j() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for r in [Ring::zmod(3, 4).unwrap(), Ring::trunc(5, 3).unwrap()] {
            for _ in 0..100 {
                assert!(r.radical_member(r.random_radical(&mut rng)).unwrap());
                assert_eq!(r.residue(r.random_principal_unit(&mut rng)).unwrap(), 1);
            }
        }
    }
}
