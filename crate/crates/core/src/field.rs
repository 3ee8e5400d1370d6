//! Exact arithmetic in the finite field F_q, q = p^s.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{s-1} p^{s-1}`
//! where `c_0 + c_1 t + ...` is its residue modulo the fixed irreducible
//! modulus. Elements do not know their field; a [`Field`] handle carries the
//! addition and multiplication tables and is threaded through every
//! operation.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Result};

/// Largest field size supported by the table-driven arithmetic.
pub const MAX_Q: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    s: u32,
    q: u32,
    /// Monic modulus, low degree first, length `s + 1`.
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// Builds a spec from an explicit modulus (low degree first, monic, degree `s`).
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(usage(format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(usage("modulus must have degree at least 1"));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(usage("modulus coefficients must lie in [0, p)"));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(usage("modulus must be monic"));
        }
        let s = (modulus.len() - 1) as u32;
        let q = (p as u64).pow(s);
        if q > MAX_Q as u64 {
            return Err(usage(format!("field size {q} exceeds {MAX_Q}")));
        }
        if !is_irreducible(p, &modulus) {
            return Err(domain(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Ok(FieldSpec {
            p,
            s,
            q: q as u32,
            modulus,
        })
    }

    /// The built-in field of order `q`: F_4 = F_2[t]/(t²+t+1), F_8 = F_2[t]/(t³+t+1),
    /// F_9 = F_3[t]/(t²+1), and every prime field.
    pub fn builtin(q: u32) -> Result<Self> {
        match q {
            4 => FieldSpec::new(2, vec![1, 1, 1]),
            8 => FieldSpec::new(2, vec![1, 1, 0, 1]),
            9 => FieldSpec::new(3, vec![1, 0, 1]),
            _ if is_prime(q) && q < MAX_Q => FieldSpec::new(q, vec![0, 1]),
            _ => Err(usage(format!(
                "no built-in modulus for q = {q}; supply one explicitly"
            ))),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

/// An element of F_q. Meaningful only together with its [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(pub(crate) u8);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Position of the element in [`Field::elements`].
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

struct Tables {
    spec: FieldSpec,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
}

/// Shared handle to the arithmetic tables of one field.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let q = spec.q as usize;
        let p = spec.p;
        let s = spec.s as usize;
        let coeffs: Vec<Vec<u32>> = (0..q).map(|i| digits(i as u32, p, s)).collect();
        let encode = |c: &[u32]| -> u8 {
            c.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u8
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = coeffs[a]
                    .iter()
                    .zip(&coeffs[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = encode(&sum);
                mul[a * q + b] = encode(&mul_mod(&coeffs[a], &coeffs[b], &spec.modulus, p));
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if a != 0 && mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        let frob = (0..q)
            .map(|a| {
                let mut acc = 1u8;
                for _ in 0..p {
                    acc = mul[acc as usize * q + a];
                }
                acc
            })
            .collect();
        Field(Arc::new(Tables {
            spec,
            add,
            mul,
            neg,
            inv,
            frob,
        }))
    }

    /// Shorthand for `Field::new(FieldSpec::builtin(q)?)`.
    pub fn builtin(q: u32) -> Result<Field> {
        Ok(Field::new(FieldSpec::builtin(q)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn q(&self) -> u32 {
        self.0.spec.q
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.0.add[a.index() * self.q() as usize + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.0.mul[a.index() * self.q() as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.0.neg[a.index()])
    }

    pub fn arith(&self, a: FieldElem, b: FieldElem, op: ArithOp) -> FieldElem {
        match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
        }
    }

    pub fn inverse(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(domain("zero has no inverse"));
        }
        Ok(FieldElem(self.0.inv[a.index()]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inverse(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
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

    /// The Frobenius image `a^p`.
    #[inline]
    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.0.frob[a.index()])
    }

    /// Image of an integer under Z → F_p ⊆ F_q.
    pub fn from_int(&self, m: i64) -> FieldElem {
        let p = self.p() as i64;
        FieldElem(m.rem_euclid(p) as u8)
    }

    /// `(-1)^k`.
    pub fn sign(&self, k: u64) -> FieldElem {
        if k.is_multiple_of(2) {
            self.one()
        } else {
            self.neg(self.one())
        }
    }

    /// All q elements, zero first, ordered lexicographically on the
    /// coefficient list read from the top coefficient down.
    pub fn elements(&self) -> Vec<FieldElem> {
        (0..self.q()).map(|i| FieldElem(i as u8)).collect()
    }

    /// Nonzero elements in [`Field::elements`] order.
    pub fn units(&self) -> Vec<FieldElem> {
        (1..self.q()).map(|i| FieldElem(i as u8)).collect()
    }

    /// Coefficients `c_0, ..., c_{s-1}` with respect to the modulus.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        digits(a.0 as u32, self.p(), self.0.spec.s as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        let s = self.0.spec.s as usize;
        let p = self.p();
        if coeffs.len() != s || coeffs.iter().any(|&c| c >= p) {
            return Err(usage(format!(
                "expected {s} coefficients in [0, {p}), got {coeffs:?}"
            )));
        }
        Ok(FieldElem(
            coeffs.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u8,
        ))
    }

    /// Rejects values that are not elements of this field.
    pub fn check(&self, a: FieldElem) -> Result<FieldElem> {
        if (a.0 as u32) < self.q() {
            Ok(a)
        } else {
            Err(usage(format!("{} is not an element of F_{}", a.0, self.q())))
        }
    }

    /// Human-readable form: a residue for prime fields, a polynomial in `t` otherwise.
    pub fn format(&self, a: FieldElem) -> String {
        if self.0.spec.s == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(a);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let coef = if ci == 1 && i > 0 {
                String::new()
            } else {
                ci.to_string()
            };
            parts.push(match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            format!("({})", parts.join("+"))
        }
    }
}

fn digits(mut v: u32, p: u32, s: usize) -> Vec<u32> {
    let mut out = vec![0; s];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let s = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, modulus, p);
    prod.truncate(s);
    prod.resize(s, 0);
    prod
}

/// Reduces `a` modulo a monic `m` in place.
fn poly_rem(a: &mut Vec<u32>, m: &[u32], p: u32) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let off = a.len() - dm;
            for (k, &mk) in m[..dm].iter().enumerate() {
                a[off + k] = (a[off + k] + (p - lead) * mk) % p;
            }
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    for fd in 1..=deg / 2 {
        let count = (p as u64).pow(fd as u32);
        for code in 0..count {
            let mut f = digits(code as u32, p, fd);
            f.push(1);
            let mut r = m.to_vec();
            poly_rem(&mut r, &f, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUILTIN: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

    fn fe(i: u8) -> FieldElem {
        FieldElem(i)
    }

    #[test]
    fn small_arithmetic() {
        let f2 = Field::builtin(2).unwrap();
        assert_eq!(f2.add(f2.one(), f2.one()), f2.zero());
        let f3 = Field::builtin(3).unwrap();
        assert_eq!(f3.mul(fe(2), fe(2)), fe(1));
        assert_eq!(f3.inverse(fe(2)).unwrap(), fe(2));
        let f5 = Field::builtin(5).unwrap();
        assert_eq!(f5.inverse(fe(3)).unwrap(), fe(2));
    }

    #[test]
    fn f4_reduces_by_modulus() {
        let f4 = Field::builtin(4).unwrap();
        let t = f4.from_coeffs(&[0, 1]).unwrap();
        let t1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f4.mul(t, t), t1);
        assert_eq!(f4.inverse(t).unwrap(), t1);
        assert_eq!(f4.format(t1), "(t+1)");
    }

    #[test]
    fn enumerate_order() {
        let f4 = Field::builtin(4).unwrap();
        let els: Vec<Vec<u32>> = f4.elements().into_iter().map(|a| f4.coeffs(a)).collect();
        assert_eq!(els, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(Field::builtin(3).unwrap().elements(), vec![fe(0), fe(1), fe(2)]);
    }

    #[test]
    fn integer_images() {
        let f2 = Field::builtin(2).unwrap();
        assert_eq!(f2.from_int(3), f2.one());
        let f3 = Field::builtin(3).unwrap();
        assert_eq!(f3.from_int(6), f3.zero());
        assert_eq!(f3.from_int(-1), fe(2));
    }

    #[test]
    fn zero_has_no_inverse() {
        let f7 = Field::builtin(7).unwrap();
        assert!(matches!(f7.inverse(f7.zero()), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 + 1 = (t+1)^2 over F_2
        assert!(FieldSpec::new(2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::new(4, vec![0, 1]).is_err());
        assert!(FieldSpec::builtin(6).is_err());
        // user-supplied F_16
        let f16 = Field::new(FieldSpec::new(2, vec![1, 1, 0, 0, 1]).unwrap());
        assert_eq!(f16.q(), 16);
    }

    #[test]
    fn fermat_and_frobenius_exhaustive() {
        for q in BUILTIN {
            let f = Field::builtin(q).unwrap();
            let els = f.elements();
            assert_eq!(els.len(), q as usize);
            for &a in &els[1..] {
                assert_eq!(f.pow(a, q as u64 - 1), f.one(), "q={q}");
                assert_eq!(f.mul(a, f.inverse(a).unwrap()), f.one());
            }
            for &a in &els {
                assert_eq!(f.frobenius(a), f.pow(a, f.p() as u64));
                for &b in &els {
                    let lhs = f.frobenius(f.add(a, b));
                    assert_eq!(lhs, f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in BUILTIN {
            let f = Field::builtin(q).unwrap();
            let els = f.elements();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for &c in &els {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }
}
