//! Multivariate polynomials over F_q, the right action of GL_n by linear
//! substitution, and per-degree coordinates.
//!
//! Monomials are ordered graded-lexicographically: first by degree, then
//! lexicographically on the exponent vector read from `x1`. Within one
//! degree the coordinate basis lists monomials in *decreasing* order, so
//! `x1^d` has index 0 and the first nonzero coordinate of a vector is its
//! leading monomial.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use smallvec::SmallVec;

use crate::error::{domain, usage, Result};
use crate::field::{Field, FieldElem};
use crate::limits;
use crate::linalg::{MatrixGF, Row};

pub type Exp = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[Exp; 6]>);

impl Monomial {
    pub fn new(exps: &[Exp]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(n: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(n);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[Exp] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Every exponent multiplied by `k`.
    pub fn scale(&self, k: Exp) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coordinate basis of the degree-`d` part of F[x_1..x_n].
#[derive(Debug)]
pub struct DegreeBasis {
    pub n: usize,
    pub d: u32,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

static BASIS_CACHE: Lazy<Mutex<HashMap<(usize, u32), Arc<DegreeBasis>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Number of monomials of degree `d` in `n` variables, C(d+n-1, n-1).
pub fn count_monomials(n: usize, d: u32) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    let mut c: u128 = 1;
    for i in 1..n as u128 {
        c = c * (d as u128 + i) / i;
    }
    c
}

/// The cached degree-`d` basis; fails with a resource error above the row cap.
pub fn degree_basis(n: usize, d: u32) -> Result<Arc<DegreeBasis>> {
    if let Some(b) = BASIS_CACHE.lock().unwrap().get(&(n, d)) {
        return Ok(b.clone());
    }
    let count = count_monomials(n, d);
    if count > limits::max_rows() as u128 {
        return Err(crate::error::resource(format!(
            "degree {d} in {n} variables has {count} monomials, above the cap of {}",
            limits::max_rows()
        )));
    }
    let mut monos = Vec::with_capacity(count as usize);
    let mut cur = vec![0; n];
    compositions_desc(d, 0, &mut cur, &mut monos);
    let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let b = Arc::new(DegreeBasis { n, d, monos, index });
    BASIS_CACHE.lock().unwrap().insert((n, d), b.clone());
    Ok(b)
}

fn compositions_desc(rem: u32, pos: usize, cur: &mut Vec<Exp>, out: &mut Vec<Monomial>) {
    let n = cur.len();
    if n == 0 {
        if rem == 0 {
            out.push(Monomial::new(&[]));
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = rem;
        out.push(Monomial::new(cur));
        return;
    }
    for e in (0..=rem).rev() {
        cur[pos] = e;
        compositions_desc(rem - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// All monomials of degree `d` in `n` variables, largest first.
pub fn monomial_basis(n: usize, d: u32) -> Result<Vec<Monomial>> {
    Ok(degree_basis(n, d)?.monos.clone())
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Polynomial {
        Polynomial {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: FieldElem) -> Polynomial {
        Polynomial::term(field, c, Monomial::one(nvars))
    }

    pub fn one(field: &Field, nvars: usize) -> Polynomial {
        Polynomial::constant(field, nvars, field.one())
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Polynomial {
        Polynomial::term(field, field.one(), Monomial::var(nvars, i))
    }

    pub fn term(field: &Field, c: FieldElem, m: Monomial) -> Polynomial {
        let mut p = Polynomial::zero(field, m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(field: &Field, m: Monomial) -> Polynomial {
        Polynomial::term(field, field.one(), m)
    }

    /// The linear form `Σ coeffs[i] x_i`.
    pub fn linear_form(field: &Field, coeffs: &[FieldElem]) -> Polynomial {
        let n = coeffs.len();
        let mut p = Polynomial::zero(field, n);
        for (i, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(n, i), c);
            }
        }
        p
    }

    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> Result<Polynomial> {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(usage("monomial has the wrong number of variables"));
            }
            p.add_term(m, field.check(c)?);
        }
        Ok(p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, FieldElem)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).copied().unwrap_or(FieldElem::ZERO)
    }

    /// Largest degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, FieldElem)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    /// Drops every term of degree above `cap`.
    pub fn truncate(&self, cap: u32) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= cap)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(usage(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        if self.field != other.field {
            return Err(usage(format!(
                "polynomials over {:?} and {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        debug_assert_eq!(self.nvars, other.nvars);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), *c);
        }
    }

    pub fn add_scaled(&mut self, c: FieldElem, other: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), self.field.mul(c, *d));
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field.neg(self.field.one()))
    }

    pub fn scale(&self, c: FieldElem) -> Polynomial {
        let f = &self.field;
        if c.is_zero() {
            return Polynomial::zero(f, self.nvars);
        }
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), f.mul(c, *d))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), *c)).collect(),
        }
    }

    /// Exact division by a monomial; fails unless it divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            let Some(r) = t.div(m) else {
                return Err(domain(format!("{m:?} does not divide every term")));
            };
            terms.insert(r, *c);
        }
        Ok(Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms,
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = acc.entry(a.mul(b)).or_insert(FieldElem::ZERO);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Ok(Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Product with every term of degree above `cap` discarded.
    pub fn mul_truncated(&self, other: &Polynomial, cap: u32) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (a, ca) in &self.terms {
            let da = a.degree();
            for (b, cb) in &other.terms {
                if da + b.degree() > cap {
                    continue;
                }
                let e = acc.entry(a.mul(b)).or_insert(FieldElem::ZERO);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Ok(Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// `f^(p^a)`: exponents multiplied by `p^a`, coefficients raised by Frobenius.
    pub fn frobenius_power(&self, a: u32) -> Polynomial {
        let f = &self.field;
        let pa = f.p().pow(a);
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut c = *c;
                    for _ in 0..a {
                        c = f.frobenius(c);
                    }
                    (m.scale(pa), c)
                })
                .collect(),
        }
    }

    /// `f^e`, splitting `e` into base-p digits so that only digit powers are
    /// multiplied out and the rest is done by Frobenius.
    pub fn pow(&self, mut e: u64) -> Polynomial {
        let f = &self.field;
        let p = f.p() as u64;
        let mut acc = Polynomial::one(f, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            let digit = e % p;
            for _ in 0..digit {
                acc = acc.mul(&base).expect("same ring");
            }
            e /= p;
            if e > 0 {
                base = base.frobenius_power(1);
            }
        }
        acc
    }

    /// Evaluates the substitution `x_i ↦ forms[i]`.
    pub fn substitute_forms(&self, forms: &[Polynomial]) -> Result<Polynomial> {
        if forms.len() != self.nvars {
            return Err(usage("one image per variable is required"));
        }
        let target_n = forms.first().map_or(self.nvars, Polynomial::nvars);
        let f = &self.field;
        let mut cache: Vec<HashMap<Exp, Polynomial>> = vec![HashMap::new(); self.nvars];
        let mut out = Polynomial::zero(f, target_n);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(f, target_n, *c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache[i]
                    .entry(e)
                    .or_insert_with(|| forms[i].pow(e as u64))
                    .clone();
                prod = prod.mul(&pw)?;
            }
            out.add_assign(&prod);
        }
        Ok(out)
    }

    /// The right action `f·g`: each `x_i` is replaced by `Σ_j g[i][j] x_j`.
    pub fn substitute(&self, g: &GlElement) -> Result<Polynomial> {
        if g.n() != self.nvars {
            return Err(usage("group element and polynomial have different n"));
        }
        let forms: Vec<Polynomial> = (0..g.n())
            .map(|i| Polynomial::linear_form(&self.field, g.row(i)))
            .collect();
        self.substitute_forms(&forms)
    }

    /// Coordinates of a homogeneous polynomial in the degree-`d` basis.
    pub fn to_vector(&self, d: u32) -> Result<Row> {
        let basis = degree_basis(self.nvars, d)?;
        let mut v = vec![FieldElem::ZERO; basis.len()];
        for (m, c) in &self.terms {
            if m.degree() != d {
                return Err(usage(format!("term of degree {} in degree {d}", m.degree())));
            }
            v[basis.index_of(m).expect("degree matches")] = *c;
        }
        Ok(v)
    }

    pub fn from_vector(field: &Field, n: usize, d: u32, v: &[FieldElem]) -> Result<Polynomial> {
        let basis = degree_basis(n, d)?;
        if v.len() != basis.len() {
            return Err(usage("coordinate row has the wrong length"));
        }
        let mut p = Polynomial::zero(field, n);
        for (m, c) in basis.monomials().iter().zip(v) {
            if !c.is_zero() {
                p.terms.insert(m.clone(), *c);
            }
        }
        Ok(p)
    }

    /// Terms whose `var` exponent equals `e`, with that exponent set to zero.
    pub fn coefficient_of_power(&self, var: usize, e: Exp) -> Polynomial {
        let mut p = Polynomial::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            if m.exps()[var] == e {
                let mut m2 = m.clone();
                m2.0[var] = 0;
                p.terms.insert(m2, *c);
            }
        }
        p
    }

    /// Re-embeds into `new_n` variables, sending `x_i` to `x_{map[i]}`.
    pub fn rename_vars(&self, new_n: usize, map: &[usize]) -> Result<Polynomial> {
        if map.len() != self.nvars || map.iter().any(|&j| j >= new_n) {
            return Err(usage("variable map out of range"));
        }
        let mut p = Polynomial::zero(&self.field, new_n);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_n];
            for (i, &a) in m.exps().iter().enumerate() {
                e[map[i]] += a;
            }
            p.add_term(Monomial::new(&e), *c);
        }
        Ok(p)
    }

    /// Restricts to the first `k` variables; the others must not occur.
    pub fn restrict_vars(&self, k: usize) -> Result<Polynomial> {
        let mut p = Polynomial::zero(&self.field, k);
        for (m, c) in &self.terms {
            if m.exps()[k..].iter().any(|&a| a != 0) {
                return Err(usage("polynomial involves a dropped variable"));
            }
            p.terms.insert(Monomial::new(&m.exps()[..k]), *c);
        }
        Ok(p)
    }

    /// Whether `self = c·other` for some nonzero scalar `c`.
    pub fn proportional_to(&self, other: &Polynomial) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (m, a) = self.leading_term().unwrap();
        let b = other.coeff(m);
        if b.is_zero() {
            return false;
        }
        let c = self.field.div(a, b).unwrap();
        other.scale(c) == *self
    }

    /// Parses `c*x1^a1*...*xn^an + ...` with integer coefficients.
    pub fn parse(field: &Field, nvars: usize, s: &str) -> Result<Polynomial> {
        let mut p = Polynomial::zero(field, nvars);
        let s = s.replace(' ', "").replace('-', "+-");
        for term in s.split('+').filter(|t| !t.is_empty()) {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term),
            };
            let mut c = field.one();
            let mut e = vec![0; nvars];
            for factor in body.split('*') {
                if let Some(v) = factor.strip_prefix('x') {
                    let (idx, pw) = match v.split_once('^') {
                        Some((i, k)) => (i, k),
                        None => (v, "1"),
                    };
                    let i: usize = idx.parse().map_err(|_| usage(format!("bad variable {factor}")))?;
                    let k: Exp = pw.parse().map_err(|_| usage(format!("bad exponent {factor}")))?;
                    if i == 0 || i > nvars {
                        return Err(usage(format!("variable x{i} out of range")));
                    }
                    e[i - 1] += k;
                } else {
                    let k: i64 = factor.parse().map_err(|_| usage(format!("bad factor {factor}")))?;
                    c = field.mul(c, field.from_int(k));
                }
            }
            if neg {
                c = field.neg(c);
            }
            p.add_term(Monomial::new(&e), c);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    /// Terms largest first, `c*x1^a1*...*xn^an`; unit coefficients and zero
    /// exponents are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            let is_one = *c == self.field.one();
            if !is_one || m.degree() == 0 {
                factors.push(self.field.format(*c));
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// An invertible n×n matrix, row-major. Acts on the right: row `i` is the
/// image of `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlElement {
    n: usize,
    entries: SmallVec<[FieldElem; 16]>,
}

impl GlElement {
    pub fn new(field: &Field, n: usize, entries: &[FieldElem]) -> Result<GlElement> {
        if entries.len() != n * n {
            return Err(usage("expected n*n entries"));
        }
        for &a in entries {
            field.check(a)?;
        }
        let g = GlElement {
            n,
            entries: SmallVec::from_slice(entries),
        };
        if g.to_matrix(field).rank() != n {
            return Err(domain("matrix is not invertible"));
        }
        Ok(g)
    }

    pub(crate) fn new_unchecked(n: usize, entries: &[FieldElem]) -> GlElement {
        GlElement {
            n,
            entries: SmallVec::from_slice(entries),
        }
    }

    pub fn identity(field: &Field, n: usize) -> GlElement {
        let m = MatrixGF::identity(field, n);
        GlElement::new_unchecked(n, &m.to_rows().concat())
    }

    /// The permutation matrix with `x_i ↦ x_{perm[i]}`.
    pub fn permutation(field: &Field, perm: &[usize]) -> GlElement {
        let n = perm.len();
        let mut e = vec![FieldElem::ZERO; n * n];
        for (i, &j) in perm.iter().enumerate() {
            e[i * n + j] = field.one();
        }
        GlElement::new_unchecked(n, &e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_matrix(&self, field: &Field) -> MatrixGF {
        let rows: Vec<Row> = (0..self.n).map(|i| self.row(i).to_vec()).collect();
        MatrixGF::from_rows(field, self.n, &rows).expect("square")
    }

    pub fn mul(&self, field: &Field, other: &GlElement) -> GlElement {
        let n = self.n;
        let mut e = vec![FieldElem::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    e[i * n + j] = field.add(e[i * n + j], field.mul(a, other.get(k, j)));
                }
            }
        }
        GlElement::new_unchecked(n, &e)
    }

    pub fn inverse(&self, field: &Field) -> GlElement {
        let inv = self.to_matrix(field).inverse().expect("invertible by construction");
        GlElement::new_unchecked(self.n, &inv.to_rows().concat())
    }

    pub fn det(&self, field: &Field) -> FieldElem {
        self.to_matrix(field).determinant().expect("square")
    }

    /// Image of a linear form given by its coefficient row: `c ↦ c·g`.
    pub fn apply_to_form(&self, field: &Field, c: &[FieldElem]) -> Row {
        (0..self.n)
            .map(|j| {
                (0..self.n).fold(FieldElem::ZERO, |acc, i| {
                    field.add(acc, field.mul(c[i], self.get(i, j)))
                })
            })
            .collect()
    }
}
