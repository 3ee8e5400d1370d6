//! GL_n(F_q), its group algebra, the Steinberg idempotent and its twists,
//! and their action on degreewise carriers (Sym^d or a quotient R^d).

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{domain, resource, usage, Result};
use crate::field::{Field, FieldElem};
use crate::limits;
use crate::linalg::{EchelonBuilder, MatrixGF, Row, Subspace};
use crate::poly::{degree_basis, DegreeBasis, GlElement, Polynomial};

/// |GL_n(F_q)| = Π_{i<n} (q^n − q^i).
pub fn group_order(n: usize, q: u32) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n as u32).map(|i| qn - (q as u128).pow(i)).product()
}

/// [GL_n : U_n] = Π_{i=1}^n (q^i − 1).
pub fn unipotent_index(n: usize, q: u32) -> u128 {
    (1..=n as u32).map(|i| (q as u128).pow(i) - 1).product()
}

/// All of GL_n(F_q), in row-major lexicographic order of the entries.
pub fn enumerate_gl(n: usize, field: &Field) -> Result<Vec<GlElement>> {
    let order = group_order(n, field.q());
    if order > limits::max_group_order() as u128 {
        return Err(resource(format!(
            "|GL_{n}(F_{})| = {order} exceeds the cap of {}",
            field.q(),
            limits::max_group_order()
        )));
    }
    let q = field.q() as u64;
    let total = q.pow((n * n) as u32);
    let elems = field.elements();
    let out: Vec<GlElement> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut c = code;
            let mut e = vec![FieldElem::ZERO; n * n];
            for x in e.iter_mut().rev() {
                *x = elems[(c % q) as usize];
                c /= q;
            }
            GlElement::new(field, n, &e).ok()
        })
        .collect();
    debug_assert_eq!(out.len() as u128, order);
    Ok(out)
}

/// Permutation matrices with their signs.
pub fn permutation_elements(n: usize, field: &Field) -> Vec<(GlElement, bool)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(p: &mut Vec<usize>, k: usize, even: bool, field: &Field, out: &mut Vec<(GlElement, bool)>) {
        if k == p.len() {
            out.push((GlElement::permutation(field, p), even));
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, if i == k { even } else { !even }, field, out);
            p.swap(k, i);
        }
    }
    rec(&mut p, 0, true, field, &mut out);
    out.sort();
    out
}

/// Invertible upper-triangular matrices.
pub fn borel_elements(n: usize, field: &Field) -> Vec<GlElement> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = vec![vec![FieldElem::ZERO; n * n]];
    for &(i, j) in &slots {
        let choices = if i == j { field.units() } else { field.elements() };
        out = out
            .into_iter()
            .flat_map(|e| {
                choices.iter().map(move |&c| {
                    let mut e = e.clone();
                    e[i * n + j] = c;
                    e
                })
            })
            .collect();
    }
    let mut out: Vec<GlElement> = out.iter().map(|e| GlElement::new_unchecked(n, e)).collect();
    out.sort();
    out
}

/// Element of F_q[GL_n]; convolution matches the right action, so
/// v·(ab) = (v·a)·b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgElem {
    field: Field,
    n: usize,
    terms: BTreeMap<GlElement, FieldElem>,
}

impl GroupAlgElem {
    pub fn zero(field: &Field, n: usize) -> GroupAlgElem {
        GroupAlgElem {
            field: field.clone(),
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> GroupAlgElem {
        GroupAlgElem::from_terms(field, n, [(GlElement::identity(field, n), field.one())])
    }

    pub fn from_terms(
        field: &Field,
        n: usize,
        terms: impl IntoIterator<Item = (GlElement, FieldElem)>,
    ) -> GroupAlgElem {
        let mut a = GroupAlgElem::zero(field, n);
        for (g, c) in terms {
            a.add_term(g, c);
        }
        a
    }

    fn add_term(&mut self, g: GlElement, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GlElement, FieldElem)> {
        self.terms.iter().map(|(g, c)| (g, *c))
    }

    pub fn coeff(&self, g: &GlElement) -> FieldElem {
        self.terms.get(g).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn scale(&self, c: FieldElem) -> GroupAlgElem {
        GroupAlgElem::from_terms(
            &self.field,
            self.n,
            self.terms.iter().map(|(g, d)| (g.clone(), self.field.mul(c, *d))),
        )
    }

    pub fn add(&self, other: &GroupAlgElem) -> GroupAlgElem {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), *c);
        }
        out
    }

    pub fn mul(&self, other: &GroupAlgElem) -> Result<GroupAlgElem> {
        if self.n != other.n || self.field != other.field {
            return Err(usage("group algebra elements of different groups"));
        }
        let f = &self.field;
        let parts: Vec<HashMap<GlElement, FieldElem>> = self
            .terms
            .par_iter()
            .map(|(g, a)| {
                let mut m = HashMap::new();
                for (h, b) in &other.terms {
                    let e = m.entry(g.mul(f, h)).or_insert(FieldElem::ZERO);
                    *e = f.add(*e, f.mul(*a, *b));
                }
                m
            })
            .collect();
        let mut acc: HashMap<GlElement, FieldElem> = HashMap::new();
        for part in parts {
            for (g, c) in part {
                let e = acc.entry(g).or_insert(FieldElem::ZERO);
                *e = f.add(*e, c);
            }
        }
        Ok(GroupAlgElem {
            field: f.clone(),
            n: self.n,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.mul(self)? == *self)
    }

    /// φ_i: the coefficient at g is multiplied by det(g^{-1})^i.
    pub fn twist(&self, i: u32) -> GroupAlgElem {
        let f = &self.field;
        GroupAlgElem::from_terms(
            f,
            self.n,
            self.terms.iter().map(|(g, c)| {
                let d = f.inverse(g.det(f)).expect("invertible");
                (g.clone(), f.mul(*c, f.pow(d, i as u64)))
            }),
        )
    }
}

/// st_n = [GL_n : U_n]^{-1} Σ_{b ∈ B_n, σ ∈ Σ_n} sgn(σ) bσ.
pub fn steinberg_idempotent(n: usize, field: &Field) -> Result<GroupAlgElem> {
    let c = steinberg_scalar(n, field);
    let borel = borel_elements(n, field);
    let perms = permutation_elements(n, field);
    let mut out = GroupAlgElem::zero(field, n);
    let minus = field.neg(field.one());
    for b in &borel {
        for (s, even) in &perms {
            out.add_term(b.mul(field, s), if *even { c } else { field.mul(c, minus) });
        }
    }
    Ok(out)
}

fn steinberg_scalar(n: usize, field: &Field) -> FieldElem {
    let idx = unipotent_index(n, field.q()) % field.p() as u128;
    field.inverse(field.from_int(idx as i64)).expect("index prime to p")
}

/// st_n^{(i)} = φ_i(st_n).
pub fn twisted_idempotent(n: usize, field: &Field, i: u32) -> Result<GroupAlgElem> {
    if i + 1 >= field.q() && i != 0 {
        return Err(usage(format!("twist index must lie in 0..={}", field.q() - 2)));
    }
    Ok(steinberg_idempotent(n, field)?.twist(i))
}

/// Group algebra elements whose product, in order, is st_n^{(i)}:
/// the scaled torus sum, one root-subgroup sum per positive root, and the
/// signed Weyl group sum.
pub fn steinberg_factors(n: usize, field: &Field, i: u32) -> Result<Vec<GroupAlgElem>> {
    let c = steinberg_scalar(n, field);
    let mut out = Vec::new();
    let id = GlElement::identity(field, n);
    for k in 0..n {
        let mut t = GroupAlgElem::zero(field, n);
        for a in field.units() {
            let mut e = id.entries().to_vec();
            e[k * n + k] = a;
            let w = field.pow(field.inverse(a)?, i as u64);
            t.add_term(GlElement::new_unchecked(n, &e), w);
        }
        out.push(if k == 0 { t.scale(c) } else { t });
    }
    for j in 1..n {
        for r in (0..j).rev() {
            let mut x = GroupAlgElem::zero(field, n);
            for t in field.elements() {
                let mut e = id.entries().to_vec();
                e[r * n + j] = t;
                x.add_term(GlElement::new_unchecked(n, &e), field.one());
            }
            out.push(x);
        }
    }
    let mut w = GroupAlgElem::zero(field, n);
    let minus = field.neg(field.one());
    for (s, even) in permutation_elements(n, field) {
        // sgn(σ)·det(σ)^{-i} = sgn(σ)^{i+1}
        let c = if even || i % 2 == 1 { field.one() } else { minus };
        w.add_term(s, c);
    }
    out.push(w);
    Ok(out)
}

/// A degreewise coordinate space acted on by GL_n: Sym^d itself, or R^d =
/// Sym^d / I^d with basis the standard monomials (non-pivot columns of I^d).
#[derive(Debug, Clone)]
pub struct Carrier {
    field: Field,
    n: usize,
    d: u32,
    sym: Arc<DegreeBasis>,
    basis: Vec<usize>,
    /// Coordinates of every Sym^d monomial; `None` when the carrier is Sym^d.
    nf: Option<Arc<Vec<Row>>>,
}

impl Carrier {
    pub fn sym(field: &Field, n: usize, d: u32) -> Result<Carrier> {
        let sym = degree_basis(n, d)?;
        Ok(Carrier {
            field: field.clone(),
            n,
            d,
            basis: (0..sym.len()).collect(),
            sym,
            nf: None,
        })
    }

    /// R^d for an ideal given by its degree-d part (a GL_n-stable subspace).
    pub fn quotient(field: &Field, n: usize, d: u32, ideal: &Subspace) -> Result<Carrier> {
        let sym = degree_basis(n, d)?;
        if ideal.ambient_dim() != sym.len() {
            return Err(usage("ideal lives in a different degree"));
        }
        let basis = ideal.free_columns();
        let mut pos = vec![usize::MAX; sym.len()];
        for (k, &c) in basis.iter().enumerate() {
            pos[c] = k;
        }
        let mut nf = vec![vec![FieldElem::ZERO; basis.len()]; sym.len()];
        for &c in &basis {
            nf[c][pos[c]] = field.one();
        }
        for (row, &p) in ideal.basis().iter().zip(ideal.pivots()) {
            for (k, &c) in basis.iter().enumerate() {
                nf[p][k] = field.neg(row[c]);
            }
        }
        Ok(Carrier {
            field: field.clone(),
            n,
            d,
            sym,
            basis,
            nf: Some(Arc::new(nf)),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sym^d indices of the basis monomials.
    pub fn basis_indices(&self) -> &[usize] {
        &self.basis
    }

    pub fn basis_polynomial(&self, k: usize) -> Polynomial {
        Polynomial::monomial(&self.field, self.sym.monomials()[self.basis[k]].clone())
    }

    /// Coordinates of the class of a homogeneous degree-d polynomial.
    pub fn coords(&self, f: &Polynomial) -> Result<Row> {
        let mut v = vec![FieldElem::ZERO; self.dim()];
        for (m, c) in f.terms() {
            let idx = self
                .sym
                .index_of(m)
                .ok_or_else(|| usage(format!("term of degree {} in a degree-{} carrier", m.degree(), self.d)))?;
            match &self.nf {
                None => v[idx] = self.field.add(v[idx], c),
                Some(nf) => {
                    for (x, &y) in v.iter_mut().zip(&nf[idx]) {
                        *x = self.field.add(*x, self.field.mul(c, y));
                    }
                }
            }
        }
        Ok(v)
    }

    /// Matrix of v ↦ v·g, rows indexed by the basis.
    pub fn image_matrix(&self, g: &GlElement) -> Result<MatrixGF> {
        let f = &self.field;
        let n = self.n;
        let d = self.d as u64;
        let forms: Vec<Polynomial> = (0..n).map(|i| Polynomial::linear_form(f, g.row(i))).collect();
        let powers: Vec<Vec<Polynomial>> = forms
            .iter()
            .map(|l| {
                let mut v = vec![Polynomial::one(f, n)];
                for e in 1..=d {
                    v.push(if e % f.p() as u64 == 0 { l.pow(e) } else { v[e as usize - 1].mul(l).expect("same ring") });
                }
                v
            })
            .collect();
        let rows: Result<Vec<Row>> = self
            .basis
            .par_iter()
            .map(|&idx| {
                let m = &self.sym.monomials()[idx];
                let mut img = Polynomial::one(f, n);
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        img = img.mul(&powers[i][e as usize])?;
                    }
                }
                self.coords(&img)
            })
            .collect();
        MatrixGF::from_rows(f, self.dim(), &rows?)
    }
}

/// Matrix of v ↦ Σ a_g (v·g), accumulated element by element.
pub fn action_matrix(a: &GroupAlgElem, carrier: &Carrier) -> Result<MatrixGF> {
    let dim = carrier.dim();
    let zero = MatrixGF::zeros(&carrier.field, dim, dim)?;
    let terms: Vec<(&GlElement, FieldElem)> = a.terms().collect();
    terms
        .par_iter()
        .try_fold(
            || zero.clone(),
            |mut acc, (g, c)| {
                acc.add_scaled(*c, &carrier.image_matrix(g)?)?;
                Ok(acc)
            },
        )
        .try_reduce(
            || zero.clone(),
            |mut a, b| {
                a.add_scaled(FieldElem::ONE, &b)?;
                Ok(a)
            },
        )
}

/// Matrix of st_n^{(i)} as the product of its factors' matrices.
pub fn steinberg_action_factored(n: usize, field: &Field, i: u32, carrier: &Carrier) -> Result<MatrixGF> {
    let mut acc = MatrixGF::identity(field, carrier.dim());
    for factor in steinberg_factors(n, field, i)? {
        acc = acc.mul(&action_matrix(&factor, carrier)?)?;
    }
    Ok(acc)
}

pub fn matrix_rank(m: &MatrixGF) -> Result<usize> {
    let mut b = EchelonBuilder::new(m.field(), m.ncols())?;
    for i in 0..m.nrows() {
        b.insert(m.row(i).to_vec())?;
    }
    Ok(b.rank())
}

/// Ranks of an idempotent's action on each carrier.
pub fn summand_dims(a: &GroupAlgElem, carriers: &[Carrier]) -> Result<Vec<usize>> {
    if a.len() <= 2000 && !a.is_idempotent()? {
        return Err(domain("element is not idempotent"));
    }
    carriers
        .iter()
        .map(|c| {
            let m = action_matrix(a, c)?;
            if a.len() > 2000 && m.mul(&m)? != m {
                return Err(domain("element does not act idempotently"));
            }
            matrix_rank(&m)
        })
        .collect()
}
