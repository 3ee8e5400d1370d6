//! Dense exact linear algebra over F_q.
//!
//! Spanning sets are fed row by row into an [`EchelonBuilder`], which keeps
//! only an echelon basis (online rank). Over F_2 the builder packs rows into
//! 64-bit words; every other field uses one table lookup per entry.

use rayon::prelude::*;

use crate::error::{domain, resource, usage, Result};
use crate::field::{Field, FieldElem};
use crate::limits;

pub type Row = Vec<FieldElem>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGF {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<FieldElem>,
}

impl MatrixGF {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Result<MatrixGF> {
        if rows > limits::max_rows() {
            return Err(resource(format!(
                "{rows} rows exceed the cap of {}",
                limits::max_rows()
            )));
        }
        Ok(MatrixGF {
            rows,
            cols,
            field: field.clone(),
            data: vec![FieldElem::ZERO; rows * cols],
        })
    }

    pub fn identity(field: &Field, n: usize) -> MatrixGF {
        let mut m = MatrixGF::zeros(field, n, n).expect("identity within caps");
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Row]) -> Result<MatrixGF> {
        let mut m = MatrixGF::zeros(field, rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(usage(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Row> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut t = MatrixGF::zeros(&self.field, self.cols, self.rows).expect("same size");
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, c: FieldElem, other: &MatrixGF) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(usage("matrix shapes differ"));
        }
        let f = &self.field;
        for (x, &y) in self.data.iter_mut().zip(&other.data) {
            *x = f.add(*x, f.mul(c, y));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn mul(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.cols != other.rows || self.field != other.field {
            return Err(usage("incompatible matrix product"));
        }
        let f = &self.field;
        let mut out = MatrixGF::zeros(f, self.rows, other.cols)?;
        let cols = other.cols;
        if cols == 0 {
            return Ok(out);
        }
        if f.q() == 2 {
            let packed: Vec<Vec<u64>> = (0..other.rows).map(|k| pack(other.row(k))).collect();
            out.data
                .par_chunks_mut(cols)
                .enumerate()
                .for_each(|(i, dst)| {
                    let mut acc = vec![0u64; words(cols)];
                    for (k, a) in self.row(i).iter().enumerate() {
                        if !a.is_zero() {
                            for (x, y) in acc.iter_mut().zip(&packed[k]) {
                                *x ^= y;
                            }
                        }
                    }
                    dst.copy_from_slice(&unpack(&acc, cols));
                });
            return Ok(out);
        }
        out.data
            .par_chunks_mut(cols)
            .enumerate()
            .for_each(|(i, dst)| {
                for (k, &a) in self.row(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (x, &b) in dst.iter_mut().zip(other.row(k)) {
                        *x = f.add(*x, f.mul(a, b));
                    }
                }
            });
        Ok(out)
    }

    /// Reduced row-echelon form by Gaussian elimination with first-nonzero
    /// pivoting, together with the rank.
    pub fn rref(&self) -> (MatrixGF, usize) {
        let f = &self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pr) = (rank..self.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pr != rank {
                for j in 0..self.cols {
                    m.data.swap(pr * self.cols + j, rank * self.cols + j);
                }
            }
            let inv = f.inverse(m.get(rank, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                m.set(rank, j, f.mul(inv, m.get(rank, j)));
            }
            for r in 0..self.rows {
                let c = m.get(r, col);
                if r == rank || c.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = f.sub(m.get(r, j), f.mul(c, m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn determinant(&self) -> Result<FieldElem> {
        if self.rows != self.cols {
            return Err(usage("determinant of a non-square matrix"));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(f.zero());
            };
            if pr != col {
                for j in 0..n {
                    m.data.swap(pr * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let piv = m.get(col, col);
            det = f.mul(det, piv);
            let inv = f.inverse(piv)?;
            for r in col + 1..n {
                let c = f.mul(m.get(r, col), inv);
                if c.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(m.get(r, j), f.mul(c, m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<MatrixGF> {
        let n = self.rows;
        if n != self.cols {
            return Err(usage("inverse of a non-square matrix"));
        }
        let mut aug = MatrixGF::zeros(&self.field, n, 2 * n)?;
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, rank) = aug.rref();
        if rank < n || (0..n).any(|i| r.get(i, i) != self.field.one()) {
            return Err(domain("matrix is singular"));
        }
        let mut inv = MatrixGF::zeros(&self.field, n, n)?;
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }
}

/// Rank over F_2 computed on bit-packed rows. Entries must be 0 or 1.
pub fn rank_packed_f2(m: &MatrixGF) -> usize {
    let mut e = PackedEchelon::new(m.ncols());
    for i in 0..m.nrows() {
        e.insert(pack(m.row(i)));
    }
    e.rows.len()
}

fn words(cols: usize) -> usize {
    cols.div_ceil(64)
}

fn pack(row: &[FieldElem]) -> Vec<u64> {
    let mut w = vec![0u64; words(row.len())];
    for (j, a) in row.iter().enumerate() {
        if !a.is_zero() {
            w[j / 64] |= 1 << (j % 64);
        }
    }
    w
}

fn unpack(w: &[u64], cols: usize) -> Row {
    (0..cols)
        .map(|j| FieldElem(((w[j / 64] >> (j % 64)) & 1) as u8))
        .collect()
}

#[inline]
fn bit(w: &[u64], j: usize) -> bool {
    (w[j / 64] >> (j % 64)) & 1 == 1
}

#[derive(Clone)]
struct PackedEchelon {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<u32>>,
}

impl PackedEchelon {
    fn new(cols: usize) -> Self {
        PackedEchelon {
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    /// Clears leading bits until one without a pivot row remains; returns its column.
    fn reduce(&self, v: &mut [u64]) -> Option<usize> {
        let mut wi = 0;
        while wi < v.len() {
            if v[wi] == 0 {
                wi += 1;
                continue;
            }
            let c = wi * 64 + v[wi].trailing_zeros() as usize;
            match self.pivot_row[c] {
                Some(r) => {
                    let row = &self.rows[r as usize];
                    for k in wi..v.len() {
                        v[k] ^= row[k];
                    }
                }
                None => return Some(c),
            }
        }
        None
    }

    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        match self.reduce(&mut v) {
            Some(c) => {
                self.pivot_row[c] = Some(self.rows.len() as u32);
                self.rows.push(v);
                true
            }
            None => false,
        }
    }

    /// Full normal form: clears every pivot column, not only the leading one.
    fn normal_form(&self, v: &mut [u64]) {
        for c in 0..self.cols {
            if bit(v, c) {
                if let Some(r) = self.pivot_row[c] {
                    let row = &self.rows[r as usize];
                    for k in c / 64..v.len() {
                        v[k] ^= row[k];
                    }
                }
            }
        }
    }
}

#[derive(Clone)]
struct DenseEchelon {
    field: Field,
    cols: usize,
    rows: Vec<Row>,
    pivot_row: Vec<Option<u32>>,
}

impl DenseEchelon {
    fn new(field: &Field, cols: usize) -> Self {
        DenseEchelon {
            field: field.clone(),
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    fn normal_form(&self, v: &mut [FieldElem]) -> Option<usize> {
        let f = &self.field;
        let mut lead = None;
        for c in 0..self.cols {
            let a = v[c];
            if a.is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let row = &self.rows[r as usize];
                    for j in c..self.cols {
                        if !row[j].is_zero() {
                            v[j] = f.sub(v[j], f.mul(a, row[j]));
                        }
                    }
                }
                None => {
                    if lead.is_none() {
                        lead = Some(c);
                    }
                }
            }
        }
        lead
    }

    fn insert(&mut self, mut v: Row) -> bool {
        match self.normal_form(&mut v) {
            Some(c) => {
                let inv = self.field.inverse(v[c]).expect("nonzero lead");
                for x in v[c..].iter_mut() {
                    *x = self.field.mul(inv, *x);
                }
                self.pivot_row[c] = Some(self.rows.len() as u32);
                self.rows.push(v);
                true
            }
            None => false,
        }
    }
}

#[derive(Clone)]
enum Store {
    Dense(DenseEchelon),
    Packed(PackedEchelon),
}

/// Online echelon basis: rows are reduced as they arrive and only
/// independent ones are kept.
#[derive(Clone)]
pub struct EchelonBuilder {
    field: Field,
    cols: usize,
    store: Store,
}

impl EchelonBuilder {
    /// Picks the bit-packed store for F_2.
    pub fn new(field: &Field, cols: usize) -> Result<Self> {
        Self::with_packing(field, cols, field.q() == 2)
    }

    pub fn with_packing(field: &Field, cols: usize, packed: bool) -> Result<Self> {
        if cols > limits::max_rows() {
            return Err(resource(format!(
                "coordinate space of dimension {cols} exceeds the cap of {}",
                limits::max_rows()
            )));
        }
        if packed && field.q() != 2 {
            return Err(usage("bit packing is only available over F_2"));
        }
        let store = if packed {
            Store::Packed(PackedEchelon::new(cols))
        } else {
            Store::Dense(DenseEchelon::new(field, cols))
        };
        Ok(EchelonBuilder {
            field: field.clone(),
            cols,
            store,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        match &self.store {
            Store::Dense(e) => e.rows.len(),
            Store::Packed(e) => e.rows.len(),
        }
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: Row) -> Result<bool> {
        if row.len() != self.cols {
            return Err(usage(format!(
                "row of length {} in a space of dimension {}",
                row.len(),
                self.cols
            )));
        }
        Ok(match &mut self.store {
            Store::Dense(e) => e.insert(row),
            Store::Packed(e) => e.insert(pack(&row)),
        })
    }

    pub fn contains(&self, row: &[FieldElem]) -> bool {
        self.normal_form(row).iter().all(|a| a.is_zero())
    }

    /// Representative of `row` modulo the current span with every pivot
    /// coordinate cleared.
    pub fn normal_form(&self, row: &[FieldElem]) -> Row {
        match &self.store {
            Store::Dense(e) => {
                let mut v = row.to_vec();
                e.normal_form(&mut v);
                v
            }
            Store::Packed(e) => {
                let mut w = pack(row);
                e.normal_form(&mut w);
                unpack(&w, self.cols)
            }
        }
    }

    pub fn finish(self) -> Subspace {
        let cols = self.cols;
        let field = self.field.clone();
        let mut rows: Vec<(usize, Row)> = match self.store {
            Store::Dense(e) => {
                let pivots = pivots_of(&e.pivot_row);
                pivots
                    .into_iter()
                    .map(|(c, r)| (c, e.rows[r].clone()))
                    .collect()
            }
            Store::Packed(mut e) => {
                // back-substitute on the packed form before unpacking
                let pivots = pivots_of(&e.pivot_row);
                for i in (0..pivots.len()).rev() {
                    let (ci, ri) = pivots[i];
                    let src = e.rows[ri].clone();
                    for &(_, rj) in &pivots[..i] {
                        if bit(&e.rows[rj], ci) {
                            for (a, b) in e.rows[rj].iter_mut().zip(&src) {
                                *a ^= b;
                            }
                        }
                    }
                }
                return Subspace {
                    field,
                    ambient_dim: cols,
                    pivots: pivots.iter().map(|&(c, _)| c).collect(),
                    rows: pivots
                        .iter()
                        .map(|&(_, r)| unpack(&e.rows[r], cols))
                        .collect(),
                };
            }
        };
        let f = &field;
        for i in (0..rows.len()).rev() {
            let (ci, src) = (rows[i].0, rows[i].1.clone());
            for (_, rj) in rows[..i].iter_mut() {
                let c = rj[ci];
                if c.is_zero() {
                    continue;
                }
                for j in ci..cols {
                    if !src[j].is_zero() {
                        rj[j] = f.sub(rj[j], f.mul(c, src[j]));
                    }
                }
            }
        }
        Subspace {
            field,
            ambient_dim: cols,
            pivots: rows.iter().map(|(c, _)| *c).collect(),
            rows: rows.into_iter().map(|(_, r)| r).collect(),
        }
    }
}

fn pivots_of(pivot_row: &[Option<u32>]) -> Vec<(usize, usize)> {
    pivot_row
        .iter()
        .enumerate()
        .filter_map(|(c, r)| r.map(|r| (c, r as usize)))
        .collect()
}

/// A subspace of F_q^ambient_dim held as a basis in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    pivots: Vec<usize>,
    rows: Vec<Row>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient_dim,
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient_dim: usize) -> Subspace {
        let m = MatrixGF::identity(field, ambient_dim);
        Subspace {
            field: field.clone(),
            ambient_dim,
            pivots: (0..ambient_dim).collect(),
            rows: m.to_rows(),
        }
    }

    /// Linear span of `vectors`.
    pub fn span(field: &Field, ambient_dim: usize, vectors: &[Row]) -> Result<Subspace> {
        let mut b = EchelonBuilder::new(field, ambient_dim)?;
        for v in vectors {
            b.insert(v.clone())?;
        }
        Ok(b.finish())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot, in increasing order. Their unit vectors form
    /// a complement, used as the coset basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient_dim).filter(|&c| !is_pivot[c]).collect()
    }

    /// Canonical representative of `v` modulo the subspace: zero in every pivot column.
    pub fn reduce(&self, v: &[FieldElem]) -> Row {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = out[c];
            if a.is_zero() {
                continue;
            }
            for j in c..self.ambient_dim {
                if !row[j].is_zero() {
                    out[j] = f.sub(out[j], f.mul(a, row[j]));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).iter().all(|a| a.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn builder(&self) -> Result<EchelonBuilder> {
        let mut b = EchelonBuilder::new(&self.field, self.ambient_dim)?;
        for r in &self.rows {
            b.insert(r.clone())?;
        }
        Ok(b)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut b = self.builder()?;
        for r in &other.rows {
            b.insert(r.clone())?;
        }
        Ok(b.finish())
    }

    /// Intersection by the Zassenhaus method: echelonize `[a | a]` stacked on
    /// `[b | 0]`; rows whose left half vanishes span `a ∩ b` in the right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.ambient_dim;
        let f = &self.field;
        let mut b = EchelonBuilder::new(f, 2 * n)?;
        for r in &self.rows {
            let mut v = r.clone();
            v.extend_from_slice(r);
            b.insert(v)?;
        }
        for r in &other.rows {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(FieldElem::ZERO, n));
            b.insert(v)?;
        }
        let s = b.finish();
        let inter: Vec<Row> = s
            .rows
            .iter()
            .zip(&s.pivots)
            .filter(|(_, &c)| c >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Subspace::span(f, n, &inter)
    }

    /// Coordinates of `v` in the quotient by this subspace, indexed by [`Subspace::free_columns`].
    pub fn quotient_coords(&self, v: &[FieldElem]) -> Row {
        let r = self.reduce(v);
        self.free_columns().into_iter().map(|c| r[c]).collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim || self.field != other.field {
            return Err(usage("subspaces live in different spaces"));
        }
        Ok(())
    }
}

/// `dim(total) - dim(sub)`, after checking `sub ⊆ total`.
pub fn quotient_dim(total: &Subspace, sub: &Subspace) -> Result<usize> {
    total.check_compatible(sub)?;
    if !total.contains_subspace(sub) {
        return Err(domain("subspace is not contained in the total space"));
    }
    Ok(total.dim() - sub.dim())
}
