//! The matroid complexes Δ(V*, k) and K, their f- and h-vectors, Euler
//! characteristics, Alexander duals and Stanley-Reisner generators.
//!
//! Vertex subsets are `u64` bitmasks, so complexes have at most 64 vertices.
//! For Δ(V*, k) vertex `i·L + ℓ` is copy `i` of line `ℓ` (L lines in all);
//! for K vertex `j` is the `j`-th point of the affine chart E = {v : v_n = 1}.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{resource, usage, Result};
use crate::field::{Field, FieldElem, FieldSpec};
use crate::invariants::LineSet;
use crate::linalg::{Row, Subspace};

const BRUTE_FORCE_CAP: usize = 16;
const EXCHANGE_CAP: usize = 14;

/// All subspaces of F_q^n, ordered by dimension.
pub fn subspace_lattice(field: &Field, n: usize) -> Arc<Vec<Subspace>> {
    static CACHE: Lazy<Mutex<HashMap<(FieldSpec, usize), Arc<Vec<Subspace>>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let key = (field.spec().clone(), n);
    if let Some(l) = CACHE.lock().unwrap().get(&key) {
        return l.clone();
    }
    let mut out = Vec::new();
    for j in 0..=n {
        for pivots in combinations(n, j) {
            let free: Vec<(usize, usize)> = (0..j)
                .flat_map(|r| {
                    let pv = pivots.clone();
                    ((pivots[r] + 1)..n)
                        .filter(move |c| !pv.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let q = field.q() as usize;
            for code in 0..q.pow(free.len() as u32) {
                let mut rows = vec![vec![FieldElem::ZERO; n]; j];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = field.one();
                }
                let mut c = code;
                for &(r, col) in &free {
                    rows[r][col] = field.elements()[c % q];
                    c /= q;
                }
                out.push(Subspace::span(field, n, &rows).expect("small"));
            }
        }
    }
    let out = Arc::new(out);
    CACHE.lock().unwrap().insert(key, out.clone());
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The Gaussian binomial [n choose j]_q.
pub fn gaussian_binomial(n: u32, j: u32, q: u64) -> u128 {
    if j > n {
        return 0;
    }
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..j {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

pub fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: i128 = 1;
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// μ(W, V*) for W of codimension c in the subspace lattice.
pub fn mobius(c: u32, q: u64) -> i128 {
    let m = (q as i128).pow(c * c.saturating_sub(1) / 2);
    if c.is_multiple_of(2) {
        m
    } else {
        -m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ComplexKind {
    Delta { n: usize, q: u32, k: usize },
    AffineK { n: usize, q: u32 },
    Explicit,
}

#[derive(Debug, Clone)]
pub struct Complex {
    kind: ComplexKind,
    field: Option<Field>,
    vertex_count: usize,
    labels: Vec<String>,
    /// Coefficient rows of the lines (Δ) or points (K).
    vectors: Vec<Row>,
    /// For each hyperplane of V*, the mask of lines or points lying in it.
    hyper_masks: Vec<u64>,
    facets: Vec<u64>,
    facet_size: usize,
}

fn mask_of(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn hyperplane_masks(field: &Field, n: usize, vectors: &[Row]) -> Vec<u64> {
    subspace_lattice(field, n)
        .iter()
        .filter(|w| w.dim() + 1 == n)
        .map(|h| {
            vectors
                .iter()
                .enumerate()
                .filter(|(_, v)| h.contains(v))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect()
}

fn render_row(field: &Field, r: &[FieldElem]) -> String {
    let parts: Vec<String> = r.iter().map(|&c| field.format(c)).collect();
    format!("({})", parts.join(","))
}

/// The complex Δ(V*, k): G is a face iff the lines missing from at least one
/// copy of G span V*.
pub fn build_delta(n: usize, field: &Field, k: usize) -> Result<Complex> {
    if n == 0 || k == 0 {
        return Err(usage("n and k must be at least 1"));
    }
    let lines = LineSet::all(field, n).reps().to_vec();
    let count = k * lines.len();
    if count > 64 {
        return Err(resource(format!("Δ(V*,{k}) has {count} vertices, above 64")));
    }
    let labels = (0..k)
        .flat_map(|i| lines.iter().map(move |l| (i, l)))
        .map(|(i, l)| format!("{}#{}", render_row(field, l), i + 1))
        .collect();
    let hyper_masks = hyperplane_masks(field, n, &lines);
    Ok(Complex {
        kind: ComplexKind::Delta { n, q: field.q(), k },
        field: Some(field.clone()),
        vertex_count: count,
        labels,
        facet_size: count - n,
        vectors: lines,
        hyper_masks,
        facets: Vec::new(),
    })
}

/// Points of the affine chart E = {v : v_n = 1} in a fixed order.
pub fn affine_points(field: &Field, n: usize) -> Vec<Row> {
    let q = field.q() as usize;
    (0..q.pow(n as u32 - 1))
        .map(|code| {
            let mut c = code;
            let mut v = vec![FieldElem::ZERO; n];
            for x in v.iter_mut().take(n - 1).rev() {
                *x = field.elements()[c % q];
                c /= q;
            }
            v[n - 1] = field.one();
            v
        })
        .collect()
}

/// The complex K on the points of E: G is a face iff E \ G affinely spans E.
pub fn build_affine_k(n: usize, field: &Field) -> Result<Complex> {
    if n < 2 {
        return Err(usage("K needs n ≥ 2"));
    }
    let pts = affine_points(field, n);
    if pts.len() > 64 {
        return Err(resource(format!("K has {} vertices, above 64", pts.len())));
    }
    let labels = pts.iter().map(|p| render_row(field, p)).collect();
    let hyper_masks = hyperplane_masks(field, n, &pts);
    Ok(Complex {
        kind: ComplexKind::AffineK { n, q: field.q() },
        field: Some(field.clone()),
        vertex_count: pts.len(),
        labels,
        facet_size: pts.len() - n,
        vectors: pts,
        hyper_masks,
        facets: Vec::new(),
    })
}

impl Complex {
    /// A complex given by its facets.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Result<Complex> {
        if vertex_count > 64 || facets.iter().flatten().any(|&v| v >= vertex_count) {
            return Err(usage("vertex out of range"));
        }
        let masks: Vec<u64> = facets
            .iter()
            .map(|f| f.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let facet_size = masks.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0);
        Ok(Complex {
            kind: ComplexKind::Explicit,
            field: None,
            vertex_count,
            labels: (0..vertex_count).map(|i| format!("v{i}")).collect(),
            vectors: Vec::new(),
            hyper_masks: Vec::new(),
            facets: masks,
            facet_size,
        })
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn field(&self) -> Option<&Field> {
        self.field.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Lines (Δ) or points (K) underlying the vertices.
    pub fn vectors(&self) -> &[Row] {
        &self.vectors
    }

    /// The vector of a vertex: its line (Δ) or point (K).
    pub fn vertex_vector(&self, v: usize) -> &Row {
        &self.vectors[v % self.vectors.len()]
    }

    pub fn dim(&self) -> isize {
        self.facet_size as isize - 1
    }

    pub fn facet_size(&self) -> usize {
        self.facet_size
    }

    fn spans(&self, t: u64) -> bool {
        self.hyper_masks.iter().all(|h| t & !h != 0)
    }

    pub fn is_face_mask(&self, g: u64) -> bool {
        match self.kind {
            ComplexKind::Delta { k, .. } => {
                let l = self.vectors.len();
                let lm = mask_of(l);
                let mut full = lm;
                for i in 0..k {
                    full &= g >> (i * l) & lm;
                }
                self.spans(lm & !full)
            }
            ComplexKind::AffineK { .. } => self.spans(mask_of(self.vertex_count) & !g),
            ComplexKind::Explicit => g == 0 || self.facets.iter().any(|f| g & !f == 0),
        }
    }

    pub fn is_face(&self, vertices: &[usize]) -> bool {
        self.is_face_mask(vertices.iter().fold(0u64, |m, &v| m | 1 << v))
    }

    /// Every face, found by extending faces one vertex at a time.
    pub fn faces(&self) -> Result<Vec<u64>> {
        if self.vertex_count > BRUTE_FORCE_CAP {
            return Err(resource(format!(
                "face enumeration is capped at {BRUTE_FORCE_CAP} vertices"
            )));
        }
        let mut out = Vec::new();
        let mut stack = vec![(0u64, 0usize)];
        while let Some((g, next)) = stack.pop() {
            out.push(g);
            for v in next..self.vertex_count {
                let h = g | 1 << v;
                if self.is_face_mask(h) {
                    stack.push((h, v + 1));
                }
            }
        }
        out.sort_by_key(|m| (m.count_ones(), *m));
        Ok(out)
    }

    /// Maximal faces by brute force.
    pub fn facets_brute_force(&self) -> Result<Vec<u64>> {
        let faces = self.faces()?;
        Ok(faces
            .iter()
            .copied()
            .filter(|&g| (0..self.vertex_count).all(|v| g >> v & 1 == 1 || !self.is_face_mask(g | 1 << v)))
            .collect())
    }

    /// Facets as complements of bases: for Δ, n independent lines each with a
    /// chosen copy; for K, n affinely independent points.
    pub fn facets_from_bases(&self) -> Result<Vec<u64>> {
        let field = self.field.as_ref().ok_or_else(|| usage("explicit complex"))?;
        let (n, copies) = match self.kind {
            ComplexKind::Delta { n, k, .. } => (n, k),
            ComplexKind::AffineK { n, .. } => (n, 1),
            ComplexKind::Explicit => return Ok(self.facets.clone()),
        };
        let l = self.vectors.len();
        let all = mask_of(self.vertex_count);
        let bases: Vec<Vec<usize>> = combinations(l, n)
            .into_iter()
            .filter(|c| {
                let rows: Vec<Row> = c.iter().map(|&i| self.vectors[i].clone()).collect();
                Subspace::span(field, n, &rows).map(|s| s.dim() == n).unwrap_or(false)
            })
            .collect();
        let mut out = Vec::with_capacity(bases.len() * copies.pow(n as u32));
        for b in &bases {
            for code in 0..copies.pow(n as u32) {
                let mut c = code;
                let mut m = 0u64;
                for &line in b {
                    m |= 1 << ((c % copies) * l + line);
                    c /= copies;
                }
                out.push(all & !m);
            }
        }
        out.sort();
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FhData {
    /// f[i] = number of faces with i + 1 vertices, i = 0..d−1.
    pub f: Vec<i128>,
    /// h[0..=d].
    pub h: Vec<i128>,
}

impl FhData {
    pub fn from_f(f: Vec<i128>) -> FhData {
        let d = f.len() as i128;
        let fm = |i: i128| if i == 0 { 1 } else { f[(i - 1) as usize] };
        let h = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let s = if (k - i) % 2 == 0 { 1 } else { -1 };
                        s * binomial(d - i, k - i) * fm(i)
                    })
                    .sum()
            })
            .collect();
        FhData { f, h }
    }

    pub fn d(&self) -> usize {
        self.f.len()
    }
}

/// Number of size-`size` vertex sets of the k-fold line list whose lines span V*.
pub fn spanning_subset_count(field: &Field, n: usize, k: usize, size: usize) -> i128 {
    let q = field.q() as u64;
    subspace_lattice(field, n)
        .iter()
        .map(|w| {
            let lines = (q.pow(w.dim() as u32) as i128 - 1) / (q as i128 - 1);
            mobius((n - w.dim()) as u32, q) * binomial(k as i128 * lines, size as i128)
        })
        .sum()
}

/// Number of size-`size` subsets of E spanning V*.
pub fn spanning_point_count(field: &Field, n: usize, size: usize) -> i128 {
    let q = field.q() as u64;
    let pts = affine_points(field, n);
    subspace_lattice(field, n)
        .iter()
        .map(|w| {
            let inside = pts.iter().filter(|p| w.contains(p)).count();
            mobius((n - w.dim()) as u32, q) * binomial(inside as i128, size as i128)
        })
        .sum()
}

/// f- and h-vectors; Möbius counting for Δ and K, enumeration otherwise.
pub fn f_vector(c: &Complex) -> Result<FhData> {
    let s = c.vertex_count;
    let d = c.facet_size;
    match (c.kind, c.field.as_ref()) {
        (ComplexKind::Delta { n, k, .. }, Some(field)) => Ok(FhData::from_f(
            (1..=d).map(|size| spanning_subset_count(field, n, k, s - size)).collect(),
        )),
        (ComplexKind::AffineK { n, .. }, Some(field)) => Ok(FhData::from_f(
            (1..=d).map(|size| spanning_point_count(field, n, s - size)).collect(),
        )),
        _ => f_vector_brute_force(c),
    }
}

pub fn f_vector_brute_force(c: &Complex) -> Result<FhData> {
    let faces = c.faces()?;
    let d = faces.iter().map(|g| g.count_ones() as usize).max().unwrap_or(0);
    let mut f = vec![0i128; d];
    for g in faces {
        if g != 0 {
            f[g.count_ones() as usize - 1] += 1;
        }
    }
    Ok(FhData::from_f(f))
}

/// Σ_{i≥−1} (−1)^i f_i with f_{−1} = 1.
pub fn reduced_euler(fh: &FhData) -> i128 {
    let mut acc = -1;
    for (i, &x) in fh.f.iter().enumerate() {
        acc += if i % 2 == 0 { x } else { -x };
    }
    acc
}

/// Whether F ∪ {v} ∈ Δ for some v ∈ G \ F, for all faces with |G| = |F| + 1.
pub fn check_matroid_exchange(c: &Complex) -> Result<bool> {
    if c.vertex_count > EXCHANGE_CAP {
        return Err(resource(format!("exchange check is capped at {EXCHANGE_CAP} vertices")));
    }
    let faces = c.faces()?;
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); c.vertex_count + 2];
    for g in faces {
        by_size[g.count_ones() as usize].push(g);
    }
    Ok((0..c.vertex_count).all(|s| {
        let bigger = &by_size[s + 1];
        by_size[s].par_iter().all(|&f| {
            bigger.iter().all(|&g| {
                let mut diff = g & !f;
                while diff != 0 {
                    let v = diff.trailing_zeros();
                    if c.is_face_mask(f | 1 << v) {
                        return true;
                    }
                    diff &= diff - 1;
                }
                false
            })
        })
    }))
}

/// Faces of the Alexander dual, by complement enumeration.
pub fn alexander_dual_faces(c: &Complex) -> Result<Vec<u64>> {
    if c.vertex_count > EXCHANGE_CAP {
        return Err(resource(format!("duals are built up to {EXCHANGE_CAP} vertices")));
    }
    let all = mask_of(c.vertex_count);
    Ok((0..=all).filter(|&g| !c.is_face_mask(all & !g)).collect())
}

/// h_d(Δ) = (−1)^{|S|−d} χ̃(Δ*), with Δ* built explicitly. Returns the pair.
pub fn dual_euler_values(c: &Complex) -> Result<(i128, i128)> {
    let fh = f_vector(c)?;
    let dual = alexander_dual_faces(c)?;
    let mut chi = 0i128;
    for g in dual {
        chi += if g.count_ones() % 2 == 1 { 1 } else { -1 };
    }
    let sign = if (c.vertex_count - fh.d()).is_multiple_of(2) { 1 } else { -1 };
    Ok((*fh.h.last().unwrap(), sign * chi))
}

pub fn dual_euler_relation(c: &Complex) -> Result<bool> {
    let (a, b) = dual_euler_values(c)?;
    Ok(a == b)
}

/// Minimal non-faces: the hyperplane families for Δ and K, enumeration for
/// explicit complexes.
pub fn sr_generators(c: &Complex) -> Result<Vec<u64>> {
    match c.kind {
        ComplexKind::Delta { k, .. } => {
            let l = c.vectors.len();
            let lm = mask_of(l);
            let mut out: Vec<u64> = c
                .hyper_masks
                .iter()
                .map(|h| {
                    let outside = lm & !h;
                    (0..k).fold(0u64, |m, i| m | outside << (i * l))
                })
                .collect();
            out.sort();
            Ok(out)
        }
        ComplexKind::AffineK { .. } => {
            let all = mask_of(c.vertex_count);
            let mut out: Vec<u64> = c
                .hyper_masks
                .iter()
                .filter(|&&h| h != 0)
                .map(|h| all & !h)
                .collect();
            out.sort();
            Ok(out)
        }
        ComplexKind::Explicit => minimal_non_faces_brute_force(c),
    }
}

pub fn minimal_non_faces_brute_force(c: &Complex) -> Result<Vec<u64>> {
    if c.vertex_count > EXCHANGE_CAP {
        return Err(resource(format!("non-face enumeration is capped at {EXCHANGE_CAP} vertices")));
    }
    let all = mask_of(c.vertex_count);
    let mut out: Vec<u64> = (0..=all)
        .filter(|&g| {
            if c.is_face_mask(g) {
                return false;
            }
            let mut rest = g;
            while rest != 0 {
                let v = rest & rest.wrapping_neg();
                if !c.is_face_mask(g & !v) {
                    return false;
                }
                rest &= rest - 1;
            }
            true
        })
        .collect();
    out.sort();
    Ok(out)
}

pub fn mask_to_vertices(m: u64) -> Vec<usize> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}
