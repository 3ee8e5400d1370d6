//! Graded ideals handled degree by degree, the quotients R(V*, k) and
//! Sym/I of the affine construction, and the structural checks on them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{domain, usage, Result};
use crate::field::Field;
use crate::grouprep::{action_matrix, twisted_idempotent, Carrier};
use crate::invariants::{v_hw, LineSet};
use crate::linalg::{EchelonBuilder, Row, Subspace};
use crate::poly::{count_monomials, degree_basis, Monomial, Polynomial};
use crate::simplicial::{affine_points, subspace_lattice};
use crate::steenrod_action::{binomial_mod_p, chi_p, hit_space, is_hit, quot_dim, steenrod_p};

/// A homogeneous ideal, materialized one degree at a time.
#[derive(Debug, Clone)]
pub struct GradedIdeal {
    field: Field,
    n: usize,
    generators: Vec<Polynomial>,
    cache: Arc<Mutex<HashMap<u32, Arc<Subspace>>>>,
}

impl GradedIdeal {
    pub fn new(field: &Field, n: usize, generators: Vec<Polynomial>) -> Result<GradedIdeal> {
        for g in &generators {
            if g.nvars() != n || g.field() != field {
                return Err(usage("generator lives in a different ring"));
            }
            if !g.is_homogeneous() {
                return Err(usage("generators must be homogeneous"));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(GradedIdeal {
            field: field.clone(),
            n,
            generators,
            cache: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The ideal with extra generators added.
    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<GradedIdeal> {
        let mut g = self.generators.clone();
        g.extend_from_slice(extra);
        GradedIdeal::new(&self.field, self.n, g)
    }

    /// Echelon basis of the degree-d part, spanned by all m·g.
    pub fn degree_part(&self, d: u32) -> Result<Arc<Subspace>> {
        if let Some(s) = self.cache.lock().unwrap().get(&d) {
            return Ok(s.clone());
        }
        let basis = degree_basis(self.n, d)?;
        let mut builder = EchelonBuilder::new(&self.field, basis.len())?;
        for g in &self.generators {
            let e = g.degree().unwrap();
            if e > d {
                continue;
            }
            let mult = degree_basis(self.n, d - e)?;
            let rows: Result<Vec<Row>> = mult
                .monomials()
                .par_iter()
                .map(|m| g.mul_monomial(m).to_vector(d))
                .collect();
            for r in rows? {
                if builder.rank() == basis.len() {
                    break;
                }
                builder.insert(r)?;
            }
        }
        let s = Arc::new(builder.finish());
        self.cache.lock().unwrap().insert(d, s.clone());
        Ok(s)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if !f.is_homogeneous() {
            let mut degs: Vec<u32> = f.terms().map(|(m, _)| m.degree()).collect();
            degs.dedup();
            for d in degs {
                if !self.contains(&f.homogeneous_part(d))? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let d = f.degree().unwrap();
        Ok(self.degree_part(d)?.contains(&f.to_vector(d)?))
    }
}

/// Sym / I together with the degree above which it is claimed to vanish.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    ideal: GradedIdeal,
    top: u32,
}

impl QuotientRing {
    pub fn new(ideal: GradedIdeal, top: u32) -> QuotientRing {
        QuotientRing { ideal, top }
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    pub fn top_degree(&self) -> u32 {
        self.top
    }

    pub fn n(&self) -> usize {
        self.ideal.n
    }

    pub fn field(&self) -> &Field {
        &self.ideal.field
    }

    pub fn dim(&self, m: u32) -> Result<usize> {
        Ok(count_monomials(self.n(), m) as usize - self.ideal.degree_part(m)?.dim())
    }

    /// [dim R^0, ..., dim R^up_to].
    pub fn hilbert_series(&self, up_to: u32) -> Result<Vec<usize>> {
        (0..=up_to).map(|m| self.dim(m)).collect()
    }

    /// Standard monomials of degree m: the non-pivot columns of I^m.
    pub fn standard_monomials(&self, m: u32) -> Result<Vec<Monomial>> {
        let b = degree_basis(self.n(), m)?;
        Ok(self
            .ideal
            .degree_part(m)?
            .free_columns()
            .into_iter()
            .map(|c| b.monomials()[c].clone())
            .collect())
    }

    pub fn carrier(&self, m: u32) -> Result<Carrier> {
        Carrier::quotient(self.field(), self.n(), m, &*self.ideal.degree_part(m)?)
    }

    /// dim R^m / (P⁺ image), i.e. dim Sym^m − dim(hit^m + I^m).
    pub fn quot_dim(&self, m: u32) -> Result<usize> {
        let hit = hit_space(self.n(), m, self.field())?;
        let sum = hit.subspace.sum(&*self.ideal.degree_part(m)?)?;
        Ok(count_monomials(self.n(), m) as usize - sum.dim())
    }
}

/// d = k(q^n − 1)/(q − 1) − n.
pub fn top_degree_r(n: usize, q: u32, k: u32) -> u32 {
    k * (q.pow(n as u32) - 1) / (q - 1) - n as u32
}

/// Whether k = q^s·r with 1 ≤ r ≤ q − 1.
pub fn is_qs_r(k: u32, q: u32) -> bool {
    let mut k = k;
    while k > 0 && k.is_multiple_of(q) {
        k /= q;
    }
    k >= 1 && k < q
}

fn hyperplanes_of(w: &Subspace) -> Vec<Subspace> {
    subspace_lattice(w.field(), w.ambient_dim())
        .iter()
        .filter(|h| h.dim() + 1 == w.dim() && w.contains_subspace(h))
        .cloned()
        .collect()
}

/// I(W, k): generated by V_{H,W}^k over the hyperplanes H of W.
pub fn ideal_of_subspace(w: &Subspace, k: u32) -> Result<GradedIdeal> {
    let gens: Result<Vec<Polynomial>> = hyperplanes_of(w)
        .iter()
        .map(|h| Ok(v_hw(h, w)?.pow(k as u64)))
        .collect();
    GradedIdeal::new(w.field(), w.ambient_dim(), gens?)
}

/// I(V*, k), one generator V_{H,V*}^k per hyperplane H.
pub fn ideal_i(n: usize, field: &Field, k: u32) -> Result<GradedIdeal> {
    if n == 0 || k == 0 {
        return Err(usage("n and k must be at least 1"));
    }
    ideal_of_subspace(&Subspace::full(field, n), k)
}

/// R(V*, k) with top degree d.
pub fn r_ring(n: usize, field: &Field, k: u32) -> Result<QuotientRing> {
    Ok(QuotientRing::new(ideal_i(n, field, k)?, top_degree_r(n, field.q(), k)))
}

/// The ideal generated by Φ_H = Π_{α ∈ E \ H} α over affine hyperplanes H of E.
pub fn affine_ideal(n: usize, field: &Field) -> Result<GradedIdeal> {
    if n < 2 {
        return Err(usage("the affine quotient needs n ≥ 2"));
    }
    let pts = affine_points(field, n);
    let gens = subspace_lattice(field, n)
        .iter()
        .filter(|h| h.dim() + 1 == n && pts.iter().any(|p| h.contains(p)))
        .map(|h| {
            pts.iter()
                .filter(|p| !h.contains(p))
                .fold(Polynomial::one(field, n), |acc, p| {
                    acc.mul(&Polynomial::linear_form(field, p)).expect("same ring")
                })
        })
        .collect();
    GradedIdeal::new(field, n, gens)
}

pub fn affine_ring(n: usize, field: &Field) -> Result<QuotientRing> {
    let top = field.q().pow(n as u32 - 1) - n as u32;
    Ok(QuotientRing::new(affine_ideal(n, field)?, top))
}

/// dim (Sym/I)^{q^{n−1}−n}, checked against dim Quot^{q^{n−1}−n}(Sym).
pub fn cuspidal_dim(n: usize, field: &Field) -> Result<usize> {
    let r = affine_ring(n, field)?;
    let top = r.top_degree();
    let a = r.dim(top)?;
    let b = quot_dim(n, top, field)?;
    if a != b {
        return Err(domain(format!("top affine quotient has dimension {a}, Quot has {b}")));
    }
    Ok(a)
}

/// (a) P^i(R^{d−i(q−1)}) = 0 in R^d for i ≥ 1 and (b) χ(P^i)(u) = 0 in R
/// whenever |u| + qi > d, for u running over standard monomials.
pub fn top_indecomposable_check(r: &QuotientRing) -> Result<bool> {
    let d = r.top_degree();
    let n = r.n();
    let field = r.field();
    let q = field.q();
    if r.dim(d + 1)? != 0 {
        return Ok(false);
    }
    let hit = hit_space(n, d, field)?;
    if !r.ideal.degree_part(d)?.contains_subspace(&hit.subspace) {
        return Ok(false);
    }
    for m in 0..=d {
        let reps = r.standard_monomials(m)?;
        let lo = (d - m) / q + 1;
        let hi = (d - m) / (q - 1);
        for i in lo..=hi {
            let target = r.ideal.degree_part(m + i * (q - 1))?;
            let ok = reps.par_iter().all(|u| {
                let img = chi_p(i, &Polynomial::monomial(field, u.clone()));
                img.is_zero() || target.contains(&img.to_vector(m + i * (q - 1)).expect("homogeneous"))
            });
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Products Π_ℓ u_ℓ^{k − [ℓ ∈ frame]} over the n-frames of lines.
pub fn frame_products(n: usize, field: &Field, k: u32) -> Result<Vec<Polynomial>> {
    let lines = LineSet::all(field, n);
    let forms = lines.forms();
    let pk: Vec<Polynomial> = forms.iter().map(|f| f.pow(k as u64)).collect();
    let pk1: Vec<Polynomial> = forms.iter().map(|f| f.pow(k as u64 - 1)).collect();
    let frames = independent_subsets(lines.reps(), n, field);
    frames
        .par_iter()
        .map(|fr| {
            let mut acc = Polynomial::one(field, n);
            for (i, _) in forms.iter().enumerate() {
                let p = if fr.contains(&i) { &pk1[i] } else { &pk[i] };
                acc = acc.mul(p)?;
            }
            Ok(acc)
        })
        .collect()
}

fn independent_subsets(rows: &[Row], n: usize, field: &Field) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, rows: &[Row], n: usize, field: &Field, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..rows.len() {
            cur.push(i);
            let sel: Vec<Row> = cur.iter().map(|&j| rows[j].clone()).collect();
            if Subspace::span(field, n, &sel).map(|s| s.dim() == cur.len()).unwrap_or(false) {
                rec(i + 1, rows, n, field, cur, out);
            }
            cur.pop();
        }
    }
    rec(0, rows, n, field, &mut cur, &mut out);
    out
}

/// Whether the frame products span R^d(V*, k).
pub fn top_spanning_check(n: usize, field: &Field, k: u32) -> Result<bool> {
    let r = r_ring(n, field, k)?;
    let d = r.top_degree();
    let c = r.carrier(d)?;
    let mut b = EchelonBuilder::new(field, c.dim())?;
    for f in frame_products(n, field, k)? {
        b.insert(c.coords(&f)?)?;
    }
    Ok(b.rank() == c.dim())
}

/// γ = L^k / (x_1⋯x_n).
pub fn gamma(n: usize, field: &Field, k: u32) -> Result<Polynomial> {
    let lines = LineSet::all(field, n);
    let mut acc = Polynomial::one(field, n);
    for (rep, form) in lines.reps().iter().zip(lines.forms()) {
        let unit = rep.iter().filter(|c| !c.is_zero()).count() == 1;
        acc = acc.mul(&form.pow(k as u64 - unit as u64))?;
    }
    Ok(acc)
}

/// γ·st_n^{(k−1)} = γ in R^d(V*, k), and γ ≠ 0 there.
pub fn gamma_fixed_check(n: usize, field: &Field, k: u32) -> Result<bool> {
    let r = r_ring(n, field, k)?;
    let c = r.carrier(r.top_degree())?;
    let g = c.coords(&gamma(n, field, k)?)?;
    if g.iter().all(|x| x.is_zero()) {
        return Ok(false);
    }
    let i = (k - 1) % (field.q() - 1);
    let m = action_matrix(&twisted_idempotent(n, field, i)?, &c)?;
    let img: Row = (0..c.dim())
        .map(|j| {
            (0..c.dim()).fold(crate::field::FieldElem::ZERO, |acc, t| {
                field.add(acc, field.mul(g[t], m.get(t, j)))
            })
        })
        .collect();
    Ok(img == g)
}

/// Span of the coordinate vectors other than the pivot of `y`.
pub fn coordinate_complement(field: &Field, y: &[crate::field::FieldElem]) -> Result<Subspace> {
    let n = y.len();
    let p = y
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| usage("y must be nonzero"))?;
    let rows: Vec<Row> = (0..n)
        .filter(|&j| j != p)
        .map(|j| crate::invariants::unit_row(field, n, j))
        .collect();
    Subspace::span(field, n, &rows)
}

/// I(V*, k) + (y^k) = I(W, qk) + (y^k) in every degree ≤ d.
pub fn ideal_rel_check(n: usize, field: &Field, k: u32, y: &[crate::field::FieldElem]) -> Result<bool> {
    if y.len() != n {
        return Err(usage("y has the wrong length"));
    }
    let w = coordinate_complement(field, y)?;
    let yk = Polynomial::linear_form(field, y).pow(k as u64);
    let lhs = ideal_i(n, field, k)?.with_generators(std::slice::from_ref(&yk))?;
    let rhs = ideal_of_subspace(&w, field.q() * k)?.with_generators(&[yk])?;
    let d = top_degree_r(n, field.q(), k);
    for m in 0..=d {
        if lhs.degree_part(m)? != rhs.degree_part(m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// ∩_ℓ (I(V*, k) + (u_ℓ^k)) = I(V*, k) in every degree ≤ d.
pub fn embedding_kernel_check(n: usize, field: &Field, k: u32) -> Result<bool> {
    let ideal = ideal_i(n, field, k)?;
    let extended: Vec<GradedIdeal> = LineSet::all(field, n)
        .forms()
        .iter()
        .map(|u| ideal.with_generators(&[u.pow(k as u64)]))
        .collect::<Result<_>>()?;
    intersection_equals(&ideal, &extended, top_degree_r(n, field.q(), k))
}

fn intersection_equals(ideal: &GradedIdeal, parts: &[GradedIdeal], up_to: u32) -> Result<bool> {
    for m in 0..=up_to {
        let mut acc = parts[0].degree_part(m)?.as_ref().clone();
        for p in &parts[1..] {
            acc = acc.intersect(&*p.degree_part(m)?)?;
        }
        if acc != *ideal.degree_part(m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The spike x^{q^m r − 1} is not hit in F_q[x]/(x^{q^m r}): every
/// C(q^m r − 1 − p^a(q−1), p^a) vanishes mod p, and independently no P^i,
/// i ≥ 1, reaches the spike in the truncated algebra.
pub fn spike_check(field: &Field, m: u32, r: u32) -> Result<bool> {
    let q = field.q();
    if r == 0 || r >= q {
        return Err(usage(format!("r must lie in 1..={}", q - 1)));
    }
    let top = q.pow(m) * r - 1;
    let p = field.p() as u64;
    let mut binomial_ok = true;
    let mut pa = 1u32;
    while pa * (q - 1) <= top {
        let src = (top - pa * (q - 1)) as u64;
        if binomial_mod_p(src, pa as u64, p) != 0 {
            binomial_ok = false;
        }
        pa *= field.p();
    }
    let mut linear_ok = true;
    for i in 1..=top / (q - 1) {
        let src = Polynomial::monomial(field, Monomial::new(&[top - i * (q - 1)]));
        if !steenrod_p(i, &src).is_zero() {
            linear_ok = false;
        }
    }
    Ok(binomial_ok && linear_ok)
}

/// P^{p^a}(g) ∈ I for every generator while the target degree is ≤ top + 1,
/// and R vanishes in degree top + 1.
pub fn p_stability_check(r: &QuotientRing) -> Result<bool> {
    let field = r.field();
    let q1 = field.q() - 1;
    let bound = r.top_degree() + 1;
    if r.dim(bound)? != 0 {
        return Ok(false);
    }
    for g in r.ideal.generators() {
        let e = g.degree().unwrap();
        let mut pa = 1u32;
        while pa <= e && e + pa * q1 <= bound {
            if !r.ideal.contains(&steenrod_p(pa, g))? {
                return Ok(false);
            }
            pa *= field.p();
        }
    }
    Ok(true)
}

/// Every f·V_n^k with deg f ≤ d − k q^{n−1} is hit in Sym, checked on all
/// monomials f.
pub fn vn_multiple_hit_check(n: usize, field: &Field, k: u32) -> Result<bool> {
    let q = field.q();
    let xs: Vec<Polynomial> = (0..n - 1).map(|i| Polynomial::var(field, n, i)).collect();
    let vk = crate::invariants::mui_v(&xs, &Polynomial::var(field, n, n - 1))?.pow(k as u64);
    let d = top_degree_r(n, q, k) as i64;
    let bound = d - (k * q.pow(n as u32 - 1)) as i64;
    for e in 0..=bound.max(-1) {
        for m in degree_basis(n, e as u32)?.monomials() {
            if !is_hit(&vk.mul_monomial(m))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For each y ∈ E: I + (y) = I(W, q − 1) + (y) degreewise up to the top
/// degree, with W = {v_n = 0}; and ∩_y (I + (y)) = I.
pub fn affine_embedding_check(n: usize, field: &Field) -> Result<bool> {
    let r = affine_ring(n, field)?;
    let top = r.top_degree();
    let w_rows: Vec<Row> = (0..n - 1).map(|j| crate::invariants::unit_row(field, n, j)).collect();
    let w = Subspace::span(field, n, &w_rows)?;
    let iw = ideal_of_subspace(&w, field.q() - 1)?;
    let mut parts = Vec::new();
    for y in affine_points(field, n) {
        let yf = Polynomial::linear_form(field, &y);
        let lhs = r.ideal.with_generators(std::slice::from_ref(&yf))?;
        let rhs = iw.with_generators(&[yf])?;
        for m in 0..=top {
            if lhs.degree_part(m)? != rhs.degree_part(m)? {
                return Ok(false);
            }
        }
        parts.push(lhs);
    }
    intersection_equals(&r.ideal, &parts, top)
}

/// Every f·Φ_H with deg f ≤ q^{n−2} − n is hit, on all monomials f.
pub fn affine_generator_hit_check(n: usize, field: &Field) -> Result<bool> {
    let ideal = affine_ideal(n, field)?;
    let q = field.q() as i64;
    let bound = q.pow(n as u32 - 2) - n as i64;
    for g in ideal.generators() {
        for e in 0..=bound.max(-1) {
            for m in degree_basis(n, e as u32)?.monomials() {
                if !is_hit(&g.mul_monomial(m))? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElem;
    use crate::grouprep::{enumerate_gl, matrix_rank};
    use crate::invariants::mui_v;
    use crate::simplicial::{build_delta, f_vector};

    fn f(q: u32) -> Field {
        Field::builtin(q).unwrap()
    }

    fn row(v: &[u8]) -> Row {
        v.iter().map(|&x| FieldElem(x)).collect()
    }

    const SIX: [(usize, u32, u32); 6] = [(2, 2, 1), (2, 2, 2), (3, 2, 1), (3, 2, 2), (2, 3, 1), (2, 3, 2)];

    #[test]
    fn ideal_i_generators() {
        let f2 = f(2);
        let i = ideal_i(2, &f2, 1).unwrap();
        let mut gens: Vec<String> = i.generators().iter().map(|g| g.to_string()).collect();
        gens.sort();
        let mut expected: Vec<String> = ["x1*x2", "x1*x2 + x2^2", "x1^2 + x1*x2"]
            .iter()
            .map(|s| Polynomial::parse(&f2, 2, s).unwrap().to_string())
            .collect();
        expected.sort();
        assert_eq!(gens, expected);
        for (n, q, k) in SIX {
            let i = ideal_i(n, &f(q), k).unwrap();
            assert_eq!(i.generators().len() as u32, (q.pow(n as u32) - 1) / (q - 1));
            assert!(i.generators().iter().all(|g| g.degree() == Some(k * q.pow(n as u32 - 1))));
        }
    }

    #[test]
    fn generators_form_one_orbit() {
        let f2 = f(2);
        for n in [2, 3] {
            let xs: Vec<Polynomial> = (0..n - 1).map(|i| Polynomial::var(&f2, n, i)).collect();
            let v = mui_v(&xs, &Polynomial::var(&f2, n, n - 1)).unwrap();
            let mut orbit: Vec<Polynomial> = Vec::new();
            for g in enumerate_gl(n, &f2).unwrap() {
                let img = v.substitute(&g).unwrap();
                if !orbit.iter().any(|o| o.proportional_to(&img)) {
                    orbit.push(img);
                }
            }
            let gens = ideal_i(n, &f2, 1).unwrap().generators().to_vec();
            assert_eq!(orbit.len(), gens.len());
            assert!(gens.iter().all(|g| orbit.iter().any(|o| o.proportional_to(g))));
        }
    }

    #[test]
    fn hilbert_series_matches_h_vector() {
        let r = r_ring(2, &f(2), 1).unwrap();
        assert_eq!(r.hilbert_series(4).unwrap(), vec![1, 2, 0, 0, 0]);
        for (n, q, k) in SIX {
            let fq = f(q);
            let r = r_ring(n, &fq, k).unwrap();
            let d = r.top_degree();
            let hs = r.hilbert_series(d + 1).unwrap();
            let h = f_vector(&build_delta(n, &fq, k as usize).unwrap()).unwrap().h;
            let h: Vec<usize> = h.iter().map(|&x| x as usize).collect();
            assert_eq!(&hs[..=d as usize], &h[..], "{n} {q} {k}");
            assert_eq!(hs[d as usize + 1], 0);
            assert_eq!(hs[d as usize], q.pow((n * (n - 1) / 2) as u32) as usize);
        }
    }

    #[test]
    fn quot_dims_agree() {
        let r = r_ring(2, &f(2), 1).unwrap();
        assert_eq!(r.quot_dim(0).unwrap(), 1);
        assert_eq!(r.quot_dim(1).unwrap(), 2);
        let r = r_ring(3, &f(2), 1).unwrap();
        assert_eq!(r.quot_dim(4).unwrap(), 8);
        for (n, q, k) in SIX {
            let fq = f(q);
            let r = r_ring(n, &fq, k).unwrap();
            for m in 0..=r.top_degree() {
                assert_eq!(r.quot_dim(m).unwrap(), quot_dim(n, m, &fq).unwrap(), "{n} {q} {k} m={m}");
            }
        }
    }

    #[test]
    fn top_degree_checks() {
        let r1 = QuotientRing::new(ideal_i(1, &f(2), 1).unwrap(), 0);
        assert!(top_indecomposable_check(&r1).unwrap());
        for (n, q, k) in SIX {
            let fq = f(q);
            let r = r_ring(n, &fq, k).unwrap();
            assert!(top_indecomposable_check(&r).unwrap(), "{n} {q} {k}");
            assert!(top_spanning_check(n, &fq, k).unwrap(), "{n} {q} {k}");
            assert!(p_stability_check(&r).unwrap());
            assert!(vn_multiple_hit_check(n, &fq, k).unwrap());
        }
    }

    #[test]
    fn gamma_fixed_by_twisted_steinberg() {
        for (n, q, k) in [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1), (2, 3, 2)] {
            assert!(gamma_fixed_check(n, &f(q), k).unwrap(), "{n} {q} {k}");
        }
    }

    #[test]
    fn gamma_orbit_spans_top() {
        for (n, q, k) in [(2usize, 2u32, 2u32), (3, 2, 1), (2, 3, 1)] {
            let fq = f(q);
            let r = r_ring(n, &fq, k).unwrap();
            let c = r.carrier(r.top_degree()).unwrap();
            let g = gamma(n, &fq, k).unwrap();
            let rows: Vec<Row> = enumerate_gl(n, &fq)
                .unwrap()
                .iter()
                .map(|x| c.coords(&g.substitute(x).unwrap()).unwrap())
                .collect();
            let m = crate::linalg::MatrixGF::from_rows(&fq, c.dim(), &rows).unwrap();
            assert_eq!(matrix_rank(&m).unwrap(), c.dim());
        }
    }

    #[test]
    fn lemma_ideal_relation() {
        let f2 = f(2);
        assert!(ideal_rel_check(2, &f2, 1, &row(&[0, 1])).unwrap());
        assert!(ideal_rel_check(2, &f2, 2, &row(&[1, 1])).unwrap());
        assert!(ideal_rel_check(3, &f2, 1, &row(&[0, 0, 1])).unwrap());
        assert!(ideal_rel_check(2, &f(3), 1, &row(&[1, 2])).unwrap());
    }

    #[test]
    fn embedding_kernels() {
        assert!(embedding_kernel_check(2, &f(2), 1).unwrap());
        assert!(embedding_kernel_check(2, &f(2), 2).unwrap());
        assert!(embedding_kernel_check(2, &f(3), 1).unwrap());
        assert!(embedding_kernel_check(3, &f(2), 1).unwrap());
    }

    #[test]
    fn spikes() {
        assert!(spike_check(&f(2), 1, 1).unwrap());
        assert!(spike_check(&f(2), 3, 1).unwrap());
        assert!(spike_check(&f(3), 2, 2).unwrap());
        assert!(spike_check(&f(4), 2, 3).unwrap());
        assert!(matches!(spike_check(&f(2), 1, 2), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn cuspidal_dims() {
        assert_eq!(cuspidal_dim(2, &f(2)).unwrap(), 1);
        assert_eq!(cuspidal_dim(3, &f(2)).unwrap(), 3);
        assert_eq!(cuspidal_dim(2, &f(3)).unwrap(), 2);
        assert_eq!(cuspidal_dim(3, &f(3)).unwrap(), 16);
    }

    #[test]
    fn affine_structure() {
        for (n, q) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let fq = f(q);
            assert!(affine_embedding_check(n, &fq).unwrap(), "{n} {q}");
            assert!(affine_generator_hit_check(n, &fq).unwrap());
            assert!(p_stability_check(&affine_ring(n, &fq).unwrap()).unwrap());
        }
    }

    #[test]
    fn qs_r_forms() {
        assert!(is_qs_r(1, 2) && is_qs_r(2, 2) && is_qs_r(4, 2));
        assert!(!is_qs_r(3, 2));
        assert!(is_qs_r(2, 3) && is_qs_r(6, 3) && !is_qs_r(4, 3));
    }
}
