//! Products of lines, the Dickson and Mùi invariants, and the χ-formulas
//! expressing them through the antipode.

use crate::error::{domain, usage, Result};
use crate::field::{Field, FieldElem};
use crate::linalg::{Row, Subspace};
use crate::poly::{Monomial, Polynomial};
use crate::steenrod_action::chi_p;

/// One normalized representative (leading coefficient 1) per line of a
/// subspace W ⊆ V*, as coefficient rows of linear forms.
#[derive(Debug, Clone)]
pub struct LineSet {
    field: Field,
    n: usize,
    reps: Vec<Row>,
}

impl LineSet {
    pub fn new(w: &Subspace) -> LineSet {
        let field = w.field().clone();
        let n = w.ambient_dim();
        let mut reps = Vec::new();
        let basis = w.basis();
        let q = field.q() as usize;
        let k = basis.len();
        // Coefficient tuples whose first nonzero entry is 1; the row basis is
        // reduced, so the combination is normalized too.
        for lead in 0..k {
            let tail = k - lead - 1;
            for code in 0..q.pow(tail as u32) {
                let mut v = basis[lead].clone();
                let mut c = code;
                for b in &basis[lead + 1..] {
                    let a = field.elements()[c % q];
                    c /= q;
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = field.add(*x, field.mul(a, *y));
                    }
                }
                reps.push(v);
            }
        }
        reps.sort();
        LineSet { field, n, reps }
    }

    /// All lines of V* = F_q^n.
    pub fn all(field: &Field, n: usize) -> LineSet {
        LineSet::new(&Subspace::full(field, n))
    }

    pub fn reps(&self) -> &[Row] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn forms(&self) -> Vec<Polynomial> {
        self.reps
            .iter()
            .map(|r| Polynomial::linear_form(&self.field, r))
            .collect()
    }
}

fn product(field: &Field, n: usize, forms: impl IntoIterator<Item = Polynomial>) -> Polynomial {
    forms
        .into_iter()
        .fold(Polynomial::one(field, n), |acc, f| acc.mul(&f).expect("same ring"))
}

/// L_W, the product of the chosen line representatives.
pub fn product_of_lines(ls: &LineSet) -> Polynomial {
    product(&ls.field, ls.n, ls.forms())
}

/// det(x_j^{q^{i−1}}) expanded by the Leibniz formula.
pub fn dickson_l(n: usize, field: &Field) -> Result<Polynomial> {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    let q = field.q();
    let mut out = Polynomial::zero(field, n);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p, sign| {
        let mut e = vec![0; n];
        for (i, &j) in p.iter().enumerate() {
            e[j] += q.pow(i as u32);
        }
        let c = if sign { field.one() } else { field.neg(field.one()) };
        out.add_term(Monomial::new(&e), c);
    });
    Ok(out)
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], bool)) {
    fn rec(p: &mut Vec<usize>, k: usize, even: bool, f: &mut impl FnMut(&[usize], bool)) {
        if k == p.len() {
            f(p, even);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, if i == k { even } else { !even }, f);
            p.swap(k, i);
        }
    }
    rec(p, k, true, f);
}

/// Π over λ ∈ F_q^{m} of (λ_1 y_1 + ⋯ + λ_m y_m + z).
pub fn mui_v(prefix: &[Polynomial], z: &Polynomial) -> Result<Polynomial> {
    let field = z.field();
    let q = field.q() as usize;
    let m = prefix.len();
    let mut out = Polynomial::one(field, z.nvars());
    for code in 0..q.pow(m as u32) {
        let mut c = code;
        let mut term = z.clone();
        for y in prefix {
            let a = field.elements()[c % q];
            c /= q;
            term.add_scaled(a, y);
        }
        out = out.mul(&term)?;
    }
    Ok(out)
}

/// V_{H,W}: the product of the line representatives of W not lying in H.
pub fn v_hw(h: &Subspace, w: &Subspace) -> Result<Polynomial> {
    if !w.contains_subspace(h) || h.dim() + 1 != w.dim() {
        return Err(domain("H is not a hyperplane of W"));
    }
    let ls = LineSet::new(w);
    let field = w.field();
    Ok(product(
        field,
        w.ambient_dim(),
        ls.reps
            .iter()
            .filter(|r| !h.contains(r))
            .map(|r| Polynomial::linear_form(field, r)),
    ))
}

/// e_i(x_v^{q−1} : v ∈ vars) in a ring of `nvars` variables.
pub fn elem_sym_qpow(i: usize, field: &Field, nvars: usize, vars: &[usize]) -> Result<Polynomial> {
    if i > vars.len() || vars.iter().any(|&v| v >= nvars) {
        return Err(usage("elementary symmetric index or variables out of range"));
    }
    let q1 = field.q() - 1;
    let mut out = Polynomial::zero(field, nvars);
    let m = vars.len();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let mut e = vec![0; nvars];
        for (b, &v) in vars.iter().enumerate() {
            if mask >> b & 1 == 1 {
                e[v] = q1;
            }
        }
        out.add_term(Monomial::new(&e), field.one());
    }
    Ok(out)
}

/// Both sides of the identity
/// Π_j V(x_1..x_{n−1}, y_j)^{q^s} = ε Σ_i χ(P^{t − i})(e_i · Π_j y_j^{q^s}),
/// t = (q^{n−1}−1)q^s r/(q−1), with y_1..y_r fresh variables after
/// x_1..x_{n−1}. The sign is ε = (−1)^t, the sign produced by expanding
/// P̂(Π(1 − x_i^{q−1}) · Π y_j^{q^s}); it equals (−1)^{n−1} unless r is even
/// and q is odd.
pub fn lemma_vn_sides(field: &Field, s: u32, r: usize, n: usize) -> Result<(Polynomial, Polynomial)> {
    let q = field.q();
    if r == 0 || r > (q - 1) as usize {
        return Err(usage(format!("r must lie in 1..={}", q - 1)));
    }
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    let nv = n - 1 + r;
    let xs: Vec<Polynomial> = (0..n - 1).map(|i| Polynomial::var(field, nv, i)).collect();
    let qs = q.pow(s) as u64;
    let mut lhs = Polynomial::one(field, nv);
    let mut ys = Polynomial::one(field, nv);
    for j in 0..r {
        let y = Polynomial::var(field, nv, n - 1 + j);
        lhs = lhs.mul(&mui_v(&xs, &y)?.pow(qs))?;
        ys = ys.mul(&y.pow(qs))?;
    }
    let top = (q.pow(n as u32 - 1) - 1) * q.pow(s) * r as u32 / (q - 1);
    let x_idx: Vec<usize> = (0..n - 1).collect();
    let mut rhs = Polynomial::zero(field, nv);
    for i in 0..n {
        if (i as u32) > top {
            break;
        }
        let e = elem_sym_qpow(i, field, nv, &x_idx)?;
        rhs.add_assign(&chi_p(top - i as u32, &e.mul(&ys)?));
    }
    Ok((lhs, rhs.scale(field.sign(top as u64))))
}

pub fn verify_lemma_vn(field: &Field, s: u32, r: usize, n: usize) -> Result<bool> {
    let (l, r) = lemma_vn_sides(field, s, r, n)?;
    Ok(l == r)
}

/// Q_{m,j}: (−1)^{m−j} times the coefficient of x^{q^j} in V(x_1..x_m, x).
pub fn dickson_q(m: usize, j: usize, field: &Field) -> Result<Polynomial> {
    if j > m {
        return Err(usage("j must not exceed m"));
    }
    let nv = m + 1;
    let xs: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(field, nv, i)).collect();
    let v = mui_v(&xs, &Polynomial::var(field, nv, m))?;
    let c = v.coefficient_of_power(m, field.q().pow(j as u32));
    c.scale(field.sign((m - j) as u64)).restrict_vars(m)
}

/// Σ_{i=start}^{m} χ(P^{(q^m−q^j)/(q−1)−i})(e_i(x_1^{q−1}..x_m^{q−1})).
pub fn dickson_q_chi(m: usize, j: usize, start: usize, field: &Field) -> Result<Polynomial> {
    let q = field.q();
    let top = (q.pow(m as u32) - q.pow(j as u32)) / (q - 1);
    let vars: Vec<usize> = (0..m).collect();
    let mut out = Polynomial::zero(field, m);
    for i in start..=m {
        if i as u32 > top {
            break;
        }
        out.add_assign(&chi_p(top - i as u32, &elem_sym_qpow(i, field, m, &vars)?));
    }
    Ok(out)
}

/// Image of a subspace of linear forms under c ↦ c·g.
pub fn transform_subspace(w: &Subspace, g: &crate::poly::GlElement) -> Result<Subspace> {
    let rows: Vec<Row> = w
        .basis()
        .iter()
        .map(|b| g.apply_to_form(w.field(), b))
        .collect();
    Subspace::span(w.field(), w.ambient_dim(), &rows)
}

pub(crate) fn unit_row(field: &Field, n: usize, i: usize) -> Row {
    let mut r = vec![FieldElem::ZERO; n];
    r[i] = field.one();
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::GlElement;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(q: u32) -> Field {
        Field::builtin(q).unwrap()
    }

    fn parse(field: &Field, n: usize, s: &str) -> Polynomial {
        Polynomial::parse(field, n, s).unwrap()
    }

    #[test]
    fn line_counts() {
        for q in [2u32, 3, 4, 5] {
            for n in 1..=3usize {
                let ls = LineSet::all(&f(q), n);
                assert_eq!(ls.len() as u32, (q.pow(n as u32) - 1) / (q - 1));
                let mut reps = ls.reps().to_vec();
                reps.dedup();
                assert_eq!(reps.len(), ls.len());
                for r in ls.reps() {
                    assert_eq!(*r.iter().find(|c| !c.is_zero()).unwrap(), FieldElem::ONE);
                }
            }
        }
    }

    #[test]
    fn product_of_lines_examples() {
        let f2 = f(2);
        let w = Subspace::span(&f2, 2, &[unit_row(&f2, 2, 0)]).unwrap();
        assert_eq!(product_of_lines(&LineSet::new(&w)), parse(&f2, 2, "x1"));
        assert_eq!(product_of_lines(&LineSet::all(&f2, 2)), parse(&f2, 2, "x1^2*x2 + x1*x2^2"));
        for q in [2, 3] {
            for n in 1..=3 {
                let l = product_of_lines(&LineSet::all(&f(q), n));
                let d = dickson_l(n, &f(q)).unwrap();
                assert!(l.proportional_to(&d), "q={q} n={n}");
                let qq = q;
                assert_eq!(d.degree().unwrap(), (qq.pow(n as u32) - 1) / (qq - 1));
            }
        }
    }

    #[test]
    fn dickson_l_examples() {
        let f2 = f(2);
        assert_eq!(dickson_l(1, &f2).unwrap(), parse(&f2, 1, "x1"));
        assert_eq!(dickson_l(2, &f2).unwrap(), parse(&f2, 2, "x1*x2^2 + x1^2*x2"));
    }

    #[test]
    fn mui_examples() {
        let f2 = f(2);
        let z = Polynomial::var(&f2, 2, 1);
        assert_eq!(mui_v(&[], &z).unwrap(), z);
        let x = Polynomial::var(&f2, 2, 0);
        assert_eq!(mui_v(&[x], &z).unwrap(), parse(&f2, 2, "x1*x2 + x2^2"));
        for q in [2u32, 3] {
            let fq = f(q);
            for n in 1..=3usize {
                let xs: Vec<_> = (0..n - 1).map(|i| Polynomial::var(&fq, n, i)).collect();
                let v = mui_v(&xs, &Polynomial::var(&fq, n, n - 1)).unwrap();
                assert_eq!(v.degree().unwrap(), q.pow(n as u32 - 1));
                // L_n = L_{n−1} · V_n up to a scalar.
                let lower = dickson_l(n.max(2) - 1, &fq).unwrap();
                let lower = if n == 1 {
                    Polynomial::one(&fq, 1)
                } else {
                    lower.rename_vars(n, &(0..n - 1).collect::<Vec<_>>()).unwrap()
                };
                let full = dickson_l(n, &fq).unwrap();
                assert!(lower.mul(&v).unwrap().proportional_to(&full));
            }
        }
    }

    #[test]
    fn v_hw_examples() {
        let f2 = f(2);
        let h = Subspace::span(&f2, 2, &[unit_row(&f2, 2, 0)]).unwrap();
        let w = Subspace::full(&f2, 2);
        assert_eq!(v_hw(&h, &w).unwrap(), parse(&f2, 2, "x2*x1 + x2^2"));
        assert!(matches!(v_hw(&w, &w), Err(crate::Error::Domain(_))));
        let f3 = f(3);
        let w3 = Subspace::full(&f3, 3);
        let h3 = Subspace::span(&f3, 3, &[unit_row(&f3, 3, 0), unit_row(&f3, 3, 1)]).unwrap();
        let v = v_hw(&h3, &w3).unwrap();
        assert_eq!(v.degree(), Some(9));
        let lh = product_of_lines(&LineSet::new(&h3));
        let lw = product_of_lines(&LineSet::new(&w3));
        assert!(lh.mul(&v).unwrap().proportional_to(&lw));
        let xs = vec![Polynomial::var(&f3, 3, 0), Polynomial::var(&f3, 3, 1)];
        assert!(mui_v(&xs, &Polynomial::var(&f3, 3, 2)).unwrap().proportional_to(&v));
    }

    #[test]
    fn v_hw_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2, 3] {
            let fq = f(q);
            let w = Subspace::full(&fq, 3);
            let h = Subspace::span(&fq, 3, &[unit_row(&fq, 3, 0), unit_row(&fq, 3, 2)]).unwrap();
            for _ in 0..5 {
                let g = loop {
                    let e: Vec<FieldElem> =
                        (0..9).map(|_| fq.elements()[rng.gen_range(0..q as usize)]).collect();
                    if let Ok(g) = GlElement::new(&fq, 3, &e) {
                        break g;
                    }
                };
                let lhs = v_hw(&transform_subspace(&h, &g).unwrap(), &w).unwrap();
                let rhs = v_hw(&h, &w).unwrap().substitute(&g).unwrap();
                assert!(lhs.proportional_to(&rhs));
            }
        }
    }

    #[test]
    fn elem_sym_examples() {
        let f2 = f(2);
        let f3 = f(3);
        assert_eq!(elem_sym_qpow(0, &f2, 2, &[0, 1]).unwrap(), Polynomial::one(&f2, 2));
        assert_eq!(elem_sym_qpow(1, &f2, 2, &[0, 1]).unwrap(), parse(&f2, 2, "x1 + x2"));
        assert_eq!(elem_sym_qpow(2, &f3, 2, &[0, 1]).unwrap(), parse(&f3, 2, "x1^2*x2^2"));
    }

    #[test]
    fn lemma_vn_small() {
        assert!(verify_lemma_vn(&f(2), 0, 1, 2).unwrap());
        assert!(verify_lemma_vn(&f(3), 0, 2, 2).unwrap());
        assert!(verify_lemma_vn(&f(2), 1, 1, 3).unwrap());
        assert!(matches!(verify_lemma_vn(&f(2), 0, 2, 2), Err(crate::Error::Usage(_))));
    }

    #[test]
    fn lemma_vn_sign_for_even_r() {
        // With r = 2 over F_3 the sign (−1)^{n−1} gives the negative of the product.
        let f3 = f(3);
        let (l, r) = lemma_vn_sides(&f3, 0, 2, 2).unwrap();
        assert_eq!(l, r);
        assert_eq!(r.scale(f3.sign(1)), l.neg());
        assert_ne!(l, l.neg());
    }

    #[test]
    fn dickson_q_examples() {
        let f2 = f(2);
        assert_eq!(dickson_q(1, 0, &f2).unwrap(), parse(&f2, 1, "x1"));
        assert_eq!(dickson_q(2, 2, &f2).unwrap(), Polynomial::one(&f2, 2));
        for q in [2, 3] {
            let fq = f(q);
            for m in 2..=3 {
                for j in 0..=m {
                    let def = dickson_q(m, j, &fq).unwrap();
                    assert_eq!(def, dickson_q_chi(m, j, 0, &fq).unwrap());
                    assert_eq!(def, dickson_q_chi(m, j, m - j, &fq).unwrap());
                }
            }
        }
    }
}
