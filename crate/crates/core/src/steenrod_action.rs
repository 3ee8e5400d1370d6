//! The reduced power operations P^k on F_q[x_1..x_n], their antipodes
//! χ(P^k), hit subspaces and dimensions of the indecomposable quotient.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::error::Result;
use crate::field::{Field, FieldElem, FieldSpec};
use crate::linalg::{EchelonBuilder, Subspace};
use crate::poly::{count_monomials, degree_basis, Exp, Monomial, Polynomial};

/// C(m, k) mod p by Lucas' theorem.
pub fn binomial_mod_p(mut m: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || m > 0 {
        let (a, b) = (m % p, k % p);
        if b > a {
            return 0;
        }
        acc = acc * small_binomial(a, b) % p;
        m /= p;
        k /= p;
    }
    acc
}

fn small_binomial(a: u64, b: u64) -> u64 {
    let mut c: u64 = 1;
    for i in 0..b {
        c = c * (a - i) / (i + 1);
    }
    c
}

/// Digit sum of `a` in base `q`.
pub fn alpha(mut a: u64, q: u64) -> u64 {
    let mut s = 0;
    while a > 0 {
        s += a % q;
        a /= q;
    }
    s
}

fn p_monomial(field: &Field, k: u32, m: &Monomial, out: &mut Polynomial, coeff: FieldElem) {
    let q1 = field.q() - 1;
    let p = field.p() as u64;
    let exps = m.exps();
    let n = exps.len();
    let mut cur = vec![0 as Exp; n];
    fn rec(
        field: &Field,
        exps: &[Exp],
        pos: usize,
        rem: u32,
        c: FieldElem,
        cur: &mut Vec<Exp>,
        q1: u32,
        p: u64,
        out: &mut Polynomial,
    ) {
        if pos == exps.len() {
            if rem == 0 {
                out.add_term(Monomial::new(cur), c);
            }
            return;
        }
        let e = exps[pos];
        let rest: u32 = exps[pos + 1..].iter().sum();
        let lo = rem.saturating_sub(rest);
        for ki in lo..=rem.min(e) {
            let b = binomial_mod_p(e as u64, ki as u64, p);
            if b == 0 {
                continue;
            }
            cur[pos] = e + q1 * ki;
            let c2 = field.mul(c, field.from_int(b as i64));
            rec(field, exps, pos + 1, rem - ki, c2, cur, q1, p, out);
        }
    }
    rec(field, exps, 0, k, coeff, &mut cur, q1, p, out);
}

/// P^k(f), via the binomial rule on variable powers and the Cartan formula.
pub fn steenrod_p(k: u32, f: &Polynomial) -> Polynomial {
    let field = f.field();
    let mut out = Polynomial::zero(field, f.nvars());
    for (m, c) in f.terms() {
        if k <= m.degree() {
            p_monomial(field, k, m, &mut out, c);
        }
    }
    out
}

type ChiKey = (FieldSpec, u32, Monomial);
static CHI_CACHE: Lazy<Mutex<HashMap<ChiKey, Arc<Polynomial>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn chi_monomial(field: &Field, k: u32, m: &Monomial) -> Arc<Polynomial> {
    if k == 0 {
        return Arc::new(Polynomial::monomial(field, m.clone()));
    }
    let key = (field.spec().clone(), k, m.clone());
    if let Some(r) = CHI_CACHE.lock().unwrap().get(&key) {
        return r.clone();
    }
    let mut acc = Polynomial::zero(field, m.nvars());
    for i in 1..=k {
        let inner = chi_monomial(field, k - i, m);
        acc.add_assign(&steenrod_p(i, &inner));
    }
    let r = Arc::new(acc.neg());
    CHI_CACHE.lock().unwrap().insert(key, r.clone());
    r
}

/// χ(P^k)(f) from the recursion Σ_{i+j=k} P^i χ(P^j) = 0.
pub fn chi_p(k: u32, f: &Polynomial) -> Polynomial {
    let field = f.field();
    let mut out = Polynomial::zero(field, f.nvars());
    for (m, c) in f.terms() {
        out.add_scaled(c, &chi_monomial(field, k, m));
    }
    out
}

/// Σ_i P̂^i(f) with terms above degree `cap` dropped, where P̂^i = (−1)^i χ(P^i).
/// Computed as the algebra map with x ↦ x + x^q + x^{q^2} + ⋯.
pub fn total_ph(f: &Polynomial, cap: u32) -> Polynomial {
    let field = f.field();
    let n = f.nvars();
    let q = field.q();
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut img = Polynomial::zero(field, n);
            let mut e: u64 = 1;
            while e <= cap as u64 {
                let mut m = Monomial::one(n);
                m = m.mul(&Monomial::var(n, i).scale(e as Exp));
                img.add_term(m, field.one());
                e *= q as u64;
            }
            img
        })
        .collect();
    let mut out = Polynomial::zero(field, n);
    let mut powers: Vec<HashMap<Exp, Polynomial>> = vec![HashMap::new(); n];
    for (m, c) in f.terms() {
        let mut prod = Polynomial::constant(field, n, c);
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = powers[i]
                .entry(e)
                .or_insert_with(|| {
                    let mut acc = Polynomial::one(field, n);
                    for _ in 0..e {
                        acc = acc.mul_truncated(&images[i], cap).expect("same ring");
                    }
                    acc
                })
                .clone();
            prod = prod.mul_truncated(&pw, cap).expect("same ring");
        }
        out.add_assign(&prod);
    }
    out
}

/// Σ_{i≥1} P^i(Sym^{d−i(q−1)}) inside the degree-`d` coordinate space.
#[derive(Debug, Clone)]
pub struct HitSpace {
    pub n: usize,
    pub d: u32,
    pub field: Field,
    pub subspace: Arc<Subspace>,
}

type HitKey = (FieldSpec, usize, u32);
static HIT_CACHE: Lazy<Mutex<HashMap<HitKey, Arc<Subspace>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn hit_space(n: usize, d: u32, field: &Field) -> Result<HitSpace> {
    let key = (field.spec().clone(), n, d);
    if let Some(s) = HIT_CACHE.lock().unwrap().get(&key) {
        return Ok(HitSpace {
            n,
            d,
            field: field.clone(),
            subspace: s.clone(),
        });
    }
    let basis = degree_basis(n, d)?;
    let q1 = field.q() - 1;
    let mut builder = EchelonBuilder::new(field, basis.len())?;
    for i in 1..=d / q1 {
        let src = degree_basis(n, d - i * q1)?;
        let rows: Vec<_> = src
            .monomials()
            .par_iter()
            .map(|m| {
                let mut out = Polynomial::zero(field, n);
                p_monomial(field, i, m, &mut out, field.one());
                out.to_vector(d).expect("homogeneous image")
            })
            .collect();
        for r in rows {
            if builder.rank() == basis.len() {
                break;
            }
            builder.insert(r)?;
        }
    }
    let s = Arc::new(builder.finish());
    HIT_CACHE.lock().unwrap().insert(key, s.clone());
    Ok(HitSpace {
        n,
        d,
        field: field.clone(),
        subspace: s,
    })
}

/// dim Sym^d − dim of the hit subspace.
pub fn quot_dim(n: usize, d: u32, field: &Field) -> Result<usize> {
    let h = hit_space(n, d, field)?;
    Ok(count_monomials(n, d) as usize - h.subspace.dim())
}

/// Whether a homogeneous polynomial lies in the hit subspace.
pub fn is_hit(f: &Polynomial) -> Result<bool> {
    let Some(d) = f.degree() else {
        return Ok(true);
    };
    let h = hit_space(f.nvars(), d, f.field())?;
    Ok(h.subspace.contains(&f.to_vector(d)?))
}

/// Whether P^k(f)·g − f·χ(P^k)(g) is hit.
pub fn chi_trick_check(f: &Polynomial, g: &Polynomial, k: u32) -> Result<bool> {
    let lhs = steenrod_p(k, f).mul(g)?;
    let rhs = f.mul(&chi_p(k, g))?;
    is_hit(&lhs.sub(&rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(q: u32) -> Field {
        Field::builtin(q).unwrap()
    }

    fn random_homog(field: &Field, n: usize, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
        let b = degree_basis(n, d).unwrap();
        let v: Vec<FieldElem> = (0..b.len())
            .map(|_| {
                if rng.gen_bool(0.4) {
                    field.elements()[rng.gen_range(0..field.q() as usize)]
                } else {
                    FieldElem::ZERO
                }
            })
            .collect();
        Polynomial::from_vector(field, n, d, &v).unwrap()
    }

    #[test]
    fn lucas_matches_factorial_binomials() {
        for p in [2u64, 3, 5, 7] {
            for m in 0..40u64 {
                let mut c: u128 = 1;
                for k in 0..=m {
                    assert_eq!(binomial_mod_p(m, k, p), (c % p as u128) as u64);
                    c = c * (m - k) as u128 / (k + 1) as u128;
                }
                assert_eq!(binomial_mod_p(m, m + 1, p), 0);
            }
        }
    }

    #[test]
    fn p_examples() {
        for q in [2, 3, 4, 5] {
            let fq = f(q);
            let x = Polynomial::var(&fq, 1, 0);
            assert_eq!(steenrod_p(1, &x), x.pow(q as u64));
            assert!(steenrod_p(2, &x).is_zero());
        }
        let f2 = f(2);
        let x2 = Polynomial::parse(&f2, 1, "x1^2").unwrap();
        assert!(steenrod_p(1, &x2).is_zero());
    }

    #[test]
    fn chi_examples() {
        for q in [2, 3, 4] {
            let fq = f(q);
            let x = Polynomial::var(&fq, 2, 0);
            assert_eq!(chi_p(1, &x), x.pow(q as u64).neg());
            assert_eq!(chi_p(0, &x), x);
            for k in 2..=(q * q + 2) {
                let got = chi_p(k, &x);
                let mut pow = 1u32;
                let mut expected = Polynomial::zero(&fq, 2);
                while (pow - 1) / (q - 1) <= k {
                    if (pow - 1) / (q - 1) == k {
                        expected = x.pow(pow as u64).scale(fq.sign(k as u64));
                    }
                    pow *= q;
                }
                assert_eq!(got, expected, "q={q} k={k}");
            }
        }
        let f2 = f(2);
        assert!(chi_p(2, &Polynomial::var(&f2, 1, 0)).is_zero());
    }

    #[test]
    fn total_ph_examples() {
        for q in [2, 3] {
            let fq = f(q);
            let x = Polynomial::var(&fq, 1, 0);
            let expected = x.add(&x.pow(q as u64)).unwrap().add(&x.pow((q * q) as u64)).unwrap();
            assert_eq!(total_ph(&x, q * q), expected);
            assert_eq!(total_ph(&Polynomial::one(&fq, 1), 50), Polynomial::one(&fq, 1));
        }
        let f2 = f(2);
        let g = Polynomial::parse(&f2, 1, "x1 + x1^2").unwrap();
        for cap in [1, 5, 17, 40] {
            assert_eq!(total_ph(&g, cap), Polynomial::var(&f2, 1, 0));
        }
    }

    #[test]
    fn total_ph_agrees_with_recursion() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2, 3] {
            let fq = f(q);
            for _ in 0..10 {
                let d = rng.gen_range(1..=4);
                let g = random_homog(&fq, 2, d, &mut rng);
                let cap = d + 4 * (q - 1);
                let t = total_ph(&g, cap);
                for i in 0..=4 {
                    let expected = chi_p(i, &g).scale(fq.sign(i as u64));
                    assert_eq!(t.homogeneous_part(d + i * (q - 1)), expected);
                }
            }
        }
    }

    #[test]
    fn hit_space_examples() {
        let f2 = f(2);
        let f3 = f(3);
        assert_eq!(hit_space(3, 1, &f3).unwrap().subspace.dim(), 0);
        assert_eq!(hit_space(1, 2, &f2).unwrap().subspace.dim(), 1);
        assert_eq!(hit_space(2, 2, &f2).unwrap().subspace.dim(), 2);
        assert_eq!(quot_dim(3, 4, &f2).unwrap(), 8);
        assert_eq!(quot_dim(4, 4, &f2).unwrap(), 21);
        assert_eq!(quot_dim(2, 1, &f2).unwrap(), 2);
    }

    #[test]
    fn hit_dims_match_brute_force_span() {
        // All P^i applied to every polynomial (not just monomials) of small degree.
        let f2 = f(2);
        for d in 1..=5u32 {
            let mut vecs = Vec::new();
            for i in 1..=d {
                let src = degree_basis(2, d - i).unwrap();
                let len = src.len();
                for mask in 1..(1u32 << len) {
                    let v: Vec<FieldElem> =
                        (0..len).map(|j| FieldElem((mask >> j & 1) as u8)).collect();
                    let g = Polynomial::from_vector(&f2, 2, d - i, &v).unwrap();
                    let img = steenrod_p(i, &g);
                    if !img.is_zero() {
                        vecs.push(img.to_vector(d).unwrap());
                    }
                }
            }
            let s = Subspace::span(&f2, d as usize + 1, &vecs).unwrap();
            assert_eq!(s.dim(), hit_space(2, d, &f2).unwrap().subspace.dim());
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(7, 2), 3);
        assert_eq!(alpha(17, 3), 5);
        assert_eq!(alpha(0, 5), 0);
    }

    #[test]
    fn cartan_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for case in 0..200 {
            let q = if case % 2 == 0 { 2 } else { 3 };
            let fq = f(q);
            let n = rng.gen_range(1..=3);
            let a = random_homog(&fq, n, rng.gen_range(0..=4), &mut rng);
            let b = random_homog(&fq, n, rng.gen_range(0..=4), &mut rng);
            let k = rng.gen_range(0..=8);
            let lhs = steenrod_p(k, &a.mul(&b).unwrap());
            let mut rhs = Polynomial::zero(&fq, n);
            for i in 0..=k {
                rhs.add_assign(&steenrod_p(i, &a).mul(&steenrod_p(k - i, &b)).unwrap());
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn antipode_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for case in 0..200 {
            let q = if case % 2 == 0 { 2 } else { 3 };
            let fq = f(q);
            let n = rng.gen_range(1..=3);
            let g = random_homog(&fq, n, rng.gen_range(1..=4), &mut rng);
            let m = rng.gen_range(1..=6);
            let mut acc = Polynomial::zero(&fq, n);
            for i in 0..=m {
                acc.add_assign(&steenrod_p(i, &chi_p(m - i, &g)));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn unstable_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for q in [2, 3, 4] {
            let fq = f(q);
            for _ in 0..20 {
                let d = rng.gen_range(1..=4);
                let g = random_homog(&fq, 2, d, &mut rng);
                assert_eq!(steenrod_p(d, &g), g.pow(q as u64));
                assert!(steenrod_p(d + 1, &g).is_zero());
            }
        }
    }

    #[test]
    fn ph_vanishing_criterion() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for q in [2u32, 3] {
            let fq = f(q);
            for _ in 0..20 {
                let s = rng.gen_range(1..=3u32);
                let mut g = Polynomial::one(&fq, 2);
                for _ in 0..s {
                    let c: Vec<FieldElem> = vec![
                        fq.elements()[rng.gen_range(0..q as usize)],
                        fq.elements()[rng.gen_range(1..q as usize)],
                    ];
                    g = g.mul(&Polynomial::linear_form(&fq, &c)).unwrap();
                }
                for r in 0..=8u32 {
                    if alpha((r * (q - 1) + s) as u64, q as u64) > s as u64 {
                        assert!(chi_p(r, &g).is_zero(), "q={q} s={s} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn chi_trick() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for case in 0..200 {
            let q = if case % 2 == 0 { 2 } else { 3 };
            let fq = f(q);
            let a = random_homog(&fq, 2, rng.gen_range(0..=3), &mut rng);
            let b = random_homog(&fq, 2, rng.gen_range(0..=3), &mut rng);
            let k = if case < 10 { 0 } else { rng.gen_range(0..=3) };
            assert!(chi_trick_check(&a, &b, k).unwrap());
        }
    }
}
