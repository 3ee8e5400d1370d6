//! The mod 2 Steenrod algebra in the admissible basis, Brown–Gitler
//! dimensions and the Steinberg summand of R_{n,2}.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{resource, usage, Result};
use crate::field::{Field, FieldElem};
use crate::grouprep::{matrix_rank, steinberg_action_factored, steinberg_idempotent, summand_dims, Carrier};
use crate::linalg::{EchelonBuilder, MatrixGF, Row};
use crate::poly::{Monomial, Polynomial};
use crate::quotient_ring::{r_ring, QuotientRing};
use crate::steenrod_action::{binomial_mod_p, chi_p, steenrod_p};

pub const MAX_BG_DEGREE: u32 = 40;
pub const MAX_BG_K: u32 = 64;

/// Sq^{i_1}⋯Sq^{i_k} with i_j ≥ 2 i_{j+1} and every i_j ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdmissibleMonomial(Vec<u32>);

impl AdmissibleMonomial {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.contains(&0) || exps.windows(2).any(|w| w[0] < 2 * w[1]) {
            return Err(usage(format!("{exps:?} is not admissible")));
        }
        Ok(AdmissibleMonomial(exps))
    }

    pub fn one() -> Self {
        AdmissibleMonomial(Vec::new())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn excess(&self) -> u32 {
        match self.0.split_first() {
            None => 0,
            Some((a, rest)) => a - rest.iter().sum::<u32>(),
        }
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|e| format!("Sq^{e}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// An element of A as a set of admissible monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SteenrodElem2 {
    terms: BTreeSet<AdmissibleMonomial>,
}

impl SteenrodElem2 {
    pub fn zero() -> Self {
        SteenrodElem2::default()
    }

    pub fn one() -> Self {
        SteenrodElem2::from_monomial(AdmissibleMonomial::one())
    }

    pub fn sq(i: u32) -> Self {
        if i == 0 {
            SteenrodElem2::one()
        } else {
            SteenrodElem2::from_monomial(AdmissibleMonomial(vec![i]))
        }
    }

    pub fn from_monomial(m: AdmissibleMonomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        SteenrodElem2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &AdmissibleMonomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &AdmissibleMonomial) -> bool {
        self.terms.contains(m)
    }

    fn toggle(&mut self, m: AdmissibleMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &SteenrodElem2) -> SteenrodElem2 {
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(m.clone());
        }
        out
    }

    pub fn mul(&self, other: &SteenrodElem2) -> SteenrodElem2 {
        let mut out = SteenrodElem2::zero();
        for s in &self.terms {
            for t in &other.terms {
                for m in times_admissible(&s.0, t).terms {
                    out.toggle(m);
                }
            }
        }
        out
    }

    /// Action on a polynomial over F_2.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.field(), f.nvars());
        for m in &self.terms {
            let mut g = f.clone();
            for &e in m.0.iter().rev() {
                g = steenrod_p(e, &g);
            }
            out = out.add(&g).expect("same ring");
        }
        out
    }
}

impl fmt::Display for SteenrodElem2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type LeftMulKey = (u32, Vec<u32>);

static LEFT_MUL: Lazy<Mutex<HashMap<LeftMulKey, Arc<SteenrodElem2>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn binom2(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && binomial_mod_p(n as u64, k as u64, 2) == 1
}

/// Sq^i · m with m admissible.
fn left_mul(i: u32, m: &[u32]) -> Arc<SteenrodElem2> {
    let key = (i, m.to_vec());
    if let Some(v) = LEFT_MUL.lock().unwrap().get(&key) {
        return v.clone();
    }
    let mut out = SteenrodElem2::zero();
    if i == 0 {
        out.toggle(AdmissibleMonomial(m.to_vec()));
    } else if m.is_empty() || i >= 2 * m[0] {
        let mut v = vec![i];
        v.extend_from_slice(m);
        out.toggle(AdmissibleMonomial(v));
    } else {
        let b = m[0];
        for c in 0..=i / 2 {
            if !binom2(b as i64 - c as i64 - 1, i as i64 - 2 * c as i64) {
                continue;
            }
            for t in left_mul(c, &m[1..]).terms() {
                for u in left_mul(i + b - c, &t.0).terms() {
                    out.toggle(u.clone());
                }
            }
        }
    }
    let out = Arc::new(out);
    LEFT_MUL.lock().unwrap().insert(key, out.clone());
    out
}

fn times_admissible(word: &[u32], t: &AdmissibleMonomial) -> SteenrodElem2 {
    let mut acc = SteenrodElem2::from_monomial(t.clone());
    for &e in word.iter().rev() {
        let mut next = SteenrodElem2::zero();
        for m in acc.terms() {
            for u in left_mul(e, &m.0).terms() {
                next.toggle(u.clone());
            }
        }
        acc = next;
    }
    acc
}

/// Admissible expansion of Sq^{w_1}⋯Sq^{w_k}; zeros are dropped.
pub fn adem_normalize(word: &[u32]) -> SteenrodElem2 {
    times_admissible(word, &AdmissibleMonomial::one())
}

static CHI: Lazy<Mutex<HashMap<u32, Arc<SteenrodElem2>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// χ(Sq^n) from Σ_{i+j=n} Sq^i χ(Sq^j) = 0.
pub fn chi_sq(n: u32) -> Arc<SteenrodElem2> {
    if let Some(v) = CHI.lock().unwrap().get(&n) {
        return v.clone();
    }
    let out = if n == 0 {
        SteenrodElem2::one()
    } else {
        (1..=n).fold(SteenrodElem2::zero(), |acc, i| {
            acc.add(&SteenrodElem2::sq(i).mul(&chi_sq(n - i)))
        })
    };
    let out = Arc::new(out);
    CHI.lock().unwrap().insert(n, out.clone());
    out
}

static ADMISSIBLE: Lazy<Mutex<HashMap<u32, Arc<Vec<AdmissibleMonomial>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Admissible monomials of degree m, sorted.
pub fn admissible_basis(m: u32) -> Arc<Vec<AdmissibleMonomial>> {
    if let Some(v) = ADMISSIBLE.lock().unwrap().get(&m) {
        return v.clone();
    }
    fn rec(rem: u32, max_first: u32, cur: &mut Vec<u32>, out: &mut Vec<AdmissibleMonomial>) {
        if rem == 0 {
            out.push(AdmissibleMonomial(cur.clone()));
            return;
        }
        for a in 1..=rem.min(max_first) {
            cur.push(a);
            rec(rem - a, a / 2, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out.sort();
    let out = Arc::new(out);
    ADMISSIBLE.lock().unwrap().insert(m, out.clone());
    out
}

fn coordinates(x: &SteenrodElem2, basis: &[AdmissibleMonomial]) -> Row {
    basis
        .iter()
        .map(|b| if x.contains(b) { FieldElem::ONE } else { FieldElem::ZERO })
        .collect()
}

/// Degreewise dimensions of BG(k) = A / A⟨χ(Sq^i) : 2i > k⟩ up to `cap`.
pub fn bg_dims(k: u32, cap: u32) -> Result<Vec<usize>> {
    if cap > MAX_BG_DEGREE || k > MAX_BG_K {
        return Err(resource(format!(
            "Brown–Gitler dimensions are capped at degree {MAX_BG_DEGREE} and k ≤ {MAX_BG_K}"
        )));
    }
    let f2 = Field::builtin(2)?;
    (0..=cap)
        .into_par_iter()
        .map(|m| {
            let basis = admissible_basis(m);
            let mut b = EchelonBuilder::new(&f2, basis.len())?;
            for i in (k / 2 + 1)..=m {
                let chi = chi_sq(i);
                for a in admissible_basis(m - i).iter() {
                    let prod = SteenrodElem2::from_monomial(a.clone()).mul(&chi);
                    b.insert(coordinates(&prod, &basis))?;
                }
            }
            Ok(basis.len() - b.rank())
        })
        .collect()
}

/// #{(i_1..i_n) : 2^{n−1} ≥ i_1, i_j ≥ 2 i_{j+1}, i_n ≥ 0, Σ i_j = m}.
pub fn bg_power_count(n: u32, m: u32) -> usize {
    fn rec(left: u32, max: u32, rem: u32) -> usize {
        if left == 0 {
            return (rem == 0) as usize;
        }
        (0..=max.min(rem)).map(|a| rec(left - 1, a / 2, rem - a)).sum()
    }
    if n == 0 {
        return (m == 0) as usize;
    }
    rec(n, 1 << (n - 1), m)
}

/// BG(2^j)^m = BG(2^{j−1})^{m−2^{j−1}} + BG(2^j − 1)^m for m ≤ cap.
pub fn mahowald_check(j: u32, cap: u32) -> Result<bool> {
    if j == 0 {
        return Err(usage("j must be at least 1"));
    }
    let big = bg_dims(1 << j, cap)?;
    let half = bg_dims(1 << (j - 1), cap)?;
    let minus = bg_dims((1 << j) - 1, cap)?;
    let shift = 1usize << (j - 1);
    Ok((0..=cap as usize).all(|m| {
        let h = if m >= shift { half[m - shift] } else { 0 };
        big[m] == h + minus[m]
    }))
}

/// Tuples 2^n ≥ j_1 ≥ 2 j_2 ≥ ⋯ ≥ 2^{n−1} j_n > 0.
pub fn inoue_tuples(n: usize) -> Vec<Vec<u32>> {
    fn rec(left: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in 1..=max {
            if a < (1 << (left - 1)) {
                continue;
            }
            cur.push(a);
            rec(left - 1, a / 2, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1 << n, &mut Vec::new(), &mut out);
    out
}

fn check_inoue_tuple(n: usize, js: &[u32]) -> Result<()> {
    let ok = js.len() == n
        && n > 0
        && js[0] <= 1 << n
        && js.windows(2).all(|w| w[0] >= 2 * w[1])
        && js[n - 1] > 0;
    if ok {
        Ok(())
    } else {
        Err(usage(format!("{js:?} does not satisfy 2^n ≥ j_1 ≥ 2 j_2 ≥ … > 0")))
    }
}

fn gen_binom2(a: i64, k: u32) -> bool {
    if a >= 0 {
        binom2(a, k as i64)
    } else {
        binom2(k as i64 - a - 1, k as i64)
    }
}

fn sq_laurent(i: u32, mono: &[i64], out: &mut BTreeSet<Vec<i64>>) {
    fn rec(i: u32, v: usize, mono: &[i64], cur: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
        if v == mono.len() {
            if i == 0 && !out.remove(cur.as_slice()) {
                out.insert(cur.clone());
            }
            return;
        }
        let last = v + 1 == mono.len();
        for a in 0..=i {
            if last && a != i {
                continue;
            }
            if gen_binom2(mono[v], a) {
                cur.push(mono[v] + a as i64);
                rec(i - a, v + 1, mono, cur, out);
                cur.pop();
            }
        }
    }
    rec(i, 0, mono, &mut Vec::new(), out);
}

/// Sq^{j_1}⋯Sq^{j_n}(1/(x_1⋯x_n)), computed in the Laurent ring.
pub fn inoue_class(n: usize, js: &[u32]) -> Result<Polynomial> {
    check_inoue_tuple(n, js)?;
    let f2 = Field::builtin(2)?;
    let mut acc: BTreeSet<Vec<i64>> = BTreeSet::new();
    acc.insert(vec![-1; n]);
    for &j in js.iter().rev() {
        let mut next = BTreeSet::new();
        for m in &acc {
            sq_laurent(j, m, &mut next);
        }
        acc = next;
    }
    let mut out = Polynomial::zero(&f2, n);
    for m in acc {
        if m.iter().any(|&e| e < 0) {
            return Err(crate::error::domain(format!("class {js:?} has a negative exponent")));
        }
        let exps: Vec<u32> = m.iter().map(|&e| e as u32).collect();
        out = out.add(&Polynomial::monomial(&f2, Monomial::new(&exps)))?;
    }
    Ok(out)
}

/// Image in F_2[x]/(x_1^{2^n}, x_2^{2^{n−1}}, …, x_n^2).
pub fn truncate_to_box(f: &Polynomial) -> Polynomial {
    let n = f.nvars();
    let terms = f
        .terms()
        .filter(|(m, _)| m.exps().iter().enumerate().all(|(i, &e)| e < 1 << (n - i)))
        .map(|(m, c)| (m.clone(), c));
    Polynomial::from_terms(f.field(), n, terms).expect("same ring")
}

/// Whether the boxed Inoue class has leading term x_1^{j_1−1}⋯x_n^{j_n−1}.
pub fn inoue_leading_term_check(n: usize, js: &[u32]) -> Result<bool> {
    let cls = truncate_to_box(&inoue_class(n, js)?);
    let expected: Vec<u32> = js.iter().map(|j| j - 1).collect();
    Ok(cls.leading_term().map(|(m, _)| m.exps() == expected.as_slice()) == Some(true))
}

/// The generator α_j: the class of (2^n, …, 2^{j+1}, 2^{j−1}, …, 1).
pub fn inoue_generator(n: usize, j: usize) -> Result<Polynomial> {
    if j > n {
        return Err(usage("j must lie in 0..=n"));
    }
    let js: Vec<u32> = (0..=n as u32).rev().filter(|&e| e != j as u32).map(|e| 1 << e).collect();
    inoue_class(n, &js)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub top_degree: u32,
    /// Σ_j dim BG(2^j − 1) shifted by d − (2^j − 1).
    pub brown_gitler: Vec<usize>,
    /// Admissible-tuple count.
    pub tuple_count: Vec<usize>,
    /// Rank of st_n on R_{n,2}.
    pub summand: Vec<usize>,
    /// χ(Sq^i)(α_j) = 0 in R_{n,2} whenever 2i > 2^j − 1.
    pub relations_hold: bool,
    /// The Inoue classes are independent and fixed by st_n.
    pub inoue_basis: bool,
    pub pass: bool,
}

pub const MAX_DECOMPOSITION_N: usize = 4;

pub fn decomposition_check(n: usize) -> Result<DecompositionReport> {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    if n > MAX_DECOMPOSITION_N {
        return Err(resource(format!("the decomposition check is capped at n = {MAX_DECOMPOSITION_N}")));
    }
    let f2 = Field::builtin(2)?;
    let ring = r_ring(n, &f2, 2)?;
    let d = ring.top_degree();

    let mut brown_gitler = vec![0usize; d as usize + 1];
    for j in 0..=n as u32 {
        let k = (1u32 << j) - 1;
        let shift = d - k;
        let dims = bg_dims(k, d - shift)?;
        for (m, v) in dims.iter().enumerate() {
            brown_gitler[shift as usize + m] += v;
        }
    }

    let tuples = inoue_tuples(n);
    let mut tuple_count = vec![0usize; d as usize + 1];
    for t in &tuples {
        let deg = t.iter().sum::<u32>() as usize - n;
        tuple_count[deg] += 1;
    }

    let carriers: Vec<Carrier> = (0..=d).map(|m| ring.carrier(m)).collect::<Result<_>>()?;
    let matrices: Vec<MatrixGF> = if n <= 3 {
        let st = steinberg_idempotent(n, &f2)?;
        if !st.is_idempotent()? {
            return Err(crate::error::domain("st_n is not idempotent"));
        }
        carriers
            .iter()
            .map(|c| crate::grouprep::action_matrix(&st, c))
            .collect::<Result<_>>()?
    } else {
        carriers
            .par_iter()
            .map(|c| steinberg_action_factored(n, &f2, 0, c))
            .collect::<Result<_>>()?
    };
    for m in &matrices {
        if m.mul(m)? != *m {
            return Err(crate::error::domain("st_n does not act idempotently"));
        }
    }
    let summand: Vec<usize> = matrices.iter().map(matrix_rank).collect::<Result<_>>()?;
    debug_assert!(n > 3 || summand == summand_dims(&steinberg_idempotent(n, &f2)?, &carriers)?);

    let relations_hold = generator_relations(n, &ring)?;
    let inoue_basis = inoue_basis_check(&tuples, &carriers, &matrices)?;
    let pass = brown_gitler == tuple_count && tuple_count == summand && relations_hold && inoue_basis;
    Ok(DecompositionReport {
        n,
        top_degree: d,
        brown_gitler,
        tuple_count,
        summand,
        relations_hold,
        inoue_basis,
        pass,
    })
}

fn generator_relations(n: usize, ring: &QuotientRing) -> Result<bool> {
    let d = ring.top_degree();
    for j in 0..=n {
        let alpha = inoue_generator(n, j)?;
        let e = alpha.degree().unwrap_or(0);
        let k = (1u32 << j) - 1;
        for i in (k / 2 + 1)..=(d.saturating_sub(e)) {
            let img = chi_p(i, &alpha);
            if !ring.ideal().contains(&img)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn inoue_basis_check(tuples: &[Vec<u32>], carriers: &[Carrier], matrices: &[MatrixGF]) -> Result<bool> {
    let n = carriers[0].n();
    let f2 = Field::builtin(2)?;
    let mut by_degree: HashMap<usize, Vec<Row>> = HashMap::new();
    for t in tuples {
        let cls = inoue_class(n, t)?;
        let m = t.iter().sum::<u32>() as usize - n;
        let v = carriers[m].coords(&cls)?;
        let img: Row = (0..v.len())
            .map(|c| {
                (0..v.len()).fold(FieldElem::ZERO, |acc, r| f2.add(acc, f2.mul(v[r], matrices[m].get(r, c))))
            })
            .collect();
        if img != v {
            return Ok(false);
        }
        by_degree.entry(m).or_default().push(v);
    }
    for (m, rows) in by_degree {
        let mut b = EchelonBuilder::new(&f2, carriers[m].dim())?;
        for r in &rows {
            b.insert(r.clone())?;
        }
        if b.rank() != rows.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Serialize, Deserialize)]
struct MemoFile {
    left_mul: Vec<(u32, Vec<u32>, Vec<Vec<u32>>)>,
}

/// Writes the Adem memo table to `dir/adem.json`.
pub fn save_memo(dir: &Path) -> std::io::Result<()> {
    let table = LEFT_MUL.lock().unwrap();
    let mut left_mul: Vec<(u32, Vec<u32>, Vec<Vec<u32>>)> = table
        .iter()
        .map(|((i, m), v)| (*i, m.clone(), v.terms().map(|t| t.0.clone()).collect()))
        .collect();
    left_mul.sort();
    std::fs::create_dir_all(dir)?;
    let s = serde_json::to_string(&MemoFile { left_mul }).map_err(std::io::Error::other)?;
    std::fs::write(dir.join("adem.json"), s)
}

/// Loads `dir/adem.json` if present; returns the number of entries read.
pub fn load_memo(dir: &Path) -> std::io::Result<usize> {
    let path = dir.join("adem.json");
    if !path.exists() {
        return Ok(0);
    }
    let file: MemoFile = serde_json::from_str(&std::fs::read_to_string(path)?).map_err(std::io::Error::other)?;
    let mut table = LEFT_MUL.lock().unwrap();
    let count = file.left_mul.len();
    for (i, m, terms) in file.left_mul {
        let e = SteenrodElem2 {
            terms: terms.into_iter().map(AdmissibleMonomial).collect(),
        };
        table.insert((i, m), Arc::new(e));
    }
    Ok(count)
}
