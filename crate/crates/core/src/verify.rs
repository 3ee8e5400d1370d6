//! Verification reports and the per-result batteries behind `hitkit verify`
//! and `hitkit suite`.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{usage, Error, Result};
use crate::field::Field;
use crate::grouprep::{steinberg_idempotent, twisted_idempotent};
use crate::invariants::{dickson_q, dickson_q_chi, verify_lemma_vn, LineSet};
use crate::linalg::Row;
use crate::poly::{degree_basis, Polynomial};
use crate::quotient_ring::{
    affine_embedding_check, affine_ring, embedding_kernel_check, ideal_rel_check, is_qs_r, r_ring, spike_check,
    top_degree_r, top_indecomposable_check, top_spanning_check,
};
use crate::simplicial::{build_affine_k, build_delta, check_matroid_exchange, f_vector};
use crate::steenrod2::{bg_dims, bg_power_count, decomposition_check, inoue_leading_term_check, inoue_tuples, mahowald_check};
use crate::steenrod_action::{chi_trick_check, quot_dim};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            command: command.into(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            tables: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.params.insert(key.to_string(), json!(value));
    }

    pub fn check(&mut self, name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) {
        let expected = json!(expected);
        let actual = json!(actual);
        let pass = expected == actual;
        self.checks.push(Check {
            name: name.into(),
            expected,
            actual,
            pass,
        });
    }

    pub fn table(&mut self, title: impl Into<String>, columns: &[&str], rows: Vec<Vec<Value>>) {
        self.tables.push(Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Appends another report's checks and tables under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
        for mut t in other.tables {
            t.title = format!("{prefix}: {}", t.title);
            self.tables.push(t);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| usage(format!("malformed report: {e}")))
    }
}

/// Runs `f` and stamps the wall-clock time on its report.
pub fn timed(f: impl FnOnce() -> Result<VerificationReport>) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    Main1,
    Cuspidal,
    Decomposition,
    LemmaVn,
    IdealRel,
    Dickson,
    Matroid,
    Hvector,
    ChiTrick,
    Spike,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::Main1,
        Theorem::Cuspidal,
        Theorem::Decomposition,
        Theorem::LemmaVn,
        Theorem::IdealRel,
        Theorem::Dickson,
        Theorem::Matroid,
        Theorem::Hvector,
        Theorem::ChiTrick,
        Theorem::Spike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Main1 => "main1",
            Theorem::Cuspidal => "cuspidal",
            Theorem::Decomposition => "decomposition",
            Theorem::LemmaVn => "lemma-vn",
            Theorem::IdealRel => "ideal-rel",
            Theorem::Dickson => "dickson",
            Theorem::Matroid => "matroid",
            Theorem::Hvector => "hvector",
            Theorem::ChiTrick => "chi-trick",
            Theorem::Spike => "spike",
        }
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| usage(format!("unknown theorem '{s}'")))
    }
}

/// Parameters shared by the verify targets; unset values take per-target
/// defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyParams {
    pub q: Option<u32>,
    pub n: Option<usize>,
    pub k: Option<u32>,
    pub s: Option<u32>,
    pub r: Option<u32>,
    pub m: Option<u32>,
    pub y: Option<Vec<u32>>,
    pub cases: Option<usize>,
}

fn field(q: u32) -> Result<Field> {
    Field::builtin(q)
}

fn elems(field: &Field, y: &[u32]) -> Result<Row> {
    let s = field.spec().s() as usize;
    y.iter()
        .map(|&c| {
            if c >= field.q() {
                return Err(usage(format!("coordinate {c} is not below q = {}", field.q())));
            }
            let digits: Vec<u32> = (0..s).map(|i| c / field.p().pow(i as u32) % field.p()).collect();
            field.from_coeffs(&digits)
        })
        .collect()
}

pub fn run_theorem(t: Theorem, p: &VerifyParams) -> Result<VerificationReport> {
    match t {
        Theorem::Main1 => main1(p.n.unwrap_or(2), p.q.unwrap_or(2), p.k.unwrap_or(1)),
        Theorem::Cuspidal => cuspidal(p.n.unwrap_or(3), p.q.unwrap_or(2)),
        Theorem::Decomposition => decomposition(p.n.unwrap_or(2)),
        Theorem::LemmaVn => lemma_vn(p.q.unwrap_or(2), p.s.unwrap_or(0), p.r.unwrap_or(1), p.n.unwrap_or(2)),
        Theorem::IdealRel => ideal_rel(p.n.unwrap_or(2), p.q.unwrap_or(2), p.k.unwrap_or(1), p.y.as_deref()),
        Theorem::Dickson => dickson(p.q.unwrap_or(2), p.m.unwrap_or(2)),
        Theorem::Matroid => matroid(p.n.unwrap_or(2), p.q.unwrap_or(2), p.k.unwrap_or(1)),
        Theorem::Hvector => hvector(p.n.unwrap_or(2), p.q.unwrap_or(2), p.k.unwrap_or(1)),
        Theorem::ChiTrick => chi_trick(p.q.unwrap_or(2), p.n.unwrap_or(2), p.cases.unwrap_or(300)),
        Theorem::Spike => spike(p.q.unwrap_or(2), p.m.unwrap_or(1), p.r.unwrap_or(1)),
    }
}

/// dim Quot^m(Sym) for m in the range.
pub fn quot_table(n: usize, q: u32, from: u32, to: u32) -> Result<VerificationReport> {
    if from > to {
        return Err(usage("--deg-from exceeds --deg-to"));
    }
    let fq = field(q)?;
    let mut r = VerificationReport::new("quot");
    r.param("n", n);
    r.param("q", q);
    r.param("deg_from", from);
    r.param("deg_to", to);
    let rows = (from..=to)
        .map(|m| Ok(vec![json!(m), json!(quot_dim(n, m, &fq)?)]))
        .collect::<Result<_>>()?;
    r.table("dim Quot^m(Sym)", &["degree", "dim"], rows);
    Ok(r)
}

pub fn main1(n: usize, q: u32, k: u32) -> Result<VerificationReport> {
    let fq = field(q)?;
    let ring = r_ring(n, &fq, k)?;
    let d = ring.top_degree();
    let mut r = VerificationReport::new("verify main1");
    r.param("n", n);
    r.param("q", q);
    r.param("k", k);
    let steinberg = q.pow((n * (n - 1) / 2) as u32) as usize;
    r.check("dim R^d", steinberg, ring.dim(d)?);
    r.check("dim R^(d+1)", 0, ring.dim(d + 1)?);
    let mut rows = Vec::new();
    let mut agree = true;
    let qs = is_qs_r(k, q);
    for m in 0..=d {
        let sym = quot_dim(n, m, &fq)?;
        let rq = ring.quot_dim(m)?;
        agree &= sym == rq;
        rows.push(vec![json!(m), json!(ring.dim(m)?), json!(sym), json!(rq)]);
    }
    if qs {
        r.check("Quot(Sym) = Quot(R) in degrees 0..=d", true, agree);
        r.check("top degree is P-indecomposable", true, top_indecomposable_check(&ring)?);
    }
    r.check("frame products span R^d", true, top_spanning_check(n, &fq, k)?);
    r.table("degreewise dimensions", &["degree", "dim R", "dim Quot Sym", "dim Quot R"], rows);
    Ok(r)
}

pub fn cuspidal(n: usize, q: u32) -> Result<VerificationReport> {
    let fq = field(q)?;
    let mut r = VerificationReport::new("verify cuspidal");
    r.param("n", n);
    r.param("q", q);
    if n < 2 {
        return Err(usage("n must be at least 2"));
    }
    let expected: u64 = (1..n as u32).map(|i| q.pow(i) as u64 - 1).product();
    let top = q.pow(n as u32 - 1) - n as u32;
    r.param("degree", top);
    r.check("dim Quot", expected, quot_dim(n, top, &fq)?);
    r.check("dim top of affine quotient", expected, affine_ring(n, &fq)?.dim(top)?);
    if q.pow(n as u32) <= 27 {
        r.check("affine quotient embeds through the points", true, affine_embedding_check(n, &fq)?);
    }
    Ok(r)
}

pub fn decomposition(n: usize) -> Result<VerificationReport> {
    let rep = decomposition_check(n)?;
    let mut r = VerificationReport::new("verify decomposition");
    r.param("n", n);
    r.check("Brown-Gitler side = tuple count", &rep.tuple_count, &rep.brown_gitler);
    r.check("Steinberg summand = tuple count", &rep.tuple_count, &rep.summand);
    r.check("generators annihilated by χ(Sq^i), 2i > 2^j - 1", true, rep.relations_hold);
    r.check("Inoue classes independent and st_n-fixed", true, rep.inoue_basis);
    let leading = inoue_tuples(n)
        .iter()
        .map(|t| inoue_leading_term_check(n, t))
        .collect::<Result<Vec<bool>>>()?;
    r.check("Inoue leading terms", true, leading.iter().all(|&b| b));
    let rows = (0..=rep.top_degree as usize)
        .map(|m| {
            vec![
                json!(m),
                json!(rep.brown_gitler[m]),
                json!(rep.tuple_count[m]),
                json!(rep.summand[m]),
            ]
        })
        .collect();
    r.table("dimensions of R_{n,2}·st_n", &["degree", "brown-gitler", "tuples", "summand"], rows);
    Ok(r)
}

pub fn lemma_vn(q: u32, s: u32, rr: u32, n: usize) -> Result<VerificationReport> {
    let fq = field(q)?;
    let mut r = VerificationReport::new("verify lemma-vn");
    r.param("q", q);
    r.param("s", s);
    r.param("r", rr);
    r.param("n", n);
    r.check("identity holds", true, verify_lemma_vn(&fq, s, rr as usize, n)?);
    Ok(r)
}

pub fn ideal_rel(n: usize, q: u32, k: u32, y: Option<&[u32]>) -> Result<VerificationReport> {
    let fq = field(q)?;
    let mut r = VerificationReport::new("verify ideal-rel");
    r.param("n", n);
    r.param("q", q);
    r.param("k", k);
    if !is_qs_r(k, q) {
        return Err(usage("k must have the form q^s·r with 1 ≤ r ≤ q − 1"));
    }
    let ys: Vec<Row> = match y {
        Some(y) => {
            if y.len() != n {
                return Err(usage(format!("--y needs {n} coordinates")));
            }
            r.param("y", y);
            vec![elems(&fq, y)?]
        }
        None => LineSet::all(&fq, n).reps().to_vec(),
    };
    for y in &ys {
        let label: Vec<String> = y.iter().map(|c| fq.format(*c)).collect();
        r.check(format!("y = ({})", label.join(",")), true, ideal_rel_check(n, &fq, k, y)?);
    }
    r.check("kernel of the embedding", true, embedding_kernel_check(n, &fq, k)?);
    Ok(r)
}

pub fn dickson(q: u32, m: u32) -> Result<VerificationReport> {
    let fq = field(q)?;
    let m = m as usize;
    let mut r = VerificationReport::new("verify dickson");
    r.param("q", q);
    r.param("m", m);
    for j in 0..=m {
        let def = dickson_q(m, j, &fq)?;
        r.check(format!("Q_{{{m},{j}}} full sum"), true, def == dickson_q_chi(m, j, 0, &fq)?);
        r.check(format!("Q_{{{m},{j}}} tail sum"), true, def == dickson_q_chi(m, j, m - j, &fq)?);
    }
    Ok(r)
}

pub fn matroid(n: usize, q: u32, k: u32) -> Result<VerificationReport> {
    let fq = field(q)?;
    let mut r = VerificationReport::new("verify matroid");
    r.param("n", n);
    r.param("q", q);
    r.param("k", k);
    r.check("Δ(V*,k) exchange property", true, check_matroid_exchange(&build_delta(n, &fq, k as usize)?)?);
    if n >= 2 {
        r.check("K exchange property", true, check_matroid_exchange(&build_affine_k(n, &fq)?)?);
    }
    Ok(r)
}

pub fn hvector(n: usize, q: u32, k: u32) -> Result<VerificationReport> {
    let fq = field(q)?;
    let mut r = VerificationReport::new("verify hvector");
    r.param("n", n);
    r.param("q", q);
    r.param("k", k);
    let fh = f_vector(&build_delta(n, &fq, k as usize)?)?;
    let d = top_degree_r(n, q, k) as usize;
    r.check("h_d", q.pow((n * (n - 1) / 2) as u32) as i128, fh.h.get(d).copied().unwrap_or(0));
    let ring = r_ring(n, &fq, k)?;
    let hs: Vec<i128> = ring.hilbert_series(d as u32)?.into_iter().map(|x| x as i128).collect();
    r.check("Hilbert series of R(V*,k)", &fh.h, &hs);
    let rows = (0..fh.h.len())
        .map(|i| vec![json!(i), json!(fh.f.get(i)), json!(fh.h[i])])
        .collect();
    r.table("f- and h-vectors", &["i", "f_i", "h_i"], rows);
    Ok(r)
}

/// χ-trick on every pair of monomials in low degrees, up to `cases` pairs.
pub fn chi_trick(q: u32, n: usize, cases: usize) -> Result<VerificationReport> {
    let fq = field(q)?;
    let mut r = VerificationReport::new("verify chi-trick");
    r.param("q", q);
    r.param("n", n);
    r.param("cases", cases);
    let monos: Vec<Polynomial> = (0..=3)
        .map(|d| degree_basis(n, d))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .flat_map(|b| b.monomials().iter().map(|m| Polynomial::monomial(&fq, m.clone())).collect::<Vec<_>>())
        .collect();
    let mut done = 0;
    let mut ok = true;
    'outer: for k in 1..=3 {
        for f in &monos {
            for g in &monos {
                if done == cases {
                    break 'outer;
                }
                ok &= chi_trick_check(f, g, k)?;
                done += 1;
            }
        }
    }
    r.check("cases checked", cases.min(done), done);
    r.check("P^k(f)g - fχ(P^k)(g) is hit", true, ok);
    Ok(r)
}

pub fn spike(q: u32, m: u32, rr: u32) -> Result<VerificationReport> {
    let fq = field(q)?;
    let mut r = VerificationReport::new("verify spike");
    r.param("q", q);
    r.param("m", m);
    r.param("r", rr);
    r.check("spike is indecomposable", true, spike_check(&fq, m, rr)?);
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Fast,
    Full,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Profile::Fast),
            "full" => Ok(Profile::Full),
            _ => Err(usage(format!("unknown profile '{s}'"))),
        }
    }
}

pub const SIX_TUPLES: [(usize, u32, u32); 6] = [(2, 2, 1), (2, 2, 2), (3, 2, 1), (3, 2, 2), (2, 3, 1), (2, 3, 2)];

/// The full battery; `Fast` leaves out the GL_4(F_2) sweep.
pub fn suite(profile: Profile) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("suite");
    r.param("profile", if profile == Profile::Fast { "fast" } else { "full" });

    let f2 = field(2)?;
    let f3 = field(3)?;
    let mut walker_wood = VerificationReport::new("");
    for (n, d, e) in [(2, 1, 2), (3, 4, 8), (4, 11, 64)] {
        walker_wood.check(format!("n={n} degree {d}"), e, quot_dim(n, d, &f2)?);
    }
    r.absorb("Steinberg quotient, q=2", walker_wood);

    let mut odd = VerificationReport::new("");
    for (n, k, e) in [(2usize, 1u32, 3usize), (2, 2, 3), (3, 1, 27)] {
        let d = top_degree_r(n, 3, k);
        odd.check(format!("n={n} k={k} degree {d}"), e, quot_dim(n, d, &f3)?);
    }
    r.absorb("Steinberg quotient, q=3", odd);

    let mut tuples = SIX_TUPLES.to_vec();
    if profile == Profile::Full {
        tuples.push((4, 2, 1));
    }
    for (n, q, k) in tuples {
        r.absorb(&format!("R(V*,k) n={n} q={q} k={k}"), main1(n, q, k)?);
        r.absorb(&format!("h-vector n={n} q={q} k={k}"), hvector(n, q, k)?);
    }

    for (n, q) in [(3usize, 2u32), (4, 2), (3, 3)] {
        r.absorb(&format!("cuspidal n={n} q={q}"), cuspidal(n, q)?);
    }

    for (n, q, k) in [(2usize, 2u32, 1u32), (2, 2, 2), (3, 2, 1), (2, 3, 1)] {
        r.absorb(&format!("matroid n={n} q={q} k={k}"), matroid(n, q, k)?);
        r.absorb(&format!("ideal relation n={n} q={q} k={k}"), ideal_rel(n, q, k, None)?);
    }

    for (q, s, rr, n) in [(2, 0, 1, 2), (2, 0, 1, 3), (2, 1, 1, 2), (2, 1, 1, 3), (3, 0, 1, 2), (3, 0, 2, 2), (3, 1, 1, 2)] {
        r.absorb(&format!("Mui product q={q} s={s} r={rr} n={n}"), lemma_vn(q, s, rr, n)?);
    }

    for q in [2, 3] {
        for m in [2, 3] {
            r.absorb(&format!("Dickson q={q} m={m}"), dickson(q, m)?);
        }
    }

    for (q, m, rr) in [(2, 1, 1), (2, 3, 1), (3, 2, 2)] {
        r.absorb(&format!("spike q={q} m={m} r={rr}"), spike(q, m, rr)?);
    }

    let ns: &[usize] = if profile == Profile::Full { &[1, 2, 3, 4] } else { &[1, 2, 3] };
    for &n in ns {
        r.absorb(&format!("decomposition n={n}"), decomposition(n)?);
    }

    let mut bg = VerificationReport::new("");
    for j in 1..=3 {
        bg.check(format!("Mahowald j={j}"), true, mahowald_check(j, 12)?);
    }
    for n in 1..=3u32 {
        let dims = bg_dims(1 << n, 12)?;
        let counts: Vec<usize> = (0..=12).map(|m| bg_power_count(n, m)).collect();
        bg.check(format!("BG({}) basis count", 1 << n), counts, dims);
    }
    r.absorb("Brown-Gitler", bg);

    let mut props = VerificationReport::new("");
    for q in [2, 3] {
        props.absorb(&format!("q={q}"), chi_trick(q, 2, 300)?);
    }
    for (n, q) in [(2usize, 2u32), (3, 2), (2, 3)] {
        let fq = field(q)?;
        props.check(format!("st_{n} idempotent, q={q}"), true, steinberg_idempotent(n, &fq)?.is_idempotent()?);
        for i in 1..q - 1 {
            props.check(
                format!("twisted st_{n}^({i}) idempotent, q={q}"),
                true,
                twisted_idempotent(n, &fq, i)?.is_idempotent()?,
            );
        }
    }
    r.absorb("properties", props);
    Ok(r)
}

/// One row per check, for quick terminal output.
pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    if !r.params.is_empty() {
        let ps: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("{} ({})\n", r.command, ps.join(", ")));
    } else {
        out.push_str(&format!("{}\n", r.command));
    }
    for t in &r.tables {
        out.push_str(&format!("\n{}\n", t.title));
        let cells: Vec<Vec<String>> = std::iter::once(t.columns.clone())
            .chain(t.rows.iter().map(|row| row.iter().map(plain).collect()))
            .collect();
        let widths: Vec<usize> = (0..t.columns.len())
            .map(|c| cells.iter().map(|row| row.get(c).map_or(0, |s| s.chars().count())).max().unwrap_or(0))
            .collect();
        for row in cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}", w = *w))
                .collect();
            out.push_str(&format!("  {}\n", line.join("  ")));
        }
    }
    if !r.checks.is_empty() {
        out.push('\n');
    }
    for c in &r.checks {
        let tag = if c.pass { "ok  " } else { "FAIL" };
        if c.pass {
            out.push_str(&format!("{tag} {} = {}\n", c.name, plain(&c.actual)));
        } else {
            out.push_str(&format!(
                "{tag} {}: expected {}, got {}\n",
                c.name,
                plain(&c.expected),
                plain(&c.actual)
            ));
        }
    }
    let failed = r.checks.iter().filter(|c| !c.pass).count();
    out.push_str(&format!("\n{} checks, {} failed\n", r.checks.len(), failed));
    out
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = main1(2, 2, 1).unwrap();
        assert!(r.passed());
        let back = VerificationReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"schema\": 1"));
    }

    #[test]
    fn theorem_names() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
        assert!(matches!("nope".parse::<Theorem>(), Err(Error::Usage(_))));
        assert!(matches!("medium".parse::<Profile>(), Err(Error::Usage(_))));
    }

    #[test]
    fn quot_rows() {
        let r = quot_table(3, 2, 0, 4).unwrap();
        assert_eq!(r.tables[0].rows.last().unwrap(), &vec![json!(4), json!(8)]);
        let r = quot_table(2, 3, 2, 2).unwrap();
        assert_eq!(r.tables[0].rows[0], vec![json!(2), json!(3)]);
    }

    #[test]
    fn targets_pass() {
        let p = VerifyParams::default();
        for t in Theorem::ALL {
            let r = run_theorem(t, &p).unwrap();
            assert!(r.passed(), "{}: {}", t.name(), render_text(&r));
        }
        let r = cuspidal(4, 2).unwrap();
        assert_eq!(r.checks[0].actual, json!(21));
        let r = decomposition(2).unwrap();
        let summand: Vec<Value> = r.tables[0].rows.iter().map(|row| row[3].clone()).collect();
        assert_eq!(summand, vec![json!(0), json!(1), json!(1), json!(1), json!(1)]);
    }

    #[test]
    fn failing_check_is_reported() {
        let mut r = VerificationReport::new("x");
        r.check("a", 1, 2);
        assert!(!r.passed());
        assert!(render_text(&r).contains("FAIL a: expected 1, got 2"));
    }
}
