//! Python bindings. Reports come back as JSON strings in the same schema the
//! command-line tool emits.

use hitkit::verify::{self as checks, Profile, Theorem, VerifyParams};
use hitkit::{quotient_ring, steenrod2, steenrod_action, Error, Field};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    match e {
        Error::Resource(m) => PyRuntimeError::new_err(format!("resource error: {m}")),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn field(q: u32) -> PyResult<Field> {
    Field::builtin(q).map_err(err)
}

fn parse(q: u32, n: usize, poly: &str) -> PyResult<hitkit::poly::Polynomial> {
    hitkit::poly::Polynomial::parse(&field(q)?, n, poly).map_err(err)
}

/// dim Quot^degree(F_q[x_1..x_n]).
#[pyfunction]
fn quot_dim(n: usize, degree: u32, q: u32) -> PyResult<usize> {
    steenrod_action::quot_dim(n, degree, &field(q)?).map_err(err)
}

/// Whether a homogeneous polynomial is in the image of the positive-degree
/// Steenrod operations.
#[pyfunction]
fn is_hit(q: u32, n: usize, poly: &str) -> PyResult<bool> {
    steenrod_action::is_hit(&parse(q, n, poly)?).map_err(err)
}

#[pyfunction]
fn steenrod_p(q: u32, n: usize, k: u32, poly: &str) -> PyResult<String> {
    Ok(steenrod_action::steenrod_p(k, &parse(q, n, poly)?).to_string())
}

#[pyfunction]
fn chi_p(q: u32, n: usize, k: u32, poly: &str) -> PyResult<String> {
    Ok(steenrod_action::chi_p(k, &parse(q, n, poly)?).to_string())
}

/// [dim R^0, ..., dim R^d] for R(V*, k).
#[pyfunction]
fn hilbert_series(n: usize, q: u32, k: u32) -> PyResult<Vec<usize>> {
    let r = quotient_ring::r_ring(n, &field(q)?, k).map_err(err)?;
    r.hilbert_series(r.top_degree()).map_err(err)
}

#[pyfunction]
fn cuspidal_dim(n: usize, q: u32) -> PyResult<usize> {
    quotient_ring::cuspidal_dim(n, &field(q)?).map_err(err)
}

/// Admissible expansion of Sq^{w_1}...Sq^{w_k}.
#[pyfunction]
fn adem_normalize(word: Vec<u32>) -> String {
    steenrod2::adem_normalize(&word).to_string()
}

#[pyfunction]
fn bg_dims(k: u32, cap: u32) -> PyResult<Vec<usize>> {
    steenrod2::bg_dims(k, cap).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (theorem, q=None, n=None, k=None, s=None, r=None, m=None, y=None, cases=None))]
#[allow(clippy::too_many_arguments)]
fn verify(
    theorem: &str,
    q: Option<u32>,
    n: Option<usize>,
    k: Option<u32>,
    s: Option<u32>,
    r: Option<u32>,
    m: Option<u32>,
    y: Option<Vec<u32>>,
    cases: Option<usize>,
) -> PyResult<String> {
    let t: Theorem = theorem.parse().map_err(err)?;
    let p = VerifyParams {
        q,
        n,
        k,
        s,
        r,
        m,
        y,
        cases,
    };
    Ok(checks::run_theorem(t, &p).map_err(err)?.to_json())
}

#[pyfunction]
fn suite(profile: &str) -> PyResult<String> {
    let p: Profile = profile.parse().map_err(err)?;
    Ok(checks::suite(p).map_err(err)?.to_json())
}

#[pymodule]
fn pyhitkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(quot_dim, m)?)?;
    m.add_function(wrap_pyfunction!(is_hit, m)?)?;
    m.add_function(wrap_pyfunction!(steenrod_p, m)?)?;
    m.add_function(wrap_pyfunction!(chi_p, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_series, m)?)?;
    m.add_function(wrap_pyfunction!(cuspidal_dim, m)?)?;
    m.add_function(wrap_pyfunction!(adem_normalize, m)?)?;
    m.add_function(wrap_pyfunction!(bg_dims, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(suite, m)?)?;
    m.add("SCHEMA_VERSION", checks::SCHEMA_VERSION)?;
    Ok(())
}
