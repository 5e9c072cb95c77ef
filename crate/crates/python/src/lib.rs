//! Python bindings: `import detfglm`.
//!
//! Exact integers cross as Python `int`; structured reports cross as `dict`
//! (via their JSON form, so field names match the command-line output).

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use detfglm_core::gb::{run_many, Mode, PrimeField, VerifyConfig, DEFAULT_PRIME};
use detfglm_core::hilbert as hs;
use detfglm_core::HilbertProfile;
use detfglm_core::report::{figure_report, hilbert_report, table_report, ReferenceValues};
use detfglm_core::series::IntPoly;
use detfglm_core::{predictor, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidArgument(_) | Error::DegreeGuard { .. } => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn to_py_json<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Parameters `(d, p, n)`: `p` polynomials of degree `d` in `n` variables
/// together with the maximal minors of a `p x (n-1)` matrix.
#[pyclass(frozen, eq, hash, from_py_object, name = "SystemParams")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PySystemParams {
    inner: hs::SystemParams,
}

#[pymethods]
impl PySystemParams {
    #[new]
    fn new(d: u32, p: u32, n: u32) -> PyResult<Self> {
        Ok(PySystemParams { inner: hs::SystemParams::new(d, p, n).map_err(py_err)? })
    }

    #[getter]
    fn d(&self) -> u32 {
        self.inner.d
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }

    fn delta(&self) -> usize {
        self.inner.delta()
    }

    fn ideal_degree(&self) -> BigInt {
        self.inner.ideal_degree()
    }

    fn hilbert_series(&self) -> Vec<BigInt> {
        hs::hilbert_binomial(&self.inner).into_coeffs()
    }

    fn __repr__(&self) -> String {
        format!("SystemParams(d={}, p={}, n={})", self.inner.d, self.inner.p, self.inner.n)
    }
}

fn params(d: u32, p: u32, n: u32) -> PyResult<hs::SystemParams> {
    hs::SystemParams::new(d, p, n).map_err(py_err)
}

fn profile(d: u32, p: u32, n: u32) -> PyResult<HilbertProfile> {
    Ok(HilbertProfile::new(params(d, p, n)?))
}

/// Coefficients of the Hilbert series, from the binomial-sum form.
#[pyfunction]
fn hilbert_series(d: u32, p: u32, n: u32) -> PyResult<Vec<BigInt>> {
    Ok(hs::hilbert_binomial(&params(d, p, n)?).into_coeffs())
}

/// Coefficients of the Hilbert series, from the determinant form.
#[pyfunction]
fn hilbert_determinant(d: u32, p: u32, n: u32) -> PyResult<Vec<BigInt>> {
    Ok(hs::hilbert_determinant(&params(d, p, n)?).map_err(py_err)?.into_coeffs())
}

/// Summary dict: coefficients, D, m, sigma, delta, peak, identity check.
#[pyfunction]
fn hilbert<'py>(py: Python<'py>, d: u32, p: u32, n: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py_json(py, &hilbert_report(&params(d, p, n)?).map_err(py_err)?)
}

#[pyfunction]
fn ideal_degree(d: u32, p: u32, n: u32) -> PyResult<BigInt> {
    Ok(predictor::ideal_degree(&params(d, p, n)?))
}

#[pyfunction]
fn m_exact(d: u32, p: u32, n: u32) -> PyResult<BigInt> {
    Ok(predictor::m_exact(&params(d, p, n)?))
}

/// Closed form for `m`, defined for `d = 2`.
#[pyfunction]
fn m_closed_d2(p: u32, n: u32) -> PyResult<BigInt> {
    predictor::m_closed_d2(&params(2, p, n)?).map_err(py_err)
}

/// `(real, ceiling)` asymptotic estimate of `m`, defined for `d >= 3`.
#[pyfunction]
fn m_asymptotic(d: u32, p: u32, n: u32) -> PyResult<(f64, BigInt)> {
    let a = predictor::m_asymptotic(&params(d, p, n)?).map_err(py_err)?;
    Ok((a.real, a.ceiling))
}

/// Estimate of the central coefficient of `(1 + t + ... + t^(q-1))^s`.
#[pyfunction]
fn central_coeff_asymptotic(q: u32, s: u32) -> PyResult<f64> {
    predictor::central_coeff_asymptotic(q, s).map_err(py_err)
}

#[pyfunction]
fn hq(d: u32, p: u32, n: u32, e: usize) -> PyResult<Vec<BigInt>> {
    Ok(profile(d, p, n)?.hq(e).map_err(py_err)?.into_coeffs())
}

#[pyfunction]
fn section(d: u32, p: u32, n: u32, e: usize) -> PyResult<Vec<BigInt>> {
    Ok(profile(d, p, n)?.section(e).map_err(py_err)?.into_coeffs())
}

#[pyfunction]
fn section_drop(d: u32, p: u32, n: u32, e: usize) -> PyResult<Vec<BigInt>> {
    Ok(profile(d, p, n)?.section_drop(e).map_err(py_err)?.into_coeffs())
}

/// Index of the first peak if the coefficients are unimodal, else `None`.
#[pyfunction]
fn is_unimodal(coeffs: Vec<BigInt>) -> Option<usize> {
    hs::is_unimodal(&IntPoly::from_coeffs(coeffs))
}

/// Every predicted quantity as a dict.
#[pyfunction]
fn predict<'py>(py: Python<'py>, d: u32, p: u32, n: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py_json(py, &predictor::cost_model(&params(d, p, n)?))
}

/// Density table rows with reference values and deviations.
#[pyfunction]
fn table(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py_json(py, &table_report(&ReferenceValues::embedded()).map_err(py_err)?)
}

/// Per-n records for `n` in `lo..=hi`.
#[pyfunction]
fn figure(py: Python<'_>, d: u32, p: u32, lo: u32, hi: u32) -> PyResult<Bound<'_, PyAny>> {
    to_py_json(py, &figure_report(d, p, lo..=hi, &ReferenceValues::embedded()).map_err(py_err)?)
}

/// Gröbner-basis verification of random instances, one dict per seed.
#[pyfunction]
#[pyo3(signature = (d, p, n, seeds, prime = DEFAULT_PRIME as u64, mode = "generic", extend = false, max_degree_guard = 1000))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    d: u32,
    p: u32,
    n: u32,
    seeds: Vec<u64>,
    prime: u64,
    mode: &str,
    extend: bool,
    max_degree_guard: usize,
) -> PyResult<Bound<'py, PyAny>> {
    if seeds.is_empty() {
        return Err(PyValueError::new_err("at least one seed is required"));
    }
    let config = VerifyConfig {
        params: params(d, p, n)?,
        seed: 0,
        mode: mode.parse::<Mode>().map_err(py_err)?,
        field: PrimeField::new(prime).map_err(py_err)?,
        extend,
        degree_guard: max_degree_guard,
    };
    let reports = py.detach(|| run_many(&config, &seeds)).map_err(py_err)?;
    to_py_json(py, &reports)
}

#[pymodule]
fn detfglm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystemParams>()?;
    m.add_function(wrap_pyfunction!(hilbert_series, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_determinant, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_degree, m)?)?;
    m.add_function(wrap_pyfunction!(m_exact, m)?)?;
    m.add_function(wrap_pyfunction!(m_closed_d2, m)?)?;
    m.add_function(wrap_pyfunction!(m_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(central_coeff_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(hq, m)?)?;
    m.add_function(wrap_pyfunction!(section, m)?)?;
    m.add_function(wrap_pyfunction!(section_drop, m)?)?;
    m.add_function(wrap_pyfunction!(is_unimodal, m)?)?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(figure, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
