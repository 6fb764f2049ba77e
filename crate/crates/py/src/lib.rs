//! Python bindings: fields, linearized polynomials, Gabidulin and twisted
//! Gabidulin codecs, the rank-error channel and the enumeration oracles.
//! Field elements cross the boundary in their text form (comma-separated
//! base-q digits), matching the CLI file formats.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rankdec::gabidulin::{CodeError, CodeParams};
use rankdec::gf::{parse_field_spec, FieldCtx};
use rankdec::harness;
use rankdec::linpoly::LinPoly;
use rankdec::twisted::TwistedParams;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// GF(q^n)/GF(q) described by a prime q, degree n and a monic irreducible
/// modulus polynomial.
#[pyclass(name = "Field")]
#[derive(Clone)]
struct PyField {
    ctx: FieldCtx,
}

#[pymethods]
impl PyField {
    /// Field(q, n, modulus=None): with no modulus the built-in table for
    /// q in {2, 3, 5}, n in 2..=12 is used.
    #[new]
    #[pyo3(signature = (q, n, modulus=None))]
    fn new(q: u32, n: usize, modulus: Option<Vec<u32>>) -> PyResult<Self> {
        let ctx = match modulus {
            Some(m) => FieldCtx::new(q, n, m).map_err(value_err)?,
            None => FieldCtx::standard(q, n).map_err(value_err)?,
        };
        Ok(PyField { ctx })
    }

    /// Parse a spec line `q=.. n=.. mod=..`.
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Self> {
        Ok(PyField {
            ctx: parse_field_spec(spec).map_err(value_err)?,
        })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.ctx.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.ctx.degree()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.ctx.modulus().to_vec()
    }

    fn size(&self) -> Option<u128> {
        self.ctx.size()
    }

    fn add(&self, a: &str, b: &str) -> PyResult<String> {
        let (x, y) = self.pair(a, b)?;
        Ok(self.ctx.add(&x, &y).to_string())
    }

    fn sub(&self, a: &str, b: &str) -> PyResult<String> {
        let (x, y) = self.pair(a, b)?;
        Ok(self.ctx.sub(&x, &y).to_string())
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        let (x, y) = self.pair(a, b)?;
        Ok(self.ctx.mul(&x, &y).to_string())
    }

    fn inv(&self, a: &str) -> PyResult<String> {
        let x = self.ctx.parse_fe(a).map_err(value_err)?;
        Ok(self.ctx.inv(&x).map_err(value_err)?.to_string())
    }

    fn frobenius(&self, a: &str, i: i64) -> PyResult<String> {
        let x = self.ctx.parse_fe(a).map_err(value_err)?;
        Ok(self.ctx.frobenius(&x, i).to_string())
    }

    fn trace(&self, a: &str) -> PyResult<String> {
        let x = self.ctx.parse_fe(a).map_err(value_err)?;
        Ok(self.ctx.trace(&x).to_string())
    }

    fn __repr__(&self) -> String {
        format!("Field(q={}, n={})", self.ctx.q(), self.ctx.degree())
    }
}

impl PyField {
    fn pair(&self, a: &str, b: &str) -> PyResult<(rankdec::Fe, rankdec::Fe)> {
        Ok((
            self.ctx.parse_fe(a).map_err(value_err)?,
            self.ctx.parse_fe(b).map_err(value_err)?,
        ))
    }
}

/// Decode result: message coefficients, error polynomial text, estimated
/// rank and the verification flag.
#[pyclass(name = "DecodeResult")]
struct PyDecodeResult {
    #[pyo3(get)]
    message: Vec<String>,
    #[pyo3(get)]
    error: String,
    #[pyo3(get)]
    t_est: usize,
    #[pyo3(get)]
    ok: bool,
}

fn outcome_to_py(out: rankdec::DecodeOutcome, k: usize) -> PyDecodeResult {
    PyDecodeResult {
        message: out.message.coeffs()[..k]
            .iter()
            .map(|c| c.to_string())
            .collect(),
        error: out.error.to_text(),
        t_est: out.t_est,
        ok: out.ok,
    }
}

fn decode_result(
    res: Result<rankdec::DecodeOutcome, CodeError>,
    k: usize,
) -> PyResult<PyDecodeResult> {
    match res {
        Ok(out) => Ok(outcome_to_py(out, k)),
        Err(CodeError::DecodeFailure(out)) => Ok(outcome_to_py(*out, k)),
        Err(e) => Err(PyRuntimeError::new_err(e.to_string())),
    }
}

/// Gabidulin code over the field's power basis (or a caller-supplied basis).
#[pyclass(name = "GabidulinCode")]
struct PyGabidulin {
    params: CodeParams,
}

#[pymethods]
impl PyGabidulin {
    #[new]
    #[pyo3(signature = (field, k, basis=None))]
    fn new(field: &PyField, k: usize, basis: Option<Vec<String>>) -> PyResult<Self> {
        let ctx = field.ctx.clone();
        let params = match basis {
            None => CodeParams::with_power_basis(ctx, k).map_err(value_err)?,
            Some(b) => {
                let pts = parse_elems(&ctx, &b)?;
                CodeParams::new(ctx, k, pts).map_err(value_err)?
            }
        };
        Ok(PyGabidulin { params })
    }

    #[getter]
    fn k(&self) -> usize {
        self.params.k()
    }

    #[getter]
    fn n(&self) -> usize {
        self.params.n()
    }

    fn encode(&self, message: Vec<String>) -> PyResult<Vec<String>> {
        let coeffs = parse_elems(self.params.ctx(), &message)?;
        if coeffs.len() != self.params.k() {
            return Err(PyValueError::new_err(format!(
                "message needs {} coefficients",
                self.params.k()
            )));
        }
        let f = LinPoly::from_coeffs(self.params.ctx(), coeffs);
        let cw = self.params.encode(&f).map_err(value_err)?;
        Ok(cw.iter().map(|c| c.to_string()).collect())
    }

    /// Decode; returns a DecodeResult whose `ok` flag reports whether
    /// verification succeeded (rank beyond the radius gives ok=False).
    fn decode(&self, received: Vec<String>) -> PyResult<PyDecodeResult> {
        let rx = parse_elems(self.params.ctx(), &received)?;
        decode_result(self.params.decode(&rx), self.params.k())
    }

    /// Add a seeded rank-t error to a codeword.
    fn inject_error(&self, codeword: Vec<String>, t: usize, seed: u64) -> PyResult<Vec<String>> {
        let cw = parse_elems(self.params.ctx(), &codeword)?;
        let rx = harness::inject_error(&self.params, &cw, t, seed).map_err(value_err)?;
        Ok(rx.iter().map(|c| c.to_string()).collect())
    }

    /// Exhaustive minimum rank distance (enumerable codes only).
    #[pyo3(signature = (bound=None))]
    fn min_distance(&self, bound: Option<u128>) -> PyResult<usize> {
        harness::min_distance(&self.params, bound).map_err(value_err)
    }
}

/// Twisted Gabidulin code with twist coefficient eta and exponent r.
#[pyclass(name = "TwistedCode")]
struct PyTwisted {
    params: TwistedParams,
}

#[pymethods]
impl PyTwisted {
    /// TwistedCode(field, k, eta, r, certified=True): with certified=True
    /// the MRD norm condition on eta is enforced.
    #[new]
    #[pyo3(signature = (field, k, eta, r, certified=true))]
    fn new(field: &PyField, k: usize, eta: &str, r: usize, certified: bool) -> PyResult<Self> {
        let ctx = field.ctx.clone();
        let e = ctx.parse_fe(eta).map_err(value_err)?;
        let base = CodeParams::with_power_basis(ctx, k).map_err(value_err)?;
        let params = if certified {
            TwistedParams::new(base, e, r).map_err(value_err)?
        } else {
            TwistedParams::new_unchecked(base, e, r).map_err(value_err)?
        };
        Ok(PyTwisted { params })
    }

    #[getter]
    fn k(&self) -> usize {
        self.params.k()
    }

    #[getter]
    fn n(&self) -> usize {
        self.params.n()
    }

    #[getter]
    fn mrd_certified(&self) -> bool {
        self.params.mrd_certified()
    }

    fn encode(&self, message: Vec<String>) -> PyResult<Vec<String>> {
        let msg = parse_elems(self.params.ctx(), &message)?;
        let cw = self.params.t_encode(&msg).map_err(value_err)?;
        Ok(cw.iter().map(|c| c.to_string()).collect())
    }

    fn decode(&self, received: Vec<String>) -> PyResult<PyDecodeResult> {
        let rx = parse_elems(self.params.ctx(), &received)?;
        decode_result(self.params.t_decode(&rx), self.params.k())
    }

    fn inject_error(&self, codeword: Vec<String>, t: usize, seed: u64) -> PyResult<Vec<String>> {
        let cw = parse_elems(self.params.ctx(), &codeword)?;
        let rx = harness::inject_error(&self.params, &cw, t, seed).map_err(value_err)?;
        Ok(rx.iter().map(|c| c.to_string()).collect())
    }

    #[pyo3(signature = (bound=None))]
    fn min_distance(&self, bound: Option<u128>) -> PyResult<usize> {
        harness::min_distance(&self.params, bound).map_err(value_err)
    }
}

fn parse_elems(ctx: &FieldCtx, xs: &[String]) -> PyResult<Vec<rankdec::Fe>> {
    xs.iter()
        .map(|s| ctx.parse_fe(s).map_err(value_err))
        .collect()
}

/// Seeded rank-t linearized polynomial, returned in `lp:...` text form.
#[pyfunction]
fn random_error_poly(field: &PyField, t: usize, seed: u64) -> PyResult<String> {
    let f = rankdec::random_error_poly(&field.ctx, t, seed).map_err(value_err)?;
    Ok(f.to_text())
}

/// Monte-Carlo decode trials over a Gabidulin code; returns the CSV text.
#[pyfunction]
#[pyo3(signature = (field, k, t_lo, t_hi, trials, seed, timing=false))]
fn simulate_csv(
    field: &PyField,
    k: usize,
    t_lo: usize,
    t_hi: usize,
    trials: u64,
    seed: u64,
    timing: bool,
) -> PyResult<String> {
    let params = CodeParams::with_power_basis(field.ctx.clone(), k).map_err(value_err)?;
    let records = harness::simulate(&params, t_lo..=t_hi, trials, seed);
    Ok(harness::write_csv(&records, timing))
}

#[pymodule]
fn rankdec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyGabidulin>()?;
    m.add_class::<PyTwisted>()?;
    m.add_class::<PyDecodeResult>()?;
    m.add_function(wrap_pyfunction!(random_error_poly, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_csv, m)?)?;
    Ok(())
}
