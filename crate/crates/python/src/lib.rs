//! Python bindings for `norm_lab`.
//!
//! Vectors cross the boundary as `(u, w)` tuples and matrices as nested
//! `[[a, b], [c, d]]` lists. Reports come back as JSON text with the same
//! layout the command line writes.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use norm_lab::bisector;
use norm_lab::ortho;
use norm_lab::report::{to_json, Report};
use norm_lab::theorems::{self, NormClass, PairCheck, SearchConfig};
use norm_lab::{Error, Mat2, Vec2};

type P2 = (f64, f64);

fn err(e: Error) -> PyErr {
    match e {
        Error::SearchExhausted(_) | Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn v(p: P2) -> Vec2 {
    Vec2::new(p.0, p.1)
}

fn t(p: Vec2) -> P2 {
    (p.u, p.w)
}

fn class_name(c: NormClass) -> &'static str {
    match c {
        NormClass::Euclidean => "euclidean",
        NormClass::StrictlyConvexNonEuclidean => "strictly_convex_non_euclidean",
        NormClass::NotStrictlyConvex => "not_strictly_convex",
    }
}

/// A norm on the plane.
#[pyclass(name = "Norm", module = "norm_lab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyNorm {
    inner: norm_lab::Norm,
}

fn wrap(r: norm_lab::Result<norm_lab::Norm>) -> PyResult<PyNorm> {
    r.map(|inner| PyNorm { inner }).map_err(err)
}

#[pymethods]
impl PyNorm {
    /// Parses a JSON norm definition such as `{"kind": "pnorm", "p": 4}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        wrap(norm_lab::Norm::from_json(text))
    }

    #[staticmethod]
    fn quadratic(form: [[f64; 2]; 2]) -> PyResult<Self> {
        wrap(norm_lab::Norm::quadratic(Mat2(form)))
    }

    #[staticmethod]
    fn euclidean() -> Self {
        PyNorm { inner: norm_lab::Norm::euclidean() }
    }

    /// `p` may be `float("inf")`.
    #[staticmethod]
    fn pnorm(p: f64) -> PyResult<Self> {
        wrap(norm_lab::Norm::pnorm(p))
    }

    #[staticmethod]
    fn polygon(vertices: Vec<P2>) -> PyResult<Self> {
        wrap(norm_lab::Norm::polygon(vertices.into_iter().map(v).collect()))
    }

    #[staticmethod]
    fn regular_polygon(sides: usize) -> PyResult<Self> {
        wrap(norm_lab::Norm::regular_polygon(sides))
    }

    /// `v -> inner(map @ v)`.
    #[staticmethod]
    fn linear_image(inner: &PyNorm, map: [[f64; 2]; 2]) -> PyResult<Self> {
        wrap(norm_lab::Norm::linear_image(inner.inner.clone(), Mat2(map)))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind_name()
    }

    fn to_json(&self) -> String {
        self.inner.to_def().to_json()
    }

    fn gauge(&self, p: P2) -> PyResult<f64> {
        self.inner.checked_gauge(v(p)).map_err(err)
    }

    fn unit_point(&self, theta: f64) -> P2 {
        t(self.inner.unit_point(theta))
    }

    #[pyo3(signature = (theta, r = 1.0))]
    fn sphere_point(&self, theta: f64, r: f64) -> PyResult<P2> {
        self.inner.sphere_point(theta, r).map(t).map_err(err)
    }

    /// `(verdict, parallelogram residual)`.
    #[pyo3(signature = (samples = 1000))]
    fn is_euclidean(&self, samples: usize) -> PyResult<(bool, f64)> {
        self.inner.is_euclidean(samples).map_err(err)
    }

    /// Maximal flat segments as `(c, c_prime)` pairs.
    #[pyo3(signature = (resolution = 1024))]
    fn flat_segments(&self, resolution: usize) -> PyResult<Vec<(P2, P2)>> {
        let segs = self.inner.detect_flat_segments(resolution).map_err(err)?;
        Ok(segs.into_iter().map(|s| (t(s.c), t(s.c_prime))).collect())
    }

    /// `(class, parallelogram residual)`.
    fn classify(&self) -> PyResult<(&'static str, f64)> {
        let c = theorems::classify(&self.inner).map_err(err)?;
        Ok((class_name(c.class), c.parallelogram_residual))
    }

    fn __repr__(&self) -> String {
        format!("Norm({})", self.to_json())
    }
}

/// A nonzero common point `z` of `B(-x, x)` and `B(-y, y)`.
#[pyclass(name = "Witness", module = "norm_lab", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyWitness {
    x: P2,
    y: P2,
    z: P2,
    lambda_: f64,
    residual_x: f64,
    residual_y: f64,
    independence: f64,
}

impl From<theorems::Witness> for PyWitness {
    fn from(w: theorems::Witness) -> Self {
        PyWitness {
            x: t(w.x),
            y: t(w.y),
            z: t(w.z),
            lambda_: w.lambda,
            residual_x: w.residual_x,
            residual_y: w.residual_y,
            independence: w.independence,
        }
    }
}

#[pymethods]
impl PyWitness {
    fn __repr__(&self) -> String {
        format!("Witness(x={:?}, y={:?}, z={:?}, lambda_={})", self.x, self.y, self.z, self.lambda_)
    }
}

#[pyfunction]
fn iso_residual(n: &PyNorm, x: P2, y: P2) -> f64 {
    ortho::iso_residual(&n.inner, v(x), v(y))
}

/// Every `y` with `||y|| = r` and `||z + y|| = ||z - y||`.
#[pyfunction]
fn find_iso_orthogonal(n: &PyNorm, z: P2, r: f64) -> PyResult<Vec<P2>> {
    let sols = ortho::find_iso_orthogonal(&n.inner, v(z), r).map_err(err)?;
    Ok(sols.into_iter().map(|s| t(s.y)).collect())
}

/// `(x, x_prime, unique)` with `x`, `x_prime` on the sphere and midpoint `z`.
#[pyfunction]
fn chord_midpoint_pair(n: &PyNorm, z: P2) -> PyResult<(P2, P2, bool)> {
    let c = ortho::chord_midpoint_pair(&n.inner, v(z)).map_err(err)?;
    Ok((t(c.x), t(c.x_prime), c.unique))
}

/// Samples `B(-x, x)` on `count` parallel lines: one `(lo, hi)` per line.
#[pyfunction]
#[pyo3(signature = (n, x, t_max = 8.0, count = 201))]
fn trace_bisector(py: Python<'_>, n: &PyNorm, x: P2, t_max: f64, count: usize) -> PyResult<Vec<(P2, P2)>> {
    let x = v(x);
    let trace = py.detach(|| bisector::trace_symmetric(&n.inner, x, t_max, count)).map_err(err)?;
    Ok(trace.roots.iter().map(|r| (t(r.lo(x)), t(r.hi(x)))).collect())
}

#[pyfunction]
#[pyo3(signature = (n, x, y, t_max = 8.0, count = 201))]
fn intersect_symmetric(py: Python<'_>, n: &PyNorm, x: P2, y: P2, t_max: f64, count: usize) -> PyResult<Vec<P2>> {
    let pts = py.detach(|| bisector::intersect_symmetric(&n.inner, v(x), v(y), t_max, count)).map_err(err)?;
    Ok(pts.into_iter().map(t).collect())
}

#[pyfunction]
fn witness_nonstrict_prop(n: &PyNorm) -> PyResult<PyWitness> {
    theorems::witness_nonstrict_prop(&n.inner).map(Into::into).map_err(err)
}

#[pyfunction]
fn witness_nonstrict_theorem(n: &PyNorm, lambda_: f64) -> PyResult<PyWitness> {
    theorems::witness_nonstrict_theorem(&n.inner, lambda_).map(Into::into).map_err(err)
}

#[pyfunction]
fn witness_strictconvex_theorem(py: Python<'_>, n: &PyNorm, lambda_: f64) -> PyResult<PyWitness> {
    py.detach(|| theorems::witness_strictconvex_theorem(&n.inner, lambda_, SearchConfig::default()))
        .map(Into::into)
        .map_err(err)
}

/// Unit-pair bisector check; returns the violating witnesses.
#[pyfunction]
#[pyo3(signature = (n, pairs = 200, t_max = 8.0, count = 201, seed = 0))]
fn verify_prop_strict(
    py: Python<'_>,
    n: &PyNorm,
    pairs: usize,
    t_max: f64,
    count: usize,
    seed: u64,
) -> PyResult<Vec<PyWitness>> {
    let check = PairCheck { pairs, t_max, count, seed };
    let report = py.detach(|| theorems::verify_prop_strict(&n.inner, check)).map_err(err)?;
    Ok(report.violations.into_iter().map(Into::into).collect())
}

/// Chord-frame suites as a JSON report.
#[pyfunction]
#[pyo3(signature = (n, frames = 10, samples = 500, seed = 0))]
fn lemma_suite(py: Python<'_>, n: &PyNorm, frames: usize, samples: usize, seed: u64) -> PyResult<String> {
    let norm = &n.inner;
    py.detach(|| {
        Ok(to_json(&Report {
            norm: norm.to_def(),
            classification: theorems::classify(norm)?,
            suites: theorems::lemma_suite(norm, frames, samples, seed)?,
            witnesses: Vec::new(),
        }))
    })
    .map_err(err)
}

#[pymodule(name = "norm_lab")]
fn norm_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNorm>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(iso_residual, m)?)?;
    m.add_function(wrap_pyfunction!(find_iso_orthogonal, m)?)?;
    m.add_function(wrap_pyfunction!(chord_midpoint_pair, m)?)?;
    m.add_function(wrap_pyfunction!(trace_bisector, m)?)?;
    m.add_function(wrap_pyfunction!(intersect_symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(witness_nonstrict_prop, m)?)?;
    m.add_function(wrap_pyfunction!(witness_nonstrict_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(witness_strictconvex_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(verify_prop_strict, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_suite, m)?)?;
    Ok(())
}
