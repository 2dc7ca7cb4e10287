//! Python bindings for the sector numerical-range toolkit.
//!
//! The module exposes the dense complex matrix type plus the operations the
//! command-line tool is built from: support sweeps and sector fitting,
//! region geometry, the block pencil and determinant-ratio spectra, the
//! boundary-attaining generator, seeded random families, and the full
//! verification report (returned as a JSON string).
//!
//! Conversions use the native `complex` type on the Python side; matrices
//! cross the boundary as lists of row lists.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use wrange_core::{
    BlockPartition, ComplexMatrix, Error, ExtremalParams, MatrixDocument, RandomKind, RandomSpec,
    RegionKind, RegionSpec, Sector, VerifyOptions,
};

/// Maps core errors onto Python exceptions: domain and usage problems
/// become `ValueError`, numerical breakdowns become `RuntimeError`.
fn to_py(err: Error) -> PyErr {
    match err {
        Error::DimensionMismatch(_)
        | Error::BadSampleCount { .. }
        | Error::Domain(_)
        | Error::Unreachable { .. }
        | Error::NotApplicable(_)
        | Error::MidpointViolation(_)
        | Error::DegenerateTriangle => PyValueError::new_err(err.to_string()),
        Error::NotHermitian { .. }
        | Error::ConvergenceFailure { .. }
        | Error::SingularBase { .. }
        | Error::SingularBlock { .. }
        | Error::SpreadTooWide { .. }
        | Error::OriginInterior => PyRuntimeError::new_err(err.to_string()),
    }
}

fn parse_region(alpha: f64, kind: &str) -> PyResult<RegionSpec> {
    let kind: RegionKind = kind.parse().map_err(to_py)?;
    RegionSpec::new(alpha, kind).map_err(to_py)
}

/// Dense complex square matrix.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Matrix {
    inner: ComplexMatrix,
}

#[pymethods]
impl Matrix {
    /// Builds a matrix from a list of row lists of complex numbers.
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let inner = ComplexMatrix::from_rows(&rows).map_err(to_py)?;
        if !inner.is_square() {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        Ok(Self { inner })
    }

    /// Parses the JSON document format; returns the matrix and the optional
    /// stored partition order.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<(Self, Option<usize>)> {
        let doc = MatrixDocument::from_json(text).map_err(to_py)?;
        let inner = doc.matrix().map_err(to_py)?;
        doc.partition().map_err(to_py)?;
        Ok((Self { inner }, doc.m))
    }

    /// Serializes to the JSON document format, optionally recording a
    /// leading block order.
    #[pyo3(signature = (m=None))]
    fn to_json(&self, m: Option<usize>) -> PyResult<String> {
        Ok(MatrixDocument::new(&self.inner, m).map_err(to_py)?.to_json())
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.rows()
    }

    /// Entries as a list of row lists.
    fn entries(&self) -> Vec<Vec<Complex64>> {
        (0..self.inner.rows())
            .map(|i| (0..self.inner.cols()).map(|j| self.inner.get(i, j)).collect())
            .collect()
    }

    fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    fn __matmul__(&self, rhs: &Self) -> PyResult<Self> {
        if self.inner.cols() != rhs.inner.rows() {
            return Err(PyValueError::new_err("dimension mismatch in product"));
        }
        Ok(Self {
            inner: self.inner.mul(&rhs.inner),
        })
    }

    fn __repr__(&self) -> String {
        format!("Matrix(n={})", self.inner.rows())
    }
}

/// Fits the smallest sector containing the sampled numerical range;
/// returns `(phi, alpha)`.
#[pyfunction]
#[pyo3(signature = (a, samples=720, tol=1e-8))]
fn sector_fit(a: &Matrix, samples: usize, tol: f64) -> PyResult<(f64, f64)> {
    let sector = wrange_core::sector_fit(&a.inner, samples, tol).map_err(to_py)?;
    Ok((sector.phi(), sector.alpha()))
}

/// Samples the numerical range boundary; returns `(angle, point)` pairs.
#[pyfunction]
#[pyo3(signature = (a, samples=720))]
fn boundary_points(a: &Matrix, samples: usize) -> PyResult<Vec<(f64, Complex64)>> {
    let sweep = wrange_core::boundary(&a.inner, samples).map_err(to_py)?;
    Ok(sweep.iter().map(|s| (s.angle, s.boundary_point)).collect())
}

/// Membership of a point in the closed sector with axis `phi` and
/// half-angle `alpha`, up to slack `tol`.
#[pyfunction]
#[pyo3(signature = (z, phi, alpha, tol=0.0))]
fn in_sector(z: Complex64, phi: f64, alpha: f64, tol: f64) -> PyResult<bool> {
    let sector = Sector::new(phi, alpha).map_err(to_py)?;
    Ok(wrange_core::in_sector(z, &sector, tol))
}

/// Samples the region boundary; returns `(phi, point)` pairs.
#[pyfunction]
#[pyo3(signature = (alpha, kind="R", samples=181))]
fn region_boundary(alpha: f64, kind: &str, samples: usize) -> PyResult<Vec<(f64, Complex64)>> {
    let spec = parse_region(alpha, kind)?;
    wrange_core::boundary_samples(&spec, samples).map_err(to_py)
}

/// Membership of a point in the closed region, up to slack `tol`.
#[pyfunction]
#[pyo3(signature = (z, alpha, kind="R", tol=0.0))]
fn in_region(z: Complex64, alpha: f64, kind: &str, tol: f64) -> PyResult<bool> {
    Ok(wrange_core::in_region(z, &parse_region(alpha, kind)?, tol))
}

/// Signed distance proxy to the region boundary: nonnegative inside.
#[pyfunction]
#[pyo3(signature = (z, alpha, kind="R"))]
fn region_margin(z: Complex64, alpha: f64, kind: &str) -> PyResult<f64> {
    Ok(wrange_core::region_margin(z, &parse_region(alpha, kind)?))
}

/// Radial extent of the region along direction `2 phi`.
#[pyfunction]
fn max_radius(phi: f64, alpha: f64) -> PyResult<f64> {
    wrange_core::max_radius(phi, alpha).map_err(to_py)
}

/// The chord-ratio profile `(cos 2 phi - cos 2 theta) / sin^2 2 theta`.
#[pyfunction]
fn chord_ratio(theta: f64, phi: f64) -> PyResult<f64> {
    wrange_core::chord_ratio(theta, phi).map_err(to_py)
}

/// Log of the determinant bound factor `sec^{2m}(alpha)`.
#[pyfunction]
fn log_sec_bound(alpha: f64, m: usize) -> PyResult<f64> {
    wrange_core::log_sec_bound(alpha, m).map_err(to_py)
}

/// Boundary-attaining normal matrix for the given sector data, direction
/// `phi`, and radial coordinate `r` (see the command-line `extremal`
/// subcommand for the parameter ranges).
#[pyfunction]
fn extremal_matrix(alpha: f64, phi: f64, r: f64, m: usize, n: usize) -> PyResult<Matrix> {
    let params = ExtremalParams::new(alpha, phi, r, m, n).map_err(to_py)?;
    Ok(Matrix {
        inner: wrange_core::extremal_matrix(&params),
    })
}

/// Seeded random matrix from one of the named families:
/// `shifted_gaussian`, `normal_spectrum`, or `accretive_dissipative`.
#[pyfunction]
#[pyo3(signature = (n, seed, kind="shifted_gaussian", phi=0.0, alpha=std::f64::consts::FRAC_PI_4))]
fn random_matrix(n: usize, seed: u64, kind: &str, phi: f64, alpha: f64) -> PyResult<Matrix> {
    let kind: RandomKind = kind.parse().map_err(to_py)?;
    let spec = RandomSpec::new(n, seed, kind, phi, alpha).map_err(to_py)?;
    Ok(Matrix {
        inner: spec.generate().map_err(to_py)?,
    })
}

/// All eigenvalues of a general square matrix.
#[pyfunction]
fn eigenvalues(a: &Matrix) -> PyResult<Vec<Complex64>> {
    wrange_core::eig_general(&a.inner).map_err(to_py)
}

/// Eigenvalues of the block pencil for leading block order `m`.
#[pyfunction]
fn generalized_eigs(a: &Matrix, m: usize) -> PyResult<Vec<Complex64>> {
    let p = BlockPartition::new(m, a.inner.rows()).map_err(to_py)?;
    wrange_core::generalized_eigs(&a.inner, p).map_err(to_py)
}

/// The determinant-ratio matrix `I - A11^{-1} A12 A22^{-1} A21`.
#[pyfunction]
fn det_ratio_matrix(a: &Matrix, m: usize) -> PyResult<Matrix> {
    let p = BlockPartition::new(m, a.inner.rows()).map_err(to_py)?;
    Ok(Matrix {
        inner: wrange_core::det_ratio_matrix(&a.inner, p).map_err(to_py)?,
    })
}

/// Log-scale determinant: returns `(log_abs, phase, value)` where `value`
/// is `None` when the magnitude leaves the double-precision range.
#[pyfunction]
fn determinant(a: &Matrix) -> (f64, f64, Option<Complex64>) {
    let d = wrange_core::determinant(&a.inner);
    (d.log_abs, d.phase, d.value)
}

/// Runs the full verification suite and returns the JSON report.
///
/// The sector is fitted unless both `phi` and `alpha` are supplied.
#[pyfunction]
#[pyo3(signature = (a, m, phi=None, alpha=None, tol=1e-7, samples=720))]
fn verify(
    a: &Matrix,
    m: usize,
    phi: Option<f64>,
    alpha: Option<f64>,
    tol: f64,
    samples: usize,
) -> PyResult<String> {
    let p = BlockPartition::new(m, a.inner.rows()).map_err(to_py)?;
    let sector = match (phi, alpha) {
        (Some(phi), Some(alpha)) => Some(Sector::new(phi, alpha).map_err(to_py)?),
        (None, None) => None,
        _ => {
            return Err(PyValueError::new_err(
                "phi and alpha must be supplied together",
            ))
        }
    };
    let opts = VerifyOptions {
        tol,
        samples,
        ..Default::default()
    };
    let report = wrange_core::verify_matrix(&a.inner, p, sector, &opts).map_err(to_py)?;
    Ok(report.to_json())
}

#[pymodule]
fn wrange(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Matrix>()?;
    m.add_function(wrap_pyfunction!(sector_fit, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_points, m)?)?;
    m.add_function(wrap_pyfunction!(in_sector, m)?)?;
    m.add_function(wrap_pyfunction!(region_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(in_region, m)?)?;
    m.add_function(wrap_pyfunction!(region_margin, m)?)?;
    m.add_function(wrap_pyfunction!(max_radius, m)?)?;
    m.add_function(wrap_pyfunction!(chord_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(log_sec_bound, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(random_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_eigs, m)?)?;
    m.add_function(wrap_pyfunction!(det_ratio_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(determinant, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
