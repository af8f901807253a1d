//! Python bindings: domains, boundary data, the decompositions and the
//! solvers built on them. Complex numbers cross the boundary as Python
//! `complex`; structured results also offer `to_json()` in the CLI schema.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quaddec::approx::{approximate_arclength_qd, approximate_area_qd, AnalyticMapInput};
use quaddec::circle::{self, CircleForm};
use quaddec::decomp::{self, convert, DirichletSolution as CoreDirichlet};
use quaddec::qdomain::{implicitize, invariant_report, quadrature_data};
use quaddec::{kernels, BivariatePoly, KernelKind, C64};

create_exception!(quaddec, QuaddecError, PyValueError);

fn err(e: quaddec::Error) -> PyErr {
    QuaddecError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(json_err)
}

/// A quadrature domain, the image of the unit disc under a rational map.
#[pyclass(name = "QuadratureDomain", module = "quaddec", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDomain {
    inner: quaddec::QuadratureDomain,
}

#[pymethods]
impl PyDomain {
    #[staticmethod]
    fn disc() -> Self {
        PyDomain {
            inner: quaddec::QuadratureDomain::disc(),
        }
    }

    /// `w + c w^2`
    #[staticmethod]
    fn cardioid(c: C64) -> PyResult<Self> {
        Ok(PyDomain {
            inner: quaddec::QuadratureDomain::cardioid(c).map_err(err)?,
        })
    }

    /// Polynomial map with coefficients in ascending degree.
    #[staticmethod]
    fn from_polynomial(coeffs: Vec<C64>) -> PyResult<Self> {
        Ok(PyDomain {
            inner: quaddec::QuadratureDomain::from_polynomial(coeffs).map_err(err)?,
        })
    }

    /// Rational map `num / den`, coefficients in ascending degree.
    #[staticmethod]
    fn from_rational(num: Vec<C64>, den: Vec<C64>) -> PyResult<Self> {
        let map = quaddec::RationalFunction::new(quaddec::ComplexPoly::new(num), quaddec::ComplexPoly::new(den))
            .map_err(err)?;
        Ok(PyDomain {
            inner: quaddec::QuadratureDomain::new(map).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyDomain {
            inner: serde_json::from_str(s).map_err(json_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn base(&self) -> C64 {
        self.inner.base()
    }

    /// `P(w)`
    fn eval(&self, w: C64) -> C64 {
        self.inner.eval(w)
    }

    fn boundary_point(&self, theta: f64) -> C64 {
        self.inner.boundary_point(theta)
    }

    /// Disc coordinate of `z`.
    fn inverse_map(&self, z: C64) -> PyResult<C64> {
        self.inner.inverse_map(z).map_err(err)
    }

    fn contains(&self, z: C64) -> bool {
        self.inner.contains(z, 0.0)
    }

    /// Schwarz function at `z`.
    fn schwarz(&self, z: C64) -> PyResult<C64> {
        self.inner.schwarz().eval(z).map_err(err)
    }

    /// `[(node, [weight_0, weight_1, ...]), ...]`: the integral of `h`
    /// equals the sum of `weight_m * h^(m)(node)`.
    fn quadrature(&self) -> PyResult<Vec<(C64, Vec<C64>)>> {
        let q = quadrature_data(&self.inner).map_err(err)?;
        Ok(q.nodes.into_iter().map(|n| (n.a, n.weights)).collect())
    }

    fn area(&self) -> PyResult<f64> {
        Ok(quadrature_data(&self.inner).map_err(err)?.area())
    }

    /// Coefficients `q[i][j]` of `z^i zbar^j` in the boundary equation.
    fn implicitize(&self) -> PyResult<Vec<Vec<C64>>> {
        Ok(implicitize(&self.inner).map_err(err)?.coeffs)
    }

    /// Invariant residuals as a JSON string.
    #[pyo3(signature = (samples = 256, max_monomial = 4))]
    fn invariant_report(&self, samples: usize, max_monomial: u32) -> PyResult<String> {
        to_json(&invariant_report(&self.inner, samples, max_monomial).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("QuadratureDomain(degree={})", self.inner.degree())
    }
}

/// Rational function `R(z, zbar)`; `num[i][j]` multiplies `z^i zbar^j`.
#[pyclass(name = "BivariateRational", module = "quaddec", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyData {
    inner: quaddec::BivariateRational,
}

#[pymethods]
impl PyData {
    #[new]
    #[pyo3(signature = (num, den = None))]
    fn new(num: Vec<Vec<C64>>, den: Option<Vec<Vec<C64>>>) -> PyResult<Self> {
        let den = den.unwrap_or_else(|| vec![vec![C64::new(1.0, 0.0)]]);
        Ok(PyData {
            inner: quaddec::BivariateRational::new(BivariatePoly::new(num), BivariatePoly::new(den)).map_err(err)?,
        })
    }

    #[staticmethod]
    fn zbar() -> Self {
        PyData {
            inner: quaddec::BivariateRational::zbar(),
        }
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyData {
            inner: serde_json::from_str(s).map_err(json_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    fn eval(&self, z: C64) -> C64 {
        self.inner.eval(z)
    }

    fn __call__(&self, z: C64) -> C64 {
        self.inner.eval(z)
    }
}

/// `coeff * kind_a^m`
#[pyclass(name = "KernelTerm", module = "quaddec", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTerm {
    kind: String,
    a: C64,
    m: usize,
    coeff: C64,
}

#[pymethods]
impl PyTerm {
    fn __repr__(&self) -> String {
        format!("KernelTerm({}, a={}, m={}, coeff={})", self.kind, self.a, self.m, self.coeff)
    }
}

fn terms(ts: &[quaddec::KernelTerm]) -> Vec<PyTerm> {
    ts.iter()
        .map(|t| PyTerm {
            kind: match t.kind {
                KernelKind::K => "K",
                KernelKind::Lambda => "Lambda",
                KernelKind::KLower => "k_lower",
                KernelKind::LambdaLower => "lambda_lower",
            }
            .to_string(),
            a: t.a,
            m: t.m,
            coeff: t.coeff,
        })
        .collect()
}

/// Boundary data written as a constant plus kernel terms.
#[pyclass(name = "Decomposition", module = "quaddec", frozen)]
pub struct PyDecomposition {
    inner: quaddec::Decomposition,
    domain: quaddec::QuadratureDomain,
}

#[pymethods]
impl PyDecomposition {
    #[getter]
    fn form(&self) -> &'static str {
        self.inner.form.as_str()
    }

    #[getter]
    fn constant(&self) -> C64 {
        self.inner.constant
    }

    #[getter]
    fn k_terms(&self) -> Vec<PyTerm> {
        terms(&self.inner.first)
    }

    #[getter]
    fn lambda_terms(&self) -> Vec<PyTerm> {
        terms(&self.inner.second)
    }

    /// Value at a boundary or interior point `z`.
    fn eval(&self, z: C64) -> PyResult<C64> {
        let ev = self.inner.evaluator(&self.domain).map_err(err)?;
        ev.eval(&self.domain, z).map_err(err)
    }

    /// Same decomposition in another form.
    fn convert(&self, form: &str) -> PyResult<Self> {
        let f = form.parse().map_err(err)?;
        Ok(PyDecomposition {
            inner: convert(&self.inner, f),
            domain: self.domain.clone(),
        })
    }

    #[pyo3(signature = (data, samples = 256))]
    fn boundary_residual(&self, data: &PyData, samples: usize) -> PyResult<f64> {
        self.inner
            .boundary_residual(&self.domain, &data.inner, samples)
            .map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Decomposition({}, {} k terms, {} lambda terms)",
            self.inner.form,
            self.inner.first.len(),
            self.inner.second.len()
        )
    }
}

/// `R = r1(z) + conj(r2(z))` on the unit circle.
#[pyclass(name = "CircleDecomposition", module = "quaddec", frozen)]
pub struct PyCircle {
    inner: circle::CircleDecomposition,
}

#[pymethods]
impl PyCircle {
    #[getter]
    fn form(&self) -> &'static str {
        self.inner.form.as_str()
    }

    fn r1(&self, z: C64) -> C64 {
        self.inner.r1.eval(z)
    }

    fn r2(&self, z: C64) -> C64 {
        self.inner.r2.eval(z)
    }

    fn eval(&self, z: C64) -> C64 {
        self.inner.eval(z)
    }

    #[pyo3(signature = (data, samples = 256))]
    fn residual(&self, data: &PyData, samples: usize) -> f64 {
        self.inner.residual(&data.inner, samples)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }
}

/// Harmonic extension of boundary data.
#[pyclass(name = "DirichletSolution", module = "quaddec", frozen)]
pub struct PyDirichlet {
    inner: CoreDirichlet,
}

#[pymethods]
impl PyDirichlet {
    fn eval(&self, z: C64) -> PyResult<C64> {
        self.inner.eval(z).map_err(err)
    }

    fn __call__(&self, z: C64) -> PyResult<C64> {
        self.inner.eval(z).map_err(err)
    }

    /// Outward normal derivative at `P(e^{i theta})`.
    fn normal_derivative(&self, theta: f64) -> PyResult<C64> {
        self.inner.normal_derivative(theta).map_err(err)
    }
}

/// Dirichlet-to-Neumann image.
#[pyclass(name = "DtnImage", module = "quaddec", frozen)]
pub struct PyDtn {
    inner: quaddec::DtnImage,
    domain: quaddec::QuadratureDomain,
}

#[pymethods]
impl PyDtn {
    #[getter]
    fn kappa1(&self) -> Vec<PyTerm> {
        terms(&self.inner.kappa1)
    }

    #[getter]
    fn kappa2(&self) -> Vec<PyTerm> {
        terms(&self.inner.kappa2)
    }

    fn boundary_values(&self, thetas: Vec<f64>) -> PyResult<Vec<C64>> {
        self.inner.boundary_values(&self.domain, &thetas).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner)
    }
}

/// Decompose data on the unit circle.
#[pyfunction]
#[pyo3(signature = (data, form = "poles_outside"))]
fn decompose_circle(data: &PyData, form: &str) -> PyResult<PyCircle> {
    let f: CircleForm = form.parse().map_err(err)?;
    Ok(PyCircle {
        inner: circle::decompose(&data.inner, f).map_err(err)?,
    })
}

/// Decompose boundary data on a domain.
#[pyfunction]
#[pyo3(signature = (domain, data, form = "k_lambda"))]
fn decompose(domain: &PyDomain, data: &PyData, form: &str) -> PyResult<PyDecomposition> {
    let f = form.parse().map_err(err)?;
    let d = decomp::decompose(&domain.inner, &data.inner).map_err(err)?;
    Ok(PyDecomposition {
        inner: convert(&d, f),
        domain: domain.inner.clone(),
    })
}

#[pyfunction]
fn dirichlet_solve(domain: &PyDomain, data: &PyData) -> PyResult<PyDirichlet> {
    Ok(PyDirichlet {
        inner: decomp::dirichlet_solve(&domain.inner, &data.inner).map_err(err)?,
    })
}

#[pyfunction]
fn dtn(domain: &PyDomain, data: &PyData) -> PyResult<PyDtn> {
    Ok(PyDtn {
        inner: decomp::dtn(&domain.inner, &data.inner).map_err(err)?,
        domain: domain.inner.clone(),
    })
}

/// Bergman kernel `K(z, w)`.
#[pyfunction]
fn bergman_kernel(domain: &PyDomain, z: C64, w: C64) -> PyResult<C64> {
    kernels::bergman_k(&domain.inner, z, w).map_err(err)
}

/// Complementary kernel `Lambda(z, w)`.
#[pyfunction]
fn lambda_kernel(domain: &PyDomain, z: C64, w: C64) -> PyResult<C64> {
    kernels::lambda_l(&domain.inner, z, w).map_err(err)
}

/// `kind_a^m(z)` for `kind` in `K`, `Lambda`, `k_lower`, `lambda_lower`.
#[pyfunction]
fn kernel(domain: &PyDomain, kind: &str, a: C64, m: usize, z: C64) -> PyResult<C64> {
    let d = &domain.inner;
    match kind {
        "K" => kernels::k_deriv(d, a, m, z),
        "Lambda" => kernels::lambda_deriv(d, a, m, z),
        "k_lower" => kernels::k_lower(d, a, m, z),
        "lambda_lower" => kernels::lambda_lower(d, a, m, z),
        _ => return Err(PyValueError::new_err(format!("unknown kernel kind '{kind}'"))),
    }
    .map_err(err)
}

/// Quadrature domain near the image of `sum series[k] w^k`; returns the
/// domain and the sup error on the circle.
#[pyfunction]
#[pyo3(signature = (series, degree, kind = "area"))]
fn approximate(series: Vec<C64>, degree: usize, kind: &str) -> PyResult<(PyDomain, f64)> {
    let g = AnalyticMapInput::Series(series);
    let rep = match kind {
        "area" => approximate_area_qd(&g, degree),
        "arclength" => approximate_arclength_qd(&g, degree),
        _ => return Err(PyValueError::new_err(format!("unknown kind '{kind}'"))),
    }
    .map_err(err)?;
    Ok((PyDomain { inner: rep.domain }, rep.sup_error))
}

#[pymodule(name = "quaddec")]
pub fn quaddec_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("QuaddecError", m.py().get_type::<QuaddecError>())?;
    m.add_class::<PyDomain>()?;
    m.add_class::<PyData>()?;
    m.add_class::<PyTerm>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_class::<PyCircle>()?;
    m.add_class::<PyDirichlet>()?;
    m.add_class::<PyDtn>()?;
    m.add_function(wrap_pyfunction!(decompose_circle, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(dirichlet_solve, m)?)?;
    m.add_function(wrap_pyfunction!(dtn, m)?)?;
    m.add_function(wrap_pyfunction!(bergman_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(approximate, m)?)?;
    Ok(())
}
