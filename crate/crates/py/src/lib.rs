//! Python bindings for the exact holomorphic Poisson toolkit.

use holopoisson::algebroid::{
    canonical_matched_pair, compute_tensors, lie_poisson, realparts_liealgebra_check, yao_isomorphism_check,
    LieAlgebraData, MatchedPairData,
};
use holopoisson::cli::input::{graded, terms_of, TermSpec};
use holopoisson::cohomology::{betti, betti_oracle, Truncation};
use holopoisson::error::HpError;
use holopoisson::exactalg::{chart::MAX_DIM, parse_gq, parse_poly, Chart, PolyGQ};
use holopoisson::multivec::{schouten, Multivector};
use holopoisson::poisson::{decompose, is_holomorphic_poisson, poisson_bracket, sharp_relation};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde::Serialize;
use serde_json::Value;

create_exception!(holopoisson, HolopoissonError, PyException);

fn err(e: HpError) -> PyErr {
    HolopoissonError::new_err(e.to_string())
}

fn chart(kind: &str, n: usize) -> PyResult<Chart> {
    if n > MAX_DIM {
        return Err(err(HpError::Chart(format!("chart dimension {n} is too large"))));
    }
    match kind {
        "complex" => Ok(Chart::complex(n)),
        "real" => Ok(Chart::real(n)),
        _ => Err(err(HpError::Chart(format!("unknown chart kind `{kind}`")))),
    }
}

fn kind_name(c: Chart) -> &'static str {
    if c.is_complex() {
        "complex"
    } else {
        "real"
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::Null => Ok(py.None().into_bound(py)),
        Value::Bool(b) => b.into_bound_py_any(py),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_bound_py_any(py),
            None => n.as_f64().into_bound_py_any(py),
        },
        Value::String(s) => s.into_bound_py_any(py),
        Value::Array(a) => {
            let items = a.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            Ok(PyList::new(py, items)?.into_any())
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            Ok(d.into_any())
        }
    }
}

fn report<'py, T: Serialize>(py: Python<'py>, r: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(r).map_err(|e| HolopoissonError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// Exact polynomial in the chart variables with Gaussian rational coefficients.
#[pyclass(name = "Poly", module = "holopoisson", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(PolyGQ);

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (text, kind = "complex", n = 1))]
    fn new(text: &str, kind: &str, n: usize) -> PyResult<Self> {
        Ok(PyPoly(parse_poly(chart(kind, n)?, text).map_err(err)?))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', kind='{}', n={})", self.0, kind_name(self.0.chart()), self.0.chart().n)
    }

    fn __add__(&self, o: &PyPoly) -> PyResult<Self> {
        self.0.chart().ensure_same(&o.0.chart()).map_err(err)?;
        Ok(PyPoly(&self.0 + &o.0))
    }

    fn __sub__(&self, o: &PyPoly) -> PyResult<Self> {
        self.0.chart().ensure_same(&o.0.chart()).map_err(err)?;
        Ok(PyPoly(&self.0 - &o.0))
    }

    fn __mul__(&self, o: &PyPoly) -> PyResult<Self> {
        self.0.chart().ensure_same(&o.0.chart()).map_err(err)?;
        Ok(PyPoly(&self.0 * &o.0))
    }

    fn diff(&self, var: &str) -> PyResult<Self> {
        Ok(PyPoly(self.0.diff_named(var).map_err(err)?))
    }

    /// Value at a point given as exact scalar strings, one per variable.
    fn eval(&self, point: Vec<String>) -> PyResult<String> {
        let p = point.iter().map(|s| parse_gq(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        Ok(self.0.eval(&p).map_err(err)?.to_string())
    }

    fn is_holomorphic(&self) -> bool {
        self.0.is_holomorphic()
    }

    fn to_chart(&self, kind: &str) -> PyResult<Self> {
        Ok(PyPoly(self.0.convert_chart(chart(kind, self.0.chart().n)?).map_err(err)?))
    }
}

/// Multivector field given as `(frame, coeff)` terms such as `(["z1", "z2"], "z3")`.
#[pyclass(name = "Multivector", module = "holopoisson", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMultivector(Multivector);

#[pymethods]
impl PyMultivector {
    #[new]
    #[pyo3(signature = (terms, kind = "complex", n = 1))]
    fn new(terms: Vec<(Vec<String>, String)>, kind: &str, n: usize) -> PyResult<Self> {
        let specs: Vec<TermSpec> = terms.into_iter().map(|(frame, coeff)| TermSpec { frame, coeff }).collect();
        Ok(PyMultivector(graded(chart(kind, n)?, &specs).map_err(err)?))
    }

    fn terms(&self) -> Vec<(Vec<String>, String)> {
        terms_of(&self.0).into_iter().map(|t| (t.frame, t.coeff)).collect()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        kind_name(self.0.chart())
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.chart().n
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __repr__(&self) -> String {
        format!("Multivector({:?}, kind='{}', n={})", self.terms(), self.kind(), self.n())
    }

    fn __add__(&self, o: &PyMultivector) -> PyResult<Self> {
        self.0.chart().ensure_same(&o.0.chart()).map_err(err)?;
        Ok(PyMultivector(self.0.add(&o.0)))
    }

    fn __sub__(&self, o: &PyMultivector) -> PyResult<Self> {
        self.0.chart().ensure_same(&o.0.chart()).map_err(err)?;
        Ok(PyMultivector(self.0.sub(&o.0)))
    }

    fn wedge(&self, o: &PyMultivector) -> PyResult<Self> {
        Ok(PyMultivector(self.0.try_wedge(&o.0).map_err(err)?))
    }

    fn schouten(&self, o: &PyMultivector) -> PyResult<Self> {
        Ok(PyMultivector(schouten(&self.0, &o.0).map_err(err)?))
    }

    fn to_chart(&self, kind: &str) -> PyResult<Self> {
        Ok(PyMultivector(self.0.convert_chart(chart(kind, self.0.chart().n)?).map_err(err)?))
    }

    fn poisson_bracket(&self, f: &PyPoly, g: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(poisson_bracket(&self.0, &f.0, &g.0).map_err(err)?))
    }

    /// `{"dbar_zero": …, "schouten_zero": …}` for a `(2,0)` bivector.
    fn check_poisson<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &is_holomorphic_poisson(&self.0).map_err(err)?)
    }

    /// `(π_R, π_I)` on the real chart.
    fn decompose(&self) -> PyResult<(PyMultivector, PyMultivector)> {
        let pair = decompose(&self.0).map_err(err)?;
        Ok((PyMultivector(pair.pi_r), PyMultivector(pair.pi_i)))
    }

    /// Whether `π_R♯ = π_I♯ ∘ J*` for the real and imaginary parts.
    fn sharp_relation(&self) -> PyResult<bool> {
        let pair = decompose(&self.0).map_err(err)?;
        sharp_relation(&pair.pi_r, &pair.pi_i).map_err(err)
    }
}

/// Finite-dimensional complex Lie algebra from structure constants `(i, j, k, c)`.
#[pyclass(name = "LieAlgebra", module = "holopoisson", frozen)]
struct PyLieAlgebra(LieAlgebraData);

#[pymethods]
impl PyLieAlgebra {
    #[new]
    fn new(rank: usize, structure: Vec<(usize, usize, usize, String)>) -> PyResult<Self> {
        let triples = structure
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, parse_gq(c)?)))
            .collect::<Result<Vec<_>, HpError>>()
            .map_err(err)?;
        Ok(PyLieAlgebra(LieAlgebraData::from_triples(rank, &triples).map_err(err)?))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn jacobi_holds(&self) -> bool {
        self.0.jacobi_holds()
    }

    /// Linear Poisson structure on the dual.
    fn lie_poisson(&self) -> PyResult<PyMultivector> {
        Ok(PyMultivector(lie_poisson(&self.0).map_err(err)?))
    }

    fn realparts_check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &realparts_liealgebra_check(&self.0).map_err(err)?)
    }
}

/// The matched pair `T^{0,1} ⋈ (T^{1,0})*_π` of a holomorphic Poisson structure.
#[pyclass(name = "MatchedPair", module = "holopoisson", frozen)]
struct PyMatchedPair(MatchedPairData);

#[pymethods]
impl PyMatchedPair {
    #[staticmethod]
    fn canonical(pi: &PyMultivector) -> PyResult<Self> {
        Ok(PyMatchedPair(canonical_matched_pair(&pi.0).map_err(err)?))
    }

    #[getter]
    fn ranks(&self) -> (usize, usize) {
        (self.0.a.rank(), self.0.b.rank())
    }

    /// Whether the compatibility tensors `F`, `S`, `T` all vanish on frames.
    fn tensors_zero(&self) -> bool {
        compute_tensors(&self.0).is_zero()
    }

    /// Betti numbers of the truncated total complex; give exactly one bound.
    #[pyo3(signature = (weight = None, max_degree = None, method = "sparse"))]
    fn betti<'py>(
        &self,
        py: Python<'py>,
        weight: Option<u32>,
        max_degree: Option<u32>,
        method: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let tr = match (weight, max_degree) {
            (Some(w), None) => Truncation::Weight(w),
            (None, Some(d)) => Truncation::TotalDegree(d),
            _ => return Err(err(HpError::Truncation("give exactly one of weight, max_degree".into()))),
        };
        let rep = match method {
            "sparse" => betti(&self.0, tr),
            "oracle" => betti_oracle(&self.0, tr),
            _ => return Err(err(HpError::Parse(format!("unknown method `{method}`")))),
        };
        report(py, &rep.map_err(err)?)
    }
}

/// Yao isomorphism check for a holomorphic Poisson bivector.
#[pyfunction]
fn yao_check<'py>(py: Python<'py>, pi: &PyMultivector) -> PyResult<Bound<'py, PyAny>> {
    report(py, &yao_isomorphism_check(&pi.0).map_err(err)?)
}

/// Run the command line tool in process; returns `(exit code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = holopoisson::cli::run(std::iter::once("holopoisson".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn holopoisson_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HolopoissonError", m.py().get_type::<HolopoissonError>())?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyMultivector>()?;
    m.add_class::<PyLieAlgebra>()?;
    m.add_class::<PyMatchedPair>()?;
    m.add_function(wrap_pyfunction!(yao_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
