//! Python bindings for the `qsuper` crate.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use qsuper::hookcomb::{howe_dim_sum, supermatrix_monomial_count};
use qsuper::invariants::{classical_check, InvariantParams, InvariantTheory};
use qsuper::rmat_hecke::verify_hecke_relations;
use qsuper::{AlgebraPresentation, Laurent};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_u64() {
            Some(u) => u.into_pyobject(py)?.into_any(),
            None => n.as_i64().map_or_else(
                || n.as_f64().unwrap_or(f64::NAN).into_pyobject(py).map(|f| f.into_any()),
                |i| i.into_pyobject(py).map(|i| i.into_any()),
            )?,
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let list = PyList::empty(py);
            for x in a {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn report<'py, T: serde::Serialize>(py: Python<'py>, rep: &T) -> PyResult<Bound<'py, PyAny>> {
    let mut v = serde_json::to_value(rep).map_err(err)?;
    if let Some(o) = v.as_object_mut() {
        o.insert("schema".into(), 1.into());
    }
    to_py(py, &v)
}

/// Laurent polynomial in `q` with integer coefficients.
#[pyclass(name = "Laurent", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLaurent(Laurent);

#[pymethods]
impl PyLaurent {
    #[new]
    #[pyo3(signature = (text = "0"))]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyLaurent).map_err(err)
    }

    #[staticmethod]
    fn q(power: i32) -> Self {
        PyLaurent(Laurent::q_pow(power))
    }

    fn eval_q1(&self) -> num_bigint::BigInt {
        self.0.eval_q1()
    }

    fn bar(&self) -> Self {
        PyLaurent(self.0.bar())
    }

    fn __add__(&self, o: &Self) -> Self {
        PyLaurent(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyLaurent(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyLaurent(&self.0 * &o.0)
    }

    fn __neg__(&self) -> Self {
        PyLaurent(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Laurent('{}')", self.0)
    }
}

/// A presentation given by a spec such as `M:1,1,1,1` or `P:1,1,1,1,2,2`.
#[pyclass(name = "Presentation", frozen)]
struct PyPresentation(AlgebraPresentation);

#[pymethods]
impl PyPresentation {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        AlgebraPresentation::from_spec(spec).map(PyPresentation).map_err(err)
    }

    fn generators(&self) -> Vec<String> {
        self.0.generators().iter().map(|g| g.to_string()).collect()
    }

    fn normal_form(&self, element: &str) -> PyResult<String> {
        let e = self.0.parse_element(element).map_err(err)?;
        Ok(self.0.normal_form(&e).map_err(err)?.to_string())
    }

    fn multiply(&self, a: &str, b: &str) -> PyResult<String> {
        let a = self.0.parse_element(a).map_err(err)?;
        let b = self.0.parse_element(b).map_err(err)?;
        Ok(self.0.multiply(&a, &b).map_err(err)?.to_string())
    }

    fn graded_basis(&self, degree: usize) -> Vec<String> {
        self.0.graded_basis(degree).iter().map(|w| w.to_string()).collect()
    }

    fn verify_flatness<'py>(&self, py: Python<'py>, max_degree: usize) -> PyResult<Bound<'py, PyAny>> {
        report(py, &self.0.verify_flatness(max_degree))
    }

    #[pyo3(signature = (trials = 1000, seed = 0x5eed_0001))]
    fn associativity_trials<'py>(&self, py: Python<'py>, trials: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        report(py, &self.0.associativity_trials(trials, seed))
    }
}

/// `(monomial count, hook-shape sum)` for each size up to `max_size`.
#[pyfunction]
fn dims(k: usize, l: usize, r: usize, s: usize, max_size: usize) -> Vec<(u64, u64)> {
    (0..=max_size)
        .map(|n| (supermatrix_monomial_count(k, l, r, s, n), howe_dim_sum(k, l, r, s, n)))
        .collect()
}

fn theory(p: (usize, usize, usize, usize, usize, usize)) -> PyResult<InvariantTheory> {
    let prm = InvariantParams::new(p.0, p.1, p.2, p.3, p.4, p.5).map_err(err)?;
    InvariantTheory::new(prm).map_err(err)
}

#[pyfunction]
fn fft_check<'py>(
    py: Python<'py>,
    params: (usize, usize, usize, usize, usize, usize),
    max_degree: usize,
) -> PyResult<Bound<'py, PyAny>> {
    report(py, &theory(params)?.fft_check(max_degree).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (params, max_degree, minor_ideal = false))]
fn sft_check<'py>(
    py: Python<'py>,
    params: (usize, usize, usize, usize, usize, usize),
    max_degree: usize,
    minor_ideal: bool,
) -> PyResult<Bound<'py, PyAny>> {
    report(py, &theory(params)?.sft_check(max_degree, minor_ideal).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (k, l, r = 3))]
fn hecke_check<'py>(py: Python<'py>, k: usize, l: usize, r: usize) -> PyResult<Bound<'py, PyAny>> {
    report(py, &verify_hecke_relations(k, l, r).map_err(err)?)
}

#[pyfunction]
fn classical<'py>(py: Python<'py>, params: (usize, usize, usize, usize, usize, usize)) -> PyResult<Bound<'py, PyAny>> {
    let prm = InvariantParams::new(params.0, params.1, params.2, params.3, params.4, params.5).map_err(err)?;
    report(py, &classical_check(prm).map_err(err)?)
}

#[pymodule]
pub fn qsuper_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLaurent>()?;
    m.add_class::<PyPresentation>()?;
    m.add_function(wrap_pyfunction!(dims, m)?)?;
    m.add_function(wrap_pyfunction!(fft_check, m)?)?;
    m.add_function(wrap_pyfunction!(sft_check, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_check, m)?)?;
    m.add_function(wrap_pyfunction!(classical, m)?)?;
    Ok(())
}
