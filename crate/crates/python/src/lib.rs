//! Python bindings. Structured results (certificates, induced data, box
//! reports) are returned as plain dicts.

use bs_twist::homs::{endo_validate_with_window, DEFAULT_WINDOW};
use bs_twist::reidemeister::{coker_order, snf as snf_core, IntMatrix};
use bs_twist::{
    are_equal, coincidence_certify, enumerate_classes_ball, kappa, kernel_decompose, normal_form, parse_word,
    selftest, EndoSpec, Error, GroupSpec, ModelFamily, Word,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(bs_twist_py, BsTwistError, PyException);

fn to_py(e: Error) -> PyErr {
    if e.is_usage() {
        PyValueError::new_err(format!("{} ({})", e, e.code()))
    } else {
        BsTwistError::new_err(format!("{} ({})", e, e.code()))
    }
}

fn word(text: &str) -> PyResult<Word> {
    parse_word(text).map_err(to_py)
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (value.to_string(),))?.unbind())
}

/// The group B(m,n) = <a, b | a^-1 b^m a = b^n>.
#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: GroupSpec,
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(m: i64, n: i64) -> PyResult<Self> {
        Ok(PyGroup { inner: GroupSpec::new(m, n).map_err(to_py)? })
    }

    #[getter]
    fn m(&self) -> i64 {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> i64 {
        self.inner.n()
    }

    fn relator(&self) -> String {
        self.inner.relator().to_string()
    }

    fn normal_form(&self, w: &str) -> PyResult<String> {
        Ok(normal_form(&word(w)?, &self.inner).to_string())
    }

    fn equal(&self, u: &str, v: &str) -> PyResult<bool> {
        Ok(are_equal(&word(u)?, &word(v)?, &self.inner))
    }

    /// (target group, image of a, image of b) of the standardizing isomorphism.
    fn standardize(&self) -> (PyGroup, String, String) {
        let st = self.inner.standardize();
        (PyGroup { inner: st.target }, st.image_a().to_string(), st.image_b().to_string())
    }

    /// The element of the faithful model, as text.
    fn embed(&self, w: &str) -> PyResult<String> {
        let family = ModelFamily::for_group(&self.inner).map_err(to_py)?;
        Ok(family.embed(&word(w)?).map_err(to_py)?.to_string())
    }

    /// [(i, e)] with w = prod g_i^e, g_i = a^-i b a^i.
    fn kernel_decompose(&self, w: &str) -> PyResult<Vec<(i64, String)>> {
        let d = kernel_decompose(&word(w)?, &self.inner).map_err(to_py)?;
        Ok(d.terms.iter().map(|(i, e)| (*i, e.to_string())).collect())
    }

    /// kappa as a string such as "3/2".
    fn kappa(&self, w: &str) -> PyResult<String> {
        Ok(kappa(&word(w)?, &self.inner).map_err(to_py)?.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Group({}, {})", self.inner.m(), self.inner.n())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// An endomorphism given by the images of a and b.
#[pyclass(name = "Endomorphism", frozen)]
struct PyEndo {
    inner: EndoSpec,
}

#[pymethods]
impl PyEndo {
    #[new]
    fn new(group: &PyGroup, a: &str, b: &str) -> PyResult<Self> {
        Ok(PyEndo { inner: EndoSpec::new(group.inner, word(a)?, word(b)?) })
    }

    /// Parses the spec-file format (`group m n`, `a -> w`, `b -> w`).
    #[staticmethod]
    fn from_spec(text: &str) -> PyResult<Self> {
        Ok(PyEndo { inner: EndoSpec::parse(text).map_err(to_py)? })
    }

    #[staticmethod]
    fn identity(group: &PyGroup) -> Self {
        PyEndo { inner: EndoSpec::identity(group.inner) }
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup { inner: *self.inner.group() }
    }

    fn is_valid(&self) -> bool {
        self.inner.is_valid()
    }

    fn apply(&self, w: &str) -> PyResult<String> {
        Ok(self.inner.apply(&word(w)?).map_err(to_py)?.to_string())
    }

    /// Induced maps and diagnostics; raises if the map is not an endomorphism.
    #[pyo3(signature = (window = DEFAULT_WINDOW))]
    fn induced(&self, py: Python<'_>, window: u32) -> PyResult<Py<PyAny>> {
        let data = endo_validate_with_window(&self.inner, window).map_err(to_py)?;
        json_to_py(py, &data.to_json())
    }

    /// Outcome of the infinite-class certificate search against `psi`
    /// (identity by default).
    #[pyo3(signature = (psi = None))]
    fn certify(&self, py: Python<'_>, psi: Option<&PyEndo>) -> PyResult<Py<PyAny>> {
        let identity = EndoSpec::identity(*self.inner.group());
        let psi = psi.map_or(&identity, |p| &p.inner);
        let outcome = coincidence_certify(&self.inner, psi).map_err(to_py)?;
        json_to_py(py, &outcome.to_json())
    }

    /// Twisted classes in a box of the faithful model, e.g. bounds="u=64,v=8".
    #[pyo3(signature = (psi = None, bounds = None, margin = 2, jobs = 1))]
    fn enumerate(
        &self,
        py: Python<'_>,
        psi: Option<&PyEndo>,
        bounds: Option<&str>,
        margin: u32,
        jobs: usize,
    ) -> PyResult<Py<PyAny>> {
        let identity = EndoSpec::identity(*self.inner.group());
        let psi = psi.map_or(&identity, |p| &p.inner);
        let bounds = bounds.map(str::parse).transpose().map_err(to_py)?;
        let report =
            enumerate_classes_ball(self.inner.group(), &self.inner, psi, bounds.as_ref(), margin, jobs).map_err(to_py)?;
        json_to_py(py, &report.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Endomorphism({}, a -> {}, b -> {})", self.inner.group(), self.inner.image_a(), self.inner.image_b())
    }
}

type TextMatrix = Vec<Vec<String>>;

/// Smith normal form: (diagonal, U, V, cokernel order) with U M V = D.
#[pyfunction]
fn snf(rows: Vec<Vec<i64>>) -> PyResult<(Vec<String>, TextMatrix, TextMatrix, String)> {
    let m = IntMatrix::from_rows(&rows).map_err(to_py)?;
    let s = snf_core(&m);
    let text = |x: &IntMatrix| x.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    Ok((s.diagonal.iter().map(ToString::to_string).collect(), text(&s.u), text(&s.v), coker_order(&m).to_string()))
}

/// Runs the acceptance checks; returns [(id, name, passed, detail)].
#[pyfunction]
#[pyo3(signature = (seed = 0, criterion = None))]
fn run_selftest(seed: u64, criterion: Option<u32>) -> PyResult<Vec<(u32, String, bool, String)>> {
    let results = match criterion {
        Some(id) => vec![selftest::run_criterion(id, seed)
            .ok_or_else(|| PyValueError::new_err(format!("no criterion {id}")))?],
        None => selftest::run_all(seed),
    };
    Ok(results.into_iter().map(|r| (r.id, r.name.to_string(), r.passed, r.detail)).collect())
}

#[pymodule]
fn bs_twist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyEndo>()?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    m.add("BsTwistError", m.py().get_type::<BsTwistError>())?;
    Ok(())
}
