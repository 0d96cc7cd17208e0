use std::sync::Arc;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use korb_core::cli::{self, Format};
use korb_core::{KorbError, LaurentError, WeightVector};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_format(format: &str) -> PyResult<Format> {
    match format {
        "text" => Ok(Format::Text),
        "json" => Ok(Format::Json),
        "latex" => Ok(Format::Latex),
        other => Err(value_error(format!("unknown format {other:?}"))),
    }
}

/// Integer Laurent polynomial in `u`.
#[pyclass(name = "LaurentPoly", module = "korb", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyLaurent(korb_core::LaurentPoly);

#[pymethods]
impl PyLaurent {
    #[new]
    #[pyo3(signature = (text = "0"))]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(|e: LaurentError| value_error(e))
    }

    /// `1 - u^-weight`.
    #[staticmethod]
    fn euler_class(weight: i64) -> PyResult<Self> {
        korb_core::LaurentPoly::euler_class(weight)
            .map(Self)
            .map_err(value_error)
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    fn terms(&self) -> Vec<(i64, BigInt)> {
        self.0.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn latex(&self) -> String {
        self.0.to_latex()
    }

    /// `(coefficients, shift, sign)` of the normalized polynomial.
    fn normalize(&self) -> PyResult<(Vec<BigInt>, i64, i8)> {
        let n = self.0.normalize().map_err(value_error)?;
        Ok((n.coeffs().to_vec(), n.shift(), n.sign()))
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly('{}')", self.0)
    }
}

/// Orbifold K-theory ring of the weighted projective space with the given
/// weights.
#[pyclass(name = "KOrbRing", module = "korb", frozen)]
struct PyRing(Arc<korb_core::KOrbRing>);

#[pymethods]
impl PyRing {
    #[new]
    fn new(weights: Vec<i64>) -> PyResult<Self> {
        let weights = WeightVector::new(&weights).map_err(value_error)?;
        korb_core::KOrbRing::new(weights)
            .map(|r| Self(Arc::new(r)))
            .map_err(value_error)
    }

    #[getter]
    fn ell(&self) -> usize {
        self.0.ell()
    }

    #[getter]
    fn weights(&self) -> Vec<u64> {
        self.0.weights().as_slice().to_vec()
    }

    fn ranks(&self) -> Vec<usize> {
        self.0.ranks()
    }

    fn total_rank(&self) -> usize {
        self.0.total_rank()
    }

    fn logweight(&self, k: usize, s: usize) -> PyResult<(usize, usize)> {
        self.check(s)?;
        if k >= self.0.data().coordinates() {
            return Err(value_error(format!("coordinate {k} out of range")));
        }
        Ok(self.0.data().logweight(k, s))
    }

    fn kernel_generator(&self, s: usize) -> PyResult<PyLaurent> {
        Ok(PyLaurent(self.0.sector(s).map_err(value_error)?.generator().clone()))
    }

    fn structure_coefficient(&self, s: usize, t: usize) -> PyResult<PyLaurent> {
        self.check(s)?;
        self.check(t)?;
        Ok(PyLaurent(self.0.data().structure_coefficient(s, t)))
    }

    /// Canonical residue of `poly` in sector `s`.
    fn reduce(&self, s: usize, poly: &PyLaurent) -> PyResult<PyLaurent> {
        self.0.reduce(s, &poly.0).map(PyLaurent).map_err(value_error)
    }

    /// Element from a `"s:<poly>;s:<poly>"` spec.
    fn element(&self, spec: &str) -> PyResult<PyElement> {
        let x = self.0.parse_element(spec).map_err(value_error)?;
        Ok(PyElement {
            ring: Arc::clone(&self.0),
            value: x,
        })
    }

    fn one(&self) -> PyElement {
        PyElement {
            ring: Arc::clone(&self.0),
            value: self.0.one(),
        }
    }

    fn generator(&self, s: usize) -> PyResult<PyElement> {
        Ok(PyElement {
            ring: Arc::clone(&self.0),
            value: self.0.generator(s).map_err(value_error)?,
        })
    }

    /// `(s, t, target, coefficient)` for every `s <= t`, unreduced.
    fn generator_table(&self) -> Vec<(usize, usize, usize, PyLaurent)> {
        self.0
            .generator_table()
            .into_iter()
            .map(|r| (r.left, r.right, r.target, PyLaurent(r.coefficient)))
            .collect()
    }

    fn presentation(&self) -> String {
        self.0.presentation().to_string()
    }

    fn torsion_free(&self) -> bool {
        self.0.torsion_report().passed()
    }

    /// `(passed, summary)`.
    #[pyo3(signature = (trials = 500, seed = 0))]
    fn verify(&self, py: Python<'_>, trials: usize, seed: u64) -> PyResult<(bool, String)> {
        if trials == 0 {
            return Err(value_error("trials must be at least 1"));
        }
        let ring = Arc::clone(&self.0);
        let report = py.detach(move || ring.verify(trials, seed));
        Ok((report.passed(), report.summary()))
    }

    /// Renders one of `chart`, `table`, `kernels`, `present`, `rank`,
    /// `torsion` in `text`, `json` or `latex`.
    #[pyo3(signature = (kind, format = "text"))]
    fn render(&self, kind: &str, format: &str) -> PyResult<String> {
        let format = parse_format(format)?;
        let w = self.0.weights();
        let doc = match kind {
            "chart" => cli::cmd_chart(w, format),
            "table" => cli::cmd_table(w, format),
            "kernels" => cli::cmd_kernels(w, format),
            "present" => cli::cmd_present(w, format),
            "rank" => cli::cmd_rank(w, format),
            "torsion" => cli::cmd_torsion(w, format),
            other => return Err(value_error(format!("unknown document kind {other:?}"))),
        };
        doc.map(|d| d.body).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("KOrbRing([{}])", self.0.weights())
    }
}

impl PyRing {
    fn check(&self, s: usize) -> PyResult<()> {
        self.0.sector(s).map(|_| ()).map_err(value_error)
    }
}

/// Element of a [`KOrbRing`], one reduced residue per sector.
#[pyclass(name = "Element", module = "korb", frozen)]
struct PyElement {
    ring: Arc<korb_core::KOrbRing>,
    value: korb_core::KOrbElement,
}

impl PyElement {
    fn wrap(&self, r: Result<korb_core::KOrbElement, KorbError>) -> PyResult<Self> {
        Ok(Self {
            ring: Arc::clone(&self.ring),
            value: r.map_err(value_error)?,
        })
    }
}

#[pymethods]
impl PyElement {
    fn components(&self) -> Vec<PyLaurent> {
        self.value.components().iter().cloned().map(PyLaurent).collect()
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.wrap(self.ring.add(&self.value, &other.value))
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.wrap(self.ring.sub(&self.value, &other.value))
    }

    /// The twisted product.
    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.wrap(self.ring.star_multiply(&self.value, &other.value))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.value == other.value
    }

    fn __str__(&self) -> String {
        self.value.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}')", self.value)
    }
}

#[pymodule]
fn korb(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLaurent>()?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyElement>()?;
    Ok(())
}
