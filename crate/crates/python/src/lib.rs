//! Python bindings: tables, verdicts, family generation, genuineness and search.
//!
//! ```python
//! import ghz_paradox as g
//! t = g.Table.catalog("ghz-ququat-5")
//! assert t.verify().is_paradox
//! ```

use ghz_core::document::{parse_table, render_table, to_json};
use ghz_core::family::{self, FamilyParams};
use ghz_core::genuine::{check_dimensional, check_multipartite};
use ghz_core::lhv::state_independent_certificate;
use ghz_core::oracle::{oracle_verify, OracleConfig};
use ghz_core::search::{run_search, SearchResult, SearchSpec};
use ghz_core::{Dimension, Error, ParadoxTable};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(ghz_paradox, CapacityError, PyException, "A size guard was exceeded.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Capacity { .. } => CapacityError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn dim(d: u32) -> PyResult<Dimension> {
    Dimension::new(d).map_err(py_err)
}

/// Outcome of the symbolic paradox check.
#[pyclass(name = "Verdict", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyVerdict {
    pub commuting: bool,
    pub scalar_product: bool,
    pub classical_forced: bool,
    pub is_paradox: bool,
    /// Row-product phase exponent in units of `iπ/d`, if the product is scalar.
    pub phase_exp: Option<u32>,
    /// Why the table is not a paradox.
    pub failure: Option<String>,
}

impl From<ghz_core::Verdict> for PyVerdict {
    fn from(v: ghz_core::Verdict) -> Self {
        PyVerdict {
            commuting: v.commuting,
            scalar_product: v.scalar_product,
            classical_forced: v.classical_forced,
            is_paradox: v.is_paradox,
            phase_exp: v.quantum_phase.map(|p| p.exponent()),
            failure: v.failure_witness.map(|w| w.to_string()),
        }
    }
}

#[pymethods]
impl PyVerdict {
    fn __repr__(&self) -> String {
        format!(
            "Verdict(is_paradox={}, commuting={}, phase_exp={:?}, classical_forced={})",
            self.is_paradox, self.commuting, self.phase_exp, self.classical_forced
        )
    }
}

/// An `L × M` table of single-party words.
#[pyclass(name = "Table", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTable(pub ParadoxTable);

#[pymethods]
impl PyTable {
    /// Rows as whitespace-separated words, e.g. `["X X X", "X Y Y", ...]`.
    #[new]
    #[pyo3(signature = (d, rows, label = String::new()))]
    fn new(d: u32, rows: Vec<String>, label: String) -> PyResult<Self> {
        let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
        ParadoxTable::parse(dim(d)?, &rows, label).map(PyTable).map_err(py_err)
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        family::catalog_entry(name).map(PyTable).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_table(text).map(PyTable).map_err(py_err)
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }

    fn render(&self) -> String {
        render_table(&self.0)
    }

    #[getter]
    fn d(&self) -> u32 {
        self.0.dim().get()
    }

    #[getter]
    fn parties(&self) -> usize {
        self.0.parties()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label.clone()
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<String>> {
        self.0
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Table({:?}, d={}, M={}, L={})", self.0.label, self.0.dim(), self.0.parties(), self.0.len())
    }

    fn __eq__(&self, other: &PyTable) -> bool {
        self.0 == other.0
    }

    fn verify(&self) -> PyVerdict {
        ghz_core::verify(&self.0).into()
    }

    /// Same check with dense matrices; raises `CapacityError` above `d^M = 4096`.
    fn oracle_verify(&self) -> PyResult<PyVerdict> {
        oracle_verify(&self.0, &OracleConfig::from_env()).map(Into::into).map_err(py_err)
    }

    /// Proper party subsets (0-based) on which the table is already a paradox.
    fn reducing_subsets(&self) -> PyResult<Vec<Vec<usize>>> {
        check_multipartite(&self.0).map(|r| r.reducing_subsets).map_err(py_err)
    }

    fn is_genuine_multipartite(&self) -> PyResult<bool> {
        ghz_core::genuine::is_genuine_multipartite(&self.0).map_err(py_err)
    }

    /// Smallest local dimension realizing each column's commutation relations.
    fn min_dimensions(&self) -> Vec<u32> {
        check_dimensional(&self.0).per_column_min_dim
    }

    fn is_genuine_dimensional(&self) -> bool {
        check_dimensional(&self.0).genuine
    }

    /// Row weights of a classical refutation valid on every joint eigenstate.
    fn certificate(&self) -> Option<Vec<u32>> {
        state_independent_certificate(&self.0).map(|c| c.weights)
    }

    /// Lexicographically least form up to party and row order.
    fn canonical(&self) -> PyResult<Self> {
        ghz_core::search::canonical_form(&self.0).map(PyTable).map_err(py_err)
    }
}

/// One hit of a search.
#[pyclass(name = "SearchResult", frozen, get_all)]
pub struct PySearchResult {
    pub table: PyTable,
    /// Family parameters as a string, for family searches.
    pub params: Option<String>,
    pub is_paradox: bool,
    pub genuine: bool,
}

impl From<SearchResult> for PySearchResult {
    fn from(r: SearchResult) -> Self {
        PySearchResult {
            is_paradox: r.verdict.is_paradox,
            genuine: r.is_genuine(),
            params: r.params.map(|p| p.to_string()),
            table: PyTable(r.table),
        }
    }
}

#[pymethods]
impl PySearchResult {
    fn __repr__(&self) -> String {
        format!(
            "SearchResult({}, genuine={})",
            self.params.as_deref().unwrap_or(&self.table.0.label),
            self.genuine
        )
    }
}

fn params(d: u32, parties: usize, n: usize, q: usize, a: u32, b: u32, c: u32) -> PyResult<FamilyParams> {
    FamilyParams::from_segments(parties, dim(d)?, n, q, a, b, c)
        .ok_or_else(|| PyValueError::new_err("M - n - q must be even and non-negative (segment-lengths)"))
}

/// Names of the family conditions the parameters violate; empty when valid.
#[pyfunction]
#[pyo3(signature = (d, parties, n, a, b, c, q = 0))]
fn check_family(d: u32, parties: usize, n: usize, a: u32, b: u32, c: u32, q: usize) -> PyResult<Vec<String>> {
    let fp = params(d, parties, n, q, a, b, c)?;
    Ok(family::validate_params(&fp)
        .violated
        .iter()
        .map(|c| c.name().to_string())
        .collect())
}

#[pyfunction]
#[pyo3(signature = (d, parties, n, a, b, c, q = 0))]
fn generate(d: u32, parties: usize, n: usize, a: u32, b: u32, c: u32, q: usize) -> PyResult<PyTable> {
    family::generate(&params(d, parties, n, q, a, b, c)?).map(PyTable).map_err(py_err)
}

#[pyfunction]
fn generate_even_parties(d: u32) -> PyResult<PyTable> {
    family::generate_even_parties(dim(d)?).map(PyTable).map_err(py_err)
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    family::catalog_names()
}

/// Runs a bounded search; `mode` is `"family"` or `"exhaustive"`.
#[pyfunction]
#[pyo3(signature = (d_range, m_range, mode = "family", exp_max = None, max_rows = None))]
fn search(
    d_range: (u32, u32),
    m_range: (usize, usize),
    mode: &str,
    exp_max: Option<u32>,
    max_rows: Option<usize>,
) -> PyResult<Vec<PySearchResult>> {
    let mut spec = match mode {
        "family" => SearchSpec::family(d_range, m_range),
        "exhaustive" => SearchSpec::exhaustive(d_range, m_range),
        other => return Err(PyValueError::new_err(format!("unknown search mode `{other}`"))),
    };
    spec.exp_max = exp_max;
    spec.max_rows = max_rows;
    spec.validate().map_err(py_err)?;
    let results = run_search(&spec).map_err(py_err)?;
    Ok(results.into_iter().map(Into::into).collect())
}

#[pymodule]
fn ghz_paradox(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTable>()?;
    m.add_class::<PyVerdict>()?;
    m.add_class::<PySearchResult>()?;
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    m.add_function(wrap_pyfunction!(check_family, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(generate_even_parties, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
