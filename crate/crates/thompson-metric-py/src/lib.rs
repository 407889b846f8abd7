//! Python bindings for the thompson-metric crate.
//!
//! Exposes the tree-pair diagram type with its group operations and
//! geodesic length, plus module-level helpers for breadth-first metric
//! verification, dead-end searches, and the seesaw family.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use thompson_metric::cayley::{bfs_ball, find_dead_ends, verify_metric, DEFAULT_NODE_CAP};
use thompson_metric::diagram::{evaluate_word, letter_diagram, TreePairDiagram};
use thompson_metric::error::Error;
use thompson_metric::families::{
    is_dead_end, seesaw_normal_form, seesaw_word, verify_seesaw, SeesawParams,
};
use thompson_metric::metric::word_length;
use thompson_metric::plmap::diagram_to_map;
use thompson_metric::tree::GroupParams;
use thompson_metric::words::{GeneratorLetter, GroupWord};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Parse(_)
        | Error::InvalidDiagram(_)
        | Error::IllegalPairing(_, _)
        | Error::Precondition(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn group_params(p: usize) -> PyResult<GroupParams> {
    GroupParams::new(p).map_err(to_py_err)
}

/// A reduced tree-pair diagram: one element of the group of
/// piecewise-linear homeomorphisms of [0, 1] with breakpoints in
/// Z[1/(p+1)] and slopes powers of p+1.
#[pyclass(frozen, name = "Diagram", module = "thompson_metric_py")]
struct PyDiagram {
    inner: TreePairDiagram,
}

#[pymethods]
impl PyDiagram {
    /// Evaluate a word in the generators, e.g. `Diagram("0 1^-1", p=2)`.
    #[new]
    #[pyo3(signature = (word = "", p = 1))]
    fn new(word: &str, p: usize) -> PyResult<Self> {
        let params = group_params(p)?;
        let w = GroupWord::parse(word).map_err(to_py_err)?;
        Ok(PyDiagram { inner: evaluate_word(params, &w) })
    }

    /// Parse a serialized diagram, e.g. `p=1;neg=(..);pos=(..)`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let d = TreePairDiagram::parse(text).map_err(to_py_err)?;
        Ok(PyDiagram { inner: d.reduce() })
    }

    /// The parameter p; the group acts with arity p + 1.
    #[getter]
    fn p(&self) -> usize {
        self.inner.params().p
    }

    /// Group product; the left factor's map is applied second.
    fn mul(&self, other: &PyDiagram) -> PyResult<PyDiagram> {
        if self.inner.params() != other.inner.params() {
            return Err(PyValueError::new_err(format!(
                "parameter mismatch: p={} vs p={}",
                self.inner.params().p,
                other.inner.params().p
            )));
        }
        Ok(PyDiagram { inner: self.inner.multiply(&other.inner) })
    }

    fn __mul__(&self, other: &PyDiagram) -> PyResult<PyDiagram> {
        self.mul(other)
    }

    /// Group inverse (swaps the two trees).
    fn inv(&self) -> PyDiagram {
        PyDiagram { inner: self.inner.inverse() }
    }

    fn __invert__(&self) -> PyDiagram {
        self.inv()
    }

    /// Geodesic word length in the standard generators, computed from
    /// the caret-pair weight table.
    fn word_length(&self) -> PyResult<u64> {
        Ok(word_length(&self.inner).map_err(to_py_err)?.total)
    }

    /// Canonical serialization; equal elements share one key.
    fn canonical_key(&self) -> String {
        self.inner.canonical_key()
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    /// True iff no letter multiplication increases the length.
    fn is_dead_end(&self) -> PyResult<bool> {
        is_dead_end(&self.inner).map_err(to_py_err)
    }

    /// Breakpoints of the underlying PL map as `(x, f(x))` fraction
    /// strings, endpoints included.
    fn breakpoints(&self) -> Vec<(String, String)> {
        diagram_to_map(&self.inner)
            .breakpoints()
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect()
    }

    fn __eq__(&self, other: &PyDiagram) -> bool {
        self.inner.params() == other.inner.params()
            && self.inner.canonical_key() == other.inner.canonical_key()
    }

    fn __hash__(&self) -> u64 {
        use std::collections::hash_map::DefaultHasher;
        use std::hash::{Hash, Hasher};
        let mut h = DefaultHasher::new();
        self.inner.canonical_key().hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("Diagram.parse({:?})", self.inner.canonical_key())
    }
}

/// The generator x_index (or its inverse) as a diagram.
#[pyfunction]
#[pyo3(signature = (p, index, inverse = false))]
fn generator(p: usize, index: usize, inverse: bool) -> PyResult<PyDiagram> {
    let params = group_params(p)?;
    let letter = if inverse {
        GeneratorLetter::inv(index)
    } else {
        GeneratorLetter::new(index)
    };
    Ok(PyDiagram { inner: letter_diagram(params, letter) })
}

/// Length of the element a word evaluates to.
#[pyfunction]
#[pyo3(name = "word_length", signature = (word, p = 1))]
fn word_length_py(word: &str, p: usize) -> PyResult<u64> {
    PyDiagram::new(word, p)?.word_length()
}

/// Check the length formula against breadth-first search over the whole
/// radius-`radius` ball; returns the ball size, raises on any mismatch.
#[pyfunction]
fn verify_metric_ball(p: usize, radius: u32) -> PyResult<usize> {
    let ball = bfs_ball(group_params(p)?, radius, DEFAULT_NODE_CAP).map_err(to_py_err)?;
    let mismatches = verify_metric(&ball).map_err(to_py_err)?;
    if let Some(m) = mismatches.first() {
        return Err(PyRuntimeError::new_err(format!(
            "{} mismatches; first at {}: bfs {} vs computed {}",
            mismatches.len(),
            m.key,
            m.bfs_distance,
            m.computed_length
        )));
    }
    Ok(ball.len())
}

/// Canonical keys of all dead ends certified inside the radius-`radius`
/// ball (elements of length at most radius - 1).
#[pyfunction]
fn dead_end_census(p: usize, radius: u32) -> PyResult<Vec<String>> {
    let ball = bfs_ball(group_params(p)?, radius, DEFAULT_NODE_CAP).map_err(to_py_err)?;
    find_dead_ends(&ball).map_err(to_py_err)
}

/// Build the seesaw element for (p, m, n) and verify it swings with the
/// given k: returns (normal form, length, [(q, |w x_0^q|)], ok).
#[pyfunction]
fn seesaw_profile(
    p: usize,
    m: u32,
    n: u32,
    k: u32,
) -> PyResult<(String, u64, Vec<(i64, u64)>, bool)> {
    if k == 0 {
        return Err(PyValueError::new_err("k must be at least 1"));
    }
    let sp = SeesawParams::new(p, m, n, k).map_err(to_py_err)?;
    let w = seesaw_word(&sp).map_err(to_py_err)?;
    let verdict = verify_seesaw(&w, GeneratorLetter::new(0), k).map_err(to_py_err)?;
    let length = word_length(&w).map_err(to_py_err)?.total;
    Ok((
        seesaw_normal_form(&sp).to_string(),
        length,
        verdict.profile,
        verdict.ok,
    ))
}

#[pymodule]
fn thompson_metric_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add_function(wrap_pyfunction!(generator, m)?)?;
    m.add_function(wrap_pyfunction!(word_length_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_metric_ball, m)?)?;
    m.add_function(wrap_pyfunction!(dead_end_census, m)?)?;
    m.add_function(wrap_pyfunction!(seesaw_profile, m)?)?;
    Ok(())
}
