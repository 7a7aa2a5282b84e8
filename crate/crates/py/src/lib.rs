//! Python bindings: `import minorstress_py`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use minorstress::certify::{certify_with_seeds, replay_certificate, Certificate, CertifyOutcome, Verify};
use minorstress::minors::{check_mader, has_minor, is_linkless, mader_bound};
use minorstress::rigidity::analyze_rigidity;
use minorstress::shifting::{algebraic_shift, ShiftKind};
use minorstress::surface::{heawood_number, surface_obstruction, Genus};
use minorstress::{catalog, trial_seeds, Error, DEFAULT_SEED, DEFAULT_TRIALS};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidInput(_) | Error::Parse { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Graph", from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: minorstress::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: minorstress::Graph::from_edges(n, edges).map_err(to_py)? })
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph { inner: minorstress::Graph::complete(n) }
    }

    #[staticmethod]
    fn from_catalog(name: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: catalog::get(name).map_err(to_py)? })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: minorstress::Graph::parse_edge_list(text).map_err(to_py)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().map(|e| (e.u(), e.v())).collect()
    }

    fn digest(&self) -> String {
        self.inner.digest()
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn cone(&self) -> Self {
        PyGraph { inner: self.inner.cone() }
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, e={})", self.inner.n(), self.inner.edge_count())
    }
}

#[pyclass(name = "RigidityReport", get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyRigidityReport {
    d: usize,
    n: usize,
    e: usize,
    rank: usize,
    stress_dim: usize,
    target_rank: usize,
    is_stress_free: bool,
    is_rigid: bool,
    seeds: Vec<u64>,
    trial_ranks: Vec<usize>,
}

#[pyfunction]
#[pyo3(signature = (g, d, trials = DEFAULT_TRIALS, seed = DEFAULT_SEED))]
fn rigidity(g: &PyGraph, d: usize, trials: usize, seed: u64) -> PyResult<PyRigidityReport> {
    let r = analyze_rigidity(&g.inner, d, trials, seed).map_err(to_py)?;
    Ok(PyRigidityReport {
        d: r.d,
        n: r.n,
        e: r.e,
        rank: r.rank,
        stress_dim: r.stress_dim,
        target_rank: r.target_rank,
        is_stress_free: r.is_stress_free,
        is_rigid: r.is_rigid,
        seeds: r.seeds,
        trial_ranks: r.trial_ranks,
    })
}

/// Edges of the shifted graph; `kind` is "exterior" or "symmetric".
#[pyfunction]
#[pyo3(signature = (g, kind = "symmetric", trials = DEFAULT_TRIALS, seed = DEFAULT_SEED))]
fn shift(g: &PyGraph, kind: &str, trials: usize, seed: u64) -> PyResult<Vec<(usize, usize)>> {
    let kind: ShiftKind = kind.parse().map_err(to_py)?;
    let s = algebraic_shift(&g.inner, kind, trials, seed).map_err(to_py)?;
    Ok(s.edges().into_iter().map(|e| (e.u(), e.v())).collect())
}

/// Branch sets of a model of `h` in `g`, or None.
#[pyfunction]
fn find_minor(g: &PyGraph, h: &PyGraph) -> PyResult<Option<Vec<Vec<usize>>>> {
    Ok(has_minor(&g.inner, &h.inner).map_err(to_py)?.map(|w| w.branch_sets))
}

#[pyfunction]
fn linkless(g: &PyGraph) -> PyResult<bool> {
    Ok(is_linkless(&g.inner).map_err(to_py)?.linkless)
}

/// `("certificate", text)` or `("witness", branch_sets)`.
#[pyfunction]
#[pyo3(signature = (g, r, trials = DEFAULT_TRIALS, seed = DEFAULT_SEED))]
fn certify(py: Python<'_>, g: &PyGraph, r: usize, trials: usize, seed: u64) -> PyResult<(String, Py<PyAny>)> {
    let out = certify_with_seeds(&g.inner, r, &trial_seeds(seed, trials)).map_err(to_py)?;
    Ok(match out {
        CertifyOutcome::Certificate(c) => ("certificate".into(), c.to_text().into_pyobject(py)?.into_any().unbind()),
        CertifyOutcome::Witness(w) => ("witness".into(), w.branch_sets.into_pyobject(py)?.into_any().unbind()),
    })
}

/// Replays certificate text; `verify` is "structural", "leaves" or "deep".
#[pyfunction]
#[pyo3(signature = (g, certificate, verify = "leaves"))]
fn replay(g: &PyGraph, certificate: &str, verify: &str) -> PyResult<bool> {
    let c: Certificate = certificate.parse().map_err(to_py)?;
    let mode = match verify {
        "structural" => Verify::Structural,
        "leaves" => Verify::Leaves,
        "deep" => Verify::Deep,
        other => return Err(PyValueError::new_err(format!("unknown verify mode {other:?}"))),
    };
    Ok(replay_certificate(&g.inner, &c, mode).is_ok())
}

#[pyfunction]
fn heawood(genus: &str) -> PyResult<usize> {
    let g: Genus = genus.parse().map_err(to_py)?;
    heawood_number(g).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (g, genus, kind = "symmetric", trials = DEFAULT_TRIALS, seed = DEFAULT_SEED))]
fn surface_obstructed(g: &PyGraph, genus: &str, kind: &str, trials: usize, seed: u64) -> PyResult<bool> {
    let genus: Genus = genus.parse().map_err(to_py)?;
    let kind: ShiftKind = kind.parse().map_err(to_py)?;
    Ok(surface_obstruction(&g.inner, genus, kind, trials, seed).map_err(to_py)?.obstructed)
}

/// `(bound, passes)` for the edge bound of `K_r`-minor-free graphs.
#[pyfunction]
fn mader(g: &PyGraph, r: usize) -> PyResult<(i64, bool)> {
    Ok((mader_bound(r, g.inner.n()).map_err(to_py)?, check_mader(&g.inner, r).map_err(to_py)?))
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::list().into_iter().map(|e| e.name).collect()
}

#[pymodule]
fn minorstress_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyRigidityReport>()?;
    m.add_function(wrap_pyfunction!(rigidity, m)?)?;
    m.add_function(wrap_pyfunction!(shift, m)?)?;
    m.add_function(wrap_pyfunction!(find_minor, m)?)?;
    m.add_function(wrap_pyfunction!(linkless, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    m.add_function(wrap_pyfunction!(heawood, m)?)?;
    m.add_function(wrap_pyfunction!(surface_obstructed, m)?)?;
    m.add_function(wrap_pyfunction!(mader, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    Ok(())
}
