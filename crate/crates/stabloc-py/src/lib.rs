//! Python bindings: graphs, reduction, pure LGME and noisy critical points.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use stabloc::io::{parse_pms, write_graph};
use stabloc::localizer::{self, LatticeSpec, Measure, NoisyProblem, SubsystemSpec};
use stabloc::reduction::{self, OutcomeKind};
use stabloc::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::NonTermination(_) | Error::Limit { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Graph", module = "stabloc")]
#[derive(Clone)]
struct PyGraph {
    inner: stabloc::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: stabloc::Graph::from_edges(n, &edges).map_err(err)? })
    }

    #[staticmethod]
    fn lattice(spec: &str) -> PyResult<Self> {
        let l: LatticeSpec = spec.parse().map_err(err)?;
        Ok(PyGraph { inner: l.graph().map_err(err)? })
    }

    #[getter]
    fn n_nodes(&self) -> usize {
        self.inner.n_nodes()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn has_edge(&self, i: usize, j: usize) -> bool {
        self.inner.has_edge(i, j)
    }

    fn local_complement(&self, i: usize) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.local_complement(i).map_err(err)? })
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.inner.n_nodes(), self.inner.edges())
    }
}

#[pyclass(name = "Reduction", module = "stabloc")]
struct PyReduction {
    inner: reduction::ReductionResult,
}

#[pymethods]
impl PyReduction {
    #[getter]
    fn s(&self) -> Vec<usize> {
        self.inner.regions.s.clone()
    }
    #[getter]
    fn s1(&self) -> Vec<usize> {
        self.inner.regions.s1.clone()
    }
    #[getter]
    fn s2(&self) -> Vec<usize> {
        self.inner.regions.s2.clone()
    }
    #[getter]
    fn op_count(&self) -> u64 {
        self.inner.op_count
    }
    #[getter]
    fn is_gamma(&self) -> bool {
        self.inner.is_gamma()
    }

    /// Edges of the post-measurement graph on S, relabelled 0..|S|.
    fn subgraph_on_s(&self) -> Vec<(usize, usize)> {
        self.inner.subgraph_on_s().edges()
    }

    /// (probability, forbidden) for an outcome bit string.
    fn outcome(&self, outcome: u64) -> PyResult<(f64, bool)> {
        let pm = reduction::measure_graph(&self.inner, outcome).map_err(err)?;
        Ok((pm.probability, pm.forbidden))
    }

    fn forbidden(&self) -> PyResult<Vec<u64>> {
        let c = reduction::classify_outcomes(&self.inner).map_err(err)?;
        Ok(match c.kind {
            OutcomeKind::Gamma => vec![],
            OutcomeKind::GammaBar => c.forbidden,
        })
    }

    fn reduced_text(&self) -> String {
        write_graph(&self.inner.reduced)
    }
}

/// Reduces `graph` for a setup written as "pms: 3:X 4:Y".
#[pyfunction]
fn reduce(graph: &PyGraph, pms: &str) -> PyResult<PyReduction> {
    let setup = parse_pms(pms, graph.inner.n_nodes()).map_err(err)?;
    Ok(PyReduction { inner: reduction::reduce(&graph.inner, &setup).map_err(err)? })
}

/// Best value over all setups on the complement of `s`, or None.
/// Returns (value, number of subgraphs, number of orbits).
#[pyfunction]
#[pyo3(signature = (graph, s, measure = "schmidt"))]
fn lgme(py: Python<'_>, graph: &PyGraph, s: Vec<usize>, measure: &str) -> PyResult<(Option<f64>, usize, usize)> {
    let m = match measure {
        "schmidt" => Measure::Schmidt,
        "ggm" => Measure::Ggm,
        _ => return Err(PyValueError::new_err(format!("unknown measure {measure:?}"))),
    };
    let g = graph.inner.clone();
    let r = py.allow_threads(|| localizer::lgme_pure(&g, &s, m)).map_err(err)?;
    Ok((r.value, r.census.m(), r.orbits.len()))
}

#[pyclass(name = "NoisyProblem", module = "stabloc")]
struct PyNoisyProblem {
    inner: NoisyProblem,
}

#[pymethods]
impl PyNoisyProblem {
    /// `lattice` like "linear:8" or "toric:3", `subsystem` like "line:bulk" or "loops:1".
    #[new]
    fn new(lattice: &str, subsystem: &str) -> PyResult<Self> {
        let l: LatticeSpec = lattice.parse().map_err(err)?;
        let s: SubsystemSpec = subsystem.parse().map_err(err)?;
        Ok(PyNoisyProblem { inner: localizer::placement_problem(&l, &s).map_err(err)? })
    }

    /// Criterion margin at (q, ε); positive means entangled.
    fn margin(&self, kind: &str, q: f64, eps: f64) -> PyResult<f64> {
        self.inner.margin(kind.parse().map_err(err)?, q, eps).map_err(err)
    }

    /// Diagonal λ of the localized state at (q, ε).
    fn lambdas(&self, kind: &str, q: f64, eps: f64) -> PyResult<Vec<f64>> {
        let spec = stabloc::ChannelSpec::new(kind.parse().map_err(err)?, q, eps).map_err(err)?;
        Ok(self.inner.state(&spec).map_err(err)?.lambdas)
    }

    fn critical_noise(&self, py: Python<'_>, kind: &str, eps: f64) -> PyResult<f64> {
        let k = kind.parse().map_err(err)?;
        py.allow_threads(|| localizer::critical_noise(&self.inner, k, eps)).map_err(err)
    }
}

/// [`lgme`] on a named lattice, e.g. ("square:4", "plaquette:corner"); the
/// census merges the lattice's natural labellings.
#[pyfunction]
#[pyo3(signature = (lattice, subsystem, measure = "schmidt"))]
fn lgme_lattice(py: Python<'_>, lattice: &str, subsystem: &str, measure: &str) -> PyResult<(Option<f64>, usize, usize)> {
    let m = match measure {
        "schmidt" => Measure::Schmidt,
        "ggm" => Measure::Ggm,
        _ => return Err(PyValueError::new_err(format!("unknown measure {measure:?}"))),
    };
    let l: LatticeSpec = lattice.parse().map_err(err)?;
    let sub: SubsystemSpec = subsystem.parse().map_err(err)?;
    let s = sub.nodes(&l).map_err(err)?;
    let g = l.graph().map_err(err)?;
    let r = py.allow_threads(|| localizer::lgme_over(&g, &s, m, &l.labellings())).map_err(err)?;
    Ok((r.value, r.census.m(), r.orbits.len()))
}

#[pymodule]
fn stabloc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyReduction>()?;
    m.add_class::<PyNoisyProblem>()?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(lgme, m)?)?;
    m.add_function(wrap_pyfunction!(lgme_lattice, m)?)?;
    Ok(())
}
