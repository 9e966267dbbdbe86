//! Python bindings: posets, graphs and colorings, the generators, the exact
//! oracles and the realizer pipeline.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use posetdim::realizer::PartitionOptions;
use posetdim::reversal::RealizerVerdict;
use posetdim::{coloring, formats, generators, oracle, realizer, reversal, Error, LinearExtension};

create_exception!(posetdim_py, CertificationError, PyException, "A runtime certification check failed.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Certification(c) => CertificationError::new_err(format!("{}: {c}", c.check_name())),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn extensions(orders: Vec<Vec<usize>>) -> Vec<LinearExtension> {
    orders.into_iter().map(LinearExtension).collect()
}

fn orders(exts: Vec<LinearExtension>) -> Vec<Vec<usize>> {
    exts.into_iter().map(|e| e.0).collect()
}

#[pyclass(module = "posetdim_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Graph {
    inner: posetdim::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Graph {
            inner: posetdim::Graph::new(n, &edges).map_err(to_py)?,
        })
    }

    /// A named graph such as `K5`, `C7`, `P4`, `star5`, `grid2x3` or `petersen`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        Ok(Graph {
            inner: generators::named_graph(name).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Graph {
            inner: formats::parse_graph(text).map_err(to_py)?,
        })
    }

    fn to_text(&self) -> String {
        formats::write_graph(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.len(), self.inner.edge_count())
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        posetdim::Error::check_id(v, self.inner.len()).map_err(to_py)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn girth(&self) -> Option<usize> {
        self.inner.girth()
    }

    fn distance(&self, u: usize, v: usize) -> PyResult<Option<usize>> {
        self.inner.distance(u, v).map_err(to_py)
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    /// Greatest reduced average density at depth `r`, as a `fractions.Fraction`.
    fn grad<'py>(&self, py: Python<'py>, r: usize) -> PyResult<Bound<'py, PyAny>> {
        let value = self.inner.grad(r).map_err(to_py)?;
        py.import("fractions")?
            .getattr("Fraction")?
            .call1((*value.numer(), *value.denom()))
    }
}

#[pyclass(module = "posetdim_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Poset {
    inner: posetdim::Poset,
}

#[pymethods]
impl Poset {
    /// `relations` are pairs `(a, b)` meaning `a < b`; any generating set works.
    #[new]
    fn new(n: usize, relations: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Poset {
            inner: posetdim::Poset::from_relations(n, &relations).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Poset {
            inner: formats::parse_poset(text).map_err(to_py)?,
        })
    }

    fn to_text(&self) -> String {
        formats::write_poset(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Poset(n={}, height={})", self.inner.len(), self.inner.height())
    }

    fn label(&self, x: usize) -> PyResult<Option<String>> {
        posetdim::Error::check_id(x, self.inner.len()).map_err(to_py)?;
        Ok(self.inner.label(x).map(str::to_owned))
    }

    fn leq(&self, x: usize, y: usize) -> PyResult<bool> {
        self.inner.try_leq(x, y).map_err(to_py)
    }

    fn lt(&self, x: usize, y: usize) -> PyResult<bool> {
        Ok(x != y && self.leq(x, y)?)
    }

    fn incomparable(&self, x: usize, y: usize) -> PyResult<bool> {
        Ok(!self.leq(x, y)? && !self.leq(y, x)?)
    }

    fn height(&self) -> usize {
        self.inner.height()
    }

    fn heights(&self) -> Vec<usize> {
        self.inner.heights().to_vec()
    }

    fn covers(&self) -> Vec<(usize, usize)> {
        self.inner.covers()
    }

    fn cover_graph(&self) -> Graph {
        Graph {
            inner: self.inner.cover_graph(),
        }
    }

    fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        self.inner.incomparable_pairs()
    }

    fn critical_pairs(&self) -> Vec<(usize, usize)> {
        self.inner.critical_pairs()
    }

    fn induced(&self, elements: Vec<usize>) -> PyResult<Poset> {
        Ok(Poset {
            inner: self.inner.induced(&elements).map_err(to_py)?,
        })
    }
}

#[pyclass(module = "posetdim_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Coloring {
    inner: posetdim::Coloring,
}

#[pymethods]
impl Coloring {
    #[new]
    #[pyo3(signature = (colors, color_count=None))]
    fn new(colors: Vec<usize>, color_count: Option<usize>) -> PyResult<Self> {
        let inner = match color_count {
            Some(c) => posetdim::Coloring::with_count(colors, c).map_err(to_py)?,
            None => posetdim::Coloring::new(colors),
        };
        Ok(Coloring { inner })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Coloring {
            inner: formats::parse_coloring(text).map_err(to_py)?,
        })
    }

    fn to_text(&self) -> String {
        formats::write_coloring(&self.inner)
    }

    #[getter]
    fn colors(&self) -> Vec<usize> {
        self.inner.colors().to_vec()
    }

    #[getter]
    fn color_count(&self) -> usize {
        self.inner.color_count()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Coloring(n={}, colors={})", self.inner.len(), self.inner.color_count())
    }
}

/// Output of the reversible partition pipeline.
#[pyclass(module = "posetdim_py", frozen, get_all)]
struct Realization {
    height: usize,
    colors: usize,
    signatures: usize,
    fingerprints: usize,
    /// `(key, pairs)` per class, keys like `sigma-set=0,3 v=01`.
    classes: Vec<(String, Vec<(usize, usize)>)>,
    realizer: Vec<Vec<usize>>,
    coloring_verified: bool,
}

#[pymethods]
impl Realization {
    fn __len__(&self) -> usize {
        self.classes.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Realization(classes={}, height={}, colors={})",
            self.classes.len(),
            self.height,
            self.colors
        )
    }
}

#[pyfunction]
fn standard_example(d: usize) -> PyResult<Poset> {
    Ok(Poset {
        inner: generators::standard_example(d).map_err(to_py)?,
    })
}

#[pyfunction]
fn kelly(d: usize) -> PyResult<Poset> {
    Ok(Poset {
        inner: generators::kelly(d).map_err(to_py)?,
    })
}

#[pyfunction]
fn incidence_poset(g: &Graph) -> Poset {
    Poset {
        inner: generators::incidence_poset(&g.inner),
    }
}

#[pyfunction]
fn adjacency_poset(g: &Graph) -> Poset {
    Poset {
        inner: generators::adjacency_poset(&g.inner),
    }
}

#[pyfunction]
fn chain(n: usize) -> PyResult<Poset> {
    Ok(Poset {
        inner: generators::chain(n).map_err(to_py)?,
    })
}

#[pyfunction]
fn antichain(n: usize) -> PyResult<Poset> {
    Ok(Poset {
        inner: generators::antichain(n).map_err(to_py)?,
    })
}

#[pyfunction]
fn boolean_lattice(n: usize) -> PyResult<Poset> {
    Ok(Poset {
        inner: generators::boolean_lattice(n).map_err(to_py)?,
    })
}

#[pyfunction]
fn random_poset(n: usize, density: f64, seed: u64) -> PyResult<Poset> {
    if !(0.0..=1.0).contains(&density) {
        return Err(PyValueError::new_err("density must lie in [0, 1]"));
    }
    Ok(Poset {
        inner: generators::random_poset(n, density, seed),
    })
}

/// `(dimension, realizer)` with a realizer of minimum size.
#[pyfunction]
#[pyo3(signature = (p, max_n=oracle::DIMENSION_MAX_ELEMENTS))]
fn exact_dimension(py: Python<'_>, p: &Poset, max_n: usize) -> PyResult<(usize, Vec<Vec<usize>>)> {
    let cert = py
        .detach(|| oracle::exact_dimension_capped(&p.inner, max_n))
        .map_err(to_py)?;
    Ok((cert.value, orders(cert.realizer)))
}

#[pyfunction]
fn dimension_by_extensions(p: &Poset) -> PyResult<usize> {
    oracle::dimension_by_extensions(&p.inner).map_err(to_py)
}

#[pyfunction]
fn exact_chromatic_number(g: &Graph) -> PyResult<(usize, Coloring)> {
    let (value, inner) = oracle::exact_chromatic_number(&g.inner).map_err(to_py)?;
    Ok((value, Coloring { inner }))
}

/// `(a, b)` element lists of an induced standard example, or `None`.
#[pyfunction]
fn contains_standard_example(p: &Poset, d: usize) -> PyResult<Option<(Vec<usize>, Vec<usize>)>> {
    Ok(oracle::contains_standard_example(&p.inner, d)
        .map_err(to_py)?
        .map(|w| (w.a, w.b)))
}

#[pyfunction]
fn is_p_centered(g: &Graph, col: &Coloring, p: usize) -> PyResult<bool> {
    Ok(coloring::is_p_centered(&g.inner, &col.inner, p)
        .map_err(to_py)?
        .is_centered())
}

/// A connected vertex set with no unique color and fewer than `p` colors, or
/// `None` when the coloring is `p`-centered.
#[pyfunction]
fn centered_violation(g: &Graph, col: &Coloring, p: usize) -> PyResult<Option<Vec<usize>>> {
    Ok(match coloring::is_p_centered(&g.inner, &col.inner, p).map_err(to_py)? {
        coloring::CenteredVerdict::Centered => None,
        coloring::CenteredVerdict::Violation(w) => Some(w),
    })
}

#[pyfunction]
fn auto_coloring(g: &Graph) -> Coloring {
    Coloring {
        inner: coloring::auto_coloring(&g.inner),
    }
}

#[pyfunction]
fn exact_min_p_centered(g: &Graph, p: usize) -> PyResult<Coloring> {
    Ok(Coloring {
        inner: coloring::exact_min_p_centered(&g.inner, p).map_err(to_py)?,
    })
}

#[pyfunction]
fn is_reversible(p: &Poset, pairs: Vec<(usize, usize)>) -> PyResult<bool> {
    reversal::is_reversible(&p.inner, &pairs).map_err(to_py)
}

#[pyfunction]
fn find_alternating_cycle(p: &Poset, pairs: Vec<(usize, usize)>) -> PyResult<Option<Vec<(usize, usize)>>> {
    Ok(reversal::find_alternating_cycle(&p.inner, &pairs)
        .map_err(to_py)?
        .map(|c| c.0))
}

#[pyfunction]
fn validate_realizer(p: &Poset, realizer: Vec<Vec<usize>>) -> PyResult<bool> {
    match reversal::validate_realizer(&p.inner, &extensions(realizer)) {
        Ok(v) => Ok(v == RealizerVerdict::Valid),
        Err(Error::NotLinearExtension(_)) => Ok(false),
        Err(e) => Err(to_py(e)),
    }
}

/// Runs the reversible partition pipeline; colors the cover graph
/// automatically when `coloring` is omitted. Raises `CertificationError` when
/// a check fails.
#[pyfunction]
#[pyo3(signature = (p, coloring=None, verify_coloring=true))]
fn realize(py: Python<'_>, p: &Poset, coloring: Option<&Coloring>, verify_coloring: bool) -> PyResult<Realization> {
    let col = match coloring {
        Some(c) => c.inner.clone(),
        None => coloring::auto_coloring(&p.inner.cover_graph()),
    };
    let poset = &p.inner;
    let (run, exts) = py
        .detach(|| {
            let run = realizer::run_partition(poset, &col, PartitionOptions { verify_coloring })?;
            let exts = realizer::build_realizer_from_partition(poset, &run.partition)?;
            Ok::<_, Error>((run, exts))
        })
        .map_err(to_py)?;
    Ok(Realization {
        height: run.height,
        colors: run.colors,
        signatures: run.table.signatures().len(),
        fingerprints: run.index.blocks().len(),
        classes: run
            .partition
            .classes()
            .iter()
            .map(|(k, pairs)| (k.to_string(), pairs.clone()))
            .collect(),
        realizer: orders(exts),
        coloring_verified: run.upfront == realizer::UpfrontCheck::Verified,
    })
}

#[pyfunction]
fn dimension_bound(height: u32, colors: u32) -> PyResult<BigUint> {
    realizer::dimension_bound(height, colors).map_err(to_py)
}

#[pyfunction]
fn dimension_bound_exponent(height: u32, colors: u32) -> BigUint {
    realizer::dimension_bound_exponent(height, colors)
}

#[pymodule]
pub fn posetdim_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Poset>()?;
    m.add_class::<Coloring>()?;
    m.add_class::<Realization>()?;
    m.add("CertificationError", m.py().get_type::<CertificationError>())?;
    m.add_function(wrap_pyfunction!(standard_example, m)?)?;
    m.add_function(wrap_pyfunction!(kelly, m)?)?;
    m.add_function(wrap_pyfunction!(incidence_poset, m)?)?;
    m.add_function(wrap_pyfunction!(adjacency_poset, m)?)?;
    m.add_function(wrap_pyfunction!(chain, m)?)?;
    m.add_function(wrap_pyfunction!(antichain, m)?)?;
    m.add_function(wrap_pyfunction!(boolean_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(random_poset, m)?)?;
    m.add_function(wrap_pyfunction!(exact_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_by_extensions, m)?)?;
    m.add_function(wrap_pyfunction!(exact_chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(contains_standard_example, m)?)?;
    m.add_function(wrap_pyfunction!(is_p_centered, m)?)?;
    m.add_function(wrap_pyfunction!(centered_violation, m)?)?;
    m.add_function(wrap_pyfunction!(auto_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(exact_min_p_centered, m)?)?;
    m.add_function(wrap_pyfunction!(is_reversible, m)?)?;
    m.add_function(wrap_pyfunction!(find_alternating_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(validate_realizer, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_bound, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_bound_exponent, m)?)?;
    Ok(())
}
