//! Python bindings: the enumeration tables, configuration synthesis,
//! node recovery, and the conic/rational-normal-curve solvers.
//!
//! Points and hyperplanes cross the boundary as lists of Python ints
//! (canonical coprime coordinates); rational parameters are ints or
//! strings like `"3/4"`; configurations are a wrapped class with text
//! serialization compatible with the CLI's document format.

use std::str::FromStr;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use thetaplanes::configuration::{self, NodeSet, Provenance, WeightedConfig};
use thetaplanes::curves::{self, CertifiedSolution, Conic, RncParam, DEFAULT_PRECISION};
use thetaplanes::document::ConfigDocument;
use thetaplanes::enumeration::{self, CurveModel};
use thetaplanes::error::Error;
use thetaplanes::exactlin::{self, Hyperplane, ProjPoint, Scalar};
use thetaplanes::recovery;

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn point_from_ints(coords: Vec<BigInt>) -> PyResult<ProjPoint> {
    ProjPoint::from_bigints(coords).map_err(to_py_err)
}

fn points_from_ints(coords: Vec<Vec<BigInt>>) -> PyResult<Vec<ProjPoint>> {
    coords.into_iter().map(point_from_ints).collect()
}

fn points_to_ints(points: &[ProjPoint]) -> Vec<Vec<BigInt>> {
    points.iter().map(|p| p.coords().to_vec()).collect()
}

fn node_set(coords: Vec<Vec<BigInt>>, dim: usize) -> PyResult<NodeSet> {
    NodeSet::new(points_from_ints(coords)?, dim).map_err(to_py_err)
}

/// A scalar passed from Python: an int or a string like "3/4".
fn parse_scalar(value: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(n) = value.extract::<BigInt>() {
        return Ok(Scalar::from(n));
    }
    let text: String = value.extract()?;
    Scalar::from_str(text.trim())
        .map_err(|e| PyValueError::new_err(format!("bad rational {text:?}: {e}")))
}

fn parse_rnc_param(value: &Bound<'_, PyAny>) -> PyResult<RncParam> {
    if value.is_none() {
        return Ok(RncParam::Infinity);
    }
    Ok(RncParam::Finite(parse_scalar(value)?))
}

fn parse_conic(coeffs: &Bound<'_, PyAny>) -> PyResult<Conic> {
    let items: Vec<Bound<'_, PyAny>> = coeffs.try_iter()?.collect::<PyResult<_>>()?;
    if items.len() != 6 {
        return Err(PyValueError::new_err("a conic needs six coefficients"));
    }
    let scalars: Vec<Scalar> = items.iter().map(parse_scalar).collect::<PyResult<_>>()?;
    Conic::from_coeffs(&scalars.try_into().expect("six coefficients")).map_err(to_py_err)
}

fn solution_to_dict<'py>(py: Python<'py>, s: &CertifiedSolution) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let approx: Vec<(f64, f64)> = s.approx.iter().map(|z| (z.re, z.im)).collect();
    d.set_item("approx", approx)?;
    d.set_item("residuals", (s.residuals[0], s.residuals[1]))?;
    d.set_item("exact", s.exact.clone())?;
    d.set_item("multiplicity", s.multiplicity)?;
    Ok(d)
}

/// Weighted multiset of hyperplanes in canonical integer form.
#[pyclass(name = "WeightedConfig", skip_from_py_object)]
#[derive(Clone)]
struct PyWeightedConfig {
    inner: WeightedConfig,
}

#[pymethods]
impl PyWeightedConfig {
    #[new]
    fn new(ambient_dim: usize) -> Self {
        Self { inner: WeightedConfig::new(ambient_dim) }
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "WeightedConfig(dim={}, entries={}, weighted_degree={})",
            self.inner.ambient_dim(),
            self.inner.len(),
            self.inner.weighted_degree()
        )
    }

    /// Add multiplicity to a hyperplane entry (merging on equality).
    #[pyo3(signature = (coeffs, multiplicity, tag = "mock"))]
    fn insert(&mut self, coeffs: Vec<BigInt>, multiplicity: u64, tag: &str) -> PyResult<()> {
        let h = Hyperplane::from_bigints(coeffs).map_err(to_py_err)?;
        if h.ambient_dim() != self.inner.ambient_dim() {
            return Err(PyValueError::new_err("hyperplane dimension mismatch"));
        }
        if multiplicity == 0 {
            return Err(PyValueError::new_err("multiplicity must be positive"));
        }
        self.inner.insert(h, multiplicity, Provenance::parse(tag).map_err(to_py_err)?);
        Ok(())
    }

    /// Entries as (coeffs, multiplicity, tag) triples in canonical order.
    fn entries(&self) -> Vec<(Vec<BigInt>, u64, String)> {
        self.inner
            .iter()
            .map(|(h, m, p)| (h.coeffs().to_vec(), m, p.as_str().to_string()))
            .collect()
    }

    fn weighted_degree(&self) -> BigInt {
        self.inner.weighted_degree()
    }

    fn multiplicity_histogram(&self) -> std::collections::BTreeMap<u64, usize> {
        self.inner.multiplicity_histogram()
    }

    /// Serialize to the structured-text document format (optionally with a
    /// point section).
    #[pyo3(signature = (points = Vec::new()))]
    fn to_text(&self, points: Vec<Vec<BigInt>>) -> PyResult<String> {
        let points = points_from_ints(points)?;
        Ok(ConfigDocument::from_config(&self.inner, &points).to_string())
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let doc = ConfigDocument::from_str(text).map_err(to_py_err)?;
        Ok(Self { inner: doc.to_config().map_err(to_py_err)? })
    }
}

#[pyfunction]
fn n_odd(genus: u32) -> BigInt {
    enumeration::n_odd(genus)
}

#[pyfunction]
fn n_even(genus: u32) -> BigInt {
    enumeration::n_even(genus)
}

#[pyfunction]
fn multiplicity(type_index: u32) -> BigInt {
    enumeration::multiplicity(type_index)
}

#[pyfunction]
fn cuspidal_total(genus: u32, cusps: u32) -> PyResult<BigInt> {
    enumeration::cuspidal_total(genus, cusps).map_err(to_py_err)
}

/// Count table of a curve model, as a dict with keys `model`, `counts`,
/// `multiplicities` (None for cuspidal models), and `weighted_degree`.
#[pyfunction]
#[pyo3(signature = (model, genus, nodes = None, cusps = None))]
fn theta_table<'py>(
    py: Python<'py>,
    model: &str,
    genus: u32,
    nodes: Option<u32>,
    cusps: Option<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let model = match model {
        "irreducible" => CurveModel::IrreducibleNodal {
            genus,
            nodes: nodes.ok_or_else(|| PyValueError::new_err("irreducible model needs nodes"))?,
        },
        "split" => CurveModel::Split { genus },
        "cuspidal" => CurveModel::Cuspidal {
            genus,
            cusps: cusps.ok_or_else(|| PyValueError::new_err("cuspidal model needs cusps"))?,
        },
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown model {other:?}; use irreducible, split, or cuspidal"
            )))
        }
    };
    let table = enumeration::theta_table(model).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("model", model.to_string())?;
    d.set_item("counts", table.counts.clone())?;
    d.set_item("multiplicities", table.multiplicities.clone())?;
    let weighted = enumeration::weighted_degree(&table).ok();
    d.set_item("weighted_degree", weighted)?;
    d.set_item("total", table.total())?;
    Ok(d)
}

/// Canonical coprime-integer representative of a rational vector.
#[pyfunction]
fn normalize(coords: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<BigInt>> {
    let scalars: Vec<Scalar> = coords.iter().map(parse_scalar).collect::<PyResult<_>>()?;
    exactlin::normalize(&scalars).map_err(to_py_err)
}

#[pyfunction]
fn in_general_position(points: Vec<Vec<BigInt>>, ambient_dim: usize) -> PyResult<bool> {
    Ok(exactlin::in_general_position(&points_from_ints(points)?, ambient_dim))
}

#[pyfunction]
fn spans_config(points: Vec<Vec<BigInt>>, ambient_dim: usize) -> PyResult<PyWeightedConfig> {
    let nodes = node_set(points, ambient_dim)?;
    Ok(PyWeightedConfig { inner: configuration::spans_config(&nodes).map_err(to_py_err)? })
}

#[pyfunction]
fn split_config(genus: u32, nodes: Vec<Vec<BigInt>>) -> PyResult<PyWeightedConfig> {
    let nodes = node_set(nodes, genus as usize - 1)?;
    Ok(PyWeightedConfig { inner: configuration::split_config(genus, &nodes).map_err(to_py_err)? })
}

#[pyfunction]
#[pyo3(signature = (delta, nodes, seed = 0))]
fn mock_nodal_config_g4(
    delta: u32,
    nodes: Vec<Vec<BigInt>>,
    seed: u64,
) -> PyResult<PyWeightedConfig> {
    let nodes = node_set(nodes, 3)?;
    Ok(PyWeightedConfig {
        inner: configuration::mock_nodal_config_g4(delta, &nodes, seed).map_err(to_py_err)?,
    })
}

#[pyfunction]
fn project_config(cfg: &PyWeightedConfig, center: Vec<BigInt>) -> PyResult<PyWeightedConfig> {
    let center = point_from_ints(center)?;
    Ok(PyWeightedConfig {
        inner: configuration::project_config(&cfg.inner, &center).map_err(to_py_err)?,
    })
}

#[pyfunction]
fn recover_from_spans(cfg: &PyWeightedConfig, count: usize) -> PyResult<Vec<Vec<BigInt>>> {
    let points = recovery::recover_from_spans(&cfg.inner, count).map_err(to_py_err)?;
    Ok(points_to_ints(&points))
}

#[pyfunction]
fn recover_split_nodes(cfg: &PyWeightedConfig, genus: u32) -> PyResult<Vec<Vec<BigInt>>> {
    let points = recovery::recover_split_nodes(&cfg.inner, genus).map_err(to_py_err)?;
    Ok(points_to_ints(&points))
}

#[pyfunction]
fn recover_nodes_g4(cfg: &PyWeightedConfig, delta: u32) -> PyResult<Vec<Vec<BigInt>>> {
    let points = recovery::recover_nodes_g4(&cfg.inner, delta).map_err(to_py_err)?;
    Ok(points_to_ints(&points))
}

#[pyfunction]
fn cluster_points(
    cfg: &PyWeightedConfig,
    min_weight: u64,
    min_count: usize,
) -> PyResult<Vec<(Vec<BigInt>, usize)>> {
    let clusters = recovery::cluster_points(&cfg.inner, min_weight, min_count).map_err(to_py_err)?;
    Ok(clusters.into_iter().map(|(p, c)| (p.coords().to_vec(), c)).collect())
}

/// Point `[1, t, ..., t^r]` of the standard rational normal curve; `None`
/// is the point at infinity.
#[pyfunction]
fn rnc_point(r: usize, t: &Bound<'_, PyAny>) -> PyResult<Vec<BigInt>> {
    let param = parse_rnc_param(t)?;
    Ok(curves::rnc_point(r, &param).coords().to_vec())
}

#[pyfunction]
fn rnc_tangent_hyperplane(r: usize, params: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<BigInt>> {
    let params: Vec<RncParam> = params.iter().map(parse_rnc_param).collect::<PyResult<_>>()?;
    let h = curves::rnc_tangent_hyperplane(r, &params).map_err(to_py_err)?;
    Ok(h.coeffs().to_vec())
}

#[pyfunction]
fn restriction_poly(coeffs: Vec<BigInt>) -> PyResult<Vec<BigInt>> {
    let h = Hyperplane::from_bigints(coeffs).map_err(to_py_err)?;
    // Canonical hyperplanes have integer coefficients, so the restriction
    // polynomial is integral.
    Ok(h.coeffs().to_vec())
}

#[pyfunction]
fn is_square_restriction(coeffs: Vec<BigInt>) -> PyResult<bool> {
    let h = Hyperplane::from_bigints(coeffs).map_err(to_py_err)?;
    Ok(curves::is_square_restriction(&h))
}

#[pyfunction]
#[pyo3(signature = (c1, c2, precision = DEFAULT_PRECISION))]
fn common_tangents<'py>(
    py: Python<'py>,
    c1: &Bound<'py, PyAny>,
    c2: &Bound<'py, PyAny>,
    precision: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let sols = curves::common_tangents(&parse_conic(c1)?, &parse_conic(c2)?, precision)
        .map_err(to_py_err)?;
    sols.iter().map(|s| solution_to_dict(py, s)).collect()
}

#[pyfunction]
#[pyo3(signature = (c1, c2, precision = DEFAULT_PRECISION))]
fn conic_intersections<'py>(
    py: Python<'py>,
    c1: &Bound<'py, PyAny>,
    c2: &Bound<'py, PyAny>,
    precision: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let sols = curves::conic_intersections(&parse_conic(c1)?, &parse_conic(c2)?, precision)
        .map_err(to_py_err)?;
    sols.iter().map(|s| solution_to_dict(py, s)).collect()
}

/// Full genus-3 split data of a pair of conics meeting at four rational
/// points: nodes, the six chords (multiplicity 4), the four tangents
/// (multiplicity 1), and the weighted degree 28.
#[pyfunction]
#[pyo3(signature = (c1, c2, precision = DEFAULT_PRECISION))]
fn split_quartic_config<'py>(
    py: Python<'py>,
    c1: &Bound<'py, PyAny>,
    c2: &Bound<'py, PyAny>,
    precision: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let sq = curves::split_quartic_config(&parse_conic(c1)?, &parse_conic(c2)?, precision)
        .map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("nodes", points_to_ints(&sq.nodes))?;
    d.set_item("chords", PyWeightedConfig { inner: sq.chords.clone() })?;
    let tangents: Vec<Bound<'py, PyDict>> =
        sq.tangents.iter().map(|s| solution_to_dict(py, s)).collect::<PyResult<_>>()?;
    d.set_item("tangents", tangents)?;
    d.set_item("weighted_degree", sq.weighted_degree())?;
    Ok(d)
}

#[pymodule]
fn thetaplanes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeightedConfig>()?;
    m.add_function(wrap_pyfunction!(n_odd, m)?)?;
    m.add_function(wrap_pyfunction!(n_even, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(cuspidal_total, m)?)?;
    m.add_function(wrap_pyfunction!(theta_table, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(in_general_position, m)?)?;
    m.add_function(wrap_pyfunction!(spans_config, m)?)?;
    m.add_function(wrap_pyfunction!(split_config, m)?)?;
    m.add_function(wrap_pyfunction!(mock_nodal_config_g4, m)?)?;
    m.add_function(wrap_pyfunction!(project_config, m)?)?;
    m.add_function(wrap_pyfunction!(recover_from_spans, m)?)?;
    m.add_function(wrap_pyfunction!(recover_split_nodes, m)?)?;
    m.add_function(wrap_pyfunction!(recover_nodes_g4, m)?)?;
    m.add_function(wrap_pyfunction!(cluster_points, m)?)?;
    m.add_function(wrap_pyfunction!(rnc_point, m)?)?;
    m.add_function(wrap_pyfunction!(rnc_tangent_hyperplane, m)?)?;
    m.add_function(wrap_pyfunction!(restriction_poly, m)?)?;
    m.add_function(wrap_pyfunction!(is_square_restriction, m)?)?;
    m.add_function(wrap_pyfunction!(common_tangents, m)?)?;
    m.add_function(wrap_pyfunction!(conic_intersections, m)?)?;
    m.add_function(wrap_pyfunction!(split_quartic_config, m)?)?;
    Ok(())
}
