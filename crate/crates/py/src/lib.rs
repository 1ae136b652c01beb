//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! inputs accept anything whose `str()` is an integer or `p/q`.

use momentkit_core::algebra::{format_rational, parse_rational, Rational};
use momentkit_core::gkm::{self, betti_numbers, generic_direction, gkm_check, gkm_dimension};
use momentkit_core::io::{
    class_from_json, moment_graph_from_json, moment_graph_to_json, polytope_from_json,
    polytope_to_json,
};
use momentkit_core::localization::{
    abbv_pushforward, volume_localization, volume_localization_auto,
};
use momentkit_core::polar::{choose_polarizing_vector, PolarDecomposition};
use momentkit_core::{
    BuilderSpec, EvaluationPoint, FixedPointData, HalfSpace, LatticeBox, PolarizingVector,
    RationalVec,
};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

create_exception!(momentkit, MomentkitError, PyException);

/// `(k, dimension, predicted)`.
type FreeModuleRow = (u32, usize, usize);

fn err(e: momentkit_core::Error) -> PyErr {
    MomentkitError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format_rational(r),))
}

fn fractions<'py>(py: Python<'py>, v: &RationalVec) -> PyResult<Bound<'py, PyList>> {
    let items = v
        .iter()
        .map(|r| fraction(py, r))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn to_rational(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&x.str()?.to_cow()?).map_err(err)
}

fn to_vec(xs: &Bound<'_, PyAny>) -> PyResult<RationalVec> {
    let entries = xs
        .try_iter()?
        .map(|x| to_rational(&x?))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(RationalVec::new(entries))
}

/// A full-dimensional polytope given by inequalities `<normal, x> >= offset`.
#[pyclass(name = "Polytope", frozen, module = "momentkit")]
struct PyPolytope(momentkit_core::Polytope);

impl PyPolytope {
    fn polarizing(&self, xi: Option<&Bound<'_, PyAny>>, seed: u64) -> PyResult<PolarizingVector> {
        match xi {
            Some(xi) => PolarizingVector::for_polytope(&self.0, to_vec(xi)?).map_err(err),
            None => choose_polarizing_vector(&self.0, seed).map_err(err),
        }
    }
}

#[pymethods]
impl PyPolytope {
    /// `halfspaces` is a sequence of `(normal, offset)` pairs.
    #[new]
    fn new(dim: usize, halfspaces: &Bound<'_, PyAny>) -> PyResult<Self> {
        let hs = halfspaces
            .try_iter()?
            .map(|h| {
                let (normal, offset): (Bound<'_, PyAny>, Bound<'_, PyAny>) = h?.extract()?;
                HalfSpace::new(to_vec(&normal)?, to_rational(&offset)?).map_err(err)
            })
            .collect::<PyResult<Vec<_>>>()?;
        momentkit_core::Polytope::from_halfspaces(dim, hs)
            .map(PyPolytope)
            .map_err(err)
    }

    /// Builder spec such as `"simplex:2:1"`, `"cube:3:2"` or `"hirzebruch:1"`.
    #[staticmethod]
    fn build(spec: &str) -> PyResult<Self> {
        spec.parse::<BuilderSpec>()
            .and_then(|s| s.build())
            .map(PyPolytope)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        polytope_from_json(text).map(PyPolytope).map_err(err)
    }

    fn to_json(&self) -> String {
        polytope_to_json(&self.0)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyList>>> {
        self.0.vertices().iter().map(|v| fractions(py, v)).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    #[getter]
    fn num_facets(&self) -> usize {
        self.0.facets().len()
    }

    fn is_simple(&self) -> bool {
        self.0.is_simple()
    }

    fn is_smooth(&self) -> bool {
        self.0.is_smooth()
    }

    /// Dict with `simple`, `smooth` and, when not smooth, `vertex` and `det`.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = self.0.smoothness();
        let d = PyDict::new(py);
        d.set_item("simple", r.simple)?;
        d.set_item("smooth", r.smooth)?;
        if let Some(f) = r.failure {
            d.set_item("vertex", fractions(py, &f.vertex)?)?;
            d.set_item("det", fraction(py, &f.det)?)?;
        }
        Ok(d)
    }

    fn contains(&self, point: &Bound<'_, PyAny>) -> PyResult<bool> {
        let x = to_vec(point)?;
        if x.dim() != self.0.dim() {
            return Err(MomentkitError::new_err("point has the wrong dimension"));
        }
        Ok(self.0.contains(&x))
    }

    fn dilate(&self, k: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.dilate(&to_rational(k)?).map(PyPolytope).map_err(err)
    }

    /// Exact volume by recursive facet decomposition.
    fn volume<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.volume_oracle().map_err(err)?)
    }

    /// Volume by summing vertex contributions at a generic direction.
    #[pyo3(signature = (xi=None, seed=0))]
    fn volume_localization<'py>(
        &self,
        py: Python<'py>,
        xi: Option<&Bound<'py, PyAny>>,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let v = match xi {
            Some(xi) => volume_localization(&self.0, &to_vec(xi)?),
            None => volume_localization_auto(&self.0, seed).map(|(v, _)| v),
        };
        fraction(py, &v.map_err(err)?)
    }

    /// Number of lattice points by enumeration.
    fn lattice_count(&self) -> PyResult<usize> {
        self.0.lattice_count_oracle().map_err(err)
    }

    /// Number of lattice points from the signed cone decomposition.
    #[pyo3(signature = (xi=None, seed=0))]
    fn signed_lattice_count(&self, xi: Option<&Bound<'_, PyAny>>, seed: u64) -> PyResult<i64> {
        let xi = self.polarizing(xi, seed)?;
        let bx = LatticeBox::tight(&self.0).map_err(err)?;
        momentkit_core::polar::signed_lattice_count(&self.0, &xi, &bx).map_err(err)
    }

    /// Signed sum of polarized cone indicators at `point`.
    #[pyo3(signature = (point, xi=None, seed=0))]
    fn indicator_sum(
        &self,
        point: &Bound<'_, PyAny>,
        xi: Option<&Bound<'_, PyAny>>,
        seed: u64,
    ) -> PyResult<i64> {
        let xi = self.polarizing(xi, seed)?;
        momentkit_core::polar::signed_indicator_sum(&self.0, &xi, &to_vec(point)?).map_err(err)
    }

    /// One dict per vertex: `apex`, `generators`, `open_flags`, `sign`.
    #[pyo3(signature = (xi=None, seed=0))]
    fn decompose<'py>(
        &self,
        py: Python<'py>,
        xi: Option<&Bound<'py, PyAny>>,
        seed: u64,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let xi = self.polarizing(xi, seed)?;
        let d = PolarDecomposition::new(&self.0, &xi).map_err(err)?;
        d.cones
            .iter()
            .map(|c| {
                let out = PyDict::new(py);
                out.set_item("apex", fractions(py, &c.apex)?)?;
                let gens = c
                    .generators
                    .iter()
                    .map(|g| fractions(py, g))
                    .collect::<PyResult<Vec<_>>>()?;
                out.set_item("generators", gens)?;
                out.set_item("open_flags", c.open_flags.clone())?;
                out.set_item("sign", c.sign)?;
                Ok(out)
            })
            .collect()
    }

    fn moment_graph(&self) -> PyResult<PyMomentGraph> {
        momentkit_core::MomentGraph::from_polytope(&self.0)
            .map(PyMomentGraph)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope(dim={}, vertices={}, edges={}, facets={})",
            self.0.dim(),
            self.0.vertices().len(),
            self.0.edges().len(),
            self.0.facets().len()
        )
    }
}

/// GKM moment graph: positions, edges and edge weights.
#[pyclass(name = "MomentGraph", frozen, module = "momentkit")]
struct PyMomentGraph(momentkit_core::MomentGraph);

#[pymethods]
impl PyMomentGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        moment_graph_from_json(text).map(PyMomentGraph).map_err(err)
    }

    fn to_json(&self) -> String {
        moment_graph_to_json(&self.0)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.0.num_vertices()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    #[pyo3(signature = (xi=None, seed=0))]
    fn betti_numbers(&self, xi: Option<&Bound<'_, PyAny>>, seed: u64) -> PyResult<Vec<usize>> {
        let xi = match xi {
            Some(xi) => to_vec(xi)?,
            None => generic_direction(&self.0, seed).map_err(err)?,
        };
        betti_numbers(&self.0, &xi).map(|b| b.0).map_err(err)
    }

    fn gkm_dimension(&self, k: u32) -> usize {
        gkm_dimension(&self.0, k)
    }

    /// `(holds, [(k, dimension, predicted), ...])`.
    fn free_module_check(&self, k_max: u32) -> PyResult<(bool, Vec<FreeModuleRow>)> {
        let r = gkm::free_module_check(&self.0, k_max).map_err(err)?;
        Ok((
            r.holds,
            r.rows
                .iter()
                .map(|row| (row.k, row.dimension, row.predicted))
                .collect(),
        ))
    }

    /// Edges whose divisibility condition fails for the class in `class_json`.
    fn gkm_check(&self, class_json: &str) -> PyResult<Vec<usize>> {
        let c = class_from_json(self.0.dim(), self.0.num_vertices(), class_json).map_err(err)?;
        gkm_check(&self.0, &c).map(|r| r.failing_edges).map_err(err)
    }

    /// Push-forward of the class in `class_json` to a point.
    #[pyo3(signature = (class_json, xi=None, seed=0))]
    fn integrate<'py>(
        &self,
        py: Python<'py>,
        class_json: &str,
        xi: Option<&Bound<'py, PyAny>>,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let c = class_from_json(self.0.dim(), self.0.num_vertices(), class_json).map_err(err)?;
        let data = FixedPointData::from_graph(&self.0).map_err(err)?;
        let point = match xi {
            Some(xi) => EvaluationPoint::new(&data, to_vec(xi)?),
            None => EvaluationPoint::choose(&data, seed),
        }
        .map_err(err)?;
        fraction(py, &abbv_pushforward(&c, &data, &point).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "MomentGraph(dim={}, vertices={}, edges={})",
            self.0.dim(),
            self.0.num_vertices(),
            self.0.edges().len()
        )
    }
}

/// Builder specs of the built-in catalog.
#[pyfunction]
fn catalog() -> Vec<String> {
    BuilderSpec::catalog()
        .iter()
        .map(ToString::to_string)
        .collect()
}

#[pymodule]
fn momentkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolytope>()?;
    m.add_class::<PyMomentGraph>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add("MomentkitError", m.py().get_type::<MomentkitError>())?;
    Ok(())
}
