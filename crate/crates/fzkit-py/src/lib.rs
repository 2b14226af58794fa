//! Python module `fzkit`. Rationals cross the boundary as exact strings
//! (`"p/q"`); anything whose `str()` parses, such as `fractions.Fraction` or
//! `int`, is accepted as input.

use std::collections::BTreeMap;

use fzkit::acceptance::{self, Tier};
use fzkit::okounkov::{self, OkounkovError};
use fzkit::ratgeom::{QVec, Rat};
use fzkit::surface::{self, SurfaceError};
use fzkit::threefold::{FamilyKind, ModelFamily, ThreefoldError};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

struct PyErrOf(PyErr);

impl From<PyErrOf> for PyErr {
    fn from(e: PyErrOf) -> PyErr {
        e.0
    }
}

impl From<ThreefoldError> for PyErrOf {
    fn from(e: ThreefoldError) -> PyErrOf {
        PyErrOf(match e {
            ThreefoldError::BadParams(_) | ThreefoldError::OutOfRange { .. } | ThreefoldError::Unsupported { .. } => {
                PyValueError::new_err(e.to_string())
            }
            other => PyRuntimeError::new_err(other.to_string()),
        })
    }
}

impl From<OkounkovError> for PyErrOf {
    fn from(e: OkounkovError) -> PyErrOf {
        match e {
            OkounkovError::Threefold(t) => t.into(),
            OkounkovError::OutOfRange { .. } | OkounkovError::Unsupported { .. } => {
                PyErrOf(PyValueError::new_err(e.to_string()))
            }
            other => PyErrOf(PyRuntimeError::new_err(other.to_string())),
        }
    }
}

impl From<SurfaceError> for PyErrOf {
    fn from(e: SurfaceError) -> PyErrOf {
        PyErrOf(PyValueError::new_err(e.to_string()))
    }
}

type Res<T> = Result<T, PyErrOf>;

fn rat(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    let s = obj.str()?.to_string();
    s.parse().map_err(|e: fzkit::ratgeom::ParseRatError| PyValueError::new_err(e.to_string()))
}

fn strs(v: &QVec) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}

fn vertex_lists(vs: &[QVec]) -> Vec<Vec<String>> {
    vs.iter().map(strs).collect()
}

/// A member of one of the three families, e.g. `Family("cxp2", a=3, b=2)`.
#[pyclass(name = "Family", frozen)]
struct PyFamily {
    inner: ModelFamily,
}

#[pymethods]
impl PyFamily {
    #[new]
    #[pyo3(signature = (kind, **params))]
    fn new(kind: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<PyFamily> {
        let kind: FamilyKind = kind.parse().map_err(|e: ThreefoldError| PyValueError::new_err(e.to_string()))?;
        let mut map = BTreeMap::new();
        if let Some(d) = params {
            for (k, v) in d.iter() {
                map.insert(k.extract::<String>()?, rat(&v)?);
            }
        }
        let inner = ModelFamily::new(kind, map).map_err(|e| PyErr::from(PyErrOf::from(e)))?;
        Ok(PyFamily { inner })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind.name()
    }

    #[getter]
    fn params(&self) -> BTreeMap<String, String> {
        self.inner.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
    }

    fn __repr__(&self) -> String {
        let ps: Vec<String> = self.inner.params.iter().map(|(k, v)| format!("{k}='{v}'")).collect();
        format!("Family('{}', {})", self.inner.kind, ps.join(", "))
    }

    fn mu(&self) -> Res<String> {
        Ok(self.inner.mu()?.to_string())
    }

    /// `vol(L_t)`, checked against the cube of the positive part.
    fn volume(&self, t: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(self.inner.vol_ray(&rat(t)?).map_err(PyErrOf::from)?.to_string())
    }

    /// `(t0, t1, [c0, c1, c2, c3])` for each cubic piece of the volume.
    fn volume_pieces(&self) -> Res<Vec<(String, String, Vec<String>)>> {
        Ok(self
            .inner
            .volume_pieces()?
            .into_iter()
            .map(|p| (p.t0.to_string(), p.t1.to_string(), p.coeffs.iter().map(Rat::to_string).collect()))
            .collect())
    }

    /// Positive part by basis name and negative coefficients by component.
    fn psigma(&self, t: &Bound<'_, PyAny>) -> PyResult<(BTreeMap<String, String>, BTreeMap<String, String>)> {
        let d = self.inner.psigma(&rat(t)?).map_err(PyErrOf::from)?;
        let st = &self.inner.tower().stages[d.positive.stage];
        let pos = st.basis.iter().zip(d.positive.class.iter()).map(|(n, c)| (n.clone(), c.to_string())).collect();
        let neg = d.negative_coeffs.iter().map(|(n, c)| (n.clone(), c.to_string())).collect();
        Ok((pos, neg))
    }

    fn body_vertices(&self) -> Res<Vec<Vec<String>>> {
        Ok(vertex_lists(okounkov::body(&self.inner)?.vertices()))
    }

    fn body_volume(&self) -> Res<String> {
        Ok(okounkov::body(&self.inner)?.volume()?.to_string())
    }

    fn body_json(&self) -> Res<String> {
        Ok(okounkov::body(&self.inner)?.to_json().to_string_pretty())
    }

    /// Vertices of the slice polygon at `0 < t < μ`.
    fn slice(&self, t: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<String>>> {
        let s = okounkov::slice_at(&self.inner, &rat(t)?).map_err(PyErrOf::from)?;
        Ok(vertex_lists(s.polygon.vertices()))
    }

    fn seshadri(&self) -> Res<String> {
        Ok(okounkov::seshadri_curve(&self.inner)?.to_string())
    }

    /// `("equality" | "strict", lhs, rhs)`.
    fn area_check(&self) -> Res<(String, String, String)> {
        let c = okounkov::projection_area_check(&self.inner)?;
        Ok((format!("{:?}", c.verdict).to_lowercase(), c.lhs.to_string(), c.rhs.to_string()))
    }
}

/// Zariski decomposition of a class on a built-in surface model.
#[pyfunction]
fn zariski(model: &str, class: Vec<Bound<'_, PyAny>>) -> PyResult<(Vec<String>, BTreeMap<String, String>)> {
    let m = surface::builtin_model(model).map_err(PyErrOf::from)?;
    let d = QVec::new(class.iter().map(rat).collect::<PyResult<_>>()?);
    m.check_len(&d).map_err(PyErrOf::from)?;
    let z = surface::zariski(&m, &d).map_err(PyErrOf::from)?;
    Ok((strs(&z.positive), z.negative_coeffs.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()))
}

#[pyfunction]
fn glue_vertices(kind: &str) -> PyResult<Vec<Vec<String>>> {
    let kind: FamilyKind = kind.parse().map_err(|e: ThreefoldError| PyValueError::new_err(e.to_string()))?;
    Ok(vertex_lists(okounkov::glue4d(kind).map_err(PyErrOf::from)?.vertices()))
}

/// Runs acceptance criteria; returns `(id, title, passed, detail)` rows.
#[pyfunction]
#[pyo3(signature = (tier = None, seed = acceptance::DEFAULT_SEED))]
fn check(py: Python<'_>, tier: Option<&str>, seed: u64) -> PyResult<Vec<(u8, String, bool, String)>> {
    let tier: Option<Tier> =
        tier.map(str::parse).transpose().map_err(|e: acceptance::UnknownTier| PyValueError::new_err(e.to_string()))?;
    let reports = py.detach(|| acceptance::run(tier, seed));
    Ok(reports.into_iter().map(|r| (r.id, r.title, r.passed, r.detail)).collect())
}

#[pymodule]
#[pyo3(name = "fzkit")]
fn fzkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(zariski, m)?)?;
    m.add_function(wrap_pyfunction!(glue_vertices, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add("FAMILIES", FamilyKind::ALL.iter().map(|k| k.name()).collect::<Vec<_>>())?;
    Ok(())
}
