//! Python bindings. Coweights are accepted as text (`"1,-1;3/2"`) or as a
//! sequence of pairings (ints, strings or `fractions.Fraction`) and are
//! returned as text. Structured results come back as plain dicts and lists.

use hnindex::coneorder::{leq_holds, project};
use hnindex::langlands::{retract, retract_shifted};
use hnindex::posettop::{classify_cone, classify_finite, FinitePoset, SetDescription};
use hnindex::rootdata::levi_roots;
use hnindex::sampling::{rng_from_seed, Sampler};
use hnindex::strata::{self, CoverOptions};
use hnindex::vanishing::{minimal_constants, StrangenessTable};
use hnindex::{Coweight, GroupData, NodeSet};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: hnindex::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(frozen, name = "Group", module = "hnindex")]
struct Group {
    inner: GroupData,
}

impl Group {
    fn coweight(&self, value: &Bound<'_, PyAny>) -> PyResult<Coweight> {
        let text = match value.extract::<String>() {
            Ok(s) => s,
            Err(_) => {
                let items: Vec<Bound<'_, PyAny>> = value.extract()?;
                let parts: PyResult<Vec<String>> = items.iter().map(|x| Ok(x.str()?.to_string())).collect();
                parts?.join(",")
            }
        };
        self.inner.parse_coweight(&text).map_err(err)
    }

    fn nodes(&self, nodes: Option<Vec<usize>>) -> PyResult<NodeSet> {
        match nodes {
            None => Ok(self.inner.gamma()),
            Some(v) => NodeSet::from_one_based(&v, self.inner.rank()).map_err(err),
        }
    }
}

#[pymethods]
impl Group {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Group {
            inner: GroupData::from_spec_str(spec).map_err(err)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn central_rank(&self) -> usize {
        self.inner.central_rank()
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.inner.spec())
    }

    /// Roots as coefficient vectors in the simple roots, optionally restricted to a Levi.
    #[pyo3(signature = (levi=None))]
    fn roots(&self, levi: Option<Vec<usize>>) -> PyResult<Vec<Vec<i64>>> {
        let m = self.nodes(levi)?;
        Ok(levi_roots(&self.inner, m)
            .iter()
            .map(|r| (0..self.inner.rank()).map(|i| r.coef(i)).collect())
            .collect())
    }

    /// `a ≤_M b`; `levi=None` means the whole group.
    #[pyo3(signature = (a, b, levi=None))]
    fn leq(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, levi: Option<Vec<usize>>) -> PyResult<bool> {
        Ok(leq_holds(&self.inner, self.nodes(levi)?, &self.coweight(a)?, &self.coweight(b)?))
    }

    fn project(&self, levi: Vec<usize>, lam: &Bound<'_, PyAny>) -> PyResult<String> {
        let p = project(&self.inner, self.nodes(Some(levi))?, &self.coweight(lam)?).map_err(err)?;
        Ok(p.to_string())
    }

    fn retract(&self, lam: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(retract(&self.inner, &self.coweight(lam)?).map_err(err)?.mu.to_string())
    }

    fn retract_shifted(&self, eta: &Bound<'_, PyAny>, lam: &Bound<'_, PyAny>) -> PyResult<String> {
        let mu = retract_shifted(&self.inner, &self.coweight(eta)?, &self.coweight(lam)?).map_err(err)?;
        Ok(mu.to_string())
    }

    fn hn_parabolic(&self, lam: &Bound<'_, PyAny>) -> PyResult<Vec<usize>> {
        Ok(strata::hn_parabolic(&self.inner, &self.coweight(lam)?).map_err(err)?.to_one_based())
    }

    fn covering_set(&self, py: Python<'_>, genus: u32, lam: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        to_py(py, &strata::covering_set(&self.inner, genus, &self.coweight(lam)?).map_err(err)?)
    }

    fn eta_stratum(&self, py: Python<'_>, eta: &Bound<'_, PyAny>, lam: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let (index, set) = strata::eta_stratum(&self.inner, &self.coweight(eta)?, &self.coweight(lam)?).map_err(err)?;
        to_py(py, &serde_json::json!({ "index": index, "set": set }))
    }

    fn enumerate_candidates(&self, py: Python<'_>, theta: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        to_py(py, &strata::enumerate_candidates(&self.inner, &self.coweight(theta)?).map_err(err)?)
    }

    #[pyo3(signature = (genus, theta, samples=500, seed=0))]
    fn check_cover(&self, py: Python<'_>, genus: u32, theta: &Bound<'_, PyAny>, samples: usize, seed: u64) -> PyResult<Py<PyAny>> {
        let theta = self.coweight(theta)?;
        let options = CoverOptions {
            samples,
            ..CoverOptions::default()
        };
        let report = py
            .detach(|| strata::check_theorem_cover(&self.inner, genus, &theta, &options, &mut rng_from_seed(seed)))
            .map_err(err)?;
        to_py(py, &report)
    }

    /// Minimal vanishing constants for a zero table, the `symplectic-char2`
    /// preset, or a strangeness table given as JSON text.
    #[pyo3(signature = (genus, preset="zero", table=None))]
    fn minimal_constants(&self, py: Python<'_>, genus: u32, preset: &str, table: Option<&str>) -> PyResult<Py<PyAny>> {
        let t = match (table, preset) {
            (Some(text), _) => StrangenessTable::from_json(&self.inner, text, Some(genus)).map_err(err)?,
            (None, "zero") => StrangenessTable::zero(genus),
            (None, "symplectic-char2") => StrangenessTable::symplectic_char2(&self.inner, genus).map_err(err)?,
            (None, other) => return Err(PyValueError::new_err(format!("unknown preset `{other}`"))),
        };
        to_py(py, &minimal_constants(&self.inner, &t))
    }

    /// Classifies a subset of the dominant cone. `kind` is `down`, `up`,
    /// `explicit` (points are coweights) or `interval` (points are pairs).
    #[pyo3(signature = (kind, points, seed=0))]
    fn classify(&self, kind: &str, points: Vec<Bound<'_, PyAny>>, seed: u64) -> PyResult<String> {
        let single = || points.iter().map(|p| self.coweight(p)).collect::<PyResult<Vec<_>>>();
        let set = match kind {
            "down" => SetDescription::DownClosure(single()?),
            "up" => SetDescription::UpClosure(single()?),
            "explicit" => SetDescription::Explicit(single()?),
            "interval" => SetDescription::IntervalUnion(
                points
                    .iter()
                    .map(|p| {
                        let (lo, hi): (Bound<'_, PyAny>, Bound<'_, PyAny>) = p.extract()?;
                        Ok((self.coweight(&lo)?, self.coweight(&hi)?))
                    })
                    .collect::<PyResult<_>>()?,
            ),
            other => return Err(PyValueError::new_err(format!("unknown kind `{other}`"))),
        };
        let c = classify_cone(&self.inner, &set, &mut rng_from_seed(seed), &Sampler::default()).map_err(err)?;
        Ok(c.class.to_string())
    }
}

/// Open / closed / locally-closed classification of `subset` (0-based
/// indices) in the finite preorder given by a boolean `leq` matrix.
#[pyfunction]
fn classify_poset(leq: Vec<Vec<bool>>, subset: Vec<usize>) -> PyResult<String> {
    let p = FinitePoset::from_matrix(leq).map_err(err)?;
    Ok(classify_finite(&p, &subset).map_err(err)?.to_string())
}

/// Runs the command line tool in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(argv: Vec<String>) -> (i32, String, String) {
    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let args = std::iter::once("hnindex".to_string()).chain(argv);
    let code = hnindex::cli::run(args, &mut out, &mut errs);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&errs).into_owned())
}

#[pymodule(name = "hnindex")]
fn hnindex_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(classify_poset, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
