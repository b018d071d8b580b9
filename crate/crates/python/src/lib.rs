//! Python bindings: `import f2ca_py`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use f2ca::census::{census as run_census, MAX_CENSUS_WIDTH};
use f2ca::cli::{render as render_grid, Glyphs};
use f2ca::invariants::{check_trajectory, invariant_record};
use f2ca::jost::{default_i_max, f_measures, jost_closed, jost_mod2_island, monodromy};
use f2ca::lax::{jost_transport_check, verify_lax as lax_report};
use f2ca::{CaState, Error, RuleForm, Site};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn form(name: &str) -> PyResult<RuleForm> {
    name.parse().map_err(err)
}

/// Finitely supported 0/1 state on the integer lattice.
#[pyclass(name = "State", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyState {
    inner: CaState,
}

impl From<CaState> for PyState {
    fn from(inner: CaState) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyState {
    /// Parse `"<offset>:<bits>"` or bare bits.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(text.trim().parse::<CaState>().map_err(err)?.into())
    }

    #[staticmethod]
    fn from_support(sites: Vec<Site>) -> Self {
        CaState::from_support(sites).into()
    }

    #[staticmethod]
    fn zero() -> Self {
        CaState::zero().into()
    }

    #[getter]
    fn offset(&self) -> Site {
        self.inner.offset()
    }

    #[getter]
    fn bits(&self) -> String {
        self.inner.bits()
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    fn get(&self, n: Site) -> u8 {
        self.inner.get(n)
    }

    fn support(&self) -> Vec<Site> {
        self.inner.support().sites
    }

    /// `(k1, kN)`, or `None` for the zero state.
    fn borders(&self) -> Option<(Site, Site)> {
        self.inner.borders()
    }

    fn islands(&self) -> Vec<PyState> {
        self.inner
            .islands()
            .into_iter()
            .map(|i| i.state.into())
            .collect()
    }

    fn is_single_island(&self) -> bool {
        self.inner.is_single_island()
    }

    fn reflect(&self) -> Self {
        self.inner.reflect().into()
    }

    #[pyo3(signature = (form_name = "mod2"))]
    fn step(&self, form_name: &str) -> PyResult<Self> {
        Ok(f2ca::evolution::try_step(&self.inner, form(form_name)?)
            .map_err(err)?
            .into())
    }

    fn reverse_step(&self) -> Self {
        f2ca::reverse_step(&self.inner).into()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("State('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }
}

/// Per-island integrals of motion.
#[pyclass(name = "Invariants", frozen, get_all)]
pub struct PyInvariants {
    k1: Site,
    kn: Site,
    f2_k1: u64,
    n_parity: u8,
    /// `x_{k1}(z) mod 2` as a lowest-first bitstring.
    x_k1_mod2: String,
}

#[pymethods]
impl PyInvariants {
    fn __repr__(&self) -> String {
        format!(
            "Invariants(k1={}, kn={}, f2_k1={}, n_parity={}, x_k1_mod2='{}')",
            self.k1, self.kn, self.f2_k1, self.n_parity, self.x_k1_mod2
        )
    }
}

/// Trajectory of `steps + 1` states.
#[pyfunction]
#[pyo3(signature = (state, steps, form_name = "mod2"))]
fn evolve(state: &PyState, steps: usize, form_name: &str) -> PyResult<Vec<PyState>> {
    let traj = f2ca::evolve(&state.inner, steps, form(form_name)?);
    Ok(traj.states.into_iter().map(Into::into).collect())
}

/// Text grid of the trajectory, time running downward.
#[pyfunction]
#[pyo3(signature = (state, steps, glyphs = ".#"))]
fn render(state: &PyState, steps: usize, glyphs: &str) -> PyResult<String> {
    let g: Vec<char> = glyphs.chars().collect();
    let [zero, one] = g[..] else {
        return Err(PyValueError::new_err(
            "glyphs must be exactly two characters",
        ));
    };
    let traj = f2ca::evolve(&state.inner, steps, RuleForm::Mod2);
    Ok(render_grid(&traj, Glyphs { zero, one }))
}

/// Coefficients of `x_m(z)`, lowest power first, as Python ints.
#[pyfunction]
fn jost(py: Python<'_>, state: &PyState, m: Site) -> PyResult<Vec<Py<PyAny>>> {
    jost_closed(&state.inner, m)
        .coeffs()
        .iter()
        .map(|c| Ok(c.into_pyobject(py)?.into_any().unbind()))
        .collect()
}

/// `x_m(z)` formatted as `1 + 2*z + ...`.
#[pyfunction]
fn jost_str(state: &PyState, m: Site) -> String {
    jost_closed(&state.inner, m).to_string()
}

/// Single-island mod-2 form of `x_m`, as a lowest-first bitstring.
#[pyfunction]
fn jost_mod2(state: &PyState, m: Site) -> PyResult<String> {
    Ok(jost_mod2_island(&state.inner, m).map_err(err)?.to_string())
}

/// `[f_1(m), ..., f_imax(m)]`.
#[pyfunction]
#[pyo3(signature = (state, m, i_max = None))]
fn measures(state: &PyState, m: Site, i_max: Option<usize>) -> Vec<u64> {
    let i_max = i_max.unwrap_or_else(|| default_i_max(&state.inner, m));
    f_measures(&state.inner, m, i_max).values
}

#[pyfunction]
fn invariants(state: &PyState) -> Vec<PyInvariants> {
    invariant_record(&state.inner)
        .into_iter()
        .map(|r| PyInvariants {
            k1: r.k1,
            kn: r.kn,
            f2_k1: r.f2_k1,
            n_parity: r.n_parity,
            x_k1_mod2: r.x_k1_mod2.to_string(),
        })
        .collect()
}

/// Whether the integrals of motion stay constant over `steps` steps.
#[pyfunction]
fn conserved(state: &PyState, steps: usize) -> bool {
    check_trajectory(&f2ca::evolve(&state.inner, steps, RuleForm::Mod2)).conserved()
}

/// `(k1, x_k1 coefficients)`; `a(z)` is `x_k1 / (1 - z)` and `b(z) = -z^(k1+1) a(z)`.
#[pyfunction]
fn monodromy_data(py: Python<'_>, state: &PyState) -> PyResult<(Site, Vec<Py<PyAny>>)> {
    let rec = monodromy(&state.inner).map_err(err)?;
    let coeffs = rec
        .x_k1
        .coeffs()
        .iter()
        .map(|c| Ok(c.into_pyobject(py)?.into_any().unbind()))
        .collect::<PyResult<_>>()?;
    Ok((rec.k1, coeffs))
}

/// `(passed, report)` for the mod-2 Lax identity; the report lists violating entries.
#[pyfunction]
#[pyo3(signature = (state, margin = 2))]
fn verify_lax(state: &PyState, margin: Site) -> (bool, String) {
    let r = lax_report(&state.inner, margin);
    (r.passed(), r.to_string())
}

#[pyfunction]
fn jost_transport(state: &PyState) -> PyResult<bool> {
    jost_transport_check(&state.inner).map_err(err)
}

/// `(pattern, width, period)` for every single island up to `max_width`.
#[pyfunction]
fn census(max_width: usize) -> PyResult<Vec<(String, usize, usize)>> {
    if max_width > MAX_CENSUS_WIDTH {
        return Err(PyValueError::new_err(format!(
            "max_width must be at most {MAX_CENSUS_WIDTH}"
        )));
    }
    Ok(run_census(max_width)
        .into_iter()
        .map(|r| (r.pattern, r.width, r.period))
        .collect())
}

#[pymodule]
fn f2ca_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyState>()?;
    m.add_class::<PyInvariants>()?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add_function(wrap_pyfunction!(jost, m)?)?;
    m.add_function(wrap_pyfunction!(jost_str, m)?)?;
    m.add_function(wrap_pyfunction!(jost_mod2, m)?)?;
    m.add_function(wrap_pyfunction!(measures, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(conserved, m)?)?;
    m.add_function(wrap_pyfunction!(monodromy_data, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lax, m)?)?;
    m.add_function(wrap_pyfunction!(jost_transport, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    Ok(())
}
