//! Python bindings. Structured results come back as plain dicts and lists
//! with the same layout as the command-line `--json` output.

use maya_jacobi::algebra::{parse_rational, rational_to_string, Rational};
use maya_jacobi::cli;
use maya_jacobi::maya::{self, equivalence, tuple_to_diagrams};
use maya_jacobi::spectral::{verify_eigenfunction, verify_extra_eigenstate};
use maya_jacobi::{Direction, Error, ReductionTarget, State, StateTuple, StateType, Which};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

create_exception!(maya_jacobi, MayaJacobiError, PyValueError);

fn err(e: Error) -> PyErr {
    MayaJacobiError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| MayaJacobiError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).ok_or_else(|| MayaJacobiError::new_err(format!("'{}' is not a rational number", s)))
}

fn instantiation(g: Option<&str>, h: Option<&str>) -> PyResult<Option<(Rational, Rational)>> {
    match (g, h) {
        (None, None) => Ok(None),
        (Some(g), Some(h)) => {
            let (g, h) = (rational(g)?, rational(h)?);
            maya_jacobi::Point::new(g.clone(), h.clone()).map_err(err)?;
            Ok(Some((g, h)))
        }
        _ => Err(MayaJacobiError::new_err("g and h must be given together")),
    }
}

/// An ordered tuple of distinct eigenstates and seed solutions, e.g. `"I1,II2,III1"`.
#[pyclass(name = "StateTuple", frozen, skip_from_py_object, eq, hash, module = "maya_jacobi")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyStateTuple {
    inner: StateTuple,
}

#[pymethods]
impl PyStateTuple {
    #[new]
    #[pyo3(signature = (spec = ""))]
    fn new(spec: &str) -> PyResult<Self> {
        StateTuple::parse(spec).map(|inner| PyStateTuple { inner }).map_err(err)
    }

    /// `(type, index)` pairs in order.
    fn states(&self) -> Vec<(&'static str, u32)> {
        self.inner.states().iter().map(|s| (s.kind.as_str(), s.index)).collect()
    }

    fn indices(&self, kind: &str) -> PyResult<Vec<u32>> {
        let kind = match kind {
            "N" => StateType::N,
            "I" => StateType::I,
            "II" => StateType::II,
            "III" => StateType::III,
            _ => return Err(MayaJacobiError::new_err(format!("unknown state type '{}'", kind))),
        };
        Ok(self.inner.indices(kind))
    }

    fn sorted(&self) -> Self {
        PyStateTuple { inner: self.inner.sorted() }
    }

    fn with_state(&self, kind: &str, index: u32) -> PyResult<Self> {
        let s: State = format!("{}{}", kind, index).parse().map_err(err)?;
        self.inner.with(s).map(|inner| PyStateTuple { inner }).map_err(err)
    }

    fn without(&self, position: usize) -> PyResult<Self> {
        self.inner.without(position).map(|inner| PyStateTuple { inner }).map_err(err)
    }

    /// The two Maya diagrams as ASCII strings.
    fn diagrams(&self) -> (String, String) {
        let d = tuple_to_diagrams(&self.inner);
        (d.first.render(), d.second.render())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("StateTuple('{}')", self.inner)
    }
}

fn tuple_arg(t: &Bound<'_, PyAny>) -> PyResult<StateTuple> {
    if let Ok(t) = t.cast::<PyStateTuple>() {
        return Ok(t.get().inner.clone());
    }
    StateTuple::parse(&t.extract::<String>()?).map_err(err)
}

/// Wronskian of a tuple: prefactor exponents, degree and exact coefficients in eta.
#[pyfunction]
#[pyo3(signature = (tuple, g = None, h = None))]
fn wronskian<'py>(py: Python<'py>, tuple: &Bound<'py, PyAny>, g: Option<&str>, h: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let t = tuple_arg(tuple)?;
    let report = cli::poly_report(&t, instantiation(g, h)?).map_err(err)?;
    to_py(py, &report)
}

/// Maya diagram pair with the left-white and right-black positions.
#[pyfunction]
fn maya_diagrams<'py>(py: Python<'py>, tuple: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &cli::maya_report(&tuple_arg(tuple)?))
}

/// Reduces a tuple to one of the normal forms `IN`, `I3`, `2N`, `23`.
#[pyfunction]
#[pyo3(signature = (tuple, target = "IN", verify = false, g = None, h = None))]
fn reduce<'py>(
    py: Python<'py>,
    tuple: &Bound<'py, PyAny>,
    target: &str,
    verify: bool,
    g: Option<&str>,
    h: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let t = tuple_arg(tuple)?;
    let target: ReductionTarget = target.parse().map_err(err)?;
    let report = cli::reduce_report(&t, target, verify, instantiation(g, h)?).map_err(err)?;
    to_py(py, &report)
}

/// Applies one division move and returns the new tuple with its ledger.
#[pyfunction]
fn move_division<'py>(py: Python<'py>, tuple: &Bound<'py, PyAny>, diagram: &str, direction: &str) -> PyResult<Bound<'py, PyAny>> {
    let which = match diagram {
        "first" => Which::First,
        "second" => Which::Second,
        _ => return Err(MayaJacobiError::new_err("diagram must be 'first' or 'second'")),
    };
    let dir = match direction {
        "left" => Direction::Left,
        "right" => Direction::Right,
        _ => return Err(MayaJacobiError::new_err("direction must be 'left' or 'right'")),
    };
    let (moved, ledger) = cli::moved_tuple(&tuple_arg(tuple)?, which, dir);
    let out = (PyStateTuple { inner: moved }, to_py(py, &ledger)?);
    out.into_pyobject(py).map(|t| t.into_any())
}

/// Permitted energy levels up to `E_{up_to}`, optionally checked at a parameter point.
#[pyfunction]
#[pyo3(signature = (tuple, up_to = 6, verify = false, g = None, h = None))]
fn spectrum<'py>(
    py: Python<'py>,
    tuple: &Bound<'py, PyAny>,
    up_to: u32,
    verify: bool,
    g: Option<&str>,
    h: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let t = tuple_arg(tuple)?;
    let report = cli::spectrum_report(&t, up_to, verify, instantiation(g, h)?).map_err(err)?;
    to_py(py, &report)
}

/// Checks that the `n`-th deformed eigenfunction solves the deformed problem.
#[pyfunction]
#[pyo3(signature = (tuple, n, g = None, h = None))]
fn check_eigenfunction(tuple: &Bound<'_, PyAny>, n: u32, g: Option<&str>, h: Option<&str>) -> PyResult<bool> {
    let t = tuple_arg(tuple)?;
    Ok(verify_eigenfunction(&t, n, instantiation(g, h)?).map_err(err)?.holds)
}

/// Checks the extra eigenstate obtained by deleting the type-III seed at `position`.
#[pyfunction]
#[pyo3(signature = (tuple, position, g = None, h = None))]
fn check_extra_eigenstate(tuple: &Bound<'_, PyAny>, position: usize, g: Option<&str>, h: Option<&str>) -> PyResult<bool> {
    let t = tuple_arg(tuple)?;
    Ok(verify_extra_eigenstate(&t, position, instantiation(g, h)?).map_err(err)?.holds)
}

/// Whether two tuples give proportional Wronskians up to a parameter shift.
#[pyfunction]
fn equivalent<'py>(py: Python<'py>, first: &Bound<'py, PyAny>, second: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &equivalence(&tuple_arg(first)?, &tuple_arg(second)?))
}

/// Canonical representative and the ledger relating it to the input.
#[pyfunction]
fn canonical_form<'py>(py: Python<'py>, tuple: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let (t, ledger) = maya::canonical_form(&tuple_arg(tuple)?);
    let out = (PyStateTuple { inner: t }, to_py(py, &ledger)?);
    out.into_pyobject(py).map(|t| t.into_any())
}

/// Runs the command-line tool in-process: `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let argv = std::iter::once("maya-jacobi".to_string()).chain(args);
    let out = cli::run(argv);
    (out.code, out.stdout, out.stderr)
}

/// Normalizes a rational given as a string, e.g. `"74/20"` to `"37/10"`.
#[pyfunction]
fn normalize_rational(s: &str) -> PyResult<String> {
    Ok(rational_to_string(&rational(s)?))
}

#[pymodule]
#[pyo3(name = "maya_jacobi")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MayaJacobiError", m.py().get_type::<MayaJacobiError>())?;
    m.add_class::<PyStateTuple>()?;
    m.add_function(wrap_pyfunction!(wronskian, m)?)?;
    m.add_function(wrap_pyfunction!(maya_diagrams, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(move_division, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(check_eigenfunction, m)?)?;
    m.add_function(wrap_pyfunction!(check_extra_eigenstate, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_form, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_rational, m)?)?;
    Ok(())
}
