//! Python bindings: germs, the order engine, constructions and the CLI.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use germlab::analysis::{
    converge_check, norm_profile, ultradist_triangle, FuncSample, NetSpec, NodeValue, TestResult,
};
use germlab::constructions::{
    arithmetic, compose, diagonal_below, invert, minorize_to_pl, pinch, switch, AnchorSeq, ArithOp, Family,
    PinchDirection,
};
use germlab::dsl::{format_germ_file, parse_germ, parse_germ_file, DslError, Env};
use germlab::order::{arch_class_compare, canonical_eq, compare_germwise, frechet_triage, ArchKind, CompareMode};
use germlab::{Germ, GridWindow, PlGerm, Rat, SeqGerm};

create_exception!(germlab, GermError, PyValueError);

fn err(e: impl std::fmt::Display) -> PyErr {
    GermError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.numer().clone(), r.denom().clone()))
}

fn to_rat(x: &Bound<'_, PyAny>) -> PyResult<Rat> {
    let num: BigInt = x.getattr("numerator")?.extract()?;
    let den: BigInt = x.getattr("denominator")?.extract()?;
    Ok(Rat::new(num, den))
}

/// A germ at 0 on the grid `1/j`.
#[pyclass(name = "Germ", frozen, from_py_object)]
#[derive(Clone)]
struct PyGerm {
    inner: Germ,
}

fn wrap(g: Germ) -> PyGerm {
    PyGerm { inner: g }
}

fn pl_of(g: &PyGerm) -> PyResult<&PlGerm> {
    g.inner.as_pl().ok_or_else(|| err("operation needs a PL germ"))
}

#[pymethods]
impl PyGerm {
    /// Parses a single germ expression, e.g. `pl { k(j) = j^2 + 1 }`.
    #[staticmethod]
    #[pyo3(signature = (text, horizon = germlab::DEFAULT_HORIZON))]
    fn parse(text: &str, horizon: u64) -> PyResult<PyGerm> {
        let e = parse_germ(text).map_err(err)?;
        let mut env = Env::new(Vec::new(), horizon);
        env.eval_expr(&e).map(wrap).map_err(err)
    }

    #[staticmethod]
    fn zero() -> PyGerm {
        wrap(Germ::Zero)
    }

    #[getter]
    fn start(&self) -> u64 {
        self.inner.start()
    }

    #[getter]
    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    #[getter]
    fn is_pl(&self) -> bool {
        self.inner.as_pl().is_some()
    }

    /// Exact value at `1/j` as a `fractions.Fraction`.
    fn value<'py>(&self, py: Python<'py>, j: u64) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.value(j).map_err(err)?)
    }

    /// Integer code `K(j)` of a PL germ.
    fn code(&self, j: u64) -> PyResult<BigInt> {
        pl_of(self)?.code(j).map_err(err)
    }

    fn values<'py>(&self, py: Python<'py>, a: u64, b: u64) -> PyResult<Vec<Bound<'py, PyAny>>> {
        (a..=b).map(|j| self.value(py, j)).collect()
    }

    fn scale(&self, q: &Bound<'_, PyAny>) -> PyResult<PyGerm> {
        arithmetic(&ArithOp::Scale(to_rat(q)?), &self.inner, None).map(wrap).map_err(err)
    }

    fn __add__(&self, other: &PyGerm) -> PyResult<PyGerm> {
        arithmetic(&ArithOp::Add, &self.inner, Some(&other.inner)).map(wrap).map_err(err)
    }

    fn __mul__(&self, other: &PyGerm) -> PyResult<PyGerm> {
        arithmetic(&ArithOp::Mul, &self.inner, Some(&other.inner)).map(wrap).map_err(err)
    }

    fn __truediv__(&self, other: &PyGerm) -> PyResult<PyGerm> {
        arithmetic(&ArithOp::Div, &self.inner, Some(&other.inner)).map(wrap).map_err(err)
    }

    fn validate<'py>(&self, py: Python<'py>, horizon: u64) -> PyResult<Bound<'py, PyDict>> {
        let w = GridWindow::new(self.inner.start(), horizon).map_err(err)?;
        let r = germlab::validate(&self.inner, &w);
        let d = PyDict::new(py);
        d.set_item("valid", r.is_valid())?;
        d.set_item("first_violation", r.first_violation)?;
        d.set_item("limit_verified", r.limit_verified)?;
        d.set_item("tier", r.tier.map(|t| t.name()))?;
        let checks = PyDict::new(py);
        for c in &r.checks {
            checks.set_item(c.name, c.first_violation)?;
        }
        d.set_item("checks", checks)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        match &self.inner {
            Germ::Zero => "Germ(zero)".into(),
            Germ::Pl(p) => match p.closed_tail() {
                Some(c) if p.head().is_empty() => format!("Germ(pl k(j) = {c}, start={})", p.start()),
                _ => format!("Germ(pl, start={})", p.start()),
            },
            Germ::Rat(r) => format!("Germ(rat, start={}, tier={})", r.start(), r.tier().name()),
            Germ::Seq(s) => format!("Germ(seq, start={})", s.start()),
        }
    }
}

/// Germs of a germ file, by name, in file order.
#[pyfunction]
#[pyo3(signature = (text, horizon = germlab::DEFAULT_HORIZON))]
fn load<'py>(py: Python<'py>, text: &str, horizon: u64) -> PyResult<Bound<'py, PyDict>> {
    let defs = parse_germ_file(text).map_err(err)?;
    let mut env = Env::new(defs, horizon);
    let d = PyDict::new(py);
    let names: Vec<String> = env.names().into_iter().map(String::from).collect();
    for n in names {
        let g = env.get(&n).map_err(|e: DslError| err(e))?;
        d.set_item(n, wrap(g))?;
    }
    Ok(d)
}

/// Canonical text of a germ file.
#[pyfunction]
fn format_file(text: &str) -> PyResult<String> {
    Ok(format_germ_file(&parse_germ_file(text).map_err(err)?))
}

fn window(a: &[&PyGerm], horizon: u64, start: Option<u64>) -> PyResult<GridWindow> {
    let from = start.unwrap_or_else(|| a.iter().map(|g| g.inner.start()).max().unwrap_or(1));
    GridWindow::new(from, horizon).map_err(err)
}

/// `(kind, witness_index, horizon, certificate)`.
#[pyfunction]
#[pyo3(signature = (a, b, horizon = germlab::DEFAULT_HORIZON, start = None, mode = "auto"))]
fn compare(a: &PyGerm, b: &PyGerm, horizon: u64, start: Option<u64>, mode: &str) -> PyResult<(String, u64, u64, Option<String>)> {
    let mode = match mode {
        "auto" => CompareMode::Auto,
        "certified" => CompareMode::CertifiedOnly,
        "horizon" => CompareMode::HorizonOnly,
        other => return Err(err(format!("unknown mode {other}"))),
    };
    let w = window(&[a, b], horizon, start)?;
    let v = compare_germwise(&a.inner, &b.inner, &w, mode).map_err(err)?;
    Ok((v.kind.name().to_string(), v.witness_index, v.horizon, v.certificate))
}

#[pyfunction]
#[pyo3(signature = (a, b, horizon = germlab::DEFAULT_HORIZON))]
fn equal(a: &PyGerm, b: &PyGerm, horizon: u64) -> PyResult<(String, u64)> {
    let w = window(&[a, b], horizon, None)?;
    let v = canonical_eq(&a.inner, &b.inner, &w).map_err(err)?;
    Ok((v.kind.name().to_string(), v.witness_index))
}

/// `(kind, n)` with `n` set for `SAME_CLASS`.
#[pyfunction]
#[pyo3(signature = (a, b, horizon = germlab::DEFAULT_HORIZON, n_cap = 1024))]
fn arch_class(a: &PyGerm, b: &PyGerm, horizon: u64, n_cap: u64) -> PyResult<(String, Option<u64>)> {
    let w = window(&[a, b], horizon, None)?;
    let v = arch_class_compare(&a.inner, &b.inner, &w, n_cap).map_err(err)?;
    Ok(match v.kind {
        ArchKind::SameClass(n) => ("SAME_CLASS".into(), Some(n)),
        k => (k.name(), None),
    })
}

/// Triage of the value sequences: `(kind, cofinite_from)`.
#[pyfunction]
fn triage(a: &PyGerm, b: &PyGerm, prefix: u64) -> PyResult<(String, Option<u64>)> {
    let seq = |g: &Germ| {
        let g = g.clone();
        SeqGerm::from_fn(g.start(), "values", move |i| g.value(i))
    };
    let v = frechet_triage(&seq(&a.inner), &seq(&b.inner), prefix).map_err(err)?;
    Ok((v.kind.name().to_string(), v.cofinite_from))
}

#[pyfunction(name = "compose")]
fn py_compose(a: &PyGerm, b: &PyGerm) -> PyResult<PyGerm> {
    compose(pl_of(a)?, pl_of(b)?).map(|p| wrap(Germ::Pl(p))).map_err(err)
}

#[pyfunction(name = "invert")]
fn py_invert(a: &PyGerm) -> PyResult<PyGerm> {
    invert(pl_of(a)?).map(|r| wrap(Germ::Rat(r))).map_err(err)
}

#[pyfunction(name = "switch")]
fn py_switch(a: &PyGerm) -> PyResult<PyGerm> {
    switch(pl_of(a)?).map(|r| wrap(Germ::Rat(r))).map_err(err)
}

#[pyfunction]
fn diagonal(members: Vec<PyGerm>) -> PyResult<PyGerm> {
    let pls = members.iter().map(|g| pl_of(g).cloned()).collect::<PyResult<Vec<_>>>()?;
    diagonal_below(&Family::Finite(pls)).map(|p| wrap(Germ::Pl(p))).map_err(err)
}

/// `(minorant, valid_from)`.
#[pyfunction]
#[pyo3(signature = (m, horizon = germlab::DEFAULT_HORIZON))]
fn minorize(m: &PyGerm, horizon: u64) -> PyResult<(PyGerm, u64)> {
    let r = minorize_to_pl(&m.inner, horizon).map_err(err)?;
    Ok((wrap(Germ::Pl(r.germ)), r.valid_from))
}

#[pyfunction(name = "pinch")]
fn py_pinch(direction: &str, m0: &PyGerm, anchors: Vec<u64>) -> PyResult<PyGerm> {
    let dir = match direction {
        "lower" => PinchDirection::Lower,
        "upper" => PinchDirection::Upper,
        other => return Err(err(format!("direction must be lower or upper, got {other}"))),
    };
    let seq = AnchorSeq::from_list(anchors).map_err(err)?;
    pinch(dir, &m0.inner, &seq).map(|r| wrap(Germ::Rat(r))).map_err(err)
}

/// Norm profile of exact samples `[(x, f(x)), ...]` (Fractions or ints);
/// returns `[(j, value), ...]` over the ball range `1..=j_to`.
#[pyfunction]
fn norm<'py>(py: Python<'py>, points: Vec<(Bound<'py, PyAny>, Bound<'py, PyAny>)>, j_to: u64) -> PyResult<Vec<(u64, Bound<'py, PyAny>)>> {
    let pts = points
        .iter()
        .map(|(x, v)| Ok((to_rat(x)?, to_rat(v)?)))
        .collect::<PyResult<Vec<_>>>()?;
    let s = FuncSample::from_points(pts, 1, j_to).map_err(err)?;
    let p = norm_profile(&s);
    p.window.indices().map(|j| Ok((j, fraction(py, &p.value(j).map_err(err)?)?))).collect()
}

/// Chain net `n1 < n2 < ...` against PL tests; one `(test, verdict, node,
/// index)` per test, where `node`/`index` are `d0`/`j1` or the first
/// failing node and its index.
#[pyfunction]
#[pyo3(signature = (nodes, tests, horizon = germlab::DEFAULT_HORIZON, target = None))]
fn converge_chain(
    nodes: Vec<PyGerm>,
    tests: Vec<PyGerm>,
    horizon: u64,
    target: Option<PyGerm>,
) -> PyResult<Vec<(usize, String, String, u64)>> {
    let battery = tests
        .iter()
        .enumerate()
        .map(|(i, t)| Ok((format!("p{}", i + 1), pl_of(t)?.clone())))
        .collect::<PyResult<Vec<_>>>()?;
    let target = target.map_or(Germ::Zero, |t| t.inner);
    let net = NetSpec::chain(
        nodes.into_iter().map(|g| NodeValue::Germ(g.inner)).collect(),
        NodeValue::Germ(target),
        battery,
    )
    .map_err(err)?;
    let r = converge_check(&net, horizon).map_err(err)?;
    Ok(r
        .tests
        .iter()
        .enumerate()
        .map(|(i, t)| match &t.result {
            TestResult::Converges { d0, j1 } => (i, "CONVERGES".to_string(), d0.clone(), *j1),
            TestResult::Fails { failing, failing_index } => {
                (i, "FAILS".to_string(), failing[0].0.clone(), *failing_index)
            }
        })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (f, g, h, horizon = germlab::DEFAULT_HORIZON, n_cap = 64))]
fn triangle(f: &PyGerm, g: &PyGerm, h: &PyGerm, horizon: u64, n_cap: u64) -> PyResult<String> {
    let w = window(&[f, g, h], horizon, None)?;
    let v = ultradist_triangle(&f.inner, &g.inner, &h.inner, &w, n_cap).map_err(err)?;
    Ok(v.kind.name().to_string())
}

/// Runs the command line in-process: `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut errs = Vec::new();
    let argv = std::iter::once("germlab".to_string()).chain(args);
    let code = germlab::cli::run(argv, &mut out, &mut errs);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&errs).into_owned())
}

#[pymodule]
#[pyo3(name = "germlab")]
fn germlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("GermError", m.py().get_type::<GermError>())?;
    m.add_class::<PyGerm>()?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(format_file, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(equal, m)?)?;
    m.add_function(wrap_pyfunction!(arch_class, m)?)?;
    m.add_function(wrap_pyfunction!(triage, m)?)?;
    m.add_function(wrap_pyfunction!(py_compose, m)?)?;
    m.add_function(wrap_pyfunction!(py_invert, m)?)?;
    m.add_function(wrap_pyfunction!(py_switch, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal, m)?)?;
    m.add_function(wrap_pyfunction!(minorize, m)?)?;
    m.add_function(wrap_pyfunction!(py_pinch, m)?)?;
    m.add_function(wrap_pyfunction!(norm, m)?)?;
    m.add_function(wrap_pyfunction!(converge_chain, m)?)?;
    m.add_function(wrap_pyfunction!(triangle, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
