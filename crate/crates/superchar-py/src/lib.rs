//! Python bindings: fields, labels, character values, tables and restriction.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use superchar::chars::{evaluate, CharValue as RsCharValue, Evaluator};
use superchar::cli::read_label;
use superchar::oracle::{Oracle, DEFAULT_BUDGET};
use superchar::reps::{
    canonical_form, enumerate_labels, is_normal_form, parse_arcs, render_arcs, style_m, LabelKind, RepStyle,
};
use superchar::restrict::{restrict_embedded, restrict_step, Embedding};
use superchar::{Error, Matrix, PatternPoset};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } | Error::CrossCheck(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn poset(n: usize, m: Option<usize>) -> PyResult<PatternPoset> {
    if n == 0 || n > 16 {
        return Err(PyValueError::new_err(format!("n = {n} outside 1..=16")));
    }
    match m {
        None => Ok(PatternPoset::chain(n)),
        Some(m) => PatternPoset::interpolating(n, m).map_err(py_err),
    }
}

fn style_for(p: &PatternPoset, style: Option<&str>, ev: Option<Evaluator>) -> PyResult<RepStyle> {
    let s = match (style, ev.and_then(Evaluator::style)) {
        (Some(s), _) => RepStyle::parse(s).map_err(py_err)?,
        (None, Some(s)) => s,
        (None, None) if p.is_chain() => RepStyle::UnCanonical,
        (None, None) => RepStyle::Path,
    };
    style_m(p, s).map_err(py_err)?;
    Ok(s)
}

fn evaluator(name: &str) -> PyResult<Option<Evaluator>> {
    match name {
        "auto" => Ok(None),
        s => Evaluator::parse(s).map(Some).map_err(py_err),
    }
}

fn kind(name: &str) -> PyResult<LabelKind> {
    match name {
        "character" => Ok(LabelKind::Character),
        "class" => Ok(LabelKind::Class),
        _ => Err(PyValueError::new_err(format!("unknown label kind {name:?}"))),
    }
}

fn normal(f: &superchar::Field, a: &Matrix, p: &PatternPoset, s: RepStyle, k: LabelKind) -> PyResult<Matrix> {
    if !a.fits(p) {
        return Err(PyValueError::new_err(format!("label has entries outside the positions of {p}")));
    }
    if is_normal_form(a, p, s, k).map_err(py_err)? {
        Ok(a.clone())
    } else {
        canonical_form(f, a, p, s, k).map_err(py_err)
    }
}

/// The finite field F_q.
#[pyclass(frozen, skip_from_py_object)]
struct Field {
    inner: superchar::Field,
}

#[pymethods]
impl Field {
    /// `q` as an int or a string "q", "p^e".
    #[new]
    fn new(q: &Bound<'_, PyAny>) -> PyResult<Self> {
        let text = match q.extract::<u32>() {
            Ok(v) => v.to_string(),
            Err(_) => q.extract::<String>()?,
        };
        Ok(Field { inner: superchar::Field::parse(&text).map_err(py_err)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn e(&self) -> u32 {
        self.inner.e()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    fn element(&self, v: u32) -> PyResult<u32> {
        self.inner.element(v).map(|s| s.0).map_err(py_err)
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.add(self.element_of(a)?, self.element_of(b)?).0)
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.mul(self.element_of(a)?, self.element_of(b)?).0)
    }

    fn neg(&self, a: u32) -> PyResult<u32> {
        Ok(self.inner.neg(self.element_of(a)?).0)
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        self.inner.inv(self.element_of(a)?).map(|s| s.0).map_err(py_err)
    }

    /// theta(a) = zeta_p^{Tr(a)}, as the exponent `Tr(a)`.
    fn theta_exponent(&self, a: u32) -> PyResult<u32> {
        Ok(self.inner.theta_exponent(self.element_of(a)?))
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner.q())
    }
}

impl Field {
    fn element_of(&self, v: u32) -> PyResult<superchar::FieldScalar> {
        self.inner.element(v).map_err(py_err)
    }
}

/// A character value in Q(zeta_p).
#[pyclass(frozen, get_all)]
struct CharValue {
    /// Human-readable form, with `z` for zeta_p.
    text: String,
    /// Canonical coordinates on 1, zeta, ..., zeta^{p-2} as (numerator, denominator) strings.
    coefficients: Vec<(String, String)>,
    /// Set when the value vanishes, naming the condition that forced it.
    zero_reason: Option<String>,
}

#[pymethods]
impl CharValue {
    fn is_zero(&self) -> bool {
        self.zero_reason.is_some() || self.coefficients.iter().all(|(n, _)| n == "0")
    }

    /// The value when it is rational, as (numerator, denominator).
    fn as_rational(&self) -> Option<(String, String)> {
        self.coefficients[1..].iter().all(|(n, _)| n == "0").then(|| self.coefficients[0].clone())
    }

    fn __str__(&self) -> String {
        self.text.clone()
    }

    fn __repr__(&self) -> String {
        format!("CharValue({})", self.text)
    }
}

impl From<RsCharValue> for CharValue {
    fn from(v: RsCharValue) -> Self {
        CharValue {
            text: v.value.to_string(),
            coefficients: v.value.coeffs().iter().map(|c| (c.numer().to_string(), c.denom().to_string())).collect(),
            zero_reason: v.zero_reason.map(|r| format!("{r:?}")),
        }
    }
}

/// Supercharacter (`kind="character"`) or superclass (`kind="class"`) labels in arc notation.
#[pyfunction]
#[pyo3(signature = (n, q, m=None, style=None, kind="character"))]
fn labels(n: usize, q: &Field, m: Option<usize>, style: Option<&str>, kind: &str) -> PyResult<Vec<String>> {
    let p = poset(n, m)?;
    let s = style_for(&p, style, None)?;
    let k = self::kind(kind)?;
    let f = &q.inner;
    Ok(enumerate_labels(f, &p, s, k).map_err(py_err)?.iter().map(|a| render_arcs(f, a)).collect())
}

/// Normal form of an arc-notation label.
#[pyfunction]
#[pyo3(signature = (n, q, label, m=None, style=None, kind="character"))]
fn canonical(n: usize, q: &Field, label: &str, m: Option<usize>, style: Option<&str>, kind: &str) -> PyResult<String> {
    let p = poset(n, m)?;
    let s = style_for(&p, style, None)?;
    let f = &q.inner;
    let a = parse_arcs(f, n, label).map_err(py_err)?;
    Ok(render_arcs(f, &normal(f, &a, &p, s, self::kind(kind)?)?))
}

/// chi^lambda(u), with `u` given by the label of `u - 1`.
#[pyfunction]
#[pyo3(signature = (n, q, lam, u, m=None, evaluator="auto", style=None))]
fn char_value(
    n: usize,
    q: &Field,
    lam: &str,
    u: &str,
    m: Option<usize>,
    evaluator: &str,
    style: Option<&str>,
) -> PyResult<CharValue> {
    let p = poset(n, m)?;
    let requested = self::evaluator(evaluator)?;
    let s = style_for(&p, style, requested)?;
    let ev = requested.unwrap_or_else(|| Evaluator::auto(&p, s));
    let f = &q.inner;
    let l = normal(f, &read_label(f, n, lam).map_err(py_err)?, &p, s, LabelKind::Character)?;
    let x = normal(f, &read_label(f, n, u).map_err(py_err)?, &p, s, LabelKind::Class)?;
    evaluate(f, ev, &p, &l, &x).map(CharValue::from).map_err(py_err)
}

/// chi^lambda(u) straight from the orbit-sum definition (brute force, budgeted).
#[pyfunction]
#[pyo3(signature = (n, q, lam, u, m=None, budget=DEFAULT_BUDGET))]
fn oracle_value(n: usize, q: &Field, lam: &str, u: &str, m: Option<usize>, budget: u128) -> PyResult<String> {
    let p = poset(n, m)?;
    let f = &q.inner;
    let l = read_label(f, n, lam).map_err(py_err)?;
    let x = read_label(f, n, u).map_err(py_err)?;
    let oracle = Oracle::with_budget(f, &p, budget);
    oracle.definitional_char(&l, &x).map(|v| v.to_string()).map_err(py_err)
}

/// The supercharacter table as a dict with `characters`, `classes` and `values` (strings).
#[pyfunction]
#[pyo3(signature = (n, q, m=None, style=None, evaluator="auto"))]
fn table<'py>(
    py: Python<'py>,
    n: usize,
    q: &Field,
    m: Option<usize>,
    style: Option<&str>,
    evaluator: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let p = poset(n, m)?;
    let requested = self::evaluator(evaluator)?;
    let s = style_for(&p, style, requested)?;
    let ev = requested.unwrap_or_else(|| Evaluator::auto(&p, s));
    let f = &q.inner;
    let chars = enumerate_labels(f, &p, s, LabelKind::Character).map_err(py_err)?;
    let classes = enumerate_labels(f, &p, s, LabelKind::Class).map_err(py_err)?;
    let mut values = Vec::with_capacity(chars.len());
    for l in &chars {
        let row: Vec<String> = classes
            .iter()
            .map(|x| evaluate(f, ev, &p, l, x).map(|v| v.value.to_string()))
            .collect::<Result<_, _>>()
            .map_err(py_err)?;
        values.push(row);
    }
    let out = PyDict::new(py);
    out.set_item("characters", chars.iter().map(|a| render_arcs(f, a)).collect::<Vec<_>>())?;
    out.set_item("classes", classes.iter().map(|a| render_arcs(f, a)).collect::<Vec<_>>())?;
    out.set_item("values", values)?;
    Ok(out)
}

/// Restriction to U_{n-1} along `embedding`, or the single step U_(m-1) -> U_(m) when `m` is given.
/// Returns `(coefficient, label)` pairs sorted by label.
#[pyfunction]
#[pyo3(signature = (n, q, label, embedding="first-row", m=None))]
fn restrict(n: usize, q: &Field, label: &str, embedding: &str, m: Option<usize>) -> PyResult<Vec<(u64, String)>> {
    let f = &q.inner;
    let raw = read_label(f, n, label).map_err(py_err)?;
    let d = match m {
        Some(m) => {
            if m == 0 || m > n {
                return Err(PyValueError::new_err(format!("restriction step m = {m} outside 1..={n}")));
            }
            let upper = poset(n, Some(m - 1))?;
            let lam = normal(f, &raw, &upper, RepStyle::Path, LabelKind::Character)?;
            restrict_step(f, &lam, m).map_err(py_err)?
        }
        None => {
            let e = Embedding::parse(embedding).map_err(py_err)?;
            let lam = normal(f, &raw, &poset(n, None)?, RepStyle::UnCanonical, LabelKind::Character)?;
            restrict_embedded(f, &lam, e).map_err(py_err)?
        }
    };
    let mut terms = d.render(f);
    terms.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(terms)
}

#[pymodule(name = "superchar")]
fn superchar_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<CharValue>()?;
    m.add_function(wrap_pyfunction!(labels, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(char_value, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_value, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(restrict, m)?)?;
    Ok(())
}
