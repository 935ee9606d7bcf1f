//! Python bindings: terms, derivations and the sense/denotation comparison.

use std::collections::BTreeMap;
use std::path::PathBuf;

use proofmean::alpha::{alpha_equal, canonical};
use proofmean::meaning::{self, Derivation as Inner, SenseMode};
use proofmean::rewrite::{normalize_with_budget, EqualityMode, Limits, DEFAULT_MAX_STEPS};
use proofmean::syntax::{parse_formula, parse_source, parse_term, render_derivation};
use proofmean::{type_of, Context, Var};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(proofmean, ProofmeanError, PyException);
create_exception!(proofmean, ParseError, ProofmeanError);
create_exception!(proofmean, CheckError, ProofmeanError);
create_exception!(proofmean, RewriteError, ProofmeanError);

fn parse_err(e: impl ToString) -> PyErr {
    ParseError::new_err(e.to_string())
}

fn meaning_err(e: meaning::MeaningError) -> PyErr {
    match e {
        meaning::MeaningError::Check(e) => CheckError::new_err(e.to_string()),
        e => RewriteError::new_err(e.to_string()),
    }
}

fn check_err(e: meaning::CheckError) -> PyErr {
    CheckError::new_err(e.to_string())
}

fn sense_mode(multiset: bool) -> SenseMode {
    if multiset {
        SenseMode::Multiset
    } else {
        SenseMode::Set
    }
}

fn equality_mode(mode: &str, fuel: usize) -> PyResult<EqualityMode> {
    match mode {
        "beta-eta" => Ok(EqualityMode::BetaEta),
        "beta-eta-gamma" if fuel > 0 => Ok(EqualityMode::gamma(fuel)),
        "beta-eta-gamma" => Err(PyValueError::new_err("fuel must be positive")),
        other => Err(PyValueError::new_err(format!(
            "unknown mode {other:?}, expected beta-eta or beta-eta-gamma"
        ))),
    }
}

fn renaming_map(r: &meaning::Renaming) -> BTreeMap<String, String> {
    r.iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

/// A λ-term.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "proofmean")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term(proofmean::Term);

#[pymethods]
impl Term {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_term(text).map(Term).map_err(parse_err)
    }

    fn alpha_equal(&self, other: &Term) -> bool {
        alpha_equal(&self.0, &other.0)
    }

    /// Binders renamed to x0, x1, … in pre-order.
    fn canonical(&self) -> Term {
        Term(canonical(&self.0))
    }

    #[pyo3(signature = (max_steps = DEFAULT_MAX_STEPS))]
    fn normalize(&self, max_steps: usize) -> PyResult<Term> {
        normalize_with_budget(&self.0, max_steps)
            .map(Term)
            .map_err(|e| RewriteError::new_err(e.to_string()))
    }

    /// The formula of the term, given formulas for its free variables.
    #[pyo3(signature = (context = BTreeMap::new()))]
    fn type_of(&self, context: BTreeMap<String, String>) -> PyResult<String> {
        let ctx = context
            .into_iter()
            .map(|(x, a)| Ok((Var::new(x), parse_formula(&a).map_err(parse_err)?)))
            .collect::<PyResult<Context>>()?;
        type_of(&ctx, &self.0)
            .map(|a| a.to_string())
            .map_err(|e| CheckError::new_err(e.to_string()))
    }

    fn free_vars(&self) -> Vec<String> {
        self.0.free_vars().iter().map(|x| x.to_string()).collect()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", self.0.to_string())
    }
}

/// A natural deduction or sequent calculus derivation.
#[pyclass(frozen, eq, skip_from_py_object, module = "proofmean")]
#[derive(Clone)]
pub struct Derivation {
    inner: Inner,
    name: Option<String>,
}

// The header name is not part of the derivation.
impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

#[pymethods]
impl Derivation {
    /// Parses source text; `calculus` ("nd" or "sc") is needed only without a header.
    #[staticmethod]
    #[pyo3(signature = (text, calculus = None))]
    fn parse(text: &str, calculus: Option<&str>) -> PyResult<Self> {
        let default = match calculus {
            None => None,
            Some("nd") => Some(meaning::Calculus::Nd),
            Some("sc") => Some(meaning::Calculus::Sc),
            Some(other) => {
                return Err(PyValueError::new_err(format!("unknown calculus {other:?}")))
            }
        };
        let src = parse_source(text, default).map_err(parse_err)?;
        Ok(Derivation {
            inner: src.derivation,
            name: src.name,
        })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path)?;
        Derivation::parse(&text, None)
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.name.clone()
    }

    #[getter]
    fn calculus(&self) -> String {
        self.inner.calculus().to_string()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    /// The judgment at the root, as `Γ |- t : A`.
    fn check(&self) -> PyResult<String> {
        self.inner.check().map(|c| c.to_string()).map_err(check_err)
    }

    fn formula(&self) -> PyResult<String> {
        self.inner
            .check()
            .map(|c| c.formula.to_string())
            .map_err(check_err)
    }

    fn end_term(&self) -> PyResult<Term> {
        self.inner.end_term().map(Term).map_err(check_err)
    }

    /// Sense elements with their multiplicities.
    #[pyo3(signature = (multiset = false))]
    fn sense(&self, multiset: bool) -> PyResult<Vec<(Term, usize)>> {
        let s = meaning::sense_of(&self.inner, sense_mode(multiset)).map_err(check_err)?;
        Ok(s.sorted_with_counts()
            .into_iter()
            .map(|(t, n)| (Term(t.clone()), n))
            .collect())
    }

    fn denotation(&self) -> PyResult<Term> {
        meaning::denotation_of(&self.inner)
            .map(Term)
            .map_err(meaning_err)
    }

    fn render(&self) -> String {
        render_derivation(&self.inner)
    }

    fn __repr__(&self) -> String {
        match &self.name {
            Some(n) => format!("<Derivation {} {n}>", self.inner.calculus()),
            None => format!("<Derivation {}>", self.inner.calculus()),
        }
    }
}

/// A renaming carrying the sense of `d1` onto that of `d2`, if any.
#[pyfunction]
#[pyo3(signature = (d1, d2, multiset = false))]
fn same_sense(
    d1: &Derivation,
    d2: &Derivation,
    multiset: bool,
) -> PyResult<Option<BTreeMap<String, String>>> {
    meaning::same_sense(&d1.inner, &d2.inner, sense_mode(multiset))
        .map(|r| r.as_ref().map(renaming_map))
        .map_err(check_err)
}

/// Whether the two derivations have βη- (or γ-) equal end-terms.
#[pyfunction]
#[pyo3(signature = (d1, d2, mode = "beta-eta", fuel = 4))]
fn same_denotation(d1: &Derivation, d2: &Derivation, mode: &str, fuel: usize) -> PyResult<bool> {
    meaning::same_denotation(&d1.inner, &d2.inner, equality_mode(mode, fuel)?).map_err(meaning_err)
}

/// The verdict for a pair of derivations.
#[pyfunction]
#[pyo3(signature = (d1, d2, mode = "beta-eta", fuel = 4))]
fn classify(d1: &Derivation, d2: &Derivation, mode: &str, fuel: usize) -> PyResult<String> {
    meaning::classify(&d1.inner, &d2.inner, equality_mode(mode, fuel)?)
        .map(|v| v.to_string())
        .map_err(meaning_err)
}

/// The verdict with its supporting data.
#[pyclass(frozen, get_all, module = "proofmean")]
pub struct Comparison {
    verdict: String,
    renaming: Option<BTreeMap<String, String>>,
    only_left: Vec<Term>,
    only_right: Vec<Term>,
    normal_forms: (Term, Term),
}

#[pymethods]
impl Comparison {
    fn __repr__(&self) -> String {
        format!("<Comparison {}>", self.verdict)
    }
}

#[pyfunction]
#[pyo3(signature = (d1, d2, mode = "beta-eta", fuel = 4, multiset = false))]
fn compare(
    d1: &Derivation,
    d2: &Derivation,
    mode: &str,
    fuel: usize,
    multiset: bool,
) -> PyResult<Comparison> {
    let c = meaning::compare(
        &d1.inner,
        &d2.inner,
        equality_mode(mode, fuel)?,
        sense_mode(multiset),
        &Limits::default(),
    )
    .map_err(meaning_err)?;
    let terms = |ts: Vec<proofmean::Term>| ts.into_iter().map(Term).collect();
    Ok(Comparison {
        verdict: c.verdict.to_string(),
        renaming: c.renaming.as_ref().map(renaming_map),
        only_left: terms(c.only_left),
        only_right: terms(c.only_right),
        normal_forms: (Term(c.normal_forms.0), Term(c.normal_forms.1)),
    })
}

#[pymodule]
#[pyo3(name = "proofmean")]
fn proofmean_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<Term>()?;
    m.add_class::<Derivation>()?;
    m.add_class::<Comparison>()?;
    m.add_function(wrap_pyfunction!(same_sense, m)?)?;
    m.add_function(wrap_pyfunction!(same_denotation, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add("ProofmeanError", py.get_type::<ProofmeanError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("CheckError", py.get_type::<CheckError>())?;
    m.add("RewriteError", py.get_type::<RewriteError>())?;
    Ok(())
}
