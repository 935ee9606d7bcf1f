//! Sense and denotation of derivations, and their comparison.
//!
//! The denotation of a derivation is the equivalence class of its end-term;
//! [`denotation_of`] returns the βη-normal representative. The sense is the
//! collection of terms annotating the derivation's nodes, kept with their
//! literal variable names. Two senses are the same when a single bijective,
//! type-respecting renaming of variables maps one onto the other.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::context::Context;
use crate::formula::Formula;
use crate::nd::{check_nd, check_nd_nodes, nd_variable_types, NdDerivation, NdError};
use crate::rewrite::{
    equivalent_in, equivalent_with, normalize_with_budget, EqualityMode, Limits, RewriteError,
};
use crate::sc::{check_sc, check_sc_nodes, sc_variable_types, ScDerivation, ScError};
use crate::term::{Branch, Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    Nd,
    Sc,
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Calculus::Nd => "nd",
            Calculus::Sc => "sc",
        })
    }
}

/// A derivation in either calculus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Derivation {
    Nd(NdDerivation),
    Sc(ScDerivation),
}

impl From<NdDerivation> for Derivation {
    fn from(d: NdDerivation) -> Self {
        Derivation::Nd(d)
    }
}

impl From<ScDerivation> for Derivation {
    fn from(d: ScDerivation) -> Self {
        Derivation::Sc(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Nd(#[from] NdError),
    #[error(transparent)]
    Sc(#[from] ScError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeaningError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Root of a checked derivation: open assumptions (or antecedent), end-term
/// and end formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub context: Context,
    #[serde(serialize_with = "crate::report::display")]
    pub term: Term,
    #[serde(serialize_with = "crate::report::display")]
    pub formula: Formula,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.context.is_empty() {
            write!(f, "{} ", self.context)?;
        }
        write!(f, "|- {} : {}", self.term, self.formula)
    }
}

impl Derivation {
    pub fn calculus(&self) -> Calculus {
        match self {
            Derivation::Nd(_) => Calculus::Nd,
            Derivation::Sc(_) => Calculus::Sc,
        }
    }

    pub fn check(&self) -> Result<Conclusion, CheckError> {
        Ok(match self {
            Derivation::Nd(d) => {
                let j = check_nd(d)?;
                Conclusion {
                    context: j.open,
                    term: j.term,
                    formula: j.formula,
                }
            }
            Derivation::Sc(d) => {
                let s = check_sc(d)?;
                Conclusion {
                    context: s.antecedent,
                    term: s.term,
                    formula: s.succedent,
                }
            }
        })
    }

    pub fn end_term(&self) -> Result<Term, CheckError> {
        self.check().map(|c| c.term)
    }

    /// Every variable used in the derivation with its formula.
    pub fn variable_types(&self) -> Result<BTreeMap<Var, Formula>, CheckError> {
        Ok(match self {
            Derivation::Nd(d) => nd_variable_types(d)?,
            Derivation::Sc(d) => sc_variable_types(d)?,
        })
    }

    pub fn rename_vars(&self, f: &impl Fn(&Var) -> Var) -> Derivation {
        match self {
            Derivation::Nd(d) => Derivation::Nd(d.rename_vars(f)),
            Derivation::Sc(d) => Derivation::Sc(d.rename_vars(f)),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Derivation::Nd(d) => d.node_count(),
            Derivation::Sc(d) => d.node_count(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SenseMode {
    #[default]
    Set,
    Multiset,
}

/// Terms occurring in a derivation, with multiplicities in multiset mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sense {
    mode: SenseMode,
    elements: BTreeMap<Term, usize>,
}

impl Sense {
    fn new(mode: SenseMode) -> Self {
        Sense {
            mode,
            elements: BTreeMap::new(),
        }
    }

    fn add(&mut self, t: Term) {
        let n = self.elements.entry(t).or_insert(0);
        if self.mode == SenseMode::Multiset || *n == 0 {
            *n += 1;
        }
    }

    pub fn mode(&self) -> SenseMode {
        self.mode
    }

    /// Number of distinct elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.elements.contains_key(t)
    }

    pub fn count(&self, t: &Term) -> usize {
        self.elements.get(t).copied().unwrap_or(0)
    }

    /// Distinct elements ordered by size, then by rendering.
    pub fn sorted(&self) -> Vec<&Term> {
        let mut v: Vec<&Term> = self.elements.keys().collect();
        v.sort_by_cached_key(|t| (t.size(), t.to_string()));
        v
    }

    /// Elements with their multiplicities, in [`Sense::sorted`] order.
    pub fn sorted_with_counts(&self) -> Vec<(&Term, usize)> {
        self.sorted()
            .into_iter()
            .map(|t| (t, self.elements[t]))
            .collect()
    }

    /// Elements of `self` that `other` lacks (or has fewer copies of).
    pub fn difference(&self, other: &Sense) -> Vec<Term> {
        self.sorted()
            .into_iter()
            .filter(|t| self.count(t) > other.count(t))
            .cloned()
            .collect()
    }

    /// Every variable name occurring in some element, free or bound.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.elements.keys().flat_map(|t| t.all_vars()).collect()
    }

    pub fn renamed(&self, rho: &Renaming) -> Sense {
        let mut out = Sense::new(self.mode);
        for (t, n) in &self.elements {
            *out.elements.entry(rename_term(t, rho)).or_insert(0) += n;
        }
        out
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (t, n)) in self.sorted_with_counts().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
            if n > 1 {
                write!(f, " (x{n})")?;
            }
        }
        f.write_str("}")
    }
}

/// Collects the annotating terms of every node.
///
/// Natural deduction contributes the term of each formula occurrence. The
/// sequent calculus contributes the succedent term of each sequent and a
/// variable for each antecedent entry.
pub fn sense_of(d: &Derivation, mode: SenseMode) -> Result<Sense, CheckError> {
    let mut sense = Sense::new(mode);
    match d {
        Derivation::Nd(d) => {
            for (_, j) in check_nd_nodes(d)? {
                sense.add(j.term);
            }
        }
        Derivation::Sc(d) => {
            for (_, s) in check_sc_nodes(d)? {
                for x in s.antecedent.vars() {
                    sense.add(Term::Var(x.clone()));
                }
                sense.add(s.term);
            }
        }
    }
    Ok(sense)
}

/// Variable renaming witnessing synonymy.
pub type Renaming = BTreeMap<Var, Var>;

/// A renaming under which the two senses coincide, if there is one.
///
/// The renaming is bijective on the variables of the senses, preserves each
/// variable's formula and sends the first end-term to the second.
pub fn same_sense(
    d1: &Derivation,
    d2: &Derivation,
    mode: SenseMode,
) -> Result<Option<Renaming>, CheckError> {
    let s1 = sense_of(d1, mode)?;
    let s2 = sense_of(d2, mode)?;
    let m1 = SenseMatch {
        sense: &s1,
        end: d1.end_term()?,
        types: d1.variable_types()?,
    };
    let m2 = SenseMatch {
        sense: &s2,
        end: d2.end_term()?,
        types: d2.variable_types()?,
    };
    Ok(find_renaming(&m1, &m2))
}

struct SenseMatch<'a> {
    sense: &'a Sense,
    end: Term,
    types: BTreeMap<Var, Formula>,
}

fn find_renaming(a: &SenseMatch<'_>, b: &SenseMatch<'_>) -> Option<Renaming> {
    if a.sense.len() != b.sense.len() || a.sense.variables().len() != b.sense.variables().len() {
        return None;
    }
    // The end-term goes first, then larger terms, which constrain the most.
    let mut order: Vec<&Term> = a.sense.elements.keys().filter(|t| **t != a.end).collect();
    order.sort_by_key(|t| std::cmp::Reverse(t.size()));
    order.insert(0, &a.end);
    let targets: Vec<&Term> = b.sense.elements.keys().collect();
    let mut used = vec![false; targets.len()];
    let mut search = RenamingSearch {
        a,
        b,
        order,
        targets,
    };
    search.go(0, &Bijection::default(), &mut used)
}

#[derive(Clone, Default)]
struct Bijection {
    forward: Renaming,
    backward: BTreeMap<Var, Var>,
}

struct RenamingSearch<'a, 'm> {
    a: &'a SenseMatch<'m>,
    b: &'a SenseMatch<'m>,
    order: Vec<&'a Term>,
    targets: Vec<&'a Term>,
}

impl RenamingSearch<'_, '_> {
    fn go(&mut self, i: usize, rho: &Bijection, used: &mut [bool]) -> Option<Renaming> {
        let Some(&t1) = self.order.get(i) else {
            return Some(rho.forward.clone());
        };
        for j in 0..self.targets.len() {
            let t2 = self.targets[j];
            if used[j]
                || (i == 0 && *t2 != self.b.end)
                || self.a.sense.count(t1) != self.b.sense.count(t2)
            {
                continue;
            }
            let mut next = rho.clone();
            if !self.unify(t1, t2, &mut next) {
                continue;
            }
            used[j] = true;
            if let Some(found) = self.go(i + 1, &next, used) {
                return Some(found);
            }
            used[j] = false;
        }
        None
    }

    fn bind(&self, x: &Var, y: &Var, rho: &mut Bijection) -> bool {
        match (rho.forward.get(x), rho.backward.get(y)) {
            (Some(fx), _) => fx == y,
            (None, Some(_)) => false,
            (None, None) => {
                if self.a.types.get(x) != self.b.types.get(y) {
                    return false;
                }
                rho.forward.insert(x.clone(), y.clone());
                rho.backward.insert(y.clone(), x.clone());
                true
            }
        }
    }

    fn unify(&self, t1: &Term, t2: &Term, rho: &mut Bijection) -> bool {
        match (t1, t2) {
            (Term::Var(x), Term::Var(y)) => self.bind(x, y, rho),
            (Term::Lam(x, a, b1), Term::Lam(y, c, b2)) => {
                a == c && self.bind(x, y, rho) && self.unify(b1, b2, rho)
            }
            (Term::App(f1, a1), Term::App(f2, a2)) | (Term::Pair(f1, a1), Term::Pair(f2, a2)) => {
                self.unify(f1, f2, rho) && self.unify(a1, a2, rho)
            }
            (Term::Fst(u), Term::Fst(v)) | (Term::Snd(u), Term::Snd(v)) => self.unify(u, v, rho),
            (Term::Inl(u, a), Term::Inl(v, b))
            | (Term::Inr(u, a), Term::Inr(v, b))
            | (Term::Abort(u, a), Term::Abort(v, b)) => a == b && self.unify(u, v, rho),
            (Term::Case(s1, l1, r1), Term::Case(s2, l2, r2)) => {
                l1.ty == l2.ty
                    && r1.ty == r2.ty
                    && self.unify(s1, s2, rho)
                    && self.bind(&l1.var, &l2.var, rho)
                    && self.unify(&l1.body, &l2.body, rho)
                    && self.bind(&r1.var, &r2.var, rho)
                    && self.unify(&r1.body, &r2.body, rho)
            }
            _ => false,
        }
    }
}

/// Renames every variable occurrence, bound or free, through `rho`.
/// Variables outside its domain are kept.
pub fn rename_term(t: &Term, rho: &Renaming) -> Term {
    let r = |x: &Var| rho.get(x).cloned().unwrap_or_else(|| x.clone());
    match t {
        Term::Var(x) => Term::Var(r(x)),
        Term::Lam(x, a, b) => Term::lam(r(x), a.clone(), rename_term(b, rho)),
        Term::Case(s, lb, rb) => Term::case(
            rename_term(s, rho),
            Branch::new(r(&lb.var), lb.ty.clone(), rename_term(&lb.body, rho)),
            Branch::new(r(&rb.var), rb.ty.clone(), rename_term(&rb.body, rho)),
        ),
        _ => crate::alpha::rebuild(t, |c| rename_term(c, rho)),
    }
}

/// The βη-normal representative of the end-term's equivalence class.
pub fn denotation_of(d: &Derivation) -> Result<Term, MeaningError> {
    denotation_with(d, &Limits::default())
}

pub fn denotation_with(d: &Derivation, limits: &Limits) -> Result<Term, MeaningError> {
    Ok(normalize_with_budget(&d.end_term()?, limits.max_steps)?)
}

/// Whether the end-terms are equal in `mode`. Derivations of different
/// formulas never share a denotation.
pub fn same_denotation(
    d1: &Derivation,
    d2: &Derivation,
    mode: EqualityMode,
) -> Result<bool, MeaningError> {
    same_denotation_with(d1, d2, mode, &Limits::default())
}

pub fn same_denotation_with(
    d1: &Derivation,
    d2: &Derivation,
    mode: EqualityMode,
    limits: &Limits,
) -> Result<bool, MeaningError> {
    let c1 = d1.check()?;
    let c2 = d2.check()?;
    if c1.formula != c2.formula {
        return Ok(false);
    }
    let ctx = shared_context(&c1, &c2);
    Ok(equivalent_in(&ctx, &c1.term, &c2.term, mode, limits)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    SameSenseSameDenotation,
    DifferentSenseSameDenotation,
    DifferentDenotation,
    SameDenotationUpToGamma { inconclusive: bool },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::SameSenseSameDenotation => f.write_str("SameSenseSameDenotation"),
            Verdict::DifferentSenseSameDenotation => f.write_str("DifferentSenseSameDenotation"),
            Verdict::DifferentDenotation => f.write_str("DifferentDenotation"),
            Verdict::SameDenotationUpToGamma {
                inconclusive: false,
            } => f.write_str("SameDenotationUpToGamma"),
            Verdict::SameDenotationUpToGamma { inconclusive: true } => {
                f.write_str("SameDenotationUpToGamma (inconclusive)")
            }
        }
    }
}

/// A verdict with the data supporting it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub verdict: Verdict,
    /// The synonymy witness, when the senses agree.
    pub renaming: Option<Renaming>,
    /// Sense elements found only on the left, and only on the right.
    pub only_left: Vec<Term>,
    pub only_right: Vec<Term>,
    pub normal_forms: (Term, Term),
    pub formulas: (Formula, Formula),
}

/// Types for the free variables of both end-terms. A variable open at
/// different formulas on the two sides is left untyped.
fn shared_context(c1: &Conclusion, c2: &Conclusion) -> Context {
    c1.context
        .iter()
        .chain(c2.context.iter())
        .filter(|(x, a)| {
            [&c1.context, &c2.context]
                .iter()
                .all(|c| c.get(x).is_none_or(|b| b == *a))
        })
        .map(|(x, a)| (x.clone(), a.clone()))
        .collect()
}

/// Places a pair of derivations in the sense/denotation taxonomy.
pub fn classify(
    d1: &Derivation,
    d2: &Derivation,
    mode: EqualityMode,
) -> Result<Verdict, MeaningError> {
    compare(d1, d2, mode, SenseMode::Set, &Limits::default()).map(|c| c.verdict)
}

pub fn compare(
    d1: &Derivation,
    d2: &Derivation,
    mode: EqualityMode,
    sense_mode: SenseMode,
    limits: &Limits,
) -> Result<Comparison, MeaningError> {
    let c1 = d1.check()?;
    let c2 = d2.check()?;
    let s1 = sense_of(d1, sense_mode)?;
    let s2 = sense_of(d2, sense_mode)?;
    let renaming = same_sense(d1, d2, sense_mode)?;
    let n1 = normalize_with_budget(&c1.term, limits.max_steps)?;
    let n2 = normalize_with_budget(&c2.term, limits.max_steps)?;
    let same_formula = c1.formula == c2.formula;
    let beta_eta =
        same_formula && equivalent_with(&c1.term, &c2.term, EqualityMode::BetaEta, limits)?;

    let verdict = if renaming.is_some() && beta_eta {
        Verdict::SameSenseSameDenotation
    } else if !same_formula {
        Verdict::DifferentDenotation
    } else if beta_eta {
        Verdict::DifferentSenseSameDenotation
    } else if mode.is_gamma() {
        match equivalent_in(&shared_context(&c1, &c2), &c1.term, &c2.term, mode, limits) {
            Ok(true) => Verdict::SameDenotationUpToGamma {
                inconclusive: false,
            },
            Ok(false) => Verdict::DifferentDenotation,
            Err(RewriteError::Inconclusive { .. }) => {
                Verdict::SameDenotationUpToGamma { inconclusive: true }
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        Verdict::DifferentDenotation
    };
    Ok(Comparison {
        verdict,
        only_left: s1.difference(&s2),
        only_right: s2.difference(&s1),
        renaming,
        normal_forms: (n1, n2),
        formulas: (c1.formula, c2.formula),
    })
}
