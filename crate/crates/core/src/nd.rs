//! Term-annotated natural deduction.
//!
//! Each rule builds its conclusion term from the premise terms: hypotheses
//! are variables, `->I` abstracts the discharged variable, `->E` applies,
//! `/\I` pairs, `/\E1`/`/\E2` project, `\/I1`/`\/I2` inject, `\/E` is a
//! `case` over the two discharged variables, `_|_E` is `abort`.
//!
//! Hypotheses with the same variable and formula are one assumption, so a
//! single discharge may close several leaves. Discharging a variable that is
//! not open is allowed; its type then has to be given explicitly.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::context::{Clash, Context};
use crate::formula::Formula;
use crate::node::NodePath;
use crate::term::{Branch, Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NdRule {
    Hyp,
    ImpI,
    ImpE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    AbsurdE,
}

impl NdRule {
    pub const ALL: [NdRule; 10] = [
        NdRule::Hyp,
        NdRule::ImpI,
        NdRule::ImpE,
        NdRule::AndI,
        NdRule::AndE1,
        NdRule::AndE2,
        NdRule::OrI1,
        NdRule::OrI2,
        NdRule::OrE,
        NdRule::AbsurdE,
    ];

    pub fn arity(self) -> usize {
        match self {
            NdRule::Hyp => 0,
            NdRule::ImpI
            | NdRule::AndE1
            | NdRule::AndE2
            | NdRule::OrI1
            | NdRule::OrI2
            | NdRule::AbsurdE => 1,
            NdRule::ImpE | NdRule::AndI => 2,
            NdRule::OrE => 3,
        }
    }

    /// Keyword used in the textual format.
    pub fn keyword(self) -> &'static str {
        match self {
            NdRule::Hyp => "hyp",
            NdRule::ImpI => "imp-i",
            NdRule::ImpE => "imp-e",
            NdRule::AndI => "and-i",
            NdRule::AndE1 => "and-e1",
            NdRule::AndE2 => "and-e2",
            NdRule::OrI1 => "or-i1",
            NdRule::OrI2 => "or-i2",
            NdRule::OrE => "or-e",
            NdRule::AbsurdE => "absurd-e",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.keyword() == s)
    }
}

impl fmt::Display for NdRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NdDerivation {
    Hyp {
        var: Var,
        formula: Formula,
    },
    /// `var_type` is only needed when the discharge is vacuous.
    ImpI {
        var: Var,
        var_type: Option<Formula>,
        premise: Box<NdDerivation>,
    },
    ImpE(Box<NdDerivation>, Box<NdDerivation>),
    AndI(Box<NdDerivation>, Box<NdDerivation>),
    AndE1(Box<NdDerivation>),
    AndE2(Box<NdDerivation>),
    /// Concludes `A \/ other` from a proof of `A`.
    OrI1 {
        other: Formula,
        premise: Box<NdDerivation>,
    },
    /// Concludes `other \/ B` from a proof of `B`.
    OrI2 {
        other: Formula,
        premise: Box<NdDerivation>,
    },
    OrE {
        major: Box<NdDerivation>,
        left_var: Var,
        left: Box<NdDerivation>,
        right_var: Var,
        right: Box<NdDerivation>,
    },
    AbsurdE {
        target: Formula,
        premise: Box<NdDerivation>,
    },
}

impl NdDerivation {
    pub fn hyp(x: &str, a: Formula) -> Self {
        NdDerivation::Hyp {
            var: Var::new(x),
            formula: a,
        }
    }

    pub fn imp_i(x: &str, d: NdDerivation) -> Self {
        NdDerivation::ImpI {
            var: Var::new(x),
            var_type: None,
            premise: Box::new(d),
        }
    }

    /// `->I` with an explicit type for the discharged variable.
    pub fn imp_i_typed(x: &str, a: Formula, d: NdDerivation) -> Self {
        NdDerivation::ImpI {
            var: Var::new(x),
            var_type: Some(a),
            premise: Box::new(d),
        }
    }

    pub fn imp_e(d1: NdDerivation, d2: NdDerivation) -> Self {
        NdDerivation::ImpE(Box::new(d1), Box::new(d2))
    }

    pub fn and_i(d1: NdDerivation, d2: NdDerivation) -> Self {
        NdDerivation::AndI(Box::new(d1), Box::new(d2))
    }

    pub fn and_e1(d: NdDerivation) -> Self {
        NdDerivation::AndE1(Box::new(d))
    }

    pub fn and_e2(d: NdDerivation) -> Self {
        NdDerivation::AndE2(Box::new(d))
    }

    pub fn or_i1(other: Formula, d: NdDerivation) -> Self {
        NdDerivation::OrI1 {
            other,
            premise: Box::new(d),
        }
    }

    pub fn or_i2(other: Formula, d: NdDerivation) -> Self {
        NdDerivation::OrI2 {
            other,
            premise: Box::new(d),
        }
    }

    pub fn or_e(
        major: NdDerivation,
        x: &str,
        left: NdDerivation,
        y: &str,
        right: NdDerivation,
    ) -> Self {
        NdDerivation::OrE {
            major: Box::new(major),
            left_var: Var::new(x),
            left: Box::new(left),
            right_var: Var::new(y),
            right: Box::new(right),
        }
    }

    pub fn absurd_e(target: Formula, d: NdDerivation) -> Self {
        NdDerivation::AbsurdE {
            target,
            premise: Box::new(d),
        }
    }

    pub fn rule(&self) -> NdRule {
        match self {
            NdDerivation::Hyp { .. } => NdRule::Hyp,
            NdDerivation::ImpI { .. } => NdRule::ImpI,
            NdDerivation::ImpE(..) => NdRule::ImpE,
            NdDerivation::AndI(..) => NdRule::AndI,
            NdDerivation::AndE1(_) => NdRule::AndE1,
            NdDerivation::AndE2(_) => NdRule::AndE2,
            NdDerivation::OrI1 { .. } => NdRule::OrI1,
            NdDerivation::OrI2 { .. } => NdRule::OrI2,
            NdDerivation::OrE { .. } => NdRule::OrE,
            NdDerivation::AbsurdE { .. } => NdRule::AbsurdE,
        }
    }

    pub fn premises(&self) -> Vec<&NdDerivation> {
        match self {
            NdDerivation::Hyp { .. } => vec![],
            NdDerivation::ImpI { premise, .. }
            | NdDerivation::OrI1 { premise, .. }
            | NdDerivation::OrI2 { premise, .. }
            | NdDerivation::AbsurdE { premise, .. } => vec![premise],
            NdDerivation::AndE1(d) | NdDerivation::AndE2(d) => vec![d],
            NdDerivation::ImpE(a, b) | NdDerivation::AndI(a, b) => vec![a, b],
            NdDerivation::OrE {
                major, left, right, ..
            } => vec![major, left, right],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .premises()
            .iter()
            .map(|d| d.node_count())
            .sum::<usize>()
    }

    /// Applies `f` to every variable name in the derivation.
    pub fn rename_vars(&self, f: &impl Fn(&Var) -> Var) -> NdDerivation {
        let b = |d: &NdDerivation| Box::new(d.rename_vars(f));
        match self {
            NdDerivation::Hyp { var, formula } => NdDerivation::Hyp {
                var: f(var),
                formula: formula.clone(),
            },
            NdDerivation::ImpI {
                var,
                var_type,
                premise,
            } => NdDerivation::ImpI {
                var: f(var),
                var_type: var_type.clone(),
                premise: b(premise),
            },
            NdDerivation::ImpE(x, y) => NdDerivation::ImpE(b(x), b(y)),
            NdDerivation::AndI(x, y) => NdDerivation::AndI(b(x), b(y)),
            NdDerivation::AndE1(x) => NdDerivation::AndE1(b(x)),
            NdDerivation::AndE2(x) => NdDerivation::AndE2(b(x)),
            NdDerivation::OrI1 { other, premise } => NdDerivation::OrI1 {
                other: other.clone(),
                premise: b(premise),
            },
            NdDerivation::OrI2 { other, premise } => NdDerivation::OrI2 {
                other: other.clone(),
                premise: b(premise),
            },
            NdDerivation::OrE {
                major,
                left_var,
                left,
                right_var,
                right,
            } => NdDerivation::OrE {
                major: b(major),
                left_var: f(left_var),
                left: b(left),
                right_var: f(right_var),
                right: b(right),
            },
            NdDerivation::AbsurdE { target, premise } => NdDerivation::AbsurdE {
                target: target.clone(),
                premise: b(premise),
            },
        }
    }
}

/// `open |- term : formula`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Judgment {
    pub open: Context,
    #[serde(serialize_with = "crate::report::display")]
    pub term: Term,
    #[serde(serialize_with = "crate::report::display")]
    pub formula: Formula,
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.open.is_empty() {
            write!(f, "|- {} : {}", self.term, self.formula)
        } else {
            write!(f, "{} |- {} : {}", self.open, self.term, self.formula)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NdError {
    #[error("{rule} at {path}: {detail}")]
    RuleMismatch {
        rule: NdRule,
        path: NodePath,
        detail: String,
    },
    #[error("bad discharge of {var} at {path}: discharged as {expected} but assumed as {found}")]
    BadDischarge {
        var: Var,
        path: NodePath,
        expected: Formula,
        found: Formula,
    },
    #[error("variable {var} occurs as both {first} and {second}")]
    VariableTypeClash {
        var: Var,
        first: Formula,
        second: Formula,
    },
    #[error("vacuous discharge of {var} at {path} needs an explicit type")]
    MissingDischargeType { var: Var, path: NodePath },
}

impl From<Clash> for NdError {
    fn from(c: Clash) -> Self {
        NdError::VariableTypeClash {
            var: c.var,
            first: c.first,
            second: c.second,
        }
    }
}

/// Validates `d` and returns the judgment at its root.
pub fn check_nd(d: &NdDerivation) -> Result<Judgment, NdError> {
    let mut checker = Checker::default();
    checker.check(d, &NodePath::root())
}

/// Judgments of every node, in post-order (the root is last).
pub fn check_nd_nodes(d: &NdDerivation) -> Result<Vec<(NodePath, Judgment)>, NdError> {
    let mut checker = Checker {
        nodes: Some(Vec::new()),
        ..Checker::default()
    };
    checker.check(d, &NodePath::root())?;
    Ok(checker.nodes.unwrap_or_default())
}

pub fn end_term_nd(d: &NdDerivation) -> Result<Term, NdError> {
    check_nd(d).map(|j| j.term)
}

/// Every variable of the derivation with its formula.
pub fn nd_variable_types(d: &NdDerivation) -> Result<BTreeMap<Var, Formula>, NdError> {
    let mut checker = Checker::default();
    checker.check(d, &NodePath::root())?;
    Ok(checker.table)
}

/// Positions of `->I` and `\/E` nodes that discharge nothing.
pub fn vacuous_discharges(d: &NdDerivation) -> Result<Vec<(NodePath, Var)>, NdError> {
    let nodes = check_nd_nodes(d)?;
    let open_at: BTreeMap<&NodePath, &Context> = nodes.iter().map(|(p, j)| (p, &j.open)).collect();
    let mut out = Vec::new();
    walk(d, &NodePath::root(), &mut |node, path| {
        let discharged: Vec<(usize, &Var)> = match node {
            NdDerivation::ImpI { var, .. } => vec![(0, var)],
            NdDerivation::OrE {
                left_var,
                right_var,
                ..
            } => vec![(1, left_var), (2, right_var)],
            _ => vec![],
        };
        for (i, var) in discharged {
            if !open_at[&path.child(i)].contains(var) {
                out.push((path.clone(), var.clone()));
            }
        }
    });
    Ok(out)
}

fn walk<'a>(d: &'a NdDerivation, path: &NodePath, f: &mut impl FnMut(&'a NdDerivation, &NodePath)) {
    f(d, path);
    for (i, p) in d.premises().into_iter().enumerate() {
        walk(p, &path.child(i), f);
    }
}

#[derive(Default)]
struct Checker {
    table: BTreeMap<Var, Formula>,
    nodes: Option<Vec<(NodePath, Judgment)>>,
}

impl Checker {
    fn record(&mut self, x: &Var, a: &Formula) -> Result<(), NdError> {
        match self.table.get(x) {
            Some(prev) if prev != a => Err(NdError::VariableTypeClash {
                var: x.clone(),
                first: prev.clone(),
                second: a.clone(),
            }),
            Some(_) => Ok(()),
            None => {
                self.table.insert(x.clone(), a.clone());
                Ok(())
            }
        }
    }

    fn check(&mut self, d: &NdDerivation, path: &NodePath) -> Result<Judgment, NdError> {
        let j = self.conclude(d, path)?;
        if let Some(nodes) = &mut self.nodes {
            nodes.push((path.clone(), j.clone()));
        }
        Ok(j)
    }

    fn discharge(
        &mut self,
        open: &Context,
        var: &Var,
        expected: &Formula,
        path: &NodePath,
    ) -> Result<(), NdError> {
        if let Some(found) = open.get(var) {
            if found != expected {
                return Err(NdError::BadDischarge {
                    var: var.clone(),
                    path: path.clone(),
                    expected: expected.clone(),
                    found: found.clone(),
                });
            }
        }
        self.record(var, expected)
    }

    fn conclude(&mut self, d: &NdDerivation, path: &NodePath) -> Result<Judgment, NdError> {
        let mismatch = |detail: String| NdError::RuleMismatch {
            rule: d.rule(),
            path: path.clone(),
            detail,
        };
        match d {
            NdDerivation::Hyp { var, formula } => {
                self.record(var, formula)?;
                Ok(Judgment {
                    open: [(var.clone(), formula.clone())].into_iter().collect(),
                    term: Term::Var(var.clone()),
                    formula: formula.clone(),
                })
            }
            NdDerivation::ImpI {
                var,
                var_type,
                premise,
            } => {
                let j = self.check(premise, &path.child(0))?;
                let a = match (j.open.get(var), var_type) {
                    (_, Some(a)) => a.clone(),
                    (Some(a), None) => a.clone(),
                    (None, None) => {
                        return Err(NdError::MissingDischargeType {
                            var: var.clone(),
                            path: path.clone(),
                        })
                    }
                };
                self.discharge(&j.open, var, &a, path)?;
                Ok(Judgment {
                    open: j.open.without(var),
                    term: Term::lam(var.clone(), a.clone(), j.term),
                    formula: Formula::implies(a, j.formula),
                })
            }
            NdDerivation::ImpE(major, minor) => {
                let jf = self.check(major, &path.child(0))?;
                let ja = self.check(minor, &path.child(1))?;
                let (dom, cod) = jf.formula.as_implies().ok_or_else(|| {
                    mismatch(format!(
                        "major premise proves {}, not an implication",
                        jf.formula
                    ))
                })?;
                if *dom != ja.formula {
                    return Err(mismatch(format!(
                        "minor premise proves {}, expected {dom}",
                        ja.formula
                    )));
                }
                Ok(Judgment {
                    open: jf.open.union(&ja.open)?,
                    term: Term::app(jf.term, ja.term),
                    formula: cod.clone(),
                })
            }
            NdDerivation::AndI(l, r) => {
                let jl = self.check(l, &path.child(0))?;
                let jr = self.check(r, &path.child(1))?;
                Ok(Judgment {
                    open: jl.open.union(&jr.open)?,
                    term: Term::pair(jl.term, jr.term),
                    formula: Formula::and(jl.formula, jr.formula),
                })
            }
            NdDerivation::AndE1(p) | NdDerivation::AndE2(p) => {
                let j = self.check(p, &path.child(0))?;
                let (a, b) = j.formula.as_and().ok_or_else(|| {
                    mismatch(format!("premise proves {}, not a conjunction", j.formula))
                })?;
                let (term, formula) = if matches!(d, NdDerivation::AndE1(_)) {
                    (Term::fst(j.term), a.clone())
                } else {
                    (Term::snd(j.term), b.clone())
                };
                Ok(Judgment {
                    open: j.open,
                    term,
                    formula,
                })
            }
            NdDerivation::OrI1 { other, premise } => {
                let j = self.check(premise, &path.child(0))?;
                Ok(Judgment {
                    open: j.open,
                    term: Term::inl(j.term, other.clone()),
                    formula: Formula::or(j.formula, other.clone()),
                })
            }
            NdDerivation::OrI2 { other, premise } => {
                let j = self.check(premise, &path.child(0))?;
                Ok(Judgment {
                    open: j.open,
                    term: Term::inr(j.term, other.clone()),
                    formula: Formula::or(other.clone(), j.formula),
                })
            }
            NdDerivation::OrE {
                major,
                left_var,
                left,
                right_var,
                right,
            } => {
                let jm = self.check(major, &path.child(0))?;
                let (a, b) = jm
                    .formula
                    .as_or()
                    .map(|(a, b)| (a.clone(), b.clone()))
                    .ok_or_else(|| {
                        mismatch(format!(
                            "major premise proves {}, not a disjunction",
                            jm.formula
                        ))
                    })?;
                let jl = self.check(left, &path.child(1))?;
                self.discharge(&jl.open, left_var, &a, path)?;
                let jr = self.check(right, &path.child(2))?;
                self.discharge(&jr.open, right_var, &b, path)?;
                if jl.formula != jr.formula {
                    return Err(mismatch(format!(
                        "minor premises prove {} and {}",
                        jl.formula, jr.formula
                    )));
                }
                let open = jm
                    .open
                    .union(&jl.open.without(left_var))?
                    .union(&jr.open.without(right_var))?;
                Ok(Judgment {
                    open,
                    term: Term::case(
                        jm.term,
                        Branch::new(left_var.clone(), a, jl.term),
                        Branch::new(right_var.clone(), b, jr.term),
                    ),
                    formula: jl.formula,
                })
            }
            NdDerivation::AbsurdE { target, premise } => {
                let j = self.check(premise, &path.child(0))?;
                if j.formula != Formula::Absurd {
                    return Err(mismatch(format!("premise proves {}, not _|_", j.formula)));
                }
                Ok(Judgment {
                    open: j.open,
                    term: Term::abort(j.term, target.clone()),
                    formula: target.clone(),
                })
            }
        }
    }
}
