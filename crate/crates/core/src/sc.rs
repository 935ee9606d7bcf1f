//! Term-annotated sequent calculus with independent contexts.
//!
//! Right rules build terms the way introduction rules do in natural
//! deduction. Left rules and the structural rules act by substitution on the
//! premise term. Checking is strict: a rule that consumes an antecedent
//! variable requires it to be present in the premise.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::context::{Clash, Context};
use crate::formula::Formula;
use crate::node::NodePath;
use crate::subst::{substitute, substitute_many};
use crate::term::{Branch, Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ScRule {
    Rf,
    AndR,
    AndL,
    OrR1,
    OrR2,
    OrL,
    ImpR,
    ImpL,
    AbsurdL,
    Weaken,
    Contract,
    Cut,
}

impl ScRule {
    pub const ALL: [ScRule; 12] = [
        ScRule::Rf,
        ScRule::AndR,
        ScRule::AndL,
        ScRule::OrR1,
        ScRule::OrR2,
        ScRule::OrL,
        ScRule::ImpR,
        ScRule::ImpL,
        ScRule::AbsurdL,
        ScRule::Weaken,
        ScRule::Contract,
        ScRule::Cut,
    ];

    pub fn arity(self) -> usize {
        match self {
            ScRule::Rf | ScRule::AbsurdL => 0,
            ScRule::AndL
            | ScRule::OrR1
            | ScRule::OrR2
            | ScRule::ImpR
            | ScRule::Weaken
            | ScRule::Contract => 1,
            ScRule::AndR | ScRule::OrL | ScRule::ImpL | ScRule::Cut => 2,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            ScRule::Rf => "rf",
            ScRule::AndR => "and-r",
            ScRule::AndL => "and-l",
            ScRule::OrR1 => "or-r1",
            ScRule::OrR2 => "or-r2",
            ScRule::OrL => "or-l",
            ScRule::ImpR => "imp-r",
            ScRule::ImpL => "imp-l",
            ScRule::AbsurdL => "absurd-l",
            ScRule::Weaken => "weaken",
            ScRule::Contract => "contract",
            ScRule::Cut => "cut",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.keyword() == s)
    }

    /// Rules that introduce a formula on the right of the turnstile.
    pub fn is_right(self) -> bool {
        matches!(
            self,
            ScRule::AndR | ScRule::OrR1 | ScRule::OrR2 | ScRule::ImpR
        )
    }
}

impl fmt::Display for ScRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScDerivation {
    Rf {
        var: Var,
        formula: Formula,
    },
    AndR(Box<ScDerivation>, Box<ScDerivation>),
    /// Replaces `left : A` and `right : B` by `principal : A /\ B`.
    AndL {
        principal: Var,
        left: Var,
        right: Var,
        premise: Box<ScDerivation>,
    },
    OrR1 {
        other: Formula,
        premise: Box<ScDerivation>,
    },
    OrR2 {
        other: Formula,
        premise: Box<ScDerivation>,
    },
    OrL {
        principal: Var,
        left_var: Var,
        right_var: Var,
        left: Box<ScDerivation>,
        right: Box<ScDerivation>,
    },
    ImpR {
        var: Var,
        premise: Box<ScDerivation>,
    },
    /// `arg` proves the antecedent `A`; `body` uses `var : B`.
    ImpL {
        principal: Var,
        var: Var,
        arg: Box<ScDerivation>,
        body: Box<ScDerivation>,
    },
    AbsurdL {
        var: Var,
        target: Formula,
    },
    Weaken {
        var: Var,
        formula: Formula,
        premise: Box<ScDerivation>,
    },
    /// Substitutes `kept` for `merged`.
    Contract {
        kept: Var,
        merged: Var,
        premise: Box<ScDerivation>,
    },
    Cut {
        var: Var,
        left: Box<ScDerivation>,
        right: Box<ScDerivation>,
    },
}

impl ScDerivation {
    pub fn rf(x: &str, a: Formula) -> Self {
        ScDerivation::Rf {
            var: Var::new(x),
            formula: a,
        }
    }

    pub fn and_r(d1: ScDerivation, d2: ScDerivation) -> Self {
        ScDerivation::AndR(Box::new(d1), Box::new(d2))
    }

    pub fn and_l(z: &str, x: &str, y: &str, d: ScDerivation) -> Self {
        ScDerivation::AndL {
            principal: Var::new(z),
            left: Var::new(x),
            right: Var::new(y),
            premise: Box::new(d),
        }
    }

    pub fn or_r1(other: Formula, d: ScDerivation) -> Self {
        ScDerivation::OrR1 {
            other,
            premise: Box::new(d),
        }
    }

    pub fn or_r2(other: Formula, d: ScDerivation) -> Self {
        ScDerivation::OrR2 {
            other,
            premise: Box::new(d),
        }
    }

    pub fn or_l(z: &str, x: &str, y: &str, d1: ScDerivation, d2: ScDerivation) -> Self {
        ScDerivation::OrL {
            principal: Var::new(z),
            left_var: Var::new(x),
            right_var: Var::new(y),
            left: Box::new(d1),
            right: Box::new(d2),
        }
    }

    pub fn imp_r(x: &str, d: ScDerivation) -> Self {
        ScDerivation::ImpR {
            var: Var::new(x),
            premise: Box::new(d),
        }
    }

    pub fn imp_l(x: &str, y: &str, d1: ScDerivation, d2: ScDerivation) -> Self {
        ScDerivation::ImpL {
            principal: Var::new(x),
            var: Var::new(y),
            arg: Box::new(d1),
            body: Box::new(d2),
        }
    }

    pub fn absurd_l(x: &str, target: Formula) -> Self {
        ScDerivation::AbsurdL {
            var: Var::new(x),
            target,
        }
    }

    pub fn weaken(x: &str, a: Formula, d: ScDerivation) -> Self {
        ScDerivation::Weaken {
            var: Var::new(x),
            formula: a,
            premise: Box::new(d),
        }
    }

    pub fn contract(x: &str, y: &str, d: ScDerivation) -> Self {
        ScDerivation::Contract {
            kept: Var::new(x),
            merged: Var::new(y),
            premise: Box::new(d),
        }
    }

    pub fn cut(x: &str, d1: ScDerivation, d2: ScDerivation) -> Self {
        ScDerivation::Cut {
            var: Var::new(x),
            left: Box::new(d1),
            right: Box::new(d2),
        }
    }

    pub fn rule(&self) -> ScRule {
        match self {
            ScDerivation::Rf { .. } => ScRule::Rf,
            ScDerivation::AndR(..) => ScRule::AndR,
            ScDerivation::AndL { .. } => ScRule::AndL,
            ScDerivation::OrR1 { .. } => ScRule::OrR1,
            ScDerivation::OrR2 { .. } => ScRule::OrR2,
            ScDerivation::OrL { .. } => ScRule::OrL,
            ScDerivation::ImpR { .. } => ScRule::ImpR,
            ScDerivation::ImpL { .. } => ScRule::ImpL,
            ScDerivation::AbsurdL { .. } => ScRule::AbsurdL,
            ScDerivation::Weaken { .. } => ScRule::Weaken,
            ScDerivation::Contract { .. } => ScRule::Contract,
            ScDerivation::Cut { .. } => ScRule::Cut,
        }
    }

    pub fn premises(&self) -> Vec<&ScDerivation> {
        match self {
            ScDerivation::Rf { .. } | ScDerivation::AbsurdL { .. } => vec![],
            ScDerivation::AndL { premise, .. }
            | ScDerivation::OrR1 { premise, .. }
            | ScDerivation::OrR2 { premise, .. }
            | ScDerivation::ImpR { premise, .. }
            | ScDerivation::Weaken { premise, .. }
            | ScDerivation::Contract { premise, .. } => vec![premise],
            ScDerivation::AndR(a, b)
            | ScDerivation::OrL {
                left: a, right: b, ..
            }
            | ScDerivation::ImpL {
                arg: a, body: b, ..
            }
            | ScDerivation::Cut {
                left: a, right: b, ..
            } => vec![a, b],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .premises()
            .iter()
            .map(|d| d.node_count())
            .sum::<usize>()
    }

    pub fn contains_cut(&self) -> bool {
        self.rule() == ScRule::Cut || self.premises().iter().any(|d| d.contains_cut())
    }

    /// Applies `f` to every variable name in the derivation.
    pub fn rename_vars(&self, f: &impl Fn(&Var) -> Var) -> ScDerivation {
        let b = |d: &ScDerivation| Box::new(d.rename_vars(f));
        match self {
            ScDerivation::Rf { var, formula } => ScDerivation::Rf {
                var: f(var),
                formula: formula.clone(),
            },
            ScDerivation::AndR(x, y) => ScDerivation::AndR(b(x), b(y)),
            ScDerivation::AndL {
                principal,
                left,
                right,
                premise,
            } => ScDerivation::AndL {
                principal: f(principal),
                left: f(left),
                right: f(right),
                premise: b(premise),
            },
            ScDerivation::OrR1 { other, premise } => ScDerivation::OrR1 {
                other: other.clone(),
                premise: b(premise),
            },
            ScDerivation::OrR2 { other, premise } => ScDerivation::OrR2 {
                other: other.clone(),
                premise: b(premise),
            },
            ScDerivation::OrL {
                principal,
                left_var,
                right_var,
                left,
                right,
            } => ScDerivation::OrL {
                principal: f(principal),
                left_var: f(left_var),
                right_var: f(right_var),
                left: b(left),
                right: b(right),
            },
            ScDerivation::ImpR { var, premise } => ScDerivation::ImpR {
                var: f(var),
                premise: b(premise),
            },
            ScDerivation::ImpL {
                principal,
                var,
                arg,
                body,
            } => ScDerivation::ImpL {
                principal: f(principal),
                var: f(var),
                arg: b(arg),
                body: b(body),
            },
            ScDerivation::AbsurdL { var, target } => ScDerivation::AbsurdL {
                var: f(var),
                target: target.clone(),
            },
            ScDerivation::Weaken {
                var,
                formula,
                premise,
            } => ScDerivation::Weaken {
                var: f(var),
                formula: formula.clone(),
                premise: b(premise),
            },
            ScDerivation::Contract {
                kept,
                merged,
                premise,
            } => ScDerivation::Contract {
                kept: f(kept),
                merged: f(merged),
                premise: b(premise),
            },
            ScDerivation::Cut { var, left, right } => ScDerivation::Cut {
                var: f(var),
                left: b(left),
                right: b(right),
            },
        }
    }
}

/// `antecedent |- term : succedent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sequent {
    pub antecedent: Context,
    #[serde(serialize_with = "crate::report::display")]
    pub term: Term,
    #[serde(serialize_with = "crate::report::display")]
    pub succedent: Formula,
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.antecedent.is_empty() {
            write!(f, "|- {} : {}", self.term, self.succedent)
        } else {
            write!(
                f,
                "{} |- {} : {}",
                self.antecedent, self.term, self.succedent
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScError {
    #[error("{rule} at {path}: {detail}")]
    RuleMismatch {
        rule: ScRule,
        path: NodePath,
        detail: String,
    },
    #[error("{var} introduced at {path} as {introduced} but already present as {present}")]
    FreshnessViolation {
        var: Var,
        path: NodePath,
        introduced: Formula,
        present: Formula,
    },
    #[error("variable {var} occurs as both {first} and {second}")]
    VariableTypeClash {
        var: Var,
        first: Formula,
        second: Formula,
    },
    #[error("contexts joined at {path} bind {var} as both {first} and {second}")]
    ContextClash {
        var: Var,
        path: NodePath,
        first: Formula,
        second: Formula,
    },
}

/// Validates `d` and returns its end sequent.
pub fn check_sc(d: &ScDerivation) -> Result<Sequent, ScError> {
    check_sc_nodes(d).map(|mut nodes| nodes.pop().expect("root node").1)
}

/// Sequents of every node, in post-order (the root is last).
///
/// Each node is checked locally first; afterwards every variable must have a
/// single formula across the whole derivation.
pub fn check_sc_nodes(d: &ScDerivation) -> Result<Vec<(NodePath, Sequent)>, ScError> {
    let mut nodes = Vec::new();
    conclude(d, &NodePath::root(), &mut nodes)?;
    variable_table(&nodes)?;
    Ok(nodes)
}

pub fn end_term_sc(d: &ScDerivation) -> Result<Term, ScError> {
    check_sc(d).map(|s| s.term)
}

/// Every antecedent variable of the derivation with its formula.
pub fn sc_variable_types(d: &ScDerivation) -> Result<BTreeMap<Var, Formula>, ScError> {
    let mut nodes = Vec::new();
    conclude(d, &NodePath::root(), &mut nodes)?;
    variable_table(&nodes)
}

fn variable_table(nodes: &[(NodePath, Sequent)]) -> Result<BTreeMap<Var, Formula>, ScError> {
    let mut table: BTreeMap<Var, Formula> = BTreeMap::new();
    for (_, s) in nodes {
        for (x, a) in s.antecedent.iter() {
            match table.get(x) {
                Some(prev) if prev != a => {
                    return Err(ScError::VariableTypeClash {
                        var: x.clone(),
                        first: prev.clone(),
                        second: a.clone(),
                    })
                }
                Some(_) => {}
                None => {
                    table.insert(x.clone(), a.clone());
                }
            }
        }
    }
    Ok(table)
}

fn conclude(
    d: &ScDerivation,
    path: &NodePath,
    nodes: &mut Vec<(NodePath, Sequent)>,
) -> Result<Sequent, ScError> {
    let mismatch = |detail: String| ScError::RuleMismatch {
        rule: d.rule(),
        path: path.clone(),
        detail,
    };
    let clash = |c: Clash| ScError::ContextClash {
        var: c.var,
        path: path.clone(),
        first: c.first,
        second: c.second,
    };
    let require = |ctx: &Context, x: &Var| {
        ctx.get(x)
            .cloned()
            .ok_or_else(|| mismatch(format!("{x} is not in the antecedent of the premise")))
    };
    // Adds a principal variable, which must be fresh or already present at
    // the same formula.
    let introduce = |ctx: &Context, x: &Var, a: &Formula| match ctx.get(x) {
        Some(present) if present != a => Err(ScError::FreshnessViolation {
            var: x.clone(),
            path: path.clone(),
            introduced: a.clone(),
            present: present.clone(),
        }),
        _ => Ok(ctx.extended(x.clone(), a.clone())),
    };
    let mut premise = |i: usize, p: &ScDerivation| conclude(p, &path.child(i), nodes);

    let seq = match d {
        ScDerivation::Rf { var, formula } => Sequent {
            antecedent: [(var.clone(), formula.clone())].into_iter().collect(),
            term: Term::Var(var.clone()),
            succedent: formula.clone(),
        },
        ScDerivation::AndR(l, r) => {
            let sl = premise(0, l)?;
            let sr = premise(1, r)?;
            Sequent {
                antecedent: sl.antecedent.union(&sr.antecedent).map_err(clash)?,
                term: Term::pair(sl.term, sr.term),
                succedent: Formula::and(sl.succedent, sr.succedent),
            }
        }
        ScDerivation::AndL {
            principal,
            left,
            right,
            premise: p,
        } => {
            let s = premise(0, p)?;
            if left == right {
                return Err(mismatch(format!("both components are named {left}")));
            }
            let a = require(&s.antecedent, left)?;
            let b = require(&s.antecedent, right)?;
            let conj = Formula::and(a, b);
            let rest = s.antecedent.without(left).without(right);
            let z = Term::Var(principal.clone());
            let map = BTreeMap::from([
                (left.clone(), Term::fst(z.clone())),
                (right.clone(), Term::snd(z)),
            ]);
            Sequent {
                antecedent: introduce(&rest, principal, &conj)?,
                term: substitute_many(&s.term, &map),
                succedent: s.succedent,
            }
        }
        ScDerivation::OrR1 { other, premise: p } => {
            let s = premise(0, p)?;
            Sequent {
                antecedent: s.antecedent,
                term: Term::inl(s.term, other.clone()),
                succedent: Formula::or(s.succedent, other.clone()),
            }
        }
        ScDerivation::OrR2 { other, premise: p } => {
            let s = premise(0, p)?;
            Sequent {
                antecedent: s.antecedent,
                term: Term::inr(s.term, other.clone()),
                succedent: Formula::or(other.clone(), s.succedent),
            }
        }
        ScDerivation::OrL {
            principal,
            left_var,
            right_var,
            left,
            right,
        } => {
            let sl = premise(0, left)?;
            let sr = premise(1, right)?;
            let a = require(&sl.antecedent, left_var)?;
            let b = require(&sr.antecedent, right_var)?;
            if sl.succedent != sr.succedent {
                return Err(mismatch(format!(
                    "premises prove {} and {}",
                    sl.succedent, sr.succedent
                )));
            }
            let joined = sl
                .antecedent
                .without(left_var)
                .union(&sr.antecedent.without(right_var))
                .map_err(clash)?;
            let disj = Formula::or(a.clone(), b.clone());
            Sequent {
                antecedent: introduce(&joined, principal, &disj)?,
                term: Term::case(
                    Term::Var(principal.clone()),
                    Branch::new(left_var.clone(), a, sl.term),
                    Branch::new(right_var.clone(), b, sr.term),
                ),
                succedent: sl.succedent,
            }
        }
        ScDerivation::ImpR { var, premise: p } => {
            let s = premise(0, p)?;
            let a = require(&s.antecedent, var)?;
            Sequent {
                antecedent: s.antecedent.without(var),
                term: Term::lam(var.clone(), a.clone(), s.term),
                succedent: Formula::implies(a, s.succedent),
            }
        }
        ScDerivation::ImpL {
            principal,
            var,
            arg,
            body,
        } => {
            let sa = premise(0, arg)?;
            let sb = premise(1, body)?;
            let b = require(&sb.antecedent, var)?;
            let joined = sa
                .antecedent
                .union(&sb.antecedent.without(var))
                .map_err(clash)?;
            let imp = Formula::implies(sa.succedent, b);
            let applied = Term::app(Term::Var(principal.clone()), sa.term);
            Sequent {
                antecedent: introduce(&joined, principal, &imp)?,
                term: substitute(&sb.term, var, &applied),
                succedent: sb.succedent,
            }
        }
        ScDerivation::AbsurdL { var, target } => Sequent {
            antecedent: [(var.clone(), Formula::Absurd)].into_iter().collect(),
            term: Term::abort(Term::Var(var.clone()), target.clone()),
            succedent: target.clone(),
        },
        ScDerivation::Weaken {
            var,
            formula,
            premise: p,
        } => {
            let s = premise(0, p)?;
            Sequent {
                antecedent: introduce(&s.antecedent, var, formula)?,
                term: s.term,
                succedent: s.succedent,
            }
        }
        ScDerivation::Contract {
            kept,
            merged,
            premise: p,
        } => {
            let s = premise(0, p)?;
            let a = require(&s.antecedent, kept)?;
            let b = require(&s.antecedent, merged)?;
            if a != b {
                return Err(mismatch(format!("{kept} : {a} and {merged} : {b} differ")));
            }
            if kept == merged {
                s
            } else {
                Sequent {
                    antecedent: s.antecedent.without(merged),
                    term: substitute(&s.term, merged, &Term::Var(kept.clone())),
                    succedent: s.succedent,
                }
            }
        }
        ScDerivation::Cut { var, left, right } => {
            let sl = premise(0, left)?;
            let sr = premise(1, right)?;
            let d = require(&sr.antecedent, var)?;
            if d != sl.succedent {
                return Err(mismatch(format!(
                    "left premise proves {} but {var} : {d}",
                    sl.succedent
                )));
            }
            Sequent {
                antecedent: sl
                    .antecedent
                    .union(&sr.antecedent.without(var))
                    .map_err(clash)?,
                term: substitute(&sr.term, var, &sl.term),
                succedent: sr.succedent,
            }
        }
    };
    nodes.push((path.clone(), seq.clone()));
    Ok(seq)
}

/// A cut application and whether its cut formula is principal in both premises.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutNode {
    pub path: NodePath,
    pub var: Var,
    pub principal: bool,
}

/// All cuts of `d` in pre-order.
///
/// The cut formula counts as principal on the left when the left premise
/// ends in a right rule, and on the right when the right premise ends in a
/// left rule acting on the cut variable. Weakening and contraction steps
/// that do not touch the cut formula are looked through.
pub fn cut_nodes(d: &ScDerivation) -> Vec<CutNode> {
    let mut out = Vec::new();
    collect_cuts(d, &NodePath::root(), &mut out);
    out
}

fn collect_cuts(d: &ScDerivation, path: &NodePath, out: &mut Vec<CutNode>) {
    if let ScDerivation::Cut { var, left, right } = d {
        out.push(CutNode {
            path: path.clone(),
            var: var.clone(),
            principal: principal_on_right_side(left) && principal_on_left_side(right, var),
        });
    }
    for (i, p) in d.premises().into_iter().enumerate() {
        collect_cuts(p, &path.child(i), out);
    }
}

fn principal_on_right_side(d: &ScDerivation) -> bool {
    match d {
        ScDerivation::Weaken { premise, .. } | ScDerivation::Contract { premise, .. } => {
            principal_on_right_side(premise)
        }
        _ => d.rule().is_right(),
    }
}

fn principal_on_left_side(d: &ScDerivation, x: &Var) -> bool {
    match d {
        ScDerivation::Weaken { var, premise, .. } => var != x && principal_on_left_side(premise, x),
        ScDerivation::Contract {
            kept,
            merged,
            premise,
        } => kept != x && merged != x && principal_on_left_side(premise, x),
        ScDerivation::AndL { principal, .. }
        | ScDerivation::OrL { principal, .. }
        | ScDerivation::ImpL { principal, .. } => principal == x,
        ScDerivation::AbsurdL { var, .. } => var == x,
        _ => false,
    }
}
