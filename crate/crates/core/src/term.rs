//! Typed lambda terms with pairs, sums and `abort`.
//!
//! Binders carry the type of the variable they bind, and injections and
//! `abort` carry the formula their argument does not determine, so every
//! well-formed term has a unique type in a given context.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::formula::{is_identifier, Formula};

/// A term variable. Its type lives in a context or on a binder, never here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Var(String);

impl Var {
    /// Panics on names that are not identifiers or collide with keywords.
    pub fn new(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(
            is_identifier(&name) && !crate::syntax::is_keyword(&name),
            "invalid variable name {name:?}"
        );
        Var(name)
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// `self` with one more prime appended.
    pub fn primed(&self) -> Var {
        Var(format!("{}'", self.0))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    Lam(Var, Formula, Box<Term>),
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Fst(Box<Term>),
    Snd(Box<Term>),
    /// `inl[B] t : A \/ B` where `t : A`.
    Inl(Box<Term>, Formula),
    /// `inr[A] t : A \/ B` where `t : B`.
    Inr(Box<Term>, Formula),
    Case(Box<Term>, Branch, Branch),
    /// `abort[C] t : C` where `t : _|_`.
    Abort(Box<Term>, Formula),
}

/// One arm of a `case`: `x:A. body`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Branch {
    pub var: Var,
    pub ty: Formula,
    pub body: Box<Term>,
}

impl Branch {
    pub fn new(var: Var, ty: Formula, body: Term) -> Self {
        Branch {
            var,
            ty,
            body: Box::new(body),
        }
    }
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn lam(x: Var, ty: Formula, body: Term) -> Term {
        Term::Lam(x, ty, Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn fst(t: Term) -> Term {
        Term::Fst(Box::new(t))
    }

    pub fn snd(t: Term) -> Term {
        Term::Snd(Box::new(t))
    }

    pub fn inl(t: Term, other: Formula) -> Term {
        Term::Inl(Box::new(t), other)
    }

    pub fn inr(t: Term, other: Formula) -> Term {
        Term::Inr(Box::new(t), other)
    }

    pub fn case(scrutinee: Term, left: Branch, right: Branch) -> Term {
        Term::Case(Box::new(scrutinee), left, right)
    }

    pub fn abort(t: Term, target: Formula) -> Term {
        Term::Abort(Box::new(t), target)
    }

    /// Number of term constructors.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Lam(_, _, b) => 1 + b.size(),
            Term::App(a, b) | Term::Pair(a, b) => 1 + a.size() + b.size(),
            Term::Fst(t) | Term::Snd(t) | Term::Inl(t, _) | Term::Inr(t, _) | Term::Abort(t, _) => {
                1 + t.size()
            }
            Term::Case(s, l, r) => 1 + s.size() + l.body.size() + r.body.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_free(&self, x: &Var) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::Lam(y, _, b) => x != y && b.is_free(x),
            Term::App(a, b) | Term::Pair(a, b) => a.is_free(x) || b.is_free(x),
            Term::Fst(t) | Term::Snd(t) | Term::Inl(t, _) | Term::Inr(t, _) | Term::Abort(t, _) => {
                t.is_free(x)
            }
            Term::Case(s, l, r) => {
                s.is_free(x)
                    || (l.var != *x && l.body.is_free(x))
                    || (r.var != *x && r.body.is_free(x))
            }
        }
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Lam(x, _, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Term::App(a, b) | Term::Pair(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Fst(t) | Term::Snd(t) | Term::Inl(t, _) | Term::Inr(t, _) | Term::Abort(t, _) => {
                t.collect_free(bound, out)
            }
            Term::Case(s, l, r) => {
                s.collect_free(bound, out);
                for br in [l, r] {
                    bound.push(br.var.clone());
                    br.body.collect_free(bound, out);
                    bound.pop();
                }
            }
        }
    }

    /// Every variable name occurring in the term, free or bound.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| match t {
            Term::Var(x) | Term::Lam(x, _, _) => {
                out.insert(x.clone());
            }
            Term::Case(_, l, r) => {
                out.insert(l.var.clone());
                out.insert(r.var.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal of all subterms.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        match self {
            Term::Var(_) => {}
            Term::Lam(_, _, b) => b.visit(f),
            Term::App(a, b) | Term::Pair(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Term::Fst(t) | Term::Snd(t) | Term::Inl(t, _) | Term::Inr(t, _) | Term::Abort(t, _) => {
                t.visit(f)
            }
            Term::Case(s, l, r) => {
                s.visit(f);
                l.body.visit(f);
                r.body.visit(f);
            }
        }
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) => vec![],
            Term::Lam(_, _, b) => vec![b],
            Term::App(a, b) | Term::Pair(a, b) => vec![a, b],
            Term::Fst(t) | Term::Snd(t) | Term::Inl(t, _) | Term::Inr(t, _) | Term::Abort(t, _) => {
                vec![t]
            }
            Term::Case(s, l, r) => vec![s, &l.body, &r.body],
        }
    }

    /// Rebuilds `self` with its `i`-th child (in `children` order) replaced.
    pub fn with_child(&self, i: usize, child: Term) -> Term {
        let mut out = self.clone();
        let slot: &mut Term = match (&mut out, i) {
            (Term::Lam(_, _, b), 0) => b,
            (Term::App(a, _), 0) | (Term::Pair(a, _), 0) => a,
            (Term::App(_, b), 1) | (Term::Pair(_, b), 1) => b,
            (Term::Fst(t), 0)
            | (Term::Snd(t), 0)
            | (Term::Inl(t, _), 0)
            | (Term::Inr(t, _), 0)
            | (Term::Abort(t, _), 0) => t,
            (Term::Case(s, _, _), 0) => s,
            (Term::Case(_, l, _), 1) => &mut l.body,
            (Term::Case(_, _, r), 2) => &mut r.body,
            _ => panic!("child index {i} out of range"),
        };
        *slot = child;
        out
    }

    /// Renders with canonical bound-variable names (see [`crate::alpha::canonical`]).
    pub fn render_canonical(&self) -> String {
        crate::alpha::canonical(self).to_string()
    }
}

// Rendering levels: a full term may be a lambda or case; an application
// chain starts with a prefix form; arguments must be atoms.
fn needs_parens_as_prefix_arg(t: &Term) -> bool {
    !matches!(
        t,
        Term::Var(_)
            | Term::Pair(..)
            | Term::Fst(_)
            | Term::Snd(_)
            | Term::Inl(..)
            | Term::Inr(..)
            | Term::Abort(..)
    )
}

fn is_atom(t: &Term) -> bool {
    matches!(
        t,
        Term::Var(_) | Term::Pair(..) | Term::Fst(_) | Term::Snd(_)
    )
}

fn is_application_level(t: &Term) -> bool {
    !matches!(t, Term::Lam(..) | Term::Case(..))
}

struct Parens<'a>(&'a Term, bool);

impl fmt::Display for Parens<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::Lam(x, ty, body) => write!(f, "\\{x}:{}. {body}", ty.delimited()),
            Term::App(fun, arg) => {
                let fun_parens = !is_application_level(fun);
                write!(
                    f,
                    "{} {}",
                    Parens(fun, fun_parens),
                    Parens(arg, !is_atom(arg))
                )
            }
            Term::Pair(a, b) => write!(f, "<{a}, {b}>"),
            Term::Fst(t) => write!(f, "fst({t})"),
            Term::Snd(t) => write!(f, "snd({t})"),
            Term::Inl(t, other) => {
                write!(
                    f,
                    "inl[{other}] {}",
                    Parens(t, needs_parens_as_prefix_arg(t))
                )
            }
            Term::Inr(t, other) => {
                write!(
                    f,
                    "inr[{other}] {}",
                    Parens(t, needs_parens_as_prefix_arg(t))
                )
            }
            Term::Abort(t, target) => {
                write!(
                    f,
                    "abort[{target}] {}",
                    Parens(t, needs_parens_as_prefix_arg(t))
                )
            }
            Term::Case(s, l, r) => write!(
                f,
                "case {} {{ {}:{}. {} | {}:{}. {} }}",
                Parens(s, !is_application_level(s)),
                l.var,
                l.ty.delimited(),
                l.body,
                r.var,
                r.ty.delimited(),
                r.body
            ),
        }
    }
}
