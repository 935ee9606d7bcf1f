//! Syntax-directed type synthesis: the typing relation realized by the
//! natural-deduction rules.

use thiserror::Error;

use crate::context::Context;
use crate::formula::Formula;
use crate::term::{Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable {0}")]
    UnboundVariable(Var),
    #[error("type mismatch in `{term}`: expected {expected}, found {found}")]
    Mismatch {
        term: Box<Term>,
        expected: String,
        found: Formula,
    },
}

fn mismatch(term: &Term, expected: impl Into<String>, found: &Formula) -> TypeError {
    TypeError::Mismatch {
        term: Box::new(term.clone()),
        expected: expected.into(),
        found: found.clone(),
    }
}

/// The unique formula `A` with `ctx |- t : A`.
pub fn type_of(ctx: &Context, t: &Term) -> Result<Formula, TypeError> {
    match t {
        Term::Var(x) => ctx
            .get(x)
            .cloned()
            .ok_or_else(|| TypeError::UnboundVariable(x.clone())),
        Term::Lam(x, a, body) => {
            let b = type_of(&ctx.extended(x.clone(), a.clone()), body)?;
            Ok(Formula::implies(a.clone(), b))
        }
        Term::App(f, arg) => {
            let ft = type_of(ctx, f)?;
            let (dom, cod) = ft
                .as_implies()
                .ok_or_else(|| mismatch(f, "an implication", &ft))?;
            let at = type_of(ctx, arg)?;
            if at != *dom {
                return Err(mismatch(arg, dom.to_string(), &at));
            }
            Ok(cod.clone())
        }
        Term::Pair(a, b) => Ok(Formula::and(type_of(ctx, a)?, type_of(ctx, b)?)),
        Term::Fst(p) | Term::Snd(p) => {
            let pt = type_of(ctx, p)?;
            let (a, b) = pt
                .as_and()
                .ok_or_else(|| mismatch(p, "a conjunction", &pt))?;
            Ok(if matches!(t, Term::Fst(_)) { a } else { b }.clone())
        }
        Term::Inl(s, other) => Ok(Formula::or(type_of(ctx, s)?, other.clone())),
        Term::Inr(s, other) => Ok(Formula::or(other.clone(), type_of(ctx, s)?)),
        Term::Case(r, l, rt) => {
            let st = type_of(ctx, r)?;
            let (a, b) = st
                .as_or()
                .ok_or_else(|| mismatch(r, "a disjunction", &st))?;
            if l.ty != *a {
                return Err(mismatch(t, format!("left binder of type {a}"), &l.ty));
            }
            if rt.ty != *b {
                return Err(mismatch(t, format!("right binder of type {b}"), &rt.ty));
            }
            let c1 = type_of(&ctx.extended(l.var.clone(), a.clone()), &l.body)?;
            let c2 = type_of(&ctx.extended(rt.var.clone(), b.clone()), &rt.body)?;
            if c1 != c2 {
                return Err(mismatch(&rt.body, c1.to_string(), &c2));
            }
            Ok(c1)
        }
        Term::Abort(s, target) => {
            let st = type_of(ctx, s)?;
            if st != Formula::Absurd {
                return Err(mismatch(s, "_|_", &st));
            }
            Ok(target.clone())
        }
    }
}
