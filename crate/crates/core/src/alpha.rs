//! α-equivalence and bound-variable normalization.
//!
//! Named terms are the external representation; comparisons go through a
//! de Bruijn encoding in which bound variables become indices and free
//! variables keep their names. Recorded binder types are part of the
//! encoding, so α-equal terms also agree on every annotation.

use std::collections::BTreeSet;

use crate::formula::Formula;
use crate::subst::fresh_var;
use crate::term::{Branch, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nameless {
    Bound(usize),
    Free(Var),
    Lam(Formula, Box<Nameless>),
    App(Box<Nameless>, Box<Nameless>),
    Pair(Box<Nameless>, Box<Nameless>),
    Fst(Box<Nameless>),
    Snd(Box<Nameless>),
    Inl(Box<Nameless>, Formula),
    Inr(Box<Nameless>, Formula),
    Case(
        Box<Nameless>,
        Formula,
        Box<Nameless>,
        Formula,
        Box<Nameless>,
    ),
    Abort(Box<Nameless>, Formula),
}

/// De Bruijn encoding; two terms are α-equal iff their encodings are equal.
pub fn nameless(t: &Term) -> Nameless {
    fn go(t: &Term, scope: &mut Vec<Var>) -> Nameless {
        let b = |n: Nameless| Box::new(n);
        match t {
            Term::Var(x) => match scope.iter().rev().position(|y| y == x) {
                Some(i) => Nameless::Bound(i),
                None => Nameless::Free(x.clone()),
            },
            Term::Lam(x, ty, body) => {
                scope.push(x.clone());
                let body = go(body, scope);
                scope.pop();
                Nameless::Lam(ty.clone(), b(body))
            }
            Term::App(f, a) => Nameless::App(b(go(f, scope)), b(go(a, scope))),
            Term::Pair(f, a) => Nameless::Pair(b(go(f, scope)), b(go(a, scope))),
            Term::Fst(a) => Nameless::Fst(b(go(a, scope))),
            Term::Snd(a) => Nameless::Snd(b(go(a, scope))),
            Term::Inl(a, f) => Nameless::Inl(b(go(a, scope)), f.clone()),
            Term::Inr(a, f) => Nameless::Inr(b(go(a, scope)), f.clone()),
            Term::Abort(a, f) => Nameless::Abort(b(go(a, scope)), f.clone()),
            Term::Case(s, l, r) => {
                let s = go(s, scope);
                scope.push(l.var.clone());
                let lb = go(&l.body, scope);
                scope.pop();
                scope.push(r.var.clone());
                let rb = go(&r.body, scope);
                scope.pop();
                Nameless::Case(b(s), l.ty.clone(), b(lb), r.ty.clone(), b(rb))
            }
        }
    }
    go(t, &mut Vec::new())
}

pub fn alpha_equal(t1: &Term, t2: &Term) -> bool {
    t1 == t2 || nameless(t1) == nameless(t2)
}

/// Renames binders so that no binder shadows an enclosing binder or a free
/// variable of the whole term. Names that already satisfy this are kept;
/// the rest get primes appended. Sibling binders may share a name.
pub fn tidy(t: &Term) -> Term {
    let free = t.free_vars();
    let mut in_scope: Vec<(Var, Var)> = Vec::new();
    tidy_in(t, &free, &mut in_scope)
}

fn tidy_in(t: &Term, free: &BTreeSet<Var>, scope: &mut Vec<(Var, Var)>) -> Term {
    let bind = |x: &Var, scope: &Vec<(Var, Var)>| -> Var {
        let taken: BTreeSet<Var> = free
            .iter()
            .cloned()
            .chain(scope.iter().map(|(_, new)| new.clone()))
            .collect();
        if taken.contains(x) {
            fresh_var(x, &taken)
        } else {
            x.clone()
        }
    };
    match t {
        Term::Var(x) => match scope.iter().rev().find(|(old, _)| old == x) {
            Some((_, new)) => Term::Var(new.clone()),
            None => t.clone(),
        },
        Term::Lam(x, ty, body) => {
            let nx = bind(x, scope);
            scope.push((x.clone(), nx.clone()));
            let body = tidy_in(body, free, scope);
            scope.pop();
            Term::lam(nx, ty.clone(), body)
        }
        Term::Case(s, l, r) => {
            let s = tidy_in(s, free, scope);
            let mut branch = |br: &Branch| {
                let nx = bind(&br.var, scope);
                scope.push((br.var.clone(), nx.clone()));
                let body = tidy_in(&br.body, free, scope);
                scope.pop();
                Branch::new(nx, br.ty.clone(), body)
            };
            let (l, r) = (branch(l), branch(r));
            Term::case(s, l, r)
        }
        _ => rebuild(t, |c| tidy_in(c, free, scope)),
    }
}

/// Canonical representative of the α-class: binders are renamed, in
/// pre-order, to `x0`, `x1`, ... skipping names free in the term.
pub fn canonical(t: &Term) -> Term {
    let free = t.free_vars();
    let mut counter = 0usize;
    let mut scope = Vec::new();
    canonical_in(t, &free, &mut counter, &mut scope)
}

fn canonical_in(
    t: &Term,
    free: &BTreeSet<Var>,
    counter: &mut usize,
    scope: &mut Vec<(Var, Var)>,
) -> Term {
    let next = |counter: &mut usize| loop {
        let v = Var::new(format!("x{counter}"));
        *counter += 1;
        if !free.contains(&v) {
            break v;
        }
    };
    match t {
        Term::Var(x) => match scope.iter().rev().find(|(old, _)| old == x) {
            Some((_, new)) => Term::Var(new.clone()),
            None => t.clone(),
        },
        Term::Lam(x, ty, body) => {
            let nx = next(counter);
            scope.push((x.clone(), nx.clone()));
            let body = canonical_in(body, free, counter, scope);
            scope.pop();
            Term::lam(nx, ty.clone(), body)
        }
        Term::Case(s, l, r) => {
            let s = canonical_in(s, free, counter, scope);
            let mut arms = Vec::with_capacity(2);
            for br in [l, r] {
                let nx = next(counter);
                scope.push((br.var.clone(), nx.clone()));
                let body = canonical_in(&br.body, free, counter, scope);
                scope.pop();
                arms.push(Branch::new(nx, br.ty.clone(), body));
            }
            let r = arms.pop().unwrap();
            let l = arms.pop().unwrap();
            Term::case(s, l, r)
        }
        _ => rebuild(t, |c| canonical_in(c, free, counter, scope)),
    }
}

/// Applies `f` to each child of a binder-free constructor.
pub(crate) fn rebuild(t: &Term, mut f: impl FnMut(&Term) -> Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::App(a, b) => {
            let a = f(a);
            Term::app(a, f(b))
        }
        Term::Pair(a, b) => {
            let a = f(a);
            Term::pair(a, f(b))
        }
        Term::Fst(a) => Term::fst(f(a)),
        Term::Snd(a) => Term::snd(f(a)),
        Term::Inl(a, ty) => Term::inl(f(a), ty.clone()),
        Term::Inr(a, ty) => Term::inr(f(a), ty.clone()),
        Term::Abort(a, ty) => Term::abort(f(a), ty.clone()),
        Term::Lam(..) | Term::Case(..) => unreachable!("binders are handled by the caller"),
    }
}
