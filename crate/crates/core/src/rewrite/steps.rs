//! Single β- and η-steps and the phased normalizer.

use crate::alpha::{alpha_equal, tidy};
use crate::subst::substitute;
use crate::term::Term;

use super::RewriteError;

/// Default step budget for [`normalize`].
pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

/// Contracts the first redex found in pre-order (leftmost-outermost).
pub(crate) fn first_step(t: &Term, at_root: &impl Fn(&Term) -> Option<Term>) -> Option<Term> {
    if let Some(out) = at_root(t) {
        return Some(out);
    }
    t.children()
        .into_iter()
        .enumerate()
        .find_map(|(i, c)| first_step(c, at_root).map(|nc| t.with_child(i, nc)))
}

/// Every result of rewriting exactly one position of `t`.
pub(crate) fn every_step(t: &Term, at_root: &impl Fn(&Term) -> Vec<Term>) -> Vec<Term> {
    let mut out = at_root(t);
    for (i, c) in t.children().into_iter().enumerate() {
        out.extend(
            every_step(c, at_root)
                .into_iter()
                .map(|nc| t.with_child(i, nc)),
        );
    }
    out
}

/// Contractum of a β-redex at the root.
pub fn beta_root(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, a) => match &**f {
            Term::Lam(x, _, body) => Some(substitute(body, x, a)),
            _ => None,
        },
        Term::Fst(p) => match &**p {
            Term::Pair(a, _) => Some((**a).clone()),
            _ => None,
        },
        Term::Snd(p) => match &**p {
            Term::Pair(_, b) => Some((**b).clone()),
            _ => None,
        },
        Term::Case(s, l, r) => match &**s {
            Term::Inl(v, _) => Some(substitute(&l.body, &l.var, v)),
            Term::Inr(v, _) => Some(substitute(&r.body, &r.var, v)),
            _ => None,
        },
        _ => None,
    }
}

/// Contractum of an η-redex at the root.
pub fn eta_root(t: &Term) -> Option<Term> {
    match t {
        Term::Lam(x, _, body) => match &**body {
            Term::App(f, a) if matches!(&**a, Term::Var(y) if y == x) && !f.is_free(x) => {
                Some((**f).clone())
            }
            _ => None,
        },
        Term::Pair(a, b) => match (&**a, &**b) {
            (Term::Fst(s), Term::Snd(t)) if alpha_equal(s, t) => Some((**s).clone()),
            _ => None,
        },
        Term::Case(s, l, r) => {
            let left_ok = matches!(&*l.body,
                Term::Inl(v, other) if matches!(&**v, Term::Var(y) if *y == l.var) && *other == r.ty);
            let right_ok = matches!(&*r.body,
                Term::Inr(v, other) if matches!(&**v, Term::Var(y) if *y == r.var) && *other == l.ty);
            (left_ok && right_ok).then(|| (**s).clone())
        }
        _ => None,
    }
}

pub fn beta_step(t: &Term) -> Option<Term> {
    first_step(t, &beta_root)
}

pub fn eta_step(t: &Term) -> Option<Term> {
    first_step(t, &eta_root)
}

/// All one-step β- and η-reducts, at every position.
pub fn beta_eta_reducts(t: &Term) -> Vec<Term> {
    every_step(t, &|u| {
        beta_root(u).into_iter().chain(eta_root(u)).collect()
    })
}

/// All one-step β-reducts, at every position.
pub fn beta_reducts(t: &Term) -> Vec<Term> {
    every_step(t, &|u| beta_root(u).into_iter().collect())
}

/// β-normal form by leftmost-outermost reduction.
pub fn beta_normalize(t: &Term, max_steps: usize) -> Result<Term, RewriteError> {
    let mut cur = t.clone();
    let mut steps = 0;
    while let Some(next) = beta_step(&cur) {
        steps += 1;
        if steps > max_steps {
            return Err(RewriteError::FuelExhausted { steps: max_steps });
        }
        cur = next;
    }
    Ok(tidy(&cur))
}

/// βη-normal form with the default step budget.
pub fn normalize(t: &Term) -> Result<Term, RewriteError> {
    normalize_with_budget(t, DEFAULT_MAX_STEPS)
}

/// Exhausts β, then contracts one η-redex and goes back to β, until
/// neither applies. The result has tidy bound names.
pub fn normalize_with_budget(t: &Term, max_steps: usize) -> Result<Term, RewriteError> {
    let mut cur = t.clone();
    let mut steps = 0usize;
    let mut tick = || {
        steps += 1;
        if steps > max_steps {
            Err(RewriteError::FuelExhausted { steps: max_steps })
        } else {
            Ok(())
        }
    };
    loop {
        while let Some(next) = beta_step(&cur) {
            tick()?;
            cur = next;
        }
        match eta_step(&cur) {
            Some(next) => {
                tick()?;
                cur = next;
            }
            None => break,
        }
    }
    Ok(tidy(&cur))
}

pub fn is_normal(t: &Term) -> bool {
    beta_step(t).is_none() && eta_step(t).is_none()
}
