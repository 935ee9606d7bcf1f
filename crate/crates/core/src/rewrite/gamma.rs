//! Permutative (γ) conversions: commuting a `case` with the single-layer
//! frame around it, in both directions.
//!
//! Forward: `C[case r {x.s | y.t}]  ~>  case r {x.C[s] | y.C[t]}`.
//! Reverse: `case r {x.C[s] | y.C[t]}  ~>  C[case r {x.s | y.t}]` when both
//! arms share the same outer frame, the frame mentions neither `x` nor `y`,
//! and `s` and `t` have the same type. A shared frame alone is not enough:
//! `fst` of a `p/\q` and `fst` of a `p/\r` agree on the outside only.

use std::collections::BTreeSet;

use crate::alpha::{alpha_equal, rebuild};
use crate::context::Context;
use crate::formula::Formula;
use crate::subst::{fresh_var, substitute};
use crate::term::{Branch, Term, Var};
use crate::typing::type_of;

/// One layer of term structure with a hole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Frame {
    /// `App(-, arg)`
    AppFun(Term),
    Fst,
    Snd,
    /// `case - {x.s | y.t}`
    Scrutinee(Branch, Branch),
    /// `<-, right>`
    PairLeft(Term),
    /// `<left, ->`
    PairRight(Term),
    Inl(Formula),
    Inr(Formula),
    Abort(Formula),
}

impl Frame {
    pub fn plug(&self, hole: Term) -> Term {
        match self {
            Frame::AppFun(a) => Term::app(hole, a.clone()),
            Frame::Fst => Term::fst(hole),
            Frame::Snd => Term::snd(hole),
            Frame::Scrutinee(l, r) => Term::case(hole, l.clone(), r.clone()),
            Frame::PairLeft(b) => Term::pair(hole, b.clone()),
            Frame::PairRight(a) => Term::pair(a.clone(), hole),
            Frame::Inl(f) => Term::inl(hole, f.clone()),
            Frame::Inr(f) => Term::inr(hole, f.clone()),
            Frame::Abort(f) => Term::abort(hole, f.clone()),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            Frame::AppFun(t) | Frame::PairLeft(t) | Frame::PairRight(t) => t.free_vars(),
            Frame::Scrutinee(l, r) => {
                let mut out = l.body.free_vars();
                out.remove(&l.var);
                let mut rv = r.body.free_vars();
                rv.remove(&r.var);
                out.extend(rv);
                out
            }
            Frame::Fst | Frame::Snd | Frame::Inl(_) | Frame::Inr(_) | Frame::Abort(_) => {
                BTreeSet::new()
            }
        }
    }

    fn all_vars(&self) -> BTreeSet<Var> {
        match self {
            Frame::AppFun(t) | Frame::PairLeft(t) | Frame::PairRight(t) => t.all_vars(),
            Frame::Scrutinee(l, r) => {
                let mut out = l.body.all_vars();
                out.extend(r.body.all_vars());
                out.insert(l.var.clone());
                out.insert(r.var.clone());
                out
            }
            _ => BTreeSet::new(),
        }
    }

    /// Frames are compared up to α by plugging the same fresh variable.
    fn alpha_equal(&self, other: &Frame) -> bool {
        if std::mem::discriminant(self) != std::mem::discriminant(other) {
            return false;
        }
        let mut taken = self.all_vars();
        taken.extend(other.all_vars());
        let hole = Term::Var(fresh_var(&Var::new("hole"), &taken));
        alpha_equal(&self.plug(hole.clone()), &other.plug(hole))
    }
}

/// Every way of reading `t` as a frame around a subterm.
pub fn decompose(t: &Term) -> Vec<(Frame, Term)> {
    match t {
        Term::App(f, a) => vec![(Frame::AppFun((**a).clone()), (**f).clone())],
        Term::Fst(a) => vec![(Frame::Fst, (**a).clone())],
        Term::Snd(a) => vec![(Frame::Snd, (**a).clone())],
        Term::Case(s, l, r) => vec![(Frame::Scrutinee(l.clone(), r.clone()), (**s).clone())],
        Term::Pair(a, b) => vec![
            (Frame::PairLeft((**b).clone()), (**a).clone()),
            (Frame::PairRight((**a).clone()), (**b).clone()),
        ],
        Term::Inl(a, f) => vec![(Frame::Inl(f.clone()), (**a).clone())],
        Term::Inr(a, f) => vec![(Frame::Inr(f.clone()), (**a).clone())],
        Term::Abort(a, f) => vec![(Frame::Abort(f.clone()), (**a).clone())],
        Term::Var(_) | Term::Lam(..) => vec![],
    }
}

/// Pushes `frame` into both arms of `case`, renaming arm binders that would
/// capture free variables of the frame.
fn push_into(frame: &Frame, scrutinee: &Term, l: &Branch, r: &Branch) -> Term {
    let frame_fv = frame.free_vars();
    let arm = |br: &Branch| {
        if frame_fv.contains(&br.var) {
            let mut avoid = frame_fv.clone();
            avoid.extend(br.body.free_vars());
            let nv = fresh_var(&br.var, &avoid);
            let body = substitute(&br.body, &br.var, &Term::Var(nv.clone()));
            Branch::new(nv, br.ty.clone(), frame.plug(body))
        } else {
            Branch::new(
                br.var.clone(),
                br.ty.clone(),
                frame.plug((*br.body).clone()),
            )
        }
    };
    Term::case(scrutinee.clone(), arm(l), arm(r))
}

/// γ-conversions applicable at the root of `t`, with no free variable typed.
pub fn gamma_root(t: &Term) -> Vec<Term> {
    gamma_root_in(&Context::new(), t)
}

/// γ-conversions at the root of `t`, whose free variables `ctx` types. A
/// reverse step whose holes cannot be typed in `ctx` is not taken.
pub fn gamma_root_in(ctx: &Context, t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    for (frame, hole) in decompose(t) {
        if let Term::Case(s, l, r) = &hole {
            out.push(push_into(&frame, s, l, r));
        }
    }
    if let Term::Case(s, l, r) = t {
        let l_ctx = ctx.extended(l.var.clone(), l.ty.clone());
        let r_ctx = ctx.extended(r.var.clone(), r.ty.clone());
        for (f1, s1) in decompose(&l.body) {
            for (f2, s2) in decompose(&r.body) {
                if !f1.alpha_equal(&f2) {
                    continue;
                }
                let fv = f1.free_vars();
                if fv.contains(&l.var) || fv.contains(&r.var) {
                    continue;
                }
                match (type_of(&l_ctx, &s1), type_of(&r_ctx, &s2)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => continue,
                }
                let inner = Term::case(
                    (**s).clone(),
                    Branch::new(l.var.clone(), l.ty.clone(), s1.clone()),
                    Branch::new(r.var.clone(), r.ty.clone(), s2),
                );
                out.push(f1.plug(inner));
            }
        }
    }
    out
}

/// All single γ-steps at any position of `t`, with no free variable typed.
pub fn gamma_steps(t: &Term) -> Vec<Term> {
    gamma_steps_in(&Context::new(), t)
}

/// All single γ-steps at any position of `t`, whose free variables `ctx`
/// types.
pub fn gamma_steps_in(ctx: &Context, t: &Term) -> Vec<Term> {
    let mut out = gamma_root_in(ctx, t);
    for (i, c) in t.children().into_iter().enumerate() {
        let inner = match (t, i) {
            (Term::Lam(x, a, _), 0) => ctx.extended(x.clone(), a.clone()),
            (Term::Case(_, l, _), 1) => ctx.extended(l.var.clone(), l.ty.clone()),
            (Term::Case(_, _, r), 2) => ctx.extended(r.var.clone(), r.ty.clone()),
            _ => ctx.clone(),
        };
        out.extend(
            gamma_steps_in(&inner, c)
                .into_iter()
                .map(|nc| t.with_child(i, nc)),
        );
    }
    out
}

struct Known {
    scrutinee: Term,
    scrutinee_fv: BTreeSet<Var>,
    left: bool,
    var: Var,
}

/// Resolves a `case` on a scrutinee already analysed by an enclosing `case`:
/// inside the left arm `x` of `case r {...}`, a nested `case r {x'.s | ...}`
/// becomes `s[x/x']` (symmetrically on the right).
pub fn merge_known_cases(t: &Term) -> Term {
    merge_in(t, &mut Vec::new())
}

fn forget(known: &[Known], x: &Var) -> Vec<usize> {
    known
        .iter()
        .enumerate()
        .filter(|(_, k)| k.var == *x || k.scrutinee_fv.contains(x))
        .map(|(i, _)| i)
        .collect()
}

fn with_binder<R>(
    known: &mut Vec<Known>,
    x: &Var,
    extra: Option<Known>,
    f: impl FnOnce(&mut Vec<Known>) -> R,
) -> R {
    let dropped: Vec<usize> = forget(known, x);
    let mut saved = Vec::new();
    for i in dropped.into_iter().rev() {
        saved.push((i, known.remove(i)));
    }
    let pushed = extra.is_some();
    if let Some(k) = extra {
        known.push(k);
    }
    let out = f(known);
    if pushed {
        known.pop();
    }
    for (i, k) in saved.into_iter().rev() {
        known.insert(i, k);
    }
    out
}

fn merge_in(t: &Term, known: &mut Vec<Known>) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Lam(x, ty, body) => {
            let body = with_binder(known, x, None, |k| merge_in(body, k));
            Term::lam(x.clone(), ty.clone(), body)
        }
        Term::Case(s, l, r) => {
            let s = merge_in(s, known);
            if let Some(k) = known.iter().rev().find(|k| alpha_equal(&k.scrutinee, &s)) {
                let arm = if k.left { l } else { r };
                let chosen = substitute(&arm.body, &arm.var, &Term::Var(k.var.clone()));
                return merge_in(&chosen, known);
            }
            let s_fv = s.free_vars();
            let mut arm = |br: &Branch, left: bool| {
                let fact = (!s_fv.contains(&br.var)).then(|| Known {
                    scrutinee: s.clone(),
                    scrutinee_fv: s_fv.clone(),
                    left,
                    var: br.var.clone(),
                });
                let body = with_binder(known, &br.var, fact, |k| merge_in(&br.body, k));
                Branch::new(br.var.clone(), br.ty.clone(), body)
            };
            let l = arm(l, true);
            let r = arm(r, false);
            Term::case(s, l, r)
        }
        _ => rebuild(t, |c| merge_in(c, known)),
    }
}
