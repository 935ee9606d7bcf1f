//! Capture-avoiding substitution on named terms.

use std::collections::{BTreeMap, BTreeSet};

use crate::term::{Branch, Term, Var};

/// Appends primes to `base` until the name is outside `avoid`.
pub fn fresh_var(base: &Var, avoid: &BTreeSet<Var>) -> Var {
    let mut candidate = base.primed();
    while avoid.contains(&candidate) {
        candidate = candidate.primed();
    }
    candidate
}

/// `t[s/x]`: replaces every free occurrence of `x` in `t` by `s`.
pub fn substitute(t: &Term, x: &Var, s: &Term) -> Term {
    let mut map = BTreeMap::new();
    map.insert(x.clone(), s.clone());
    substitute_many(t, &map)
}

/// Simultaneous substitution of every key of `map` by its value.
///
/// Binders whose name is free in a value being pushed under them are renamed
/// with [`fresh_var`].
pub fn substitute_many(t: &Term, map: &BTreeMap<Var, Term>) -> Term {
    if map.is_empty() {
        return t.clone();
    }
    match t {
        Term::Var(x) => map.get(x).cloned().unwrap_or_else(|| t.clone()),
        Term::Lam(x, ty, body) => {
            let (x, body) = under_binder(x, body, map);
            Term::Lam(x, ty.clone(), Box::new(body))
        }
        Term::App(a, b) => Term::app(substitute_many(a, map), substitute_many(b, map)),
        Term::Pair(a, b) => Term::pair(substitute_many(a, map), substitute_many(b, map)),
        Term::Fst(a) => Term::fst(substitute_many(a, map)),
        Term::Snd(a) => Term::snd(substitute_many(a, map)),
        Term::Inl(a, f) => Term::inl(substitute_many(a, map), f.clone()),
        Term::Inr(a, f) => Term::inr(substitute_many(a, map), f.clone()),
        Term::Abort(a, f) => Term::abort(substitute_many(a, map), f.clone()),
        Term::Case(s, l, r) => {
            let s = substitute_many(s, map);
            let branch = |br: &Branch| {
                let (var, body) = under_binder(&br.var, &br.body, map);
                Branch::new(var, br.ty.clone(), body)
            };
            Term::case(s, branch(l), branch(r))
        }
    }
}

fn under_binder(x: &Var, body: &Term, map: &BTreeMap<Var, Term>) -> (Var, Term) {
    // Only entries that actually reach the body matter.
    let live: BTreeMap<Var, Term> = map
        .iter()
        .filter(|(k, _)| *k != x && body.is_free(k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if live.is_empty() {
        return (x.clone(), body.clone());
    }
    let incoming: BTreeSet<Var> = live.values().flat_map(|v| v.free_vars()).collect();
    if !incoming.contains(x) {
        return (x.clone(), substitute_many(body, &live));
    }
    let mut avoid = incoming;
    avoid.extend(body.free_vars());
    avoid.extend(live.keys().cloned());
    let renamed = fresh_var(x, &avoid);
    let mut extended = live;
    extended.insert(x.clone(), Term::Var(renamed.clone()));
    (renamed, substitute_many(body, &extended))
}
