//! β-, η- and permutative conversions, normalization, and the equality
//! checks used to compare denotations.

mod gamma;
mod steps;

use std::collections::HashSet;
use std::fmt;
use std::num::NonZeroUsize;

use serde::Serialize;
use thiserror::Error;

use crate::alpha::{alpha_equal, nameless, Nameless};
use crate::context::Context;
use crate::term::Term;

pub use gamma::{
    decompose, gamma_root, gamma_root_in, gamma_steps, gamma_steps_in, merge_known_cases, Frame,
};
pub use steps::{
    beta_eta_reducts, beta_normalize, beta_reducts, beta_root, beta_step, eta_root, eta_step,
    is_normal, normalize, normalize_with_budget, DEFAULT_MAX_STEPS,
};

/// Default number of γ-search layers.
pub const DEFAULT_GAMMA_FUEL: usize = 4;
/// Node cap for the βη search that backs up phased normalization.
pub const BETA_ETA_SEARCH_NODES: usize = 100;
/// Hard cap on nodes visited by one γ search, per side.
pub const GAMMA_SEARCH_NODES: usize = 20_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum EqualityMode {
    #[default]
    BetaEta,
    BetaEtaGamma {
        fuel: NonZeroUsize,
    },
}

impl EqualityMode {
    /// γ mode with `fuel` search layers. Panics on zero.
    pub fn gamma(fuel: usize) -> Self {
        EqualityMode::BetaEtaGamma {
            fuel: NonZeroUsize::new(fuel).expect("γ fuel must be positive"),
        }
    }

    pub fn is_gamma(&self) -> bool {
        matches!(self, EqualityMode::BetaEtaGamma { .. })
    }
}

impl fmt::Display for EqualityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqualityMode::BetaEta => f.write_str("beta-eta"),
            EqualityMode::BetaEtaGamma { fuel } => write!(f, "beta-eta-gamma (fuel {fuel})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("step budget of {steps} rewrite steps exhausted")]
    FuelExhausted { steps: usize },
    #[error("γ search inconclusive after {layers} layers ({explored} terms explored)")]
    Inconclusive { layers: usize, explored: usize },
}

/// Resource limits for [`equivalent_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: usize,
    pub beta_eta_search_nodes: usize,
    pub gamma_search_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_steps: DEFAULT_MAX_STEPS,
            beta_eta_search_nodes: BETA_ETA_SEARCH_NODES,
            gamma_search_nodes: GAMMA_SEARCH_NODES,
        }
    }
}

/// Equality of two terms in the given mode, with default limits.
pub fn equivalent(t1: &Term, t2: &Term, mode: EqualityMode) -> Result<bool, RewriteError> {
    equivalent_with(t1, t2, mode, &Limits::default())
}

pub fn equivalent_with(
    t1: &Term,
    t2: &Term,
    mode: EqualityMode,
    limits: &Limits,
) -> Result<bool, RewriteError> {
    equivalent_in(&Context::new(), t1, t2, mode, limits)
}

/// Equality of two terms whose free variables `ctx` types. The context only
/// matters to γ steps that lift a frame out of a `case`: without the type of
/// a free variable such a step is not taken.
pub fn equivalent_in(
    ctx: &Context,
    t1: &Term,
    t2: &Term,
    mode: EqualityMode,
    limits: &Limits,
) -> Result<bool, RewriteError> {
    if beta_eta_equal(t1, t2, limits)? {
        return Ok(true);
    }
    match mode {
        EqualityMode::BetaEta => Ok(false),
        EqualityMode::BetaEtaGamma { fuel } => gamma_search(ctx, t1, t2, fuel.get(), limits),
    }
}

fn beta_eta_equal(t1: &Term, t2: &Term, limits: &Limits) -> Result<bool, RewriteError> {
    let n1 = normalize_with_budget(t1, limits.max_steps)?;
    let n2 = normalize_with_budget(t2, limits.max_steps)?;
    if alpha_equal(&n1, &n2) {
        return Ok(true);
    }
    // βη with sums is not confluent: different contraction orders may end in
    // different normal forms, so look for a common reduct directly.
    let mut search = Bidirectional::new(t1.clone(), t2.clone(), limits.beta_eta_search_nodes);
    if search.met {
        return Ok(true);
    }
    loop {
        match search.expand(|t| beta_eta_reducts(t).into_iter().map(Ok).collect())? {
            Expansion::Met => return Ok(true),
            Expansion::Closed | Expansion::Capped => return Ok(false),
            Expansion::Open => {}
        }
    }
}

/// βη-normalization followed by resolution of known-scrutinee cases, to a
/// fixed point. These are the nodes of the γ search.
pub fn gamma_normalize(t: &Term, max_steps: usize) -> Result<Term, RewriteError> {
    let mut cur = normalize_with_budget(t, max_steps)?;
    loop {
        let merged = merge_known_cases(&cur);
        if alpha_equal(&merged, &cur) {
            return Ok(cur);
        }
        cur = normalize_with_budget(&merged, max_steps)?;
    }
}

fn gamma_search(
    ctx: &Context,
    t1: &Term,
    t2: &Term,
    fuel: usize,
    limits: &Limits,
) -> Result<bool, RewriteError> {
    let a = gamma_normalize(t1, limits.max_steps)?;
    let b = gamma_normalize(t2, limits.max_steps)?;
    let mut search = Bidirectional::new(a, b, limits.gamma_search_nodes);
    if search.met {
        return Ok(true);
    }
    for _ in 0..fuel {
        let step = |t: &Term| -> Vec<Result<Term, RewriteError>> {
            gamma_steps_in(ctx, t)
                .into_iter()
                .map(|s| gamma_normalize(&s, limits.max_steps))
                .collect()
        };
        match search.expand(step)? {
            Expansion::Met => return Ok(true),
            Expansion::Closed => return Ok(false),
            Expansion::Capped => break,
            Expansion::Open => {}
        }
    }
    Err(RewriteError::Inconclusive {
        layers: fuel,
        explored: search.explored(),
    })
}

enum Expansion {
    Met,
    Closed,
    Capped,
    Open,
}

/// Breadth-first search from two terms at once, one layer per side per call.
struct Bidirectional {
    sides: [Side; 2],
    cap: usize,
    met: bool,
}

struct Side {
    seen: HashSet<Nameless>,
    frontier: Vec<Term>,
}

impl Side {
    fn new(t: Term) -> Self {
        Side {
            seen: HashSet::from([nameless(&t)]),
            frontier: vec![t],
        }
    }
}

impl Bidirectional {
    fn new(a: Term, b: Term, cap: usize) -> Self {
        let met = alpha_equal(&a, &b);
        Bidirectional {
            sides: [Side::new(a), Side::new(b)],
            cap,
            met,
        }
    }

    fn explored(&self) -> usize {
        self.sides[0].seen.len() + self.sides[1].seen.len()
    }

    fn expand(
        &mut self,
        step: impl Fn(&Term) -> Vec<Result<Term, RewriteError>>,
    ) -> Result<Expansion, RewriteError> {
        let mut capped = false;
        for i in 0..2 {
            let (this, other) = if i == 0 {
                let (a, b) = self.sides.split_at_mut(1);
                (&mut a[0], &b[0])
            } else {
                let (a, b) = self.sides.split_at_mut(1);
                (&mut b[0], &a[0])
            };
            let mut next = Vec::new();
            for t in std::mem::take(&mut this.frontier) {
                for s in step(&t) {
                    let s = s?;
                    let key = nameless(&s);
                    if other.seen.contains(&key) {
                        return Ok(Expansion::Met);
                    }
                    if this.seen.contains(&key) {
                        continue;
                    }
                    if this.seen.len() >= self.cap {
                        capped = true;
                        continue;
                    }
                    this.seen.insert(key);
                    next.push(s);
                }
            }
            this.frontier = next;
        }
        if self.sides.iter().all(|s| s.frontier.is_empty()) {
            Ok(if capped {
                Expansion::Capped
            } else {
                Expansion::Closed
            })
        } else if capped {
            Ok(Expansion::Capped)
        } else {
            Ok(Expansion::Open)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;
    use crate::term::{Branch, Var};

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    /// `\u. case u {v.<inr fst(v), inr snd(v)> | x.<inl x, inl x>}`
    fn pair_inside_case() -> Term {
        let qr = Formula::and(q(), r());
        Term::lam(
            Var::new("u"),
            Formula::or(qr.clone(), p()),
            Term::case(
                Term::var("u"),
                Branch::new(
                    Var::new("v"),
                    qr,
                    Term::pair(
                        Term::inr(Term::fst(Term::var("v")), p()),
                        Term::inr(Term::snd(Term::var("v")), p()),
                    ),
                ),
                Branch::new(
                    Var::new("x"),
                    p(),
                    Term::pair(
                        Term::inl(Term::var("x"), q()),
                        Term::inl(Term::var("x"), r()),
                    ),
                ),
            ),
        )
    }

    /// `\u. <case u {v.inr fst(v) | x.inl x}, case u {v.inr snd(v) | x.inl x}>`
    fn case_inside_pair() -> Term {
        let qr = Formula::and(q(), r());
        let arm = |proj: fn(Term) -> Term, other: Formula| {
            Term::case(
                Term::var("u"),
                Branch::new(
                    Var::new("v"),
                    qr.clone(),
                    Term::inr(proj(Term::var("v")), p()),
                ),
                Branch::new(Var::new("x"), p(), Term::inl(Term::var("x"), other)),
            )
        };
        Term::lam(
            Var::new("u"),
            Formula::or(qr.clone(), p()),
            Term::pair(arm(Term::fst, q()), arm(Term::snd, r())),
        )
    }

    #[test]
    fn argument_order_distinguishes() {
        let pair = Term::pair(Term::var("x"), Term::var("y"));
        let a = Term::lam(
            Var::new("x"),
            p(),
            Term::lam(Var::new("y"), p(), pair.clone()),
        );
        let b = Term::lam(Var::new("y"), p(), Term::lam(Var::new("x"), p(), pair));
        assert_eq!(equivalent(&a, &b, EqualityMode::BetaEta), Ok(false));
        assert_eq!(equivalent(&a, &b, EqualityMode::gamma(4)), Ok(false));
    }

    #[test]
    fn cut_and_cut_free_agree() {
        let pp = Formula::and(p(), p());
        let y = || Term::var("y");
        let cut = Term::lam(
            Var::new("y"),
            pp.clone(),
            Term::inl(Term::fst(Term::pair(Term::fst(y()), Term::snd(y()))), p()),
        );
        let free = Term::lam(Var::new("y"), pp, Term::inl(Term::fst(y()), p()));
        assert_eq!(equivalent(&cut, &free, EqualityMode::BetaEta), Ok(true));
    }

    #[test]
    fn distribution_terms_need_gamma() {
        let a = pair_inside_case();
        let b = case_inside_pair();
        assert_eq!(equivalent(&a, &b, EqualityMode::BetaEta), Ok(false));
        assert_eq!(equivalent(&a, &b, EqualityMode::gamma(4)), Ok(true));
        assert_eq!(equivalent(&b, &a, EqualityMode::gamma(1)), Ok(true));
    }

    #[test]
    fn gamma_search_reports_inconclusive_on_cap() {
        let limits = Limits {
            gamma_search_nodes: 1,
            ..Limits::default()
        };
        let body = Term::fst(Term::case(
            Term::var("u"),
            Branch::new(
                Var::new("a"),
                p(),
                Term::pair(Term::var("a"), Term::var("a")),
            ),
            Branch::new(
                Var::new("b"),
                p(),
                Term::pair(Term::var("b"), Term::var("b")),
            ),
        ));
        let a = Term::lam(Var::new("u"), Formula::or(p(), p()), body);
        let b = Term::lam(Var::new("u"), Formula::or(p(), p()), Term::var("u"));
        let res = equivalent_with(&a, &b, EqualityMode::gamma(3), &limits);
        assert!(
            matches!(res, Err(RewriteError::Inconclusive { .. })),
            "{res:?}"
        );
    }

    #[test]
    fn gamma_normalize_merges_redundant_case() {
        let b = case_inside_pair();
        let Term::Lam(_, _, body) = &b else { panic!() };
        let pushed = gamma_root(body)
            .into_iter()
            .map(|s| Term::lam(Var::new("u"), Formula::or(Formula::and(q(), r()), p()), s))
            .map(|s| gamma_normalize(&s, DEFAULT_MAX_STEPS).unwrap())
            .collect::<Vec<_>>();
        assert!(pushed.iter().any(|s| alpha_equal(s, &pair_inside_case())));
    }
}
