//! Random generators shared by the property suites.
//!
//! Terms are generated type-directed from a seed so every generated term is
//! well typed in the context of its free variables. Binder names come from a
//! small pool, so shadowing and capture situations are common.

#![allow(dead_code)]

pub mod props;

use std::collections::BTreeMap;

use proofmean::alpha::canonical;
use proofmean::context::Context;
use proofmean::meaning::Derivation;
use proofmean::nd::NdDerivation;
use proofmean::sc::ScDerivation;
use proofmean::typing::type_of;
use proofmean::{Branch, Formula, Term, Var};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest generated term, in constructors.
pub const MAX_TERM_SIZE: usize = 12;
/// Largest generated derivation, in nodes.
pub const MAX_NODES: usize = 10;

const NAMES: [&str; 6] = ["x", "y", "z", "a", "b", "c"];
const ATOMS: [&str; 3] = ["p", "q", "r"];

pub struct Gen {
    rng: ChaCha8Rng,
    free: BTreeMap<Var, Formula>,
    fresh: usize,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            free: BTreeMap::new(),
            fresh: 0,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Free variables introduced so far, with their formulas.
    pub fn free_context(&self) -> Context {
        let mut ctx = Context::new();
        for (x, a) in &self.free {
            ctx.insert(x.clone(), a.clone())
                .expect("one formula per free variable");
        }
        ctx
    }

    pub fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.4) {
            if self.rng.gen_bool(0.08) {
                return Formula::Absurd;
            }
            return Formula::atom(*ATOMS.choose(&mut self.rng).unwrap());
        }
        let a = self.formula(depth - 1);
        let b = self.formula(depth - 1);
        match self.rng.gen_range(0..3) {
            0 => Formula::implies(a, b),
            1 => Formula::and(a, b),
            _ => Formula::or(a, b),
        }
    }

    fn binder(&mut self) -> Var {
        Var::new(*NAMES.choose(&mut self.rng).unwrap())
    }

    /// A variable of type `ty`: a visible binder, or a free variable that no
    /// binder in scope hides.
    fn var_of(&mut self, scope: &[(Var, Formula)], ty: &Formula) -> Term {
        let mut visible: Vec<&Var> = Vec::new();
        let mut seen = Vec::new();
        for (x, a) in scope.iter().rev() {
            if seen.contains(&x) {
                continue;
            }
            seen.push(x);
            if a == ty {
                visible.push(x);
            }
        }
        if !visible.is_empty() && self.rng.gen_bool(0.75) {
            return Term::Var((*visible.choose(&mut self.rng).unwrap()).clone());
        }
        let usable: Vec<Var> = NAMES
            .iter()
            .map(|n| Var::new(*n))
            .filter(|x| !scope.iter().any(|(y, _)| y == x))
            .filter(|x| self.free.get(x).is_none_or(|a| a == ty))
            .collect();
        let x = match usable.choose(&mut self.rng) {
            Some(x) => x.clone(),
            None => {
                self.fresh += 1;
                Var::new(format!("f{}", self.fresh))
            }
        };
        self.free.insert(x.clone(), ty.clone());
        Term::Var(x)
    }

    /// Splits `budget` among `k` children, each getting at least one.
    fn split(&mut self, budget: usize, k: usize) -> Vec<usize> {
        let mut parts = vec![1; k];
        for _ in 0..budget - k {
            let i = self.rng.gen_range(0..k);
            parts[i] += 1;
        }
        parts
    }

    /// A term of type `ty` with at most `budget` constructors.
    pub fn term_of(
        &mut self,
        scope: &mut Vec<(Var, Formula)>,
        ty: &Formula,
        budget: usize,
    ) -> Term {
        if budget <= 1 {
            return self.var_of(scope, ty);
        }
        let rest = budget - 1;
        let mut choices = vec![0]; // variable
        match ty {
            Formula::Implies(..) => choices.extend([1, 1, 1]),
            Formula::And(..) if rest >= 2 => choices.extend([2, 2]),
            Formula::Or(..) => choices.extend([3, 3]),
            _ => {}
        }
        choices.extend([4, 4]); // projection
        if rest >= 2 {
            choices.extend([5, 5]); // application
        }
        if rest >= 3 {
            choices.push(6); // case
        }
        choices.push(7); // abort
        match *choices.choose(&mut self.rng).unwrap() {
            0 => self.var_of(scope, ty),
            1 => {
                let (a, b) = ty.as_implies().unwrap();
                let x = self.binder();
                scope.push((x.clone(), a.clone()));
                let body = self.term_of(scope, b, rest);
                scope.pop();
                Term::lam(x, a.clone(), body)
            }
            2 => {
                let (a, b) = ty.as_and().unwrap();
                let (a, b) = (a.clone(), b.clone());
                let parts = self.split(rest, 2);
                let l = self.term_of(scope, &a, parts[0]);
                let r = self.term_of(scope, &b, parts[1]);
                Term::pair(l, r)
            }
            3 => {
                let (a, b) = ty.as_or().unwrap();
                let (a, b) = (a.clone(), b.clone());
                if self.rng.gen_bool(0.5) {
                    Term::inl(self.term_of(scope, &a, rest), b)
                } else {
                    Term::inr(self.term_of(scope, &b, rest), a)
                }
            }
            4 => {
                let other = self.formula(1);
                if self.rng.gen_bool(0.5) {
                    Term::fst(self.term_of(scope, &Formula::and(ty.clone(), other), rest))
                } else {
                    Term::snd(self.term_of(scope, &Formula::and(other, ty.clone()), rest))
                }
            }
            5 => {
                let arg = self.formula(1);
                let parts = self.split(rest, 2);
                let f = self.term_of(scope, &Formula::implies(arg.clone(), ty.clone()), parts[0]);
                let a = self.term_of(scope, &arg, parts[1]);
                Term::app(f, a)
            }
            6 => {
                let (a, b) = (self.formula(1), self.formula(1));
                let parts = self.split(rest, 3);
                let s = self.term_of(scope, &Formula::or(a.clone(), b.clone()), parts[0]);
                let (x, y) = (self.binder(), self.binder());
                scope.push((x.clone(), a.clone()));
                let l = self.term_of(scope, ty, parts[1]);
                scope.pop();
                scope.push((y.clone(), b.clone()));
                let r = self.term_of(scope, ty, parts[2]);
                scope.pop();
                Term::case(s, Branch::new(x, a, l), Branch::new(y, b, r))
            }
            _ => Term::abort(self.term_of(scope, &Formula::Absurd, rest), ty.clone()),
        }
    }
}

/// A well-typed term: its free-variable context, the term and its type.
#[derive(Debug, Clone)]
pub struct Typed {
    pub context: Context,
    pub term: Term,
    pub formula: Formula,
}

pub fn typed_term(seed: u64) -> Typed {
    let mut g = Gen::new(seed);
    let budget = g.rng().gen_range(1..=MAX_TERM_SIZE);
    typed_term_with(&mut g, budget)
}

pub fn typed_term_with(g: &mut Gen, budget: usize) -> Typed {
    let formula = g.formula(2);
    let term = g.term_of(&mut Vec::new(), &formula, budget);
    Typed {
        context: g.free_context(),
        term,
        formula,
    }
}

/// A term that has at least one β-redex, when the seed allows one.
pub fn redex_rich_term(seed: u64) -> Typed {
    let mut g = Gen::new(seed);
    let mut best = None;
    for _ in 0..8 {
        let budget = g.rng().gen_range(4..=MAX_TERM_SIZE);
        let t = typed_term_with(&mut g, budget);
        if !proofmean::rewrite::beta_reducts(&t.term).is_empty() {
            return t;
        }
        best.get_or_insert(t);
    }
    best.unwrap()
}

fn ty(ctx: &Context, t: &Term) -> Formula {
    type_of(ctx, t).expect("translation input is well typed")
}

/// Natural deduction derivation with end-term `t`. Binders of `t` must be
/// pairwise distinct and distinct from its free variables.
pub fn to_nd(ctx: &Context, t: &Term) -> NdDerivation {
    match t {
        Term::Var(x) => NdDerivation::hyp(x.name(), ctx.get(x).expect("bound").clone()),
        Term::Lam(x, a, body) => {
            let inner = to_nd(&ctx.extended(x.clone(), a.clone()), body);
            if body.is_free(x) {
                NdDerivation::imp_i(x.name(), inner)
            } else {
                NdDerivation::imp_i_typed(x.name(), a.clone(), inner)
            }
        }
        Term::App(f, a) => NdDerivation::imp_e(to_nd(ctx, f), to_nd(ctx, a)),
        Term::Pair(a, b) => NdDerivation::and_i(to_nd(ctx, a), to_nd(ctx, b)),
        Term::Fst(a) => NdDerivation::and_e1(to_nd(ctx, a)),
        Term::Snd(a) => NdDerivation::and_e2(to_nd(ctx, a)),
        Term::Inl(a, other) => NdDerivation::or_i1(other.clone(), to_nd(ctx, a)),
        Term::Inr(a, other) => NdDerivation::or_i2(other.clone(), to_nd(ctx, a)),
        Term::Case(s, l, r) => NdDerivation::or_e(
            to_nd(ctx, s),
            l.var.name(),
            to_nd(&ctx.extended(l.var.clone(), l.ty.clone()), &l.body),
            r.var.name(),
            to_nd(&ctx.extended(r.var.clone(), r.ty.clone()), &r.body),
        ),
        Term::Abort(a, target) => NdDerivation::absurd_e(target.clone(), to_nd(ctx, a)),
    }
}

/// Sequent calculus derivation with end-term `t`, eliminations becoming
/// cuts against left rules. Same preconditions as [`to_nd`].
pub fn to_sc(ctx: &Context, t: &Term) -> ScDerivation {
    let mut fresh = 0;
    sc_in(ctx, t, &mut fresh)
}

fn fresh_name(n: &mut usize) -> String {
    *n += 1;
    format!("k{n}")
}

/// `d` with `x:a` in its antecedent, weakening when the term does not use it.
fn ensure(x: &Var, a: &Formula, body: &Term, d: ScDerivation) -> ScDerivation {
    if body.is_free(x) {
        d
    } else {
        ScDerivation::weaken(x.name(), a.clone(), d)
    }
}

fn sc_in(ctx: &Context, t: &Term, n: &mut usize) -> ScDerivation {
    match t {
        Term::Var(x) => ScDerivation::rf(x.name(), ctx.get(x).expect("bound").clone()),
        Term::Lam(x, a, body) => {
            let inner = sc_in(&ctx.extended(x.clone(), a.clone()), body, n);
            ScDerivation::imp_r(x.name(), ensure(x, a, body, inner))
        }
        Term::Pair(a, b) => ScDerivation::and_r(sc_in(ctx, a, n), sc_in(ctx, b, n)),
        Term::Inl(a, other) => ScDerivation::or_r1(other.clone(), sc_in(ctx, a, n)),
        Term::Inr(a, other) => ScDerivation::or_r2(other.clone(), sc_in(ctx, a, n)),
        Term::Fst(s) | Term::Snd(s) => {
            let st = ty(ctx, s);
            let (a, b) = st.as_and().expect("product");
            let (z, x, y) = (fresh_name(n), fresh_name(n), fresh_name(n));
            let right = if matches!(t, Term::Fst(_)) {
                ScDerivation::weaken(&y, b.clone(), ScDerivation::rf(&x, a.clone()))
            } else {
                ScDerivation::weaken(&x, a.clone(), ScDerivation::rf(&y, b.clone()))
            };
            ScDerivation::cut(&z, sc_in(ctx, s, n), ScDerivation::and_l(&z, &x, &y, right))
        }
        Term::App(f, a) => {
            let ft = ty(ctx, f);
            let (_, b) = ft.as_implies().expect("function");
            let (z, w) = (fresh_name(n), fresh_name(n));
            let left = sc_in(ctx, f, n);
            let arg = sc_in(ctx, a, n);
            ScDerivation::cut(
                &z,
                left,
                ScDerivation::imp_l(&z, &w, arg, ScDerivation::rf(&w, b.clone())),
            )
        }
        Term::Case(s, l, r) => {
            let z = fresh_name(n);
            let left = sc_in(&ctx.extended(l.var.clone(), l.ty.clone()), &l.body, n);
            let right = sc_in(&ctx.extended(r.var.clone(), r.ty.clone()), &r.body, n);
            let cases = ScDerivation::or_l(
                &z,
                l.var.name(),
                r.var.name(),
                ensure(&l.var, &l.ty, &l.body, left),
                ensure(&r.var, &r.ty, &r.body, right),
            );
            ScDerivation::cut(&z, sc_in(ctx, s, n), cases)
        }
        Term::Abort(s, target) => {
            let z = fresh_name(n);
            ScDerivation::cut(
                &z,
                sc_in(ctx, s, n),
                ScDerivation::absurd_l(&z, target.clone()),
            )
        }
    }
}

/// A random term with distinct binder names, ready for translation.
pub fn translatable(seed: u64, budget: usize) -> Typed {
    let mut g = Gen::new(seed);
    let t = typed_term_with(&mut g, budget);
    Typed {
        term: canonical(&t.term),
        ..t
    }
}

/// A derivation of at most [`MAX_NODES`] nodes obtained by translating a
/// random term; shrinks the term budget until the derivation fits.
pub fn translated_derivation(seed: u64) -> Derivation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let sc = rng.gen_bool(0.5);
    let mut budget = rng.gen_range(1..=MAX_TERM_SIZE);
    loop {
        let t = translatable(seed.wrapping_add(budget as u64), budget);
        let d: Derivation = if sc {
            to_sc(&t.context, &t.term).into()
        } else {
            to_nd(&t.context, &t.term).into()
        };
        if d.node_count() <= MAX_NODES || budget == 1 {
            return d;
        }
        budget -= 1;
    }
}

/// A derivation assembled from random rules, variables and formulas with at
/// most [`MAX_NODES`] nodes. Most are rejected by the checkers.
pub fn raw_derivation(seed: u64) -> Derivation {
    let mut g = Gen::new(seed);
    let nodes = g.rng().gen_range(1..=MAX_NODES);
    if g.rng().gen_bool(0.5) {
        raw_nd(&mut g, nodes).into()
    } else {
        raw_sc(&mut g, nodes).into()
    }
}

fn small_var(g: &mut Gen) -> String {
    ["x", "y", "z"].choose(g.rng()).unwrap().to_string()
}

fn raw_nd(g: &mut Gen, nodes: usize) -> NdDerivation {
    if nodes <= 1 {
        let x = small_var(g);
        return NdDerivation::hyp(&x, g.formula(1));
    }
    let rest = nodes - 1;
    let two = rest >= 2;
    match g.rng().gen_range(0..if two { 9 } else { 6 }) {
        0 => {
            let x = small_var(g);
            NdDerivation::imp_i(&x, raw_nd(g, rest))
        }
        1 => NdDerivation::and_e1(raw_nd(g, rest)),
        2 => NdDerivation::and_e2(raw_nd(g, rest)),
        3 => {
            let f = g.formula(1);
            NdDerivation::or_i1(f, raw_nd(g, rest))
        }
        4 => {
            let f = g.formula(1);
            NdDerivation::absurd_e(f, raw_nd(g, rest))
        }
        5 => {
            let (x, f) = (small_var(g), g.formula(1));
            NdDerivation::imp_i_typed(&x, f, raw_nd(g, rest))
        }
        6 => {
            let parts = g.split(rest, 2);
            NdDerivation::imp_e(raw_nd(g, parts[0]), raw_nd(g, parts[1]))
        }
        7 => {
            let parts = g.split(rest, 2);
            NdDerivation::and_i(raw_nd(g, parts[0]), raw_nd(g, parts[1]))
        }
        _ if rest >= 3 => {
            let parts = g.split(rest, 3);
            let (x, y) = (small_var(g), small_var(g));
            let major = raw_nd(g, parts[0]);
            let l = raw_nd(g, parts[1]);
            let r = raw_nd(g, parts[2]);
            NdDerivation::or_e(major, &x, l, &y, r)
        }
        _ => {
            let parts = g.split(rest, 2);
            NdDerivation::and_i(raw_nd(g, parts[0]), raw_nd(g, parts[1]))
        }
    }
}

fn raw_sc(g: &mut Gen, nodes: usize) -> ScDerivation {
    if nodes <= 1 {
        let x = small_var(g);
        let f = g.formula(1);
        return if g.rng().gen_bool(0.9) {
            ScDerivation::rf(&x, f)
        } else {
            ScDerivation::absurd_l(&x, f)
        };
    }
    let rest = nodes - 1;
    let two = rest >= 2;
    match g.rng().gen_range(0..if two { 12 } else { 7 }) {
        0 => {
            let x = small_var(g);
            ScDerivation::imp_r(&x, raw_sc(g, rest))
        }
        1 => {
            let (z, x, y) = (small_var(g), small_var(g), small_var(g));
            ScDerivation::and_l(&z, &x, &y, raw_sc(g, rest))
        }
        2 => {
            let f = g.formula(1);
            ScDerivation::or_r1(f, raw_sc(g, rest))
        }
        3 => {
            let f = g.formula(1);
            ScDerivation::or_r2(f, raw_sc(g, rest))
        }
        4 | 5 => {
            let (x, f) = (small_var(g), g.formula(1));
            ScDerivation::weaken(&x, f, raw_sc(g, rest))
        }
        6 => {
            let (x, y) = (small_var(g), small_var(g));
            ScDerivation::contract(&x, &y, raw_sc(g, rest))
        }
        7 => {
            let parts = g.split(rest, 2);
            ScDerivation::and_r(raw_sc(g, parts[0]), raw_sc(g, parts[1]))
        }
        8 => {
            let parts = g.split(rest, 2);
            let (z, x, y) = (small_var(g), small_var(g), small_var(g));
            ScDerivation::or_l(&z, &x, &y, raw_sc(g, parts[0]), raw_sc(g, parts[1]))
        }
        9 => {
            let parts = g.split(rest, 2);
            let (x, y) = (small_var(g), small_var(g));
            ScDerivation::imp_l(&x, &y, raw_sc(g, parts[0]), raw_sc(g, parts[1]))
        }
        _ => {
            let parts = g.split(rest, 2);
            let x = small_var(g);
            ScDerivation::cut(&x, raw_sc(g, parts[0]), raw_sc(g, parts[1]))
        }
    }
}

/// An injective renaming of `vars` into a pool of old and new names.
pub fn random_renaming(seed: u64, vars: &[Var]) -> BTreeMap<Var, Var> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Var> = vars.to_vec();
    let unused = (0..)
        .map(|i| Var::new(format!("r{i}")))
        .filter(|v| !vars.contains(v))
        .take(vars.len());
    pool.extend(unused);
    pool.shuffle(&mut rng);
    vars.iter().cloned().zip(pool).collect()
}

pub fn apply_renaming(d: &Derivation, rho: &BTreeMap<Var, Var>) -> Derivation {
    d.rename_vars(&|x: &Var| rho.get(x).cloned().unwrap_or_else(|| x.clone()))
}
