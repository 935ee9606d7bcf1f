//! The invariants, one function per property, each driven by a single seed.
//! The proptest suites and the acceptance runner both call these.

use std::collections::BTreeSet;

use proofmean::alpha::{alpha_equal, canonical, nameless, tidy};
use proofmean::meaning::{classify, same_denotation, Verdict};
use proofmean::meaning::{same_sense, sense_of, Derivation, SenseMode};
use proofmean::nd::check_nd_nodes;
use proofmean::nd::{check_nd, NdDerivation};
use proofmean::node::NodePath;
use proofmean::rewrite::{
    beta_eta_reducts, beta_normalize, beta_reducts, equivalent, eta_root, gamma_steps,
    gamma_steps_in, normalize, EqualityMode, DEFAULT_MAX_STEPS,
};
use proofmean::sc::{check_sc, check_sc_nodes};
use proofmean::subst::substitute;
use proofmean::syntax::{parse_derivation, render_derivation};
use proofmean::typing::type_of;
use proofmean::{Branch, Term, Var};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    apply_renaming, random_renaming, raw_derivation, redex_rich_term, to_nd, to_sc, translatable,
    translated_derivation, typed_term, typed_term_with, Gen, MAX_NODES, MAX_TERM_SIZE,
};

pub type Property = fn(u64) -> Result<(), TestCaseError>;

/// Every property with its name.
pub const ALL: &[(&str, Property)] = &[
    (
        "generated terms are well typed",
        generated_terms_are_well_typed,
    ),
    ("beta subject reduction", beta_subject_reduction),
    ("eta subject reduction", eta_subject_reduction),
    ("gamma subject reduction", gamma_subject_reduction),
    ("beta confluence", beta_confluence),
    ("normalize idempotence", normalize_is_idempotent),
    ("beta-eta equivalence laws", beta_eta_equivalence_laws),
    ("gamma steps are reversible", gamma_steps_are_reversible),
    ("substitution preserves types", substitution_preserves_types),
    (
        "substituting a variable for itself",
        substitution_of_itself_is_identity,
    ),
    (
        "substituting an absent variable",
        substitution_of_absent_variable_is_identity,
    ),
    ("type_of is deterministic", type_of_is_deterministic),
    ("alpha reflexive", alpha_reflexive),
    ("alpha symmetric", alpha_symmetric),
    ("alpha transitive", alpha_transitive),
    ("alpha agrees with nameless form", alpha_matches_nameless),
    ("renamed binders are distinct", renamed_binders_are_distinct),
    ("checker soundness", checker_soundness),
    ("checkers are deterministic", checkers_are_deterministic),
    ("discharge locality", discharge_locality),
    ("sense contains the end-term", sense_contains_end_term),
    (
        "same sense implies same denotation",
        same_sense_implies_same_denotation,
    ),
    ("verdict consistency", verdict_consistency),
    (
        "translations check with the source term",
        translations_check,
    ),
    ("renaming soundness", renaming_soundness),
    ("same_sense reflexive", same_sense_reflexive),
    ("same_sense symmetric", same_sense_symmetric),
    ("same_sense transitive", same_sense_transitive),
    ("render then parse is identity", render_then_parse),
];

/// Further seeds derived from one.
fn seeds<const N: usize>(seed: u64) -> [u64; N] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17) ^ 0x9e37_79b9_7f4a_7c15);
    std::array::from_fn(|_| rng.gen())
}

/// Every one-step η contraction anywhere in the term.
fn eta_reducts(t: &Term) -> Vec<Term> {
    let mut out: Vec<Term> = eta_root(t).into_iter().collect();
    for (i, c) in t.children().into_iter().enumerate() {
        out.extend(eta_reducts(c).into_iter().map(|r| t.with_child(i, r)));
    }
    out
}

pub fn generated_terms_are_well_typed(seed: u64) -> Result<(), TestCaseError> {
    let t = typed_term(seed);
    prop_assert!(t.term.size() <= MAX_TERM_SIZE);
    prop_assert_eq!(type_of(&t.context, &t.term), Ok(t.formula));
    Ok(())
}

pub fn beta_subject_reduction(seed: u64) -> Result<(), TestCaseError> {
    let t = redex_rich_term(seed);
    for r in beta_reducts(&t.term) {
        prop_assert_eq!(
            type_of(&t.context, &r),
            Ok(t.formula.clone()),
            "{} ~> {}",
            t.term,
            r
        );
    }
    Ok(())
}

pub fn eta_subject_reduction(seed: u64) -> Result<(), TestCaseError> {
    let t = typed_term(seed);
    for r in eta_reducts(&t.term) {
        prop_assert_eq!(
            type_of(&t.context, &r),
            Ok(t.formula.clone()),
            "{} ~> {}",
            t.term,
            r
        );
    }
    Ok(())
}

pub fn gamma_subject_reduction(seed: u64) -> Result<(), TestCaseError> {
    let t = typed_term(seed);
    let steps = gamma_steps(&t.term)
        .into_iter()
        .chain(gamma_steps_in(&t.context, &t.term));
    for r in steps {
        prop_assert_eq!(
            type_of(&t.context, &r),
            Ok(t.formula.clone()),
            "{} ~> {}",
            t.term,
            r
        );
    }
    Ok(())
}

/// Contracting any β-redex first still reaches the same β-normal form.
pub fn beta_confluence(seed: u64) -> Result<(), TestCaseError> {
    let t = redex_rich_term(seed);
    let target = beta_normalize(&t.term, DEFAULT_MAX_STEPS).unwrap();
    for r in beta_reducts(&t.term) {
        let n = beta_normalize(&r, DEFAULT_MAX_STEPS).unwrap();
        prop_assert!(
            alpha_equal(&n, &target),
            "{} and {} from {}",
            n,
            target,
            t.term
        );
    }
    Ok(())
}

pub fn normalize_is_idempotent(seed: u64) -> Result<(), TestCaseError> {
    let t = typed_term(seed);
    let n = normalize(&t.term).unwrap();
    prop_assert_eq!(type_of(&t.context, &n), Ok(t.formula.clone()));
    let again = normalize(&n).unwrap();
    prop_assert!(alpha_equal(&n, &again), "{} then {}", n, again);
    Ok(())
}

pub fn substitution_preserves_types(seed: u64) -> Result<(), TestCaseError> {
    let mut g = Gen::new(seed);
    let x = Var::new("x");
    let a = g.formula(1);
    let b = g.formula(2);
    let budget = g.rng().gen_range(1..=MAX_TERM_SIZE);
    let t = g.term_of(&mut vec![(x.clone(), a.clone())], &b, budget);
    let s_budget = g.rng().gen_range(1..=6);
    let s = g.term_of(&mut Vec::new(), &a, s_budget);
    let ctx = g.free_context();
    // x is bound around t while generating it, so no free variable of t
    // other than x itself is called x
    let t_ctx = ctx.extended(x.clone(), a.clone());
    prop_assert_eq!(type_of(&t_ctx, &t), Ok(b.clone()));
    prop_assert_eq!(type_of(&ctx, &s), Ok(a));
    let r = substitute(&t, &x, &s);
    prop_assert_eq!(type_of(&ctx, &r), Ok(b), "{}[{}/x] = {}", t, s, r);
    Ok(())
}

fn fresh(rng: &mut ChaCha8Rng, used: &mut BTreeSet<String>) -> Var {
    loop {
        let name = format!("v{}", rng.gen_range(0..1000));
        if used.insert(name.clone()) {
            break Var::new(name);
        }
    }
}

/// Renames every binder to a fresh `v<n>`, which never captures.
fn rename_bound(t: &Term, rng: &mut ChaCha8Rng, used: &mut BTreeSet<String>) -> Term {
    match t {
        Term::Lam(x, a, body) => {
            let nx = fresh(rng, used);
            let body = substitute(body, x, &Term::Var(nx.clone()));
            Term::lam(nx, a.clone(), rename_bound(&body, rng, used))
        }
        Term::Case(s, l, r) => {
            let s = rename_bound(s, rng, used);
            let mut arm = |br: &Branch, rng: &mut ChaCha8Rng| {
                let nx = fresh(rng, used);
                let body = substitute(&br.body, &br.var, &Term::Var(nx.clone()));
                (nx, body)
            };
            let (lx, lb) = arm(l, rng);
            let (rx, rb) = arm(r, rng);
            let lb = rename_bound(&lb, rng, used);
            let rb = rename_bound(&rb, rng, used);
            Term::case(
                s,
                Branch::new(lx, l.ty.clone(), lb),
                Branch::new(rx, r.ty.clone(), rb),
            )
        }
        _ => {
            let mut out = t.clone();
            for (i, c) in t.children().into_iter().enumerate() {
                out = out.with_child(i, rename_bound(c, rng, used));
            }
            out
        }
    }
}

/// An α-variant of `t` with every binder renamed.
pub fn variant(t: &Term, seed: u64) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rename_bound(t, &mut rng, &mut BTreeSet::new())
}

pub fn alpha_reflexive(seed: u64) -> Result<(), TestCaseError> {
    let t = typed_term(seed).term;
    prop_assert!(alpha_equal(&t, &t));
    Ok(())
}

pub fn alpha_symmetric(seed: u64) -> Result<(), TestCaseError> {
    let [other] = seeds(seed);
    let t = typed_term(seed).term;
    let v = variant(&t, other);
    let u = typed_term(other).term;
    prop_assert!(alpha_equal(&t, &v) && alpha_equal(&v, &t), "{} vs {}", t, v);
    prop_assert_eq!(alpha_equal(&t, &u), alpha_equal(&u, &t));
    Ok(())
}

pub fn alpha_transitive(seed: u64) -> Result<(), TestCaseError> {
    let [s1, s2] = seeds(seed);
    let t = typed_term(seed).term;
    let u = variant(&t, s1);
    let w = variant(&u, s2);
    prop_assert!(alpha_equal(&t, &u) && alpha_equal(&u, &w));
    prop_assert!(alpha_equal(&t, &w));
    for (a, b, c) in [
        (&t, &tidy(&t), &canonical(&t)),
        (&u, &canonical(&t), &tidy(&w)),
    ] {
        prop_assert!(alpha_equal(a, b) && alpha_equal(b, c) && alpha_equal(a, c));
    }
    Ok(())
}

pub fn alpha_matches_nameless(seed: u64) -> Result<(), TestCaseError> {
    let [other, rename] = seeds(seed);
    let t = typed_term(seed);
    let u = typed_term(other).term;
    prop_assert_eq!(alpha_equal(&t.term, &u), nameless(&t.term) == nameless(&u));
    let v = variant(&t.term, rename);
    prop_assert_eq!(nameless(&t.term), nameless(&v));
    prop_assert_eq!(t.term.free_vars(), v.free_vars());
    prop_assert_eq!(type_of(&t.context, &v), Ok(t.formula));
    Ok(())
}

/// Any derivation the generators produce: translated ones check, raw ones
/// mostly do not.
pub fn any_derivation(seed: u64) -> Derivation {
    if seed.is_multiple_of(3) {
        raw_derivation(seed)
    } else {
        translated_derivation(seed)
    }
}

fn variables(d: &Derivation) -> Vec<Var> {
    d.variable_types().expect("checked").into_keys().collect()
}

/// Every node's judgment or sequent, type checked independently.
pub fn nodes_sound(d: &Derivation) -> Result<(), String> {
    let nodes: Vec<_> = match d {
        Derivation::Nd(d) => check_nd_nodes(d)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(p, j)| (p, j.open, j.term, j.formula))
            .collect(),
        Derivation::Sc(d) => check_sc_nodes(d)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(p, s)| (p, s.antecedent, s.term, s.succedent))
            .collect(),
    };
    for (path, ctx, term, formula) in nodes {
        let found = type_of(&ctx, &term);
        if found.as_ref() != Ok(&formula) {
            return Err(format!(
                "node {path}: {term} : {formula} but type_of gives {found:?}"
            ));
        }
        if !term.free_vars().iter().all(|x| ctx.contains(x)) {
            return Err(format!(
                "node {path}: {term} has a free variable outside {ctx}"
            ));
        }
    }
    Ok(())
}

pub fn checker_soundness(seed: u64) -> Result<(), TestCaseError> {
    let d = any_derivation(seed);
    prop_assert!(d.node_count() <= MAX_NODES);
    if let Ok(c) = d.check() {
        prop_assert_eq!(type_of(&c.context, &c.term), Ok(c.formula.clone()));
        prop_assert_eq!(nodes_sound(&d), Ok(()));
    }
    Ok(())
}

pub fn translations_check(seed: u64) -> Result<(), TestCaseError> {
    let budget = (seed % MAX_TERM_SIZE as u64) as usize + 1;
    let t = translatable(seed, budget);
    let nd: Derivation = to_nd(&t.context, &t.term).into();
    let sc: Derivation = to_sc(&t.context, &t.term).into();
    for d in [nd, sc] {
        let c = d
            .check()
            .map_err(|e| TestCaseError::fail(format!("{e} for {}", t.term)))?;
        prop_assert!(alpha_equal(&c.term, &t.term), "{} vs {}", c.term, t.term);
        prop_assert_eq!(&c.formula, &t.formula);
        prop_assert_eq!(nodes_sound(&d), Ok(()));
    }
    Ok(())
}

pub fn renaming_soundness(seed: u64) -> Result<(), TestCaseError> {
    let [rho_seed, mode_seed] = seeds(seed);
    let d = translated_derivation(seed);
    prop_assert!(d.check().is_ok());
    let rho = random_renaming(rho_seed, &variables(&d));
    let renamed = apply_renaming(&d, &rho);
    prop_assert!(renamed.check().is_ok());
    let mode = if mode_seed % 2 == 0 {
        SenseMode::Set
    } else {
        SenseMode::Multiset
    };
    let found = same_sense(&d, &renamed, mode).unwrap();
    prop_assert!(found.is_some(), "no renaming found for {:?}", rho);
    // the witness carries one sense onto the other
    let found = found.unwrap();
    prop_assert_eq!(
        sense_of(&d, mode).unwrap().renamed(&found),
        sense_of(&renamed, mode).unwrap()
    );
    Ok(())
}

pub fn same_sense_reflexive(seed: u64) -> Result<(), TestCaseError> {
    let d = translated_derivation(seed);
    prop_assert!(same_sense(&d, &d, SenseMode::Set).unwrap().is_some());
    prop_assert!(same_sense(&d, &d, SenseMode::Multiset).unwrap().is_some());
    Ok(())
}

pub fn same_sense_symmetric(seed: u64) -> Result<(), TestCaseError> {
    let [other, rho_seed] = seeds(seed);
    let d1 = translated_derivation(seed);
    // a renamed copy half the time, an unrelated derivation otherwise
    let d2 = if rho_seed % 2 == 0 {
        apply_renaming(&d1, &random_renaming(rho_seed, &variables(&d1)))
    } else {
        translated_derivation(other)
    };
    let forward = same_sense(&d1, &d2, SenseMode::Set).unwrap();
    let backward = same_sense(&d2, &d1, SenseMode::Set).unwrap();
    prop_assert_eq!(forward.is_some(), backward.is_some());
    if let (Some(f), Some(b)) = (forward, backward) {
        for (x, y) in &f {
            prop_assert_eq!(b.get(y), Some(x));
        }
    }
    Ok(())
}

pub fn same_sense_transitive(seed: u64) -> Result<(), TestCaseError> {
    let [r1, r2] = seeds(seed);
    let d1 = translated_derivation(seed);
    let d2 = apply_renaming(&d1, &random_renaming(r1, &variables(&d1)));
    let d3 = apply_renaming(&d2, &random_renaming(r2, &variables(&d2)));
    prop_assert!(same_sense(&d1, &d2, SenseMode::Set).unwrap().is_some());
    prop_assert!(same_sense(&d2, &d3, SenseMode::Set).unwrap().is_some());
    prop_assert!(same_sense(&d1, &d3, SenseMode::Set).unwrap().is_some());
    Ok(())
}

pub fn render_then_parse(seed: u64) -> Result<(), TestCaseError> {
    let d = any_derivation(seed);
    let text = render_derivation(&d);
    let back = parse_derivation(&text, Some(d.calculus()));
    prop_assert_eq!(back, Ok(d), "{}", text);
    Ok(())
}

/// Reflexivity, symmetry and transitivity along reduction chains and against
/// an unrelated term of the same type.
pub fn beta_eta_equivalence_laws(seed: u64) -> Result<(), TestCaseError> {
    let mut g = Gen::new(seed);
    let budget = g.rng().gen_range(4..=MAX_TERM_SIZE);
    let t = typed_term_with(&mut g, budget);
    let other_budget = g.rng().gen_range(1..=MAX_TERM_SIZE);
    let u = g.term_of(&mut Vec::new(), &t.formula, other_budget);
    let eq = |a: &Term, b: &Term| equivalent(a, b, EqualityMode::BetaEta).unwrap();
    prop_assert!(eq(&t.term, &t.term));
    prop_assert_eq!(eq(&t.term, &u), eq(&u, &t.term));
    let r1 = beta_eta_reducts(&t.term)
        .into_iter()
        .next()
        .unwrap_or_else(|| t.term.clone());
    let r2 = beta_eta_reducts(&r1)
        .into_iter()
        .next()
        .unwrap_or_else(|| r1.clone());
    prop_assert!(eq(&t.term, &r1) && eq(&r1, &t.term), "{} vs {}", t.term, r1);
    prop_assert!(eq(&r1, &r2));
    prop_assert!(eq(&t.term, &r2), "{} vs {}", t.term, r2);
    // an unrelated term sides with t exactly when it sides with its reducts
    prop_assert_eq!(eq(&u, &t.term), eq(&u, &r2));
    Ok(())
}

/// Every γ step can be undone by another.
pub fn gamma_steps_are_reversible(seed: u64) -> Result<(), TestCaseError> {
    let t = typed_term(seed);
    for r in gamma_steps_in(&t.context, &t.term) {
        let back = gamma_steps_in(&t.context, &r);
        prop_assert!(
            back.iter().any(|b| alpha_equal(b, &t.term)),
            "{} ~> {} has no way back",
            t.term,
            r
        );
    }
    Ok(())
}

pub fn substitution_of_itself_is_identity(seed: u64) -> Result<(), TestCaseError> {
    let t = typed_term(seed).term;
    for x in t.free_vars().into_iter().chain([Var::new("x")]) {
        let r = substitute(&t, &x, &Term::Var(x.clone()));
        prop_assert!(alpha_equal(&r, &t), "{}[{}/{}] = {}", t, x, x, r);
    }
    Ok(())
}

pub fn substitution_of_absent_variable_is_identity(seed: u64) -> Result<(), TestCaseError> {
    let [other] = seeds(seed);
    let t = typed_term(seed).term;
    let s = typed_term(other).term;
    // binders of t may be called w; only free occurrences matter
    let absent = Var::new("w");
    prop_assume!(!t.is_free(&absent));
    let r = substitute(&t, &absent, &s);
    prop_assert!(alpha_equal(&r, &t), "{}[{}/w] = {}", t, s, r);
    Ok(())
}

pub fn type_of_is_deterministic(seed: u64) -> Result<(), TestCaseError> {
    let [other] = seeds(seed);
    let t = typed_term(seed);
    let u = typed_term(other);
    for (ctx, term) in [
        (&t.context, &t.term),
        (&u.context, &u.term),
        (&t.context, &u.term),
    ] {
        prop_assert_eq!(type_of(ctx, term), type_of(&ctx.clone(), &term.clone()));
    }
    Ok(())
}

fn binders(t: &Term) -> Vec<Var> {
    let mut out = Vec::new();
    t.visit(&mut |s| match s {
        Term::Lam(x, _, _) => out.push(x.clone()),
        Term::Case(_, l, r) => out.extend([l.var.clone(), r.var.clone()]),
        _ => {}
    });
    out
}

pub fn renamed_binders_are_distinct(seed: u64) -> Result<(), TestCaseError> {
    let t = typed_term(seed).term;
    let free = t.free_vars();
    let tidied = tidy(&t);
    prop_assert!(
        binders(&tidied).iter().all(|x| !free.contains(x)),
        "{}",
        tidied
    );
    let c = canonical(&t);
    let bs = binders(&c);
    let distinct: BTreeSet<&Var> = bs.iter().collect();
    prop_assert_eq!(distinct.len(), bs.len(), "{}", c);
    prop_assert!(bs.iter().all(|x| !free.contains(x)), "{}", c);
    prop_assert_eq!(c.free_vars(), free);
    Ok(())
}

pub fn checkers_are_deterministic(seed: u64) -> Result<(), TestCaseError> {
    let d = any_derivation(seed);
    match &d {
        Derivation::Nd(n) => prop_assert_eq!(check_nd(n), check_nd(&n.clone())),
        Derivation::Sc(s) => prop_assert_eq!(check_sc(s), check_sc(&s.clone())),
    }
    prop_assert_eq!(d.check(), d.check());
    Ok(())
}

fn nd_at<'a>(d: &'a NdDerivation, path: &NodePath) -> &'a NdDerivation {
    path.0.iter().fold(d, |n, &i| n.premises()[i])
}

/// A discharged variable is open below its discharge only when some other
/// premise still uses it.
pub fn discharge_locality(seed: u64) -> Result<(), TestCaseError> {
    let d = match any_derivation(seed) {
        Derivation::Nd(d) => d,
        Derivation::Sc(_) => match translated_derivation(seed ^ 1) {
            Derivation::Nd(d) => d,
            Derivation::Sc(_) => return Ok(()),
        },
    };
    let Ok(nodes) = check_nd_nodes(&d) else {
        return Ok(());
    };
    let open_at = |p: &NodePath| {
        nodes
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, j)| j.open.clone())
            .expect("every node is listed")
    };
    for (path, judgment) in &nodes {
        match nd_at(&d, path) {
            NdDerivation::ImpI { var, .. } => {
                prop_assert!(!judgment.open.contains(var), "{} at {}", var, path)
            }
            NdDerivation::OrE {
                left_var,
                right_var,
                ..
            } => {
                let major = open_at(&path.child(0));
                let left = open_at(&path.child(1)).without(left_var);
                let right = open_at(&path.child(2)).without(right_var);
                for x in [left_var, right_var] {
                    if judgment.open.contains(x) {
                        prop_assert!(
                            major.contains(x) || left.contains(x) || right.contains(x),
                            "{} at {}",
                            x,
                            path
                        );
                    }
                }
            }
            _ => {}
        }
    }
    Ok(())
}

pub fn sense_contains_end_term(seed: u64) -> Result<(), TestCaseError> {
    let d = any_derivation(seed);
    if let Ok(c) = d.check() {
        for mode in [SenseMode::Set, SenseMode::Multiset] {
            prop_assert!(sense_of(&d, mode).unwrap().contains(&c.term), "{}", c.term);
        }
    }
    Ok(())
}

pub fn same_sense_implies_same_denotation(seed: u64) -> Result<(), TestCaseError> {
    let [other, rho_seed] = seeds(seed);
    let d1 = translated_derivation(seed);
    let d2 = if rho_seed % 2 == 0 {
        apply_renaming(&d1, &random_renaming(rho_seed, &variables(&d1)))
    } else {
        translated_derivation(other)
    };
    if let Some(rho) = same_sense(&d1, &d2, SenseMode::Set).unwrap() {
        let closed = [&d1, &d2]
            .iter()
            .all(|d| d.check().unwrap().context.is_empty());
        if closed {
            prop_assert!(same_denotation(&d1, &d2, EqualityMode::BetaEta).unwrap());
        }
        // open assumptions may be renamed too, so carry d1 along the witness
        let renamed = d1.rename_vars(&|x| rho.get(x).cloned().unwrap_or_else(|| x.clone()));
        prop_assert!(same_denotation(&renamed, &d2, EqualityMode::BetaEta).unwrap());
    }
    Ok(())
}

pub fn verdict_consistency(seed: u64) -> Result<(), TestCaseError> {
    let [other] = seeds(seed);
    let d1 = translated_derivation(seed);
    let d2 = translated_derivation(other);
    let verdict = classify(&d1, &d2, EqualityMode::BetaEta).unwrap();
    if d1.check().unwrap().formula != d2.check().unwrap().formula {
        prop_assert_eq!(verdict, Verdict::DifferentDenotation);
    }
    // renaming only bound variables keeps both sense and denotation
    let open = d1.check().unwrap().context;
    let bound: Vec<Var> = variables(&d1)
        .into_iter()
        .filter(|x| !open.contains(x))
        .collect();
    let renamed = apply_renaming(&d1, &random_renaming(other, &bound));
    prop_assert_eq!(
        classify(&d1, &renamed, EqualityMode::BetaEta).unwrap(),
        Verdict::SameSenseSameDenotation
    );
    Ok(())
}
