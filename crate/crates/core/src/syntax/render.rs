use std::fmt::Write;

use crate::meaning::{Calculus, Derivation};
use crate::nd::NdDerivation;
use crate::sc::ScDerivation;
use crate::term::Term;

/// Renders a term in the concrete syntax, canonicalizing bound names on
/// request.
pub fn render_term(t: &Term, canonical: bool) -> String {
    if canonical {
        t.render_canonical()
    } else {
        t.to_string()
    }
}

/// A derivation as an indented s-expression, one rule per line.
pub fn render_derivation(d: &Derivation) -> String {
    match d {
        Derivation::Nd(d) => render_nd(d),
        Derivation::Sc(d) => render_sc(d),
    }
}

/// A complete source file with its header.
pub fn render_source(name: &str, d: &Derivation) -> String {
    let calculus = match d.calculus() {
        Calculus::Nd => "nd",
        Calculus::Sc => "sc",
    };
    format!("({calculus} {name})\n{}\n", render_derivation(d))
}

pub fn render_nd(d: &NdDerivation) -> String {
    let mut out = String::new();
    nd_into(d, 0, &mut out);
    out
}

pub fn render_sc(d: &ScDerivation) -> String {
    let mut out = String::new();
    sc_into(d, 0, &mut out);
    out
}

fn node<D>(
    head: String,
    premises: &[&D],
    depth: usize,
    out: &mut String,
    rec: fn(&D, usize, &mut String),
) {
    out.push('(');
    out.push_str(&head);
    for p in premises {
        out.push('\n');
        out.push_str(&"  ".repeat(depth + 1));
        rec(p, depth + 1, out);
    }
    out.push(')');
}

fn nd_into(d: &NdDerivation, depth: usize, out: &mut String) {
    let rule = d.rule().keyword();
    match d {
        NdDerivation::Hyp { var, formula } => {
            let _ = write!(out, "({rule} {var} {formula})");
        }
        NdDerivation::ImpI {
            var,
            var_type,
            premise,
        } => {
            let head = match var_type {
                Some(a) => format!("{rule} {var}:{}", a.delimited()),
                None => format!("{rule} {var}"),
            };
            node(head, &[&**premise], depth, out, nd_into);
        }
        NdDerivation::ImpE(a, b) | NdDerivation::AndI(a, b) => {
            node(rule.to_string(), &[&**a, &**b], depth, out, nd_into)
        }
        NdDerivation::AndE1(a) | NdDerivation::AndE2(a) => {
            node(rule.to_string(), &[&**a], depth, out, nd_into)
        }
        NdDerivation::OrI1 { other, premise }
        | NdDerivation::OrI2 { other, premise }
        | NdDerivation::AbsurdE {
            target: other,
            premise,
        } => node(
            format!("{rule} {other}"),
            &[&**premise],
            depth,
            out,
            nd_into,
        ),
        NdDerivation::OrE {
            major,
            left_var,
            left,
            right_var,
            right,
        } => {
            // the branch variables sit between the premises
            let pad = "  ".repeat(depth + 1);
            let _ = write!(out, "({rule}\n{pad}");
            nd_into(major, depth + 1, out);
            let _ = write!(out, "\n{pad}{left_var}\n{pad}");
            nd_into(left, depth + 1, out);
            let _ = write!(out, "\n{pad}{right_var}\n{pad}");
            nd_into(right, depth + 1, out);
            out.push(')');
        }
    }
}

fn sc_into(d: &ScDerivation, depth: usize, out: &mut String) {
    let rule = d.rule().keyword();
    let premises = d.premises();
    let head = match d {
        ScDerivation::Rf { var, formula } => format!("{rule} {var} {formula}"),
        ScDerivation::AbsurdL { var, target } => format!("{rule} {var} {target}"),
        ScDerivation::AndR(..) => rule.to_string(),
        ScDerivation::AndL {
            principal,
            left,
            right,
            ..
        } => format!("{rule} {principal} {left} {right}"),
        ScDerivation::OrR1 { other, .. } | ScDerivation::OrR2 { other, .. } => {
            format!("{rule} {other}")
        }
        ScDerivation::OrL {
            principal,
            left_var,
            right_var,
            ..
        } => format!("{rule} {principal} {left_var} {right_var}"),
        ScDerivation::ImpR { var, .. } => format!("{rule} {var}"),
        ScDerivation::ImpL { principal, var, .. } => format!("{rule} {principal} {var}"),
        ScDerivation::Weaken { var, formula, .. } => format!("{rule} {var} {formula}"),
        ScDerivation::Contract { kept, merged, .. } => format!("{rule} {kept} {merged}"),
        ScDerivation::Cut { var, .. } => format!("{rule} {var}"),
    };
    node(head, &premises, depth, out, sc_into);
}
