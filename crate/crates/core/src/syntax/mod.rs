//! Concrete syntax for formulas, terms and derivations.
//!
//! Formulas use `->`, `/\`, `\/` and `_|_`; `->` binds loosest and
//! associates to the right. Terms are written `\x:A. t`, `t u`, `<t, u>`,
//! `fst(t)`, `snd(t)`, `inl[B] t`, `inr[A] t`, `abort[C] t` and
//! `case t { x:A. u | y:B. v }`. Derivations are parenthesized rule
//! applications such as `(imp-i x (hyp x p))`; `;` starts a comment.

mod lexer;
mod parser;
mod render;

use std::fmt;

use thiserror::Error;

pub use lexer::Pos;
pub use parser::{parse_derivation, parse_formula, parse_source, parse_term, SourceFile};
pub use render::{render_derivation, render_nd, render_sc, render_source, render_term};

/// Words that cannot be used as variable names.
pub const KEYWORDS: [&str; 6] = ["fst", "snd", "inl", "inr", "case", "abort"];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Unexpected input at a position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl SyntaxError {
    fn new(pos: Pos, expected: Vec<String>, found: String) -> Self {
        SyntaxError {
            line: pos.line,
            column: pos.column,
            expected,
            found,
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: unexpected {}",
            self.line, self.column, self.found
        )?;
        if !self.expected.is_empty() {
            write!(f, ", expected {}", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{line}:{column}: unknown rule `{name}`")]
    UnknownRule {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("{line}:{column}: label ^{label} does not match a hypothesis it could discharge")]
    DanglingDischargeLabel {
        label: String,
        line: usize,
        column: usize,
    },
    #[error("{line}:{column}: label ^{label} is used for both {first} and {second}")]
    LabelReuse {
        label: String,
        first: String,
        second: String,
        line: usize,
        column: usize,
    },
    #[error("{line}:{column}: `{rule}` takes {expected} arguments, found {found}")]
    Arity {
        rule: String,
        expected: usize,
        found: usize,
        line: usize,
        column: usize,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax(e) => (e.line, e.column),
            ParseError::UnknownRule { line, column, .. }
            | ParseError::DanglingDischargeLabel { line, column, .. }
            | ParseError::LabelReuse { line, column, .. }
            | ParseError::Arity { line, column, .. } => (*line, *column),
        }
    }
}
