//! Propositional formulas over atoms with `->`, `/\`, `\/` and `_|_`.

use std::fmt;

use serde::Serialize;

/// A propositional formula. Equality is syntactic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Formula {
    Atom(String),
    Implies(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Absurd,
}

impl Formula {
    /// Builds an atom. Panics if `name` is not a valid identifier.
    pub fn atom(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_identifier(&name), "invalid atom name {name:?}");
        Formula::Atom(name)
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::Absurd)
    }

    pub fn as_implies(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Implies(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_or(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Or(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Number of connectives and atoms.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Absurd => 1,
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Renders the formula wrapped in parentheses when it is compound.
    pub fn delimited(&self) -> Delimited<'_> {
        Delimited(self)
    }
}

/// Display adapter that parenthesizes compound formulas.
pub struct Delimited<'a>(&'a Formula);

impl fmt::Display for Delimited<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_atomic() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Absurd => f.write_str("_|_"),
            Formula::Implies(a, b) => write!(f, "{}->{}", a.delimited(), b.delimited()),
            Formula::And(a, b) => write!(f, "{}/\\{}", a.delimited(), b.delimited()),
            Formula::Or(a, b) => write!(f, "{}\\/{}", a.delimited(), b.delimited()),
        }
    }
}

/// Identifier shape shared by atoms and variables: a letter or `_`, then
/// letters, digits, `_` or trailing primes.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    let rest: &str = chars.as_str();
    let body = rest.trim_end_matches('\'');
    body.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && s != "_"
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn renders_with_parenthesized_operands() {
        let f = Formula::or(Formula::and(q(), r()), p());
        assert_eq!(f.to_string(), "(q/\\r)\\/p");
        assert_eq!(f.delimited().to_string(), "((q/\\r)\\/p)");
        assert_eq!(p().delimited().to_string(), "p");
        let g = Formula::implies(p(), Formula::implies(q(), Formula::Absurd));
        assert_eq!(g.to_string(), "p->(q->_|_)");
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("x"));
        assert!(is_identifier("y''"));
        assert!(is_identifier("_tmp1"));
        assert!(!is_identifier("_"));
        assert!(!is_identifier("1x"));
        assert!(!is_identifier("x'y"));
        assert!(!is_identifier(""));
    }

    #[test]
    #[should_panic]
    fn empty_atom_rejected() {
        Formula::atom("");
    }
}
