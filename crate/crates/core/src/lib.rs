//! Sense and denotation of proofs in natural deduction and sequent calculus.
//!
//! Derivations are annotated with λ-terms. The denotation of a derivation is
//! its end-term up to βη (optionally γ) equality; its sense is the set of
//! terms attached to its nodes, compared up to a type-respecting renaming.

pub mod alpha;
pub mod cli;
pub mod context;
pub mod formula;
pub mod meaning;
pub mod nd;
pub mod node;
pub mod report;
pub mod rewrite;
pub mod sc;
pub mod subst;
pub mod syntax;
pub mod term;
pub mod typing;

pub use context::Context;
pub use formula::Formula;
pub use meaning::{
    classify, compare, denotation_of, same_denotation, same_sense, sense_of, Calculus, CheckError,
    Comparison, Derivation, MeaningError, Sense, SenseMode, Verdict,
};
pub use nd::{check_nd, end_term_nd, Judgment, NdDerivation, NdError, NdRule};
pub use node::NodePath;
pub use rewrite::{equivalent, normalize, EqualityMode, RewriteError};
pub use sc::{check_sc, cut_nodes, end_term_sc, ScDerivation, ScError, ScRule, Sequent};
pub use term::{Branch, Term, Var};
pub use typing::{type_of, TypeError};
