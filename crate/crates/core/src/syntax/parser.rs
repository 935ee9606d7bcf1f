use std::collections::BTreeMap;

use crate::formula::{is_identifier, Formula};
use crate::meaning::{Calculus, Derivation};
use crate::nd::{NdDerivation, NdRule};
use crate::sc::{ScDerivation, ScRule};
use crate::term::{Branch, Term, Var};

use super::lexer::{tokenize, Pos, Tok, Token};
use super::{is_keyword, ParseError, SyntaxError};

type PResult<T> = Result<T, ParseError>;

/// A parsed derivation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    /// Name from the optional `(nd NAME)` / `(sc NAME)` header.
    pub name: Option<String>,
    pub derivation: Derivation,
}

impl SourceFile {
    pub fn calculus(&self) -> Calculus {
        self.derivation.calculus()
    }
}

/// Parses a derivation file.
///
/// The calculus comes from the header when there is one, otherwise from
/// `default`, otherwise from the first rule name.
pub fn parse_source(text: &str, default: Option<Calculus>) -> PResult<SourceFile> {
    let mut p = Parser::new(text)?;
    let (header_calculus, name) = match p.header()? {
        Some((c, n)) => (Some(c), Some(n)),
        None => (None, None),
    };
    let calculus = header_calculus.or(default);
    let derivation = p.root_derivation(calculus)?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(SourceFile { name, derivation })
}

pub fn parse_derivation(text: &str, calculus: Option<Calculus>) -> PResult<Derivation> {
    parse_source(text, calculus).map(|s| s.derivation)
}

pub fn parse_formula(text: &str) -> PResult<Formula> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(f)
}

pub fn parse_term(text: &str) -> PResult<Term> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(t)
}

/// Open hypothesis labels of a subderivation.
type Labels = BTreeMap<String, (Var, Pos)>;

#[derive(Clone, Copy)]
enum Kind {
    Var,
    Formula,
    Premise,
    /// Variable or label being discharged; `typed` allows `x:A`.
    Discharge {
        typed: bool,
    },
}

enum Discharge {
    Named(Var, Option<Formula>),
    Label(String, Pos),
}

enum Arg<D> {
    Var(Var),
    Formula(Formula),
    Premise(D),
    Discharge(Discharge),
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            i: 0,
        })
    }

    fn peek(&self) -> &Tok {
        self.peek_at(0)
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let last = self.toks.len() - 1;
        &self.toks[(self.i + k).min(last)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i.min(self.toks.len() - 1)].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i.min(self.toks.len() - 1)].clone();
        if self.i < self.toks.len() - 1 {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(SyntaxError::new(
            self.pos(),
            expected.iter().map(|s| s.to_string()).collect(),
            self.peek().to_string(),
        )
        .into())
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<Pos> {
        if *self.peek() == tok {
            Ok(self.bump().pos)
        } else {
            self.error(&[what])
        }
    }

    // ---- formulas -------------------------------------------------------

    pub(super) fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Vee {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut f = self.formula_atom()?;
        while *self.peek() == Tok::Wedge {
            self.bump();
            f = Formula::and(f, self.formula_atom()?);
        }
        Ok(f)
    }

    fn formula_atom(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Name(n) if is_identifier(&n) => {
                self.bump();
                Ok(Formula::atom(n))
            }
            Tok::Bottom => {
                self.bump();
                Ok(Formula::Absurd)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => self.error(&["an atom", "`_|_`", "`(`"]),
        }
    }

    // ---- terms ----------------------------------------------------------

    fn variable(&mut self) -> PResult<Var> {
        match self.peek().clone() {
            Tok::Name(n) if is_identifier(&n) && !is_keyword(&n) => {
                self.bump();
                Ok(Var::new(n))
            }
            _ => self.error(&["a variable"]),
        }
    }

    fn keyword_is(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Name(n) if n == k)
    }

    pub(super) fn term(&mut self) -> PResult<Term> {
        if *self.peek() == Tok::Lambda {
            self.bump();
            let x = self.variable()?;
            self.expect(Tok::Colon, "`:`")?;
            let a = self.formula()?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.term()?;
            return Ok(Term::lam(x, a, body));
        }
        if self.keyword_is("case") {
            self.bump();
            let s = self.application()?;
            self.expect(Tok::LBrace, "`{`")?;
            let l = self.branch()?;
            self.expect(Tok::Bar, "`|`")?;
            let r = self.branch()?;
            self.expect(Tok::RBrace, "`}`")?;
            return Ok(Term::case(s, l, r));
        }
        self.application()
    }

    fn branch(&mut self) -> PResult<Branch> {
        let x = self.variable()?;
        self.expect(Tok::Colon, "`:`")?;
        let a = self.formula()?;
        self.expect(Tok::Dot, "`.`")?;
        Ok(Branch::new(x, a, self.term()?))
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Name(n) => !is_keyword(n) || n == "fst" || n == "snd",
            Tok::LParen | Tok::LAngle => true,
            _ => false,
        }
    }

    fn application(&mut self) -> PResult<Term> {
        let mut t = self.prefix()?;
        while self.starts_atom() {
            t = Term::app(t, self.term_atom()?);
        }
        Ok(t)
    }

    fn prefix(&mut self) -> PResult<Term> {
        for k in ["inl", "inr", "abort"] {
            if self.keyword_is(k) {
                self.bump();
                self.expect(Tok::LBracket, "`[`")?;
                let a = self.formula()?;
                self.expect(Tok::RBracket, "`]`")?;
                let t = self.prefix()?;
                return Ok(match k {
                    "inl" => Term::inl(t, a),
                    "inr" => Term::inr(t, a),
                    _ => Term::abort(t, a),
                });
            }
        }
        self.term_atom()
    }

    fn term_atom(&mut self) -> PResult<Term> {
        for k in ["fst", "snd"] {
            if self.keyword_is(k) {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(if k == "fst" {
                    Term::fst(t)
                } else {
                    Term::snd(t)
                });
            }
        }
        match self.peek() {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::LAngle => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.term()?;
                self.expect(Tok::RAngle, "`>`")?;
                Ok(Term::pair(a, b))
            }
            _ => match self.variable() {
                Ok(x) => Ok(Term::Var(x)),
                Err(_) => self.error(&["a term"]),
            },
        }
    }

    // ---- derivations ----------------------------------------------------

    fn header(&mut self) -> PResult<Option<(Calculus, String)>> {
        let calculus = match (self.peek(), self.peek_at(1)) {
            (Tok::LParen, Tok::Name(c)) if c == "nd" => Calculus::Nd,
            (Tok::LParen, Tok::Name(c)) if c == "sc" => Calculus::Sc,
            _ => return Ok(None),
        };
        self.bump();
        self.bump();
        let name = match self.peek().clone() {
            Tok::Name(n) | Tok::Word(n) => {
                self.bump();
                n
            }
            _ => return self.error(&["a derivation name"]),
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(Some((calculus, name)))
    }

    fn rule_word(&self) -> Option<(String, Pos)> {
        match self.peek_at(1) {
            Tok::Name(n) | Tok::Word(n) => Some((n.clone(), self.toks[self.i + 1].pos)),
            _ => None,
        }
    }

    fn root_derivation(&mut self, calculus: Option<Calculus>) -> PResult<Derivation> {
        if *self.peek() != Tok::LParen {
            return self.error(&["`(`"]);
        }
        let calculus = match calculus {
            Some(c) => c,
            None => match self.rule_word() {
                Some((w, _)) if ScRule::from_keyword(&w).is_some() => Calculus::Sc,
                Some((w, _)) if NdRule::from_keyword(&w).is_some() => Calculus::Nd,
                Some((w, pos)) => {
                    return Err(ParseError::UnknownRule {
                        name: w,
                        line: pos.line,
                        column: pos.column,
                    })
                }
                None => {
                    self.bump();
                    return self.error(&["a rule name"]);
                }
            },
        };
        Ok(match calculus {
            Calculus::Nd => {
                let (d, labels) = self.nd()?;
                if let Some((label, (_, pos))) = labels.into_iter().next() {
                    return Err(ParseError::DanglingDischargeLabel {
                        label,
                        line: pos.line,
                        column: pos.column,
                    });
                }
                Derivation::Nd(d)
            }
            Calculus::Sc => Derivation::Sc(self.sc()?),
        })
    }

    /// Whether a derivation, rather than a parenthesized formula, starts here.
    fn at_premise(&self) -> bool {
        if *self.peek() != Tok::LParen {
            return false;
        }
        match self.peek_at(1) {
            Tok::Word(_) => true,
            Tok::Name(n) => {
                (NdRule::from_keyword(n).is_some() || ScRule::from_keyword(n).is_some())
                    && matches!(self.peek_at(2), Tok::Name(_) | Tok::Label(_))
            }
            _ => false,
        }
    }

    /// Number of arguments from here to the closing parenthesis.
    fn count_remaining(&self) -> usize {
        let mut count = 0;
        let mut joined = false;
        let mut depth = 0usize;
        for t in &self.toks[self.i..] {
            match &t.tok {
                Tok::Eof => break,
                Tok::RParen | Tok::RBracket | Tok::RBrace | Tok::RAngle if depth == 0 => break,
                Tok::RParen | Tok::RBracket | Tok::RBrace | Tok::RAngle => depth -= 1,
                Tok::Arrow | Tok::Wedge | Tok::Vee | Tok::Colon if depth == 0 => joined = true,
                Tok::LParen | Tok::LBracket | Tok::LBrace | Tok::LAngle => {
                    if depth == 0 && !std::mem::take(&mut joined) {
                        count += 1;
                    }
                    depth += 1;
                }
                _ if depth == 0 && !std::mem::take(&mut joined) => count += 1,
                _ => {}
            }
        }
        count
    }

    fn arity_error<T>(&self, rule: &str, pos: Pos, expected: usize, parsed: usize) -> PResult<T> {
        Err(ParseError::Arity {
            rule: rule.to_string(),
            expected,
            found: parsed + self.count_remaining(),
            line: pos.line,
            column: pos.column,
        })
    }

    fn args<D>(
        &mut self,
        rule: &str,
        pos: Pos,
        kinds: &[Kind],
        premise: &mut impl FnMut(&mut Self) -> PResult<D>,
    ) -> PResult<Vec<Arg<D>>> {
        let mut out = Vec::with_capacity(kinds.len());
        for (n, kind) in kinds.iter().enumerate() {
            if *self.peek() == Tok::RParen {
                return self.arity_error(rule, pos, kinds.len(), n);
            }
            let arg = match kind {
                Kind::Var => {
                    if self.at_premise() {
                        return self.arity_error(rule, pos, kinds.len(), n);
                    }
                    Arg::Var(self.variable()?)
                }
                Kind::Formula => {
                    if self.at_premise() {
                        return self.arity_error(rule, pos, kinds.len(), n);
                    }
                    Arg::Formula(self.formula()?)
                }
                Kind::Premise => {
                    if !self.at_premise() {
                        if *self.peek() == Tok::LParen {
                            // `(name ...` with a name that is not a rule
                            if let Some((w, p)) = self.rule_word() {
                                return Err(ParseError::UnknownRule {
                                    name: w,
                                    line: p.line,
                                    column: p.column,
                                });
                            }
                        }
                        return self.error(&["a derivation"]);
                    }
                    Arg::Premise(premise(self)?)
                }
                Kind::Discharge { typed } => match self.peek().clone() {
                    Tok::Label(l) => {
                        let p = self.bump().pos;
                        Arg::Discharge(Discharge::Label(l, p))
                    }
                    _ => {
                        if self.at_premise() {
                            return self.arity_error(rule, pos, kinds.len(), n);
                        }
                        let x = self.variable()?;
                        let ty = if *typed && *self.peek() == Tok::Colon {
                            self.bump();
                            Some(self.formula()?)
                        } else {
                            None
                        };
                        Arg::Discharge(Discharge::Named(x, ty))
                    }
                },
            };
            out.push(arg);
        }
        Ok(out)
    }

    fn close(&mut self, rule: &str, pos: Pos, expected: usize) -> PResult<()> {
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(());
        }
        if matches!(self.peek(), Tok::Eof) {
            return self.error(&["`)`"]);
        }
        self.arity_error(rule, pos, expected, expected)
    }

    fn open_rule(&mut self) -> PResult<(String, Pos)> {
        self.expect(Tok::LParen, "`(`")?;
        match self.peek().clone() {
            Tok::Name(n) | Tok::Word(n) => Ok((n, self.bump().pos)),
            _ => self.error(&["a rule name"]),
        }
    }

    fn nd(&mut self) -> PResult<(NdDerivation, Labels)> {
        let (name, pos) = self.open_rule()?;
        let rule = NdRule::from_keyword(&name).ok_or(ParseError::UnknownRule {
            name: name.clone(),
            line: pos.line,
            column: pos.column,
        })?;
        use Kind::*;
        let kinds: &[Kind] = match rule {
            NdRule::Hyp => &[Var, Formula],
            NdRule::ImpI => &[Discharge { typed: true }, Premise],
            NdRule::ImpE | NdRule::AndI => &[Premise, Premise],
            NdRule::AndE1 | NdRule::AndE2 => &[Premise],
            NdRule::OrI1 | NdRule::OrI2 | NdRule::AbsurdE => &[Formula, Premise],
            NdRule::OrE => &[
                Premise,
                Discharge { typed: false },
                Premise,
                Discharge { typed: false },
                Premise,
            ],
        };
        let mut args = self
            .args(&name, pos, kinds, &mut |p: &mut Self| p.nd())?
            .into_iter();

        let mut labels = Labels::new();
        if rule == NdRule::Hyp {
            if let Tok::Label(l) = self.peek().clone() {
                let lpos = self.bump().pos;
                labels.insert(l, (var_arg(args.as_slice(), 0), lpos));
            }
        }
        self.close(&name, pos, kinds.len())?;

        let mut next = || args.next().expect("arguments follow the schema");
        let d = match rule {
            NdRule::Hyp => {
                let (Arg::Var(var), Arg::Formula(formula)) = (next(), next()) else {
                    unreachable!()
                };
                NdDerivation::Hyp { var, formula }
            }
            NdRule::ImpI => {
                let (Arg::Discharge(dis), Arg::Premise((d, mut ls))) = (next(), next()) else {
                    unreachable!()
                };
                let (var, var_type) = discharge(dis, &mut ls)?;
                labels = ls;
                NdDerivation::ImpI {
                    var,
                    var_type,
                    premise: Box::new(d),
                }
            }
            NdRule::ImpE | NdRule::AndI => {
                let (Arg::Premise((a, la)), Arg::Premise((b, lb))) = (next(), next()) else {
                    unreachable!()
                };
                labels = merge(la, lb)?;
                if rule == NdRule::ImpE {
                    NdDerivation::imp_e(a, b)
                } else {
                    NdDerivation::and_i(a, b)
                }
            }
            NdRule::AndE1 | NdRule::AndE2 => {
                let Arg::Premise((a, la)) = next() else {
                    unreachable!()
                };
                labels = la;
                if rule == NdRule::AndE1 {
                    NdDerivation::and_e1(a)
                } else {
                    NdDerivation::and_e2(a)
                }
            }
            NdRule::OrI1 | NdRule::OrI2 | NdRule::AbsurdE => {
                let (Arg::Formula(f), Arg::Premise((a, la))) = (next(), next()) else {
                    unreachable!()
                };
                labels = la;
                let premise = Box::new(a);
                match rule {
                    NdRule::OrI1 => NdDerivation::OrI1 { other: f, premise },
                    NdRule::OrI2 => NdDerivation::OrI2 { other: f, premise },
                    _ => NdDerivation::AbsurdE { target: f, premise },
                }
            }
            NdRule::OrE => {
                let (
                    Arg::Premise((major, lm)),
                    Arg::Discharge(dl),
                    Arg::Premise((left, mut ll)),
                    Arg::Discharge(dr),
                    Arg::Premise((right, mut lr)),
                ) = (next(), next(), next(), next(), next())
                else {
                    unreachable!()
                };
                let (left_var, _) = discharge(dl, &mut ll)?;
                let (right_var, _) = discharge(dr, &mut lr)?;
                labels = merge(merge(lm, ll)?, lr)?;
                NdDerivation::OrE {
                    major: Box::new(major),
                    left_var,
                    left: Box::new(left),
                    right_var,
                    right: Box::new(right),
                }
            }
        };
        Ok((d, labels))
    }

    fn sc(&mut self) -> PResult<ScDerivation> {
        let (name, pos) = self.open_rule()?;
        let rule = ScRule::from_keyword(&name).ok_or(ParseError::UnknownRule {
            name: name.clone(),
            line: pos.line,
            column: pos.column,
        })?;
        use Kind::*;
        let kinds: &[Kind] = match rule {
            ScRule::Rf => &[Var, Formula],
            ScRule::AndR => &[Premise, Premise],
            ScRule::AndL => &[Var, Var, Var, Premise],
            ScRule::OrR1 | ScRule::OrR2 => &[Formula, Premise],
            ScRule::OrL => &[Var, Var, Var, Premise, Premise],
            ScRule::ImpR => &[Var, Premise],
            ScRule::ImpL => &[Var, Var, Premise, Premise],
            ScRule::AbsurdL => &[Var, Formula],
            ScRule::Weaken => &[Var, Formula, Premise],
            ScRule::Contract => &[Var, Var, Premise],
            ScRule::Cut => &[Var, Premise, Premise],
        };
        let args = self.args(&name, pos, kinds, &mut |p: &mut Self| p.sc())?;
        self.close(&name, pos, kinds.len())?;

        let mut vars = Vec::new();
        let mut formulas = Vec::new();
        let mut premises = Vec::new();
        for a in args {
            match a {
                Arg::Var(v) => vars.push(v),
                Arg::Formula(f) => formulas.push(f),
                Arg::Premise(d) => premises.push(Box::new(d)),
                Arg::Discharge(_) => unreachable!("no discharges in the sequent calculus"),
            }
        }
        let mut v = vars.into_iter();
        let mut f = formulas.into_iter();
        let mut d = premises.into_iter();
        let mut var = || v.next().expect("variable argument");
        let mut formula = || f.next().expect("formula argument");
        let mut premise = || d.next().expect("premise argument");
        Ok(match rule {
            ScRule::Rf => ScDerivation::Rf {
                var: var(),
                formula: formula(),
            },
            ScRule::AndR => ScDerivation::AndR(premise(), premise()),
            ScRule::AndL => ScDerivation::AndL {
                principal: var(),
                left: var(),
                right: var(),
                premise: premise(),
            },
            ScRule::OrR1 => ScDerivation::OrR1 {
                other: formula(),
                premise: premise(),
            },
            ScRule::OrR2 => ScDerivation::OrR2 {
                other: formula(),
                premise: premise(),
            },
            ScRule::OrL => ScDerivation::OrL {
                principal: var(),
                left_var: var(),
                right_var: var(),
                left: premise(),
                right: premise(),
            },
            ScRule::ImpR => ScDerivation::ImpR {
                var: var(),
                premise: premise(),
            },
            ScRule::ImpL => ScDerivation::ImpL {
                principal: var(),
                var: var(),
                arg: premise(),
                body: premise(),
            },
            ScRule::AbsurdL => ScDerivation::AbsurdL {
                var: var(),
                target: formula(),
            },
            ScRule::Weaken => ScDerivation::Weaken {
                var: var(),
                formula: formula(),
                premise: premise(),
            },
            ScRule::Contract => ScDerivation::Contract {
                kept: var(),
                merged: var(),
                premise: premise(),
            },
            ScRule::Cut => ScDerivation::Cut {
                var: var(),
                left: premise(),
                right: premise(),
            },
        })
    }
}

fn var_arg<D>(args: &[Arg<D>], i: usize) -> Var {
    match &args[i] {
        Arg::Var(v) => v.clone(),
        _ => unreachable!("hypothesis variable"),
    }
}

/// Resolves a discharge against the open labels of the premise and closes
/// the labels it discharges.
fn discharge(d: Discharge, open: &mut Labels) -> PResult<(Var, Option<Formula>)> {
    match d {
        Discharge::Named(x, ty) => {
            open.retain(|_, (v, _)| *v != x);
            Ok((x, ty))
        }
        Discharge::Label(l, pos) => match open.remove(&l) {
            Some((x, _)) => {
                open.retain(|_, (v, _)| *v != x);
                Ok((x, None))
            }
            None => Err(ParseError::DanglingDischargeLabel {
                label: l,
                line: pos.line,
                column: pos.column,
            }),
        },
    }
}

fn merge(mut a: Labels, b: Labels) -> PResult<Labels> {
    for (l, (x, pos)) in b {
        match a.get(&l) {
            Some((y, _)) if *y != x => {
                return Err(ParseError::LabelReuse {
                    label: l,
                    first: y.to_string(),
                    second: x.to_string(),
                    line: pos.line,
                    column: pos.column,
                })
            }
            Some(_) => {}
            None => {
                a.insert(l, (x, pos));
            }
        }
    }
    Ok(a)
}
