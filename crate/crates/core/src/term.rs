//! Terms over `{∨, ∧, ∼, ¬, *, ◊, □, 0, 1, c}`, equational laws, and their
//! exhaustive evaluation over a finite algebra.
//!
//! Laws are written in a small text syntax:
//!
//! ```text
//! ~(x | y) = ~x & ~y                    identity
//! x & ~x <= y | ~y                      inequality, read as (x & ~x) & (y | ~y) = x & ~x
//! !(x & !x) = !(x & ~x) = 1             chain, one equation per link
//! <>x = x, <>y = y, <>(x & y) = 0 => x <= ~y
//! ```
//!
//! Operators: `|` join, `&` meet, `~` knot, `!` neg, `*` pseudocomplement,
//! `<>` diamond, `[]` box; constants `0`, `1`, `c`. The Unicode forms
//! `∨ ∧ ∼ ¬ ◊ □ ≤ ⟹` are accepted as well. Any other lowercase identifier is
//! a variable.

use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, UnaryOp};
use crate::lattice::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Zero,
    One,
    Center,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Const(Constant),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Unary(UnaryOp, Box<Term>),
}

impl Term {
    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn unary(op: UnaryOp, t: Term) -> Term {
        Term::Unary(op, Box::new(t))
    }

    /// Replaces `◊t` by `∼¬t` and `□t` by `¬∼t` throughout.
    pub fn expand_modal(&self) -> Term {
        match self {
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::Join(a, b) => Term::join(a.expand_modal(), b.expand_modal()),
            Term::Meet(a, b) => Term::meet(a.expand_modal(), b.expand_modal()),
            Term::Unary(UnaryOp::Diamond, t) => {
                Term::unary(UnaryOp::Knot, Term::unary(UnaryOp::Neg, t.expand_modal()))
            }
            Term::Unary(UnaryOp::Box, t) => Term::unary(UnaryOp::Neg, Term::unary(UnaryOp::Knot, t.expand_modal())),
            Term::Unary(op, t) => Term::unary(*op, t.expand_modal()),
        }
    }

    /// Primitive operations the term needs, after modal expansion.
    pub fn operations(&self, out: &mut Requirements) {
        match self {
            Term::Var(_) => {}
            Term::Const(Constant::Center) => out.center = true,
            Term::Const(_) => {}
            Term::Join(a, b) | Term::Meet(a, b) => {
                a.operations(out);
                b.operations(out);
            }
            Term::Unary(op, t) => {
                match op {
                    UnaryOp::Knot => out.knot = true,
                    UnaryOp::Neg => out.neg = true,
                    UnaryOp::Star => out.star = true,
                    UnaryOp::Diamond | UnaryOp::Box => {
                        out.knot = true;
                        out.neg = true;
                    }
                }
                t.operations(out);
            }
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(v) => Some(*v),
            Term::Const(_) => None,
            Term::Join(a, b) | Term::Meet(a, b) => a.max_var().max(b.max_var()),
            Term::Unary(_, t) => t.max_var(),
        }
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> TermDisplay<'a> {
        TermDisplay { term: self, vars }
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    vars: &'a [String],
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Term, vars: &[String], f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
            match t {
                Term::Var(v) => match vars.get(*v) {
                    Some(name) => f.write_str(name),
                    None => write!(f, "?{v}"),
                },
                Term::Const(Constant::Zero) => f.write_str("0"),
                Term::Const(Constant::One) => f.write_str("1"),
                Term::Const(Constant::Center) => f.write_str("c"),
                Term::Join(a, b) => {
                    if parent > 1 {
                        f.write_str("(")?;
                    }
                    go(a, vars, f, 1)?;
                    f.write_str(" | ")?;
                    go(b, vars, f, 1)?;
                    if parent > 1 {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
                Term::Meet(a, b) => {
                    if parent > 2 {
                        f.write_str("(")?;
                    }
                    go(a, vars, f, 2)?;
                    f.write_str(" & ")?;
                    go(b, vars, f, 2)?;
                    if parent > 2 {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
                Term::Unary(op, t) => {
                    f.write_str(op.symbol())?;
                    go(t, vars, f, 3)
                }
            }
        }
        go(self.term, self.vars, f, 0)
    }
}

/// Which primitive symbols a term or law depends on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Requirements {
    pub knot: bool,
    pub neg: bool,
    pub star: bool,
    pub center: bool,
}

impl Requirements {
    pub fn union(self, o: Requirements) -> Requirements {
        Requirements {
            knot: self.knot || o.knot,
            neg: self.neg || o.neg,
            star: self.star || o.star,
            center: self.center || o.center,
        }
    }

    /// Short human-readable form such as `~ ! c`.
    pub fn describe(&self) -> String {
        let mut parts = vec!["| &"];
        if self.knot {
            parts.push("~");
        }
        if self.neg {
            parts.push("!");
        }
        if self.star {
            parts.push("*");
        }
        if self.center {
            parts.push("c");
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("variable #{0} is not bound by the assignment")]
    UnboundVariable(usize),
}

/// Operation tables resolved once per algebra so that the inner scan does not
/// repeat lookups.
struct Tables<'a> {
    alg: &'a Algebra,
    knot: Option<&'a [Elem]>,
    neg: Option<&'a [Elem]>,
    star: Result<&'a [Elem], AlgebraError>,
    center: Option<Elem>,
}

impl<'a> Tables<'a> {
    fn new(alg: &'a Algebra) -> Self {
        Tables {
            alg,
            knot: alg.knot_table(),
            neg: alg.neg_table(),
            star: alg.table(UnaryOp::Star),
            center: alg.center(),
        }
    }

    fn op(&self, op: UnaryOp) -> Result<&'a [Elem], AlgebraError> {
        match op {
            UnaryOp::Knot => self.knot.ok_or(AlgebraError::MissingOperation(op)),
            UnaryOp::Neg => self.neg.ok_or(AlgebraError::MissingOperation(op)),
            UnaryOp::Star => self.star.clone(),
            UnaryOp::Diamond | UnaryOp::Box => unreachable!("modal operators are expanded before lookup"),
        }
    }

    fn eval(&self, t: &Term, env: &[Elem]) -> Result<Elem, EvalError> {
        Ok(match t {
            Term::Var(v) => *env.get(*v).ok_or(EvalError::UnboundVariable(*v))?,
            Term::Const(Constant::Zero) => self.alg.bottom(),
            Term::Const(Constant::One) => self.alg.top(),
            Term::Const(Constant::Center) => self.center.ok_or(AlgebraError::MissingCenter)?,
            Term::Join(a, b) => self.alg.join(self.eval(a, env)?, self.eval(b, env)?),
            Term::Meet(a, b) => self.alg.meet(self.eval(a, env)?, self.eval(b, env)?),
            Term::Unary(UnaryOp::Diamond, s) => {
                let v = self.eval(s, env)?;
                self.op(UnaryOp::Knot)?[self.op(UnaryOp::Neg)?[v]]
            }
            Term::Unary(UnaryOp::Box, s) => {
                let v = self.eval(s, env)?;
                self.op(UnaryOp::Neg)?[self.op(UnaryOp::Knot)?[v]]
            }
            Term::Unary(op, s) => {
                let v = self.eval(s, env)?;
                self.op(*op)?[v]
            }
        })
    }
}

/// Evaluates `term` bottom-up under `assignment` (variable index to element).
pub fn evaluate(term: &Term, algebra: &Algebra, assignment: &[Elem]) -> Result<Elem, EvalError> {
    Tables::new(algebra).eval(term, assignment)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

/// A universally quantified law: whenever every hypothesis holds, every
/// conclusion holds. With no hypotheses it is a plain identity (a conjunction
/// of equations); with hypotheses it is a quasi-identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub variables: Vec<String>,
    pub hypotheses: Vec<Equation>,
    pub conclusions: Vec<Equation>,
}

/// Quasi-identities share the representation; the distinction is whether
/// `hypotheses` is empty.
pub type QuasiIdentity = Identity;

/// Result of an exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// First failing assignment in declaration-major order.
    pub counterexample: Option<Vec<Elem>>,
}

impl Identity {
    /// Parses a law from the text syntax described at module level.
    pub fn parse(name: &str, text: &str) -> Result<Identity, TermParseError> {
        let mut p = Parser::new(text)?;
        let mut first = p.relation_list()?;
        let (hypotheses, conclusions) = if p.eat(Tok::Implies) {
            let concl = p.relation_list()?;
            (std::mem::take(&mut first), concl)
        } else {
            (Vec::new(), first)
        };
        p.expect_end()?;
        Ok(Identity { name: name.to_string(), variables: p.vars, hypotheses, conclusions })
    }

    pub fn is_quasi(&self) -> bool {
        !self.hypotheses.is_empty()
    }

    pub fn requirements(&self) -> Requirements {
        let mut r = Requirements::default();
        for eq in self.hypotheses.iter().chain(&self.conclusions) {
            eq.lhs.operations(&mut r);
            eq.rhs.operations(&mut r);
        }
        r
    }

    /// `x=b, y=c` style rendering of an assignment.
    pub fn render_assignment(&self, alg: &Algebra, assignment: &[Elem]) -> String {
        self.variables
            .iter()
            .zip(assignment)
            .map(|(v, &e)| format!("{v}={}", alg.element_name(e)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn bindings(&self, alg: &Algebra, assignment: &[Elem]) -> Vec<(String, String)> {
        self.variables.iter().zip(assignment).map(|(v, &e)| (v.clone(), alg.element_name(e).to_string())).collect()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs = |eqs: &[Equation]| {
            eqs.iter()
                .map(|e| format!("{} = {}", e.lhs.display(&self.variables), e.rhs.display(&self.variables)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        if self.is_quasi() {
            write!(f, "{} => {}", eqs(&self.hypotheses), eqs(&self.conclusions))
        } else {
            f.write_str(&eqs(&self.conclusions))
        }
    }
}

/// Checks a hypothesis-free law under all `|A|^k` assignments.
pub fn check_identity(id: &Identity, algebra: &Algebra) -> Result<Verdict, EvalError> {
    scan(id, algebra)
}

/// Checks a law with hypotheses; only assignments satisfying every
/// hypothesis are tested against the conclusions.
pub fn check_quasi_identity(qi: &QuasiIdentity, algebra: &Algebra) -> Result<Verdict, EvalError> {
    scan(qi, algebra)
}

fn scan(id: &Identity, algebra: &Algebra) -> Result<Verdict, EvalError> {
    let k = id.variables.len();
    let n = algebra.len();
    let tables = Tables::new(algebra);
    let mut env = vec![0; k];
    loop {
        let mut applicable = true;
        for h in &id.hypotheses {
            if tables.eval(&h.lhs, &env)? != tables.eval(&h.rhs, &env)? {
                applicable = false;
                break;
            }
        }
        if applicable {
            for c in &id.conclusions {
                if tables.eval(&c.lhs, &env)? != tables.eval(&c.rhs, &env)? {
                    return Ok(Verdict { holds: false, counterexample: Some(env) });
                }
            }
        }
        // odometer: the last declared variable moves fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(Verdict { holds: true, counterexample: None });
            }
            i -= 1;
            env[i] += 1;
            if env[i] < n {
                break;
            }
            env[i] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("term syntax error at column {column}: {message}")]
pub struct TermParseError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Center,
    Join,
    Meet,
    Unary(UnaryOp),
    LParen,
    RParen,
    Eq,
    Leq,
    Comma,
    Implies,
    End,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: Vec<String>,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, TermParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let (tok, width) = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '|' | '∨' => (Tok::Join, 1),
            '&' | '∧' => (Tok::Meet, 1),
            '~' | '∼' => (Tok::Unary(UnaryOp::Knot), 1),
            '!' | '¬' => (Tok::Unary(UnaryOp::Neg), 1),
            '*' => (Tok::Unary(UnaryOp::Star), 1),
            '◊' => (Tok::Unary(UnaryOp::Diamond), 1),
            '□' => (Tok::Unary(UnaryOp::Box), 1),
            '<' if next == Some('>') => (Tok::Unary(UnaryOp::Diamond), 2),
            '<' if next == Some('=') => (Tok::Leq, 2),
            '≤' => (Tok::Leq, 1),
            '[' if next == Some(']') => (Tok::Unary(UnaryOp::Box), 2),
            '=' if next == Some('>') => (Tok::Implies, 2),
            '⟹' => (Tok::Implies, 1),
            '=' => (Tok::Eq, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '0' => (Tok::Zero, 1),
            '1' => (Tok::One, 1),
            _ if c.is_ascii_lowercase() => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = if word == "c" { Tok::Center } else { Tok::Ident(word) };
                (tok, j - i)
            }
            _ => return Err(TermParseError { column: col, message: format!("unexpected character `{c}`") }),
        };
        out.push((tok, col));
        i += width;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

impl Parser {
    fn new(text: &str) -> Result<Self, TermParseError> {
        Ok(Parser { toks: tokenize(text)?, pos: 0, vars: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn eat(&mut self, t: Tok) -> bool {
        if *self.peek() == t {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, TermParseError> {
        Err(TermParseError { column: self.column(), message: message.into() })
    }

    fn expect_end(&self) -> Result<(), TermParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error(format!("unexpected {:?}", self.peek()))
        }
    }

    fn relation_list(&mut self) -> Result<Vec<Equation>, TermParseError> {
        let mut eqs = self.relation()?;
        while self.eat(Tok::Comma) {
            eqs.extend(self.relation()?);
        }
        Ok(eqs)
    }

    fn relation(&mut self) -> Result<Vec<Equation>, TermParseError> {
        let mut left = self.term()?;
        let mut eqs = Vec::new();
        loop {
            let leq = if self.eat(Tok::Eq) {
                false
            } else if self.eat(Tok::Leq) {
                true
            } else {
                break;
            };
            let right = self.term()?;
            if leq {
                eqs.push(Equation { lhs: Term::meet(left.clone(), right.clone()), rhs: left });
            } else {
                eqs.push(Equation { lhs: left, rhs: right.clone() });
            }
            left = right;
        }
        if eqs.is_empty() {
            return self.error("expected `=` or `<=`");
        }
        Ok(eqs)
    }

    fn term(&mut self) -> Result<Term, TermParseError> {
        let mut t = self.meet_term()?;
        while self.eat(Tok::Join) {
            t = Term::join(t, self.meet_term()?);
        }
        Ok(t)
    }

    fn meet_term(&mut self) -> Result<Term, TermParseError> {
        let mut t = self.unary()?;
        while self.eat(Tok::Meet) {
            t = Term::meet(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term, TermParseError> {
        if let Tok::Unary(op) = *self.peek() {
            self.pos += 1;
            return Ok(Term::unary(op, self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term, TermParseError> {
        let tok = self.peek().clone();
        let t = match tok {
            Tok::Zero => Term::Const(Constant::Zero),
            Tok::One => Term::Const(Constant::One),
            Tok::Center => Term::Const(Constant::Center),
            Tok::Ident(name) => {
                let v = match self.vars.iter().position(|n| *n == name) {
                    Some(v) => v,
                    None => {
                        self.vars.push(name);
                        self.vars.len() - 1
                    }
                };
                Term::Var(v)
            }
            Tok::LParen => {
                self.pos += 1;
                let t = self.term()?;
                if !self.eat(Tok::RParen) {
                    return self.error("expected `)`");
                }
                return Ok(t);
            }
            _ => return self.error(format!("expected a term, found {tok:?}")),
        };
        self.pos += 1;
        Ok(t)
    }
}

/// Parses a single term; variables are numbered in order of appearance.
pub fn parse_term(text: &str) -> Result<(Term, Vec<String>), TermParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.expect_end()?;
    debug_assert!(t.max_var().is_none_or(|v| v < p.vars.len()));
    Ok((t, p.vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn law(text: &str) -> Identity {
        Identity::parse("t", text).unwrap()
    }

    #[test]
    fn parses_chains_and_inequalities() {
        let id = law("!(x & ~x) = !(x & !x) = 1");
        assert_eq!(id.variables, vec!["x"]);
        assert_eq!(id.conclusions.len(), 2);
        let q = law("<>x = x, <>y = y, <>(x & y) = 0 => x <= ~y");
        assert_eq!(q.hypotheses.len(), 3);
        assert_eq!(q.conclusions.len(), 1);
        assert_eq!(q.variables, vec!["x", "y"]);
        let uni = law("∼(x ∨ y) = ∼x ∧ ∼y");
        assert_eq!(uni, law("~(x | y) = ~x & ~y"));
    }

    #[test]
    fn parse_errors_report_columns() {
        let e = Identity::parse("t", "x = (y").unwrap_err();
        assert_eq!(e.column, 7);
        let e = Identity::parse("t", "x + y = y").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(Identity::parse("t", "x").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["x & (y | z) = x & y | x & z", "~<>x = []~x", "*x | **x = 1", "x <= y => !y <= !x"] {
            let id = law(text);
            let again = law(&id.to_string());
            assert_eq!(id.conclusions, again.conclusions, "{text}");
            assert_eq!(id.hypotheses, again.hypotheses, "{text}");
        }
    }

    #[test]
    fn evaluate_diamond_on_example_3_4() {
        let t = fixtures::example_3_4();
        let (term, _) = parse_term("<>x").unwrap();
        let a = t.index_of("a").unwrap();
        assert_eq!(evaluate(&term, &t, &[a]).unwrap(), t.index_of("0").unwrap());
    }

    #[test]
    fn evaluate_join_with_zero_is_identity() {
        let t = fixtures::example_2_3();
        let (term, _) = parse_term("x | 0").unwrap();
        for e in 0..t.len() {
            assert_eq!(evaluate(&term, &t, &[e]).unwrap(), e);
        }
    }

    #[test]
    fn evaluate_nested_negations_on_example_2_3() {
        let t = fixtures::example_2_3();
        let (term, vars) = parse_term("!(x & !y)").unwrap();
        assert_eq!(vars, vec!["x", "y"]);
        let (b, c) = (t.index_of("b").unwrap(), t.index_of("c").unwrap());
        // ¬c = b, b ∧ b = b, ¬b = c
        assert_eq!(evaluate(&term, &t, &[b, c]).unwrap(), c);
    }

    #[test]
    fn evaluation_errors() {
        let b = fixtures::boolean2();
        let (term, _) = parse_term("~x").unwrap();
        assert_eq!(
            evaluate(&term, &b, &[0]).unwrap_err(),
            EvalError::Algebra(AlgebraError::MissingOperation(UnaryOp::Knot))
        );
        let (term, _) = parse_term("x | y").unwrap();
        assert_eq!(evaluate(&term, &b, &[0]).unwrap_err(), EvalError::UnboundVariable(1));
        let (term, _) = parse_term("c").unwrap();
        assert_eq!(evaluate(&term, &b, &[]).unwrap_err(), EvalError::Algebra(AlgebraError::MissingCenter));
    }

    #[test]
    fn check_identity_verdicts() {
        let t = fixtures::example_2_3();
        assert!(check_identity(&law("~~x = x"), &t).unwrap().holds);
        assert!(check_identity(&law("x = x"), &t).unwrap().holds);
        let v = check_identity(&law("!x | !!x = 1"), &t).unwrap();
        assert!(!v.holds);
        let cx = v.counterexample.unwrap();
        assert_eq!(cx, vec![t.index_of("b").unwrap()]);
        assert_eq!(law("!x | !!x = 1").render_assignment(&t, &cx), "x=b");
    }

    #[test]
    fn quasi_identities() {
        let t3 = fixtures::example_3_4();
        let moisil = law("[]x = []y, <>x = <>y => x = y");
        assert!(check_quasi_identity(&moisil, &t3).unwrap().holds);
        let t = fixtures::example_2_3();
        assert!(check_quasi_identity(&law("<>(x & y) = 0 => <>x <= <>!y"), &t).unwrap().holds);
        assert!(check_quasi_identity(&law("<>x <= <>!y => <>(x & y) = 0"), &t).unwrap().holds);
        // a false hypothesis makes the law vacuous
        assert!(check_quasi_identity(&law("0 = 1 => x = y"), &t).unwrap().holds);
    }

    #[test]
    fn counterexample_is_first_in_declaration_order() {
        let t = fixtures::example_3_3();
        // fails for every pair with x != y; first is (0, c)
        let v = check_identity(&law("x = y"), &t).unwrap();
        assert_eq!(v.counterexample, Some(vec![0, 1]));
    }

    #[test]
    fn modal_expansion_matches_tables() {
        let t = fixtures::example_3_4();
        let (term, _) = parse_term("[]<>(x | ~y)").unwrap();
        let expanded = term.expand_modal();
        for x in 0..t.len() {
            for y in 0..t.len() {
                let direct = t.boxed(t.diamond(t.join(x, t.knot(y))));
                assert_eq!(evaluate(&term, &t, &[x, y]).unwrap(), direct);
                assert_eq!(evaluate(&expanded, &t, &[x, y]).unwrap(), direct);
            }
        }
    }
}
