//! Terms and statements of the implication-zroupoid language.
//!
//! The signature has one binary operation `->`, one constant `0`, and the
//! derived unary postfix `'` where `t'` abbreviates `t -> 0`. Statements are
//! identities `s = t` or quasi-identities `p1 & p2 => c`. The order sugar
//! `a <= b` expands to the identity `(a -> b')' = a` at parse time, so every
//! parsed statement is made of plain terms only.
//!
//! Grammar (postfix `'` binds tightest, `->` is right-associative):
//!
//! ```text
//! statement := identity | quasi ;
//! quasi     := identity { "&" identity } "=>" identity ;
//! identity  := term ("=" | "≈" | "<=") term ;
//! term      := factor { "->" term } ;
//! factor    := atom { "'" } ;
//! atom      := ident | "0" | "(" term ")" ;
//! ident     := [a-z][a-z0-9_]* ;
//! ```

use std::fmt;

use thiserror::Error;

/// A term over variables, the constant `0`, and the binary arrow.
///
/// There is deliberately no `Prime` node: `t'` is represented as
/// `Arrow(t, Zero)` so that structural equality coincides with equality of
/// the underlying zroupoid terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    Arrow(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        let name = name.into();
        debug_assert!(is_valid_ident(&name), "invalid variable name {name:?}");
        Term::Var(name)
    }

    pub fn arrow(lhs: Term, rhs: Term) -> Term {
        Term::Arrow(Box::new(lhs), Box::new(rhs))
    }

    /// `t'`, i.e. `t -> 0`.
    pub fn prime(t: Term) -> Term {
        Term::arrow(t, Term::Zero)
    }

    /// Free variables in first-occurrence (left-to-right) order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.iter().any(|w| w == v) {
                    out.push(v.clone());
                }
            }
            Term::Zero => {}
            Term::Arrow(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn is_prime_form(&self) -> bool {
        matches!(self, Term::Arrow(_, r) if **r == Term::Zero)
    }

    fn fmt_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Arrow(l, r) if !self.is_prime_form() => {
                l.fmt_factor(f)?;
                write!(f, " -> ")?;
                r.fmt_term(f)
            }
            _ => self.fmt_factor(f),
        }
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => write!(f, "0"),
            Term::Arrow(l, r) if **r == Term::Zero => {
                if l.is_prime_form() || matches!(**l, Term::Var(_) | Term::Zero) {
                    l.fmt_factor(f)?;
                } else {
                    write!(f, "(")?;
                    l.fmt_term(f)?;
                    write!(f, ")")?;
                }
                write!(f, "'")
            }
            Term::Arrow(..) => {
                write!(f, "(")?;
                self.fmt_term(f)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_term(f)
    }
}

/// An equation between two terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        Identity { lhs, rhs }
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.lhs.collect_vars(&mut out);
        self.rhs.collect_vars(&mut out);
        out
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// An identity or a quasi-identity (premises implying a conclusion).
///
/// All variables are universally quantified over the whole statement; the
/// conclusion may mention variables absent from the premises and vice versa.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Statement {
    Identity(Identity),
    Quasi {
        premises: Vec<Identity>,
        conclusion: Identity,
    },
}

impl Statement {
    /// Free variables across premises first, then conclusion, each in
    /// first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        match self {
            Statement::Identity(id) => {
                id.lhs.collect_vars(&mut out);
                id.rhs.collect_vars(&mut out);
            }
            Statement::Quasi {
                premises,
                conclusion,
            } => {
                for p in premises {
                    p.lhs.collect_vars(&mut out);
                    p.rhs.collect_vars(&mut out);
                }
                conclusion.lhs.collect_vars(&mut out);
                conclusion.rhs.collect_vars(&mut out);
            }
        }
        out
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Identity(id) => write!(f, "{id}"),
            Statement::Quasi {
                premises,
                conclusion,
            } => {
                for (i, p) in premises.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, " => {conclusion}")
            }
        }
    }
}

/// Parse failure, reporting the byte offset of the offending token and the
/// set of tokens that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: found {found}, expected {}", expected.join(" | "))]
pub struct SyntaxError {
    pub offset: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

pub fn is_valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    Arrow,
    Prime,
    LParen,
    RParen,
    Eq,
    Leq,
    Amp,
    Implies,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier {name:?}"),
            Tok::Zero => "\"0\"".into(),
            Tok::Arrow => "\"->\"".into(),
            Tok::Prime => "\"'\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Eq => "\"=\"".into(),
            Tok::Leq => "\"<=\"".into(),
            Tok::Amp => "\"&\"".into(),
            Tok::Implies => "\"=>\"".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(SyntaxError {
                        offset: i,
                        found: "\"-\"".into(),
                        expected: vec!["\"->\""],
                    });
                }
            }
            b'\'' => {
                toks.push((Tok::Prime, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            b'=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Implies, i));
                    i += 2;
                } else {
                    toks.push((Tok::Eq, i));
                    i += 1;
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push((Tok::Leq, i));
                    i += 2;
                } else {
                    return Err(SyntaxError {
                        offset: i,
                        found: "\"<\"".into(),
                        expected: vec!["\"<=\""],
                    });
                }
            }
            b'0' => {
                toks.push((Tok::Zero, i));
                i += 1;
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase()
                        || bytes[i].is_ascii_digit()
                        || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(input[start..i].to_string()), start));
            }
            _ => {
                // "≈" is the one non-ASCII token we accept.
                let rest = &input[i..];
                if let Some(c) = rest.chars().next() {
                    if c == '\u{2248}' {
                        toks.push((Tok::Eq, i));
                        i += c.len_utf8();
                        continue;
                    }
                    return Err(SyntaxError {
                        offset: i,
                        found: format!("{c:?}"),
                        expected: vec!["identifier", "\"0\"", "\"(\""],
                    });
                }
                unreachable!("loop bound guarantees a char");
            }
        }
    }
    toks.push((Tok::Eof, input.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: Vec<&'static str>) -> SyntaxError {
        SyntaxError {
            offset: self.offset(),
            found: self.peek().describe(),
            expected,
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.err(vec![expected]))
        }
    }

    fn atom(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::Var(name))
            }
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(t)
            }
            _ => Err(self.err(vec!["identifier", "\"0\"", "\"(\""])),
        }
    }

    fn factor(&mut self) -> Result<Term, SyntaxError> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Prime {
            self.bump();
            t = Term::prime(t);
        }
        Ok(t)
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let lhs = self.factor()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.term()?;
            Ok(Term::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn identity(&mut self) -> Result<Identity, SyntaxError> {
        let lhs = self.term()?;
        match self.peek() {
            Tok::Eq => {
                self.bump();
                let rhs = self.term()?;
                Ok(Identity::new(lhs, rhs))
            }
            Tok::Leq => {
                // a <= b  desugars to  (a -> b')' = a
                self.bump();
                let rhs = self.term()?;
                let meet = Term::prime(Term::arrow(lhs.clone(), Term::prime(rhs)));
                Ok(Identity::new(meet, lhs))
            }
            _ => Err(self.err(vec!["\"=\"", "\"<=\"", "\"->\"", "\"'\""])),
        }
    }

    fn statement(&mut self) -> Result<Statement, SyntaxError> {
        let mut ids = vec![self.identity()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            ids.push(self.identity()?);
        }
        if *self.peek() == Tok::Implies {
            self.bump();
            let conclusion = self.identity()?;
            self.expect(Tok::Eof, "end of input")?;
            Ok(Statement::Quasi {
                premises: ids,
                conclusion,
            })
        } else if ids.len() == 1 {
            self.expect(Tok::Eof, "end of input")?;
            Ok(Statement::Identity(ids.pop().expect("one identity")))
        } else {
            Err(self.err(vec!["\"=>\"", "\"&\""]))
        }
    }
}

/// Parse a single term.
pub fn parse_term(input: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser {
        toks: lex(input)?,
        pos: 0,
    };
    let t = p.term()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(t)
}

/// Parse an identity or quasi-identity, expanding `<=` sugar.
pub fn parse_statement(input: &str) -> Result<Statement, SyntaxError> {
    let mut p = Parser {
        toks: lex(input)?,
        pos: 0,
    };
    p.statement()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Term {
        Term::var(name)
    }

    #[test]
    fn arrow_is_right_associative() {
        assert_eq!(
            parse_term("x -> y -> z").unwrap(),
            Term::arrow(v("x"), Term::arrow(v("y"), v("z")))
        );
        assert_eq!(
            parse_term("(x -> y) -> z").unwrap(),
            Term::arrow(Term::arrow(v("x"), v("y")), v("z"))
        );
    }

    #[test]
    fn prime_desugars_to_arrow_zero() {
        assert_eq!(
            parse_term("x''").unwrap(),
            Term::prime(Term::prime(v("x")))
        );
        assert_eq!(
            parse_term("x'").unwrap(),
            Term::arrow(v("x"), Term::Zero)
        );
    }

    #[test]
    fn parses_defining_identity_rhs() {
        // ((z' -> x) -> (y -> z)')'
        let expected = Term::prime(Term::arrow(
            Term::arrow(Term::prime(v("z")), v("x")),
            Term::prime(Term::arrow(v("y"), v("z"))),
        ));
        assert_eq!(parse_term("((z' -> x) -> (y -> z)')'").unwrap(), expected);
    }

    #[test]
    fn leq_sugar_expands() {
        let st = parse_statement("x <= y").unwrap();
        let expected = Statement::Identity(Identity::new(
            Term::prime(Term::arrow(v("x"), Term::prime(v("y")))),
            v("x"),
        ));
        assert_eq!(st, expected);
        assert_eq!(st, parse_statement("(x -> y')' = x").unwrap());
    }

    #[test]
    fn quasi_identity_with_two_premises() {
        let st = parse_statement("0 <= x & 0 <= y => 0 <= x -> y").unwrap();
        match st {
            Statement::Quasi {
                premises,
                conclusion,
            } => {
                assert_eq!(premises.len(), 2);
                let want = Identity::new(
                    Term::prime(Term::arrow(
                        Term::Zero,
                        Term::prime(Term::arrow(v("x"), v("y"))),
                    )),
                    Term::Zero,
                );
                assert_eq!(conclusion, want);
            }
            other => panic!("expected quasi-identity, got {other:?}"),
        }
    }

    #[test]
    fn trivial_identity() {
        assert_eq!(
            parse_statement("x = x").unwrap(),
            Statement::Identity(Identity::new(v("x"), v("x")))
        );
        assert_eq!(
            parse_statement("x ≈ x").unwrap(),
            parse_statement("x = x").unwrap()
        );
    }

    #[test]
    fn printing_uses_prime_form_and_minimal_parens() {
        assert_eq!(Term::prime(v("x")).to_string(), "x'");
        assert_eq!(
            Term::arrow(Term::arrow(v("x"), v("y")), v("z")).to_string(),
            "(x -> y) -> z"
        );
        let lhs = parse_term("(x -> y) -> z").unwrap();
        let rhs = parse_term("((z' -> x) -> (y -> z)')'").unwrap();
        assert_eq!(
            Statement::Identity(Identity::new(lhs, rhs)).to_string(),
            "(x -> y) -> z = ((z' -> x) -> (y -> z)')'"
        );
    }

    #[test]
    fn free_vars_first_occurrence_order() {
        assert_eq!(
            parse_term("(x -> y) -> z").unwrap().free_vars(),
            vec!["x", "y", "z"]
        );
        assert!(parse_term("0'").unwrap().free_vars().is_empty());
        assert_eq!(
            parse_term("y -> x -> y").unwrap().free_vars(),
            vec!["y", "x"]
        );
    }

    #[test]
    fn syntax_error_reports_offset_and_expectation() {
        let err = parse_term("x -> ").unwrap_err();
        assert_eq!(err.offset, 5);
        assert!(err.expected.contains(&"identifier"));

        let err = parse_term("x -> 1").unwrap_err();
        assert_eq!(err.offset, 5);

        let err = parse_statement("x = y & y = z").unwrap_err();
        assert!(err.expected.contains(&"\"=>\""));
    }

    #[test]
    fn zero_is_reserved_and_idents_are_lowercase() {
        assert!(parse_term("0abc").is_err());
        assert!(parse_term("X").is_err());
        assert_eq!(parse_term("a0_b").unwrap(), v("a0_b"));
    }

    #[test]
    fn no_prime_node_survives_nested_groups() {
        // (x -> y)'' keeps parenthesised arrow under two primes
        let t = parse_term("(x -> y)''").unwrap();
        assert_eq!(
            t,
            Term::prime(Term::prime(Term::arrow(v("x"), v("y"))))
        );
        assert_eq!(t.to_string(), "(x -> y)''");
        assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }
}
