//! Recursive descent parser for the operator grammar.
//!
//! ```text
//! forest := ['-'] term (('+' | '-') term)*
//! term   := integer '*' factor ('*' factor)*
//!         | integer
//!         | factor ('*' factor)*
//! factor := 'P' '[' ident ']' '(' forest ')'
//!         | 'tau' '[' ident ']' | 'tauinv' '[' ident ']'
//!         | '1' | ident
//! ```
//!
//! The argument of `P[..](..)` must be a single term. A bare integer term `n`
//! is `n * 1`, so `0` denotes the empty forest.

use thiserror::Error;

use crate::forest::Forest;
use crate::label::{Atom, FuncName, KernelIndex, Label};
use crate::tree::{Branch, Tree};

/// Deepest accepted `P[..](..)` nesting.
pub const MAX_NESTING: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("only the literal 1 may appear as a factor, found {0}")]
    IntegerFactor(String),
    #[error("integer literal out of range")]
    IntegerOverflow,
    #[error("coefficient overflow")]
    CoefficientOverflow,
    #[error("the argument of P[..](..) must be a single term")]
    NestingNotSupported,
    #[error("P[..](..) nested deeper than {MAX_NESTING} levels")]
    TooDeep,
    #[error("input is not valid UTF-8")]
    InvalidUtf8,
}

pub fn parse(src: &str) -> Result<Forest, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let terms = p.forest(0)?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(ParseErrorKind::UnexpectedChar(c)));
    }
    let mut forest = Forest::new();
    for term in terms {
        forest
            .try_add_term(term.tree, term.coeff)
            .map_err(|_| p.error_at(term.start, ParseErrorKind::CoefficientOverflow))?;
    }
    Ok(forest)
}

/// Like [`parse`], for raw bytes. Invalid UTF-8 is reported at the first bad byte.
pub fn parse_bytes(src: &[u8]) -> Result<Forest, ParseError> {
    match std::str::from_utf8(src) {
        Ok(s) => parse(s),
        Err(e) => {
            let valid = std::str::from_utf8(&src[..e.valid_up_to()]).expect("valid prefix");
            let (line, column) = line_col(valid, valid.len());
            Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::InvalidUtf8,
            })
        }
    }
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[line_start..].chars().count() + 1)
}

struct Term {
    coeff: i64,
    tree: Tree,
    start: usize,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error_at(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        let (line, column) = line_col(self.src, offset);
        ParseError { line, column, kind }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        self.error_at(self.pos, kind)
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(c) => self.error(ParseErrorKind::UnexpectedChar(c)),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn peek_token(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_token() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else if self.peek().is_none() {
            Err(self.error(ParseErrorKind::UnexpectedEnd))
        } else {
            Err(self.error(ParseErrorKind::Expected(what)))
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn identifier(&mut self) -> Option<&'a str> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        Some(self.take_while(|c| c.is_ascii_alphanumeric() || c == '_'))
    }

    fn integer(&mut self) -> Result<(i64, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits
            .parse::<i64>()
            .map(|n| (n, digits))
            .map_err(|_| self.error_at(start, ParseErrorKind::IntegerOverflow))
    }

    fn bracketed_index(&mut self) -> Result<KernelIndex, ParseError> {
        self.expect('[', "'['")?;
        let start = self.pos;
        let name = self
            .identifier()
            .ok_or_else(|| self.error_at(start, ParseErrorKind::Expected("kernel index")))?;
        let index = KernelIndex::new(name).expect("scanned identifier is valid");
        self.expect(']', "']'")?;
        Ok(index)
    }

    fn forest(&mut self, depth: usize) -> Result<Vec<Term>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') { -1 } else { 1 };
        loop {
            let mut term = self.term(depth)?;
            term.coeff = term
                .coeff
                .checked_mul(sign)
                .ok_or_else(|| self.error_at(term.start, ParseErrorKind::CoefficientOverflow))?;
            terms.push(term);
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(terms);
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<Term, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut coeff = 1i64;
        let mut atoms = Vec::new();
        let mut children = Vec::new();

        let mut need_factor = true;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let (n, text) = self.integer()?;
            if self.eat('*') {
                coeff = n;
            } else if text == "1" {
                need_factor = false;
            } else {
                return Ok(Term {
                    coeff: n,
                    tree: Tree::one(),
                    start,
                });
            }
        }

        loop {
            if need_factor {
                self.factor(depth, &mut coeff, &mut atoms, &mut children, start)?;
            }
            if !self.eat('*') {
                break;
            }
            need_factor = true;
        }
        Ok(Term {
            coeff,
            tree: Tree::new(Label::from_atoms(atoms), children),
            start,
        })
    }

    fn factor(
        &mut self,
        depth: usize,
        coeff: &mut i64,
        atoms: &mut Vec<Atom>,
        children: &mut Vec<Branch>,
        term_start: usize,
    ) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let (_, text) = self.integer()?;
                if text != "1" {
                    return Err(
                        self.error_at(start, ParseErrorKind::IntegerFactor(text.to_string()))
                    );
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.identifier().expect("peeked a letter");
                let special =
                    matches!(name, "P" | "tau" | "tauinv") && self.peek_token() == Some('[');
                if !special {
                    atoms.push(Atom::Func(
                        FuncName::new(name).expect("scanned identifier is valid"),
                    ));
                    return Ok(());
                }
                let index = self.bracketed_index()?;
                match name {
                    "tau" => atoms.push(Atom::Twist(index)),
                    "tauinv" => atoms.push(Atom::TwistInv(index)),
                    _ => {
                        if depth >= MAX_NESTING {
                            return Err(self.error_at(start, ParseErrorKind::TooDeep));
                        }
                        self.expect('(', "'('")?;
                        let mut inner = self.forest(depth + 1)?;
                        if inner.len() != 1 {
                            return Err(self.error_at(start, ParseErrorKind::NestingNotSupported));
                        }
                        self.expect(')', "')'")?;
                        let inner = inner.pop().expect("one term");
                        *coeff = coeff.checked_mul(inner.coeff).ok_or_else(|| {
                            self.error_at(term_start, ParseErrorKind::CoefficientOverflow)
                        })?;
                        children.push(Branch::new(index, inner.tree));
                    }
                }
            }
            _ => return Err(self.unexpected()),
        }
        Ok(())
    }
}
