//! Closed-form expressions in one real variable.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ['^' ['-'] integer]
//! primary := number | 'x' | 't' | ('sin' | 'cos' | 'exp') '(' expr ')' | '(' expr ')'
//! ```
//!
//! `x` and `t` both name the single variable, so kernel factors can be
//! written in whichever letter reads naturally.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScalarExpr {
    Const(f64),
    Var,
    Neg(Box<ScalarExpr>),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
    Pow(Box<ScalarExpr>, i32),
    Call(Func, Box<ScalarExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ScalarParseError {
    pub column: usize,
    pub message: String,
}

const MAX_DEPTH: usize = 200;

impl ScalarExpr {
    pub fn constant(c: f64) -> Self {
        ScalarExpr::Const(c)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ScalarExpr::Const(c) => *c,
            ScalarExpr::Var => x,
            ScalarExpr::Neg(a) => -a.eval(x),
            ScalarExpr::Add(a, b) => a.eval(x) + b.eval(x),
            ScalarExpr::Sub(a, b) => a.eval(x) - b.eval(x),
            ScalarExpr::Mul(a, b) => a.eval(x) * b.eval(x),
            ScalarExpr::Div(a, b) => a.eval(x) / b.eval(x),
            ScalarExpr::Pow(a, n) => a.eval(x).powi(*n),
            ScalarExpr::Call(Func::Sin, a) => a.eval(x).sin(),
            ScalarExpr::Call(Func::Cos, a) => a.eval(x).cos(),
            ScalarExpr::Call(Func::Exp, a) => a.eval(x).exp(),
        }
    }
}

impl FromStr for ScalarExpr {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            chars: s.chars().collect(),
            pos: 0,
            depth: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
        }
        Ok(e)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ScalarParseError {
        ScalarParseError {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn enter(&mut self) -> Result<(), ScalarParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(self.error("expression nested too deeply"))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr, ScalarParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = ScalarExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = ScalarExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ScalarExpr, ScalarParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = ScalarExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = ScalarExpr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarExpr, ScalarParseError> {
        if self.eat('-') {
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(ScalarExpr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarExpr, ScalarParseError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let n: i32 = digits.parse().map_err(|_| ScalarParseError {
            column: start + 1,
            message: "expected an integer exponent".into(),
        })?;
        Ok(ScalarExpr::Pow(
            Box::new(base),
            if negative { -n } else { n },
        ))
    }

    fn number(&mut self) -> Result<ScalarExpr, ScalarParseError> {
        let start = self.pos;
        let digit = |p: &Self| p.chars.get(p.pos).is_some_and(|c| c.is_ascii_digit());
        while digit(self) {
            self.pos += 1;
        }
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            while digit(self) {
                self.pos += 1;
            }
        }
        if matches!(self.chars.get(self.pos), Some('e' | 'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.chars.get(self.pos), Some('+' | '-')) {
                self.pos += 1;
            }
            if digit(self) {
                while digit(self) {
                    self.pos += 1;
                }
            } else {
                self.pos = mark;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<f64>()
            .map(ScalarExpr::Const)
            .map_err(|_| ScalarParseError {
                column: start + 1,
                message: format!("bad number {text:?}"),
            })
    }

    fn primary(&mut self) -> Result<ScalarExpr, ScalarParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric())
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let func = match name.as_str() {
                    "x" | "t" => return Ok(ScalarExpr::Var),
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "exp" => Func::Exp,
                    _ => {
                        return Err(ScalarParseError {
                            column: start + 1,
                            message: format!("unknown name {name:?}"),
                        })
                    }
                };
                if !self.eat('(') {
                    return Err(self.error("expected '(' after function name"));
                }
                let arg = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(ScalarExpr::Call(func, Box::new(arg)))
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarExpr::Const(c) if *c < 0.0 => write!(f, "({c:?})"),
            ScalarExpr::Const(c) => write!(f, "{c:?}"),
            ScalarExpr::Var => f.write_str("x"),
            ScalarExpr::Neg(a) => write!(f, "(-{a})"),
            ScalarExpr::Add(a, b) => write!(f, "({a} + {b})"),
            ScalarExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            ScalarExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            ScalarExpr::Div(a, b) => write!(f, "({a} / {b})"),
            ScalarExpr::Pow(a, n) => write!(f, "({a}^{n})"),
            ScalarExpr::Call(func, a) => {
                let name = match func {
                    Func::Sin => "sin",
                    Func::Cos => "cos",
                    Func::Exp => "exp",
                };
                write!(f, "{name}({a})")
            }
        }
    }
}
