//! A small recursive-descent parser for integer-coefficient polynomial
//! expressions.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := INT | IDENT ['^' ['-'] INT] | '(' expr ')' ['^' INT]
//! ```
//!
//! Juxtaposition multiplies, so `kbar eta^3` and `4*Delta` are both valid.
//! Negative exponents are accepted on identifiers only; the caller decides
//! whether they make sense.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("negative exponent on `{0}` is not allowed here")]
    NegativeExponent(String),
}

/// A product of named factors with integer exponents, sorted by name.
pub type Factors = Vec<(String, i64)>;

/// An expanded polynomial: coefficient and factor list per term.
pub type Terms = Vec<(BigInt, Factors)>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ExprError> {
    let mut lx = Lexer {
        chars: text.char_indices().peekable(),
    };
    let mut out = Vec::new();
    let err = |col: usize, message: String| ExprError::Syntax {
        line,
        column: col0 + col + 1,
        message,
    };
    while let Some(&(i, ch)) = lx.chars.peek() {
        let col = text[..i].chars().count();
        match ch {
            c if c.is_whitespace() => {
                lx.chars.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&(_, d)) = lx.chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        lx.chars.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Int(s.parse().unwrap()), col));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = lx.chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        lx.chars.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), col));
            }
            _ => {
                let tok = match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => return Err(err(col, format!("unexpected character `{other}`"))),
                };
                lx.chars.next();
                out.push((tok, col));
            }
        }
    }
    Ok(out)
}

type Poly = BTreeMap<Factors, BigInt>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (fa, ca) in a {
        for (fb, cb) in b {
            let mut merged: BTreeMap<String, i64> = BTreeMap::new();
            for (n, e) in fa.iter().chain(fb) {
                *merged.entry(n.clone()).or_default() += e;
            }
            let key: Factors = merged.into_iter().filter(|(_, e)| *e != 0).collect();
            *out.entry(key).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_add(mut a: Poly, b: Poly, sign: i32) -> Poly {
    for (f, c) in b {
        let e = a.entry(f).or_insert_with(BigInt::zero);
        if sign < 0 {
            *e -= c;
        } else {
            *e += c;
        }
    }
    a.retain(|_, c| !c.is_zero());
    a
}

fn constant(c: BigInt) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert(Vec::new(), c);
    }
    p
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    col0: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn error(&self, message: impl Into<String>) -> ExprError {
        let col = self
            .toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col);
        ExprError::Syntax {
            line: self.line,
            column: self.col0 + col + 1,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Poly, ExprError> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = poly_mul(&acc, &constant(-BigInt::one()));
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = poly_add(acc, t, 1);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = poly_add(acc, t, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ExprError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = poly_mul(&acc, &f);
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = poly_mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self, allow_negative: bool) -> Result<Option<i64>, ExprError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            if !allow_negative {
                return Err(self.error("negative exponent not allowed on a parenthesized expression"));
            }
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let e: i64 = i64::try_from(&n).map_err(|_| self.error("exponent too large"))?;
                Ok(Some(if negative { -e } else { e }))
            }
            _ => Err(self.error("expected integer exponent")),
        }
    }

    fn factor(&mut self) -> Result<Poly, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(constant(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let e = self.exponent(true)?.unwrap_or(1);
                let mut p = Poly::new();
                let key = if e == 0 { Vec::new() } else { vec![(name, e)] };
                p.insert(key, BigInt::one());
                Ok(p)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                let e = self.exponent(false)?.unwrap_or(1);
                let mut acc = constant(BigInt::one());
                for _ in 0..e {
                    acc = poly_mul(&acc, &inner);
                }
                Ok(acc)
            }
            Some(_) => Err(self.error("expected a number, a symbol or `(`")),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

/// Parses a full expression, reporting positions relative to `line` and a
/// column offset.
pub fn parse_polynomial_at(text: &str, line: usize, col0: usize) -> Result<Terms, ExprError> {
    let toks = tokenize(text, line, col0)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        line,
        col0,
        end_col: text.chars().count(),
    };
    let poly = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(poly.into_iter().map(|(f, c)| (c, f)).collect())
}

pub fn parse_polynomial(text: &str) -> Result<Terms, ExprError> {
    parse_polynomial_at(text, 1, 0)
}
