//! Parser for polynomial expressions in the divisor classes `H`, `E` and `H'`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := 'H' | 'E' | "H'" | integer | '(' expr ')'
//! ```
//!
//! A factor written directly after another one multiplies it, so `3H-E`
//! means `3*H - E`.

use std::fmt;

use num_bigint::BigInt;
use quadbir_core::intersection::{DivisorClass, DivisorPolynomial, Monomial};

/// Exponents above this are rejected to keep expansion bounded.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    H,
    E,
    HPrime,
    Int(BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    H,
    HPrime,
    E,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::H => write!(f, "H"),
            Tok::HPrime => write!(f, "H'"),
            Tok::E => write!(f, "E"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(input[start..i].parse().expect("ascii digits"))));
                continue;
            }
            b'H' => {
                if bytes.get(i + 1) == Some(&b'\'') {
                    i += 1;
                    Tok::HPrime
                } else {
                    Tok::H
                }
            }
            b'E' => Tok::E,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(ParseError { position: i, message: format!("unexpected character `{ch}`") });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.offset(), message: message.into() }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::Int(_) | Tok::H | Tok::HPrime | Tok::E | Tok::LParen) => {}
                _ => return Ok(lhs),
            }
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let exp = u32::try_from(&n).ok().filter(|e| *e <= MAX_EXPONENT);
                let Some(exp) = exp else {
                    return Err(self.error(format!("exponent {n} exceeds {MAX_EXPONENT}")));
                };
                self.bump();
                Ok(Expr::Pow(Box::new(base), exp))
            }
            _ => Err(self.error("expected a non-negative integer exponent after `^`")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::H) => Ok(Expr::H),
            Some(Tok::E) => Ok(Expr::E),
            Some(Tok::HPrime) => Ok(Expr::HPrime),
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.error("expected `)`"))
                    }
                }
            }
            Some(t) => Err(ParseError { position: at, message: format!("unexpected `{t}`") }),
            None => Err(ParseError { position: at, message: "unexpected end of input".into() }),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(input)?;
    let mut p = Parser { toks, pos: 0, end: input.len() };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(p.error(format!("unexpected `{t}` after complete expression")));
    }
    Ok(e)
}

impl Expr {
    fn is_atomic(&self) -> bool {
        matches!(self, Expr::H | Expr::E | Expr::HPrime | Expr::Int(_))
    }

    /// Expands into a polynomial in `H` and `E`, with `H' = n H - E`.
    pub fn to_polynomial(&self, n: i64) -> DivisorPolynomial {
        match self {
            Expr::H => DivisorPolynomial::from_divisor(&DivisorClass::hyperplane()),
            Expr::E => DivisorPolynomial::from_divisor(&DivisorClass::exceptional()),
            Expr::HPrime => DivisorPolynomial::from_divisor(&DivisorClass::target_hyperplane(n)),
            Expr::Int(v) => DivisorPolynomial::constant(v.clone()),
            Expr::Neg(a) => -&a.to_polynomial(n),
            Expr::Add(a, b) => &a.to_polynomial(n) + &b.to_polynomial(n),
            Expr::Sub(a, b) => &a.to_polynomial(n) - &b.to_polynomial(n),
            Expr::Mul(a, b) => &a.to_polynomial(n) * &b.to_polynomial(n),
            Expr::Pow(a, e) => a.to_polynomial(n).pow(*e),
        }
    }
}

/// First monomial whose degree differs from `k`, if any.
pub fn offending_monomial(p: &DivisorPolynomial, k: u32) -> Option<&Monomial> {
    p.inhomogeneous_term(k)
}

struct Paren<'a>(&'a Expr, bool);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::H => write!(f, "H"),
            Expr::E => write!(f, "E"),
            Expr::HPrime => write!(f, "H'"),
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Neg(a) => write!(f, "-{}", Paren(a, !a.is_atomic() && !matches!(**a, Expr::Pow(..)))),
            Expr::Add(a, b) => write!(f, "{a}+{}", Paren(b, matches!(**b, Expr::Add(..) | Expr::Sub(..)))),
            Expr::Sub(a, b) => write!(f, "{a}-{}", Paren(b, matches!(**b, Expr::Add(..) | Expr::Sub(..)))),
            Expr::Mul(a, b) => {
                let loose = |e: &Expr| matches!(e, Expr::Add(..) | Expr::Sub(..) | Expr::Neg(..));
                write!(f, "{}*{}", Paren(a, loose(a)), Paren(b, loose(b) || matches!(**b, Expr::Mul(..))))
            }
            Expr::Pow(a, e) => write!(f, "{}^{e}", Paren(a, !a.is_atomic())),
        }
    }
}
