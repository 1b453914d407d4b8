//! Arithmetic expressions over rational literals and square roots.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := INT | INT '/' INT | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{FixedReal, NumError, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum RealExpression {
    Literal(Rational),
    Sqrt(Box<RealExpression>),
    Add(Box<RealExpression>, Box<RealExpression>),
    Sub(Box<RealExpression>, Box<RealExpression>),
    Mul(Box<RealExpression>, Box<RealExpression>),
    Div(Box<RealExpression>, Box<RealExpression>),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigUint),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, NumError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            b'-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            b'*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            b'/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            b'(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            b')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &input[start..i];
                let value = BigUint::parse_bytes(digits.as_bytes(), 10)
                    .ok_or_else(|| NumError::Parse { pos: start, msg: "bad integer".into() })?;
                tokens.push((start, Token::Int(value)));
            }
            _ if input[i..].starts_with("sqrt") => {
                tokens.push((i, Token::Sqrt));
                i += 4;
            }
            _ => {
                return Err(NumError::Parse {
                    pos: i,
                    msg: format!("unexpected character {:?}", input[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Token> {
        self.tokens.get(self.pos + 1).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err_here(&self, msg: &str) -> NumError {
        let pos = self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.input_len);
        NumError::Parse { pos, msg: msg.into() }
    }

    fn expr(&mut self) -> Result<RealExpression, NumError> {
        let mut node = self.term()?;
        while let Some(op) = self.peek() {
            let op = match op {
                Token::Plus => true,
                Token::Minus => false,
                _ => break,
            };
            self.next();
            let rhs = self.term()?;
            node = if op {
                RealExpression::Add(Box::new(node), Box::new(rhs))
            } else {
                RealExpression::Sub(Box::new(node), Box::new(rhs))
            };
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<RealExpression, NumError> {
        let mut node = self.factor()?;
        while let Some(op) = self.peek() {
            let mul = match op {
                Token::Star => true,
                Token::Slash => false,
                _ => break,
            };
            self.next();
            let rhs = self.factor()?;
            node = if mul {
                RealExpression::Mul(Box::new(node), Box::new(rhs))
            } else {
                RealExpression::Div(Box::new(node), Box::new(rhs))
            };
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<RealExpression, NumError> {
        match self.peek() {
            Some(Token::Int(_)) => {
                let Some((_, Token::Int(numer))) = self.next() else { unreachable!() };
                // rational literal INT '/' INT binds tighter than general division
                if self.peek() == Some(&Token::Slash) {
                    if let Some(Token::Int(_)) = self.peek2() {
                        self.next();
                        let Some((pos, Token::Int(denom))) = self.next() else { unreachable!() };
                        if denom.is_zero() {
                            return Err(NumError::Parse { pos, msg: "zero denominator in literal".into() });
                        }
                        return Ok(RealExpression::Literal(Rational::new(
                            BigInt::from(numer),
                            BigInt::from(denom),
                        )));
                    }
                }
                Ok(RealExpression::Literal(Rational::from(BigInt::from(numer))))
            }
            Some(Token::Sqrt) => {
                self.next();
                if self.next().map(|(_, t)| t) != Some(Token::LParen) {
                    return Err(self.err_here("expected '(' after sqrt"));
                }
                let inner = self.expr()?;
                if self.next().map(|(_, t)| t) != Some(Token::RParen) {
                    return Err(self.err_here("expected ')'"));
                }
                Ok(RealExpression::Sqrt(Box::new(inner)))
            }
            Some(Token::LParen) => {
                self.next();
                let inner = self.expr()?;
                if self.next().map(|(_, t)| t) != Some(Token::RParen) {
                    return Err(self.err_here("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.err_here("expected integer, 'sqrt', or '('")),
        }
    }
}

impl RealExpression {
    pub fn parse(input: &str) -> Result<Self, NumError> {
        let tokens = tokenize(input)?;
        let mut parser = Parser { tokens, pos: 0, input_len: input.len() };
        let node = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(parser.err_here("trailing input"));
        }
        Ok(node)
    }

    /// Evaluate at `precision` fraction bits.
    pub fn eval_fixed(&self, precision: u32) -> Result<FixedReal, NumError> {
        match self {
            RealExpression::Literal(r) => Ok(super::rational_to_fixed(r, precision)),
            RealExpression::Sqrt(e) => e.eval_fixed(precision)?.sqrt(),
            RealExpression::Add(a, b) => Ok(&a.eval_fixed(precision)? + &b.eval_fixed(precision)?),
            RealExpression::Sub(a, b) => Ok(&a.eval_fixed(precision)? - &b.eval_fixed(precision)?),
            RealExpression::Mul(a, b) => Ok(&a.eval_fixed(precision)? * &b.eval_fixed(precision)?),
            RealExpression::Div(a, b) => {
                let d = b.eval_fixed(precision)?;
                if d.is_zero() {
                    return Err(NumError::DivisionByZero);
                }
                Ok(&a.eval_fixed(precision)? / &d)
            }
        }
    }

    /// Exact rational value, when the expression has one (square roots must
    /// hit perfect squares).
    pub fn eval_rational(&self) -> Option<Rational> {
        match self {
            RealExpression::Literal(r) => Some(r.clone()),
            RealExpression::Sqrt(e) => {
                let v = e.eval_rational()?;
                if v.is_negative() {
                    return None;
                }
                let num_root = v.numer().magnitude().sqrt();
                let den_root = v.denom().magnitude().sqrt();
                if &(&num_root * &num_root) == v.numer().magnitude()
                    && &(&den_root * &den_root) == v.denom().magnitude()
                {
                    Some(Rational::new(BigInt::from(num_root), BigInt::from(den_root)))
                } else {
                    None
                }
            }
            RealExpression::Add(a, b) => Some(a.eval_rational()? + b.eval_rational()?),
            RealExpression::Sub(a, b) => Some(a.eval_rational()? - b.eval_rational()?),
            RealExpression::Mul(a, b) => Some(a.eval_rational()? * b.eval_rational()?),
            RealExpression::Div(a, b) => {
                let d = b.eval_rational()?;
                if d.is_zero() {
                    return None;
                }
                Some(a.eval_rational()? / d)
            }
        }
    }
}
