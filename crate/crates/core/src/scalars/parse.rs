//! Text form of scalars: `p/q`, `p/q+r/s*i`, and expanded polynomial or
//! rational-function expressions such as `(i*t1 + 1)/(t2 - i)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{GaussRational, Poly, RatFunc, Ring, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    Unexpected(char, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent out of range")]
    Exponent,
    #[error("value {0:?} is not in the {1} domain")]
    Domain(String, &'static str),
}

/// Parses `text` into a scalar of type `S`. `variables[k]` names the
/// variable with index `k`.
pub fn parse_scalar<S: Scalar>(text: &str, variables: &[String]) -> Result<S, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        variables,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.unexpected());
    }
    S::from_func(&value).ok_or_else(|| ParseError::Domain(text.to_string(), S::DOMAIN))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    variables: &'a [String],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        match self.src.get(self.pos) {
            Some(&c) => ParseError::Unexpected(c as char, self.pos),
            None => ParseError::Eof,
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).ok_or(ParseError::DivisionByZero)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.unexpected());
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .expect("digits")
                .parse()
                .map_err(|_| ParseError::Exponent)?;
            if e > 255 {
                return Err(ParseError::Exponent);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        let c = self.peek().ok_or(ParseError::Eof)?;
        if c == b'(' {
            self.pos += 1;
            let v = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.unexpected());
            }
            self.pos += 1;
            return Ok(v);
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("digits");
            let n: BigInt = digits.parse().expect("digit string");
            return Ok(RatFunc::from_rational(&BigRational::from_integer(n)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            if name == "i" {
                return Ok(RatFunc::constant(GaussRational::i()));
            }
            return match self.variables.iter().position(|v| v == name) {
                Some(k) => Ok(RatFunc::from_poly(Poly::var(k))),
                None => Err(ParseError::UnknownVariable(name.to_string())),
            };
        }
        Err(self.unexpected())
    }
}
