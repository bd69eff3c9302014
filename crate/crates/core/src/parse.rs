//! Inline polynomial syntax: `3x^3 + 1/2 x*y - (x+z)^2`, `X^6 - Z^6`.
//!
//! Variables are `x, y, z` (indices 0..2), `X, Z` (binary-form variables,
//! indices 0 and 1), or `x0, x1, ...`. Multiplication may be implicit.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::pow;
use crate::{Poly, Rat};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    nvars: usize,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| err(format!("expected an integer at offset {start}")))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some('^') {
            self.bump();
            let e = self.integer()?;
            u32::try_from(e).map_err(|_| err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn variable(&mut self) -> Result<usize> {
        let c = self.bump().ok_or_else(|| err("unexpected end of input"))?;
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        let idx = match (c, digits.is_empty()) {
            ('x', false) => digits.parse().map_err(|_| err("bad variable index"))?,
            ('x' | 'X', true) => 0,
            ('y' | 'Z', true) => 1,
            ('z', true) => 2,
            _ => return Err(err(format!("unknown variable {c}{digits}"))),
        };
        self.nvars = self.nvars.max(idx + 1);
        Ok(idx)
    }

    fn atom(&mut self) -> Result<Poly> {
        let base = match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.bump() != Some(')') {
                    return Err(err("missing closing parenthesis"));
                }
                inner
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut r = Rat::from_integer(n);
                if self.peek() == Some('/') {
                    self.bump();
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(err("zero denominator"));
                    }
                    r /= Rat::from_integer(d);
                }
                Poly::constant(0, r)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let i = self.variable()?;
                Poly::var(i + 1, i)
            }
            Some(c) => return Err(err(format!("unexpected character {c:?}"))),
            None => return Err(err("unexpected end of input")),
        };
        let e = self.exponent()?;
        Ok(pow(&base, e))
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = &acc * &self.atom()?;
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => acc = &acc * &self.atom()?,
                _ => return Ok(acc),
            }
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut sign = Rat::one();
        if let Some(c @ ('+' | '-')) = self.peek() {
            self.bump();
            if c == '-' {
                sign = -sign;
            }
        }
        loop {
            acc = &acc + &self.term()?.scale(&sign);
            match self.peek() {
                Some('+') => sign = Rat::one(),
                Some('-') => sign = -Rat::one(),
                _ => return Ok(acc),
            }
            self.bump();
        }
    }
}

/// Parses a polynomial; the number of variables is one more than the
/// largest variable index used (at least 1).
pub fn parse_poly(s: &str) -> Result<Poly> {
    let mut p = Parser { src: s, pos: 0, nvars: 1 };
    let f = p.expr()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at offset {}", p.pos)));
    }
    Ok(f.with_nvars(p.nvars))
}

/// Parses a comma-separated list of rationals, e.g. `0,1,-1,1/2`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(crate::arith::parse_rational)
        .collect()
}
