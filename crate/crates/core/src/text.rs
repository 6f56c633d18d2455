//! Shared lexing helpers for the small expression languages (ordinals, sign
//! sequences, series, ladder terms) and exact rational formatting.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

pub type Rational = BigRational;

/// Syntax error with the byte offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Next non-whitespace character, not consumed.
    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    /// Character directly at the cursor (no whitespace skipping).
    pub fn peek_raw(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.rest().chars().next()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn eat_any(&mut self, cs: &[char]) -> Option<char> {
        let c = self.peek()?;
        if cs.contains(&c) {
            self.pos += c.len_utf8();
            Some(c)
        } else {
            None
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    pub fn peek_digit(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit())
    }

    pub fn natural(&mut self) -> Result<BigUint, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    /// `n` or `n/d` (unsigned).
    pub fn unsigned_rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.natural()?;
        let save = self.pos;
        if self.eat('/') {
            if self.peek_digit() {
                let den = self.natural()?;
                if den.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                return Ok(Rational::new(BigInt::from(num), BigInt::from(den)));
            }
            self.pos = save;
        }
        Ok(Rational::from_integer(BigInt::from(num)))
    }

    /// Optional leading `-`, then an unsigned rational.
    pub fn signed_rational(&mut self) -> Result<Rational, ParseError> {
        let neg = self.eat_any(&['-', '−']).is_some();
        let q = self.unsigned_rational()?;
        Ok(if neg { -q } else { q })
    }
}

/// `p`, `p/q`, or a decimal such as `-12.5e3`, read exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut cur = Cursor::new(text);
    let mut q = cur.signed_rational()?;
    if q.is_integer() {
        let neg = text.trim_start().starts_with(['-', '−']);
        if cur.peek_raw() == Some('.') {
            cur.bump();
            let start = cur.pos;
            let frac = cur.natural()?;
            let scale = Rational::from_integer(BigInt::from(10).pow((cur.pos - start) as u32));
            let f = Rational::from_integer(BigInt::from(frac)) / scale;
            q = if neg { q - f } else { q + f };
        }
        if matches!(cur.peek_raw(), Some('e' | 'E')) {
            cur.bump();
            let e = cur.signed_rational()?;
            if !e.is_integer() || e.numer().bits() > 16 {
                return Err(cur.error("bad exponent"));
            }
            let k: i32 = e.numer().try_into().expect("small exponent");
            let p = Rational::from_integer(BigInt::from(10).pow(k.unsigned_abs()));
            q = if k >= 0 { q * p } else { q / p };
        }
    }
    cur.finish()?;
    Ok(q)
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
