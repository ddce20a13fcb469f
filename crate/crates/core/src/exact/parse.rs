//! Parser for the command-line polynomial grammar (see `docs/polynomial.ebnf`).
//!
//! ```text
//! poly  = ws, [sign], term, { ws, sign, ws, term }, ws ;
//! term  = integer, [ ws, ["*"], ws, power ] | power ;
//! power = ("T" | "t"), [ ws, "^", ws, integer ] ;
//! ```
//!
//! Repeated powers are summed, so `T^2+T^2` parses as `2T^2`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Largest exponent accepted on the command line.
pub const MAX_EXPONENT: usize = 1 << 16;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }
}

pub fn parse_polynomial(input: &str) -> Result<IntPolynomial> {
    let mut c = Cursor {
        s: input.as_bytes(),
        pos: 0,
    };
    let mut coeffs: Vec<BigInt> = Vec::new();
    c.skip_ws();
    if c.peek().is_none() {
        return Err(c.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        c.skip_ws();
        let mut negative = false;
        match c.peek() {
            Some(b'+') if !first => c.pos += 1,
            Some(b'-') => {
                negative = true;
                c.pos += 1
            }
            Some(b'+') => c.pos += 1,
            _ if first => {}
            _ => return Err(c.err("expected '+' or '-'")),
        }
        first = false;
        c.skip_ws();
        let coeff = c.digits().map(|d| d.parse::<BigInt>().unwrap());
        c.skip_ws();
        let mut explicit_mul = false;
        if c.peek() == Some(b'*') {
            if coeff.is_none() {
                return Err(c.err("'*' without a coefficient"));
            }
            explicit_mul = true;
            c.pos += 1;
            c.skip_ws();
        }
        let exponent = if matches!(c.peek(), Some(b'T') | Some(b't')) {
            c.pos += 1;
            c.skip_ws();
            if c.peek() == Some(b'^') {
                c.pos += 1;
                c.skip_ws();
                let d = c.digits().ok_or_else(|| c.err("expected exponent"))?;
                let e: usize = d.parse().map_err(|_| c.err("exponent too large"))?;
                if e > MAX_EXPONENT {
                    return Err(c.err("exponent too large"));
                }
                e
            } else {
                1
            }
        } else {
            if explicit_mul {
                return Err(c.err("expected 'T' after '*'"));
            }
            if coeff.is_none() {
                return Err(c.err("expected a term"));
            }
            0
        };
        let mut value = coeff.unwrap_or_else(|| BigInt::from(1));
        if negative {
            value = -value;
        }
        if coeffs.len() <= exponent {
            coeffs.resize(exponent + 1, BigInt::zero());
        }
        coeffs[exponent] += value;
        c.skip_ws();
        if c.peek().is_none() {
            break;
        }
    }
    Ok(IntPolynomial::new(coeffs))
}
