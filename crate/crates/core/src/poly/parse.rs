use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, Ring, Q};
use crate::error::{Error, Result};

/// Parses an expression in the variables of `ring`.
///
/// Grammar: sums, products, `^` or `**` with a nonnegative integer exponent,
/// parentheses, integer literals, and division by nonzero constants.
pub fn parse_poly(text: &str, ring: &Arc<Ring>) -> Result<Poly> {
    parse_poly_at(text, ring, 1, 1)
}

/// Like [`parse_poly`], reporting positions relative to `(line, col)` of a larger source.
pub fn parse_poly_at(text: &str, ring: &Arc<Ring>, line: usize, col: usize) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
        line0: line,
        col0: col,
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err(&format!("unexpected character {:?}", p.src[p.pos] as char)));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
    line0: usize,
    col0: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        let mut line = self.line0;
        let mut col = self.col0;
        for &b in &self.src[..self.pos.min(self.src.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Error::Parse {
            line,
            col,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') if self.src.get(self.pos + 1) != Some(&b'*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.unary()?;
                    if !f.is_constant() {
                        self.pos = at;
                        return Err(self.err("division by a non-constant"));
                    }
                    let c = f.constant_coeff();
                    if c.is_zero() {
                        self.pos = at;
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        let is_pow = match self.peek() {
            Some(b'^') => {
                self.pos += 1;
                true
            }
            Some(b'*') if self.src.get(self.pos + 1) == Some(&b'*') => {
                self.pos += 2;
                true
            }
            _ => false,
        };
        if !is_pow {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a nonnegative integer exponent"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let k: u32 = match s.parse() {
            Ok(k) if k <= u16::MAX as u32 => k,
            _ => {
                self.pos = start;
                return Err(self.err("exponent too large"));
            }
        };
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            None => Err(self.err("unexpected end of expression")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = s.parse().unwrap();
                Ok(Poly::constant(self.ring, Q::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Poly::var(self.ring, i)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable {name}")))
                    }
                }
            }
            Some(c) => Err(self.err(&format!("unexpected character {:?}", c as char))),
        }
    }
}
