//! Text form of polynomials: identifiers, `+`, `*`, `^`, and the constants 0 and 1.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

fn perr(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn ident_continue(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'(' || c == b')'
}

/// True when `name` is a legal variable identifier.
#[must_use]
pub fn is_identifier(name: &str) -> bool {
    let b = name.as_bytes();
    !b.is_empty() && ident_start(b[0]) && b[1..].iter().all(|&c| ident_continue(c))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        s.parse::<u64>()
            .map_err(|_| perr(start, "expected an integer"))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let t = self.term()?;
            acc.add_assign(&t, self.ring);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f, self.ring);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.number()?;
            if e == 0 {
                return Err(perr(at, "exponent must be positive"));
            }
            let e = u32::try_from(e)
                .ok()
                .filter(|&e| e <= 255)
                .ok_or_else(|| perr(at, "exponent too large"))?;
            return Ok(base.pow(e, self.ring));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.pos;
        match self.peek() {
            None => Err(perr(at, "unexpected end of input")),
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                match self.number()? {
                    0 => Ok(Poly::zero()),
                    1 => Ok(Poly::one()),
                    n => Err(perr(at, format!("coefficient {n} is not 0 or 1"))),
                }
            }
            Some(c) if ident_start(c) => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && ident_continue(self.src[self.pos]) {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                let i = self
                    .ring
                    .index_of(name)
                    .ok_or_else(|| perr(start, format!("unknown variable {name}")))?;
                Ok(Poly::var(self.ring, i))
            }
            Some(c) => Err(perr(
                self.pos,
                format!("unexpected character {:?}", c as char),
            )),
        }
    }
}

/// Parses a polynomial over `ring`.
pub fn parse_poly(ring: &Ring, text: &str) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(perr(p.pos, "trailing input"));
    }
    Ok(out)
}

/// Prints terms in descending order, factors in variable-index order.
#[must_use]
pub fn format_poly(ring: &Ring, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts: Vec<String> = Vec::with_capacity(p.len());
    for t in p.terms() {
        if t.is_one() {
            parts.push("1".into());
            continue;
        }
        let mut fs: Vec<String> = Vec::new();
        for (i, e) in t.factors() {
            if e == 1 {
                fs.push(ring.name(i).into());
            } else {
                fs.push(format!("{}^{e}", ring.name(i)));
            }
        }
        parts.push(fs.join("*"));
    }
    parts.join(" + ")
}
