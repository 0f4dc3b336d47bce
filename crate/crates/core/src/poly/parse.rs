//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | name | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants. Exponents are natural
//! numbers, or names bound in the parameter table (used by search families).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Polynomial, Vars};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};

/// Parses `text` in the ring with the given variables.
pub fn parse(text: &str, vars: &Vars) -> Result<Polynomial> {
    parse_with_params(text, vars, &BTreeMap::new())
}

/// Parses with named integer parameters, which may appear as exponents or as
/// integer constants.
pub fn parse_with_params(text: &str, vars: &Vars, params: &BTreeMap<String, i64>) -> Result<Polynomial> {
    if vars.is_empty() {
        return Err(Error::InvalidArgument("no variables declared".into()));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars, params };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
    params: &'a BTreeMap<String, i64>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Syntax { pos: at, msg: "division only by nonzero constants".into() });
                    }
                    acc = acc.scale(&d.constant_term().inv());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
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

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                digits.parse::<u32>().map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                let name = self.ident();
                match self.params.get(&name) {
                    Some(&v) if v >= 0 => Ok(v as u32),
                    Some(_) => Err(Error::Syntax { pos: start, msg: format!("negative exponent `{name}`") }),
                    None => Err(Error::Syntax { pos: start, msg: format!("exponent `{name}` is not a parameter") }),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.exponent()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a natural-number exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(Polynomial::constant(self.vars.clone(), BigRational::from_integer(n)))
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                let name = self.ident();
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(Polynomial::var(self.vars.clone(), i))
                } else if let Some(&v) = self.params.get(&name) {
                    Ok(Polynomial::constant(self.vars.clone(), Rational::from_i64(v)))
                } else {
                    Err(Error::UnknownVariable { name, pos: start })
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}
