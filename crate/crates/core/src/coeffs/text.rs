//! Text grammar for coefficients:
//!
//! ```text
//! coeff   := "(" laurent ")" "/" "(" laurent ")"
//! laurent := ["-"] term ((" + " | " - ") term)* | "0"
//! term    := rational ["*Q^" int] ["*T^" int]
//! ```
//!
//! Terms are printed in decreasing lexicographic order of `(Q, T)` exponents;
//! a term with both exponents zero is printed as a bare rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Coeff, HalfLaurent};
use crate::error::{Error, Result};

fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn format_laurent(p: &HalfLaurent) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (&(a, b), c)) in p.terms().rev().enumerate() {
        let body = if (a, b) == (0, 0) {
            format_rational(&c.abs())
        } else {
            format!("{}*Q^{a}*T^{b}", format_rational(&c.abs()))
        };
        match (i, c.is_negative()) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

pub fn format_coeff(c: &Coeff) -> String {
    format!("({})/({})", format_laurent(c.num()), format_laurent(c.den()))
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", ch as char)))
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        Ok(txt.parse().expect("digits"))
    }

    fn int(&mut self) -> Result<i32> {
        let neg = self.eat(b'-');
        let v = self.uint()?;
        let v: i32 = v.try_into().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<BigRational> {
        let n = self.uint()?;
        // A '/' followed by a digit continues the rational; "/(" separates num and den.
        self.skip_ws();
        if self.s.get(self.pos) == Some(&b'/') && self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let d = self.uint()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(BigRational::new(n, d));
        }
        Ok(BigRational::from_integer(n))
    }

    fn term(&mut self) -> Result<((i32, i32), BigRational)> {
        let c = self.rational()?;
        let (mut a, mut b) = (0, 0);
        while self.eat(b'*') {
            match self.peek() {
                Some(b'Q') => {
                    self.pos += 1;
                    self.expect(b'^')?;
                    a = self.int()?;
                }
                Some(b'T') => {
                    self.pos += 1;
                    self.expect(b'^')?;
                    b = self.int()?;
                }
                _ => return Err(self.err("expected Q or T")),
            }
        }
        Ok(((a, b), c))
    }

    fn laurent(&mut self) -> Result<HalfLaurent> {
        let mut out = HalfLaurent::zero();
        let mut neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        loop {
            let (e, c) = self.term()?;
            if out.coeff(e) != BigRational::zero() {
                return Err(self.err("repeated monomial"));
            }
            out.add_term(e, if neg { -c } else { c });
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn done(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.err("trailing input"))
        } else {
            Ok(())
        }
    }
}

pub fn parse_laurent(s: &str) -> Result<HalfLaurent> {
    let mut c = Cursor::new(s);
    let p = c.laurent()?;
    c.done()?;
    Ok(p)
}

/// Parses `(num)/(den)`; a bare Laurent polynomial is also accepted. The
/// result is canonicalized, so non-canonical input is normalized.
pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let mut c = Cursor::new(s);
    if c.peek() == Some(b'(') {
        c.expect(b'(')?;
        let num = c.laurent()?;
        c.expect(b')')?;
        c.expect(b'/')?;
        c.expect(b'(')?;
        let den = c.laurent()?;
        c.expect(b')')?;
        c.done()?;
        Coeff::from_fraction(num, den)
    } else {
        let num = c.laurent()?;
        c.done()?;
        Ok(num.into())
    }
}

impl std::str::FromStr for Coeff {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_coeff(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_one_text_form() {
        let b = Coeff::beta(1).unwrap();
        let s = "(1*Q^1*T^1 - 1*Q^1*T^-1 - 1*Q^-1*T^1 + 1*Q^-1*T^-1)/(1)";
        assert_eq!(b.to_string(), s);
        assert_eq!(parse_coeff(s).unwrap(), b);
    }

    #[test]
    fn rational_coefficients_and_denominators() {
        let s = "(-3/2*Q^2*T^0 + 5)/(1*Q^2*T^0 - 1)";
        let c = parse_coeff(s).unwrap();
        assert_eq!(c.to_string(), s);
        assert_eq!(parse_coeff("(0)/(1)").unwrap(), Coeff::zero());
        assert_eq!(Coeff::zero().to_string(), "(0)/(1)");
    }

    #[test]
    fn errors_are_reported() {
        assert!(parse_coeff("(1)/(0)").is_err());
        assert!(parse_coeff("(1*X^2)/(1)").is_err());
        assert!(parse_coeff("(1)/(1) junk").is_err());
        assert!(parse_laurent("1 + 1").is_err());
    }
}
