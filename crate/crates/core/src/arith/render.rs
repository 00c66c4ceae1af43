//! Canonical text form of polynomials: graded-lex order, explicit `*` and `^`,
//! e.g. `2*u1^2*u2 - u2^3 + 5`. Rank-1 polynomials use the bare variable `u`.

use alloc::string::{String, ToString};
use core::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Polynomial};
use super::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at offset {offset}: {message}")]
pub struct PolyParseError {
    pub offset: usize,
    pub message: String,
}

pub(crate) fn var_name(rank: usize, index: usize) -> String {
    if rank == 1 {
        "u".to_string()
    } else {
        alloc::format!("u{}", index + 1)
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, m: &Monomial) -> fmt::Result {
    let rank = m.rank();
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(&var_name(rank, i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_char('0');
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_char('-')?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Parses the canonical form (and mild variations of it: any term order,
    /// repeated factors, rational coefficients `a/b`).
    pub fn parse(text: &str, rank: usize) -> Result<Polynomial, PolyParseError> {
        let mut parser = Parser { text: text.as_bytes(), pos: 0, rank };
        let p = parser.polynomial()?;
        parser.skip_ws();
        if parser.pos < parser.text.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    rank: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> PolyParseError {
        PolyParseError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| core::str::from_utf8(&self.text[start..self.pos]).unwrap())
    }

    fn integer(&mut self) -> Result<BigInt, PolyParseError> {
        self.skip_ws();
        let digits = self.digits().ok_or_else(|| self.error("expected an integer"))?;
        Ok(digits.parse().expect("ascii digits"))
    }

    fn polynomial(&mut self) -> Result<Polynomial, PolyParseError> {
        let mut acc = Polynomial::zero(self.rank);
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            acc.add_term(m, if negate { -c } else { c });
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, Scalar), PolyParseError> {
        let mut m = Monomial::one(self.rank);
        let mut c = Scalar::one();
        loop {
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let num = self.integer()?;
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.integer()?;
                        if den.is_zero() {
                            return Err(self.error("zero denominator"));
                        }
                        c *= Scalar::new(num, den);
                    } else {
                        c *= Scalar::from_integer(num);
                    }
                }
                Some(b'u') => {
                    self.pos += 1;
                    let index = match self.digits() {
                        Some(d) => {
                            let k: usize = d.parse().map_err(|_| self.error("variable index too large"))?;
                            if k == 0 || k > self.rank {
                                return Err(self.error("variable index out of range"));
                            }
                            k - 1
                        }
                        None if self.rank == 1 => 0,
                        None => return Err(self.error("expected variable index")),
                    };
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let d = self.digits().ok_or_else(|| self.error("expected exponent"))?;
                        e = d.parse().map_err(|_| self.error("exponent too large"))?;
                    }
                    m.exponents_mut()[index] += e;
                }
                _ => return Err(self.error("expected a coefficient or variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((m, c));
            }
        }
    }
}
