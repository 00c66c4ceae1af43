//! Recursive-descent parser for class expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' uint)?
//! atom   := 'c' uint | 'e' | uint | '(' expr ')'
//! ```

use alloc::string::String;
use core::fmt;

use num_bigint::BigUint;

use super::ClassExpr;

/// First failure while parsing; `offset` is a byte offset into the input
/// (at most its length).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseDiagnostic {
    pub offset: usize,
    pub message: String,
    pub expected: Option<&'static str>,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.offset, self.message)?;
        if let Some(expected) = self.expected {
            write!(f, " (expected {expected})")?;
        }
        Ok(())
    }
}

const ATOM: &str = "'c<k>', 'e', an integer or '('";

pub(super) fn parse(text: &str) -> Result<ClassExpr, ParseDiagnostic> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let expr = p.expr()?;
    if p.peek().is_some() {
        return Err(p.fail("unexpected character", Some("'+', '-', '*', '^' or end of input")));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn fail(&self, message: &str, expected: Option<&'static str>) -> ParseDiagnostic {
        ParseDiagnostic { offset: self.pos, message: message.into(), expected }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| core::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn small_uint(&mut self, what: &'static str) -> Result<u32, ParseDiagnostic> {
        let start = self.pos;
        let digits = self.digits().ok_or_else(|| self.fail("missing number", Some(what)))?;
        digits.parse().map_err(|_| ParseDiagnostic {
            offset: start,
            message: "number too large".into(),
            expected: Some(what),
        })
    }

    fn expr(&mut self) -> Result<ClassExpr, ParseDiagnostic> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = ClassExpr::sum(lhs, self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = ClassExpr::difference(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ClassExpr, ParseDiagnostic> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = ClassExpr::product(lhs, self.factor()?);
                }
                Some(b'c' | b'e' | b'(' | b'0'..=b'9') => {
                    lhs = ClassExpr::product(lhs, self.factor()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ClassExpr, ParseDiagnostic> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.peek();
            let k = self.small_uint("unsigned integer")?;
            return Ok(ClassExpr::power(base, k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ClassExpr, ParseDiagnostic> {
        match self.peek() {
            Some(b'c') => {
                self.pos += 1;
                let start = self.pos;
                let k = self.small_uint("Chern class index")?;
                if k == 0 {
                    return Err(ParseDiagnostic {
                        offset: start,
                        message: "Chern class index must be positive".into(),
                        expected: Some("positive integer"),
                    });
                }
                Ok(ClassExpr::Chern(k))
            }
            Some(b'e') => {
                self.pos += 1;
                Ok(ClassExpr::Euler)
            }
            Some(b'0'..=b'9') => {
                let digits = self.digits().expect("peeked a digit");
                Ok(ClassExpr::Integer(BigUint::parse_bytes(digits.as_bytes(), 10).expect("ascii digits")))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.fail("unclosed parenthesis", Some("')'")));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.fail("unexpected character", Some(ATOM))),
            None => Err(self.fail("unexpected end of input", Some(ATOM))),
        }
    }
}
