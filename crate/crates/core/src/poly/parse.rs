//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr     := [sign] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := primary ('^' nat)*
//! primary  := rational | var | '(' expr ')'
//! rational := int ('/' nat)?
//! ```
//!
//! Multiplication is always explicit. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyError, Polynomial};
use crate::Rational;

/// Parses `text` as a polynomial in the variables `vars` (in order).
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars, nvars: vars.len() };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected '{}'", p.peek_char())));
    }
    Ok(e)
}

struct Parser<'a, S> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [S],
    nvars: usize,
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..]).ok().and_then(|s| s.chars().next()).unwrap_or('?')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> PolyError {
        PolyError::Syntax { position: self.pos, message: message.to_string() }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        self.skip_ws();
        let negate = match self.peek() {
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
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let mut base = self.primary()?;
        loop {
            self.skip_ws();
            if self.peek() != Some(b'^') {
                return Ok(base);
            }
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| PolyError::Syntax {
                position: start,
                message: "exponent too large".to_string(),
            })?;
            base = base.pow(e);
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn primary(&mut self) -> Result<Polynomial, PolyError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den_pos = self.pos;
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return Err(PolyError::Syntax { position: den_pos, message: "zero denominator".to_string() });
                    }
                    Ok(Polynomial::constant(self.nvars, Rational::new(num, den)))
                } else {
                    self.pos = save;
                    Ok(Polynomial::constant(self.nvars, Rational::from_integer(num)))
                }
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.iter().position(|v| v.as_ref() == name) {
                    Some(i) => Ok(Polynomial::var(self.nvars, i)),
                    None => Err(PolyError::UnknownVariable { name: name.to_string(), position: start }),
                }
            }
            Some(_) => Err(self.error(&format!("unexpected '{}'", self.peek_char()))),
        }
    }
}
