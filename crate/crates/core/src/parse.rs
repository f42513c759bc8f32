//! Text input for polynomials.
//!
//! Grammar, with whitespace ignored between tokens:
//!
//! ```text
//! expr   := ["+" | "-"] term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := atom ["^" integer]
//! atom   := integer | variable | "(" expr ")"
//! ```
//!
//! Variables are `x1, x2, …` (or `s1, s2, …` for polynomials in `s`) and
//! the parameters `y1, y2, …`. Division is only by nonzero scalars, so
//! `3/2*x2` is a rational coefficient. Juxtaposition is an error.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::malgrange::XPoly;
use crate::poly::{render_with, Coeff};
use crate::scalars::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { offset: usize, name: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownVariable { offset, .. } => *offset,
        }
    }
}

/// A polynomial in `x1, x2, …` with coefficients in `ℚ(y1, y2, …)`.
pub fn parse_poly(text: &str) -> Result<XPoly, ParseError> {
    Parser::new(text, 'x').parse()
}

/// A polynomial in `s1, s2, …`.
pub fn parse_s_poly(text: &str) -> Result<XPoly, ParseError> {
    Parser::new(text, 's').parse()
}

/// A polynomial in `λ`, as printed by [`crate::factored::FactoredBS`].
pub fn parse_lambda_poly(text: &str) -> Result<XPoly, ParseError> {
    Parser::new(text, 'λ').parse()
}

/// Inverse of [`parse_poly`] (`var = 'x'`) and [`parse_s_poly`] (`var = 's'`).
pub fn render(p: &XPoly, var: char) -> String {
    render_with(p, |i| format!("{var}{}", i + 1), |c: &ExactScalar| c.to_string())
}

/// `l1,l2` as a pair of integers.
pub fn parse_direction(text: &str) -> Result<Vec<i64>, ParseError> {
    text.split(',')
        .scan(0usize, |at, part| {
            let start = *at;
            *at += part.len() + 1;
            Some((start, part))
        })
        .map(|(start, part)| {
            part.trim().parse::<i64>().map_err(|_| ParseError::Syntax {
                offset: start,
                message: format!("`{}` is not an integer", part.trim()),
            })
        })
        .collect()
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    var: char,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, var: char) -> Self {
        Parser { text, pos: 0, var }
    }

    fn parse(mut self) -> Result<XPoly, ParseError> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(self.syntax("expected an operator"));
        }
        Ok(p)
    }

    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek_raw() {
            self.pos += c.len_utf8();
        }
    }

    fn is_minus(c: char) -> bool {
        c == '-' || c == '−'
    }

    fn expr(&mut self) -> Result<XPoly, ParseError> {
        let mut neg = false;
        match self.peek() {
            Some('+') => self.bump(),
            Some(c) if Self::is_minus(c) => {
                self.bump();
                neg = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if neg { first.neg() } else { first };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(c) if Self::is_minus(c) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<XPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.bump();
                    let at = self.pos;
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(ParseError::Syntax {
                            offset: at,
                            message: "division by a non-scalar or by zero".into(),
                        });
                    }
                    let inv = d.constant_term().inv().map_err(|_| ParseError::Syntax {
                        offset: at,
                        message: "division by zero".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<XPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let k = self.integer()?;
            let k = k.to_u32().ok_or_else(|| self.syntax("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        Ok(self.text[start..self.pos].parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<XPoly, ParseError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(XPoly::constant(ExactScalar::from_bigint(&n)))
            }
            Some(c) if c.is_alphabetic() => self.variable(),
            Some(_) => Err(self.syntax("expected a number, a variable or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn variable(&mut self) -> Result<XPoly, ParseError> {
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        let name = &self.text[start..self.pos];
        let unknown = || ParseError::UnknownVariable {
            offset: start,
            name: name.to_string(),
        };
        if self.var == 'λ' && name == "λ" {
            return Ok(XPoly::var(0));
        }
        let mut chars = name.chars();
        let head = chars.next().expect("nonempty");
        let rest = chars.as_str();
        let index: usize = match rest.parse() {
            Ok(i) if i >= 1 && !rest.starts_with('0') => i,
            _ => return Err(unknown()),
        };
        if head == self.var {
            Ok(XPoly::var(index - 1))
        } else if head == 'y' {
            Ok(XPoly::constant(ExactScalar::param(index - 1)))
        } else {
            Err(unknown())
        }
    }
}
