use crate::error::{Error, Result};

use super::LinearEquation;

/// Parses `side '=' side` where `side := [sign] term (('+'|'-') term)*` and
/// `term := [integer]['*']identifier | integer`.
///
/// Right-hand variables move to the left with negated coefficients; constant
/// terms collect into `b`. Variables are numbered by first appearance.
/// Error positions are 0-based character offsets.
pub fn parse_equation(text: &str) -> Result<LinearEquation> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let mut acc = Accumulator::default();
    parser.side(&mut acc, 1)?;
    parser.skip_ws();
    if parser.peek() != Some('=') {
        return Err(parser.error("expected `=`"));
    }
    parser.pos += 1;
    parser.side(&mut acc, -1)?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    acc.finish()
}

#[derive(Default)]
struct Accumulator {
    names: Vec<String>,
    coeffs: Vec<i64>,
    // constants on the left, negated into b at the end
    constant: i64,
}

impl Accumulator {
    fn add_var(&mut self, name: String, c: i64) -> Result<()> {
        match self.names.iter().position(|n| *n == name) {
            Some(i) => {
                self.coeffs[i] = self.coeffs[i].checked_add(c).ok_or(Error::Overflow)?;
            }
            None => {
                self.names.push(name);
                self.coeffs.push(c);
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<LinearEquation> {
        if self.names.is_empty() {
            return Err(Error::NoVariables);
        }
        if let Some(i) = self.coeffs.iter().position(|&c| c == 0) {
            return Err(Error::ZeroCoefficient(self.names[i].clone()));
        }
        let rhs = self.constant.checked_neg().ok_or(Error::Overflow)?;
        LinearEquation::new(self.coeffs, rhs)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn side(&mut self, acc: &mut Accumulator, side_sign: i64) -> Result<()> {
        self.skip_ws();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            self.term(acc, sign * side_sign)?;
            self.skip_ws();
            sign = match self.peek() {
                Some('+') => 1,
                Some('-') => -1,
                _ => return Ok(()),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self, acc: &mut Accumulator, sign: i64) -> Result<()> {
        self.skip_ws();
        let start = self.pos;
        let number = self.integer()?;
        self.skip_ws();
        let star = if self.peek() == Some('*') {
            if number.is_none() {
                return Err(self.error("`*` must follow a coefficient"));
            }
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        match self.identifier() {
            Some(name) => {
                let c = number
                    .unwrap_or(1)
                    .checked_mul(sign)
                    .ok_or(Error::Overflow)?;
                acc.add_var(name, c)
            }
            None if star => Err(self.error("expected a variable after `*`")),
            None => match number {
                Some(v) => {
                    let v = v.checked_mul(sign).ok_or(Error::Overflow)?;
                    acc.constant = acc.constant.checked_add(v).ok_or(Error::Overflow)?;
                    Ok(())
                }
                None => Err(Error::Syntax {
                    pos: start,
                    msg: "expected a term".to_string(),
                }),
            },
        }
    }

    fn integer(&mut self) -> Result<Option<i64>> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse::<i64>().map(Some).map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer literal out of range".to_string(),
        })
    }

    fn identifier(&mut self) -> Option<String> {
        if !self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
            return None;
        }
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }
}
