//! Recursive-descent parser for the formula text grammar:
//!
//! ```text
//! formula := signed_term (('+'|'-') term)* '=' rat 'pi'
//! term    := rat '*' 'atan' '(' rat ')'
//! rat     := int ('/' int)?
//! int     := ('+'|'-')? digit+
//! ```
//!
//! Whitespace is insignificant everywhere.

use super::{ArctanTerm, FormulaError, MachinFormula};
use crate::exact::Rat;
use num_bigint::BigInt;
use num_traits::Zero;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, FormulaError> {
        Err(FormulaError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), FormulaError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(format!("expected '{}', found '{}'", c as char, got as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), FormulaError> {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            Ok(())
        } else {
            self.err(format!("expected '{}'", word))
        }
    }

    fn int(&mut self) -> Result<BigInt, FormulaError> {
        self.skip_ws();
        let start = self.pos;
        let mut p = self.pos;
        if p < self.bytes.len() && (self.bytes[p] == b'+' || self.bytes[p] == b'-') {
            p += 1;
        }
        let digits_start = p;
        while p < self.bytes.len() && self.bytes[p].is_ascii_digit() {
            p += 1;
        }
        if p == digits_start {
            self.pos = start;
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.bytes[start..p]).unwrap();
        self.pos = p;
        Ok(text.parse::<BigInt>().unwrap())
    }

    fn rat(&mut self) -> Result<Rat, FormulaError> {
        let num = self.int()?;
        if self.peek() == Some(b'/') {
            let slash_pos = self.pos;
            self.pos += 1;
            let den = self.int()?;
            if den.is_zero() {
                return Err(FormulaError::ZeroDenominator { position: slash_pos });
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }

    fn term(&mut self) -> Result<ArctanTerm, FormulaError> {
        let coef = self.rat()?;
        self.expect(b'*')?;
        self.keyword("atan")?;
        self.expect(b'(')?;
        let arg = self.rat()?;
        self.expect(b')')?;
        Ok(ArctanTerm::new(coef, arg))
    }

    fn end(&mut self) -> Result<(), FormulaError> {
        if self.peek().is_some() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }
}

/// Parse formula text into canonical form. Round trip: printing a parsed
/// formula reproduces canonical text exactly.
pub fn parse_formula(text: &str) -> Result<MachinFormula, FormulaError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negate_first = false;
    match p.peek() {
        Some(b'-') => {
            p.bump();
            negate_first = true;
        }
        Some(b'+') => {
            p.bump();
        }
        _ => {}
    }
    let first = p.term()?;
    terms.push(if negate_first {
        ArctanTerm::new(-first.coef, first.arg)
    } else {
        first
    });
    loop {
        match p.peek() {
            Some(b'+') => {
                p.bump();
                terms.push(p.term()?);
            }
            Some(b'-') => {
                p.bump();
                let t = p.term()?;
                terms.push(ArctanTerm::new(-t.coef, t.arg));
            }
            Some(b'=') => break,
            Some(c) => {
                return p.err(format!(
                    "expected '+', '-' or '=', found '{}'",
                    c as char
                ))
            }
            None => return p.err("expected '=', found end of input"),
        }
    }
    p.expect(b'=')?;
    let rhs = p.rat()?;
    p.keyword("pi")?;
    p.end()?;
    let formula = MachinFormula::new(terms, rhs);
    if formula.is_empty() {
        return Err(FormulaError::EmptyFormula);
    }
    Ok(formula)
}
