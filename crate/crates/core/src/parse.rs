//! Parser for the monomial-map surface syntax:
//!
//! ```text
//! vars <id>(,<id>)* ; <component>(,<component>)*
//! ```
//!
//! where a component is `<term>(*<term>)*`, a term is `<id>` or `<id>^<posint>`,
//! and whitespace is insignificant. An optional leading integer coefficient per
//! component is accepted and discarded if nonzero; monomial analysis is
//! coefficient-free up to target scaling.

use thiserror::Error;

use crate::germ::{ExponentVector, GermError, MonomialMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("zero coefficient at byte {pos}; coefficients must be nonzero")]
    ZeroCoefficient { pos: usize },
    #[error("component {index} at byte {pos} is a constant; components must vanish at 0")]
    ZeroComponent { index: usize, pos: usize },
    #[error(transparent)]
    Germ(#[from] GermError),
}

struct Scanner<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{}`", c as char))),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&mut self, message: impl Into<String>) -> ParseError {
        self.skip_ws();
        ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn identifier(&mut self) -> Result<(String, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.text.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            _ => return Err(self.err("expected an identifier")),
        }
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii range")
            .to_string();
        Ok((name, start))
    }

    fn integer(&mut self) -> Result<(u64, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if !matches!(self.text.get(self.pos), Some(c) if c.is_ascii_digit()) {
            return Err(self.err("expected an integer"));
        }
        let mut value: u64 = 0;
        while let Some(c) = self.text.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or_else(|| ParseError::Syntax {
                    pos: start,
                    message: "integer literal does not fit in 64 bits".into(),
                })?;
            self.pos += 1;
        }
        Ok((value, start))
    }

    fn at_digit(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit())
    }
}

/// Parses the surface syntax into a map. Coefficients, if written, must be
/// nonzero and are discarded.
pub fn parse_map(text: &str) -> Result<MonomialMap, ParseError> {
    let mut s = Scanner::new(text);
    let (kw, pos) = s.identifier().map_err(|_| ParseError::Syntax {
        pos: 0,
        message: "expected the `vars` declaration".into(),
    })?;
    if kw != "vars" {
        return Err(ParseError::Syntax {
            pos,
            message: "expected the `vars` keyword".into(),
        });
    }

    let mut vars: Vec<String> = Vec::new();
    loop {
        let (name, pos) = s.identifier()?;
        if vars.contains(&name) {
            return Err(ParseError::Syntax {
                pos,
                message: format!("variable `{name}` is declared twice"),
            });
        }
        vars.push(name);
        if !s.eat(b',') {
            break;
        }
    }
    s.expect(b';')?;

    let n = vars.len();
    let mut components = Vec::new();
    loop {
        let comp_start = {
            s.skip_ws();
            s.pos
        };
        let mut exps = vec![0u64; n];
        let mut saw_term = false;

        if s.at_digit() {
            let (coeff, pos) = s.integer()?;
            if coeff == 0 {
                return Err(ParseError::ZeroCoefficient { pos });
            }
            // coefficient discarded; a bare integer is a unit component
            if s.eat(b'*') {
                parse_term(&mut s, &vars, &mut exps)?;
                saw_term = true;
            }
        } else {
            parse_term(&mut s, &vars, &mut exps)?;
            saw_term = true;
        }
        while s.eat(b'*') {
            parse_term(&mut s, &vars, &mut exps)?;
            saw_term = true;
        }

        if !saw_term {
            // a bare coefficient is only a (rejected) unit component when the
            // component actually ends here; anything else is malformed input
            match s.peek() {
                Some(b',') | None => {
                    return Err(ParseError::ZeroComponent {
                        index: components.len(),
                        pos: comp_start,
                    })
                }
                Some(c) => {
                    return Err(s.err(format!("unexpected `{}` in component", c as char)));
                }
            }
        }
        components.push(ExponentVector::new(exps));

        match s.peek() {
            Some(b',') => {
                s.pos += 1;
            }
            None => break,
            Some(c) => {
                return Err(s.err(format!("unexpected `{}` after component", c as char)));
            }
        }
    }

    Ok(MonomialMap::new(vars, components)?)
}

fn parse_term(s: &mut Scanner<'_>, vars: &[String], exps: &mut [u64]) -> Result<(), ParseError> {
    let (name, pos) = s.identifier()?;
    let index = vars
        .iter()
        .position(|v| *v == name)
        .ok_or(ParseError::UnknownVariable { name, pos })?;
    let exponent = if s.eat(b'^') {
        let (e, epos) = s.integer()?;
        if e == 0 {
            return Err(ParseError::Syntax {
                pos: epos,
                message: "exponent must be a positive integer".into(),
            });
        }
        e
    } else {
        1
    };
    exps[index] = exps[index]
        .checked_add(exponent)
        .ok_or_else(|| ParseError::Syntax {
            pos,
            message: "exponent overflow in repeated variable".into(),
        })?;
    Ok(())
}
