//! Text syntax for polynomials.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor (('·')? factor)*
//! factor := atom ('*' | '^' int)*
//! atom   := int | int '/' int | name | '(' expr ')'
//! ```
//!
//! Juxtaposed names without separating whitespace are split greedily by
//! longest declared name, so `aa⁻a` reads as `a a⁻ a` when `a` and `a⁻` are
//! declared. Postfix `*` applies the involution.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::symbol::{is_name_char, is_name_start, SymbolTable};
use super::Rational;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("column {col}: {msg}")]
pub struct ParseError {
    /// 1-based character column.
    pub col: usize,
    pub msg: String,
}

/// Names visible to the parser: declared indeterminates plus abbreviations
/// that expand to polynomials (e.g. `m = a b c`).
#[derive(Clone, Copy)]
pub struct ParseContext<'a> {
    pub table: &'a SymbolTable,
    pub defs: Option<&'a HashMap<String, Polynomial>>,
}

impl<'a> ParseContext<'a> {
    pub fn new(table: &'a SymbolTable) -> Self {
        ParseContext { table, defs: None }
    }

    pub fn with_defs(table: &'a SymbolTable, defs: &'a HashMap<String, Polynomial>) -> Self {
        ParseContext { table, defs: Some(defs) }
    }

    fn longest_prefix<'s>(&self, s: &'s str) -> Option<(Polynomial, &'s str)> {
        let mut best: Option<(Polynomial, &'s str)> =
            self.table.longest_prefix(s).map(|(sym, rest)| (Polynomial::var(sym), rest));
        if let Some(defs) = self.defs {
            for (i, c) in s.char_indices() {
                let end = i + c.len_utf8();
                if let Some(p) = defs.get(&s[..end]) {
                    if best.as_ref().is_none_or(|(_, rest)| rest.len() >= s.len() - end) {
                        best = Some((p.clone(), &s[end..]));
                    }
                }
            }
        }
        best
    }
}

/// Parses `text` with only declared indeterminates in scope.
pub fn parse(text: &str, table: &SymbolTable) -> Result<Polynomial, ParseError> {
    parse_in(text, ParseContext::new(table))
}

pub fn parse_in(text: &str, ctx: ParseContext<'_>) -> Result<Polynomial, ParseError> {
    let mut p = Parser { chars: text.char_indices().collect(), src: text, pos: 0, ctx };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected '{}'", p.chars[p.pos].1)));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    src: &'a str,
    pos: usize,
    ctx: ParseContext<'a>,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { col: self.pos + 1, msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn is_minus(c: char) -> bool {
        c == '-' || c == '−'
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some('+') => self.pos += 1,
            Some(c) if Self::is_minus(c) => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(c) if Self::is_minus(c) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(c: char) -> bool {
        c == '(' || c.is_ascii_digit() || is_name_start(c)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('·') | Some('⋅') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(c) if Self::starts_factor(c) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let mut base = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    let col = self.pos;
                    self.pos += 1;
                    base = base.adjoint(self.ctx.table).map_err(|e| match e {
                        Error::NoAdjoint(n) => ParseError {
                            col: col + 1,
                            msg: format!("'{n}' has no declared adjoint"),
                        },
                        other => ParseError { col: col + 1, msg: other.to_string() },
                    })?;
                }
                Some('^') => {
                    self.pos += 1;
                    let n = self.integer()?;
                    let n: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    base = base.pow(n);
                }
                _ => return Ok(base),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.err("unexpected end of expression")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    Ok(Polynomial::constant(Rational::new(num, den)))
                } else {
                    Ok(Polynomial::constant(Rational::from_integer(num)))
                }
            }
            Some(c) if is_name_start(c) => self.names(),
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
        }
    }

    /// A maximal run of name characters, split into declared names.
    fn names(&mut self) -> Result<Polynomial, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(is_name_char) {
            self.pos += 1;
        }
        let byte_start = self.chars[start].0;
        let byte_end = self.chars.get(self.pos).map_or(self.src.len(), |&(b, _)| b);
        let run = &self.src[byte_start..byte_end];
        let mut rest = run;
        let mut acc = Polynomial::one();
        while !rest.is_empty() {
            let col = start + run[..run.len() - rest.len()].chars().count();
            match self.ctx.longest_prefix(rest) {
                Some((p, tail)) => {
                    acc = &acc * &p;
                    rest = tail;
                }
                None => {
                    let name: String = rest.chars().collect();
                    return Err(ParseError { col: col + 1, msg: format!("unknown name '{name}'") });
                }
            }
        }
        Ok(acc)
    }
}

fn write_coeff(out: &mut String, c: &Rational, has_word: bool) {
    if c.is_one() && has_word {
        return;
    }
    if c.is_integer() {
        write!(out, "{}", c.numer()).unwrap();
    } else {
        write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
    }
    if has_word {
        out.push(' ');
    }
}

/// Renders a polynomial in the syntax accepted by [`parse`], largest term first.
pub fn render(p: &Polynomial, table: &SymbolTable) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (w, c)) in p.terms().iter().rev().enumerate() {
        let mag = c.abs();
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        write_coeff(&mut out, &mag, !w.is_one());
        let names: Vec<&str> = w.letters().iter().map(|&s| table.name(s)).collect();
        out.push_str(&names.join(" "));
    }
    out
}
