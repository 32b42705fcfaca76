//! Problem file reader.
//!
//! ```text
//! # comment
//! [ops]
//! paired a b c a†        # each name gets an adjoint partner `name*`
//! plain x y              # no adjoint
//! selfadjoint i
//! pair x y               # pair two plain names
//!
//! [let]
//! m = a b c              # abbreviation, expanded where used
//!
//! [quiver]
//! strict                 # listed edges are the whole quiver (default: infer the rest)
//! a: v2 -> v1
//!
//! [assume]
//! f1: a a† a - a
//! mp(a, a†)
//! inv(a, g, {1,3})
//! id(i; a:right, b:left)
//! douglas(a* a p ⊆ q*; v1)   # Ran(lhs) ⊆ Ran(rhs); witness name optional
//! hermitian(p q)
//! ep(p q)
//!
//! [workflow]
//! cancel right m witness (1 - m n) m m* conclude (1 - m n) m
//!
//! [claim]
//! f: m† - c† b† a†
//!
//! [options]
//! max_degree = 16
//! max_iterations = 50000
//! max_basis_size = 20000
//! time_budget = 300      # seconds
//! workers = 1
//! closure = on
//! order = a b c          # smallest to largest
//! ```

use std::collections::HashMap;
use std::time::Duration;

use super::{CancellabilityStep, NamedStatement, Problem, Side, Statement};
use crate::error::{Error, Result};
use crate::freealg::{parse_in, ParseContext, Polynomial, Sym};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Ops,
    Let,
    Quiver,
    Assume,
    Workflow,
    Claim,
    Options,
}

struct Reader<'a> {
    problem: Problem,
    defs: HashMap<String, Polynomial>,
    line_no: usize,
    line: &'a str,
}

impl<'a> Reader<'a> {
    /// Character column (1-based) where `part`, a slice of the current line,
    /// starts.
    fn col_of(&self, part: &str) -> usize {
        let start = part.as_ptr() as usize - self.line.as_ptr() as usize;
        self.line[..start].chars().count() + 1
    }

    fn err(&self, part: &str, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line_no, col: self.col_of(part), msg: msg.into() }
    }

    fn expr(&self, text: &str) -> Result<Polynomial> {
        let text = text.trim();
        if text.is_empty() {
            return Err(self.err(text, "expected an expression"));
        }
        parse_in(text, ParseContext::with_defs(&self.problem.table, &self.defs)).map_err(|e| Error::Syntax {
            line: self.line_no,
            col: self.col_of(text) + e.col - 1,
            msg: e.msg,
        })
    }

    fn sym(&self, text: &str) -> Result<Sym> {
        let text = text.trim();
        self.problem.table.lookup(text).ok_or_else(|| self.err(text, format!("'{text}' is not declared")))
    }

    fn ops(&mut self, body: &'a str) -> Result<()> {
        let mut words = body.split_whitespace();
        let kind = words.next().unwrap_or_default();
        let names: Vec<&'a str> = words.collect();
        let table = &mut self.problem.table;
        let res = match kind {
            "paired" => names.iter().try_for_each(|n| table.declare_with_adjoint(n).map(|_| ())),
            "plain" => names.iter().try_for_each(|n| table.declare(n).map(|_| ())),
            "selfadjoint" => names.iter().try_for_each(|n| table.declare_self_adjoint(n).map(|_| ())),
            "pair" => {
                if names.len() != 2 {
                    return Err(self.err(body, "pair needs exactly two names"));
                }
                let (x, y) = (self.sym(names[0])?, self.sym(names[1])?);
                self.problem.table.pair(x, y)
            }
            _ => return Err(self.err(body, format!("unknown declaration '{kind}'"))),
        };
        res.map_err(|e| self.err(body, e.to_string()))
    }

    fn define(&mut self, body: &'a str) -> Result<()> {
        let (name, value) = body.split_once('=').ok_or_else(|| self.err(body, "expected 'name = expression'"))?;
        let name = name.trim();
        if self.problem.table.lookup(name).is_some() || self.defs.contains_key(name) {
            return Err(self.err(name, format!("'{name}' is already defined")));
        }
        let p = self.expr(value)?;
        self.defs.insert(name.to_string(), p);
        Ok(())
    }

    fn quiver(&mut self, body: &'a str) -> Result<()> {
        if body == "strict" {
            self.problem.quiver.strict = true;
            return Ok(());
        }
        if body.starts_with("vertices") {
            return Ok(());
        }
        let (label, ends) = body.split_once(':').ok_or_else(|| self.err(body, "expected 'label: source -> target'"))?;
        let (s, t) = ends.split_once("->").ok_or_else(|| self.err(ends, "expected 'source -> target'"))?;
        let (s, t) = (s.trim(), t.trim());
        if s.is_empty() || t.is_empty() {
            return Err(self.err(ends, "missing vertex name"));
        }
        self.problem.quiver.edges.push((label.trim().to_string(), s.to_string(), t.to_string()));
        Ok(())
    }

    /// Splits `name: body` when the prefix is a plain name.
    fn named(body: &'a str) -> (Option<String>, &'a str) {
        if let Some((head, rest)) = body.split_once(':') {
            let head = head.trim();
            let mut chars = head.chars();
            let plain = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '†' | '~'));
            if plain {
                return (Some(head.to_string()), rest.trim());
            }
        }
        (None, body)
    }

    fn statement(&self, body: &'a str) -> Result<NamedStatement> {
        let (name, body) = Self::named(body);
        let line = self.line_no;
        let call = |m: &str| -> Option<&'a str> {
            body.strip_prefix(m)
                .and_then(|r| r.trim_start().strip_prefix('('))
                .and_then(|r| r.trim_end().strip_suffix(')'))
        };
        let statement = if let Some(args) = call("mp") {
            let a = split_top(args, ',');
            if a.len() != 2 {
                return Err(self.err(args, "mp takes two arguments"));
            }
            Statement::Mp(self.expr(a[0])?, self.expr(a[1])?)
        } else if let Some(args) = call("inv") {
            let a = split_top(args, ',');
            if a.len() != 3 {
                return Err(self.err(args, "inv takes two elements and a set like {1,3}"));
            }
            let set = a[2].trim();
            let inner = set
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| self.err(set, "expected a set like {1,3}"))?;
            let mut which = Vec::new();
            for k in inner.split(',') {
                match k.trim().parse::<u8>() {
                    Ok(k @ 1..=4) => which.push(k),
                    _ => return Err(self.err(k, "Penrose equations are numbered 1 to 4")),
                }
            }
            Statement::Inv(self.expr(a[0])?, self.expr(a[1])?, which)
        } else if let Some(args) = call("id") {
            let (i, rest) = args.split_once(';').unwrap_or((args, ""));
            let mut neighbors = Vec::new();
            for item in rest.split(',').filter(|s| !s.trim().is_empty()) {
                let (x, side) = item.split_once(':').ok_or_else(|| self.err(item, "expected 'name:left' or 'name:right'"))?;
                let side = match side.trim() {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    other => return Err(self.err(side, format!("unknown side '{other}'"))),
                };
                neighbors.push((self.sym(x)?, side));
            }
            Statement::Identity(self.sym(i)?, neighbors)
        } else if let Some(args) = call("douglas") {
            let (rel, witness) = match args.split_once(';') {
                Some((r, w)) => (r, Some(w.trim().to_string())),
                None => (args, None),
            };
            let (lhs, rhs) = if let Some((l, r)) = rel.split_once('⊆').or_else(|| rel.split_once("<=")) {
                (l, r)
            } else if let Some((l, r)) = rel.split_once('⊇').or_else(|| rel.split_once(">=")) {
                (r, l)
            } else {
                return Err(self.err(rel, "expected 'lhs ⊆ rhs'"));
            };
            Statement::Douglas { lhs: self.expr(lhs)?, rhs: self.expr(rhs)?, witness }
        } else if let Some(arg) = call("hermitian") {
            Statement::Hermitian(self.expr(arg)?)
        } else if let Some(arg) = call("ep") {
            Statement::Ep(self.expr(arg)?)
        } else {
            Statement::Poly(self.expr(body)?)
        };
        Ok(NamedStatement { name, line, statement })
    }

    fn workflow(&mut self, body: &'a str) -> Result<()> {
        let rest = body.strip_prefix("cancel").ok_or_else(|| self.err(body, "expected 'cancel left|right ...'"))?;
        let rest = rest.trim_start();
        let (side, rest) = rest.split_once(char::is_whitespace).ok_or_else(|| self.err(rest, "incomplete step"))?;
        let side = match side {
            "left" => Side::Left,
            "right" => Side::Right,
            other => return Err(self.err(side, format!("unknown side '{other}'"))),
        };
        let (element, rest) = rest.split_once(" witness ").ok_or_else(|| self.err(rest, "missing 'witness'"))?;
        let (witness, conclusion) = rest.split_once(" conclude ").ok_or_else(|| self.err(rest, "missing 'conclude'"))?;
        let step = CancellabilityStep {
            side,
            element: self.expr(element)?,
            witness: self.expr(witness)?,
            conclusion: self.expr(conclusion)?,
        };
        self.problem.workflow.push((self.line_no, step));
        Ok(())
    }

    fn option(&mut self, body: &'a str) -> Result<()> {
        let (key, value) = body.split_once('=').ok_or_else(|| self.err(body, "expected 'key = value'"))?;
        let (key, value) = (key.trim(), value.trim());
        let number = || value.parse::<u64>().map_err(|_| self.err(value, format!("'{value}' is not a number")));
        match key {
            "max_degree" => self.problem.options.limits.max_degree = number()? as usize,
            "max_iterations" => self.problem.options.limits.max_iterations = number()? as usize,
            "max_basis_size" => self.problem.options.limits.max_basis_size = number()? as usize,
            "time_budget" => self.problem.options.limits.time_budget = Duration::from_secs(number()?),
            "workers" => self.problem.options.workers = number()? as usize,
            "closure" => {
                self.problem.options.closure = match value {
                    "on" | "true" => true,
                    "off" | "false" => false,
                    _ => return Err(self.err(value, "expected on or off")),
                }
            }
            "order" => self.problem.options.order = value.split_whitespace().map(String::from).collect(),
            _ => return Err(self.err(key, format!("unknown option '{key}'"))),
        }
        Ok(())
    }
}

/// Splits at `sep` outside parentheses and braces.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Reads a problem file. Errors carry line and column.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let mut r = Reader { problem: Problem::default(), defs: HashMap::new(), line_no: 0, line: "" };
    let mut section = Section::None;
    for (k, raw) in text.lines().enumerate() {
        r.line_no = k + 1;
        r.line = raw;
        let body = raw.split_once('#').map_or(raw, |(b, _)| b).trim();
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            section = match name.trim() {
                "ops" => Section::Ops,
                "let" => Section::Let,
                "quiver" => Section::Quiver,
                "assume" => Section::Assume,
                "workflow" => Section::Workflow,
                "claim" => Section::Claim,
                "options" => Section::Options,
                other => return Err(r.err(name, format!("unknown section '{other}'"))),
            };
            continue;
        }
        match section {
            Section::None => return Err(r.err(body, "text before the first section")),
            Section::Ops => r.ops(body)?,
            Section::Let => r.define(body)?,
            Section::Quiver => r.quiver(body)?,
            Section::Assume => {
                let st = r.statement(body)?;
                r.problem.assumptions.push(st);
            }
            Section::Workflow => r.workflow(body)?,
            Section::Claim => {
                let st = r.statement(body)?;
                r.problem.claims.push(st);
            }
            Section::Options => r.option(body)?,
        }
    }
    Ok(r.problem)
}
