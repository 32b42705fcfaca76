use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier of an indeterminate inside one [`SymbolTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Sym(pub u32);

impl Sym {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indeterminate {
    pub id: Sym,
    pub name: String,
    /// Adjoint partner. `Some(id)` marks a self-adjoint indeterminate.
    pub adjoint: Option<Sym>,
}

/// The indeterminates of one problem context, with their adjoint pairing.
///
/// Names are unique. A paired indeterminate `x` created through
/// [`SymbolTable::declare_with_adjoint`] gets a partner displayed as `x*`,
/// which the expression parser reads back as the adjoint of `x`.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    syms: Vec<Indeterminate>,
    by_name: HashMap<String, Sym>,
    fresh_counter: u32,
}

/// Characters allowed in indeterminate names besides alphanumerics.
pub(crate) fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '†' | '⁻' | '~' | '\'' | '\u{0303}')
}

pub(crate) fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Indeterminate> {
        self.syms.iter()
    }

    pub fn get(&self, s: Sym) -> &Indeterminate {
        &self.syms[s.index()]
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.syms[s.index()].name
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.by_name.get(name).copied()
    }

    pub fn adjoint_of(&self, s: Sym) -> Option<Sym> {
        self.syms[s.index()].adjoint
    }

    fn check_name(name: &str) -> Result<()> {
        let mut chars = name.chars();
        let ok = chars.next().is_some_and(is_name_start) && chars.all(is_name_char);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidName(name.to_string()))
        }
    }

    fn push(&mut self, name: String, adjoint: Option<Sym>) -> Result<Sym> {
        if self.by_name.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        let id = Sym(self.syms.len() as u32);
        self.by_name.insert(name.clone(), id);
        self.syms.push(Indeterminate { id, name, adjoint });
        Ok(id)
    }

    /// Declares an indeterminate without an adjoint.
    pub fn declare(&mut self, name: &str) -> Result<Sym> {
        Self::check_name(name)?;
        self.push(name.to_string(), None)
    }

    /// Declares an indeterminate equal to its own adjoint.
    pub fn declare_self_adjoint(&mut self, name: &str) -> Result<Sym> {
        let s = self.declare(name)?;
        self.syms[s.index()].adjoint = Some(s);
        Ok(s)
    }

    /// Declares `name` together with a fresh partner `name*` for its adjoint.
    pub fn declare_with_adjoint(&mut self, name: &str) -> Result<(Sym, Sym)> {
        let s = self.declare(name)?;
        let t = self.push(format!("{name}*"), Some(s))?;
        self.syms[s.index()].adjoint = Some(t);
        Ok((s, t))
    }

    /// Pairs two already declared, currently unpaired indeterminates.
    pub fn pair(&mut self, x: Sym, y: Sym) -> Result<()> {
        for s in [x, y] {
            if self.syms[s.index()].adjoint.is_some() {
                return Err(Error::AlreadyPaired(self.name(s).to_string()));
            }
        }
        self.syms[x.index()].adjoint = Some(y);
        self.syms[y.index()].adjoint = Some(x);
        Ok(())
    }

    /// Declares a fresh paired indeterminate `{prefix}{k}` whose name does not
    /// clash with anything declared so far.
    pub fn fresh_with_adjoint(&mut self, prefix: &str) -> (Sym, Sym) {
        loop {
            self.fresh_counter += 1;
            let name = format!("{prefix}{}", self.fresh_counter);
            if self.lookup(&name).is_none() && self.lookup(&format!("{name}*")).is_none() {
                return self.declare_with_adjoint(&name).expect("fresh name is unused");
            }
        }
    }

    /// Declares a fresh indeterminate without adjoint.
    pub fn fresh(&mut self, prefix: &str) -> Sym {
        loop {
            self.fresh_counter += 1;
            let name = format!("{prefix}{}", self.fresh_counter);
            if self.lookup(&name).is_none() {
                return self.declare(&name).expect("fresh name is unused");
            }
        }
    }

    /// Longest declared name that is a prefix of `s` (names never contain `*`).
    pub(crate) fn longest_prefix<'a>(&self, s: &'a str) -> Option<(Sym, &'a str)> {
        let mut best = None;
        for (i, c) in s.char_indices() {
            let end = i + c.len_utf8();
            if let Some(&sym) = self.by_name.get(&s[..end]) {
                best = Some((sym, &s[end..]));
            }
        }
        best
    }
}
