use std::path::Path;

use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, Summand};
use crate::error::{Error, Result};
use crate::freealg::{parse, render, SymbolTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndeterminateEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjoint: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedExpr {
    pub name: String,
    pub expr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandEntry {
    pub left: String,
    pub assumption: String,
    pub right: String,
}

/// On-disk certificate: every polynomial is stored as an expression string
/// over the listed indeterminates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub indeterminates: Vec<IndeterminateEntry>,
    pub claim: String,
    pub assumptions: Vec<NamedExpr>,
    pub summands: Vec<SummandEntry>,
    pub integral: bool,
}

impl CertificateFile {
    pub fn from_certificate(c: &Certificate, table: &SymbolTable) -> Self {
        let indeterminates = table
            .iter()
            .map(|x| IndeterminateEntry { name: x.name.clone(), adjoint: x.adjoint.map(|a| table.name(a).to_string()) })
            .collect();
        CertificateFile {
            indeterminates,
            claim: render(&c.claim, table),
            assumptions: c
                .assumptions
                .iter()
                .zip(&c.names)
                .map(|(a, n)| NamedExpr { name: n.clone(), expr: render(a, table) })
                .collect(),
            summands: c
                .summands
                .iter()
                .map(|s| SummandEntry {
                    left: render(&s.left, table),
                    assumption: c.names[s.index].clone(),
                    right: render(&s.right, table),
                })
                .collect(),
            integral: c.integral,
        }
    }

    /// Rebuilds the symbol table from the declaration list.
    pub fn symbol_table(&self) -> Result<SymbolTable> {
        let mut t = SymbolTable::new();
        for e in &self.indeterminates {
            if t.lookup(&e.name).is_some() {
                continue;
            }
            match e.adjoint.as_deref() {
                None => {
                    t.declare(&e.name)?;
                }
                Some(a) if a == e.name => {
                    t.declare_self_adjoint(&e.name)?;
                }
                Some(a) if a == format!("{}*", e.name) => {
                    t.declare_with_adjoint(&e.name)?;
                }
                Some(a) if e.name.ends_with('*') && e.name[..e.name.len() - 1] == *a => {
                    t.declare_with_adjoint(a)?;
                }
                Some(a) => {
                    let x = t.declare(&e.name)?;
                    let y = match t.lookup(a) {
                        Some(y) => y,
                        None => t.declare(a)?,
                    };
                    t.pair(x, y)?;
                }
            }
        }
        Ok(t)
    }

    /// Parses every expression. The stated integrality flag is kept as is so
    /// that verification can compare it with the cofactors.
    pub fn to_certificate(&self) -> Result<(SymbolTable, Certificate)> {
        let table = self.symbol_table()?;
        let p = |s: &str| parse(s, &table).map_err(Error::from);
        let claim = p(&self.claim)?;
        let mut assumptions = Vec::new();
        let mut names = Vec::new();
        for a in &self.assumptions {
            if names.contains(&a.name) {
                return Err(Error::DuplicateName(a.name.clone()));
            }
            assumptions.push(p(&a.expr)?);
            names.push(a.name.clone());
        }
        let mut summands = Vec::new();
        for s in &self.summands {
            let index = names
                .iter()
                .position(|n| *n == s.assumption)
                .ok_or_else(|| Error::Invalid(format!("summand references unknown assumption '{}'", s.assumption)))?;
            summands.push(Summand { left: p(&s.left)?, index, right: p(&s.right)? });
        }
        let cert = Certificate { claim, assumptions, names, summands, integral: self.integral };
        Ok((table, cert))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}
