use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::freealg::{render, Polynomial, Rational, SymbolTable, Word};

/// `left · assumptions[index] · right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub left: Polynomial,
    pub index: usize,
    pub right: Polynomial,
}

/// A two-sided cofactor representation `claim = Σ left · assumption · right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub claim: Polynomial,
    pub assumptions: Vec<Polynomial>,
    /// Display names of the assumptions, parallel to `assumptions`.
    pub names: Vec<String>,
    pub summands: Vec<Summand>,
    /// Every cofactor coefficient is an integer, so the representation holds
    /// in any ring.
    pub integral: bool,
}

impl Certificate {
    /// Builds a certificate, computing the integrality flag from the cofactors.
    pub fn new(claim: Polynomial, assumptions: Vec<Polynomial>, names: Vec<String>, summands: Vec<Summand>) -> Self {
        let integral = summands.iter().all(|s| s.left.is_integral() && s.right.is_integral());
        Certificate { claim, assumptions, names, summands, integral }
    }

    /// Names `f1, f2, …` for anonymous assumption lists.
    pub fn default_names(n: usize) -> Vec<String> {
        (1..=n).map(|k| format!("f{k}")).collect()
    }

    pub fn used_indices(&self) -> BTreeSet<usize> {
        self.summands.iter().map(|s| s.index).collect()
    }

    /// Number of `(word, assumption, word)` products after expanding every
    /// cofactor into monomials.
    pub fn term_count(&self) -> usize {
        self.summands.iter().map(|s| s.left.len() * s.right.len()).sum()
    }

    /// Scans every cofactor coefficient.
    pub fn has_integer_cofactors(&self) -> bool {
        self.summands
            .iter()
            .flat_map(|s| s.left.terms().iter().chain(s.right.terms()))
            .all(|(_, c)| c.is_integer())
    }
}

/// Why a certificate fails to check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invalid {
    IndexOutOfRange { summand: usize, index: usize },
    IntegralFlagMismatch { stated: bool },
    /// The expansion and the claim differ at `word` (largest such word).
    Discrepancy { word: Word, expected: Rational, found: Rational },
}

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invalid::IndexOutOfRange { summand, index } => {
                write!(f, "summand {summand} references missing assumption {index}")
            }
            Invalid::IntegralFlagMismatch { stated } => {
                write!(f, "integral flag says {stated} but the cofactors disagree")
            }
            Invalid::Discrepancy { word, expected, found } => {
                write!(f, "coefficient of {word:?}: claim has {expected}, expansion has {found}")
            }
        }
    }
}

impl Invalid {
    /// As the `Display` form, with the word spelled out in `table`'s names.
    pub fn describe(&self, table: &SymbolTable) -> String {
        match self {
            Invalid::Discrepancy { word, expected, found } => format!(
                "coefficient of {}: claim has {expected}, expansion has {found}",
                render(&Polynomial::word(word.clone()), table)
            ),
            other => other.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Invalid),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks a certificate by expanding every summand and comparing with the
/// claim. Independent of how the certificate was found.
pub fn verify_certificate(c: &Certificate) -> Verdict {
    let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
    for (k, s) in c.summands.iter().enumerate() {
        let Some(a) = c.assumptions.get(s.index) else {
            return Verdict::Invalid(Invalid::IndexOutOfRange { summand: k, index: s.index });
        };
        for (lw, lc) in s.left.terms() {
            for (aw, ac) in a.terms() {
                let la = lc * ac;
                for (rw, rc) in s.right.terms() {
                    let w = Word::sandwich(lw.letters(), aw.letters(), rw.letters());
                    *acc.entry(w).or_insert_with(Rational::zero) += &la * rc;
                }
            }
        }
    }
    for (w, c) in c.claim.terms() {
        *acc.entry(w.clone()).or_insert_with(Rational::zero) -= c;
    }
    if let Some((w, diff)) = acc.iter().rev().find(|(_, d)| !d.is_zero()) {
        let expected = c.claim.coeff(w);
        let found = &expected + diff;
        return Verdict::Invalid(Invalid::Discrepancy { word: w.clone(), expected, found });
    }
    if c.integral != c.has_integer_cofactors() {
        return Verdict::Invalid(Invalid::IntegralFlagMismatch { stated: c.integral });
    }
    Verdict::Valid
}

/// Canonical form: expands cofactors into monomial products, merges equal
/// `(left word, assumption, right word)` triples, drops zeros and regroups
/// by `(assumption, right word)`. Validity is preserved; the result is a
/// fixed point.
pub fn minimize_certificate(c: &Certificate) -> Certificate {
    let mut triples: BTreeMap<(usize, Word, Word), Rational> = BTreeMap::new();
    for s in &c.summands {
        for (lw, lc) in s.left.terms() {
            for (rw, rc) in s.right.terms() {
                *triples.entry((s.index, rw.clone(), lw.clone())).or_insert_with(Rational::zero) += lc * rc;
            }
        }
    }
    let mut grouped: BTreeMap<(usize, Word), Vec<(Word, Rational)>> = BTreeMap::new();
    for ((i, rw, lw), coeff) in triples {
        if !coeff.is_zero() {
            grouped.entry((i, rw)).or_default().push((lw, coeff));
        }
    }
    let summands = grouped
        .into_iter()
        .map(|((index, rw), lefts)| Summand { left: Polynomial::from_terms(lefts), index, right: Polynomial::word(rw) })
        .collect();
    Certificate::new(c.claim.clone(), c.assumptions.clone(), c.names.clone(), summands)
}
