use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::symbol::{Sym, SymbolTable};
use super::word::Word;
use super::Rational;
use crate::error::{Error, Result};

/// A noncommutative polynomial with rational coefficients.
///
/// Terms are kept sorted ascending by the natural [`Word`] order with no
/// zero coefficients and no repeated words, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Polynomial {
    terms: Vec<(Word, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Word::one(), c)
    }

    pub fn monomial(w: Word, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(w, c)] }
        }
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, Rational::one())
    }

    pub fn var(s: Sym) -> Self {
        Self::word(Word::letter(s))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(it: I) -> Self {
        let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
        for (w, c) in it {
            if c.is_zero() {
                continue;
            }
            match acc.entry(w) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Polynomial { terms: acc.into_iter().collect() }
    }

    /// Terms must already be sorted ascending, deduplicated and nonzero.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Word, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Word, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Word, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.last().map(|(w, _)| w.len())
    }

    /// Largest term under the natural word order.
    pub fn leading(&self) -> Option<&(Word, Rational)> {
        self.terms.last()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        match self.terms.binary_search_by(|(v, _)| v.cmp(w)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Word::one())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect() }
    }

    /// `left · self · right` for words `left`, `right` and a scalar.
    pub fn sandwich(&self, c: &Rational, left: &Word, right: &Word) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        // padding with fixed words preserves the word order, so the result stays sorted
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, d)| (Word::sandwich(left.letters(), w.letters(), right.letters()), d * c))
                .collect(),
        }
    }

    /// Letters occurring anywhere in the polynomial, sorted.
    pub fn letters(&self) -> Vec<Sym> {
        let mut v: Vec<Sym> = self.terms.iter().flat_map(|(w, _)| w.letters().iter().copied()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn map_letters(&self, f: impl Fn(Sym) -> Sym) -> Polynomial {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.map_letters(&f), c.clone())))
    }

    /// Applies the involution: reverses every word and replaces each letter
    /// by its adjoint partner. Coefficients are fixed.
    pub fn adjoint(&self, table: &SymbolTable) -> Result<Polynomial> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            let mut letters = Vec::with_capacity(w.len());
            for &s in w.letters().iter().rev() {
                let a = table
                    .adjoint_of(s)
                    .ok_or_else(|| Error::NoAdjoint(table.name(s).to_string()))?;
                letters.push(a);
            }
            out.push((Word::from_letters(letters), c.clone()));
        }
        Ok(Self::from_terms(out))
    }

    /// Ring homomorphism sending each bound indeterminate to its image;
    /// unbound letters map to themselves.
    pub fn substitute(&self, bindings: &HashMap<Sym, Polynomial>) -> Polynomial {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut acc = Polynomial::zero();
        for (w, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for &s in w.letters() {
                term = match bindings.get(&s) {
                    Some(p) => &term * p,
                    None => &term * &Polynomial::var(s),
                };
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Exact right division: returns `z` with `z · divisor = self`, if the
    /// leading-term division algorithm finds one.
    pub fn right_divide(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (dw, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((w, c)) = rem.leading().cloned() {
            let k = w.len().checked_sub(dw.len())?;
            if w.letters()[k..] != *dw.letters() {
                return None;
            }
            let q = Polynomial::monomial(w.subword(0, k), c / dc);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }

    /// Exact left division: returns `z` with `divisor · z = self`.
    pub fn left_divide(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (dw, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((w, c)) = rem.leading().cloned() {
            if w.len() < dw.len() || w.letters()[..dw.len()] != *dw.letters() {
                return None;
            }
            let q = Polynomial::monomial(w.subword(dw.len(), w.len()), c / dc);
            rem = &rem - &(divisor * &q);
            quot = &quot + &q;
        }
        Some(quot)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    /// Integer power.
    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

fn merge(a: &[(Word, Rational)], b: &[(Word, Rational)], negate_b: bool) -> Polynomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let c = if negate_b { -b[j].1.clone() } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for (w, c) in &b[j..] {
        out.push((w.clone(), if negate_b { -c.clone() } else { c.clone() }));
    }
    Polynomial { terms: out }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut prods = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (u, c) in &self.terms {
            for (v, d) in &rhs.terms {
                prods.push((u.concat(v), c * d));
            }
        }
        Polynomial::from_terms(prods)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
