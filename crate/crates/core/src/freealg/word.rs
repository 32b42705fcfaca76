use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::symbol::Sym;

/// A monomial of the free algebra: a finite sequence of letters.
///
/// The empty word is the monomial `1`. The derived ordering compares length
/// first and then letters left to right by id, i.e. degree-lexicographic with
/// declaration order as ranking.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub(crate) SmallVec<[Sym; 12]>);

impl Word {
    pub fn one() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(s: Sym) -> Self {
        let mut v = SmallVec::new();
        v.push(s);
        Word(v)
    }

    pub fn from_letters<I: IntoIterator<Item = Sym>>(it: I) -> Self {
        Word(it.into_iter().collect())
    }

    pub fn letters(&self) -> &[Sym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = SmallVec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `left · self · right` in one allocation.
    pub fn sandwich(left: &[Sym], mid: &[Sym], right: &[Sym]) -> Word {
        let mut v = SmallVec::with_capacity(left.len() + mid.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(mid);
        v.extend_from_slice(right);
        Word(v)
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(SmallVec::from_slice(&self.0[start..end]))
    }

    /// Leftmost position where `factor` occurs in `self`.
    pub fn find(&self, factor: &Word) -> Option<usize> {
        find_factor(&self.0, &factor.0)
    }

    pub fn contains(&self, factor: &Word) -> bool {
        self.find(factor).is_some()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn map_letters(&self, f: impl Fn(Sym) -> Sym) -> Word {
        Word(self.0.iter().map(|&s| f(s)).collect())
    }
}

pub(crate) fn find_factor(hay: &[Sym], needle: &[Sym]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|s| s.0.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
