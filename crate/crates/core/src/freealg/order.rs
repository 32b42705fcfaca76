use std::cmp::Ordering;

use super::poly::Polynomial;
use super::symbol::{Sym, SymbolTable};
use super::word::Word;

/// Degree-lexicographic order with a total ranking of the indeterminates.
///
/// Words are compared by length first, then letter by letter from the left
/// using the ranking. The rewriting engine works on rank-encoded words, for
/// which this order coincides with the natural [`Word`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    /// `rank[s]` is the position of symbol `s` in the ranking, smallest first.
    rank: Vec<u32>,
    /// Inverse permutation of `rank`.
    by_rank: Vec<Sym>,
}

impl MonomialOrder {
    /// Ranking by declaration order: later declarations are larger.
    pub fn declaration(table: &SymbolTable) -> Self {
        Self::with_ranking(table, &[])
    }

    /// `ranking` lists symbols from smallest to largest. Symbols not listed
    /// rank below all listed ones, in declaration order.
    pub fn with_ranking(table: &SymbolTable, ranking: &[Sym]) -> Self {
        let n = table.len();
        let mut order: Vec<Sym> = (0..n as u32).map(Sym).filter(|s| !ranking.contains(s)).collect();
        for &s in ranking {
            if !order.contains(&s) {
                order.push(s);
            }
        }
        let mut rank = vec![0; n];
        for (r, s) in order.iter().enumerate() {
            rank[s.index()] = r as u32;
        }
        MonomialOrder { rank, by_rank: order }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn ranks(&self, s: Sym) -> bool {
        s.index() < self.rank.len()
    }

    pub fn compare(&self, u: &Word, v: &Word) -> Ordering {
        u.len().cmp(&v.len()).then_with(|| {
            for (a, b) in u.letters().iter().zip(v.letters()) {
                let o = self.rank[a.index()].cmp(&self.rank[b.index()]);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Leading word and coefficient of `p` under this order.
    pub fn leading<'a>(&self, p: &'a Polynomial) -> Option<&'a (Word, super::Rational)> {
        p.terms().iter().max_by(|a, b| self.compare(&a.0, &b.0))
    }

    pub(crate) fn decode_word(&self, w: &Word) -> Word {
        w.map_letters(|s| self.by_rank[s.index()])
    }

    pub(crate) fn encode(&self, p: &Polynomial) -> Polynomial {
        p.map_letters(|s| Sym(self.rank[s.index()]))
    }

    pub(crate) fn decode(&self, p: &Polynomial) -> Polynomial {
        p.map_letters(|s| self.by_rank[s.index()])
    }
}
