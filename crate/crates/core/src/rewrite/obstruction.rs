use crate::freealg::{Sym, Word};

/// An ambiguity between two leading words: both, padded on the left and
/// right, equal `overlap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Obstruction {
    pub i: usize,
    pub j: usize,
    pub overlap: Word,
    pub left_i: Word,
    pub right_i: Word,
    pub left_j: Word,
    pub right_j: Word,
}

impl Obstruction {
    pub fn degree(&self) -> usize {
        self.overlap.len()
    }
}

/// Paddings `(left_i, right_i, left_j, right_j)` with `overlap` length.
pub(crate) type Padding = (usize, usize, usize, usize);

/// Proper overlaps where a nonempty suffix of `a` equals a prefix of `b`,
/// neither word being covered entirely. Returned as `(left_a, right_a,
/// left_b, right_b)` lengths; the overlap word is `a · b[t..]`.
pub(crate) fn suffix_prefix(a: &[Sym], b: &[Sym]) -> Vec<Padding> {
    let mut out = Vec::new();
    let max = a.len().min(b.len());
    for t in 1..max {
        if a[a.len() - t..] == b[..t] {
            out.push((0, b.len() - t, a.len() - t, 0));
        }
    }
    out
}

/// Every position where `inner` occurs as a factor of `outer`.
pub(crate) fn occurrences(outer: &[Sym], inner: &[Sym]) -> Vec<usize> {
    if inner.len() > outer.len() {
        return Vec::new();
    }
    (0..=outer.len() - inner.len()).filter(|&p| outer[p..p + inner.len()] == *inner).collect()
}

/// All overlaps between leading words `a` (of element `i`) and `b` (of
/// element `j`), including containments. For `i == j` only proper self
/// overlaps are produced.
pub(crate) fn all_overlaps(i: usize, a: &Word, j: usize, b: &Word, containment: bool) -> Vec<Obstruction> {
    let (al, bl) = (a.letters(), b.letters());
    let mut out = Vec::new();
    let mk = |i: usize, j: usize, word: Word, li: Word, ri: Word, lj: Word, rj: Word| Obstruction {
        i,
        j,
        overlap: word,
        left_i: li,
        right_i: ri,
        left_j: lj,
        right_j: rj,
    };
    for (_, _, lb, _) in suffix_prefix(al, bl) {
        let t = al.len() - lb;
        let word = a.concat(&b.subword(t, bl.len()));
        out.push(mk(i, j, word, Word::one(), b.subword(t, bl.len()), a.subword(0, lb), Word::one()));
    }
    if i != j {
        for (_, _, la, _) in suffix_prefix(bl, al) {
            let t = bl.len() - la;
            let word = b.concat(&a.subword(t, al.len()));
            out.push(mk(i, j, word, b.subword(0, la), Word::one(), Word::one(), a.subword(t, al.len())));
        }
        if containment {
            for p in occurrences(al, bl) {
                out.push(mk(
                    i,
                    j,
                    a.clone(),
                    Word::one(),
                    Word::one(),
                    a.subword(0, p),
                    a.subword(p + bl.len(), al.len()),
                ));
            }
            if al != bl {
                for p in occurrences(bl, al) {
                    out.push(mk(
                        i,
                        j,
                        b.clone(),
                        b.subword(0, p),
                        b.subword(p + al.len(), bl.len()),
                        Word::one(),
                        Word::one(),
                    ));
                }
            }
        }
    }
    out
}
