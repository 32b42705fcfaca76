use crate::freealg::Sym;

/// Trie over leading words, used to find which leading words occur as
/// factors of a monomial.
#[derive(Clone, Debug, Default)]
pub(crate) struct LeadIndex {
    nodes: Vec<Node>,
}

#[derive(Clone, Debug, Default)]
struct Node {
    children: Vec<(Sym, u32)>,
    terminal: Option<usize>,
}

/// A leading word found inside a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Match {
    pub id: usize,
    pub start: usize,
    pub len: usize,
}

impl LeadIndex {
    pub fn new() -> Self {
        LeadIndex { nodes: vec![Node::default()] }
    }

    fn child(&self, node: usize, s: Sym) -> Option<usize> {
        self.nodes[node].children.iter().find(|(c, _)| *c == s).map(|&(_, n)| n as usize)
    }

    /// Registers `word` as the leading word of `id`. If the word is already
    /// registered the lower id wins.
    pub fn insert(&mut self, word: &[Sym], id: usize) {
        let mut node = 0;
        for &s in word {
            node = match self.child(node, s) {
                Some(n) => n,
                None => {
                    let n = self.nodes.len();
                    self.nodes.push(Node::default());
                    self.nodes[node].children.push((s, n as u32));
                    n
                }
            };
        }
        let t = &mut self.nodes[node].terminal;
        *t = Some(t.map_or(id, |old| old.min(id)));
    }

    pub fn remove(&mut self, word: &[Sym], id: usize) {
        let mut node = 0;
        for &s in word {
            match self.child(node, s) {
                Some(n) => node = n,
                None => return,
            }
        }
        if self.nodes[node].terminal == Some(id) {
            self.nodes[node].terminal = None;
        }
    }

    /// Chooses the reducer for monomial `w`: the largest matching leading word
    /// (degree-lexicographic on the encoded letters), at its leftmost
    /// occurrence.
    pub fn best_match(&self, w: &[Sym]) -> Option<Match> {
        let mut best: Option<Match> = None;
        let better = |m: &Match, b: &Match| -> bool {
            if m.len != b.len {
                return m.len > b.len;
            }
            match w[m.start..m.start + m.len].cmp(&w[b.start..b.start + b.len]) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => m.start < b.start,
            }
        };
        for start in 0..=w.len() {
            let mut node = 0;
            let mut depth = 0;
            loop {
                if let Some(id) = self.nodes[node].terminal {
                    let m = Match { id, start, len: depth };
                    if best.as_ref().is_none_or(|b| better(&m, b)) {
                        best = Some(m);
                    }
                }
                if start + depth == w.len() {
                    break;
                }
                match self.child(node, w[start + depth]) {
                    Some(n) => {
                        node = n;
                        depth += 1;
                    }
                    None => break,
                }
            }
        }
        best
    }

    /// True when some registered word occurs in `w`.
    #[cfg(test)]
    pub fn divides(&self, w: &[Sym]) -> bool {
        (0..=w.len()).any(|start| {
            let mut node = 0;
            let mut depth = 0;
            loop {
                if self.nodes[node].terminal.is_some() {
                    return true;
                }
                if start + depth == w.len() {
                    return false;
                }
                match self.child(node, w[start + depth]) {
                    Some(n) => {
                        node = n;
                        depth += 1;
                    }
                    None => return false,
                }
            }
        })
    }
}
