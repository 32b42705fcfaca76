use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, VecDeque};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::index::LeadIndex;
use super::obstruction::{all_overlaps, Obstruction};
use super::CompletionLimits;
use crate::freealg::{Polynomial, Rational, Word};

/// What a derivation step multiplies: an original generator or an earlier
/// basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Src {
    Gen(usize),
    Elem(usize),
}

/// `coeff · left · src · right`.
#[derive(Clone, Debug)]
pub(crate) struct Step {
    pub coeff: Rational,
    pub left: Word,
    pub src: Src,
    pub right: Word,
}

impl Step {
    fn unit(src: Src) -> Step {
        Step { coeff: Rational::one(), left: Word::one(), src, right: Word::one() }
    }

    fn scaled(mut self, c: &Rational) -> Step {
        self.coeff *= c;
        self
    }
}

pub(crate) struct Elem {
    /// Monic in the completion; arbitrary when the engine wraps a plain basis.
    pub poly: Polynomial,
    /// `poly = Σ steps`, referring only to generators and lower elements.
    pub deriv: Vec<Step>,
    pub active: bool,
}

impl Elem {
    pub fn lead(&self) -> &(Word, Rational) {
        self.poly.leading().expect("basis elements are nonzero")
    }
}

struct Queued {
    degree: usize,
    serial: u64,
    obs: Obstruction,
}

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        (self.degree, self.serial) == (other.degree, other.serial)
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Queued {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree, self.serial).cmp(&(other.degree, other.serial))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionStats {
    pub obstructions_processed: usize,
    pub zero_reductions: usize,
    pub obstructions_skipped_by_degree: usize,
    pub elements_created: usize,
    pub basis_size: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Complete,
    BudgetExhausted,
    Stopped,
}

/// Obstructions of equal degree processed against one basis snapshot.
const BATCH: usize = 32;

/// Completion state over rank-encoded words. All polynomials here use the
/// natural word order, which equals the monomial order after encoding.
pub(crate) struct Engine {
    pub gens: Vec<Polynomial>,
    pub elems: Vec<Elem>,
    trie: LeadIndex,
    active: Vec<usize>,
    queue: BinaryHeap<Reverse<Queued>>,
    serial: u64,
    pending: VecDeque<(Polynomial, Vec<Step>)>,
    pub stats: CompletionStats,
    truncated: bool,
    max_degree: usize,
}

impl Engine {
    /// Wraps an arbitrary list of nonzero polynomials as reducers, keeping
    /// their indices.
    pub fn from_basis(basis: Vec<Polynomial>) -> Engine {
        let mut e = Engine::empty(Vec::new(), usize::MAX);
        for (k, p) in basis.into_iter().enumerate() {
            if let Some((w, _)) = p.leading() {
                e.trie.insert(w.letters(), k);
            }
            e.elems.push(Elem { poly: p, deriv: Vec::new(), active: true });
            e.active.push(k);
        }
        e
    }

    fn empty(gens: Vec<Polynomial>, max_degree: usize) -> Engine {
        Engine {
            gens,
            elems: Vec::new(),
            trie: LeadIndex::new(),
            active: Vec::new(),
            queue: BinaryHeap::new(),
            serial: 0,
            pending: VecDeque::new(),
            stats: CompletionStats::default(),
            truncated: false,
            max_degree,
        }
    }

    pub fn for_completion(gens: Vec<Polynomial>, max_degree: usize) -> Engine {
        let mut e = Engine::empty(gens, max_degree);
        for (i, g) in e.gens.iter().enumerate() {
            if !g.is_zero() {
                e.pending.push_back((g.clone(), vec![Step::unit(Src::Gen(i))]));
            }
        }
        e
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    /// Full two-sided reduction. Returns the remainder and the steps `s` with
    /// `p = remainder + Σ s`.
    pub fn reduce(&self, p: Polynomial) -> (Polynomial, Vec<Step>) {
        let mut work: BTreeMap<Word, Rational> = p.into_terms().into_iter().collect();
        let mut rem = Vec::new();
        let mut steps = Vec::new();
        while let Some((w, c)) = work.pop_last() {
            let Some(m) = self.trie.best_match(w.letters()) else {
                rem.push((w, c));
                continue;
            };
            let g = &self.elems[m.id].poly;
            let (_, lc) = g.leading().expect("nonzero reducer");
            let q = if lc.is_one() { c } else { c / lc };
            let left = w.subword(0, m.start);
            let right = w.subword(m.start + m.len, w.len());
            let terms = g.terms();
            for (tw, tc) in &terms[..terms.len() - 1] {
                let key = Word::sandwich(left.letters(), tw.letters(), right.letters());
                let delta = &q * tc;
                match work.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            steps.push(Step { coeff: q, left, src: Src::Elem(m.id), right });
        }
        rem.reverse();
        (Polynomial::from_sorted_unchecked(rem), steps)
    }

    /// The S-polynomial of `o` with the two contributing steps.
    pub fn s_polynomial(&self, o: &Obstruction) -> (Polynomial, Vec<Step>) {
        let gi = &self.elems[o.i];
        let gj = &self.elems[o.j];
        let ci = gi.lead().1.recip();
        let cj = gj.lead().1.recip();
        let a = gi.poly.sandwich(&ci, &o.left_i, &o.right_i);
        let b = gj.poly.sandwich(&cj, &o.left_j, &o.right_j);
        let steps = vec![
            Step { coeff: ci, left: o.left_i.clone(), src: Src::Elem(o.i), right: o.right_i.clone() },
            Step { coeff: -cj, left: o.left_j.clone(), src: Src::Elem(o.j), right: o.right_j.clone() },
        ];
        (&a - &b, steps)
    }

    fn reduce_obstruction(&self, o: &Obstruction) -> (Polynomial, Vec<Step>) {
        let (s, mut steps) = self.s_polynomial(o);
        let (r, red) = self.reduce(s);
        steps.extend(red.into_iter().map(|st| st.scaled(&-Rational::one())));
        (r, steps)
    }

    fn insert(&mut self, r: Polynomial, raw: Vec<Step>) {
        let inv = r.leading().expect("nonzero").1.recip();
        let poly = r.scale(&inv);
        let deriv: Vec<Step> = raw.into_iter().map(|s| s.scaled(&inv)).collect();
        let id = self.elems.len();
        let lead = poly.leading().unwrap().0.clone();

        for &k in &self.active {
            if self.elems[k].lead().0.contains(&lead) {
                let old = self.elems[k].lead().0.clone();
                self.trie.remove(old.letters(), k);
                self.elems[k].active = false;
                self.pending.push_back((self.elems[k].poly.clone(), vec![Step::unit(Src::Elem(k))]));
            }
        }
        let elems = &self.elems;
        self.active.retain(|&k| elems[k].active);

        self.elems.push(Elem { poly, deriv, active: true });
        self.trie.insert(lead.letters(), id);
        self.active.push(id);
        self.stats.elements_created += 1;

        for &k in &self.active {
            let other = &self.elems[k].lead().0;
            for o in all_overlaps(id, &lead, k, other, false) {
                if o.degree() > self.max_degree {
                    self.truncated = true;
                    self.stats.obstructions_skipped_by_degree += 1;
                    continue;
                }
                self.serial += 1;
                self.queue.push(Reverse(Queued { degree: o.degree(), serial: self.serial, obs: o }));
            }
        }
    }

    fn drain_pending(&mut self) {
        while let Some((p, steps)) = self.pending.pop_front() {
            let (r, red) = self.reduce(p);
            if r.is_zero() {
                continue;
            }
            let mut raw = steps;
            raw.extend(red.into_iter().map(|st| st.scaled(&-Rational::one())));
            self.insert(r, raw);
        }
    }

    fn next_batch(&mut self) -> Vec<Obstruction> {
        let mut batch = Vec::new();
        let mut degree = None;
        while batch.len() < BATCH {
            let Some(Reverse(top)) = self.queue.peek() else { break };
            if degree.is_some_and(|d| d != top.degree) {
                break;
            }
            let Reverse(q) = self.queue.pop().unwrap();
            if !(self.elems[q.obs.i].active && self.elems[q.obs.j].active) {
                continue;
            }
            degree = Some(q.degree);
            batch.push(q.obs);
        }
        batch
    }

    /// Runs the completion until the queue empties, a limit is hit, or
    /// `on_progress` asks to stop. Results do not depend on `pool`.
    pub fn run(
        &mut self,
        limits: &CompletionLimits,
        pool: Option<&rayon::ThreadPool>,
        mut on_progress: impl FnMut(&Engine) -> bool,
    ) -> Outcome {
        let start = Instant::now();
        let outcome = 'run: {
            self.drain_pending();
            self.stats.basis_size = self.active.len();
            if on_progress(self) {
                break 'run Outcome::Stopped;
            }
            loop {
                if self.queue.is_empty() {
                    break 'run if self.truncated { Outcome::BudgetExhausted } else { Outcome::Complete };
                }
                if self.stats.obstructions_processed >= limits.max_iterations
                    || self.active.len() > limits.max_basis_size
                    || start.elapsed() > limits.time_budget
                {
                    break 'run Outcome::BudgetExhausted;
                }
                let batch = self.next_batch();
                if batch.is_empty() {
                    continue;
                }
                let results: Vec<(Polynomial, Vec<Step>)> = match pool {
                    Some(pool) if batch.len() > 1 => {
                        let this = &*self;
                        pool.install(|| batch.par_iter().map(|o| this.reduce_obstruction(o)).collect())
                    }
                    _ => batch.iter().map(|o| self.reduce_obstruction(o)).collect(),
                };
                self.stats.obstructions_processed += batch.len();
                for (r, mut raw) in results {
                    if r.is_zero() {
                        self.stats.zero_reductions += 1;
                        continue;
                    }
                    let (r2, red) = self.reduce(r);
                    if r2.is_zero() {
                        self.stats.zero_reductions += 1;
                        continue;
                    }
                    raw.extend(red.into_iter().map(|st| st.scaled(&-Rational::one())));
                    self.insert(r2, raw);
                    self.drain_pending();
                }
                self.stats.basis_size = self.active.len();
                if on_progress(self) {
                    break 'run Outcome::Stopped;
                }
            }
        };
        self.stats.basis_size = self.active.len();
        self.stats.elapsed += start.elapsed();
        outcome
    }

    /// Rewrites `Σ top` entirely in terms of generators, merging equal
    /// `(left, generator, right)` triples.
    pub fn expand(&self, top: &[Step]) -> Vec<(Rational, Word, usize, Word)> {
        let mut result: HashMap<(Word, usize, Word), Rational> = HashMap::new();
        let mut contexts: BTreeMap<usize, HashMap<(Word, Word), Rational>> = BTreeMap::new();
        let push = |result: &mut HashMap<(Word, usize, Word), Rational>,
                        contexts: &mut BTreeMap<usize, HashMap<(Word, Word), Rational>>,
                        c: Rational,
                        left: Word,
                        src: Src,
                        right: Word| {
            match src {
                Src::Gen(g) => *result.entry((left, g, right)).or_insert_with(Rational::zero) += c,
                Src::Elem(k) => {
                    *contexts.entry(k).or_default().entry((left, right)).or_insert_with(Rational::zero) += c
                }
            }
        };
        for s in top {
            push(&mut result, &mut contexts, s.coeff.clone(), s.left.clone(), s.src, s.right.clone());
        }
        // derivations only reference lower indices, so the highest pending
        // element never gains new contexts once popped
        while let Some((k, ctxs)) = contexts.pop_last() {
            for ((l, r), c) in ctxs {
                if c.is_zero() {
                    continue;
                }
                for st in &self.elems[k].deriv {
                    push(
                        &mut result,
                        &mut contexts,
                        &c * &st.coeff,
                        l.concat(&st.left),
                        st.src,
                        st.right.concat(&r),
                    );
                }
            }
        }
        let mut out: Vec<(Rational, Word, usize, Word)> = result
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((l, g, r), c)| (c, l, g, r))
            .collect();
        out.sort_by(|a, b| (a.2, &a.1, &a.3).cmp(&(b.2, &b.1, &b.3)));
        out
    }
}
