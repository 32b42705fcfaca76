//! Two-sided reduction with cofactor tracking, overlap enumeration and a
//! bounded completion procedure producing a partial Gröbner basis of a
//! two-sided ideal in the free algebra.

mod engine;
mod index;
mod obstruction;

use std::time::Duration;

use num_traits::One;

pub use engine::CompletionStats;
pub(crate) use engine::{Engine, Outcome, Src, Step};
pub use obstruction::Obstruction;

use crate::freealg::{MonomialOrder, Polynomial, Rational, Word};

/// One summand `coeff · left · basis[index] · right` of a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cofactor {
    pub coeff: Rational,
    pub left: Word,
    pub index: usize,
    pub right: Word,
}

/// A polynomial together with the bookkeeping that produced it:
/// `value = input − Σ coeff · left · basis[index] · right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracedPolynomial {
    pub input: Polynomial,
    pub value: Polynomial,
    pub trace: Vec<Cofactor>,
}

impl TracedPolynomial {
    /// `input − Σ trace − value`, expanded with plain polynomial arithmetic.
    /// Zero exactly when the bookkeeping identity holds.
    pub fn residual(&self, basis: &[Polynomial]) -> Polynomial {
        let mut acc = &self.input - &self.value;
        for t in &self.trace {
            acc = &acc - &basis[t.index].sandwich(&t.coeff, &t.left, &t.right);
        }
        acc
    }

    pub fn holds(&self, basis: &[Polynomial]) -> bool {
        self.residual(basis).is_zero()
    }

    /// Indices of basis elements used by the trace, sorted.
    pub fn used_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.trace.iter().map(|t| t.index).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Bounds for the completion. Ideal membership in the free algebra is
/// undecidable, so every run is bounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionLimits {
    /// Obstructions whose overlap word is longer than this are not processed.
    pub max_degree: usize,
    /// Maximum number of obstructions processed.
    pub max_iterations: usize,
    /// Maximum number of active basis elements.
    pub max_basis_size: usize,
    pub time_budget: Duration,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_degree: 12,
            max_iterations: 50_000,
            max_basis_size: 20_000,
            time_budget: Duration::from_secs(300),
        }
    }
}

impl CompletionLimits {
    pub fn validate(&self) -> crate::Result<()> {
        if self.max_degree == 0
            || self.max_iterations == 0
            || self.max_basis_size == 0
            || self.time_budget.is_zero()
        {
            return Err(crate::Error::Invalid("completion limits must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionStatus {
    /// Every obstruction reduced to zero: the basis is a Gröbner basis.
    Complete,
    /// A bound was hit or some obstruction exceeded `max_degree`.
    BudgetExhausted,
}

fn encode_all(ps: &[Polynomial], ord: &MonomialOrder) -> Vec<Polynomial> {
    ps.iter().map(|p| ord.encode(p)).collect()
}

fn steps_to_cofactors(steps: Vec<Step>, ord: &MonomialOrder) -> Vec<Cofactor> {
    steps
        .into_iter()
        .map(|s| {
            let index = match s.src {
                Src::Elem(k) | Src::Gen(k) => k,
            };
            Cofactor { coeff: s.coeff, left: ord.decode_word(&s.left), index, right: ord.decode_word(&s.right) }
        })
        .collect()
}

/// Fully reduces `p` by `basis` (all nonzero), recording every rewrite step.
///
/// The largest reducible monomial is rewritten first, using the largest
/// leading word that occurs in it, at its leftmost occurrence; among equal
/// leading words the lowest basis index is used.
pub fn reduce(p: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> TracedPolynomial {
    let engine = Engine::from_basis(encode_all(basis, ord));
    let (r, steps) = engine.reduce(ord.encode(p));
    TracedPolynomial { input: p.clone(), value: ord.decode(&r), trace: steps_to_cofactors(steps, ord) }
}

/// All self and pairwise overlaps, including containments, between the
/// leading words of `basis`. Deduplicated, ordered by pair.
pub fn find_obstructions(basis: &[Polynomial], ord: &MonomialOrder) -> Vec<Obstruction> {
    let leads: Vec<Word> = basis
        .iter()
        .map(|p| ord.leading(p).expect("basis elements are nonzero").0.clone())
        .collect();
    let mut out = Vec::new();
    for i in 0..leads.len() {
        for j in i..leads.len() {
            for o in obstruction::all_overlaps(i, &leads[i], j, &leads[j], true) {
                if !out.contains(&o) {
                    out.push(o);
                }
            }
        }
    }
    out
}

/// The difference of the two padded, leading-coefficient-normalized
/// multiples meeting at the obstruction. The trace records both, so
/// `value = −Σ trace`.
pub fn s_polynomial(o: &Obstruction, basis: &[Polynomial], ord: &MonomialOrder) -> TracedPolynomial {
    let side = |k: usize, l: &Word, r: &Word| -> (Polynomial, Rational) {
        let g = &basis[k];
        let inv = ord.leading(g).expect("nonzero").1.recip();
        (g.sandwich(&inv, l, r), inv)
    };
    let (a, ci) = side(o.i, &o.left_i, &o.right_i);
    let (b, cj) = side(o.j, &o.left_j, &o.right_j);
    TracedPolynomial {
        input: Polynomial::zero(),
        value: &a - &b,
        trace: vec![
            Cofactor { coeff: -ci, left: o.left_i.clone(), index: o.i, right: o.right_i.clone() },
            Cofactor { coeff: cj, left: o.left_j.clone(), index: o.j, right: o.right_j.clone() },
        ],
    }
}

/// A finished (or interrupted) completion run.
pub struct Completion {
    engine: Engine,
    ord: MonomialOrder,
    pub status: CompletionStatus,
}

impl Completion {
    /// Active basis elements, monic.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.engine.active().iter().map(|&k| self.ord.decode(&self.engine.elems[k].poly)).collect()
    }

    pub fn len(&self) -> usize {
        self.engine.active().len()
    }

    pub fn is_empty(&self) -> bool {
        self.engine.active().is_empty()
    }

    pub fn stats(&self) -> &CompletionStats {
        &self.engine.stats
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.ord
    }

    /// Basis element `k` expressed in the original generators:
    /// `input` is the element, `value` is zero.
    pub fn traced(&self, k: usize) -> TracedPolynomial {
        let id = self.engine.active()[k];
        let elem = &self.engine.elems[id];
        let trace = self.expand(&[Step {
            coeff: Rational::one(),
            left: Word::one(),
            src: Src::Elem(id),
            right: Word::one(),
        }]);
        TracedPolynomial { input: self.ord.decode(&elem.poly), value: Polynomial::zero(), trace }
    }

    /// Reduces `p` by the basis with the trace rewritten in terms of the
    /// original generators.
    pub fn reduce(&self, p: &Polynomial) -> TracedPolynomial {
        let (r, steps) = self.engine.reduce(self.ord.encode(p));
        TracedPolynomial { input: p.clone(), value: self.ord.decode(&r), trace: self.expand(&steps) }
    }

    fn expand(&self, steps: &[Step]) -> Vec<Cofactor> {
        self.engine
            .expand(steps)
            .into_iter()
            .map(|(coeff, l, g, r)| Cofactor {
                coeff,
                left: self.ord.decode_word(&l),
                index: g,
                right: self.ord.decode_word(&r),
            })
            .collect()
    }
}

/// Bounded completion of `generators` (single worker).
pub fn complete(generators: &[Polynomial], ord: &MonomialOrder, limits: &CompletionLimits) -> Completion {
    complete_with_workers(generators, ord, limits, 1)
}

/// Bounded completion; obstructions of equal degree are reduced on up to
/// `workers` threads. The result does not depend on `workers`.
pub fn complete_with_workers(
    generators: &[Polynomial],
    ord: &MonomialOrder,
    limits: &CompletionLimits,
    workers: usize,
) -> Completion {
    let mut engine = Engine::for_completion(encode_all(generators, ord), limits.max_degree);
    let pool = worker_pool(workers);
    let outcome = engine.run(limits, pool.as_ref(), |_| false);
    let status = match outcome {
        Outcome::Complete => CompletionStatus::Complete,
        _ => CompletionStatus::BudgetExhausted,
    };
    Completion { engine, ord: ord.clone(), status }
}

pub(crate) fn worker_pool(workers: usize) -> Option<rayon::ThreadPool> {
    if workers <= 1 {
        return None;
    }
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{parse, SymbolTable};

    fn werner() -> (SymbolTable, Vec<Polynomial>) {
        let mut t = SymbolTable::new();
        for n in ["a", "a⁻", "b", "b⁻", "i"] {
            t.declare(n).unwrap();
        }
        let f: Vec<Polynomial> = [
            "aa⁻a - a",
            "bb⁻b - b",
            "bb⁻(i - a⁻a) - i + a⁻a",
            "ai - a",
            "ia⁻ - a⁻",
            "ib - b",
            "b⁻i - b⁻",
            "i^2 - i",
        ]
        .iter()
        .map(|s| parse(s, &t).unwrap())
        .collect();
        (t, f)
    }

    #[test]
    fn self_reduction_gives_unit_trace() {
        let (t, _) = werner();
        let f1 = parse("aa⁻a - a", &t).unwrap();
        let ord = MonomialOrder::declaration(&t);
        let r = reduce(&f1, std::slice::from_ref(&f1), &ord);
        assert!(r.value.is_zero());
        assert_eq!(
            r.trace,
            vec![Cofactor { coeff: Rational::one(), left: Word::one(), index: 0, right: Word::one() }]
        );
    }

    #[test]
    fn irreducible_input_is_untouched() {
        let mut t = SymbolTable::new();
        for n in ["a", "b", "c", "d"] {
            t.declare(n).unwrap();
        }
        let ord = MonomialOrder::declaration(&t);
        let ab = parse("a b", &t).unwrap();
        let r = reduce(&ab, &[parse("c d - c", &t).unwrap()], &ord);
        assert_eq!(r.value, ab);
        assert!(r.trace.is_empty());
    }

    #[test]
    fn werner_claim_reduces_to_zero() {
        let (t, f) = werner();
        let ord = MonomialOrder::declaration(&t);
        let claim = parse("abb⁻a⁻ab - ab", &t).unwrap();
        let r = reduce(&claim, &f, &ord);
        assert!(r.holds(&f));
        assert!(r.value.is_zero(), "remainder {:?}", r.value);
        for k in r.used_indices() {
            assert!([0, 1, 2, 5].contains(&k), "unexpected f{}", k + 1);
        }
    }

    #[test]
    fn obstruction_examples() {
        let mut t = SymbolTable::new();
        for n in ["a", "a⁻", "b", "c", "d"] {
            t.declare(n).unwrap();
        }
        let ord = MonomialOrder::declaration(&t);
        let f1 = parse("aa⁻a - a", &t).unwrap();
        let obs = find_obstructions(std::slice::from_ref(&f1), &ord);
        assert_eq!(obs.len(), 1);
        assert_eq!(obs[0].overlap, parse("aa⁻aa⁻a", &t).unwrap().leading().unwrap().0);
        let s = s_polynomial(&obs[0], std::slice::from_ref(&f1), &ord);
        assert!(s.value.is_zero());
        assert!(s.holds(std::slice::from_ref(&f1)));

        let disjoint = [parse("a b - 1", &t).unwrap(), parse("c d - 1", &t).unwrap()];
        assert!(find_obstructions(&disjoint, &ord).is_empty());

        let aba = parse("a b a - a", &t).unwrap();
        let obs = find_obstructions(std::slice::from_ref(&aba), &ord);
        assert_eq!(obs.len(), 1);
        assert_eq!(Polynomial::word(obs[0].overlap.clone()), parse("a b a b a", &t).unwrap());
    }

    #[test]
    fn s_polynomial_of_two_overlapping_rules() {
        let mut t = SymbolTable::new();
        t.declare("a").unwrap();
        t.declare("b").unwrap();
        let ord = MonomialOrder::declaration(&t);
        let basis = [parse("a b - a", &t).unwrap(), parse("b a - b", &t).unwrap()];
        let obs = find_obstructions(&basis, &ord);
        let at_aba = obs
            .iter()
            .find(|o| Polynomial::word(o.overlap.clone()) == parse("a b a", &t).unwrap())
            .unwrap();
        let s = s_polynomial(at_aba, &basis, &ord);
        assert_eq!(s.value, parse("(a b - a) a - a (b a - b)", &t).unwrap());
        assert_eq!(s.value, parse("a b - a a", &t).unwrap());
        assert!(s.holds(&basis));
        for o in &obs {
            let s = s_polynomial(o, &basis, &ord);
            assert!(ord.leading(&s.value).is_none_or(|(w, _)| ord.compare(w, &o.overlap).is_lt()));
        }
    }

    #[test]
    fn completion_examples() {
        let mut t = SymbolTable::new();
        for n in ["a", "a⁻", "x"] {
            t.declare(n).unwrap();
        }
        let ord = MonomialOrder::declaration(&t);
        let limits = CompletionLimits::default();

        let gens = [parse("aa⁻a - a", &t).unwrap(), parse("a⁻aa⁻ - a⁻", &t).unwrap()];
        let c = complete(&gens, &ord, &limits);
        assert_eq!(c.status, CompletionStatus::Complete);
        for k in 0..c.len() {
            assert!(c.traced(k).holds(&gens));
        }

        let gens = [parse("x^2 - x", &t).unwrap()];
        let c = complete(&gens, &ord, &limits);
        assert_eq!(c.status, CompletionStatus::Complete);
        assert_eq!(c.basis(), gens.to_vec());

        let c = complete(&[], &ord, &limits);
        assert_eq!(c.status, CompletionStatus::Complete);
        assert!(c.is_empty());
    }

    #[test]
    fn duplicates_and_zeros_are_dropped() {
        let mut t = SymbolTable::new();
        t.declare("x").unwrap();
        let ord = MonomialOrder::declaration(&t);
        let g = parse("x^2 - x", &t).unwrap();
        let gens = [Polynomial::zero(), g.clone(), g.scale(&Rational::from_integer(3.into()))];
        let c = complete(&gens, &ord, &CompletionLimits::default());
        assert_eq!(c.basis(), vec![g]);
        assert!(c.traced(0).holds(&gens));
    }

    #[test]
    fn worker_count_does_not_change_the_result() {
        let (t, f) = werner();
        let ord = MonomialOrder::declaration(&t);
        let limits = CompletionLimits { max_degree: 8, ..Default::default() };
        let one = complete_with_workers(&f, &ord, &limits, 1);
        let four = complete_with_workers(&f, &ord, &limits, 4);
        assert_eq!(one.basis(), four.basis());
        assert_eq!(one.status, four.status);
    }
}
