//! Property checks shared by the proptest suite and the acceptance gate.
//!
//! Every check compares library output against a computation done here with
//! plain arithmetic, not against another library routine.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashMap;
use std::path::PathBuf;

use num_traits::{One, Zero};
use opcert::certify::{certify_with, verify_certificate, Certificate, ClaimOutcome, CertifyOptions, Verdict};
use opcert::freealg::{parse, rat, render, MonomialOrder, Polynomial, Rational, Sym, SymbolTable, Word};
use opcert::matcheck::{evaluate, mp_inverse, penrose_check, RatMatrix, Realization};
use opcert::quiver::{compatible, infer_signatures, Edge, LabelledQuiver};
use opcert::rewrite::{reduce, CompletionLimits};
use opcert::statements::{involution_closure, parse_problem, translate};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub type Check = Result<(), TestCaseError>;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

// ---------------------------------------------------------------------------
// generators

/// Raw polynomial: `(letters, coefficient)` pairs.
pub type RawPoly = Vec<(Vec<u32>, i64)>;

pub fn coeff() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

pub fn raw_poly(letters: u32, min_len: usize, max_len: usize, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec(0..letters, min_len..=max_len), coeff()), 1..=max_terms)
}

pub fn build(raw: &RawPoly) -> Polynomial {
    Polynomial::from_terms(
        raw.iter().map(|(w, c)| (Word::from_letters(w.iter().map(|&s| Sym(s))), rat(*c, 1))),
    )
}

pub fn word(raw: &[u32]) -> Word {
    Word::from_letters(raw.iter().map(|&s| Sym(s)))
}

pub fn plain_table(n: usize) -> SymbolTable {
    let mut t = SymbolTable::new();
    for k in 0..n {
        t.declare(&["x", "y", "z", "w"][k]).unwrap();
    }
    t
}

/// `x, x*, y, y*`: symbols 0..4.
pub fn paired_table() -> SymbolTable {
    let mut t = SymbolTable::new();
    t.declare_with_adjoint("x").unwrap();
    t.declare_with_adjoint("y").unwrap();
    t
}

fn sandwich(l: &Polynomial, g: &Polynomial, r: &Polynomial) -> Polynomial {
    &(l * g) * r
}

/// Σ left · g · right expanded with ring arithmetic.
pub fn expand(c: &Certificate) -> Polynomial {
    c.summands
        .iter()
        .fold(Polynomial::zero(), |acc, s| &acc + &sandwich(&s.left, &c.assumptions[s.index], &s.right))
}

// ---------------------------------------------------------------------------
// reduction and certification

/// `input = Σ coeff · left · g · right + value`, and `value` has no term
/// divisible by a leading word of the basis.
pub fn check_trace_identity(gens: &[RawPoly], p: &RawPoly) -> Check {
    let t = plain_table(3);
    let ord = MonomialOrder::declaration(&t);
    let basis: Vec<Polynomial> = gens.iter().map(build).filter(|g| !g.is_zero()).collect();
    let p = build(p);
    let r = reduce(&p, &basis, &ord);
    let mut acc = r.value.clone();
    for s in &r.trace {
        let l = Polynomial::monomial(s.left.clone(), s.coeff.clone());
        acc = &acc + &sandwich(&l, &basis[s.index], &Polynomial::word(s.right.clone()));
    }
    prop_assert_eq!(&acc, &p, "trace does not add up for {}", render(&p, &t));
    let leads: Vec<Word> = basis.iter().map(|g| ord.leading(g).unwrap().0.clone()).collect();
    for (w, _) in r.value.terms() {
        for lw in &leads {
            prop_assert!(!w.contains(lw), "remainder term {:?} is divisible by {:?}", w, lw);
        }
    }
    Ok(())
}

/// Homogeneous generators of one degree and a member built from summands of
/// one total degree; `(generator, left, right, coefficient)`.
pub type Member = (Vec<RawPoly>, Vec<(usize, Vec<u32>, Vec<u32>, i64)>);

pub fn homogeneous_member() -> impl Strategy<Value = Member> {
    (2usize..=3, 0usize..=3).prop_flat_map(|(d, e)| {
        let gens = prop::collection::vec(raw_poly(3, d, d, 3), 1..=3);
        let summand = (0usize..3, 0..=e, prop::collection::vec(0u32..3, e), coeff())
            .prop_map(move |(g, k, letters, c)| (g, letters[..k].to_vec(), letters[k..].to_vec(), c));
        (gens, prop::collection::vec(summand, 1..=4))
    })
}

/// A member of a homogeneous ideal of degree at most `max_degree` is found by
/// a completion truncated at that degree, and the certificate checks out.
pub fn check_member_certified(m: &Member) -> Check {
    let t = plain_table(3);
    let gens: Vec<Polynomial> = m.0.iter().map(build).collect();
    let mut claim = Polynomial::zero();
    let mut degree = 0;
    for (g, l, r, c) in &m.1 {
        let g = &gens[g % gens.len()];
        let term = sandwich(&Polynomial::monomial(word(l), rat(*c, 1)), g, &Polynomial::word(word(r)));
        degree = degree.max(l.len() + r.len() + g.degree().unwrap_or(0));
        claim = &claim + &term;
    }
    if gens.iter().any(Polynomial::is_zero) {
        return Ok(());
    }
    let limits = CompletionLimits { max_degree: degree.max(2), max_iterations: 1_000_000, ..Default::default() };
    let opts = CertifyOptions { limits, ..Default::default() };
    let report = certify_with(&gens, &[claim.clone()], &MonomialOrder::declaration(&t), &opts).unwrap();
    match &report.claims[0] {
        ClaimOutcome::Certified(c) => {
            prop_assert_eq!(verify_certificate(c), Verdict::Valid);
            prop_assert_eq!(&expand(c), &claim);
            let integral = c.summands.iter().all(|s| s.left.is_integral() && s.right.is_integral());
            prop_assert_eq!(c.integral, integral);
            Ok(())
        }
        other => Err(TestCaseError::fail(format!("member {} not certified: {other:?}", render(&claim, &t)))),
    }
}

/// Whatever the solver certifies, on arbitrary inputs and tight limits,
/// expands to the claim.
pub fn check_solver_outputs_verify(gens: &[RawPoly], claims: &[RawPoly]) -> Check {
    let t = plain_table(3);
    let gens: Vec<Polynomial> = gens.iter().map(build).filter(|g| !g.is_zero()).collect();
    let claims: Vec<Polynomial> = claims.iter().map(build).collect();
    let limits = CompletionLimits { max_degree: 5, max_iterations: 300, ..Default::default() };
    let opts = CertifyOptions { limits, ..Default::default() };
    let report = certify_with(&gens, &claims, &MonomialOrder::declaration(&t), &opts).unwrap();
    for (claim, outcome) in claims.iter().zip(&report.claims) {
        match outcome {
            ClaimOutcome::Certified(c) => {
                prop_assert_eq!(verify_certificate(c), Verdict::Valid);
                prop_assert_eq!(&expand(c), claim);
                let integral = c.summands.iter().all(|s| s.left.is_integral() && s.right.is_integral());
                prop_assert_eq!(c.integral, integral);
            }
            ClaimOutcome::Rejected(why) => return Err(TestCaseError::fail(format!("rejected: {why}"))),
            _ => {}
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// algebra

pub fn check_adjoint_laws(p: &RawPoly, q: &RawPoly, c: i64) -> Check {
    let t = paired_table();
    let (p, q) = (build(p), build(q));
    let star = |f: &Polynomial| f.adjoint(&t).unwrap();
    prop_assert_eq!(star(&(&p * &q)), &star(&q) * &star(&p));
    prop_assert_eq!(star(&(&p + &q)), &star(&p) + &star(&q));
    prop_assert_eq!(star(&star(&p)), p.clone());
    prop_assert_eq!(star(&p.scale(&rat(c, 1))), star(&p).scale(&rat(c, 1)));
    // letter by letter: reverse each word and swap partners
    let partner = |s: u32| s ^ 1;
    let manual = Polynomial::from_terms(p.terms().iter().map(|(w, k)| {
        (Word::from_letters(w.letters().iter().rev().map(|s| Sym(partner(s.0)))), k.clone())
    }));
    prop_assert_eq!(star(&p), manual);
    Ok(())
}

pub fn check_ring_axioms(p: &RawPoly, q: &RawPoly, r: &RawPoly) -> Check {
    let (p, q, r) = (build(p), build(q), build(r));
    let zero = Polynomial::zero();
    let one = Polynomial::one();
    prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
    prop_assert_eq!(&p + &q, &q + &p);
    prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
    prop_assert_eq!(&p + &zero, p.clone());
    prop_assert_eq!(&p * &one, p.clone());
    prop_assert_eq!(&one * &p, p.clone());
    prop_assert!((&p - &p).is_zero());
    prop_assert!((&p * &zero).is_zero());
    // coefficient of a product word by convolution
    let pq = &p * &q;
    for (w, c) in pq.terms() {
        let mut expected = Rational::zero();
        for (u, a) in p.terms() {
            for (v, b) in q.terms() {
                if &u.concat(v) == w {
                    expected += a * b;
                }
            }
        }
        prop_assert_eq!(c, &expected);
    }
    Ok(())
}

/// `(length, ranks left to right)` compared lexicographically.
fn deglex_oracle(ranking: &[u32], u: &[u32], v: &[u32]) -> Ordering {
    let rank = |s: &u32| ranking.iter().position(|r| r == s).unwrap();
    u.len().cmp(&v.len()).then_with(|| u.iter().map(rank).cmp(v.iter().map(rank)))
}

pub fn check_deglex(ranking: &[u32], words: &[Vec<u32>; 5]) -> Check {
    let t = plain_table(4);
    let ord = MonomialOrder::with_ranking(&t, &ranking.iter().map(|&s| Sym(s)).collect::<Vec<_>>());
    let [u, v, w, x, y] = words;
    let (wu, wv, ww, wx, wy) = (word(u), word(v), word(w), word(x), word(y));
    let c = ord.compare(&wu, &wv);
    prop_assert_eq!(c, deglex_oracle(ranking, u, v));
    prop_assert_eq!(c, ord.compare(&wv, &wu).reverse());
    prop_assert_eq!(c == Ordering::Equal, wu == wv);
    if c == Ordering::Less && ord.compare(&wv, &ww) == Ordering::Less {
        prop_assert_eq!(ord.compare(&wu, &ww), Ordering::Less);
    }
    // compatible with multiplication on both sides
    let (xu, xv) = (wx.concat(&wu).concat(&wy), wx.concat(&wv).concat(&wy));
    prop_assert_eq!(ord.compare(&xu, &xv), c);
    // 1 is the least word and factors are below their multiples
    prop_assert_ne!(ord.compare(&Word::one(), &wu), Ordering::Greater);
    if !wx.is_one() || !wy.is_one() {
        prop_assert_eq!(ord.compare(&wu, &xu), Ordering::Less);
    }
    Ok(())
}

pub fn check_parse_render(p: &RawPoly) -> Check {
    let mut t = SymbolTable::new();
    t.declare_with_adjoint("a").unwrap();
    t.declare_with_adjoint("b⁻").unwrap();
    t.declare_with_adjoint("c†").unwrap();
    let p = build(p);
    let text = render(&p, &t);
    let back = parse(&text, &t).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert_eq!(back, p, "{}", text);
    Ok(())
}

/// Scalar multiples are identified by dividing by the leading coefficient
/// in the internal term order.
fn scalar_key(p: &Polynomial) -> Vec<(Word, Rational)> {
    let lead = p.terms().last().unwrap().1.clone();
    p.terms().iter().map(|(w, c)| (w.clone(), c / &lead)).collect()
}

pub fn check_closure_idempotent(polys: &[RawPoly]) -> Check {
    let t = paired_table();
    let f: Vec<Polynomial> = polys.iter().map(build).collect();
    let once = involution_closure(&f, &t).unwrap();
    let twice = involution_closure(&once, &t).unwrap();
    prop_assert_eq!(&once, &twice);
    let keys: std::collections::BTreeSet<_> = once.iter().map(scalar_key).collect();
    prop_assert_eq!(keys.len(), once.len(), "scalar duplicates survived");
    for p in f.iter().filter(|p| !p.is_zero()) {
        for q in [p.clone(), p.adjoint(&t).unwrap()] {
            prop_assert!(keys.contains(&scalar_key(&q)), "lost {}", render(&q, &t));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// matrices

pub fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-2i64..=2, c), r))
}

pub fn to_matrix(rows: &[Vec<i64>]) -> RatMatrix {
    RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect()).unwrap()
}

/// The computed inverse satisfies all four Penrose equations and any
/// nonzero perturbation of it breaks at least one.
pub fn check_mp_uniqueness(m: &[Vec<i64>], perturb: &[i64]) -> Check {
    let m = to_matrix(m);
    let g = mp_inverse(&m);
    prop_assert_eq!((g.rows(), g.cols()), (m.cols(), m.rows()));
    let eqs = |g: &RatMatrix| -> [bool; 4] {
        let mg = &m * g;
        let gm = g * &m;
        [&mg * &m == m, &gm * g == *g, mg.transpose() == mg, gm.transpose() == gm]
    };
    prop_assert_eq!(eqs(&g), [true; 4]);
    prop_assert_eq!(penrose_check(&m, &g).unwrap(), [true; 4]);
    let n = g.rows() * g.cols();
    let e = RatMatrix::new(g.rows(), g.cols(), (0..n).map(|k| rat(perturb[k % perturb.len()], 1)).collect()).unwrap();
    if !e.is_zero() {
        prop_assert_ne!(eqs(&(&g + &e)), [true; 4]);
    }
    prop_assert_eq!(mp_inverse(&g), m.clone());
    prop_assert_eq!(mp_inverse(&m.transpose()), g.transpose());
    Ok(())
}

// ---------------------------------------------------------------------------
// quivers

/// All set partitions of `0..n` as block labels.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            go(k + 1, n, cur, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

fn quiver_from_partition(part: &[usize]) -> LabelledQuiver {
    let n = part.iter().max().map_or(0, |m| m + 1);
    let edges = (0..part.len() / 2)
        .map(|k| Edge { label: Sym(k as u32), source: part[2 * k], target: part[2 * k + 1] })
        .collect();
    LabelledQuiver::new((0..n).map(|v| format!("o{v}")).collect(), edges).unwrap()
}

/// The inferred quiver makes every polynomial compatible, and among all
/// assignments of endpoints (found by brute force) it is the finest: any
/// other compatible assignment only merges its vertices.
pub fn check_infer_brute_force(polys: &[RawPoly]) -> Check {
    let t = plain_table(3);
    let f: Vec<Polynomial> = polys.iter().map(build).collect();
    let q = infer_signatures(&f, &t, &[]).expect("unpinned inference always succeeds");
    for p in &f {
        prop_assert!(compatible(p, &q).is_yes(), "{} incompatible with inferred quiver", render(p, &t));
    }
    let inferred: Vec<usize> = (0..3)
        .flat_map(|k| {
            let e = q.edge(Sym(k)).unwrap();
            [e.source, e.target]
        })
        .collect();
    let mut finest = 0;
    for part in partitions(6) {
        let cand = quiver_from_partition(&part);
        if f.iter().all(|p| compatible(p, &cand).is_yes()) {
            finest = finest.max(cand.vertices().len());
            for i in 0..6 {
                for j in 0..6 {
                    if inferred[i] == inferred[j] {
                        prop_assert_eq!(part[i], part[j], "inferred quiver is not the finest");
                    }
                }
            }
        }
    }
    let used: std::collections::BTreeSet<_> = inferred.iter().collect();
    prop_assert_eq!(used.len(), finest);
    Ok(())
}

// ---------------------------------------------------------------------------
// realizations

/// Matrix of `p` between fixed endpoints, multiplying edge matrices
/// directly.
pub fn eval_between(p: &Polynomial, maps: &HashMap<Sym, RatMatrix>, dims: (usize, usize)) -> RatMatrix {
    let (src, tgt) = dims;
    let mut acc = RatMatrix::zeros(tgt, src);
    for (w, c) in p.terms() {
        let mut m = RatMatrix::identity(src);
        for s in w.letters().iter().rev() {
            m = &maps[s] * &m;
        }
        acc = &acc + &m.scale(c);
    }
    acc
}

pub struct Shipped {
    pub table: SymbolTable,
    pub quiver: LabelledQuiver,
    pub certificate: Certificate,
}

/// Certificate for the first claim of a shipped fixture.
pub fn shipped(name: &str) -> Shipped {
    let problem = parse_problem(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
    let tr = translate(&problem).unwrap();
    let report = opcert::certify::certify_named(
        &tr.assumption_polys(),
        &tr.assumption_names(),
        &tr.claim_polys()[..1],
        &tr.order,
        &tr.options,
    )
    .unwrap();
    let certificate = report.claims[0].certificate().expect("fixture certifies").clone();
    Shipped { table: tr.table, quiver: tr.quiver, certificate }
}

fn endpoints(p: &Polynomial, q: &LabelledQuiver) -> Option<(usize, usize)> {
    p.terms().iter().find(|(w, _)| !w.is_one()).map(|(w, _)| {
        let first = q.edge(w.letters()[w.len() - 1]).unwrap();
        let last = q.edge(w.letters()[0]).unwrap();
        (first.source, last.target)
    })
}

pub fn random_maps(q: &LabelledQuiver, dims: &[usize], entries: &[i64]) -> HashMap<Sym, RatMatrix> {
    let mut k = 0;
    let mut next = || {
        k += 1;
        rat(entries[k % entries.len()], 1 + (k % 2) as i64)
    };
    q.edges()
        .iter()
        .map(|e| {
            let (r, c) = (dims[e.target], dims[e.source]);
            (e.label, RatMatrix::new(r, c, (0..r * c).map(|_| next()).collect()).unwrap())
        })
        .collect()
}

/// For arbitrary matrices on the quiver, the claim's matrix equals the sum
/// of products of the cofactors' and assumptions' matrices.
pub fn check_realization_homomorphism(s: &Shipped, dims: &[usize], entries: &[i64]) -> Check {
    let q = &s.quiver;
    let dims = &dims[..q.vertices().len()];
    let maps = random_maps(q, dims, entries);
    let c = &s.certificate;
    let (src, tgt) = endpoints(&c.claim, q).unwrap();
    let claim = eval_between(&c.claim, &maps, (dims[src], dims[tgt]));
    let lib = evaluate(&c.claim, &Realization::new(q.clone(), dims.to_vec(), maps.clone()).unwrap()).unwrap();
    prop_assert_eq!(&lib, &claim);
    let mut sum = RatMatrix::zeros(dims[tgt], dims[src]);
    for sm in &c.summands {
        let g = &c.assumptions[sm.index];
        let (gs, gt) = endpoints(g, q).unwrap();
        let r = eval_between(&sm.right, &maps, (dims[src], dims[gs]));
        let gm = eval_between(g, &maps, (dims[gs], dims[gt]));
        let l = eval_between(&sm.left, &maps, (dims[gt], dims[tgt]));
        sum = &sum + &(&(&l * &gm) * &r);
    }
    prop_assert_eq!(sum, claim);
    Ok(())
}

/// Werner realizations that satisfy every assumption: A⁻ a generic inner
/// inverse of A, B of full row rank with a right inverse B⁻, I the identity.
/// The claim must vanish.
pub fn check_werner_realization_zeroes_claim(s: &Shipped, m: usize, n: usize, extra: usize, entries: &[i64]) -> Check {
    let t = &s.table;
    let sym = |name: &str| t.lookup(name).unwrap();
    let mut k = 0;
    let mut next = |r: usize, c: usize| {
        let data = (0..r * c)
            .map(|_| {
                k += 1;
                rat(entries[k % entries.len()], 1)
            })
            .collect();
        RatMatrix::new(r, c, data).unwrap()
    };
    let a = next(m, n);
    let ap = mp_inverse(&a);
    let x = next(n, m);
    let a_inner = &(&ap + &x) - &(&(&(&ap * &a) * &x) * &(&a * &ap));
    let y = next(n, extra);
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row: Vec<Rational> = (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect();
        row.extend((0..extra).map(|j| y.get(i, j).clone()));
        rows.push(row);
    }
    let b = RatMatrix::from_rows(rows).unwrap();
    let bp = mp_inverse(&b);
    let z = next(n + extra, n);
    let b_right = &bp + &(&(&RatMatrix::identity(n + extra) - &(&bp * &b)) * &z);
    prop_assert_eq!(&b * &b_right, RatMatrix::identity(n));

    let maps: HashMap<Sym, RatMatrix> = [
        (sym("a"), a),
        (sym("a⁻"), a_inner),
        (sym("b"), b),
        (sym("b⁻"), b_right),
        (sym("i"), RatMatrix::identity(n)),
    ]
    .into_iter()
    .collect();
    let dims = vec![m, n, n + extra];
    let r = Realization::new(s.quiver.clone(), dims, maps).unwrap();
    for g in &s.certificate.assumptions {
        prop_assert!(evaluate(g, &r).unwrap().is_zero(), "assumption {} not satisfied", render(g, t));
    }
    prop_assert!(evaluate(&s.certificate.claim, &r).unwrap().is_zero());
    Ok(())
}

// ---------------------------------------------------------------------------
// runner for the acceptance gate

/// Runs `check` on `cases` generated inputs; `Err` carries the failure.
pub fn run_cases<S: Strategy>(cases: u32, strategy: S, check: impl Fn(S::Value) -> Check) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

pub fn words5() -> impl Strategy<Value = [Vec<u32>; 5]> {
    let w = || prop::collection::vec(0u32..4, 0..=4);
    [w(), w(), w(), w(), w()]
}

pub fn ranking() -> impl Strategy<Value = Vec<u32>> {
    Just(vec![0u32, 1, 2, 3]).prop_shuffle()
}
