//! Exact rational matrices: Moore-Penrose inverses, range inclusions and
//! realizations of polynomials over a labelled quiver.
//!
//! The involution on matrices is the transpose; all entries are rational.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freealg::{Polynomial, Rational, Sym};
use crate::quiver::{compatible, Compatibility, LabelledQuiver, PathSignature, Vertex};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = Rational::one();
        }
        m
    }

    /// Row-major rows of rationals. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("rows of different lengths".into()));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        Self::from_rows(rows).expect("rows of equal length")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hcat(&Self::identity(n)).expect("same row count");
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!("cannot place {} rows next to {}", other.rows, self.rows)));
        }
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Whether the column space of `other` lies in that of `self`, decided by
    /// `rank [self | other] = rank self`.
    pub fn range_contains(&self, other: &RatMatrix) -> Result<bool> {
        Ok(self.hcat(other)?.rank() == self.rank())
    }

    /// `self = F G` with `F` of full column rank and `G` of full row rank.
    pub fn rank_factorization(&self) -> (RatMatrix, RatMatrix) {
        let (r, pivots) = self.rref();
        let k = pivots.len();
        let mut f = Self::zeros(self.rows, k);
        for i in 0..self.rows {
            for (c, &p) in pivots.iter().enumerate() {
                f.set(i, c, self.get(i, p).clone());
            }
        }
        let g = RatMatrix { rows: k, cols: self.cols, data: r.data[..k * self.cols].to_vec() };
        (f, g)
    }
}

macro_rules! forward {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&RatMatrix> for &RatMatrix {
            type Output = RatMatrix;
            fn $method(self, rhs: &RatMatrix) -> RatMatrix {
                self.$inner(rhs).expect("matrix shapes must agree")
            }
        }
    };
}

forward!(Mul, mul, try_mul);
forward!(Add, add, try_add);

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.scale(&-Rational::one())
    }
}

impl Sub<&RatMatrix> for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self + &(-rhs)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatMatrix {
    /// `[a b; c d]`, the literal syntax of matrix fixtures.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Parses a matrix literal `[a b c; d e f]` with rational entries such as
/// `-3/17`. Entries may also be separated by commas.
pub fn parse_matrix(text: &str) -> Result<RatMatrix> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Invalid(format!("matrix literal must be bracketed: {text}")))?;
    let mut rows = Vec::new();
    for row in inner.split(';') {
        let entries = row
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<Rational>().map_err(|_| Error::Invalid(format!("bad matrix entry '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(entries);
    }
    RatMatrix::from_rows(rows)
}

/// The four Penrose conditions `mgm = m`, `gmg = g`, `(mg)ᵀ = mg`,
/// `(gm)ᵀ = gm`.
pub fn penrose_check(m: &RatMatrix, g: &RatMatrix) -> Result<[bool; 4]> {
    let mg = m.try_mul(g)?;
    let gm = g.try_mul(m)?;
    Ok([mg.try_mul(m)? == *m, gm.try_mul(g)? == *g, mg.transpose() == mg, gm.transpose() == gm])
}

/// Moore-Penrose inverse via a rank factorization `m = F G`:
/// `m† = Gᵀ (G Gᵀ)⁻¹ (Fᵀ F)⁻¹ Fᵀ`.
pub fn mp_inverse(m: &RatMatrix) -> RatMatrix {
    let (f, g) = m.rank_factorization();
    if f.cols() == 0 {
        return RatMatrix::zeros(m.cols(), m.rows());
    }
    let ft = f.transpose();
    let gt = g.transpose();
    let ggt = (&g * &gt).inverse().expect("G has full row rank");
    let ftf = (&ft * &f).inverse().expect("F has full column rank");
    let inv = &(&(&gt * &ggt) * &ftf) * &ft;
    assert!(penrose_check(m, &inv).is_ok_and(|c| c == [true; 4]), "Moore-Penrose inverse failed the Penrose check");
    inv
}

/// Matrices for the edges of a quiver, with a dimension per vertex.
#[derive(Clone, Debug)]
pub struct Realization {
    quiver: LabelledQuiver,
    dims: Vec<usize>,
    maps: HashMap<Sym, RatMatrix>,
}

impl Realization {
    /// Checks that every edge has a matrix of shape `dim(target) x dim(source)`.
    pub fn new(quiver: LabelledQuiver, dims: Vec<usize>, maps: HashMap<Sym, RatMatrix>) -> Result<Self> {
        if dims.len() != quiver.vertices().len() {
            return Err(Error::Shape(format!("{} dimensions for {} vertices", dims.len(), quiver.vertices().len())));
        }
        for e in quiver.edges() {
            let m = maps.get(&e.label).ok_or_else(|| Error::Shape(format!("no matrix for edge {}", e.label)))?;
            if (m.rows(), m.cols()) != (dims[e.target], dims[e.source]) {
                return Err(Error::Shape(format!(
                    "edge {} needs a {}x{} matrix, got {}x{}",
                    e.label,
                    dims[e.target],
                    dims[e.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Realization { quiver, dims, maps })
    }

    pub fn quiver(&self) -> &LabelledQuiver {
        &self.quiver
    }

    pub fn dim(&self, v: Vertex) -> usize {
        self.dims[v]
    }

    pub fn map(&self, s: Sym) -> Option<&RatMatrix> {
        self.maps.get(&s)
    }
}

/// Realization of `p`: each monomial becomes the product of its edge
/// matrices (rightmost letter applied first), the empty word the identity.
/// Fails if `p` is incompatible with the quiver or has no fixed endpoints.
pub fn evaluate(p: &Polynomial, r: &Realization) -> Result<RatMatrix> {
    match compatible(p, r.quiver()) {
        Compatibility::Yes(PathSignature::Path { source, target }) => Ok(evaluate_between(p, r, source, target)),
        Compatibility::Yes(PathSignature::Any) => {
            Err(Error::Quiver("polynomial has no fixed endpoints; use evaluate_at".into()))
        }
        Compatibility::No(_) => Err(Error::Quiver("polynomial is not compatible with the quiver".into())),
    }
}

/// As [`evaluate`] for polynomials whose paths are loops at `v` or that have
/// no nonconstant monomials.
pub fn evaluate_at(p: &Polynomial, r: &Realization, v: Vertex) -> Result<RatMatrix> {
    match compatible(p, r.quiver()) {
        Compatibility::Yes(PathSignature::Any) => Ok(evaluate_between(p, r, v, v)),
        Compatibility::Yes(PathSignature::Path { source, target }) if source == v && target == v => {
            Ok(evaluate_between(p, r, v, v))
        }
        _ => Err(Error::Quiver(format!("polynomial is not a loop at vertex {v}"))),
    }
}

fn evaluate_between(p: &Polynomial, r: &Realization, source: Vertex, target: Vertex) -> RatMatrix {
    let mut acc = RatMatrix::zeros(r.dim(target), r.dim(source));
    for (w, c) in p.terms() {
        let mut m = RatMatrix::identity(r.dim(source));
        for s in w.letters().iter().rev() {
            m = &r.maps[s] * &m;
        }
        acc = &acc + &m.scale(c);
    }
    acc
}

/// Outcome of a named list of exact matrix checks.
#[derive(Clone, Debug, Default)]
pub struct MatrixReport {
    pub checks: Vec<(String, bool)>,
}

impl MatrixReport {
    fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|(n, _)| n == name).map(|(_, ok)| *ok)
    }
}

impl fmt::Display for MatrixReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.checks {
            writeln!(f, "{} {name}", if *ok { "ok  " } else { "FAIL" })?;
        }
        Ok(())
    }
}

/// The triple `(A, B, C)` with `P = A†ABCC†`, `Q = CC†B†A†A`.
pub struct Triple<'a> {
    pub a: &'a RatMatrix,
    pub b: &'a RatMatrix,
    pub c: &'a RatMatrix,
}

/// Facts about a triple relevant to the reverse order law.
#[derive(Clone, Debug)]
pub struct TripleFacts {
    pub a_dag: RatMatrix,
    pub b_dag: RatMatrix,
    pub c_dag: RatMatrix,
    pub p: RatMatrix,
    pub q: RatMatrix,
    pub pq_idempotent: bool,
    /// `Ran(AᵀAP) ⊆ Ran(Qᵀ)`
    pub aap_in_qt: bool,
    /// `Ran(Qᵀ) ⊆ Ran(AᵀAP)`
    pub qt_in_aap: bool,
    /// `Ran(CCᵀPᵀ) ⊆ Ran(Q)`
    pub ccp_in_q: bool,
    /// `Ran(Q) ⊆ Ran(CCᵀPᵀ)`
    pub q_in_ccp: bool,
    /// `(ABC)† = C†B†A†`
    pub reverse_order_law: bool,
}

pub fn triple_facts(t: &Triple<'_>) -> Result<TripleFacts> {
    let (a_dag, b_dag, c_dag) = (mp_inverse(t.a), mp_inverse(t.b), mp_inverse(t.c));
    let m = t.a.try_mul(t.b)?.try_mul(t.c)?;
    let p = a_dag.try_mul(&m)?.try_mul(&c_dag)?;
    let q = t.c.try_mul(&c_dag)?.try_mul(&b_dag)?.try_mul(&a_dag)?.try_mul(t.a)?;
    let pq = p.try_mul(&q)?;
    let aap = t.a.transpose().try_mul(t.a)?.try_mul(&p)?;
    let ccp = t.c.try_mul(&t.c.transpose())?.try_mul(&p.transpose())?;
    let qt = q.transpose();
    let rol = mp_inverse(&m) == c_dag.try_mul(&b_dag)?.try_mul(&a_dag)?;
    Ok(TripleFacts {
        pq_idempotent: pq.try_mul(&pq)? == pq,
        aap_in_qt: qt.range_contains(&aap)?,
        qt_in_aap: aap.range_contains(&qt)?,
        ccp_in_q: q.range_contains(&ccp)?,
        q_in_ccp: ccp.range_contains(&q)?,
        reverse_order_law: rol,
        a_dag,
        b_dag,
        c_dag,
        p,
        q,
    })
}

/// Data of the three-matrix counterexample to the reverse order law under
/// one-sided range inclusions.
pub struct Example1 {
    pub a: RatMatrix,
    pub b: RatMatrix,
    pub c: RatMatrix,
    pub a_dag: RatMatrix,
    pub b_dag: RatMatrix,
    pub c_dag: RatMatrix,
}

impl Example1 {
    pub fn standard() -> Self {
        let third = Rational::new(1.into(), 3.into());
        let c = RatMatrix::from_ints(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).scale(&third);
        Example1 {
            a: RatMatrix::from_ints(&[&[-3, 2, 2], &[0, 0, 0], &[0, 0, 0]]),
            b: RatMatrix::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 0, 0]]),
            a_dag: RatMatrix::from_ints(&[&[-3, 0, 0], &[2, 0, 0], &[2, 0, 0]]).scale(&Rational::new(1.into(), 17.into())),
            b_dag: RatMatrix::from_ints(&[&[0, 0, 1], &[-1, 1, 1], &[1, 0, -1]]),
            c_dag: c.clone(),
            c,
        }
    }
}

/// Checks the stated inverses, `PQ = 0`, the inclusions
/// `Ran(AᵀAP) ⊆ Ran(Qᵀ)` and `Ran(CCᵀPᵀ) ⊆ Ran(Q)`, and the failure of the
/// reverse order law; then the same for `(A, B, C) := (C†, B†, A†)` with the
/// opposite inclusions.
pub fn example1_check(ex: &Example1) -> Result<MatrixReport> {
    let mut r = MatrixReport::default();
    let f = triple_facts(&Triple { a: &ex.a, b: &ex.b, c: &ex.c })?;
    r.push("A† equals the stated matrix", f.a_dag == ex.a_dag);
    r.push("B† equals the stated matrix", f.b_dag == ex.b_dag);
    r.push("C† equals the stated matrix", f.c_dag == ex.c_dag);
    r.push("PQ = 0", f.p.try_mul(&f.q)?.is_zero());
    r.push("PQ is idempotent", f.pq_idempotent);
    r.push("Ran(A*AP) ⊆ Ran(Q*)", f.aap_in_qt);
    r.push("Ran(CC*P*) ⊆ Ran(Q)", f.ccp_in_q);
    r.push("(ABC)† ≠ C†B†A†", !f.reverse_order_law);

    let g = triple_facts(&Triple { a: &ex.c_dag, b: &ex.b_dag, c: &ex.a_dag })?;
    r.push("reversed: PQ is idempotent", g.pq_idempotent);
    r.push("reversed: Ran(Q*) ⊆ Ran(A*AP)", g.qt_in_aap);
    r.push("reversed: Ran(Q) ⊆ Ran(CC*P*)", g.q_in_ccp);
    r.push("reversed: (ABC)† ≠ C†B†A†", !g.reverse_order_law);
    Ok(r)
}

/// Data for the variant where `{1,3}`/`{1,4}`-inverses replace the
/// `{1,2,3}`/`{1,2,4}`-inverses of `A` and `C`.
pub struct Example2 {
    pub a: RatMatrix,
    /// Stands in for `A^(1,2,3)`; here a `{1,3,4}`-inverse.
    pub a_inner: RatMatrix,
    pub b: RatMatrix,
    pub c: RatMatrix,
    /// Stands in for `C^(1,2,4)`; here a `{1,4}`-inverse.
    pub c_inner: RatMatrix,
    pub b_tilde: RatMatrix,
}

impl Example2 {
    /// `A = diag(1, 0)`, `A^(1,3,4) = I`, `B = C = B̃ = I`.
    pub fn standard() -> Self {
        let i = RatMatrix::identity(2);
        Example2 {
            a: RatMatrix::from_ints(&[&[1, 0], &[0, 0]]),
            a_inner: i.clone(),
            b: i.clone(),
            c: i.clone(),
            c_inner: i.clone(),
            b_tilde: i,
        }
    }
}

fn is_ep(x: &RatMatrix) -> Result<bool> {
    let xt = x.transpose();
    Ok(x.range_contains(&xt)? && xt.range_contains(x)?)
}

/// Evaluates conditions (i) to (v) of the generalized reverse order law with
/// `p = A' A B C C'`, `q = C C' B̃ A' A`, where `A'`, `C'` are the given
/// generalized inverses. Condition (i) is `(ABC)† = C' B̃ A'`.
pub fn example2_check(ex: &Example2) -> Result<MatrixReport> {
    let mut r = MatrixReport::default();
    let pa = penrose_check(&ex.a, &ex.a_inner)?;
    let pc = penrose_check(&ex.c, &ex.c_inner)?;
    r.push("A' satisfies Penrose equations 1, 3, 4", pa[0] && pa[2] && pa[3]);
    r.push("A' is not A†", ex.a_inner != mp_inverse(&ex.a));
    r.push("C' satisfies Penrose equations 1, 4", pc[0] && pc[3]);

    let m = ex.a.try_mul(&ex.b)?.try_mul(&ex.c)?;
    let p = ex.a_inner.try_mul(&m)?.try_mul(&ex.c_inner)?;
    let q = ex.c.try_mul(&ex.c_inner)?.try_mul(&ex.b_tilde)?.try_mul(&ex.a_inner)?.try_mul(&ex.a)?;
    let pq = p.try_mul(&q)?;
    let aapq = ex.a.transpose().try_mul(&ex.a)?.try_mul(&pq)?;
    let qpcc = q.try_mul(&p)?.try_mul(&ex.c)?.try_mul(&ex.c.transpose())?;
    let aap = ex.a.transpose().try_mul(&ex.a)?.try_mul(&p)?;
    let ccp = ex.c.try_mul(&ex.c.transpose())?.try_mul(&p.transpose())?;
    let qt = q.transpose();
    let pq_pen = penrose_check(&p, &q)?;
    let q_in_p12 = pq_pen[0] && pq_pen[1];

    r.push("(ii) q ∈ p{1,2}, a*apq and qpcc* Hermitian", q_in_p12 && aapq.transpose() == aapq && qpcc.transpose() == qpcc);
    r.push("(iii) q ∈ p{1,2}, a*apq and qpcc* EP", q_in_p12 && is_ep(&aapq)? && is_ep(&qpcc)?);
    let idem = pq.try_mul(&pq)? == pq;
    r.push("(iv) pq idempotent, Ran(a*ap) ⊇ Ran(q*), Ran(cc*p*) ⊆ Ran(q)", idem && aap.range_contains(&qt)? && q.range_contains(&ccp)?);
    r.push("(v) pq idempotent, Ran(a*ap) ⊆ Ran(q*), Ran(cc*p*) ⊇ Ran(q)", idem && qt.range_contains(&aap)? && ccp.range_contains(&q)?);
    let candidate = ex.c_inner.try_mul(&ex.b_tilde)?.try_mul(&ex.a_inner)?;
    r.push("(i) fails: (abc)† ≠ c' b̃ a'", mp_inverse(&m) != candidate);
    Ok(r)
}

/// A matrix fixture: the name of a check and the matrices it needs.
///
/// ```text
/// check = example2_1
/// A = [-3 2 2; 0 0 0; 0 0 0]
/// ```
#[derive(Clone, Debug, Default)]
pub struct MatrixFixture {
    pub check: String,
    pub matrices: HashMap<String, RatMatrix>,
}

impl MatrixFixture {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = MatrixFixture::default();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split_once('#').map_or(raw, |(b, _)| b).trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Syntax {
                line: k + 1,
                col: 1,
                msg: "expected 'name = value'".into(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key == "check" {
                out.check = value.to_string();
            } else {
                let m = parse_matrix(value).map_err(|e| Error::Syntax {
                    line: k + 1,
                    col: raw.find('[').map_or(1, |b| raw[..b].chars().count() + 1),
                    msg: e.to_string(),
                })?;
                out.matrices.insert(key.to_string(), m);
            }
        }
        Ok(out)
    }

    fn get(&self, name: &str) -> Result<RatMatrix> {
        self.matrices
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("check '{}' needs matrix {name}", self.check)))
    }

    /// Runs the named check on the fixture matrices.
    pub fn run(&self) -> Result<MatrixReport> {
        match self.check.as_str() {
            "example2_1" => example1_check(&Example1 {
                a: self.get("A")?,
                b: self.get("B")?,
                c: self.get("C")?,
                a_dag: self.get("A†")?,
                b_dag: self.get("B†")?,
                c_dag: self.get("C†")?,
            }),
            "example2_2" => example2_check(&Example2 {
                a: self.get("A")?,
                a_inner: self.get("A'")?,
                b: self.get("B")?,
                c: self.get("C")?,
                c_inner: self.get("C'")?,
                b_tilde: self.get("B~")?,
            }),
            other => Err(Error::Invalid(format!("unknown matrix check '{other}'"))),
        }
    }
}
