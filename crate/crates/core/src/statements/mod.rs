//! From operator statements to polynomials: property macros, involution
//! closure, the cancellability workflow and problem files.

mod file;

use std::collections::HashSet;

pub use file::parse_problem;


use crate::certify::{certify_with, Certificate, CertifyOptions, ClaimOutcome};
use crate::error::{Error, Result};
use crate::freealg::{MonomialOrder, Polynomial, Sym, SymbolTable};
use crate::quiver::{check_problem, infer_signatures, LabelledQuiver, Pin, QuiverReport};
use crate::rewrite::CompletionLimits;

/// The four Penrose polynomials `xyx - x`, `yxy - y`, `(xy)* - xy`,
/// `(yx)* - yx`. Either slot may hold a product such as `a b c`.
pub fn mp_equations(x: &Polynomial, y: &Polynomial, table: &SymbolTable) -> Result<Vec<Polynomial>> {
    ij_equations(x, y, &[1, 2, 3, 4], table)
}

/// The selected Penrose polynomials, numbered 1 to 4 as in [`mp_equations`].
pub fn ij_equations(x: &Polynomial, y: &Polynomial, which: &[u8], table: &SymbolTable) -> Result<Vec<Polynomial>> {
    if which.is_empty() {
        return Err(Error::Invalid("empty set of Penrose equations".into()));
    }
    let xy = x * y;
    let yx = y * x;
    let mut out = Vec::with_capacity(which.len());
    for &k in which {
        out.push(match k {
            1 => &(&xy * x) - x,
            2 => &(&yx * y) - y,
            3 => &xy.adjoint(table)? - &xy,
            4 => &yx.adjoint(table)? - &yx,
            _ => return Err(Error::Invalid(format!("no Penrose equation {k}"))),
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Absorption axioms for an identity element `i`: `x i - x` for neighbours
/// on the right side, `i x - x` for the left side, then `i² - i`.
pub fn identity_axioms(i: Sym, neighbors: &[(Sym, Side)]) -> Vec<Polynomial> {
    let iv = Polynomial::var(i);
    let mut out: Vec<Polynomial> = neighbors
        .iter()
        .map(|&(x, side)| {
            let xv = Polynomial::var(x);
            match side {
                Side::Right => &(&xv * &iv) - &xv,
                Side::Left => &(&iv * &xv) - &xv,
            }
        })
        .collect();
    out.push(&(&iv * &iv) - &iv);
    out
}

/// Encodes `Ran(lhs) ⊆ Ran(rhs)` as `lhs - rhs·w` with a fresh paired
/// witness `w`. A requested witness name must not be declared yet.
pub fn douglas_factorization(
    table: &mut SymbolTable,
    lhs: &Polynomial,
    rhs: &Polynomial,
    witness: Option<&str>,
) -> Result<(Sym, Polynomial)> {
    let w = match witness {
        Some(name) => table.declare_with_adjoint(name)?.0,
        None => table.fresh_with_adjoint("w").0,
    };
    Ok((w, lhs - &(rhs * &Polynomial::var(w))))
}

/// `x* - x`.
pub fn hermitian_condition(x: &Polynomial, table: &SymbolTable) -> Result<Polynomial> {
    Ok(&x.adjoint(table)? - x)
}

/// `xR = x*R` as two factorizations `x - x*·s` and `x* - x·t`.
pub fn ep_condition(table: &mut SymbolTable, x: &Polynomial) -> Result<Vec<(Sym, Polynomial)>> {
    let xs = x.adjoint(table)?;
    Ok(vec![douglas_factorization(table, x, &xs, None)?, douglas_factorization(table, &xs, x, None)?])
}

/// Scalar-normalised key: equal for polynomials differing by a nonzero factor.
fn projective_key(p: &Polynomial) -> Polynomial {
    p.monic()
}

/// `polys` together with their adjoints, without zeros and without
/// repetitions up to a scalar factor. The first representative is kept.
pub fn involution_closure(polys: &[Polynomial], table: &SymbolTable) -> Result<Vec<Polynomial>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in polys {
        for q in [p.clone(), p.adjoint(table)?] {
            if !q.is_zero() && seen.insert(projective_key(&q)) {
                out.push(q);
            }
        }
    }
    Ok(out)
}

/// One application of a *-cancellability quasi-identity.
///
/// Right: `z m m* = 0` implies `z m = 0`. Left: `m* m z = 0` implies `m z = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellabilityStep {
    pub side: Side,
    pub element: Polynomial,
    pub witness: Polynomial,
    pub conclusion: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// The witness was certified; the conclusion may be assumed.
    Applied { conclusion: Polynomial, certificate: Certificate },
    /// The witness was not certified; nothing is added.
    Failed(ClaimOutcome),
}

impl CancellabilityStep {
    /// The `z` part, if witness and conclusion have the required shapes.
    pub fn z_part(&self, table: &SymbolTable) -> Result<Polynomial> {
        let m = &self.element;
        let ms = m.adjoint(table)?;
        let shape_error = || {
            Error::Invalid(format!(
                "cancellability step: witness and conclusion do not have the {} shape",
                if self.side == Side::Right { "z m m* / z m" } else { "m* m z / m z" }
            ))
        };
        let z = match self.side {
            Side::Right => self.conclusion.right_divide(m),
            Side::Left => self.conclusion.left_divide(m),
        }
        .ok_or_else(shape_error)?;
        let expected = match self.side {
            Side::Right => &(&z * m) * &ms,
            Side::Left => &(&ms * m) * &z,
        };
        if z.is_zero() || expected != self.witness {
            return Err(shape_error());
        }
        Ok(z)
    }
}

/// Certifies the witness of `step` in the ideal of `assumptions` and, on
/// success, releases the conclusion. Malformed steps are an error.
pub fn apply_cancellability(
    step: &CancellabilityStep,
    assumptions: &[Polynomial],
    table: &SymbolTable,
    ord: &MonomialOrder,
    opts: &CertifyOptions,
) -> Result<StepOutcome> {
    step.z_part(table)?;
    let report = certify_with(assumptions, std::slice::from_ref(&step.witness), ord, opts)?;
    let outcome = report.claims.into_iter().next().expect("one claim");
    Ok(match outcome {
        ClaimOutcome::Certified(certificate) => {
            StepOutcome::Applied { conclusion: step.conclusion.clone(), certificate }
        }
        other => StepOutcome::Failed(other),
    })
}

/// Body of an assumption or claim line.
#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    Poly(Polynomial),
    Mp(Polynomial, Polynomial),
    Inv(Polynomial, Polynomial, Vec<u8>),
    Identity(Sym, Vec<(Sym, Side)>),
    /// `Ran(lhs) ⊆ Ran(rhs)`, optionally naming the witness.
    Douglas { lhs: Polynomial, rhs: Polynomial, witness: Option<String> },
    Hermitian(Polynomial),
    Ep(Polynomial),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedStatement {
    pub name: Option<String>,
    pub line: usize,
    pub statement: Statement,
}

/// Quiver section of a problem: signatures pinned by name. Unless `strict`,
/// the remaining signatures are inferred; with `strict` the listed edges are
/// the whole quiver.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuiverSpec {
    pub strict: bool,
    pub edges: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemOptions {
    pub limits: CompletionLimits,
    pub workers: usize,
    /// Add the adjoint of every assumption.
    pub closure: bool,
    /// Indeterminates from smallest to largest; unlisted ones rank lowest.
    pub order: Vec<String>,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        ProblemOptions { limits: CompletionLimits::default(), workers: 1, closure: true, order: Vec::new() }
    }
}

/// A certification problem as read from a problem file.
#[derive(Clone, Debug, Default)]
pub struct Problem {
    pub table: SymbolTable,
    pub assumptions: Vec<NamedStatement>,
    pub claims: Vec<NamedStatement>,
    pub quiver: QuiverSpec,
    pub workflow: Vec<(usize, CancellabilityStep)>,
    pub options: ProblemOptions,
}

/// Record of one workflow step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub step: CancellabilityStep,
    pub outcome: StepOutcome,
}

/// A problem expanded to polynomials.
#[derive(Clone, Debug)]
pub struct Translation {
    pub table: SymbolTable,
    pub assumptions: Vec<(String, Polynomial)>,
    pub claims: Vec<(String, Polynomial)>,
    pub workflow: Vec<StepRecord>,
    pub quiver: LabelledQuiver,
    pub quiver_report: QuiverReport,
    pub order: MonomialOrder,
    pub options: CertifyOptions,
}

impl Translation {
    pub fn assumption_polys(&self) -> Vec<Polynomial> {
        self.assumptions.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn assumption_names(&self) -> Vec<String> {
        self.assumptions.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn claim_polys(&self) -> Vec<Polynomial> {
        self.claims.iter().map(|(_, p)| p.clone()).collect()
    }

    /// True when every workflow step released its conclusion.
    pub fn workflow_complete(&self) -> bool {
        self.workflow.iter().all(|r| matches!(r.outcome, StepOutcome::Applied { .. }))
    }
}

fn expand(
    st: &NamedStatement,
    table: &mut SymbolTable,
    claim: bool,
) -> Result<Vec<Polynomial>> {
    let in_claim = |what: &str| Error::Syntax {
        line: st.line,
        col: 1,
        msg: format!("{what} introduces witnesses and cannot be claimed"),
    };
    Ok(match &st.statement {
        Statement::Poly(p) => vec![p.clone()],
        Statement::Mp(x, y) => mp_equations(x, y, table)?,
        Statement::Inv(x, y, s) => ij_equations(x, y, s, table)?,
        Statement::Identity(i, n) => identity_axioms(*i, n),
        Statement::Hermitian(x) => vec![hermitian_condition(x, table)?],
        Statement::Douglas { lhs, rhs, witness } => {
            if claim {
                return Err(in_claim("douglas"));
            }
            vec![douglas_factorization(table, lhs, rhs, witness.as_deref())?.1]
        }
        Statement::Ep(x) => {
            if claim {
                return Err(in_claim("ep"));
            }
            ep_condition(table, x)?.into_iter().map(|(_, p)| p).collect()
        }
    })
}

/// Names expanded polynomials: a single polynomial keeps the statement name,
/// several get `.1`, `.2`, ...; unnamed ones are numbered by position.
fn name_all(
    out: &mut Vec<(String, Polynomial)>,
    name: Option<&str>,
    polys: Vec<Polynomial>,
    prefix: &str,
) {
    let n = polys.len();
    for (k, p) in polys.into_iter().enumerate() {
        let label = match name {
            Some(name) if n == 1 => name.to_string(),
            Some(name) => format!("{name}.{}", k + 1),
            None => format!("{prefix}{}", out.len() + 1),
        };
        out.push((label, p));
    }
}

/// Adds `(name, p)` and, when `closure` is on, the adjoint `(name*, p*)`,
/// skipping zeros and scalar repetitions of earlier entries.
fn push_closed(
    out: &mut Vec<(String, Polynomial)>,
    seen: &mut HashSet<Polynomial>,
    name: String,
    p: Polynomial,
    closure: bool,
    table: &SymbolTable,
) -> Result<()> {
    let adj = if closure { Some(p.adjoint(table)?) } else { None };
    if !p.is_zero() && seen.insert(projective_key(&p)) {
        out.push((name.clone(), p));
    }
    if let Some(q) = adj {
        if !q.is_zero() && seen.insert(projective_key(&q)) {
            out.push((format!("{name}*"), q));
        }
    }
    Ok(())
}

fn resolve_order(table: &SymbolTable, names: &[String]) -> Result<MonomialOrder> {
    let ranking = names
        .iter()
        .map(|n| table.lookup(n).ok_or_else(|| Error::Invalid(format!("order mentions undeclared '{n}'"))))
        .collect::<Result<Vec<Sym>>>()?;
    Ok(MonomialOrder::with_ranking(table, &ranking))
}

/// Expands macros, applies the involution closure, runs the workflow steps
/// in order (each certified step adds its conclusion) and builds the quiver.
///
/// Quiver incompatibility is reported in [`Translation::quiver_report`]
/// rather than as an error, so callers can still show the witness.
pub fn translate(problem: &Problem) -> Result<Translation> {
    translate_inner(problem, true)
}

/// As [`translate`] without certifying workflow witnesses: the shapes of the
/// steps are still checked and their polynomials take part in the quiver
/// check, but no conclusion is added.
pub fn translate_without_workflow(problem: &Problem) -> Result<Translation> {
    translate_inner(problem, false)
}

fn translate_inner(problem: &Problem, run_workflow: bool) -> Result<Translation> {
    let mut table = problem.table.clone();
    let opts = &problem.options;

    let mut raw = Vec::new();
    for st in &problem.assumptions {
        let polys = expand(st, &mut table, false)?;
        name_all(&mut raw, st.name.as_deref(), polys, "f");
    }
    let mut claims = Vec::new();
    for st in &problem.claims {
        let polys = expand(st, &mut table, true)?;
        name_all(&mut claims, st.name.as_deref(), polys, "claim");
    }

    let mut seen = HashSet::new();
    let mut assumptions = Vec::new();
    for (name, p) in raw {
        push_closed(&mut assumptions, &mut seen, name, p, opts.closure, &table)?;
    }

    let order = resolve_order(&table, &opts.order)?;
    let certify_opts = CertifyOptions { limits: opts.limits.clone(), workers: opts.workers, require_constant_free: true };

    let step_error = |line: usize| {
        move |e: Error| match e {
            Error::Invalid(msg) => Error::Syntax { line, col: 1, msg },
            other => other,
        }
    };
    let mut workflow = Vec::new();
    let mut step_polys = Vec::new();
    for (k, (line, step)) in problem.workflow.iter().enumerate() {
        step_polys.push((format!("cancel{} witness", k + 1), step.witness.clone()));
        step_polys.push((format!("cancel{} conclusion", k + 1), step.conclusion.clone()));
        if !run_workflow {
            step.z_part(&table).map_err(step_error(*line))?;
            continue;
        }
        let polys: Vec<Polynomial> = assumptions.iter().map(|(_, p)| p.clone()).collect();
        let outcome =
            apply_cancellability(step, &polys, &table, &order, &certify_opts).map_err(step_error(*line))?;
        if let StepOutcome::Applied { conclusion, .. } = &outcome {
            push_closed(&mut assumptions, &mut seen, format!("cancel{}", k + 1), conclusion.clone(), opts.closure, &table)?;
        }
        workflow.push(StepRecord { step: step.clone(), outcome });
    }

    let checked: Vec<(String, Polynomial)> = claims.iter().cloned().chain(step_polys).collect();
    let quiver = build_quiver(&problem.quiver, &assumptions, &checked, &table)?;
    let quiver_report = check_problem(&assumptions, &checked, &quiver, &table);

    Ok(Translation { table, assumptions, claims, workflow, quiver, quiver_report, order, options: certify_opts })
}

fn build_quiver(
    spec: &QuiverSpec,
    assumptions: &[(String, Polynomial)],
    claims: &[(String, Polynomial)],
    table: &SymbolTable,
) -> Result<LabelledQuiver> {
    if spec.strict {
        let edges: Vec<(&str, &str, &str)> =
            spec.edges.iter().map(|(l, s, t)| (l.as_str(), s.as_str(), t.as_str())).collect();
        return LabelledQuiver::from_named(table, &edges);
    }
    let mut pins = Vec::new();
    for (label, source, target) in &spec.edges {
        let sym = table.lookup(label).ok_or_else(|| Error::Quiver(format!("edge label '{label}' is not declared")))?;
        pins.push(Pin { label: sym, source: source.clone(), target: target.clone() });
    }
    let polys: Vec<Polynomial> = assumptions.iter().chain(claims).map(|(_, p)| p.clone()).collect();
    infer_signatures(&polys, table, &pins)
        .ok_or_else(|| Error::Quiver("the declared signatures contradict the statements".into()))
}
