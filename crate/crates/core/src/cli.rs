//! Command-line front end.
//!
//! Exit status: 0 when every check passes, 1 for invalid certificates,
//! non-members or quiver incompatibility, 2 when a completion bound was hit
//! before a claim was decided, 3 for unreadable or malformed input.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::certify::{
    certify_named, verify_certificate, CertificateFile, ClaimOutcome, CertifyReport, Verdict,
};
use crate::error::{Error, Result};
use crate::freealg::{render, Polynomial, SymbolTable};
use crate::matcheck::{example1_check, example2_check, Example1, Example2, MatrixFixture};
use crate::rewrite::{complete_with_workers, CompletionStatus};
use crate::statements::{parse_problem, translate, translate_without_workflow, Problem, StepOutcome, Translation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    BudgetExhausted = 2,
    InputError = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }

    /// Combines two outcomes: a definite failure outranks an exhausted
    /// budget, which outranks success.
    fn and(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::BudgetExhausted => 1,
            Status::Failed => 2,
            Status::InputError => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "opcert", version, about = "Certify operator identities by noncommutative ideal membership")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Print completion statistics and traces.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

/// Overrides for the options section of a problem file.
#[derive(Clone, Debug, Default, Args)]
pub struct LimitArgs {
    /// Skip obstructions of larger degree.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Maximum number of obstructions processed.
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub time_budget: Option<f64>,
    /// Ranking of indeterminates, smallest first, separated by commas or spaces.
    #[arg(long)]
    pub order: Option<String>,
    /// Worker threads for the completion; results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Do not add adjoints of the assumptions.
    #[arg(long)]
    pub no_closure: bool,
}

impl LimitArgs {
    pub fn apply(&self, problem: &mut Problem) -> Result<()> {
        let o = &mut problem.options;
        if let Some(d) = self.max_degree {
            o.limits.max_degree = d;
        }
        if let Some(n) = self.max_iterations {
            o.limits.max_iterations = n;
        }
        if let Some(t) = self.time_budget {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::Invalid("--time-budget must be positive".into()));
            }
            o.limits.time_budget = Duration::from_secs_f64(t);
        }
        if let Some(order) = &self.order {
            o.order = order.split([',', ' ']).filter(|s| !s.is_empty()).map(String::from).collect();
        }
        if let Some(w) = self.workers {
            o.workers = w.max(1);
        }
        if self.no_closure {
            o.closure = false;
        }
        o.limits.validate()
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the claims of a problem file.
    Certify {
        input: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
        /// Directory for report.json and one certificate file per claim.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify certificate files.
    CheckCert {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Check assumptions and claims against the problem's quiver.
    Compat {
        input: PathBuf,
        /// Write the quiver in problem-file syntax to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduce the claims by a bounded completion of the assumptions.
    Reduce {
        input: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
        /// Write the output to this file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run exact matrix checks; without inputs the built-in examples run.
    Matcheck { inputs: Vec<PathBuf> },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_problem(path: &Path, limits: Option<&LimitArgs>) -> Result<Problem> {
    let mut problem = parse_problem(&read(path)?).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    if let Some(l) = limits {
        l.apply(&mut problem)?;
    }
    Ok(problem)
}

/// Runs one command, writing human-readable output to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Status {
    let result = match &config.command {
        Command::Certify { input, limits, output } => cmd_certify(input, limits, output.as_deref(), config.verbose, out),
        Command::CheckCert { inputs } => cmd_check_cert(inputs, out),
        Command::Compat { input, output } => cmd_compat(input, output.as_deref(), out),
        Command::Reduce { input, limits, output } => cmd_reduce(input, limits, output.as_deref(), config.verbose, out),
        Command::Matcheck { inputs } => cmd_matcheck(inputs, out),
    };
    match result {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            Status::InputError
        }
    }
}

/// Parses the process arguments and runs; for use by `main`.
pub fn main_entry() -> std::process::ExitCode {
    let config = RunConfig::parse();
    let stdout = std::io::stdout();
    let status = run(&config, &mut stdout.lock());
    std::process::ExitCode::from(status.code())
}

#[derive(Serialize)]
struct ClaimEntry {
    name: String,
    claim: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    remainder: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    integral: Option<bool>,
    used: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<String>,
}

#[derive(Serialize)]
struct StepEntry {
    witness: String,
    conclusion: String,
    status: &'static str,
}

#[derive(Serialize)]
struct ReportFile {
    problem: String,
    indeterminates: usize,
    assumptions: usize,
    quiver_vertices: usize,
    compatible: bool,
    operator_level: bool,
    workflow: Vec<StepEntry>,
    claims: Vec<ClaimEntry>,
    obstructions_processed: usize,
    basis_size: usize,
    elapsed_ms: u128,
}

fn outcome_label(o: &ClaimOutcome) -> &'static str {
    match o {
        ClaimOutcome::Certified(_) => "certified",
        ClaimOutcome::BudgetExhausted { .. } => "budget exhausted",
        ClaimOutcome::NotMember { .. } => "not a member",
        ClaimOutcome::Rejected(_) => "rejected",
    }
}

fn outcome_status(o: &ClaimOutcome) -> Status {
    match o {
        ClaimOutcome::Certified(_) => Status::Ok,
        ClaimOutcome::BudgetExhausted { .. } => Status::BudgetExhausted,
        _ => Status::Failed,
    }
}

/// Safe file stem for a claim name.
fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_alphanumeric() || c == '_' || c == '-' { c } else { '_' }).collect()
}

fn describe_translation(tr: &Translation, text: &mut String) {
    let _ = writeln!(
        text,
        "{} indeterminates, {} assumptions, {} claims",
        tr.table.len(),
        tr.assumptions.len(),
        tr.claims.len()
    );
    let _ = writeln!(
        text,
        "quiver: {} vertices, {}",
        tr.quiver.vertices().len(),
        if tr.quiver_report.passed() { "compatible" } else { "NOT compatible" }
    );
    if !tr.quiver_report.passed() {
        for line in tr.quiver_report.describe(&tr.table).lines() {
            let _ = writeln!(text, "  {line}");
        }
    }
}

fn cmd_certify(
    input: &Path,
    limits: &LimitArgs,
    output: Option<&Path>,
    verbose: u8,
    out: &mut dyn Write,
) -> Result<Status> {
    let problem = load_problem(input, Some(limits))?;
    let tr = translate(&problem)?;
    let mut text = String::new();
    let _ = writeln!(text, "problem: {}", input.display());
    describe_translation(&tr, &mut text);

    let mut status = if tr.quiver_report.passed() { Status::Ok } else { Status::Failed };
    let mut steps = Vec::new();
    for (k, rec) in tr.workflow.iter().enumerate() {
        let (label, st) = match &rec.outcome {
            StepOutcome::Applied { certificate, .. } => {
                let _ = writeln!(
                    text,
                    "workflow step {}: witness certified ({} terms), added {}",
                    k + 1,
                    certificate.term_count(),
                    render(&rec.step.conclusion, &tr.table)
                );
                ("applied", Status::Ok)
            }
            StepOutcome::Failed(o) => {
                let _ = writeln!(text, "workflow step {}: witness {}", k + 1, outcome_label(o));
                (outcome_label(o), outcome_status(o))
            }
        };
        status = status.and(st);
        steps.push(StepEntry {
            witness: render(&rec.step.witness, &tr.table),
            conclusion: render(&rec.step.conclusion, &tr.table),
            status: label,
        });
    }

    let report: CertifyReport = certify_named(
        &tr.assumption_polys(),
        &tr.assumption_names(),
        &tr.claim_polys(),
        &tr.order,
        &tr.options,
    )?;

    if let Some(dir) = output {
        std::fs::create_dir_all(dir)?;
    }
    let mut claims = Vec::new();
    for ((name, claim), outcome) in tr.claims.iter().zip(&report.claims) {
        status = status.and(outcome_status(outcome));
        let mut entry = ClaimEntry {
            name: name.clone(),
            claim: render(claim, &tr.table),
            status: outcome_label(outcome),
            remainder: None,
            terms: None,
            integral: None,
            used: Vec::new(),
            certificate: None,
        };
        match outcome {
            ClaimOutcome::Certified(c) => {
                entry.terms = Some(c.term_count());
                entry.integral = Some(c.integral);
                entry.used = c.used_indices().into_iter().map(|k| c.names[k].clone()).collect();
                let _ = writeln!(
                    text,
                    "claim {name}: certified, {} terms, {}, using {}",
                    c.term_count(),
                    if c.integral { "integral" } else { "rational cofactors" },
                    entry.used.join(" ")
                );
                if let Some(dir) = output {
                    let path = dir.join(format!("{}.cert", file_stem(name)));
                    CertificateFile::from_certificate(c, &tr.table).write(&path)?;
                    entry.certificate = Some(path.display().to_string());
                }
            }
            ClaimOutcome::BudgetExhausted { remainder } | ClaimOutcome::NotMember { remainder } => {
                let r = render(remainder, &tr.table);
                let _ = writeln!(text, "claim {name}: {}, remainder {r}", outcome_label(outcome));
                entry.remainder = Some(r);
            }
            ClaimOutcome::Rejected(msg) => {
                let _ = writeln!(text, "claim {name}: rejected: {msg}");
            }
        }
        claims.push(entry);
    }
    let stats = &report.stats;
    let _ = writeln!(
        text,
        "completion: {} obstructions, basis {}, {:.2?}",
        stats.completion.obstructions_processed, stats.completion.basis_size, stats.elapsed
    );
    if verbose > 0 {
        let _ = writeln!(text, "{:#?}", stats.completion);
    }
    let compatible = tr.quiver_report.passed();
    let _ = writeln!(
        text,
        "result: {}",
        match status {
            Status::Ok => "all claims certified (operator level)",
            Status::BudgetExhausted => "budget exhausted",
            _ if !compatible => "incompatible with the quiver; certificates hold at ring level only",
            _ => "failed",
        }
    );

    if let Some(dir) = output {
        let file = ReportFile {
            problem: input.display().to_string(),
            indeterminates: tr.table.len(),
            assumptions: tr.assumptions.len(),
            quiver_vertices: tr.quiver.vertices().len(),
            compatible,
            operator_level: compatible && report.all_certified(),
            workflow: steps,
            claims,
            obstructions_processed: stats.completion.obstructions_processed,
            basis_size: stats.completion.basis_size,
            elapsed_ms: stats.elapsed.as_millis(),
        };
        std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&file)?)?;
    }
    out.write_all(text.as_bytes())?;
    Ok(status)
}

fn cmd_check_cert(inputs: &[PathBuf], out: &mut dyn Write) -> Result<Status> {
    let mut status = Status::Ok;
    for path in inputs {
        let file = CertificateFile::read(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        let (table, cert) = file.to_certificate().map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        match verify_certificate(&cert) {
            Verdict::Valid => {
                writeln!(
                    out,
                    "{}: valid ({} summands, {} terms{})",
                    path.display(),
                    cert.summands.len(),
                    cert.term_count(),
                    if cert.integral { ", integral" } else { "" }
                )?;
            }
            Verdict::Invalid(why) => {
                writeln!(out, "{}: INVALID: {}", path.display(), why.describe(&table))?;
                status = Status::Failed;
            }
        }
    }
    Ok(status)
}

fn cmd_compat(input: &Path, output: Option<&Path>, out: &mut dyn Write) -> Result<Status> {
    let problem = load_problem(input, None)?;
    let tr = translate_without_workflow(&problem)?;
    let mut text = String::new();
    let _ = writeln!(text, "problem: {}", input.display());
    describe_translation(&tr, &mut text);
    let exported = tr.quiver.export(&tr.table);
    text.push_str(&exported);
    if let Some(path) = output {
        std::fs::write(path, &exported)?;
    }
    out.write_all(text.as_bytes())?;
    Ok(if tr.quiver_report.passed() { Status::Ok } else { Status::Failed })
}

fn show_trace(p: &Polynomial, names: &[String], trace: &[crate::rewrite::Cofactor], table: &SymbolTable) -> String {
    let mut s = String::new();
    for t in trace {
        let l = render(&Polynomial::monomial(t.left.clone(), t.coeff.clone()), table);
        let r = render(&Polynomial::word(t.right.clone()), table);
        let _ = writeln!(s, "    + ({l}) {} ({r})", names[t.index]);
    }
    let _ = p;
    s
}

fn cmd_reduce(
    input: &Path,
    limits: &LimitArgs,
    output: Option<&Path>,
    verbose: u8,
    out: &mut dyn Write,
) -> Result<Status> {
    let problem = load_problem(input, Some(limits))?;
    let tr = translate(&problem)?;
    let polys = tr.assumption_polys();
    let names = tr.assumption_names();
    let completion = complete_with_workers(&polys, &tr.order, &tr.options.limits, tr.options.workers);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "basis: {} elements ({})",
        completion.len(),
        match completion.status {
            CompletionStatus::Complete => "complete",
            CompletionStatus::BudgetExhausted => "partial",
        }
    );
    if verbose > 0 {
        for p in completion.basis() {
            let _ = writeln!(text, "  {}", render(&p, &tr.table));
        }
    }
    let mut status = Status::Ok;
    for (name, claim) in &tr.claims {
        let traced = completion.reduce(claim);
        let _ = writeln!(text, "{name}: {}", render(claim, &tr.table));
        let _ = writeln!(text, "  remainder: {}", render(&traced.value, &tr.table));
        let _ = writeln!(text, "  trace ({} steps):", traced.trace.len());
        text.push_str(&show_trace(claim, &names, &traced.trace, &tr.table));
        if !traced.value.is_zero() {
            status = status.and(match completion.status {
                CompletionStatus::Complete => Status::Failed,
                CompletionStatus::BudgetExhausted => Status::BudgetExhausted,
            });
        }
    }
    match output {
        Some(path) => std::fs::write(path, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(status)
}

fn cmd_matcheck(inputs: &[PathBuf], out: &mut dyn Write) -> Result<Status> {
    let mut status = Status::Ok;
    let mut report = |name: &str, r: crate::matcheck::MatrixReport, out: &mut dyn Write| -> Result<()> {
        writeln!(out, "{name}:")?;
        write!(out, "{r}")?;
        if !r.passed() {
            status = Status::Failed;
        }
        Ok(())
    };
    if inputs.is_empty() {
        report("three-matrix counterexample", example1_check(&Example1::standard())?, out)?;
        report("projection counterexample", example2_check(&Example2::standard())?, out)?;
    }
    for path in inputs {
        let fixture = MatrixFixture::parse(&read(path)?).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        report(&path.display().to_string(), fixture.run()?, out)?;
    }
    Ok(status)
}
