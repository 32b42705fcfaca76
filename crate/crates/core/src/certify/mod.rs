//! Ideal-membership certification: complete the assumption ideal, reduce the
//! claims, and turn the reduction traces into certificates that are checked
//! by plain expansion before they are reported.

mod certificate;
mod file;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::Zero;

pub use certificate::{minimize_certificate, verify_certificate, Certificate, Invalid, Summand, Verdict};
pub use file::{CertificateFile, IndeterminateEntry, NamedExpr, SummandEntry};

use crate::error::{Error, Result};
use crate::freealg::{MonomialOrder, Polynomial};
use crate::rewrite::{worker_pool, CompletionLimits, CompletionStats, Engine, Outcome, Step};

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub limits: CompletionLimits,
    pub workers: usize,
    /// Reject assumptions with a constant term. Certificates over such
    /// assumptions are still valid ring identities but do not transfer to
    /// operators with domains and codomains.
    pub require_constant_free: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { limits: CompletionLimits::default(), workers: 1, require_constant_free: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimOutcome {
    Certified(Certificate),
    /// The basis was not completed within the limits; `remainder` is the
    /// irreducible part of the claim at that point.
    BudgetExhausted { remainder: Polynomial },
    /// The basis is a complete Gröbner basis and the claim has a nonzero
    /// normal form, so it is not in the ideal.
    NotMember { remainder: Polynomial },
    /// The solver produced a representation that failed verification. Never
    /// expected; reported instead of emitting an unchecked certificate.
    Rejected(String),
}

impl ClaimOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ClaimOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct CertifyStats {
    pub completion: CompletionStats,
    pub elapsed: Duration,
    /// Term count per claim, `None` when no certificate was found.
    pub certificate_terms: Vec<Option<usize>>,
}

#[derive(Clone, Debug)]
pub struct CertifyReport {
    pub claims: Vec<ClaimOutcome>,
    /// Union of the assumption indices used by the certificates.
    pub used_assumption_indices: BTreeSet<usize>,
    pub stats: CertifyStats,
}

impl CertifyReport {
    pub fn all_certified(&self) -> bool {
        self.claims.iter().all(|c| matches!(c, ClaimOutcome::Certified(_)))
    }

    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.claims.iter().filter_map(ClaimOutcome::certificate)
    }
}

/// Certifies each claim against the ideal generated by `assumptions` with
/// default options.
pub fn certify(
    assumptions: &[Polynomial],
    claims: &[Polynomial],
    ord: &MonomialOrder,
    limits: &CompletionLimits,
) -> Result<CertifyReport> {
    let opts = CertifyOptions { limits: limits.clone(), ..Default::default() };
    certify_with(assumptions, claims, ord, &opts)
}

pub fn certify_with(
    assumptions: &[Polynomial],
    claims: &[Polynomial],
    ord: &MonomialOrder,
    opts: &CertifyOptions,
) -> Result<CertifyReport> {
    let names = Certificate::default_names(assumptions.len());
    certify_named(assumptions, &names, claims, ord, opts)
}

/// As [`certify_with`], with display names for the assumptions.
pub fn certify_named(
    assumptions: &[Polynomial],
    names: &[String],
    claims: &[Polynomial],
    ord: &MonomialOrder,
    opts: &CertifyOptions,
) -> Result<CertifyReport> {
    let start = Instant::now();
    opts.limits.validate()?;
    if opts.require_constant_free {
        for (index, a) in assumptions.iter().enumerate() {
            let c = a.constant_term();
            if !c.is_zero() {
                return Err(Error::ConstantTerm { index, constant: c.to_string() });
            }
        }
    }

    let encoded_claims: Vec<Polynomial> = claims.iter().map(|c| ord.encode(c)).collect();
    let mut engine = Engine::for_completion(assumptions.iter().map(|a| ord.encode(a)).collect(), opts.limits.max_degree);
    let pool = worker_pool(opts.workers);

    let mut found: Vec<Option<Vec<Step>>> = vec![None; claims.len()];
    let mut checked_at = usize::MAX;
    let outcome = engine.run(&opts.limits, pool.as_ref(), |eng| {
        let created = eng.stats.elements_created;
        if created == checked_at {
            return false;
        }
        checked_at = created;
        for (k, claim) in encoded_claims.iter().enumerate() {
            if found[k].is_none() {
                let (r, steps) = eng.reduce(claim.clone());
                if r.is_zero() {
                    found[k] = Some(steps);
                }
            }
        }
        found.iter().all(Option::is_some)
    });

    let mut outcomes = Vec::with_capacity(claims.len());
    let mut terms = Vec::with_capacity(claims.len());
    for (k, claim) in claims.iter().enumerate() {
        let result = match found[k].take() {
            Some(steps) => {
                let summands = engine
                    .expand(&steps)
                    .into_iter()
                    .map(|(c, l, g, r)| Summand {
                        left: Polynomial::monomial(ord.decode_word(&l), c),
                        index: g,
                        right: Polynomial::word(ord.decode_word(&r)),
                    })
                    .collect();
                let cert = minimize_certificate(&Certificate::new(
                    claim.clone(),
                    assumptions.to_vec(),
                    names.to_vec(),
                    summands,
                ));
                match verify_certificate(&cert) {
                    Verdict::Valid => ClaimOutcome::Certified(cert),
                    Verdict::Invalid(why) => ClaimOutcome::Rejected(why.to_string()),
                }
            }
            None => {
                let (r, _) = engine.reduce(encoded_claims[k].clone());
                let remainder = ord.decode(&r);
                if outcome == Outcome::Complete && !r.is_zero() {
                    ClaimOutcome::NotMember { remainder }
                } else {
                    ClaimOutcome::BudgetExhausted { remainder }
                }
            }
        };
        terms.push(result.certificate().map(Certificate::term_count));
        outcomes.push(result);
    }

    let used = outcomes.iter().filter_map(ClaimOutcome::certificate).flat_map(|c| c.used_indices()).collect();
    Ok(CertifyReport {
        claims: outcomes,
        used_assumption_indices: used,
        stats: CertifyStats { completion: engine.stats.clone(), elapsed: start.elapsed(), certificate_terms: terms },
    })
}
