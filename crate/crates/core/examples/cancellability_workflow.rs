//! A quasi-identity step: certify (1 - m mt) m m*, cancel m* on the right,
//! then prove that mt is the Moore-Penrose inverse of m = abc.

use std::path::Path;

use opcert::certify::{certify_named, ClaimOutcome};
use opcert::freealg::render;
use opcert::statements::{parse_problem, translate, translate_without_workflow, StepOutcome};

fn main() -> opcert::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/thm2_3_v_to_i.prob");
    let problem = parse_problem(&std::fs::read_to_string(path)?)?;

    // without the cancellation step the claims stay out of reach
    let mut bare = translate_without_workflow(&problem)?;
    bare.options.limits.max_degree = 10;
    let before = certify_named(&bare.assumption_polys(), &bare.assumption_names(), &bare.claim_polys(), &bare.order, &bare.options)?;
    let open = before.claims.iter().filter(|c| !matches!(c, ClaimOutcome::Certified(_))).count();
    println!("without the workflow: {open} of {} claims open at degree 10", before.claims.len());

    let tr = translate(&problem)?;
    for rec in &tr.workflow {
        match &rec.outcome {
            StepOutcome::Applied { conclusion, certificate } => println!(
                "witness {} certified ({} terms); added {}",
                render(&rec.step.witness, &tr.table),
                certificate.term_count(),
                render(conclusion, &tr.table)
            ),
            StepOutcome::Failed(o) => println!("witness not certified: {o:?}"),
        }
    }
    let report = certify_named(&tr.assumption_polys(), &tr.assumption_names(), &tr.claim_polys(), &tr.order, &tr.options)?;
    for ((name, claim), outcome) in tr.claims.iter().zip(&report.claims) {
        let status = match outcome {
            ClaimOutcome::Certified(c) => format!("certified, {} terms", c.term_count()),
            other => format!("{other:?}"),
        };
        println!("{name}: {} : {status}", render(claim, &tr.table));
    }
    Ok(())
}
