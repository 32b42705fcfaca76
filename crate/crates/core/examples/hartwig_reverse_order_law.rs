//! Triple reverse order law for Moore-Penrose inverses from range conditions.
//!
//! Takes a few seconds in release mode:
//! `cargo run --release --example hartwig_reverse_order_law`.

use std::path::Path;

use opcert::certify::{certify_named, verify_certificate, ClaimOutcome};
use opcert::statements::{parse_problem, translate};

fn main() -> opcert::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/hartwig_v_to_i.prob");
    let problem = parse_problem(&std::fs::read_to_string(path)?)?;
    let tr = translate(&problem)?;
    println!(
        "{} indeterminates, {} assumption polynomials, quiver with {} vertices ({})",
        tr.table.len(),
        tr.assumptions.len(),
        tr.quiver.vertices().len(),
        if tr.quiver_report.passed() { "compatible" } else { "incompatible" }
    );

    let report = certify_named(&tr.assumption_polys(), &tr.assumption_names(), &tr.claim_polys(), &tr.order, &tr.options)?;
    let stats = &report.stats;
    println!(
        "{} obstructions, basis {}, {:.2?}",
        stats.completion.obstructions_processed, stats.completion.basis_size, stats.elapsed
    );
    match &report.claims[0] {
        ClaimOutcome::Certified(c) => {
            let used: Vec<&str> = c.used_indices().into_iter().map(|k| c.names[k].as_str()).collect();
            println!("certified with {} terms, integral: {}", c.term_count(), c.integral);
            println!("uses {}", used.join(" "));
            println!("verifier: {:?}", verify_certificate(c));
        }
        other => println!("{other:?}"),
    }
    Ok(())
}
