//! Inner inverse of a product, certified from scratch.
//!
//! Run with `cargo run --example werner`.

use opcert::certify::{certify_named, verify_certificate, ClaimOutcome, CertifyOptions};
use opcert::freealg::{parse, render, MonomialOrder, SymbolTable};
use opcert::statements::{identity_axioms, Side};

fn main() -> opcert::Result<()> {
    let mut t = SymbolTable::new();
    for name in ["a", "a⁻", "b", "b⁻", "i"] {
        t.declare(name)?;
    }
    let sym = |n: &str| t.lookup(n).unwrap();

    let mut assumptions = vec![
        parse("a a⁻ a - a", &t)?,
        parse("b b⁻ b - b", &t)?,
        parse("b b⁻ (i - a⁻ a) - i + a⁻ a", &t)?,
    ];
    assumptions.extend(identity_axioms(
        sym("i"),
        &[(sym("a"), Side::Right), (sym("a⁻"), Side::Left), (sym("b"), Side::Left), (sym("b⁻"), Side::Right)],
    ));
    let names: Vec<String> = (1..=assumptions.len()).map(|k| format!("f{k}")).collect();
    let claim = parse("a b b⁻ a⁻ a b - a b", &t)?;

    let report = certify_named(&assumptions, &names, &[claim], &MonomialOrder::declaration(&t), &CertifyOptions::default())?;
    let ClaimOutcome::Certified(cert) = &report.claims[0] else {
        println!("not certified: {:?}", report.claims[0]);
        return Ok(());
    };
    println!("f = {}", render(&cert.claim, &t));
    for s in &cert.summands {
        println!("  + ({}) {} ({})", render(&s.left, &t), cert.names[s.index], render(&s.right, &t));
    }
    println!("verifier: {:?}, integral: {}", verify_certificate(cert), cert.integral);
    Ok(())
}
