//! Check a certificate file, then tamper with it.
//!
//! `cargo run --example verify_certificate [FILE]`

use std::path::PathBuf;

use opcert::certify::{verify_certificate, CertificateFile, Verdict};

fn main() -> opcert::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/werner_paper.cert"));
    let file = CertificateFile::read(&path)?;
    let (_, cert) = file.to_certificate()?;
    println!("{}: {:?}", path.display(), verify_certificate(&cert));

    let mut tampered = file.clone();
    let s = &mut tampered.summands[0];
    s.left = format!("-({})", s.left);
    let (table, bad) = tampered.to_certificate()?;
    match verify_certificate(&bad) {
        Verdict::Valid => println!("with the first cofactor negated: still valid?"),
        Verdict::Invalid(why) => println!("with the first cofactor negated: {}", why.describe(&table)),
    }
    Ok(())
}
