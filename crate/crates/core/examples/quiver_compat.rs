//! Infer domains and codomains for a set of polynomials, then break them.

use opcert::freealg::{parse, SymbolTable};
use opcert::quiver::{compatible, infer_signatures, Compatibility, Pin};

fn main() -> opcert::Result<()> {
    let mut t = SymbolTable::new();
    for name in ["a", "g", "b"] {
        t.declare_with_adjoint(name)?;
    }
    let polys = vec![parse("a g a - a", &t)?, parse("g a g - g", &t)?, parse("(a g)* - a g", &t)?, parse("b g - g", &t)?];

    let q = infer_signatures(&polys, &t, &[]).expect("consistent");
    print!("{}", q.export(&t));

    let stray = parse("a a - g", &t)?;
    match compatible(&stray, &q) {
        Compatibility::Yes(sig) => println!("a a - g has signature {sig:?}"),
        Compatibility::No(why) => println!("a a - g: {}", why.describe(&t)),
    }

    // merging vertices always succeeds, at the price of collapsing the quiver
    let mut all = polys.clone();
    all.push(parse("a b - b", &t)?);
    let merged = infer_signatures(&all, &t, &[]).expect("one vertex always fits");
    println!("with a b - b added: {} vertex", merged.vertices().len());

    // with a and g pinned between distinct spaces there is no quiver at all
    let pins = [
        Pin { label: t.lookup("a").unwrap(), source: "X".into(), target: "Y".into() },
        Pin { label: t.lookup("g").unwrap(), source: "Y".into(), target: "X".into() },
    ];
    println!("pinned: {}", if infer_signatures(&all, &t, &pins).is_some() { "consistent" } else { "no quiver fits" });
    Ok(())
}
