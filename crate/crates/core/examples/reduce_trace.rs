//! Complete a small ideal and print the reduction trace of a member.

use opcert::freealg::{parse, render, MonomialOrder, Polynomial, SymbolTable};
use opcert::rewrite::{complete, CompletionLimits};

fn main() -> opcert::Result<()> {
    let mut t = SymbolTable::new();
    for name in ["x", "y"] {
        t.declare(name)?;
    }
    let gens = vec![parse("x y x - y", &t)?, parse("y y - x", &t)?];
    let ord = MonomialOrder::declaration(&t);
    let c = complete(&gens, &ord, &CompletionLimits { max_degree: 8, ..Default::default() });
    println!("{:?} after {} obstructions:", c.status, c.stats().obstructions_processed);
    for g in c.basis() {
        println!("  {}", render(&g, &t));
    }

    let p = parse("y (x y x - y) x + 3 (y y - x) y", &t)?;
    let r = c.reduce(&p);
    println!("reduce {}", render(&p, &t));
    println!("remainder {}", render(&r.value, &t));
    for s in &r.trace {
        let left = render(&Polynomial::monomial(s.left.clone(), s.coeff.clone()), &t);
        println!("  + ({left}) g{} ({})", s.index + 1, render(&Polynomial::word(s.right.clone()), &t));
    }
    println!("identity holds against the generators: {}", r.holds(&gens));
    Ok(())
}
