//! Exact rational matrix checks: the reverse order law fails for range
//! inclusions in the wrong direction, and a {1,3,4}-inverse is not enough.

use opcert::matcheck::{example1_check, example2_check, mp_inverse, penrose_check, parse_matrix, Example1, Example2};

fn main() -> opcert::Result<()> {
    println!("three-matrix counterexample:\n{}", example1_check(&Example1::standard())?);
    println!("projection counterexample:\n{}", example2_check(&Example2::standard())?);

    let m = parse_matrix("[1 2 3; 2 4 6]")?;
    let g = mp_inverse(&m);
    println!("pinv {m} = {g}");
    println!("Penrose equations: {:?}", penrose_check(&m, &g)?);
    Ok(())
}
