//! Free algebra over the rationals: indeterminates, words, polynomials, the
//! degree-lexicographic monomial order and the involution.

mod expr;
mod order;
mod poly;
mod symbol;
mod word;

pub use expr::{parse, parse_in, render, ParseContext, ParseError};
pub use order::MonomialOrder;
pub use poly::Polynomial;
pub use symbol::{Indeterminate, Sym, SymbolTable};
pub use word::Word;

/// Exact coefficient field.
pub type Rational = num_rational::BigRational;

/// Builds the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
