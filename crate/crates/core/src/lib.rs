//! Certified proofs of operator identities.
//!
//! Assumptions and claims about operators (generalized inverses, range
//! inclusions, cancellability) are translated into noncommutative
//! polynomials. A bounded Buchberger-style completion with full cofactor
//! tracking then looks for a two-sided representation of each claim in terms
//! of the assumptions. Such a representation is a certificate that anyone can
//! check by expanding it, and when every polynomial involved is compatible
//! with a labelled quiver of domains and codomains, it proves the identity for
//! matrices and bounded operators as well as in rings with involution.

pub mod certify;
pub mod cli;
pub mod error;
pub mod freealg;
pub mod matcheck;
pub mod quiver;
pub mod rewrite;
pub mod statements;

pub use error::{Error, Result};
