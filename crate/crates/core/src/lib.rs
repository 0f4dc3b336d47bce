//! Lê numbers, relative polar numbers and sectional Milnor numbers of
//! isolated and non-isolated hypersurface singularities, computed exactly
//! over the rationals, together with checkers for the inequalities that
//! relate them.

pub mod arith;
pub mod checks;
pub mod cycles;
pub mod error;
pub mod field;
pub mod groebner;
pub mod poly;
pub mod report;
pub mod sectional;

pub use error::{Error, Result};
pub use field::{Fp, Fq, ModP, Rational};
pub use groebner::{Ideal, LocalLength, MonomialOrder};
pub use poly::{parse, Frame, Polynomial};

/// The chapters of the guide in `book/`, compiled so their code blocks run
/// as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/standard-bases.md")]
    mod standard_bases {}
    #[doc = include_str!("../../../book/src/le-numbers.md")]
    mod le_numbers {}
    #[doc = include_str!("../../../book/src/sectional.md")]
    mod sectional {}
    #[doc = include_str!("../../../book/src/inequalities.md")]
    mod inequalities {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
