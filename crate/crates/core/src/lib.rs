//! Context-free grammar calculus over exact Laurent polynomials.

pub mod catalog;
pub mod error;
pub mod grammar;
pub mod identities;
pub mod oracle;
pub mod poly;
pub mod recurrences;

pub use error::{Error, Result};
pub use grammar::{parse_grammar, Grammar};
pub use poly::{parse_poly, sym, Monomial, Poly, Rational, Symbol, TruncatedSeries};
