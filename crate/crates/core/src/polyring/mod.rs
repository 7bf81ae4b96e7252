//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
mod order;
mod parse;
mod poly;
mod ring;

pub use monomial::{monomials_of_degree, Monomial};
pub use order::{MonomialOrder, OrderKind};
pub use parse::parse_poly;
pub use poly::{integer, product, rational, Coeff, Polynomial, Substitution, Term};
pub use ring::VarRing;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("substitution has no image for `{0}`")]
    MissingImage(String),
    #[error("homogenizing variable `{0}` already occurs")]
    HomvarOccurs(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
}
