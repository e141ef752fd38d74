//! Sparse multivariate polynomials over exact fields under explicit lex orders.

mod monomial;
mod polynomial;
mod ring;

pub use monomial::Monomial;
pub use polynomial::{Polynomial, Term};
pub(crate) use polynomial::format_sum;
pub use ring::{MonomialOrder, Ring, Var};

pub use crate::text::parse_polynomial;
