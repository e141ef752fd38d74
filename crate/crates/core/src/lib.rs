//! Exact presentations of the reciprocal-plane ring `F[t]/I` of a hyperplane
//! arrangement and of its graded-commutative analog `Ξ/K`, together with
//! independent Gröbner-based oracles that verify them instance by instance.

pub mod arrangement;
pub mod caps;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod modgroebner;
pub mod oracle;
pub mod poly;
pub mod relations;
pub mod superalg;
pub mod text;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
