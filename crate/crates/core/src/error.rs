use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in incompatible rings or fields, or an order precondition is violated.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{what}: {required} exceeds the configured cap {cap}")]
    CapExceeded {
        what: String,
        required: u128,
        cap: u128,
    },

    /// A `dz_j` without its matching `t_j` factor; signals a misconstructed relation.
    #[error("monomial {0} cannot be rewritten in the u variables")]
    UnconvertibleMonomial(String),

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn cap(what: impl Into<String>, required: u128, cap: u128) -> Error {
        Error::CapExceeded {
            what: what.into(),
            required,
            cap,
        }
    }
}
