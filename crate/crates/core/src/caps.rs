//! Enumeration limits. Every exhaustive routine checks its size against one of these.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Points of `F_p^m` visited by brute-force counting.
    pub points: u128,
    /// Subsets of `{1..m}` visited by flat enumeration.
    pub flats: u128,
    /// Kernel vectors visited when listing every relation over `F_p`.
    pub relations: u128,
    /// Elements of the enumerated Gröbner families in the module lemma check.
    pub family: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            points: 1_000_000,
            flats: 4096,
            relations: 4096,
            family: 20_000,
        }
    }
}
