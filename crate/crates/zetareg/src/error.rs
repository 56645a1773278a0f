//! Error taxonomy shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gamma-family pole: the argument is the non-positive integer carried here.
    #[error("pole at non-positive integer {0}")]
    Pole(i64),
    /// Pole of a zeta function itself (s = 1 for the Hurwitz zeta,
    /// s = 1/m and its left-shifted companions for the theta zeta).
    #[error("zeta function pole at s = {0}")]
    ZetaPole(f64),
    /// Input outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structural limit was exceeded (table size, derivative order, degree).
    #[error("{what}: requested {got}, capacity {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    /// An iterative scheme ran out of budget before reaching tolerance.
    #[error("failed to converge: {0}")]
    Convergence(String),
    /// Evaluation would overflow binary64; the offending magnitude is carried.
    #[error("overflow: argument magnitude {0} exceeds the safe clamp")]
    Overflow(f64),
    /// A NaN or infinity appeared where a finite value is required.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}
