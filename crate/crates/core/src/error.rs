use thiserror::Error;

/// Errors raised by the library. The CLI maps `Validation`-class variants to
/// exit code 2 and `Budget`-class variants to exit code 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("enclosure of {base}^{exponent} still straddles an integer at {bits} bits")]
    PrecisionExhausted {
        base: u64,
        exponent: String,
        bits: u32,
    },

    #[error("invalid modulus: q must be positive")]
    InvalidModulus,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge: {0}")]
    QuadratureNotConverged(String),

    #[error("major arcs M({a1},{q1}) and M({a2},{q2}) overlap")]
    ArcsOverlap { a1: u64, q1: u64, a2: u64, q2: u64 },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("grid too large: {0}")]
    GridTooLarge(String),

    #[error("integer overflow while {0}")]
    Overflow(String),
}

impl Error {
    /// True for failures caused by resource limits rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted { .. }
                | Error::BudgetExceeded(_)
                | Error::GridTooLarge(_)
                | Error::Overflow(_)
                | Error::QuadratureNotConverged(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
