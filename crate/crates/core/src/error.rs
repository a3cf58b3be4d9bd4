use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("p = 2 is not supported, an odd prime is required")]
    EvenPrime,

    /// The quantity has negative `p`-adic valuation, so no congruence modulo
    /// a power of `p` is meaningful.
    #[error("value is not {p}-integral (valuation {valuation})")]
    NotPIntegral { p: u64, valuation: i64 },

    #[error("p-adic context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },

    #[error("division by an element that vanishes modulo {p}^{precision}")]
    DivisionByZero { p: u64, precision: u32 },

    #[error("precision exhausted: {available} digits available, {required} required")]
    PrecisionExhausted { available: u32, required: u32 },

    #[error("working modulus {p}^{precision} does not fit in 126 bits")]
    PrecisionTooLarge { p: u64, precision: u32 },

    #[error("negative Lucas index {index} is only defined for B = 1")]
    NegativeLucasIndex { index: i64 },

    #[error("lower parameter {parameter} makes the Pochhammer denominator vanish at k = {k}")]
    VanishingDenominator { parameter: String, k: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("oracle and modular paths disagree: {0}")]
    PathDisagreement(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
