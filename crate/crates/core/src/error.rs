use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("extension degree {0} outside the supported range 1..=24")]
    DegreeOutOfRange(u32),

    #[error("inverse of zero requested (pow with negative exponent {0})")]
    ZeroInverse(i64),

    #[error("trace target degree {d} does not divide n = {n}")]
    TraceDegree { n: u32, d: u32 },

    #[error("invalid parameters (n = {n}, k = {k}): {reason}")]
    InvalidParams { n: u32, k: u32, reason: String },

    #[error("size guard: {0} (pass --allow-large to override)")]
    SizeGuard(String),

    #[error("operation requires {0}")]
    Unsupported(String),

    #[error("closed-form multiplicity `{row}` is not a nonnegative integer: {value}")]
    NonIntegral { row: String, value: String },

    #[error("distributions come from different parameter sets")]
    ParamMismatch,

    #[error("shift {tau} out of range 0..={max}")]
    ShiftOutOfRange { tau: u64, max: u64 },

    #[error("direct correlation {direct} disagrees with reduced form {reduced}")]
    ReductionMismatch { direct: i64, reduced: i64 },

    #[error("sequence id not in the family for these parameters: {0}")]
    InvalidSequence(String),
}
