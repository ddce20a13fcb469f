use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall in two families: domain errors (bad input, violated
/// preconditions, failed re-checks) and resource errors (precision, index or
/// enumeration caps). The CLI maps them to exit codes 1 and 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial has no content decomposition")]
    ZeroPolynomial,
    #[error("factorization degree cap exceeded (degree {degree} > cap {cap})")]
    FactorDegreeCap { degree: usize, cap: usize },
    #[error("cyclotomic test requires monic input")]
    NotMonic,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot certify root isolation at cap ({cap} bits)")]
    PrecisionCap { cap: u64 },
    #[error("indeterminate log⁺; refine precision")]
    IndeterminateLog,
    #[error("structure violation ({condition}) at index {index}: {detail}")]
    Structure {
        condition: &'static str,
        index: u64,
        detail: String,
    },
    #[error("index cap exceeded: {0}")]
    IndexCap(String),
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("no witness found up to index cap {cap}")]
    NoWitness { cap: u64 },
    #[error("Kronecker premise violated: {0}")]
    KroneckerPremise(String),
    #[error("simplicity undecided at this degree ({0})")]
    SimplicityUndecided(usize),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
    #[error("recheck failed: {0}")]
    Recheck(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for errors caused by a precision, index or enumeration cap.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::PrecisionCap { .. }
                | Error::IndexCap(_)
                | Error::Budget { .. }
                | Error::FactorDegreeCap { .. }
                | Error::NoWitness { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
