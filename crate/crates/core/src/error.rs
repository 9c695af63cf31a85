use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base {0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be at least 1, got {0}")]
    InvalidExponent(u32),
    #[error("{p}^{n} does not fit in 63 bits")]
    ModulusTooLarge { p: u64, n: u32 },
    #[error("composition degree 2^{reps} exceeds the cap 2^{cap_log2}")]
    DegreeCapExceeded { reps: u32, cap_log2: u32 },
    #[error("state space of {states} exceeds the cap {cap}")]
    StateSpaceTooLarge { states: u64, cap: u64 },
    #[error("mu = {0} is divisible by 3")]
    MuDivisibleBy3(u64),
    #[error("the closed-form law only covers p = 3, got p = {0}")]
    NotBase3(u64),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("formula exponent {exponent} is negative for n = {n}")]
    ExponentOutOfRange { n: u32, exponent: i64 },
}

impl Error {
    /// True for errors caused by a size guard rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::StateSpaceTooLarge { .. } | Error::DegreeCapExceeded { .. } | Error::ModulusTooLarge { .. }
        )
    }
}
