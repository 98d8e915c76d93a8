use thiserror::Error;

/// Errors raised by the coupling engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A quantum number, polynomial index or argument is outside the domain
    /// of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A lower-parameter Pochhammer symbol of a terminating hypergeometric
    /// series vanished before the series terminated.
    #[error("indeterminate hypergeometric term at index {index}")]
    IndeterminateTerm { index: u32 },

    /// An internal identity did not hold (odd half-angle exponent, mismatched
    /// series layout, and so on).
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// The requested expansion would exceed the configured degree budget.
    #[error("expansion needs degree {required}, budget is {budget}")]
    Budget { required: u32, budget: u32 },

    /// Text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
