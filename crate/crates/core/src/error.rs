use alloc::string::String;

use crate::dse::BindingConstraint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} elements, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("transform order {order} exceeds the configured maximum of {max}")]
    OrderTooLarge { order: u32, max: u32 },

    #[error("cannot allocate {elements} elements for a dense transform matrix")]
    ResourceLimit { elements: usize },

    #[error("code {code} at index {index} does not fit in {bits} bits")]
    CodeOutOfRange { index: usize, code: i64, bits: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("no ADC satisfies the requirements (binding constraint: {0})")]
    Infeasible(BindingConstraint),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
