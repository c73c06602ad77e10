use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,

    #[error("zero Wronskian")]
    ZeroWronskian,

    #[error("states must be distinct: {0} appears more than once")]
    DuplicateState(String),

    #[error("state {0} is not a type-III seed solution")]
    NotTypeIII(String),

    #[error("index {index} out of range for a tuple of {len} states")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("excluded parameter values g = {g}, h = {h}: need g +/- h not an integer and g, h not half-odd integers")]
    NonGeneric { g: String, h: String },

    #[error("quasi-rational exponents differ by {0}, which is not an even integer pair")]
    IncompatibleExponents(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
