use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("{what} enumeration needs dimension {dimension}, above the cap of {cap}")]
    CapExceeded { what: &'static str, dimension: usize, cap: usize },

    #[error("matroid is not connected")]
    NotConnected,

    #[error("matroid is not regular (it has an F7 or F7* minor); use the brute-force predicates instead")]
    NotRegular,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid family specification: {0}")]
    InvalidSpec(String),

    #[error("element {0} does not exist")]
    NoSuchElement(usize),
}

pub type Result<T> = std::result::Result<T, MatroidError>;
