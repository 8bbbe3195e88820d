use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("insufficient accuracy: at most {max_digits} digits can be certified")]
    InsufficientAccuracy { max_digits: u32 },

    #[error("pole at {0}")]
    Pole(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("unsupported evaluation point s = {0}")]
    UnsupportedPoint(i64),

    #[error("no registered partition for ({0}, {1})")]
    UnknownPartition(String, String),

    #[error("routes disagree for {name}: {first} vs {second}")]
    RouteDisagreement {
        name: String,
        first: String,
        second: String,
    },

    #[error("invalid precision context: {0}")]
    InvalidContext(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
