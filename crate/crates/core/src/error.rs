use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in field arithmetic")]
    DivisionByZero,
    #[error("coincident points do not determine a line")]
    CoincidentPoints,
    #[error("catalog has no points")]
    EmptyCatalog,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("n = {n}: {source}")]
    ForPolygon { n: u32, source: Box<Error> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
