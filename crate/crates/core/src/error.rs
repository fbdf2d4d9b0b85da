use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{k} does not divide the conductor {conductor}")]
    RootOrder { k: u32, conductor: u32 },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("group-like check failed for {label}: {detail}")]
    NotGroupLike { label: String, detail: String },
    #[error("comodule axiom failed: {0}")]
    ComoduleAxiom(String),
    #[error("map is not of ansatz shape: {0}")]
    NotAnsatzShape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
