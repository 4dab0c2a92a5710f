use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error at line {line}: {msg}")]
    ParseAt { line: usize, msg: String },

    #[error("invalid quandle: {0}")]
    InvalidQuandle(String),

    #[error("not a cocycle: {0}")]
    NotCocycle(String),

    #[error("orientation mismatch: {0}")]
    Orientation(String),

    #[error("coefficient group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("uniformity condition violated for {tangle}: {witness}")]
    Condition { tangle: String, witness: String },

    #[error("unknown name: {0}")]
    Unknown(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
