use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("invalid partition or composition: {0}")]
    InvalidPartition(String),
    #[error("partition {0} is not {1}")]
    WrongClass(String, &'static str),
    #[error("unequal degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("zero module")]
    ZeroModule,
    #[error("module relations violated: {0}")]
    RelationViolated(String),
    #[error("subspace is not stable under the algebra action: {0}")]
    NotStable(String),
    #[error("incomplete list of simple modules: {0}")]
    IncompleteSimples(String),
    #[error("negative multiplicity while decomposing a character at {0}")]
    NegativeMultiplicity(String),
    #[error("identification failed: {0}")]
    Identification(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
