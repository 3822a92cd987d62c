use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("level M must be at least 1, got {0}")]
    InvalidLevel(i64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("variant mismatch: {0}")]
    VariantMismatch(String),

    #[error("torus enumeration produced {found} classes, expected c*M^n = {expected}")]
    TorusCount { expected: usize, found: usize },

    #[error("folding into the fundamental domain did not finish within {0} reflections")]
    FoldingDiverged(usize),

    #[error("coordinate {0:?} is not a point of the grid")]
    NotOnGrid(Vec<i64>),

    #[error("duplicate row for coordinate {0:?}")]
    DuplicateRow(Vec<i64>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
