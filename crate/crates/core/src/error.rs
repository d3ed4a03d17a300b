use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("facet enumeration of the Mori cone is unsupported at rank {rank} (bound {bound})")]
    UnsupportedRank { rank: usize, bound: usize },
    #[error("weight {weight} is above the reduction bound {bound}")]
    BoundExceeded { weight: i64, bound: i64 },
    #[error("inconsistent linear system ({context})")]
    Inconsistent { context: String },
    #[error("Hodge module is not free on the basis at weight {weight}: {detail}")]
    NotFree { weight: i64, detail: String },
    #[error("series has no inverse: constant term is zero")]
    NonUnit,
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 1,
            Error::Validation(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
