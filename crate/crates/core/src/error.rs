use thiserror::Error;

use crate::algebra::AlgebraId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}: {constraint}")]
    InvalidRank {
        family: char,
        rank: usize,
        constraint: &'static str,
    },

    #[error("cannot parse algebra name {0:?} (expected e.g. \"A3\", \"B4\", \"E6\", \"G2\")")]
    UnknownAlgebra(String),

    #[error("cannot parse weight {0:?} (expected comma-separated integer labels, e.g. \"1,0,2\")")]
    WeightParse(String),

    #[error("weight has {found} labels but {algebra} has rank {expected}")]
    AlgebraMismatch {
        algebra: AlgebraId,
        expected: usize,
        found: usize,
    },

    #[error("{0:?} is not a root (simple-root coordinates)")]
    NotARoot(Vec<i64>),

    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("level {level} too small: {constraint}")]
    LevelTooSmall { level: i64, constraint: String },

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u64, u64),

    #[error("no closed-form tadpole formula for {0}; use enumeration")]
    NoClosedForm(AlgebraId),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("closed form for {algebra} at level {level} evaluated to non-integer {value}")]
    NonIntegral {
        algebra: AlgebraId,
        level: u64,
        value: String,
    },

    #[error("oracle produced negative multiplicity {multiplicity} at {weight}")]
    NegativeMultiplicity { weight: String, multiplicity: i64 },

    #[error("fold did not terminate within {0} reflections")]
    FoldDiverged(usize),
}
