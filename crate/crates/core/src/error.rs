use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported root system {lie_type}{rank}")]
    UnsupportedType { lie_type: String, rank: usize },

    #[error("weight {0:?} is not dominant")]
    NonDominant(Vec<i32>),

    #[error("weight {weight:?} has {got} coordinates, expected {expected}")]
    RankMismatch {
        weight: Vec<i32>,
        expected: usize,
        got: usize,
    },

    #[error("torus point is singular: |Weyl denominator| = {magnitude:.3e}")]
    SingularPoint { magnitude: f64 },

    #[error("twist {kind} is not defined on {lie_type}")]
    IllegalPair { lie_type: String, kind: String },

    #[error("weight {weight:?} is not in the level-{level} alphabet")]
    NotInAlphabet { weight: Vec<i32>, level: u32 },

    #[error("{slot} weight {weight:?} is not in the level-{level} alphabet")]
    WeightNotInAlphabet {
        slot: String,
        weight: Vec<i32>,
        level: u32,
    },

    #[error("unstable input: {0}")]
    UnstableInput(String),

    #[error("inconsistent ramification: {0}")]
    InconsistentRamification(String),

    #[error("{context}: raw value {re}{im:+}i is not within {tolerance:e} of an integer (residual {residual:.3e})")]
    NonIntegral {
        context: String,
        re: f64,
        im: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("schema error: {}", format_violations(.0))]
    Schema(Vec<SchemaViolation>),

    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaViolation {
    pub path: String,
    pub message: String,
}

fn format_violations(v: &[SchemaViolation]) -> String {
    v.iter()
        .map(|s| format!("{}: {}", s.path, s.message))
        .collect::<Vec<_>>()
        .join("; ")
}
