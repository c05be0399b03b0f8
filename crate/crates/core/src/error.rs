use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word length {0} is outside 1..=64")]
    LengthOutOfRange(usize),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("bit set outside the first {len} positions (mask {bits:#x})")]
    StrayBits { bits: u64, len: usize },

    #[error("position {pos} outside 1..={len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("position weights must be positive (position {0} has weight 0)")]
    ZeroWeight(usize),

    #[error("duplicate codeword {0}")]
    DuplicateWord(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("code dimension {k} exceeds the enumeration cap {max}")]
    DimensionTooLarge { k: usize, max: usize },

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("code is not linear: {0}")]
    NotLinear(String),

    #[error("condition ({condition}) violated: {detail}")]
    ConditionViolated { condition: u8, detail: String },

    #[error("greedy selection exhausted after {found} of {wanted} positions")]
    GreedyExhausted { found: usize, wanted: usize },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("no valid head of {wanted} columns; deepest partial head {deepest:?}")]
    NoValidHead { wanted: usize, deepest: Vec<u64> },

    #[error("positions must be distinct: {0:?}")]
    DegeneratePositions(Vec<usize>),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
}

impl Error {
    /// True for errors that mean "no object with these parameters exists"
    /// rather than malformed input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::ConditionViolated { .. }
                | Error::GreedyExhausted { .. }
                | Error::Infeasible(_)
                | Error::NoValidHead { .. }
        )
    }
}
