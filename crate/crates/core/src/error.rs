use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("permutation {0} is sum decomposable")]
    SumDecomposable(String),
    #[error("K-set does not determine a unique permutation: {0}")]
    Ambiguous(String),
    #[error("basis must be nonempty")]
    EmptyBasis,
    #[error("oracle is not downward closed: {member} is accepted but its child {child} is not")]
    NotDownwardClosed { member: String, child: String },
    #[error("insertion encoding is not regular: class contains long {0} alternations")]
    NotRegular(String),
    #[error("automaton needs more than {cap} slots")]
    SlotBoundExceeded { cap: usize },
    #[error("length {len} exceeds the configured bound {bound}")]
    LengthBound { len: usize, bound: usize },
    #[error("series error: {0}")]
    Series(String),
    #[error("no positive real singularity")]
    NoPositiveRoot,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("growth root is not simple")]
    MultipleRoot,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("sequence is not realizable: {0}")]
    NotRealizable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
