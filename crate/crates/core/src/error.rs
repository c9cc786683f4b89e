use thiserror::Error;

/// Errors surfaced by the library and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid angle: {0}")]
    InvalidAngle(String),

    #[error("conductor too large: {conductor} exceeds bound {bound}")]
    ConductorTooLarge { conductor: u64, bound: u64 },

    #[error("coefficient overflow in exact arithmetic")]
    CoefficientOverflow,

    #[error("division by zero")]
    DivisionByZero,

    #[error("value is not real")]
    NotReal,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("matrix is not Hermitian (residual {0})")]
    NotHermitian(String),

    #[error("polar vector not positive")]
    PolarNotPositive,

    #[error("no such symmetric group for (n, m) = ({n}, {m})")]
    NoSuchSymmetricGroup { n: u32, m: u32 },

    #[error("group is not in symmetric mode: {0}")]
    NotSymmetric(String),

    #[error("lemma hypothesis violated: {0}")]
    LemmaHypothesis(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("unknown identity {suite}/{id}")]
    UnknownIdentity { suite: String, id: String },

    #[error("identity {0} requires an angle argument")]
    MissingArgument(String),

    #[error("unknown candidate: {0}")]
    UnknownCandidate(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
