use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),

    #[error("line {0}: relation side is empty")]
    EmptyRelationSide(usize),

    #[error("budget must be positive")]
    NonPositiveBudget,

    #[error("letter `{0}` is outside the oracle alphabet")]
    ForeignLetter(String),

    #[error("syllable at vertex `{0}` is the identity")]
    TrivialSyllable(String),

    #[error("word is not reduced")]
    NotReduced,

    #[error("ideal is not in standard form: {0}")]
    NotStandard(String),

    #[error("empty factor in a product ideal")]
    EmptyFactor,

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("unknown oracle `{0}`")]
    UnknownOracle(String),

    #[error("semilattice has {0} elements, bound is {1}")]
    TooLarge(usize, usize),

    #[error("zero ideal")]
    ZeroIdeal,

    #[error("{0}")]
    Unsupported(String),

    #[error("{0}")]
    Invalid(String),

    #[error("invariant breach: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
