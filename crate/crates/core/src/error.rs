use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input variable {0} has no assigned value")]
    MissingVariable(u32),
    #[error("expansion exceeded the term budget of {0}")]
    TermBudgetExceeded(usize),
    #[error("circuit has a negative constant; not monotone")]
    NotMonotone,
    #[error("malformed circuit: {0}")]
    MalformedCircuit(String),
    #[error("division by zero in GF(2^l)")]
    DivisionByZero,
    #[error("modulus {modulus:#b} is not an irreducible polynomial of degree {degree}")]
    ReducibleModulus { modulus: u32, degree: u32 },
    #[error("{0} is not a divisor of n = {1}")]
    NotADivisor(usize, usize),
    #[error("enumeration of {what} is too large (limit {limit})")]
    EnumerationTooLarge { what: String, limit: String },
    #[error("variable universe mismatch: {0}")]
    VariableUniverseMismatch(String),
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph exhausted after {0} matching edges")]
    GraphExhausted(usize),
    #[error("not an induced matching: {0}")]
    NotInducedMatching(String),
    #[error("D1 weight {weight} exceeds the number of columns {len}")]
    WeightExceedsLength { weight: usize, len: usize },
    #[error("sparsity {s} exceeds the number of rows {n}{note}")]
    SparsityExceedsRows { s: usize, n: usize, note: String },
    #[error("parameter degeneration: {0}")]
    ParameterDegeneration(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no sunflower found in the {0}-uniform slice within budget")]
    SunflowerNotFound(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
