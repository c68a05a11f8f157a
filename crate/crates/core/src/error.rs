use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live in different contexts")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("not monic: {0}")]
    NotMonic(String),
    #[error("not separable: {0}")]
    Inseparable(String),
    #[error("not integral: {0}")]
    NotIntegral(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("exact division failed")]
    InexactDivision,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
