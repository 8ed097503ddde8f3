use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("division by zero class")]
    DivisionByZero,

    #[error("class has a pole at L = {0}")]
    Pole(String),

    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("series constant term is not invertible")]
    NonInvertibleConstant,

    #[error("series constant term must be {expected}, found {found}")]
    BadConstantTerm {
        expected: &'static str,
        found: String,
    },

    #[error("factor {index} is not 1 + O(t^{index}): coefficient of t^{degree} is {coeff}")]
    FactorContract {
        index: usize,
        degree: usize,
        coeff: String,
    },

    #[error("class {0} is not an effective Laurent polynomial in L")]
    NotEffective(String),

    #[error("class {0} is not a polynomial in L")]
    NotPolynomial(String),

    #[error("coefficient {index} left the localized ring: {coeff}")]
    LeftLocalization { index: usize, coeff: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("request needs about {estimate} tuple evaluations, budget is {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = MotiveError> = std::result::Result<T, E>;
