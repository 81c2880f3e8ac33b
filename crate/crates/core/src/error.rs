use thiserror::Error;

/// Errors raised by generators and measure computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet symbols must be distinct and non-empty")]
    BadAlphabet,
    #[error("symbol '{0}' is not in the alphabet")]
    UnknownSymbol(char),
    #[error("morphism image for '{0}' is empty (erasing rules are rejected)")]
    ErasingRule(char),
    #[error("morphism is not prolongable on '{0}'")]
    NotProlongable(char),
    #[error("requested length must be at least 1")]
    ZeroLength,
    #[error("generated length {requested} exceeds the configured cap {cap}")]
    LengthOverflow { requested: u128, cap: usize },
    #[error("directive sequence exhausted after {available} entries")]
    DirectiveExhausted { available: usize },
    #[error("directive entries after d_0 must be positive")]
    BadDirective,
    #[error("integer sequence violates its constraints: {0}")]
    BadSequence(String),
    #[error("toeplitz pattern needs at least one hole and one non-hole symbol")]
    BadPattern,
    #[error("position {pos} out of range 1..={n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("interval [{i}, {j}] invalid for word length {n}")]
    BadInterval { i: usize, j: usize, n: usize },
    #[error("word length {n} exceeds the {what} guard {guard}")]
    GuardExceeded {
        n: usize,
        guard: usize,
        what: &'static str,
    },
    #[error("no attractor of size <= {budget} exists (budget exceeded)")]
    BudgetExceeded { budget: usize },
    #[error("operation requires a non-empty word")]
    EmptyWord,
    #[error("bound is vacuous: epsilon_n = {epsilon} >= 1")]
    VacuousBound { epsilon: f64 },
    #[error("need at least {need} samples spanning {doublings} doublings, got {got}")]
    InsufficientSamples {
        need: usize,
        doublings: u32,
        got: usize,
    },
    #[error("invalid generator spec near '{at}': {why}")]
    SpecParse { at: String, why: String },
    #[error("position set is not a string attractor of the given word")]
    NotAnAttractor,
}

pub type Result<T> = std::result::Result<T, Error>;
