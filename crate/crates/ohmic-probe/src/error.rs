use std::fmt;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Gamma function evaluated at (or too close to) a non-positive integer.
    Pole { x: f64 },
    /// An argument fell outside the valid domain of an operation.
    Domain(String),
    /// Adaptive quadrature exhausted its panel budget before reaching the
    /// requested tolerance.
    Convergence {
        estimate: f64,
        error: f64,
        panels: usize,
    },
    /// Matrices of incompatible dimensions were combined.
    DimensionMismatch { expected: usize, got: usize },
    /// A numerical routine (e.g. eigendecomposition) failed to converge.
    Numerical(String),
    /// The bracket scan found no interior maximum.
    Bracket(String),
    /// No sign change of the compared figures of merit in the scanned range.
    NoCrossover { s_lo: f64, s_hi: f64 },
    /// Too few usable Monte Carlo trials to form a variance estimate.
    InsufficientData { valid: usize, required: usize },
    /// Invalid run configuration (CLI flags or config file).
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { x } => write!(f, "gamma function pole at x = {x}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence {
                estimate,
                error,
                panels,
            } => write!(
                f,
                "quadrature did not converge: estimate {estimate}, error {error} after {panels} panels"
            ),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::Numerical(msg) => write!(f, "numerical error: {msg}"),
            Error::Bracket(msg) => write!(f, "bracket error: {msg}"),
            Error::NoCrossover { s_lo, s_hi } => {
                write!(f, "no crossover detected in [{s_lo}, {s_hi}]")
            }
            Error::InsufficientData { valid, required } => {
                write!(f, "insufficient data: {valid} usable trials, need {required}")
            }
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
