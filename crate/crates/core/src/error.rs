use std::fmt;

use crate::factor::Factorization;

/// Pipeline stage of a quadratic extraction, used to tag failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Search for an interlacing base point.
    BaseSearch,
    /// Predicate bisection toward the interlacing boundary.
    Transition,
    /// Newton refinement of the common root.
    Refinement,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::BaseSearch => "b0-search",
            Stage::Transition => "transition",
            Stage::Refinement => "refinement",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("polynomial of degree {found} given where degree >= {required} is required")]
    DegreeTooLow { required: usize, found: usize },

    #[error("the zero polynomial has no root bound")]
    ZeroPolynomial,

    #[error("polynomial must be monic (leading coefficient {leading})")]
    NotMonic { leading: f64 },

    #[error("non-finite coefficient at index {index}")]
    NonFinite { index: usize },

    #[error("chain level {m} out of range 0..={max}")]
    LevelOutOfRange { m: usize, max: usize },

    #[error("interval [{lo}, {hi}] does not bracket a sign change")]
    NotBracketing { lo: f64, hi: f64 },

    #[error("root lists of sizes {left} and {right} cannot alternate (need left = right + 1)")]
    SizeMismatch { left: usize, right: usize },

    #[error("isolation incomplete at level {level}")]
    IsolationIncomplete { level: String },

    #[error("no interlacing b found within {doublings} doublings")]
    NoInterlacingBase { doublings: u32 },

    #[error("interlacing does not hold at the starting b = {b}")]
    NotInterlacing { b: f64 },

    #[error("no transition found below b = {b_hi}")]
    NoTransition { b_hi: f64 },

    #[error("degenerate factor: refinement stalled (singular Jacobian at a = {a}, b = {b})")]
    SingularJacobian { a: f64, b: f64 },

    #[error("refinement did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        a: f64,
        b: f64,
        residual: f64,
    },

    #[error("quadratic factor residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("invalid grid window: {0}")]
    InvalidWindow(String),

    #[error("{stage} stage failed: {source}")]
    Extraction {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error("factorization incomplete: {source}")]
    Incomplete {
        partial: Box<Factorization>,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at(stage: Stage) -> impl FnOnce(Error) -> Error {
        move |source| Error::Extraction {
            stage,
            source: Box::new(source),
        }
    }

    /// The extraction stage that failed, if this error carries one.
    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::Extraction { stage, .. } => Some(*stage),
            Error::Incomplete { source, .. } => source.stage(),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
