//! Error taxonomy shared by every module. Numerical domains are unforgiving;
//! each failure names the offending quantity so callers can react (poles are
//! features here, not bugs).

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Evaluation hit (or came within threshold of) a pole of the function.
    #[error("pole: {0}")]
    Pole(String),

    /// Iterative evaluation failed to reach tolerance within its budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Argument outside the operation's domain.
    #[error("domain: {0}")]
    Domain(String),

    /// Bessel function of the second kind at integer order is excluded.
    #[error("integer order: {0}")]
    IntegerOrder(String),

    /// Matrix shape precondition violated.
    #[error("shape: {0}")]
    Shape(String),

    /// Determinant arithmetic left the representable range; the asymptotics
    /// module is the supported tool in that regime.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A formula denominator (u, x, ...) is below the pole-screening threshold.
    #[error("singular: {0}")]
    Singular(String),

    /// A Backlund/recurrence denominator degenerated.
    #[error("degenerate: {0}")]
    Degenerate(String),

    /// Re(alpha) sits on an excluded window boundary (even-integer breakpoint).
    #[error("boundary alpha: {0}")]
    BoundaryAlpha(String),

    /// Index argument outside its admissible range.
    #[error("range: {0}")]
    Range(String),

    /// Both leading coefficients of the asymptotic regime vanish.
    #[error("degenerate coefficient: {0}")]
    DegenerateCoefficient(String),

    /// Exponent-lattice collision or vanishing solvability factor.
    #[error("resonance: {0}")]
    Resonance(String),

    /// Series inversion of a series without an invertible leading term.
    #[error("zero leading term: {0}")]
    ZeroLead(String),

    /// Chart inversion at y = 0.
    #[error("zero: {0}")]
    Zero(String),

    /// Runge-Kutta stage produced a non-finite value.
    #[error("step: {0}")]
    Step(String),

    /// Adaptive step size underflowed.
    #[error("stall: {0}")]
    Stall(String),

    /// Tracing to a grid seed point failed.
    #[error("seed: {0}")]
    Seed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit-code class used by the CLI: 3 for domain-style rejections,
    /// 4 for numerical failures.
    pub fn exit_class(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::Range(_)
            | Error::Shape(_)
            | Error::BoundaryAlpha(_)
            | Error::IntegerOrder(_)
            | Error::DegenerateCoefficient(_) => 3,
            _ => 4,
        }
    }
}
