//! Crate-wide error type.

use crate::basis::BasisKind;
use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by grid construction, matrix assembly, and solves.
#[derive(Debug, Error)]
pub enum Error {
    /// Time horizon must be positive and finite.
    #[error("time horizon must be positive and finite, got {0}")]
    InvalidHorizon(f64),

    /// Fewer subintervals than the basis supports.
    #[error("need at least {min} subinterval(s), got {n}")]
    TooFewSubintervals { n: usize, min: usize },

    /// The quadratic hat basis is built on pairs of subintervals.
    #[error("the quadratic hat basis requires an even integer number n of subintervals, got {0}")]
    OddSubintervals(usize),

    /// Basis-function or component index outside its range.
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// Evaluation point outside the grid's domain.
    #[error("t = {t} outside the domain [0, {tau}]")]
    TimeOutOfRange { t: f64, tau: f64 },

    /// Vector length does not match the expected dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Gamma function argument must be positive.
    #[error("gamma argument must be positive, got {0}")]
    GammaDomain(f64),

    /// Fractional integration order must be positive.
    #[error("integration order must be positive, got {0}")]
    InvalidOrder(f64),

    /// Initial value solves support orders in (0, 1] only.
    #[error("solver supports orders in (0, 1], got {0}")]
    UnsupportedOrder(f64),

    /// Fractional integrals are evaluated at nonnegative times only.
    #[error("fractional integral evaluation time must be nonnegative, got {0}")]
    NegativeTime(f64),

    /// Quadrature request below the minimum resolution.
    #[error("quadrature needs at least {min} points, got {points}")]
    TooFewQuadraturePoints { points: usize, min: usize },

    /// Matrix constructor called with a grid of the other basis.
    #[error("operational matrix for {expected:?} requested on a {got:?} grid")]
    BasisMismatch { expected: BasisKind, got: BasisKind },

    /// Operational matrix built for a different order or horizon than the problem's.
    #[error("operational matrix does not match the problem: {0}")]
    MatrixMismatch(&'static str),

    /// A system needs at least one equation.
    #[error("a system needs at least one equation")]
    EmptySystem,

    /// Attached exact solution inconsistent with the initial values.
    #[error("exact solution component {component} gives {at_zero} at t = 0, expected {y0}")]
    ExactMismatch {
        component: usize,
        at_zero: f64,
        y0: f64,
    },

    /// Newton failed to reach the residual tolerance.
    #[error("no convergence after {iterations} iterations (best residual {residual_norm:.3e})")]
    NonConvergence {
        iterations: usize,
        residual_norm: f64,
        /// Best iterate seen, for diagnostics.
        best: Vec<f64>,
    },

    /// Jacobian pivot fell below the admissible scale in the linear solve.
    #[error("singular Jacobian: pivot {pivot:.3e} not above threshold {threshold:.3e}")]
    SingularJacobian { pivot: f64, threshold: f64 },

    /// A cascade block failed; carries the block index and its last time node.
    #[error("block {block} (t = {t}) failed: {source}")]
    BlockFailed {
        block: usize,
        t: f64,
        #[source]
        source: Box<Error>,
    },

    /// Operation requires an exact solution but none is attached.
    #[error("problem has no exact solution attached")]
    MissingExactSolution,

    /// Solutions cannot be compared.
    #[error("solutions are not comparable: {0}")]
    IncomparableSolutions(&'static str),

    /// Refinement ladders must double n at every step.
    #[error("invalid n ladder: {0}")]
    InvalidLadder(String),

    /// Model parameter outside its documented range.
    #[error("parameter {name} = {value} violates constraint: {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
}
