//! Collocation solver for systems of fractional initial value problems
//! `D^alpha y_i = f_i(t, y)`, `y_i(0) = y_{i,0}`, with `alpha ∈ (0, 1]`.
//!
//! The method expands each unknown's fractional derivative in a nodal hat
//! basis ([`BasisKind`]): piecewise-linear hats on every subinterval, or
//! piecewise-quadratic hats on pairs of subintervals. A closed-form
//! [`OperationalMatrix`] of fractional integration maps the expansion
//! coefficients to state values at the grid nodes, and collocating the
//! equations at the nodes produces a block-triangular nonlinear system that
//! [`solve_fde_system`] resolves node by node with damped Newton.
//!
//! The linear basis converges at second order in the step size, the
//! quadratic basis at third; [`analysis`] measures both, and [`models`]
//! provides two analytic benchmarks plus a seasonally forced SEIRS epidemic
//! model with fractional dynamics.
//!
//! # Example
//!
//! ```
//! use fdehat::{solve_fde_system, BasisKind, NewtonConfig};
//! use fdehat::models::example1;
//!
//! let problem = example1(); // D^1/2 system with exact solution (t^2.5, t^3)
//! let sol = solve_fde_system(&problem, BasisKind::Mhf, 64, &NewtonConfig::default())?;
//! assert!((sol.eval(0, 1.0)? - 1.0).abs() < 1e-5);
//! # Ok::<(), fdehat::Error>(())
//! ```

pub mod analysis;
pub mod basis;
mod error;
pub mod fracmat;
pub mod models;
pub mod solver;

pub use basis::{BasisKind, Grid, HatExpansion};
pub use error::{Error, Result};
pub use fracmat::{
    apply_integration, gamma_fn, op_matrix_ghf, op_matrix_mhf, rl_integral_oracle,
    OperationalMatrix, ORACLE_DEFAULT_POINTS,
};
pub use solver::{
    node_values, residual_check, solve_block_newton, solve_fde_system, solve_with_matrix,
    ExactFn, FDEProblem, NewtonConfig, NewtonResult, RhsFn, Solution,
};
