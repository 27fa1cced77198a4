//! Built-in problems: two analytic benchmarks with known solutions and a
//! seasonally forced SEIRS epidemic model with fractional dynamics.

use crate::error::{Error, Result};
use crate::solver::{ExactFn, FDEProblem, RhsFn};
use std::f64::consts::PI;

/// Nonlinear two-equation benchmark of order 1/2 on [0, 1] with exact
/// solution `(t^2.5, t^3)`:
///
/// - `D^0.5 y_1 = √t·y_1 − y_2 + (15√π/16)·t²`
/// - `D^0.5 y_2 = (16/(5√π))·y_1 + y_2² − t⁶`
///
/// starting from `y(0) = (0, 0)`.
pub fn example1() -> FDEProblem {
    // Forcing constants at full double precision, not decimal literals.
    let c1 = 15.0 * PI.sqrt() / 16.0;
    let c2 = 16.0 / (5.0 * PI.sqrt());
    let rhs: Vec<RhsFn> = vec![
        Box::new(move |t, y| t.sqrt() * y[0] - y[1] + c1 * t * t),
        Box::new(move |t, y| c2 * y[0] + y[1] * y[1] - t.powi(6)),
    ];
    let exact: Vec<ExactFn> = vec![Box::new(|t| t.powf(2.5)), Box::new(|t| t.powi(3))];
    FDEProblem::new(0.5, 1.0, rhs, vec![0.0, 0.0])
        .and_then(|p| p.with_exact(exact))
        .expect("fixed benchmark construction cannot fail")
}

/// Linear two-equation benchmark on [0, 10]:
///
/// - `D^alpha y_1 = y_1 − 2y_2 + 4cos t − 2sin t`
/// - `D^alpha y_2 = 3y_1 − 4y_2 + 5cos t − 5sin t`
///
/// starting from `y(0) = (1, 2)`. At `alpha = 1` the exact solution
/// `(cos t + sin t, 2cos t)` is attached; for other orders none is known.
pub fn example2(alpha: f64) -> Result<FDEProblem> {
    let rhs: Vec<RhsFn> = vec![
        Box::new(|t: f64, y: &[f64]| y[0] - 2.0 * y[1] + 4.0 * t.cos() - 2.0 * t.sin()),
        Box::new(|t: f64, y: &[f64]| 3.0 * y[0] - 4.0 * y[1] + 5.0 * t.cos() - 5.0 * t.sin()),
    ];
    let problem = FDEProblem::new(alpha, 10.0, rhs, vec![1.0, 2.0])?;
    if alpha == 1.0 {
        let exact: Vec<ExactFn> = vec![
            Box::new(|t: f64| t.cos() + t.sin()),
            Box::new(|t: f64| 2.0 * t.cos()),
        ];
        problem.with_exact(exact)
    } else {
        Ok(problem)
    }
}

/// Epidemiological rates and seasonal-forcing parameters of the SEIRS model.
/// All rates are per year; time is measured in years.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeirsParams {
    /// Birth rate, equal to the mortality rate (constant population).
    pub mu: f64,
    /// Rate of leaving the infectious class.
    pub nu: f64,
    /// Rate of immunity loss (recovered back to susceptible); named to avoid
    /// clashing with the gamma function in documentation.
    pub gamma_r: f64,
    /// Rate of leaving the latent class.
    pub epsilon: f64,
    /// Mean transmission rate.
    pub b0: f64,
    /// Seasonal amplitude of the transmission rate, in [0, 1].
    pub b1: f64,
    /// Seasonal amplitude of the recruitment rate, in [0, 1].
    pub c1: f64,
    /// Phase of the annual forcing, radians.
    pub phi: f64,
    /// Fractional order of the dynamics, in (0, 1].
    pub alpha: f64,
}

impl Default for SeirsParams {
    /// High-transmission childhood-disease regime with short latent and
    /// infectious periods and near-classical order.
    fn default() -> Self {
        SeirsParams {
            mu: 0.0113,
            nu: 36.0,
            gamma_r: 1.8,
            epsilon: 91.0,
            b0: 88.25,
            b1: 0.17,
            c1: 0.17,
            phi: PI / 2.0,
            alpha: 0.993,
        }
    }
}

impl SeirsParams {
    /// Checks the documented parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let rate = |name: &'static str, value: f64| {
            if value.is_finite() && value >= 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    constraint: "must be a finite nonnegative rate",
                })
            }
        };
        rate("mu", self.mu)?;
        rate("nu", self.nu)?;
        rate("gamma", self.gamma_r)?;
        rate("epsilon", self.epsilon)?;
        rate("b0", self.b0)?;
        let amplitude = |name: &'static str, value: f64| {
            if (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    constraint: "amplitude must lie in [0, 1]",
                })
            }
        };
        amplitude("b1", self.b1)?;
        amplitude("c1", self.c1)?;
        if !self.phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phi",
                value: self.phi,
                constraint: "phase must be finite",
            });
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: self.alpha,
                constraint: "order must lie in (0, 1]",
            });
        }
        Ok(())
    }
}

/// Population fractions in the four compartments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeirsState {
    pub s: f64,
    pub e: f64,
    pub i: f64,
    pub r: f64,
}

impl Default for SeirsState {
    /// Endemic starting mix summing to 1: mostly susceptible or recovered,
    /// with a small exposed/infectious seed.
    fn default() -> Self {
        SeirsState {
            s: 0.4081,
            e: 0.0110,
            i: 0.0278,
            r: 0.5531,
        }
    }
}

/// Seasonally forced transmission rate `b0·(1 + b1·cos(2πt + phi))`.
pub fn seirs_beta(p: &SeirsParams, t: f64) -> f64 {
    p.b0 * (1.0 + p.b1 * (2.0 * PI * t + p.phi).cos())
}

/// Seasonally forced recruitment rate `mu·(1 + c1·cos(2πt + phi))`.
pub fn seirs_lambda(p: &SeirsParams, t: f64) -> f64 {
    p.mu * (1.0 + p.c1 * (2.0 * PI * t + p.phi).cos())
}

/// Four-compartment SEIRS system with seasonal forcing:
///
/// - `D^alpha S = λ(t) − μS − β(t)SI + γR`
/// - `D^alpha E = β(t)SI − (μ+ε)E`
/// - `D^alpha I = εE − (μ+ν)I`
/// - `D^alpha R = νI − (μ+γ)R`
///
/// No exact solution is attached. States are not clamped to [0, 1]; the
/// discretization reports what it produces.
pub fn seirs_problem(p: SeirsParams, y0: SeirsState, tau: f64) -> Result<FDEProblem> {
    p.validate()?;
    let rhs: Vec<RhsFn> = vec![
        Box::new(move |t, y| {
            seirs_lambda(&p, t) - p.mu * y[0] - seirs_beta(&p, t) * y[0] * y[2]
                + p.gamma_r * y[3]
        }),
        Box::new(move |t, y| seirs_beta(&p, t) * y[0] * y[2] - (p.mu + p.epsilon) * y[1]),
        Box::new(move |_t, y| p.epsilon * y[1] - (p.mu + p.nu) * y[2]),
        Box::new(move |_t, y| p.nu * y[2] - (p.mu + p.gamma_r) * y[3]),
    ];
    FDEProblem::new(p.alpha, tau, rhs, vec![y0.s, y0.e, y0.i, y0.r])
}
