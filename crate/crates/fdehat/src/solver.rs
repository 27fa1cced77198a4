//! Collocation solver for systems of fractional initial value problems.
//!
//! Each unknown's fractional derivative is expanded in the chosen hat basis;
//! applying the operational matrix of fractional integration reconstructs
//! the states at the nodes, and collocating the equations there yields a
//! nonlinear system whose dependency structure is (block) triangular. The
//! system is therefore solved as a cascade of small damped-Newton blocks:
//! one m-dimensional block per node for the linear basis, one 2m-dimensional
//! block per node pair for the quadratic basis.

use crate::basis::{eval_nodal, BasisKind, Grid};
use crate::error::{Error, Result};
use crate::fracmat::OperationalMatrix;

/// Right-hand side of one equation: `f_i(t, y)` over the full state vector.
pub type RhsFn = Box<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>;

/// One component of an exact solution, for error studies.
pub type ExactFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Initial value problem `D^alpha y_i = f_i(t, y)`, `y_i(0) = y0[i]`, for a
/// system of equations sharing one fractional order `alpha ∈ (0, 1]` on
/// `[0, tau]`.
///
/// Right-hand sides must be finite at `t = 0`; singular forcing terms are
/// not detected.
pub struct FDEProblem {
    alpha: f64,
    tau: f64,
    rhs: Vec<RhsFn>,
    y0: Vec<f64>,
    exact: Option<Vec<ExactFn>>,
}

impl FDEProblem {
    /// Builds a problem from right-hand sides and initial values.
    pub fn new(alpha: f64, tau: f64, rhs: Vec<RhsFn>, y0: Vec<f64>) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::UnsupportedOrder(alpha));
        }
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::InvalidHorizon(tau));
        }
        if rhs.is_empty() {
            return Err(Error::EmptySystem);
        }
        if y0.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: rhs.len(),
                got: y0.len(),
            });
        }
        Ok(FDEProblem {
            alpha,
            tau,
            rhs,
            y0,
            exact: None,
        })
    }

    /// Attaches the exact solution; every component must reproduce its
    /// initial value at `t = 0` to 1e-12.
    pub fn with_exact(mut self, exact: Vec<ExactFn>) -> Result<Self> {
        if exact.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: exact.len(),
            });
        }
        for (component, g) in exact.iter().enumerate() {
            let at_zero = g(0.0);
            if (at_zero - self.y0[component]).abs() > 1e-12 {
                return Err(Error::ExactMismatch {
                    component,
                    at_zero,
                    y0: self.y0[component],
                });
            }
        }
        self.exact = Some(exact);
        Ok(self)
    }

    /// Same right-hand sides and initial values under a different order.
    /// Any attached exact solution is dropped unless the order is unchanged,
    /// since exact solutions are order-specific.
    pub fn with_order(mut self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::UnsupportedOrder(alpha));
        }
        if alpha != self.alpha {
            self.alpha = alpha;
            self.exact = None;
        }
        Ok(self)
    }

    /// Same problem on a different horizon. An attached exact solution is
    /// kept: it is a global identity, not tied to the horizon.
    pub fn with_horizon(mut self, tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::InvalidHorizon(tau));
        }
        self.tau = tau;
        Ok(self)
    }

    /// Number of equations.
    pub fn dim(&self) -> usize {
        self.rhs.len()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn y0(&self) -> &[f64] {
        &self.y0
    }

    /// Evaluates right-hand side `i` at `(t, y)`.
    pub fn rhs(&self, i: usize, t: f64, y: &[f64]) -> f64 {
        (self.rhs[i])(t, y)
    }

    /// The attached exact solution, if any.
    pub fn exact(&self) -> Option<&[ExactFn]> {
        self.exact.as_deref()
    }
}

impl std::fmt::Debug for FDEProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FDEProblem")
            .field("dim", &self.dim())
            .field("alpha", &self.alpha)
            .field("tau", &self.tau)
            .field("y0", &self.y0)
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

/// Newton iteration controls for the per-block nonlinear solves.
#[derive(Debug, Clone, Copy)]
pub struct NewtonConfig {
    /// Residual ∞-norm below which a block is accepted.
    pub tol: f64,
    /// Iteration cap per block.
    pub max_iter: usize,
    /// Forward-difference Jacobian step is `fd_step_scale · max(1, |x_k|)`.
    pub fd_step_scale: f64,
    /// Step-halving depth of the damping line search.
    pub max_halvings: usize,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig {
            tol: 1e-12,
            max_iter: 50,
            fd_step_scale: f64::EPSILON.sqrt(),
            max_halvings: 20,
        }
    }
}

/// Converged Newton output.
#[derive(Debug, Clone)]
pub struct NewtonResult {
    /// Accepted iterate.
    pub x: Vec<f64>,
    /// Residual ∞-norm at `x`.
    pub residual_norm: f64,
    /// Iterations consumed.
    pub iterations: usize,
}

fn inf_norm(v: &[f64]) -> f64 {
    // f64::max ignores NaN, which would let a poisoned residual masquerade
    // as converged; propagate it instead.
    let mut m = 0.0f64;
    for x in v {
        if x.is_nan() {
            return f64::NAN;
        }
        m = m.max(x.abs());
    }
    m
}

/// Damped Newton with a forward-difference Jacobian on a square system.
///
/// Steps are halved (up to `max_halvings`) until the residual norm strictly
/// decreases; if no tried step decreases it, the most-damped finite step is
/// taken anyway — monotone descent is not enforced, which lets the iteration
/// cross ridges of the residual norm. Non-convergence is reported when
/// `max_iter` is exhausted (carrying the best iterate seen), or earlier if
/// every damped candidate evaluates to a non-finite residual.
pub fn solve_block_newton<F>(residual: F, guess: &[f64], cfg: &NewtonConfig) -> Result<NewtonResult>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let d = guess.len();
    let mut x = guess.to_vec();
    let mut r = residual(&x);
    if r.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: r.len(),
        });
    }
    let mut rnorm = inf_norm(&r);
    let mut best = x.clone();
    let mut best_norm = rnorm;
    for iteration in 0..cfg.max_iter {
        if rnorm <= cfg.tol {
            return Ok(NewtonResult {
                x,
                residual_norm: rnorm,
                iterations: iteration,
            });
        }
        let mut jac = vec![0.0; d * d];
        let mut probe = x.clone();
        for col in 0..d {
            let step = cfg.fd_step_scale * x[col].abs().max(1.0);
            probe[col] = x[col] + step;
            let rp = residual(&probe);
            probe[col] = x[col];
            for row in 0..d {
                jac[row * d + col] = (rp[row] - r[row]) / step;
            }
        }
        let neg_r: Vec<f64> = r.iter().map(|v| -v).collect();
        let dx = lu_solve(&mut jac, d, neg_r)?;
        let mut lambda = 1.0;
        let mut accepted = None;
        // Most-damped candidate with a finite residual, kept as a fallback
        // when no tried step decreases the norm.
        let mut fallback = None;
        for _ in 0..=cfg.max_halvings {
            let cand: Vec<f64> = x.iter().zip(&dx).map(|(xi, di)| xi + lambda * di).collect();
            let rc = residual(&cand);
            let nc = inf_norm(&rc);
            if nc.is_finite() {
                if nc < rnorm {
                    accepted = Some((cand, rc, nc));
                    break;
                }
                fallback = Some((cand, rc, nc));
            }
            lambda *= 0.5;
        }
        let Some((cand, rc, nc)) = accepted.or(fallback) else {
            // Every damped candidate produced a non-finite residual; there is
            // no usable direction left.
            return Err(Error::NonConvergence {
                iterations: iteration + 1,
                residual_norm: best_norm,
                best,
            });
        };
        x = cand;
        r = rc;
        rnorm = nc;
        if rnorm < best_norm {
            best_norm = rnorm;
            best = x.clone();
        }
    }
    if rnorm <= cfg.tol {
        return Ok(NewtonResult {
            x,
            residual_norm: rnorm,
            iterations: cfg.max_iter,
        });
    }
    Err(Error::NonConvergence {
        iterations: cfg.max_iter,
        residual_norm: best_norm,
        best,
    })
}

/// Dense Gaussian elimination with partial pivoting; `a` is row-major d×d
/// scratch. A pivot not strictly above `1e-14 · max|a|` is reported as
/// singular (this also catches non-finite Jacobians).
fn lu_solve(a: &mut [f64], d: usize, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let threshold = 1e-14 * scale;
    for col in 0..d {
        let mut piv = col;
        let mut pmax = a[col * d + col].abs();
        for row in (col + 1)..d {
            let v = a[row * d + col].abs();
            if v > pmax {
                pmax = v;
                piv = row;
            }
        }
        if !(pmax > threshold) {
            return Err(Error::SingularJacobian {
                pivot: pmax,
                threshold,
            });
        }
        if piv != col {
            for j in 0..d {
                a.swap(col * d + j, piv * d + j);
            }
            b.swap(col, piv);
        }
        let diag = a[col * d + col];
        for row in (col + 1)..d {
            let factor = a[row * d + col] / diag;
            if factor != 0.0 {
                for j in (col + 1)..d {
                    a[row * d + j] -= factor * a[col * d + j];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    for col in (0..d).rev() {
        let mut v = b[col];
        for j in (col + 1)..d {
            v -= a[col * d + j] * b[j];
        }
        b[col] = v / a[col * d + col];
    }
    Ok(b)
}

/// Largest coefficient row with a nonzero entry in node column `j` — the
/// matrix's column support, exploited to skip structural zeros.
fn support_bound(kind: BasisKind, j: usize) -> usize {
    match kind {
        BasisKind::Ghf => j,
        BasisKind::Mhf => {
            if j % 2 == 1 {
                j + 1
            } else {
                j
            }
        }
    }
}

/// Reconstructs state node values from derivative coefficients:
/// `y[i][0] = y0[i]` exactly, `y[i][j] = Σ_k a[i][k]·p(k, j) + y0[i]` with
/// the sum truncated to the column support.
pub fn node_values(
    a: &[Vec<f64>],
    p: &OperationalMatrix,
    y0: &[f64],
) -> Result<Vec<Vec<f64>>> {
    let m = a.len();
    let d = p.dim();
    if y0.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: y0.len(),
        });
    }
    for row in a {
        if row.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.len(),
            });
        }
    }
    let kind = p.grid().kind();
    let n = p.grid().n();
    let mut y = vec![vec![0.0; d]; m];
    for i in 0..m {
        y[i][0] = y0[i];
        for j in 1..=n {
            let bound = support_bound(kind, j).min(n);
            let s: f64 = (0..=bound).map(|k| a[i][k] * p.entry(k, j)).sum();
            y[i][j] = s + y0[i];
        }
    }
    Ok(y)
}

/// Discrete solution: derivative coefficients, reconstructed node values,
/// and the metadata needed to evaluate anywhere on `[0, tau]`.
#[derive(Debug)]
pub struct Solution<'p> {
    problem: &'p FDEProblem,
    grid: Grid,
    a: Vec<Vec<f64>>,
    y: Vec<Vec<f64>>,
    residual_norm: f64,
    block_iterations: Vec<usize>,
}

impl<'p> Solution<'p> {
    pub fn problem(&self) -> &'p FDEProblem {
        self.problem
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Derivative coefficients, one row of `n + 1` values per component.
    pub fn coefficients(&self) -> &[Vec<f64>] {
        &self.a
    }

    /// State values at the nodes, one row per component.
    pub fn node_values(&self) -> &[Vec<f64>] {
        &self.y
    }

    /// Collocation residual recomputed after assembly.
    pub fn residual_norm(&self) -> f64 {
        self.residual_norm
    }

    /// Newton iterations per cascade block.
    pub fn block_iterations(&self) -> &[usize] {
        &self.block_iterations
    }

    /// Value of component `i` (0-based) at `t`, via the hat expansion of its
    /// node values; agrees with `node_values` exactly at the nodes.
    pub fn eval(&self, i: usize, t: f64) -> Result<f64> {
        if i >= self.a.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.a.len() - 1,
            });
        }
        eval_nodal(&self.grid, &self.y[i], t)
    }
}

/// Solves the problem on a fresh grid of `n` subintervals.
pub fn solve_fde_system<'p>(
    problem: &'p FDEProblem,
    kind: BasisKind,
    n: usize,
    cfg: &NewtonConfig,
) -> Result<Solution<'p>> {
    let grid = Grid::new(problem.tau(), n, kind)?;
    let p = OperationalMatrix::new(&grid, problem.alpha())?;
    solve_with_matrix(problem, &p, cfg)
}

/// Cascade solve reusing a prebuilt operational matrix, so studies can time
/// the solve separately from matrix construction.
pub fn solve_with_matrix<'p>(
    problem: &'p FDEProblem,
    p: &OperationalMatrix,
    cfg: &NewtonConfig,
) -> Result<Solution<'p>> {
    if p.alpha() != problem.alpha() {
        return Err(Error::MatrixMismatch("order differs from the problem's"));
    }
    if p.grid().tau() != problem.tau() {
        return Err(Error::MatrixMismatch("horizon differs from the problem's"));
    }
    let grid = *p.grid();
    let m = problem.dim();
    let n = grid.n();
    let y0 = problem.y0();
    let mut a = vec![vec![0.0; n + 1]; m];
    // The first coefficients need no iteration: states at t = 0 are the
    // initial values regardless of the coefficients.
    for (i, row) in a.iter_mut().enumerate() {
        row[0] = problem.rhs(i, 0.0, y0);
    }
    let mut block_iterations = Vec::new();
    match grid.kind() {
        BasisKind::Ghf => {
            for j in 1..=n {
                let tj = grid.node(j);
                // Fixed part of the reconstruction at node j: contributions
                // of all already-solved coefficients plus the initial value.
                let fixed: Vec<f64> = (0..m)
                    .map(|i| y0[i] + (0..j).map(|k| a[i][k] * p.entry(k, j)).sum::<f64>())
                    .collect();
                let pjj = p.entry(j, j);
                let residual = |x: &[f64]| -> Vec<f64> {
                    let state: Vec<f64> = (0..m).map(|i| fixed[i] + pjj * x[i]).collect();
                    (0..m).map(|i| x[i] - problem.rhs(i, tj, &state)).collect()
                };
                let guess: Vec<f64> = (0..m).map(|i| a[i][j - 1]).collect();
                let result = solve_block_newton(residual, &guess, cfg).map_err(|e| {
                    Error::BlockFailed {
                        block: j,
                        t: tj,
                        source: Box::new(e),
                    }
                })?;
                for i in 0..m {
                    a[i][j] = result.x[i];
                }
                block_iterations.push(result.iterations);
            }
        }
        BasisKind::Mhf => {
            // Node pairs (2b−1, 2b) couple through the matrix's one
            // below-diagonal entry, so both columns are solved jointly.
            for b in 1..=n / 2 {
                let j1 = 2 * b - 1;
                let j2 = 2 * b;
                let t1 = grid.node(j1);
                let t2 = grid.node(j2);
                let fixed1: Vec<f64> = (0..m)
                    .map(|i| y0[i] + (0..j1).map(|k| a[i][k] * p.entry(k, j1)).sum::<f64>())
                    .collect();
                let fixed2: Vec<f64> = (0..m)
                    .map(|i| y0[i] + (0..j1).map(|k| a[i][k] * p.entry(k, j2)).sum::<f64>())
                    .collect();
                let (p11, p21) = (p.entry(j1, j1), p.entry(j2, j1));
                let (p12, p22) = (p.entry(j1, j2), p.entry(j2, j2));
                let residual = |x: &[f64]| -> Vec<f64> {
                    let (x1, x2) = x.split_at(m);
                    let s1: Vec<f64> = (0..m)
                        .map(|i| fixed1[i] + p11 * x1[i] + p21 * x2[i])
                        .collect();
                    let s2: Vec<f64> = (0..m)
                        .map(|i| fixed2[i] + p12 * x1[i] + p22 * x2[i])
                        .collect();
                    let mut r = Vec::with_capacity(2 * m);
                    r.extend((0..m).map(|i| x1[i] - problem.rhs(i, t1, &s1)));
                    r.extend((0..m).map(|i| x2[i] - problem.rhs(i, t2, &s2)));
                    r
                };
                let guess: Vec<f64> = if b == 1 {
                    (0..m).map(|i| a[i][0]).chain((0..m).map(|i| a[i][0])).collect()
                } else {
                    (0..m)
                        .map(|i| a[i][j1 - 2])
                        .chain((0..m).map(|i| a[i][j2 - 2]))
                        .collect()
                };
                let result = solve_block_newton(residual, &guess, cfg).map_err(|e| {
                    Error::BlockFailed {
                        block: b,
                        t: t2,
                        source: Box::new(e),
                    }
                })?;
                for i in 0..m {
                    a[i][j1] = result.x[i];
                    a[i][j2] = result.x[m + i];
                }
                block_iterations.push(result.iterations);
            }
        }
    }
    let y = node_values(&a, p, y0)?;
    let mut solution = Solution {
        problem,
        grid,
        a,
        y,
        residual_norm: 0.0,
        block_iterations,
    };
    solution.residual_norm = residual_check(&solution);
    Ok(solution)
}

/// Recomputes the collocation residual `max_{i,j} |a[i][j] − f_i(t_j, y[·][j])|`
/// from the stored solution, independently of the solve path.
pub fn residual_check(sol: &Solution) -> f64 {
    let m = sol.problem.dim();
    let n = sol.grid.n();
    let mut worst = 0.0f64;
    for j in 0..=n {
        let t = sol.grid.node(j);
        let state: Vec<f64> = (0..m).map(|i| sol.y[i][j]).collect();
        for i in 0..m {
            worst = worst.max((sol.a[i][j] - sol.problem.rhs(i, t, &state)).abs());
        }
    }
    worst
}
