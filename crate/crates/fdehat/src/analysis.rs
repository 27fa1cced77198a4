//! Node-error measurement, observed convergence orders, n-ladder studies,
//! and cross-basis agreement for problems without an exact solution.

use crate::basis::{BasisKind, Grid};
use crate::error::{Error, Result};
use crate::fracmat::OperationalMatrix;
use crate::solver::{solve_with_matrix, FDEProblem, NewtonConfig, Solution};
use std::time::Instant;

/// One refinement level of a convergence study.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    /// Subinterval count of this level.
    pub n: usize,
    /// Per-component max node error (empty when the solve failed).
    pub errors: Vec<f64>,
    /// Per-component observed order against the next level; empty on the
    /// last row or next to a failed row, `None` where an error vanished.
    pub orders: Vec<Option<f64>>,
    /// Wall-clock seconds spent inside the solve (matrix assembly excluded).
    pub runtime_seconds: f64,
    /// Failure message when this level's solve failed.
    pub failure: Option<String>,
}

/// Per-component `max_j |exact_i(t_j) − y[i][j]|` over the solution's nodes.
pub fn max_node_error(sol: &Solution) -> Result<Vec<f64>> {
    let exact = sol.problem().exact().ok_or(Error::MissingExactSolution)?;
    let grid = sol.grid();
    let values = sol.node_values();
    Ok(exact
        .iter()
        .enumerate()
        .map(|(i, g)| {
            (0..=grid.n())
                .map(|j| (g(grid.node(j)) - values[i][j]).abs())
                .fold(0.0f64, f64::max)
        })
        .collect())
}

/// Observed order `log2(e_n / e_2n)` under grid doubling; `None` when either
/// error vanishes or is not finite, leaving the order undefined.
pub fn convergence_order(e_n: f64, e_2n: f64) -> Option<f64> {
    if e_n > 0.0 && e_2n > 0.0 && e_n.is_finite() && e_2n.is_finite() {
        Some((e_n / e_2n).log2())
    } else {
        None
    }
}

/// Solves the problem at every level of a doubling ladder and tabulates
/// errors, chained observed orders, and solve times. A level whose solve
/// fails is kept (with the failure recorded) so one bad level does not
/// discard the rest of the table.
pub fn run_convergence_study(
    problem: &FDEProblem,
    kind: BasisKind,
    n_list: &[usize],
    cfg: &NewtonConfig,
) -> Result<Vec<ConvergenceRow>> {
    if problem.exact().is_none() {
        return Err(Error::MissingExactSolution);
    }
    validate_ladder(n_list)?;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let outcome = (|| -> Result<(Vec<f64>, f64)> {
            let grid = Grid::new(problem.tau(), n, kind)?;
            let matrix = OperationalMatrix::new(&grid, problem.alpha())?;
            let started = Instant::now();
            let sol = solve_with_matrix(problem, &matrix, cfg)?;
            let runtime = started.elapsed().as_secs_f64();
            Ok((max_node_error(&sol)?, runtime))
        })();
        rows.push(match outcome {
            Ok((errors, runtime_seconds)) => ConvergenceRow {
                n,
                errors,
                orders: Vec::new(),
                runtime_seconds,
                failure: None,
            },
            Err(e) => ConvergenceRow {
                n,
                errors: Vec::new(),
                orders: Vec::new(),
                runtime_seconds: 0.0,
                failure: Some(e.to_string()),
            },
        });
    }
    for idx in 0..rows.len().saturating_sub(1) {
        if rows[idx].failure.is_none() && rows[idx + 1].failure.is_none() {
            rows[idx].orders = rows[idx]
                .errors
                .iter()
                .zip(&rows[idx + 1].errors)
                .map(|(&e_n, &e_2n)| convergence_order(e_n, e_2n))
                .collect();
        }
    }
    Ok(rows)
}

fn validate_ladder(n_list: &[usize]) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::InvalidLadder("ladder is empty".into()));
    }
    if n_list[0] == 0 {
        return Err(Error::InvalidLadder("ladder starts at 0".into()));
    }
    for pair in n_list.windows(2) {
        if pair[1] != 2 * pair[0] {
            return Err(Error::InvalidLadder(format!(
                "{} does not double {}",
                pair[1], pair[0]
            )));
        }
    }
    Ok(())
}

/// Max over `sample_count` equispaced times in `[0, tau]` of the
/// max-component difference between two solutions of the same problem
/// instance. The bases and grid sizes may differ; symmetric in its
/// arguments.
pub fn cross_basis_deviation(a: &Solution, b: &Solution, sample_count: usize) -> Result<f64> {
    if !std::ptr::eq(a.problem(), b.problem()) {
        return Err(Error::IncomparableSolutions(
            "solutions were built from different problem instances",
        ));
    }
    if sample_count < 2 {
        return Err(Error::InvalidParameter {
            name: "sample_count",
            value: sample_count as f64,
            constraint: "need at least 2 samples to cover both endpoints",
        });
    }
    let tau = a.problem().tau();
    let m = a.problem().dim();
    let mut worst = 0.0f64;
    for s in 0..sample_count {
        let t = (tau * s as f64 / (sample_count - 1) as f64).min(tau);
        for i in 0..m {
            worst = worst.max((a.eval(i, t)? - b.eval(i, t)?).abs());
        }
    }
    Ok(worst)
}
