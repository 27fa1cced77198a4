//! Deterministic CSV emission: scientific notation with 12 significant
//! digits, `.` as the decimal separator, `\n` line endings. Identical inputs
//! produce byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use fdehat::analysis::ConvergenceRow;
use fdehat::Solution;

use crate::{io_error, CliError};

/// Formats a value with 12 significant digits in scientific notation.
pub fn sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// Trajectory table `t,y1,...,ym`: one row per grid node plus, when `samples`
/// exceeds the node count, rows interpolated on an equispaced sample grid.
pub fn write_solution(path: &Path, sol: &Solution, samples: usize) -> Result<(), CliError> {
    let grid = sol.grid();
    let n = grid.n();
    let tau = grid.tau();
    let m = sol.problem().dim();

    let mut times: Vec<f64> = (0..=n).map(|j| grid.node(j)).collect();
    if samples > n + 1 {
        for s in 0..samples {
            times.push(tau * s as f64 / (samples - 1) as f64);
        }
        times.sort_by(|a, b| a.partial_cmp(b).expect("grid times are finite"));
        times.dedup();
    }

    let mut out = String::from("t");
    for i in 1..=m {
        write!(out, ",y{i}").expect("writing to a String cannot fail");
    }
    out.push('\n');
    for &t in &times {
        out.push_str(&sig(t));
        for i in 0..m {
            out.push(',');
            out.push_str(&sig(sol.eval(i, t)?));
        }
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| io_error(path, e))
}

/// Refinement table `n,e_1,rho_1,...,e_m,rho_m,runtime_s`. Order cells are
/// blank on the last row (nothing to compare against) and wherever an error
/// vanished; failed rows keep only their `n` with every other cell blank.
pub fn write_convergence(
    path: &Path,
    rows: &[ConvergenceRow],
    m: usize,
) -> Result<(), CliError> {
    let mut out = String::from("n");
    for i in 1..=m {
        write!(out, ",e_{i},rho_{i}").expect("writing to a String cannot fail");
    }
    out.push_str(",runtime_s\n");
    for row in rows {
        write!(out, "{}", row.n).expect("writing to a String cannot fail");
        if row.failure.is_some() {
            out.push_str(&",".repeat(2 * m + 1));
        } else {
            for i in 0..m {
                out.push(',');
                out.push_str(&sig(row.errors[i]));
                out.push(',');
                if let Some(Some(order)) = row.orders.get(i) {
                    out.push_str(&sig(*order));
                }
            }
            out.push(',');
            out.push_str(&sig(row.runtime_seconds));
        }
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| io_error(path, e))
}

/// Summary table `n,cross_basis_deviation` for grid sizes both bases solved.
pub fn write_summary(path: &Path, rows: &[(usize, f64)]) -> Result<(), CliError> {
    let mut out = String::from("n,cross_basis_deviation\n");
    for &(n, dev) in rows {
        writeln!(out, "{n},{}", sig(dev)).expect("writing to a String cannot fail");
    }
    std::fs::write(path, out).map_err(|e| io_error(path, e))
}
