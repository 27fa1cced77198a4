//! Nodal hat-function bases on a uniform grid.
//!
//! Two families are provided: piecewise-linear hats (one per node) and
//! piecewise-quadratic hats built on pairs of subintervals. Both are
//! cardinal: function `i` is 1 at node `i` and 0 at every other node, so
//! expansion coefficients are simply node samples.

use crate::error::{Error, Result};

/// The two basis families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// Piecewise-linear hats; works for any `n ≥ 1`.
    Ghf,
    /// Piecewise-quadratic hats on double subintervals; requires even `n ≥ 2`.
    Mhf,
}

/// Uniform grid on `[0, tau]` with `n` subintervals of width `h = tau / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    kind: BasisKind,
    tau: f64,
    n: usize,
    h: f64,
}

impl Grid {
    /// Builds a uniform grid, enforcing the basis parity constraint.
    pub fn new(tau: f64, n: usize, kind: BasisKind) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::InvalidHorizon(tau));
        }
        let min = match kind {
            BasisKind::Ghf => 1,
            BasisKind::Mhf => 2,
        };
        if n < min {
            return Err(Error::TooFewSubintervals { n, min });
        }
        if kind == BasisKind::Mhf && n % 2 != 0 {
            return Err(Error::OddSubintervals(n));
        }
        Ok(Grid {
            kind,
            tau,
            n,
            h: tau / n as f64,
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Number of subintervals.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Subinterval width `tau / n`.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of nodes (and basis functions), `n + 1`.
    pub fn node_count(&self) -> usize {
        self.n + 1
    }

    /// The `j`-th node. `node(n)` returns `tau` itself, which `n·h` may miss
    /// by a rounding ulp.
    pub fn node(&self, j: usize) -> f64 {
        if j == self.n {
            self.tau
        } else {
            j as f64 * self.h
        }
    }

    /// Value of basis function `i` at `t`, by the exact piecewise formulas.
    ///
    /// At node points the cardinal values 0 and 1 are returned exactly; at an
    /// interior knot shared by two pieces the right-hand piece is used (the
    /// left-hand piece at `t = tau`), a pure tie-break since both agree.
    pub fn eval_hat(&self, i: usize, t: f64) -> Result<f64> {
        if i > self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n });
        }
        self.check_time(t)?;
        if let Some(j) = self.snap(t) {
            return Ok(if i == j { 1.0 } else { 0.0 });
        }
        Ok(self.hat_piece(i, t, self.cell(t)))
    }

    /// Expansion whose coefficients sample `y` at the nodes.
    pub fn interpolate<F: Fn(f64) -> f64>(&self, y: F) -> HatExpansion {
        let coeffs = (0..=self.n).map(|j| y(self.node(j))).collect();
        HatExpansion { grid: *self, coeffs }
    }

    pub(crate) fn check_time(&self, t: f64) -> Result<()> {
        if t.is_nan() || t < 0.0 || t > self.tau {
            Err(Error::TimeOutOfRange { t, tau: self.tau })
        } else {
            Ok(())
        }
    }

    /// Index of the node bitwise-equal to `t`, if any. Nodes are recognized
    /// both as `j·h` and as the exact horizon `tau`, so cardinality holds
    /// exactly even where `j·h` rounds.
    fn snap(&self, t: f64) -> Option<usize> {
        let j = (t / self.h).round();
        if !(0.0..=self.n as f64).contains(&j) {
            return None;
        }
        let j = j as usize;
        if t == j as f64 * self.h || t == self.node(j) {
            Some(j)
        } else {
            None
        }
    }

    /// Subinterval index containing `t`, clamped so `tau` maps to the last cell.
    fn cell(&self, t: f64) -> usize {
        ((t / self.h) as usize).min(self.n - 1)
    }

    /// Piecewise value of function `i` at `t` inside cell `c`; assumes `t`
    /// is in range and not a node. Functions without support in the cell
    /// give exactly 0.
    fn hat_piece(&self, i: usize, t: f64, c: usize) -> f64 {
        let h = self.h;
        match self.kind {
            BasisKind::Ghf => {
                if i == c {
                    ((c + 1) as f64 * h - t) / h
                } else if i == c + 1 {
                    (t - c as f64 * h) / h
                } else {
                    0.0
                }
            }
            BasisKind::Mhf => {
                // Quadratic Lagrange cardinals on the node triple of the
                // double subinterval [2bh, (2b+2)h].
                let b = c / 2;
                let u = t - (2 * b) as f64 * h;
                if i == 2 * b {
                    (u - h) * (u - 2.0 * h) / (2.0 * h * h)
                } else if i == 2 * b + 1 {
                    -u * (u - 2.0 * h) / (h * h)
                } else if i == 2 * b + 2 {
                    u * (u - h) / (2.0 * h * h)
                } else {
                    0.0
                }
            }
        }
    }
}

/// Evaluates the expansion with the given node coefficients at `t`, touching
/// only the basis functions whose support contains `t`.
pub(crate) fn eval_nodal(grid: &Grid, coeffs: &[f64], t: f64) -> Result<f64> {
    grid.check_time(t)?;
    if let Some(j) = grid.snap(t) {
        return Ok(coeffs[j]);
    }
    let c = grid.cell(t);
    Ok(match grid.kind {
        BasisKind::Ghf => {
            coeffs[c] * grid.hat_piece(c, t, c) + coeffs[c + 1] * grid.hat_piece(c + 1, t, c)
        }
        BasisKind::Mhf => {
            let first = 2 * (c / 2);
            (first..=first + 2)
                .map(|i| coeffs[i] * grid.hat_piece(i, t, c))
                .sum()
        }
    })
}

/// Linear combination of a grid's basis functions. Evaluating at node `j`
/// returns `coeffs[j]` exactly (cardinality).
#[derive(Debug, Clone)]
pub struct HatExpansion {
    grid: Grid,
    coeffs: Vec<f64>,
}

impl HatExpansion {
    /// Wraps a coefficient vector of length `n + 1`.
    pub fn new(grid: Grid, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != grid.node_count() {
            return Err(Error::DimensionMismatch {
                expected: grid.node_count(),
                got: coeffs.len(),
            });
        }
        Ok(HatExpansion { grid, coeffs })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Value of the expansion at `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        eval_nodal(&self.grid, &self.coeffs, t)
    }
}
