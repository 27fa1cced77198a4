//! Model resolution and the flat `key = value` parameter-file format.

use std::path::Path;

use fdehat::models::{example1, example2, SeirsParams, SeirsState};
use fdehat::{BasisKind, FDEProblem};

use crate::{io_error, CliError};

/// Everything the epidemic model needs beyond the solver defaults.
#[derive(Debug)]
pub struct SeirsSetup {
    pub params: SeirsParams,
    pub y0: SeirsState,
    pub tau: f64,
}

/// Clap value parser for `--basis`.
pub fn parse_basis(s: &str) -> Result<BasisKind, String> {
    match s {
        "ghf" => Ok(BasisKind::Ghf),
        "mhf" => Ok(BasisKind::Mhf),
        other => Err(format!("unknown basis `{other}` (expected ghf or mhf)")),
    }
}

/// Comma list of bases, e.g. `ghf,mhf`.
pub fn parse_basis_list(s: &str) -> Result<Vec<BasisKind>, CliError> {
    s.split(',')
        .map(|part| parse_basis(part.trim()).map_err(CliError::Config))
        .collect()
}

/// Comma list of grid sizes, e.g. `20,40,60,80`.
pub fn parse_grid_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<usize>()
                .map_err(|_| CliError::Config(format!("`{part}` is not a grid size")))
        })
        .collect()
}

/// Grid ladder: `a:b` expands by doubling from `a` and must land exactly on
/// `b`; otherwise the string is read as a comma list (or a single size).
pub fn parse_ladder(s: &str) -> Result<Vec<usize>, CliError> {
    if let Some((start, end)) = s.split_once(':') {
        let parse = |part: &str| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Config(format!("`{}` is not a grid size", part.trim())))
        };
        let start = parse(start)?;
        let end = parse(end)?;
        if start == 0 {
            return Err(CliError::Config("ladder must start at n >= 1".into()));
        }
        if end < start {
            return Err(CliError::Config(format!(
                "ladder end {end} is below its start {start}"
            )));
        }
        let mut ladder = vec![start];
        let mut n = start;
        while n < end {
            n *= 2;
            ladder.push(n);
        }
        if n != end {
            return Err(CliError::Config(format!(
                "ladder end {end} is not reachable by doubling from {start}"
            )));
        }
        Ok(ladder)
    } else {
        parse_grid_list(s)
    }
}

/// Epidemic-model configuration: defaults, then file overrides, then flag
/// overrides, in that order.
pub fn load_seirs(
    path: Option<&Path>,
    alpha: Option<f64>,
    tau: Option<f64>,
) -> Result<SeirsSetup, CliError> {
    let mut setup = SeirsSetup {
        params: SeirsParams::default(),
        y0: SeirsState::default(),
        tau: 5.0,
    };
    if let Some(path) = path {
        apply_params_file(&mut setup, path)?;
    }
    if let Some(alpha) = alpha {
        setup.params.alpha = alpha;
    }
    if let Some(tau) = tau {
        setup.tau = tau;
    }
    Ok(setup)
}

/// Parses `key = value` lines (with `#` comments) into a [`SeirsSetup`].
/// Every key is optional; unknown keys and non-numeric values are reported
/// with the file path and line number.
fn apply_params_file(setup: &mut SeirsSetup, path: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let at = |msg: String| CliError::Config(format!("{}:{lineno}: {msg}", path.display()));
        let Some((key, value)) = line.split_once('=') else {
            return Err(at(format!("expected `key = value`, got `{line}`")));
        };
        let key = key.trim();
        let value = value.trim();
        let v: f64 = value
            .parse()
            .map_err(|_| at(format!("`{value}` is not a number")))?;
        match key {
            "mu" => setup.params.mu = v,
            "nu" => setup.params.nu = v,
            "gamma" => setup.params.gamma_r = v,
            "epsilon" => setup.params.epsilon = v,
            "b0" => setup.params.b0 = v,
            "b1" => setup.params.b1 = v,
            "c1" => setup.params.c1 = v,
            "phi" => setup.params.phi = v,
            "alpha" => setup.params.alpha = v,
            "S0" => setup.y0.s = v,
            "E0" => setup.y0.e = v,
            "I0" => setup.y0.i = v,
            "R0" => setup.y0.r = v,
            "tau" => setup.tau = v,
            other => return Err(at(format!("unknown key `{other}`"))),
        }
    }
    Ok(())
}

/// Maps a `--model` value to a ready problem. Built-in names are tried
/// first; any other value naming an existing file is read as an epidemic
/// parameter file.
pub fn resolve_model(
    name: &str,
    params: Option<&Path>,
    alpha: Option<f64>,
    tau: Option<f64>,
) -> Result<FDEProblem, CliError> {
    let seirs = |path: Option<&Path>| -> Result<FDEProblem, CliError> {
        let setup = load_seirs(path, alpha, tau)?;
        Ok(fdehat::models::seirs_problem(
            setup.params,
            setup.y0,
            setup.tau,
        )?)
    };
    match name {
        "example1" => {
            let mut problem = example1();
            if let Some(alpha) = alpha {
                problem = problem.with_order(alpha)?;
            }
            if let Some(tau) = tau {
                problem = problem.with_horizon(tau)?;
            }
            Ok(problem)
        }
        "example2" => {
            let mut problem = example2(alpha.unwrap_or(1.0))?;
            if let Some(tau) = tau {
                problem = problem.with_horizon(tau)?;
            }
            Ok(problem)
        }
        "seirs" => seirs(params),
        other if Path::new(other).is_file() => seirs(Some(Path::new(other))),
        other => Err(CliError::Config(format!(
            "unknown model `{other}` (built-ins: example1, example2, seirs; \
             or pass a parameter-file path)"
        ))),
    }
}
