//! Command-line front end for the hat-basis collocation solver.
//!
//! Three subcommands cover the common workflows:
//!
//! * `solve` — integrate a named or file-defined model on one grid and write
//!   the trajectory as CSV (optionally also as an SVG line chart),
//! * `converge` — run a grid-refinement ladder against a model's exact
//!   solution and tabulate errors, observed orders, and runtimes,
//! * `seirs` — batch the seasonal epidemic model over bases and grid sizes,
//!   writing one trajectory CSV per run plus a cross-basis summary.
//!
//! Exit codes: 0 on success, 2 for usage or configuration problems, 3 for
//! numerical failures (a Newton block that does not converge, a singular
//! Jacobian, non-finite plot data), 4 for I/O errors.

mod csvout;
mod model;
mod svg;

use std::path::{Path, PathBuf};
use std::process::exit;

use clap::{Args, Parser, Subcommand};
use fdehat::analysis::{cross_basis_deviation, run_convergence_study};
use fdehat::models::seirs_problem;
use fdehat::{solve_fde_system, BasisKind, NewtonConfig, Solution};

/// Errors surfaced to the shell, partitioned by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unknown models, malformed parameter files (exit 2).
    Config(String),
    /// The discretized system could not be solved or plotted (exit 3).
    Numerical(String),
    /// Reading or writing a file failed (exit 4).
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<fdehat::Error> for CliError {
    fn from(e: fdehat::Error) -> Self {
        match e {
            fdehat::Error::NonConvergence { .. }
            | fdehat::Error::SingularJacobian { .. }
            | fdehat::Error::BlockFailed { .. } => CliError::Numerical(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

/// Wraps an I/O error with the path it concerns.
pub fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Parser)]
#[command(
    name = "fdehat",
    version,
    about = "Solve Caputo fractional differential systems on hat-function bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one model on one grid and write the trajectory as CSV.
    Solve(RunConfig),
    /// Run a grid-refinement study against the model's exact solution.
    Converge(ConvergeArgs),
    /// Batch the seasonal epidemic model over bases and grid sizes.
    Seirs(SeirsArgs),
}

/// One solve: which model, which discretization, where the output goes.
#[derive(Args)]
struct RunConfig {
    /// Built-in model name (example1, example2, seirs) or a parameter-file path
    #[arg(long)]
    model: String,
    /// Basis: ghf (piecewise linear) or mhf (piecewise quadratic)
    #[arg(long, value_parser = model::parse_basis)]
    basis: BasisKind,
    /// Number of subintervals (mhf requires an even count)
    #[arg(long)]
    n: usize,
    /// Fractional order override in (0, 1]
    #[arg(long)]
    alpha: Option<f64>,
    /// Time-horizon override
    #[arg(long)]
    tau: Option<f64>,
    /// Output CSV path
    #[arg(long = "out")]
    out_csv: PathBuf,
    /// Optional SVG line chart of the same trajectory
    #[arg(long = "svg")]
    out_svg: Option<PathBuf>,
    /// Sampling density for interpolated CSV rows and SVG curves
    #[arg(long, default_value_t = 400)]
    samples: usize,
    /// Epidemic-model parameter file (key = value lines)
    #[arg(long)]
    params: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Built-in model name with an exact solution (example1, example2)
    #[arg(long)]
    model: String,
    /// Basis: ghf (piecewise linear) or mhf (piecewise quadratic)
    #[arg(long, value_parser = model::parse_basis)]
    basis: BasisKind,
    /// Grid ladder: `a:b` doubles from a to b, or a comma list like `2,4,8`
    #[arg(long)]
    n: String,
    /// Fractional order override in (0, 1]
    #[arg(long)]
    alpha: Option<f64>,
    /// Time-horizon override
    #[arg(long)]
    tau: Option<f64>,
    /// Output CSV path
    #[arg(long = "out")]
    out_csv: PathBuf,
}

#[derive(Args)]
struct SeirsArgs {
    /// Parameter file overriding the default epidemic constants
    #[arg(long)]
    params: Option<PathBuf>,
    /// Comma list of bases to run
    #[arg(long, default_value = "ghf,mhf")]
    basis: String,
    /// Comma list of grid sizes
    #[arg(long, default_value = "20,40,60,80")]
    n: String,
    /// Output prefix; files are <prefix>_<basis>_n<k>.csv plus <prefix>_summary.csv
    #[arg(long = "out")]
    out_prefix: PathBuf,
    /// Also write per-state SVG overlays comparing the two bases
    #[arg(long)]
    svg: bool,
    /// Sampling density for SVG curves and the cross-basis deviation
    #[arg(long, default_value_t = 400)]
    samples: usize,
    /// Fractional order override in (0, 1]
    #[arg(long)]
    alpha: Option<f64>,
    /// Time-horizon override
    #[arg(long)]
    tau: Option<f64>,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(cfg) => cmd_solve(cfg),
        Command::Converge(args) => cmd_converge(args),
        Command::Seirs(args) => cmd_seirs(args),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.message());
        exit(e.exit_code());
    }
}

fn cmd_solve(cfg: RunConfig) -> Result<(), CliError> {
    let problem = model::resolve_model(&cfg.model, cfg.params.as_deref(), cfg.alpha, cfg.tau)?;
    let sol = solve_fde_system(&problem, cfg.basis, cfg.n, &NewtonConfig::default())?;
    csvout::write_solution(&cfg.out_csv, &sol, cfg.samples)?;
    if let Some(svg_path) = &cfg.out_svg {
        let series = svg::trajectory_series(&sol, cfg.samples)?;
        svg::render_svg(&series, svg_path)?;
    }
    Ok(())
}

fn cmd_converge(args: ConvergeArgs) -> Result<(), CliError> {
    let problem = model::resolve_model(&args.model, None, args.alpha, args.tau)?;
    if problem.exact().is_none() {
        return Err(CliError::Config(format!(
            "model `{}` has no exact solution to measure errors against",
            args.model
        )));
    }
    let ladder = model::parse_ladder(&args.n)?;
    let rows = run_convergence_study(&problem, args.basis, &ladder, &NewtonConfig::default())?;
    for row in &rows {
        if let Some(failure) = &row.failure {
            eprintln!("warning: n = {} failed: {failure}", row.n);
        }
    }
    csvout::write_convergence(&args.out_csv, &rows, problem.dim())
}

fn cmd_seirs(args: SeirsArgs) -> Result<(), CliError> {
    let setup = model::load_seirs(args.params.as_deref(), args.alpha, args.tau)?;
    let problem = seirs_problem(setup.params, setup.y0, setup.tau)?;
    let bases = model::parse_basis_list(&args.basis)?;
    let sizes = model::parse_grid_list(&args.n)?;
    let runs: Vec<(BasisKind, usize)> = bases
        .iter()
        .flat_map(|&b| sizes.iter().map(move |&n| (b, n)))
        .collect();

    // Runs are independent, so solve them concurrently; everything written to
    // disk afterwards follows the deterministic (basis, n) order of `runs`.
    let cfg = NewtonConfig::default();
    let results: Vec<(BasisKind, usize, fdehat::Result<Solution>)> = std::thread::scope(|s| {
        let handles: Vec<_> = runs
            .iter()
            .map(|&(kind, n)| {
                let problem = &problem;
                let cfg = &cfg;
                s.spawn(move || (kind, n, solve_fde_system(problem, kind, n, cfg)))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });

    let mut failures = Vec::new();
    let mut solved: Vec<(BasisKind, usize, Solution)> = Vec::new();
    for (kind, n, res) in results {
        match res {
            Ok(sol) => {
                let path = run_path(&args.out_prefix, kind, n);
                csvout::write_solution(&path, &sol, args.samples)?;
                solved.push((kind, n, sol));
            }
            Err(e) => {
                eprintln!("warning: {} n = {n} failed: {e}", basis_name(kind));
                failures.push(format!("{} n = {n}", basis_name(kind)));
            }
        }
    }

    let find = |kind: BasisKind, n: usize| {
        solved
            .iter()
            .find(|(k, m, _)| *k == kind && *m == n)
            .map(|(_, _, s)| s)
    };
    let mut summary = Vec::new();
    for &n in &sizes {
        if let (Some(a), Some(b)) = (find(BasisKind::Ghf, n), find(BasisKind::Mhf, n)) {
            summary.push((n, cross_basis_deviation(a, b, args.samples.max(2))?));
        }
    }
    let mut summary_path = args.out_prefix.clone().into_os_string();
    summary_path.push("_summary.csv");
    csvout::write_summary(Path::new(&summary_path), &summary)?;

    if args.svg {
        for &n in &sizes {
            if let (Some(a), Some(b)) = (find(BasisKind::Ghf, n), find(BasisKind::Mhf, n)) {
                for (state, label) in ["s", "e", "i", "r"].iter().enumerate() {
                    let series = vec![
                        svg::component_series(a, state, "ghf", args.samples)?,
                        svg::component_series(b, state, "mhf", args.samples)?,
                    ];
                    let mut path = args.out_prefix.clone().into_os_string();
                    path.push(format!("_{label}_n{n}.svg"));
                    svg::render_svg(&series, Path::new(&path))?;
                }
            }
        }
    }

    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "{} of {} runs did not converge ({}); outputs for the remaining runs were written",
            failures.len(),
            runs.len(),
            failures.join(", ")
        )))
    }
}

fn basis_name(kind: BasisKind) -> &'static str {
    match kind {
        BasisKind::Ghf => "ghf",
        BasisKind::Mhf => "mhf",
    }
}

fn run_path(prefix: &Path, kind: BasisKind, n: usize) -> PathBuf {
    let mut os = prefix.to_path_buf().into_os_string();
    os.push(format!("_{}_n{n}.csv", basis_name(kind)));
    PathBuf::from(os)
}
