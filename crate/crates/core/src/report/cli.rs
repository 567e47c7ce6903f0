use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use super::config::ConfigFile;
use super::table::{emit_table, Cell, OutputFormat, Table};
use crate::ball_lab::{
    blowup_family, dyadic_grid, eps_regularity_probe, sup_inf_probe, sup_inf_threshold,
};
use crate::error::Error;
use crate::ode_core::{
    ground_state, GroundState, ProblemParams, DEFAULT_R_MAX, DEFAULT_TOL_ODE, DEFAULT_TOL_ROOT,
};
use crate::solution_family::{entire_solution, representation_residual};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bubble-lab",
    version,
    about = "Ground states and blowup probes for -Δv = A v₊^γ"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// `key = value` manifest; flags override its entries
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Space dimension (>= 3)
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Exponent γ in (1, (n+2)/(n-2))
    #[arg(long, global = true, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol_ode: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol_root: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    r_max: Option<f64>,
    /// Admit γ = 1 (closed-form validation only)
    #[arg(long, global = true)]
    oracle: bool,
    /// csv or json
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Write the table here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ground-state constants for one (n, γ)
    Ground,
    /// Ground-state constants over an evenly spaced γ grid
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        gamma_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        gamma_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Entire solution, its Newton potential and representation residual
    Entire {
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<f64>,
        /// Comma-separated radial distances; default 64 log-spaced points up to 10 r*/μ
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        radii: Option<Vec<f64>>,
    },
    /// Single-bubble family on a ball: masses against the quantum
    Blowup(FamilyArgs),
    /// sup + C·inf along the family
    Supinf {
        #[command(flatten)]
        family: FamilyArgs,
        /// Absolute coefficient C
        #[arg(long, conflicts_with = "c_factor", allow_negative_numbers = true)]
        c_used: Option<f64>,
        /// C as a multiple of the threshold c_star (default 2)
        #[arg(long, allow_negative_numbers = true)]
        c_factor: Option<f64>,
    },
    /// Largest centre value with mass below ε in B_R
    Epsreg {
        #[arg(long, allow_negative_numbers = true)]
        radius: Option<f64>,
        /// Comma-separated absolute mass thresholds
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "eps_fractions",
            allow_negative_numbers = true
        )]
        eps: Option<Vec<f64>>,
        /// Comma-separated thresholds as fractions of the quantum (default 0.25,0.5,0.9,0.99)
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        eps_fractions: Option<Vec<f64>>,
    },
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Constant coefficient A0 > 0 (default 1)
    #[arg(long, allow_negative_numbers = true)]
    a0: Option<f64>,
    /// Ball radius R (default 1)
    #[arg(long, allow_negative_numbers = true)]
    radius: Option<f64>,
    /// Grid 2^min..=2^max (default 0..=12)
    #[arg(long, allow_negative_numbers = true)]
    mu_min_exp: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    mu_max_exp: Option<i32>,
    /// Explicit comma-separated μ grid; overrides the exponents
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    mu_values: Option<Vec<f64>>,
}

/// How the sup+inf coefficient is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SupInfCoefficient {
    Absolute(f64),
    TimesThreshold(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum EpsTargets {
    Absolute(Vec<f64>),
    Fractions(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Ground,
    Sweep {
        gamma_min: f64,
        gamma_max: f64,
        steps: usize,
    },
    Entire {
        mu: f64,
        radii: Option<Vec<f64>>,
    },
    Blowup {
        a0: f64,
        mu_values: Vec<f64>,
        radius: f64,
    },
    SupInf {
        a0: f64,
        mu_values: Vec<f64>,
        radius: f64,
        coefficient: SupInfCoefficient,
    },
    EpsReg {
        radius: f64,
        targets: EpsTargets,
    },
}

/// Fully resolved and validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub params: ProblemParams,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Numerical(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numerical(e)
        }
    }
}

/// Runs the command line `argv` (program name first), writing results to
/// standard output or `--output`. Returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run_cli`] with explicit output streams.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = resolve(cli).and_then(|cfg| execute(&cfg).map(|table| (cfg, table)));
    let outcome = result.and_then(|(cfg, table)| write_table(&cfg, &table, out));
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "{}", json!({ "error": "io", "message": msg }));
            EXIT_NUMERICAL
        }
        Err(Failure::Numerical(e)) => {
            let _ = writeln!(err, "{}", diagnostic(&e));
            EXIT_NUMERICAL
        }
    }
}

fn diagnostic(e: &Error) -> serde_json::Value {
    match e {
        Error::ZeroNotFound { r, phi, r_max } => json!({
            "error": "zero_not_found", "message": e.to_string(), "r": r, "phi": phi, "r_max": r_max,
        }),
        Error::StepFailure {
            r,
            value,
            slope,
            reason,
        } => json!({
            "error": "step_failure", "message": e.to_string(), "r": r, "value": value,
            "slope": slope, "reason": reason,
        }),
        Error::Domain(msg) => json!({ "error": "domain", "message": msg }),
    }
}

fn write_table(cfg: &RunConfig, table: &Table, out: &mut dyn Write) -> Result<(), Failure> {
    let io_err = |e: std::io::Error| Failure::Io(e.to_string());
    match &cfg.output {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            emit_table(table, cfg.format, &mut file).map_err(io_err)
        }
        None => emit_table(table, cfg.format, out).map_err(io_err),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Merges flags over the config file, fills defaults and validates every
/// numeric field before any computation.
fn resolve(cli: Cli) -> Result<RunConfig, Failure> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path).map_err(Failure::Usage)?,
        None => ConfigFile::default(),
    };
    let get_f64 = |flag: Option<f64>, key: &str| -> Result<Option<f64>, Failure> {
        Ok(match flag {
            Some(v) => Some(v),
            None => cfg.get::<f64>(key).map_err(Failure::Usage)?,
        })
    };

    let n = match cli.n {
        Some(v) => v,
        None => cfg.get::<u32>("n").map_err(Failure::Usage)?.unwrap_or(3),
    };
    let oracle = cli.oracle
        || cfg
            .get::<bool>("oracle")
            .map_err(Failure::Usage)?
            .unwrap_or(false);
    let gamma = get_f64(cli.gamma, "gamma")?;
    let mut params = ProblemParams::new(n, gamma.unwrap_or(f64::NAN))
        .with_tol_ode(get_f64(cli.tol_ode, "tol_ode")?.unwrap_or(DEFAULT_TOL_ODE))
        .with_tol_root(get_f64(cli.tol_root, "tol_root")?.unwrap_or(DEFAULT_TOL_ROOT))
        .with_r_max(get_f64(cli.r_max, "r_max")?.unwrap_or(DEFAULT_R_MAX));
    params.oracle_mode = oracle;

    let format = match cli.format {
        Some(f) => f,
        None => cfg
            .get::<String>("format")
            .map_err(Failure::Usage)?
            .map(|s| s.parse::<OutputFormat>())
            .transpose()
            .map_err(Failure::Usage)?
            .unwrap_or_default(),
    };
    let output = match cli.output {
        Some(p) => Some(p),
        None => cfg
            .get::<String>("output")
            .map_err(Failure::Usage)?
            .map(PathBuf::from),
    };

    let require_gamma = |params: &ProblemParams| -> Result<(), Failure> {
        if gamma.is_none() {
            return Err(usage("--gamma is required for this subcommand"));
        }
        params.validate().map_err(Failure::from)
    };

    let family = |args: &FamilyArgs| -> Result<(f64, Vec<f64>, f64), Failure> {
        let a0 = get_f64(args.a0, "a0")?.unwrap_or(1.0);
        let radius = get_f64(args.radius, "radius")?.unwrap_or(1.0);
        let mu_values = match &args.mu_values {
            Some(v) => v.clone(),
            None => match cfg.get_list::<f64>("mu_values").map_err(Failure::Usage)? {
                Some(v) => v,
                None => {
                    let lo = match args.mu_min_exp {
                        Some(v) => v,
                        None => cfg
                            .get::<i32>("mu_min_exp")
                            .map_err(Failure::Usage)?
                            .unwrap_or(0),
                    };
                    let hi = match args.mu_max_exp {
                        Some(v) => v,
                        None => cfg
                            .get::<i32>("mu_max_exp")
                            .map_err(Failure::Usage)?
                            .unwrap_or(12),
                    };
                    if hi < lo {
                        return Err(usage(format!("mu exponent range {lo}..{hi} is empty")));
                    }
                    dyadic_grid(lo, hi)
                }
            },
        };
        if !(a0 > 0.0 && a0.is_finite()) {
            return Err(usage(format!("--a0 = {a0} must be positive")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(usage(format!("--radius = {radius} must be positive")));
        }
        if mu_values.is_empty() || mu_values.iter().any(|m| !(*m > 0.0 && m.is_finite())) {
            return Err(usage("mu values must be positive and non-empty"));
        }
        if mu_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(usage("mu values must be strictly increasing"));
        }
        Ok((a0, mu_values, radius))
    };

    let task = match &cli.command {
        Command::Ground => {
            require_gamma(&params)?;
            Task::Ground
        }
        Command::Sweep {
            gamma_min,
            gamma_max,
            steps,
        } => {
            let lo = get_f64(*gamma_min, "gamma_min")?
                .ok_or_else(|| usage("--gamma-min is required for sweep"))?;
            let hi = get_f64(*gamma_max, "gamma_max")?
                .ok_or_else(|| usage("--gamma-max is required for sweep"))?;
            let steps = match steps {
                Some(s) => *s,
                None => cfg
                    .get::<usize>("steps")
                    .map_err(Failure::Usage)?
                    .unwrap_or(9),
            };
            if steps == 0 {
                return Err(usage("--steps must be >= 1"));
            }
            if !(lo <= hi) {
                return Err(usage(format!(
                    "--gamma-min = {lo} exceeds --gamma-max = {hi}"
                )));
            }
            for g in sweep_grid(lo, hi, steps) {
                ProblemParams { gamma: g, ..params }.validate()?;
            }
            Task::Sweep {
                gamma_min: lo,
                gamma_max: hi,
                steps,
            }
        }
        Command::Entire { mu, radii } => {
            require_gamma(&params)?;
            if !(params.gamma > 1.0) {
                return Err(usage("entire solutions need gamma > 1"));
            }
            let mu = get_f64(*mu, "mu")?.unwrap_or(1.0);
            if !(mu > 0.0 && mu.is_finite()) {
                return Err(usage(format!("--mu = {mu} must be positive")));
            }
            let radii = match radii {
                Some(r) => Some(r.clone()),
                None => cfg.get_list::<f64>("radii").map_err(Failure::Usage)?,
            };
            if let Some(r) = &radii {
                if r.is_empty() || r.iter().any(|s| !(*s >= 0.0 && s.is_finite())) {
                    return Err(usage("radii must be non-negative and non-empty"));
                }
            }
            Task::Entire { mu, radii }
        }
        Command::Blowup(args) => {
            require_gamma(&params)?;
            let (a0, mu_values, radius) = family(args)?;
            Task::Blowup {
                a0,
                mu_values,
                radius,
            }
        }
        Command::Supinf {
            family: args,
            c_used,
            c_factor,
        } => {
            require_gamma(&params)?;
            let (a0, mu_values, radius) = family(args)?;
            let coefficient = match (get_f64(*c_used, "c_used")?, get_f64(*c_factor, "c_factor")?) {
                (Some(_), Some(_)) => {
                    return Err(usage("give either c_used or c_factor, not both"))
                }
                (Some(c), None) => SupInfCoefficient::Absolute(c),
                (None, f) => SupInfCoefficient::TimesThreshold(f.unwrap_or(2.0)),
            };
            let c = match coefficient {
                SupInfCoefficient::Absolute(c) | SupInfCoefficient::TimesThreshold(c) => c,
            };
            if !(c >= 0.0 && c.is_finite()) {
                return Err(usage(format!("sup+inf coefficient {c} must be >= 0")));
            }
            Task::SupInf {
                a0,
                mu_values,
                radius,
                coefficient,
            }
        }
        Command::Epsreg {
            radius,
            eps,
            eps_fractions,
        } => {
            require_gamma(&params)?;
            let radius = get_f64(*radius, "radius")?.unwrap_or(1.0);
            if !(radius > 0.0 && radius.is_finite()) {
                return Err(usage(format!("--radius = {radius} must be positive")));
            }
            let eps = match eps {
                Some(e) => Some(e.clone()),
                None => cfg.get_list::<f64>("eps").map_err(Failure::Usage)?,
            };
            let fractions = match eps_fractions {
                Some(f) => Some(f.clone()),
                None => cfg
                    .get_list::<f64>("eps_fractions")
                    .map_err(Failure::Usage)?,
            };
            let targets = match (eps, fractions) {
                (Some(_), Some(_)) => {
                    return Err(usage("give either eps or eps_fractions, not both"))
                }
                (Some(e), None) => {
                    if e.is_empty() || e.iter().any(|v| !(*v > 0.0)) {
                        return Err(usage("eps values must be positive"));
                    }
                    EpsTargets::Absolute(e)
                }
                (None, f) => {
                    let f = f.unwrap_or_else(|| vec![0.25, 0.5, 0.9, 0.99]);
                    if f.is_empty() || f.iter().any(|v| !(*v > 0.0 && *v < 1.0)) {
                        return Err(usage(
                            "eps fractions must lie in (0, 1): eps must stay below the quantum",
                        ));
                    }
                    EpsTargets::Fractions(f)
                }
            };
            Task::EpsReg { radius, targets }
        }
    };

    Ok(RunConfig {
        task,
        params,
        format,
        output,
    })
}

/// `steps` evenly spaced values from `lo` to `hi` inclusive.
pub fn sweep_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

const GROUND_COLUMNS: [&str; 11] = [
    "n",
    "gamma",
    "r_star",
    "alpha_star",
    "lambda_flux",
    "lambda_flux_quad",
    "lambda_mass",
    "flux_rel_gap",
    "mass_minus_flux",
    "q",
    "sphere_area",
];

fn ground_row(gs: &GroundState) -> Vec<Cell> {
    let p = gs.params();
    vec![
        p.n.into(),
        p.gamma.into(),
        gs.r_star.into(),
        gs.alpha_star.into(),
        gs.lambda_flux.into(),
        gs.lambda_flux_quad.into(),
        gs.lambda_mass.into(),
        gs.flux_rel_gap().into(),
        (gs.lambda_mass - gs.lambda_flux).into(),
        gs.q.into(),
        gs.sphere_area().into(),
    ]
}

/// Runs a validated configuration and returns its table.
fn execute(cfg: &RunConfig) -> Result<Table, Failure> {
    let params = cfg.params;
    let n: Cell = params.n.into();
    let table = match &cfg.task {
        Task::Ground => {
            let mut t = Table::new(GROUND_COLUMNS);
            t.push(ground_row(&ground_state(&params)?));
            t
        }
        Task::Sweep {
            gamma_min,
            gamma_max,
            steps,
        } => {
            let mut t = Table::new(GROUND_COLUMNS);
            for gamma in sweep_grid(*gamma_min, *gamma_max, *steps) {
                t.push(ground_row(&ground_state(&ProblemParams {
                    gamma,
                    ..params
                })?));
            }
            t
        }
        Task::Entire { mu, radii } => {
            let gs = ground_state(&params)?;
            let sol = entire_solution(gs, &vec![0.0; params.n as usize], *mu)?;
            let ff = sol.far_field_constants();
            let radii = match radii {
                Some(r) => r.clone(),
                None => {
                    let rho = sol.support_radius();
                    let (a, b) = ((1e-3 * rho).ln(), (10.0 * rho).ln());
                    (0..64)
                        .map(|k| (a + (b - a) * k as f64 / 63.0).exp())
                        .collect()
                }
            };
            let mut t = Table::new([
                "n",
                "gamma",
                "mu",
                "s",
                "v",
                "newton_potential",
                "residual",
                "c_gamma",
                "c_gamma_prime",
            ]);
            for s in radii {
                let v = sol.eval_radial(s);
                let np = sol.newton_potential(s);
                let residual = representation_residual(&sol, &[s])?;
                t.push(vec![
                    n.clone(),
                    params.gamma.into(),
                    (*mu).into(),
                    s.into(),
                    v.into(),
                    np.into(),
                    residual.into(),
                    ff.c_gamma.into(),
                    ff.c_gamma_prime.into(),
                ]);
            }
            t
        }
        Task::Blowup {
            a0,
            mu_values,
            radius,
        } => {
            let report = blowup_family(&params, *a0, mu_values, *radius)?;
            let mut t = Table::new([
                "n", "gamma", "a0", "radius", "mu", "mass", "quantum", "residual", "sup", "inf",
                "v_half", "v_edge",
            ]);
            for i in 0..report.mu_values.len() {
                t.push(vec![
                    n.clone(),
                    params.gamma.into(),
                    (*a0).into(),
                    (*radius).into(),
                    report.mu_values[i].into(),
                    report.masses[i].into(),
                    report.quantum.into(),
                    report.residuals[i].into(),
                    report.sups[i].into(),
                    report.infs[i].into(),
                    report.v_half[i].into(),
                    report.v_edge[i].into(),
                ]);
            }
            t
        }
        Task::SupInf {
            a0,
            mu_values,
            radius,
            coefficient,
        } => {
            let c_used = match coefficient {
                SupInfCoefficient::Absolute(c) => *c,
                SupInfCoefficient::TimesThreshold(f) => {
                    f * sup_inf_threshold(&ground_state(&params)?)
                }
            };
            let report = sup_inf_probe(&params, *a0, mu_values, *radius, c_used)?;
            let mut t = Table::new([
                "n", "gamma", "a0", "radius", "mu", "sup", "inf", "value", "c_used", "c_star",
                "bound",
            ]);
            for i in 0..report.mu_values.len() {
                t.push(vec![
                    n.clone(),
                    params.gamma.into(),
                    (*a0).into(),
                    (*radius).into(),
                    report.mu_values[i].into(),
                    report.sups[i].into(),
                    report.infs[i].into(),
                    report.values[i].into(),
                    report.c_used.into(),
                    report.c_star.into(),
                    report.bound.into(),
                ]);
            }
            t
        }
        Task::EpsReg { radius, targets } => {
            let eps_values = match targets {
                EpsTargets::Absolute(e) => e.clone(),
                EpsTargets::Fractions(f) => {
                    let quantum = ground_state(&params)?.lambda_mass;
                    f.iter().map(|x| x * quantum).collect()
                }
            };
            let mut t = Table::new([
                "n",
                "gamma",
                "radius",
                "eps",
                "eps_fraction",
                "quantum",
                "mu_eps",
                "c_of_eps",
                "mass_at_sup",
            ]);
            for eps in eps_values {
                let r = eps_regularity_probe(&params, eps, *radius)?;
                t.push(vec![
                    n.clone(),
                    params.gamma.into(),
                    (*radius).into(),
                    r.eps.into(),
                    (r.eps / r.quantum).into(),
                    r.quantum.into(),
                    r.mu_at_sup.into(),
                    r.c_of_eps.into(),
                    r.mass_at_sup.into(),
                ]);
            }
            t
        }
    };
    Ok(table)
}
