//! The `ksnyder` command line: verification suites and single computations,
//! reported as JSON or text.

pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::hopf_star::{star_plane_waves_via, PlaneWave};
use crate::momentum::expand::{exact_table, formula_table, Quantity};
use crate::momentum::{self, ComposeResult, Path, DEFAULT_STEPS};
use crate::numerics::scalar::{parse_rational, to_f64};
use crate::numerics::{DeformParams, MinkVec, Rational, RealizationSpec};
use crate::realizations::sample_params;
pub use report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Ode,
    Perturbative,
}

#[derive(Args, Clone, Debug)]
struct CommonArgs {
    /// Spacetime dimension; inferred from --a or --k when omitted.
    #[arg(long)]
    dim: Option<usize>,
    /// Deformation vector, comma-separated, time component first.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Snyder parameter.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// maggiore, unit, u=<value> or taylor=c0,c1,...
    #[arg(long, default_value = "maggiore")]
    realization: String,
    /// Truncation order in ε for operator computations.
    #[arg(long, default_value_t = 4)]
    order: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Override the per-check numeric tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
struct PathArgs {
    /// Evaluation path; defaults to exact for maggiore, ode otherwise.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Parameter u of the second-order formulas (perturbative method).
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the identity, ordering, momentum and star-product suites.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compose two momenta, D(k, q).
    Compose {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Antipode S(k) with D(S(k), k) = 0.
    Antipode {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Use the second-order formula (timelike a only).
        #[arg(long)]
        perturbative: bool,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
    },
    /// The momentum map K(k), or its inverse.
    Kvec {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Integrate the momentum flow to t = 1 and print P(1) with its
    /// Richardson error estimate.
    Ode {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
    },
    /// Star product of two unit plane waves.
    Star {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        path: PathArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// ε-coefficient tables of compose, kvec, kvec-inverse and antipode at (εa, ε²s).
    Expand {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Parameter u of the second-order formulas; defaults from the realization.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// Restrict to one quantity.
        #[arg(long)]
        quantity: Option<String>,
        /// Highest power of ε in the tables.
        #[arg(long, default_value_t = 3)]
        max_power: usize,
    },
}

#[derive(Parser, Debug)]
#[command(name = "ksnyder", version, about = "Checks and computations for κ-Snyder deformed Minkowski space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Validated settings shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub dim: usize,
    pub exact: DeformParams<Rational>,
    pub params: DeformParams<f64>,
    pub spec: RealizationSpec,
    pub order: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

fn parse_vec(text: &str, dim: usize) -> Result<MinkVec> {
    let v: Vec<f64> = parse_list(text)?.iter().map(to_f64).collect();
    if v.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
    }
    MinkVec::from_slice(&v)
}

impl RunConfig {
    fn resolve(args: &CommonArgs, hint: Option<&str>, sample_missing: bool) -> Result<Self> {
        let a = args.a.as_deref().map(parse_list).transpose()?;
        let hinted = hint.map(|h| h.split(',').count());
        let dim = args.dim.or(a.as_ref().map(Vec::len)).or(hinted).unwrap_or(4);
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if args.order == 0 {
            return Err(Error::InvalidInput("--order must be at least 1".into()));
        }
        if let Some(t) = args.tol {
            if t <= 0.0 || !t.is_finite() {
                return Err(Error::InvalidInput("--tol must be positive".into()));
            }
        }
        let s = args.s.as_deref().map(parse_rational).transpose()?;
        let exact = match (a, s) {
            (None, None) if sample_missing => sample_params(args.seed, dim)?,
            (a, s) => {
                let a = match a {
                    Some(a) => a,
                    None => vec![Rational::from_integer(0.into()); dim],
                };
                if a.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: a.len() });
                }
                DeformParams::new(MinkVec::new(a)?, s.unwrap_or_else(|| Rational::from_integer(0.into())))
            }
        };
        Ok(Self {
            dim,
            params: exact.to_f64(),
            exact,
            spec: args.realization.parse()?,
            order: args.order,
            seed: args.seed,
            tol: args.tol,
            format: args.format,
            out: args.out.clone(),
        })
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

fn choose_path(cfg: &RunConfig, args: &PathArgs) -> Result<Path> {
    Ok(match args.method {
        None => match Path::for_spec(&cfg.spec) {
            Path::Ode { .. } => Path::Ode { steps: args.steps },
            other => other,
        },
        Some(MethodArg::Exact) => Path::Exact,
        Some(MethodArg::Ode) => Path::Ode { steps: args.steps },
        Some(MethodArg::Perturbative) => Path::Perturbative { u: u_value(cfg, args.u.as_deref())? },
    })
}

fn u_value(cfg: &RunConfig, text: Option<&str>) -> Result<f64> {
    match text {
        Some(t) => Ok(to_f64(&parse_rational(t)?)),
        None => cfg
            .spec
            .effective_u()
            .ok_or_else(|| Error::InvalidInput("cannot infer u from the realization; pass --u".into())),
    }
}

fn compose_report(name: &str, r: &ComposeResult, tol: f64) -> CheckReport {
    let d = &r.diagnostics;
    let details = format!(
        "method={}; newton_iters={}; ode_steps={}; ode_estimate={:.3e}",
        r.method, d.newton_iters, d.ode_steps, d.ode_estimate
    );
    let mut report = CheckReport::within(name, d.residual.max(d.ode_estimate), tol, details);
    if r.method == momentum::Method::Perturbative {
        report.details = "method=perturbative; literal second-order formula, no residual".into();
    }
    report.with_value(r.value.components())
}

fn run_command(command: &Command) -> Result<(Vec<CheckReport>, RunConfig)> {
    match command {
        Command::Verify { common } => {
            let cfg = RunConfig::resolve(common, None, true)?;
            eprintln!("verify: dim={} a={} s={} realization={} order={} seed={}", cfg.dim, fmt_rvec(&cfg.exact), cfg.exact.s, cfg.spec, cfg.order, cfg.seed);
            Ok((suites::run_verify(&cfg)?, cfg))
        }
        Command::Compose { common, path, k, q } => {
            let cfg = RunConfig::resolve(common, Some(k), false)?;
            let (k, q) = (parse_vec(k, cfg.dim)?, parse_vec(q, cfg.dim)?);
            let path = choose_path(&cfg, path)?;
            let r = momentum::compose_via(&cfg.spec, &cfg.params, &k, &q, &path)?;
            Ok((vec![compose_report("compose", &r, cfg.tol(1e-9))], cfg))
        }
        Command::Antipode { common, k, perturbative, steps } => {
            let cfg = RunConfig::resolve(common, Some(k), false)?;
            let k = parse_vec(k, cfg.dim)?;
            if *perturbative {
                let s = momentum::antipode_perturbative(&cfg.params, &k)?;
                let report = CheckReport::within("antipode_perturbative", 0.0, 1.0, "literal second-order formula, no residual");
                return Ok((vec![report.with_value(s.components())], cfg));
            }
            let path = match Path::for_spec(&cfg.spec) {
                Path::Ode { .. } => Path::Ode { steps: *steps },
                other => other,
            };
            let s = momentum::antipode_via(&cfg.spec, &cfg.params, &k, momentum::DEFAULT_TOL, &path)?;
            let details = format!("residual={:.3e}; mirror_residual={:.3e}; newton_iters={}", s.residual, s.mirror_residual, s.newton_iters);
            let report = CheckReport::within("antipode", s.residual.max(s.mirror_residual), cfg.tol(1e-12), details);
            Ok((vec![report.with_value(s.value.components())], cfg))
        }
        Command::Kvec { common, path, k, inverse } => {
            let cfg = RunConfig::resolve(common, Some(k), false)?;
            let k = parse_vec(k, cfg.dim)?;
            let path = choose_path(&cfg, path)?;
            let report = match (&path, inverse) {
                (Path::Perturbative { u }, false) => {
                    let v = momentum::kvec_perturbative(*u, &cfg.params, &k)?;
                    CheckReport::within("kvec", 0.0, 1.0, "method=perturbative; literal second-order formula").with_value(v.components())
                }
                (Path::Perturbative { u }, true) => {
                    let v = momentum::kvec_inverse_perturbative(*u, &cfg.params, &k)?;
                    CheckReport::within("kvec_inverse", 0.0, 1.0, "method=perturbative; literal second-order formula").with_value(v.components())
                }
                (_, false) => {
                    let v = momentum::kvec_via(&cfg.spec, &cfg.params, &k, &path)?;
                    CheckReport::within("kvec", 0.0, 1.0, format!("path={path}")).with_value(v.components())
                }
                (_, true) => {
                    let inv = momentum::kvec_inverse_via(&cfg.spec, &cfg.params, &k, cfg.tol(momentum::DEFAULT_TOL), &path)?;
                    let details = format!("path={path}; newton_iters={}", inv.iterations);
                    CheckReport::within("kvec_inverse", inv.residual, cfg.tol(momentum::DEFAULT_TOL), details).with_value(&inv.x)
                }
            };
            Ok((vec![report], cfg))
        }
        Command::Ode { common, k, q, steps } => {
            let cfg = RunConfig::resolve(common, Some(k), false)?;
            let (k, q) = (parse_vec(k, cfg.dim)?, parse_vec(q, cfg.dim)?);
            let r = momentum::compose_ode(&cfg.spec, &cfg.params, &k, &q, *steps)?;
            let details = format!("steps={steps}; richardson_estimate={:.6e}", r.diagnostics.ode_estimate);
            let report = CheckReport::within("ode", r.diagnostics.ode_estimate, cfg.tol(momentum::ODE_TOL), details);
            Ok((vec![report.with_value(r.value.components())], cfg))
        }
        Command::Star { common, path, k, q } => {
            let cfg = RunConfig::resolve(common, Some(k), false)?;
            let (k, q) = (parse_vec(k, cfg.dim)?, parse_vec(q, cfg.dim)?);
            let path = choose_path(&cfg, path)?;
            let (wave, composed) = star_plane_waves_via(&cfg.spec, &cfg.params, &PlaneWave::unit(k), &PlaneWave::unit(q), &path)?;
            let mut report = compose_report("star", &composed, cfg.tol(1e-9));
            report.details.push_str(&format!("; amplitude={}", wave.amplitude));
            Ok((vec![report], cfg))
        }
        Command::Expand { common, k, q, u, quantity, max_power } => {
            let cfg = RunConfig::resolve(common, Some(k), false)?;
            let (k, q) = (parse_vec(k, cfg.dim)?, parse_vec(q, cfg.dim)?);
            let u = u_value(&cfg, u.as_deref())?;
            let quantities: Vec<Quantity> = match quantity {
                Some(name) => vec![name.parse()?],
                None => Quantity::ALL.to_vec(),
            };
            let timelike = cfg.params.a.components()[1..].iter().all(|v| *v == 0.0);
            let mut reports = Vec::new();
            for quantity in quantities {
                if quantity == Quantity::Antipode && !timelike {
                    eprintln!("expand: skipping antipode, the second-order formula needs a = (a0, 0, ...)");
                    continue;
                }
                let formula = formula_table(quantity, u, &cfg.params, &k, &q, *max_power)?;
                let name = format!("expand.{quantity}");
                let report = if cfg.spec.is_maggiore() && u == 0.5 {
                    let exact = exact_table(quantity, &cfg.params, &k, &q, *max_power)?;
                    let gaps = exact.gaps(&formula);
                    let low = gaps.iter().take(3).fold(0.0f64, |m, g| m.max(*g));
                    let gap_text: Vec<String> = gaps.iter().map(|g| format!("{g:.3e}")).collect();
                    CheckReport::within(name, low, cfg.tol(1e-12), format!("u={u}; formula vs exact series, gaps by power: [{}]", gap_text.join(", ")))
                } else {
                    CheckReport::within(name, 0.0, 1.0, format!("u={u}; formula only, no exact series for this realization"))
                };
                reports.push(report.with_coefficients(formula.coefficients));
            }
            Ok((reports, cfg))
        }
    }
}

fn fmt_rvec(p: &DeformParams<Rational>) -> String {
    let parts: Vec<String> = p.a.components().iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Parses `argv` (program name first), runs the command, prints the report
/// and returns the exit code: 0 all checks pass, 1 a check failed, 2 usage,
/// input or domain error.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_command(&cli.command) {
        Ok((reports, cfg)) => {
            let json = report::to_json(&reports);
            let rendered = match cfg.format {
                Format::Json => format!("{json}\n"),
                Format::Text => report::to_text(&reports),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(rendered.as_bytes()).is_err() {
                return 2;
            }
            if let Some(path) = &cfg.out {
                if let Err(e) = std::fs::write(path, format!("{json}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            if reports.iter().all(|r| r.pass) {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
