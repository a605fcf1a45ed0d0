//! Command-line front end of the `fucik` binary.
//!
//! Exit codes: 0 on success, 1 on validation errors (bad flags, bad config,
//! out-of-range values), 2 on solver failures. Partial results are still
//! written on solver failure, next to a `.incomplete` file listing the
//! failed points.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::homog::{self, ExperimentConfig, T_MAX, T_MIN};
use crate::io as csv;
use crate::nodal;
use crate::shooting::{HalfProblem, Sign};
use crate::spectrum::{self, bracket, solve_half_eigenvalue, DEFAULT_TOL};
use crate::weights::{scale, PiecewiseConstantWeight, ScaledWeight, WeightBounds};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Solver(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Solver(m) => write!(f, "solver failure: {m}"),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Invalid { .. } | crate::Error::OutOfDomain { .. } => CliError::Validation(e.to_string()),
            other => CliError::Solver(other.to_string()),
        }
    }
}

fn write_failed(path: &Path, e: io::Error) -> CliError {
    CliError::Solver(format!("cannot write {}: {e}", path.display()))
}

/// Parses `pi`, `2pi`, `2*pi`, `pi/2` or a plain number.
pub fn parse_scalar(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("cannot parse {s:?} as a number"));
    if s == "pi" || s == "π" {
        return Ok(PI);
    }
    if let Some(d) = s.strip_prefix("pi/") {
        return Ok(PI / num(d)?);
    }
    if let Some(c) = s.strip_suffix("pi") {
        return Ok(num(c.trim_end_matches('*'))? * PI);
    }
    num(s)
}

/// A number in a config file, or a string accepted by [`parse_scalar`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Text(String),
}

impl Scalar {
    fn value(&self, field: &str) -> Result<f64, CliError> {
        match self {
            Scalar::Number(x) => Ok(*x),
            Scalar::Text(s) => parse_scalar(s).map_err(|e| CliError::Validation(format!("{field}: {e}"))),
        }
    }
}

fn default_signs() -> Vec<Sign> {
    Sign::BOTH.to_vec()
}

/// Experiment configuration file (JSON). Unknown keys are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub weights_m: PiecewiseConstantWeight,
    pub weights_n: PiecewiseConstantWeight,
    pub ell: Scalar,
    #[serde(default)]
    pub k_list: Vec<usize>,
    #[serde(default)]
    pub t_list: Vec<Scalar>,
    #[serde(default = "default_signs")]
    pub signs: Vec<Sign>,
    #[serde(default)]
    pub epsilon_list: Vec<f64>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
    }

    /// Resolves defaults: ε list `ℓ/j` for `j = 4 … 256`, tol `1e-12`.
    pub fn experiment(&self) -> Result<ExperimentConfig, CliError> {
        let ell = self.ell.value("ell")?;
        let t_list = self
            .t_list
            .iter()
            .map(|t| t.value("t_list"))
            .collect::<Result<Vec<_>, _>>()?;
        let epsilons = if self.epsilon_list.is_empty() {
            homog::default_epsilons(ell)
        } else {
            self.epsilon_list.clone()
        };
        let cfg = ExperimentConfig {
            m: self.weights_m.clone(),
            n: self.weights_n.clone(),
            ell,
            k_list: self.k_list.clone(),
            t_list,
            signs: self.signs.clone(),
            epsilons,
            tol: self.tol.unwrap_or(DEFAULT_TOL),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Parser)]
#[command(name = "fucik", about = "Half-eigenvalues, Fucik curves and homogenization rates for periodic step weights")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one half-eigenvalue.
    Solve(PointArgs),
    /// Trace a Fucik curve over a t grid.
    Curve(CurveArgs),
    /// Run an epsilon sweep and fit convergence rates.
    Homog(ConfigArgs),
    /// Nodal decomposition of one eigenfunction.
    Nodal(PointArgs),
    /// Check bracket and nodal inequalities over a config grid.
    CheckBounds(ConfigArgs),
}

#[derive(Debug, Args)]
struct WeightSource {
    /// JSON experiment config supplying weights_m, weights_n and ell.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Constant weights "m,n" instead of a config file.
    #[arg(long, value_name = "M,N")]
    const_weights: Option<String>,
    /// Interval length (accepts "pi").
    #[arg(long)]
    ell: Option<String>,
    /// Rescaling factor epsilon.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long)]
    k: usize,
    /// Slope t (accepts "pi").
    #[arg(long)]
    t: String,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    sign: String,
    #[command(flatten)]
    source: WeightSource,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    sign: String,
    /// Comma-separated t values; defaults to 33 log-spaced points in [1/16, 16].
    #[arg(long)]
    t_grid: Option<String>,
    #[command(flatten)]
    source: WeightSource,
}

#[derive(Debug, Args)]
struct ConfigArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

/// Weights realized at one ε.
struct Setup {
    m: ScaledWeight,
    n: ScaledWeight,
    ell: f64,
    epsilon: f64,
    bounds: WeightBounds,
    tol: f64,
    out_dir: Option<PathBuf>,
}

fn check_t(t: f64) -> Result<f64, CliError> {
    if (T_MIN..=T_MAX).contains(&t) {
        Ok(t)
    } else {
        Err(CliError::Validation(format!("t = {t} outside [{T_MIN}, {T_MAX}]")))
    }
}

fn check_k(k: usize) -> Result<usize, CliError> {
    if k == 0 {
        Err(CliError::Validation("k must be at least 1".into()))
    } else {
        Ok(k)
    }
}

fn parse_sign(s: &str) -> Result<Sign, CliError> {
    s.parse().map_err(|e: crate::Error| CliError::Validation(e.to_string()))
}

fn parse_flag(field: &str, s: &str) -> Result<f64, CliError> {
    parse_scalar(s).map_err(|e| CliError::Validation(format!("{field}: {e}")))
}

impl WeightSource {
    fn setup(&self) -> Result<Setup, CliError> {
        let (m, n, ell, eps_default, tol, out_dir) = match (&self.config, &self.const_weights) {
            (Some(_), Some(_)) => {
                return Err(CliError::Validation("give either --config or --const-weights, not both".into()))
            }
            (None, None) => return Err(CliError::Validation("weights: need --config or --const-weights".into())),
            (Some(path), None) => {
                let file = ConfigFile::load(path)?;
                let ell = match &self.ell {
                    Some(s) => parse_flag("ell", s)?,
                    None => file.ell.value("ell")?,
                };
                let eps = file.epsilon_list.first().copied().unwrap_or(1.0);
                (file.weights_m, file.weights_n, ell, eps, file.tol, file.out_dir)
            }
            (None, Some(spec)) => {
                let parts: Vec<&str> = spec.split(',').collect();
                if parts.len() != 2 {
                    return Err(CliError::Validation(format!("const-weights: expected \"m,n\", got {spec:?}")));
                }
                let m = PiecewiseConstantWeight::constant(parse_flag("const-weights", parts[0])?, 1.0)?;
                let n = PiecewiseConstantWeight::constant(parse_flag("const-weights", parts[1])?, 1.0)?;
                let ell = parse_flag("ell", self.ell.as_deref().unwrap_or("1"))?;
                (m, n, ell, 1.0, None, None)
            }
        };
        let epsilon = self.epsilon.unwrap_or(eps_default);
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(CliError::Validation(format!("epsilon must be > 0, got {epsilon}")));
        }
        let tol = self.tol.or(tol).unwrap_or(DEFAULT_TOL);
        if tol.is_nan() || tol <= 0.0 {
            return Err(CliError::Validation(format!("tol must be > 0, got {tol}")));
        }
        let bounds = WeightBounds::enclosing(&m, &n);
        Ok(Setup {
            m: scale(&m, epsilon, ell)?,
            n: scale(&n, epsilon, ell)?,
            ell,
            epsilon,
            bounds,
            tol,
            out_dir: self.out_dir.clone().or(out_dir),
        })
    }
}

fn name_token(x: f64) -> String {
    format!("{x}")
}

fn create_out_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| write_failed(dir, e))
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<fs::File>) -> io::Result<()>) -> Result<(), CliError> {
    let file = fs::File::create(path).map_err(|e| write_failed(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w).and_then(|_| w.flush()).map_err(|e| write_failed(path, e))
}

fn flag_incomplete(path: &Path, failures: &[String]) -> Result<(), CliError> {
    let mut flag = path.as_os_str().to_owned();
    flag.push(".incomplete");
    let flag = PathBuf::from(flag);
    write_file(&flag, |w| failures.iter().try_for_each(|f| writeln!(w, "{f}")))
}

fn cmd_solve(args: &PointArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let k = check_k(args.k)?;
    let t = check_t(parse_flag("t", &args.t)?)?;
    let sign = parse_sign(&args.sign)?;
    let s = args.source.setup()?;
    let e = solve_half_eigenvalue(k, t, sign, &s.m, &s.n, s.ell, s.bounds, s.tol)?;
    let _ = writeln!(out, "lambda={}", csv::fmt_f64(e.lambda));
    let _ = writeln!(out, "alpha={}", csv::fmt_f64(e.alpha()));
    let _ = writeln!(out, "beta={}", csv::fmt_f64(e.beta()));
    if let Some(dir) = &s.out_dir {
        create_out_dir(dir)?;
        let problem = HalfProblem::new(&s.m, &s.n, t, sign, s.ell)?;
        let trace = problem.trajectory(e.lambda)?;
        let path = dir.join(format!(
            "solve_{k}_{}_{}_{}.csv",
            sign.word(),
            name_token(t),
            name_token(s.epsilon)
        ));
        write_file(&path, |w| csv::write_trajectory(w, &trace))?;
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(())
}

fn cmd_curve(args: &CurveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let k = check_k(args.k)?;
    let sign = parse_sign(&args.sign)?;
    let grid = match &args.t_grid {
        None => spectrum::default_t_grid(),
        Some(text) => text
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| parse_flag("t-grid", p).and_then(check_t))
            .collect::<Result<Vec<_>, _>>()?,
    };
    if grid.is_empty() {
        return Err(CliError::Validation("t-grid must not be empty".into()));
    }
    let s = args.source.setup()?;
    let trace = spectrum::trace_curve(k, sign, &s.m, &s.n, s.ell, s.bounds, &grid, s.tol)?;
    for p in &trace.points {
        let _ = writeln!(out, "t={} alpha={} beta={}", csv::fmt_f64(p.t), csv::fmt_f64(p.alpha), csv::fmt_f64(p.beta));
    }
    let failures: Vec<String> = trace.failures.iter().map(|(t, e)| format!("t={t}: {e}")).collect();
    if let Some(dir) = &s.out_dir {
        create_out_dir(dir)?;
        let path = dir.join(format!("curve_{k}_{}_{}.csv", sign.word(), name_token(s.epsilon)));
        write_file(&path, |w| csv::write_curve(w, &trace.points))?;
        if !failures.is_empty() {
            flag_incomplete(&path, &failures)?;
        }
        let _ = writeln!(out, "wrote {}", path.display());
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Solver(failures.join("; ")))
    }
}

#[derive(Debug, Serialize)]
struct SeriesSummary {
    k: usize,
    sign: Sign,
    t: f64,
    slope: Option<f64>,
    intercept: Option<f64>,
    used_rows: usize,
    c_emp: f64,
    complete: bool,
    failures: Vec<(f64, String)>,
}

#[derive(Debug, Serialize)]
struct HomogSummary {
    ell: f64,
    tol: f64,
    complete: bool,
    c_emp_spread_over_k: f64,
    c_emp_spread_over_t: f64,
    k2_rate: homog::K2RateCheck,
    series: Vec<SeriesSummary>,
}

fn c_emp_spreads(report: &homog::RateReport) -> (f64, f64) {
    let by_k: Vec<f64> = homog::c_emp_by_k(report).into_iter().map(|(_, c)| c).collect();
    let by_t: Vec<f64> = homog::c_emp_by_t(report).into_iter().map(|(_, c)| c).collect();
    (homog::spread(&by_k), homog::spread(&by_t))
}

fn cmd_homog(args: &ConfigArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let file = ConfigFile::load(&args.config)?;
    let cfg = file.experiment()?;
    let dir = args
        .out_dir
        .clone()
        .or(file.out_dir.clone())
        .ok_or_else(|| CliError::Validation("out_dir: not given in config or flags".into()))?;
    let report = homog::run_rate_experiment(&cfg)?;
    create_out_dir(&dir)?;
    let rates = dir.join("homog_rates.csv");
    write_file(&rates, |w| csv::write_rates(w, &report))?;

    let (over_k, over_t) = c_emp_spreads(&report);
    let summary = HomogSummary {
        ell: report.ell,
        tol: report.tol,
        complete: report.is_complete(),
        c_emp_spread_over_k: over_k,
        c_emp_spread_over_t: over_t,
        k2_rate: homog::check_k2_rate(&report),
        series: report
            .series
            .iter()
            .map(|s| SeriesSummary {
                k: s.key.k,
                sign: s.key.sign,
                t: s.key.t,
                slope: s.fit.map(|f| f.slope),
                intercept: s.fit.map(|f| f.intercept),
                used_rows: s.fit.map_or(0, |f| f.used_rows),
                c_emp: s.c_emp,
                complete: s.is_complete(),
                failures: s.failures.clone(),
            })
            .collect(),
    };
    let summary_path = dir.join("homog_summary.json");
    write_file(&summary_path, |w| {
        serde_json::to_writer_pretty(&mut *w, &summary).map_err(io::Error::other)?;
        writeln!(w)
    })?;
    for s in &summary.series {
        let slope = s.slope.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"));
        let _ = writeln!(out, "k={} sign={} t={} slope={} C_emp={:.4e}", s.k, s.sign, s.t, slope, s.c_emp);
    }
    let _ = writeln!(out, "wrote {} and {}", rates.display(), summary_path.display());
    if report.is_complete() {
        Ok(())
    } else {
        let failures: Vec<String> = report
            .series
            .iter()
            .flat_map(|s| s.failures.iter().map(move |(e, msg)| format!("k={} sign={} t={} eps={e}: {msg}", s.key.k, s.key.sign, s.key.t)))
            .collect();
        flag_incomplete(&rates, &failures)?;
        Err(CliError::Solver(format!("{} grid points failed", failures.len())))
    }
}

fn cmd_nodal(args: &PointArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let k = check_k(args.k)?;
    let t = check_t(parse_flag("t", &args.t)?)?;
    let sign = parse_sign(&args.sign)?;
    let s = args.source.setup()?;
    let e = solve_half_eigenvalue(k, t, sign, &s.m, &s.n, s.ell, s.bounds, s.tol)?;
    let d = nodal::extract(&e)?;
    let period = s.m.cell_period().max(s.n.cell_period());
    let eq = nodal::check_equal_lengths(&d, period);
    let pairs = nodal::check_pair_lengths(&d, period, k, s.ell);
    let lower = nodal::check_lower_bounds(&d, t, s.bounds, k, s.ell);
    let _ = writeln!(out, "lambda={}", csv::fmt_f64(e.lambda));
    for iv in &d.intervals {
        let _ = writeln!(out, "({}, {}) {}", csv::fmt_f64(iv.left), csv::fmt_f64(iv.right), iv.sign);
    }
    let _ = writeln!(out, "equal_lengths ok={} gap+={:.3e} gap-={:.3e} bound={:.3e}", eq.ok(), eq.gap_plus, eq.gap_minus, eq.bound);
    let _ = writeln!(out, "pair_lengths ok={} worst={:.3e} bound={:.3e}", pairs.ok, pairs.worst, pairs.bound);
    let _ = writeln!(out, "lower_bounds ok={}", lower.ok);
    if let Some(dir) = &s.out_dir {
        create_out_dir(dir)?;
        let path = dir.join(format!(
            "nodal_{k}_{}_{}_{}.csv",
            sign.word(),
            name_token(t),
            name_token(s.epsilon)
        ));
        let rows = nodal::nodal_rows(&e, &d);
        write_file(&path, |w| csv::write_nodal(w, &rows))?;
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(())
}

/// Outcome of every inequality check on one solved grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityChecks {
    pub bracket: bool,
    pub lower_bounds: bool,
    pub sturm: bool,
    pub equal_lengths: bool,
    pub pair_lengths: bool,
    /// `None` for odd `k`, where the averaging lemma is not applied.
    pub averaging: Option<bool>,
}

impl InequalityChecks {
    pub fn all_ok(&self) -> bool {
        self.bracket && self.lower_bounds && self.sturm && self.equal_lengths && self.pair_lengths && self.averaging != Some(false)
    }
}

/// Runs every nodal and bracket inequality on a solved eigenpair.
pub fn inequality_checks(
    e: &spectrum::HalfEigenvalue,
    bounds: WeightBounds,
    period: f64,
    ell: f64,
) -> crate::Result<InequalityChecks> {
    let d = nodal::extract(e)?;
    let br = bracket(e.k, e.t, bounds, ell)?;
    let averaging = if e.k.is_multiple_of(2) {
        Some(nodal::averaging_lemma(&d.pair_lengths(), ell, 4.0 * period + nodal::SLACK * ell)?)
    } else {
        None
    };
    Ok(InequalityChecks {
        bracket: br.contains(e.lambda, 1e-12),
        lower_bounds: nodal::check_lower_bounds(&d, e.t, bounds, e.k, ell).ok,
        sturm: nodal::check_sturm_lengths(&d, e.lambda, e.t, bounds),
        equal_lengths: nodal::check_equal_lengths(&d, period).ok(),
        pair_lengths: nodal::check_pair_lengths(&d, period, e.k, ell).ok,
        averaging,
    })
}

fn cmd_check_bounds(args: &ConfigArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let file = ConfigFile::load(&args.config)?;
    let cfg = file.experiment()?;
    let bounds = cfg.bounds();
    let grid = homog::solve_grid(&cfg)?;
    let period_of = |eps: f64| eps * cfg.m.period().max(cfg.n.period());
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for p in &grid {
        let label = format!("k={} sign={} t={} eps={}", p.key.k, p.key.sign, p.key.t, p.epsilon);
        match &p.solution {
            Ok(e) => match inequality_checks(e, bounds, period_of(p.epsilon), cfg.ell) {
                Ok(c) => rows.push((p.key, p.epsilon, c)),
                Err(err) => failures.push(format!("{label}: {err}")),
            },
            Err(err) => failures.push(format!("{label}: {err}")),
        }
    }
    let count = |f: &dyn Fn(&InequalityChecks) -> bool| rows.iter().filter(|r| !f(&r.2)).count();
    let _ = writeln!(out, "checked {} eigenpairs", rows.len());
    let _ = writeln!(out, "bracket violations: {}", count(&|c| c.bracket));
    let _ = writeln!(out, "lower bound violations: {}", count(&|c| c.lower_bounds));
    let _ = writeln!(out, "sturm length violations: {}", count(&|c| c.sturm));
    let _ = writeln!(out, "equal length violations: {}", count(&|c| c.equal_lengths));
    let _ = writeln!(out, "pair length violations: {}", count(&|c| c.pair_lengths));
    let _ = writeln!(out, "averaging lemma violations: {}", count(&|c| c.averaging != Some(false)));

    let dir = args.out_dir.clone().or(file.out_dir.clone());
    if let Some(dir) = dir {
        create_out_dir(&dir)?;
        let path = dir.join("check_bounds.csv");
        write_file(&path, |w| {
            writeln!(w, "k,sign,t,epsilon,bracket,lower_bounds,sturm,equal_lengths,pair_lengths,averaging")?;
            for (key, eps, c) in &rows {
                let avg = c.averaging.map_or_else(String::new, |b| b.to_string());
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{},{}",
                    key.k,
                    key.sign,
                    csv::fmt_f64(key.t),
                    csv::fmt_f64(*eps),
                    c.bracket,
                    c.lower_bounds,
                    c.sturm,
                    c.equal_lengths,
                    c.pair_lengths,
                    avg
                )?;
            }
            Ok(())
        })?;
        if !failures.is_empty() {
            flag_incomplete(&path, &failures)?;
        }
        let _ = writeln!(out, "wrote {}", path.display());
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Solver(failures.join("; ")))
    }
}

/// Runs a command line, writing normal output to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Curve(a) => cmd_curve(a, out),
        Command::Homog(a) => cmd_homog(a, out),
        Command::Nodal(a) => cmd_nodal(a, out),
        Command::CheckBounds(a) => cmd_check_bounds(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

/// Entry point used by the binary: parses `argv` and dispatches.
pub fn parse_and_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}
