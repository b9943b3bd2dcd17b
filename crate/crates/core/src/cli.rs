//! Command-line front end.
//!
//! Every subcommand builds a [`Table`] and writes it as CSV or JSON to
//! standard output or `--out`. Diagnostics go to standard error. Exit codes:
//! 0 success, 2 usage or validation error, 3 verification failure, 1 I/O.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::asymptotics::{convergence_report, limit_constant};
use crate::equilibrium::{
    build_policy, closed_form_success, expected_stopping_time, solve_values, GameConfig,
};
use crate::error::SecretaryError;
use crate::oracle::{
    exact_expected_tau, exact_success_probability, full_learning_audit, optimality_scan,
    rank_recursion_value, PolicySpec, MAX_ENUMERATION_N, MAX_SCAN_N,
};
use crate::simulator::{estimate_with_threads, estimate, incentive_audit, StrategyProfile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

/// Agreement tolerance for the oracle checks.
const AGREEMENT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "costly-secretary",
    version,
    about = "Secretary problem with costly interviews: equilibrium, simulation, exact checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance: threshold, success probability, expected search length
    Solve(SolveArgs),
    /// Monte Carlo estimate under a strategy profile
    Simulate(SimulateArgs),
    /// Exact checks against full enumeration (N <= 10)
    Oracle(OracleArgs),
    /// Success probability over a grid of N and c
    Sweep(SweepArgs),
    /// Scaled success probability against its large-N limit
    Asymptotics(AsymptoticsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileKind {
    Equilibrium,
    NoLearning,
    SkipFirst,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub cost: f64,
    /// Emit the per-stage value tables instead of the summary
    #[arg(long)]
    pub tables: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub cost: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "equilibrium")]
    pub profile: ProfileKind,
    /// Worker threads; does not change the output
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub cost: f64,
    /// Also run the optimality scan with this acceptance grid step
    #[arg(long)]
    pub grid_step: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Inclusive range of N, e.g. `2..1000`
    #[arg(long, value_parser = parse_range)]
    pub n_range: (usize, usize),
    /// Comma-separated ascending costs, e.g. `0,0.1`
    #[arg(long, value_parser = parse_cost_list)]
    pub cost_list: CostList,
    /// Log-spaced N with this many points per decade instead of every N
    #[arg(long)]
    pub log_spaced: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long)]
    pub cost: f64,
    #[arg(long, value_parser = parse_range, default_value = "10..1000000")]
    pub n_range: (usize, usize),
    /// Points per decade across the range
    #[arg(long, default_value_t = 1)]
    pub log_spaced: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostList(pub Vec<f64>);

/// Parses `a..b`, `a..=b`, `a:b` (all inclusive) or a single `a`.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let s = s.trim();
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (a, b)
    } else if let Some((a, b)) = s.split_once("..") {
        (a, b)
    } else if let Some((a, b)) = s.split_once(':') {
        (a, b)
    } else {
        (s, s)
    };
    let lo: usize = lo.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if lo > hi {
        return Err(format!("range {lo}..{hi} is empty"));
    }
    Ok((lo, hi))
}

pub fn parse_cost_list(s: &str) -> Result<CostList, String> {
    let costs = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad cost {t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if costs.is_empty() {
        return Err("empty cost list".into());
    }
    if costs.windows(2).any(|w| w[0] >= w[1]) {
        return Err("cost list must be strictly ascending".into());
    }
    Ok(CostList(costs))
}

/// Integer sizes spread log-uniformly over `[lo, hi]`, both ends included.
pub fn log_spaced(lo: usize, hi: usize, per_decade: u32) -> Vec<usize> {
    let per_decade = per_decade.max(1) as f64;
    let (a, b) = ((lo as f64).log10(), (hi as f64).log10());
    let steps = ((b - a) * per_decade).round() as usize;
    let mut out: Vec<usize> = (0..=steps)
        .map(|k| 10f64.powf(a + k as f64 / per_decade).round() as usize)
        .map(|n| n.clamp(lo, hi))
        .collect();
    out.push(hi);
    out.sort_unstable();
    out.dedup();
    out
}

/// Formats a float with 17 significant digits in plain decimal notation,
/// which round-trips every `f64`.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp >= 0 {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{digits}{}", "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{body}")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Float(x) => json!(x),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Column-named rows plus metadata for the JSON header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Map<String, Value>,
}

impl Table {
    fn new(command: &str, columns: Vec<&'static str>) -> Self {
        let mut metadata = Map::new();
        metadata.insert("tool".into(), json!(env!("CARGO_PKG_NAME")));
        metadata.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        metadata.insert("command".into(), json!(command));
        Self {
            columns,
            rows: Vec::new(),
            metadata,
        }
    }

    fn meta(&mut self, key: &str, value: Value) {
        self.metadata.insert(key.into(), value);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| ((*k).to_string(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "metadata": self.metadata, "rows": rows })
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())?;
                out.write_all(b"\n")
            }
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<SecretaryError> for CliError {
    fn from(e: SecretaryError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Result of a subcommand: the table and whether every check passed.
pub struct Emitted {
    pub table: Table,
    pub verified: bool,
}

fn config(n: usize, cost: f64) -> Result<GameConfig<f64>, CliError> {
    Ok(GameConfig::new(n, cost)?)
}

fn solve(args: &SolveArgs) -> Result<Emitted, CliError> {
    let cfg = config(args.n, args.cost)?;
    let tables = solve_values(&cfg);
    let policy = build_policy(&cfg, &tables)?;
    let mut table = if args.tables {
        let mut t = Table::new("solve", vec!["n", "v0", "v1", "big_v0", "big_v1", "accept_record"]);
        for n in 1..=args.n {
            t.rows.push(vec![
                n.into(),
                (*tables.v0(n)).into(),
                (*tables.v1(n)).into(),
                tables.big_v0(n).into(),
                tables.big_v1(n).into(),
                policy.accept_record[n - 1].into(),
            ]);
        }
        t
    } else {
        let mut t = Table::new(
            "solve",
            vec![
                "n",
                "cost",
                "n_star",
                "pi",
                "pi_closed_form",
                "expected_tau",
                "accept_before_threshold",
                "accept_from_threshold",
            ],
        );
        t.rows.push(vec![
            args.n.into(),
            args.cost.into(),
            tables.threshold.into(),
            tables.success_probability.into(),
            closed_form_success(&cfg).into(),
            expected_stopping_time(&cfg).into(),
            args.cost.into(),
            1.0.into(),
        ]);
        t
    };
    table.meta("n", json!(args.n));
    table.meta("cost", json!(args.cost));
    Ok(Emitted {
        table,
        verified: true,
    })
}

fn profile_for(kind: ProfileKind, cfg: &GameConfig<f64>) -> Result<(StrategyProfile, PolicySpec<f64>), CliError> {
    let n = cfg.n_applicants();
    let spec = match kind {
        ProfileKind::Equilibrium => PolicySpec::equilibrium(cfg),
        ProfileKind::NoLearning => PolicySpec::no_learning(cfg, vec![1.0 / n as f64; n])?,
        ProfileKind::SkipFirst => PolicySpec::skip_first(cfg),
    };
    Ok((spec.to_profile(*cfg.cost()), spec))
}

fn simulate(args: &SimulateArgs) -> Result<Emitted, CliError> {
    let cfg = config(args.n, args.cost)?;
    if args.trials == 0 {
        return Err(SecretaryError::NoTrials.into());
    }
    let (profile, spec) = profile_for(args.profile, &cfg)?;
    let stats = match args.threads {
        Some(t) => estimate_with_threads(&cfg, &profile, args.trials, args.seed, t)?,
        None => estimate(&cfg, &profile, args.trials, args.seed)?,
    };
    let (exact_success, exact_tau) = rank_recursion_value(&cfg, &spec);
    let profile_name = match args.profile {
        ProfileKind::Equilibrium => "equilibrium",
        ProfileKind::NoLearning => "no-learning",
        ProfileKind::SkipFirst => "skip-first",
    };
    let mut table = Table::new(
        "simulate",
        vec![
            "n",
            "cost",
            "profile",
            "trials",
            "seed",
            "success_rate",
            "success_se",
            "acceptance_rate",
            "mean_tau_unconditional",
            "tau_se",
            "mean_tau_conditional",
            "exact_success",
            "exact_tau",
        ],
    );
    table.rows.push(vec![
        args.n.into(),
        args.cost.into(),
        profile_name.into(),
        stats.trials.into(),
        stats.seed.into(),
        stats.success_rate.into(),
        stats.success_se.into(),
        stats.acceptance_rate.into(),
        stats.mean_tau_unconditional.into(),
        stats.tau_se.into(),
        stats.mean_tau_conditional.into(),
        exact_success.into(),
        exact_tau.into(),
    ]);
    table.meta("seed", json!(args.seed));
    table.meta("trials", json!(args.trials));
    Ok(Emitted {
        table,
        verified: true,
    })
}

fn oracle(args: &OracleArgs) -> Result<Emitted, CliError> {
    let cfg = config(args.n, args.cost)?;
    if args.n > MAX_ENUMERATION_N {
        return Err(SecretaryError::EnumerationTooLarge {
            n: args.n,
            limit: MAX_ENUMERATION_N,
        }
        .into());
    }
    if let Some(step) = args.grid_step {
        if args.n > MAX_SCAN_N {
            return Err(SecretaryError::EnumerationTooLarge {
                n: args.n,
                limit: MAX_SCAN_N,
            }
            .into());
        }
        if !(step > 0.0 && step <= 0.25) {
            return Err(SecretaryError::GridStep(step).into());
        }
    }
    let n = args.n as f64;
    let eq = PolicySpec::equilibrium(&cfg);
    let dp = solve_values(&cfg).success_probability;
    let closed = closed_form_success(&cfg);
    let enumerated = exact_success_probability(&cfg, &eq)?;
    let enumerated_tau = exact_expected_tau(&cfg, &eq)?;
    let closed_tau = expected_stopping_time(&cfg);
    let no_learning = PolicySpec::no_learning(&cfg, vec![1.0 / n; args.n])?;
    let blind = exact_success_probability(&cfg, &no_learning)?;
    let learning = full_learning_audit(&cfg)?;
    let incentives = incentive_audit(&cfg, &eq.to_profile(args.cost))?;

    let mut checks: Vec<(&str, f64, f64, f64)> = vec![
        ("dp_vs_closed_form", dp, closed, AGREEMENT_TOLERANCE),
        ("dp_vs_enumeration", dp, enumerated, AGREEMENT_TOLERANCE),
        ("enumerated_tau_vs_n_pi", enumerated_tau, n * enumerated, AGREEMENT_TOLERANCE),
        ("closed_form_tau_vs_n_pi", closed_tau, n * dp, AGREEMENT_TOLERANCE),
        ("no_learning_success", blind, 1.0 / n, AGREEMENT_TOLERANCE),
        ("full_learning_audit", f64::from(u8::from(learning.holds)), 1.0, 0.0),
        ("incentive_violations", incentives.violations.len() as f64, 0.0, 0.0),
    ];
    let mut scan_meta = Value::Null;
    if let Some(step) = args.grid_step {
        let scan = optimality_scan(&cfg, step)?;
        checks.push(("scan_max_vs_equilibrium", scan.max_success, dp, AGREEMENT_TOLERANCE));
        checks.push((
            "scan_equilibrium_attains_max",
            scan.equilibrium_enumerated,
            scan.max_success,
            AGREEMENT_TOLERANCE,
        ));
        scan_meta = json!({
            "grid_step": step,
            "policies_scanned": scan.policies_scanned.to_string(),
            "maximizer_count": scan.maximizer_count,
            "argmax": scan.argmax,
            "note": scan.note,
        });
    }

    let mut table = Table::new("oracle", vec!["check", "value", "reference", "abs_error", "tolerance", "pass"]);
    let mut verified = true;
    for (name, value, reference, tol) in checks {
        let err = (value - reference).abs();
        let mut pass = err <= tol;
        // the scan only fails if something beats the equilibrium
        if name == "scan_max_vs_equilibrium" {
            pass = value <= reference + tol;
        }
        verified &= pass;
        table.rows.push(vec![
            name.into(),
            value.into(),
            reference.into(),
            err.into(),
            tol.into(),
            pass.into(),
        ]);
    }
    table.meta("n", json!(args.n));
    table.meta("cost", json!(args.cost));
    if let Some(ce) = learning.counterexample {
        table.meta("full_learning_counterexample", json!(ce));
    }
    if !incentives.violations.is_empty() {
        table.meta("incentive_violations", json!(incentives.violations));
    }
    table.meta("scan", scan_meta);
    Ok(Emitted { table, verified })
}

fn sizes(range: (usize, usize), log: Option<u32>) -> Result<Vec<usize>, CliError> {
    if range.0 < 2 {
        return Err(SecretaryError::TooFewApplicants(range.0).into());
    }
    Ok(match log {
        Some(per_decade) => log_spaced(range.0, range.1, per_decade),
        None => (range.0..=range.1).collect(),
    })
}

fn sweep(args: &SweepArgs) -> Result<Emitted, CliError> {
    let ns = sizes(args.n_range, args.log_spaced)?;
    let costs = &args.cost_list.0;
    for &c in costs {
        GameConfig::new(2, c)?;
    }
    let grid: Vec<(f64, usize)> = costs.iter().flat_map(|&c| ns.iter().map(move |&n| (c, n))).collect();
    let rows: Vec<Vec<Cell>> = grid
        .par_iter()
        .map(|&(c, n)| {
            let cfg = GameConfig::new(n, c).expect("validated");
            let tables = solve_values(&cfg);
            let pi = tables.success_probability;
            let scale = (n as f64).powf(c);
            let limit = limit_constant(c).expect("validated cost");
            vec![
                n.into(),
                c.into(),
                tables.threshold.into(),
                pi.into(),
                (scale * pi).into(),
                (limit / scale).into(),
                expected_stopping_time(&cfg).into(),
            ]
        })
        .collect();
    let mut table = Table::new(
        "sweep",
        vec!["n", "cost", "n_star", "pi", "scaled_pi", "asymptote", "expected_tau"],
    );
    table.rows = rows;
    table.meta("n_range", json!([args.n_range.0, args.n_range.1]));
    table.meta("costs", json!(costs));
    table.meta("log_spaced", json!(args.log_spaced));
    Ok(Emitted {
        table,
        verified: true,
    })
}

fn asymptotics(args: &AsymptoticsArgs) -> Result<Emitted, CliError> {
    let ns = sizes(args.n_range, Some(args.log_spaced))?;
    let report = convergence_report(args.cost, &ns)?;
    let mut table = Table::new(
        "asymptotics",
        vec![
            "n",
            "n_star",
            "lower_bound",
            "upper_bound",
            "within_bounds",
            "pi",
            "scaled_pi",
            "limit_constant",
            "relative_deviation",
        ],
    );
    for (s, t) in report.samples.iter().zip(&report.threshold_samples) {
        table.rows.push(vec![
            s.n.into(),
            t.n_star.into(),
            t.lower_bound.into(),
            t.upper_bound.into(),
            t.within_bounds().into(),
            s.success_probability.into(),
            s.scaled_value.into(),
            report.limit_constant.into(),
            s.relative_deviation.into(),
        ]);
    }
    table.meta("cost", json!(report.cost));
    table.meta("limit_constant", json!(report.limit_constant));
    table.meta("tolerance", json!(report.tolerance));
    table.meta("loglog_slope", json!(report.loglog_slope));
    table.meta("converged", json!(report.converged()));
    table.meta("note", json!(report.note));
    eprintln!(
        "limit {:.12}, final deviation {:?}, slope {:?} ({})",
        report.limit_constant,
        report.final_deviation(),
        report.loglog_slope,
        report.note
    );
    Ok(Emitted {
        table,
        verified: report.bounds_hold(),
    })
}

fn output_args(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Solve(a) => &a.output,
        Command::Simulate(a) => &a.output,
        Command::Oracle(a) => &a.output,
        Command::Sweep(a) => &a.output,
        Command::Asymptotics(a) => &a.output,
    }
}

/// Runs a parsed command and writes its table.
pub fn run(cli: &Cli) -> Result<bool, CliError> {
    let emitted = match &cli.command {
        Command::Solve(a) => solve(a)?,
        Command::Simulate(a) => simulate(a)?,
        Command::Oracle(a) => oracle(a)?,
        Command::Sweep(a) => sweep(a)?,
        Command::Asymptotics(a) => asymptotics(a)?,
    };
    let out = output_args(&cli.command);
    match &out.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            emitted.table.write(out.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emitted.table.write(out.format, &mut lock)?;
        }
    }
    Ok(emitted.verified)
}

/// Parses `args`, runs, and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    exit_code(run(&cli))
}

/// Maps the outcome of [`run`] to a process exit code, reporting failures
/// on standard error.
pub fn exit_code(outcome: Result<bool, CliError>) -> i32 {
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            eprintln!("error: verification failed");
            EXIT_VERIFICATION
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("2..1000"), Ok((2, 1000)));
        assert_eq!(parse_range("2..=10"), Ok((2, 10)));
        assert_eq!(parse_range("3:9"), Ok((3, 9)));
        assert_eq!(parse_range("7"), Ok((7, 7)));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn cost_list_parsing() {
        assert_eq!(parse_cost_list("0,0.1").unwrap(), CostList(vec![0.0, 0.1]));
        assert!(parse_cost_list("0.1,0").is_err());
        assert!(parse_cost_list("0.1,0.1").is_err());
        assert!(parse_cost_list("x").is_err());
    }

    #[test]
    fn log_spacing() {
        assert_eq!(log_spaced(10, 1_000_000, 1), vec![10, 100, 1000, 10_000, 100_000, 1_000_000]);
        let pts = log_spaced(2, 1000, 10);
        assert_eq!(pts[0], 2);
        assert_eq!(*pts.last().unwrap(), 1000);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(0.5), "0.50000000000000000");
        assert_eq!(format_float(1.25), "1.2500000000000000");
        assert_eq!(format_float(-0.001), "-0.0010000000000000000");
        assert_eq!(format_float(123456.0), "123456.00000000000");
        assert_eq!(format_float(1e20), "100000000000000000000");
        assert_eq!(format_float(f64::NAN), "NaN");
        let x = 5.0 / 12.0;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn outcome_codes() {
        assert_eq!(exit_code(Ok(true)), EXIT_OK);
        assert_eq!(exit_code(Ok(false)), EXIT_VERIFICATION);
        assert_eq!(exit_code(Err(CliError::Usage("x".into()))), EXIT_USAGE);
        let io = io::Error::new(io::ErrorKind::NotFound, "x");
        assert_eq!(exit_code(Err(CliError::Io(io))), EXIT_IO);
    }

    #[test]
    fn usage_codes() {
        assert_eq!(main_with_args(["costly-secretary", "solve", "--n", "1", "--cost", "0"]), EXIT_USAGE);
        assert_eq!(main_with_args(["costly-secretary", "solve", "--cost", "0"]), EXIT_USAGE);
        assert_eq!(main_with_args(["costly-secretary", "frobnicate"]), EXIT_USAGE);
        assert_eq!(
            main_with_args(["costly-secretary", "oracle", "--n", "11", "--cost", "0.1"]),
            EXIT_USAGE
        );
    }
}
