//! The `laborshare` command line: argument parsing, the five commands, and
//! their reports. [`run`] never prints; it returns what should be printed
//! and the exit code, so a failing command leaves no partial output.

pub mod report;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand};
use laborshare_core::data::{
    align, cognition_index, load_cognition, load_country, load_labor_share, load_manifest,
    load_median_age, synthesize, write_series, CountryDataset, ManifestEntry,
};
use laborshare_core::dynamics::{simulate, RateSource, SimConfig};
use laborshare_core::fitter::{self, FitConfig, FitResult};
use laborshare_core::model::{attenuated_ratio, InnovationRates, ModelParams};
use laborshare_core::stats::{decline_record, fig10_analysis, DeclineMode, Window};
use laborshare_core::{Error, TimeSeries};
use rayon::prelude::*;

pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Overrides the bundled data directory.
pub const DATA_DIR_ENV: &str = "LABORSHARE_DATA_DIR";

/// Where default input files are looked up.
pub fn data_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        return PathBuf::from(dir);
    }
    let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    bundled.canonicalize().unwrap_or(bundled)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Data(String),
    Numeric(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Data(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

/// Numeric errors map to exit 3 whatever the stage; the rest to `kind`.
fn at(stage: &'static str, kind: fn(String) -> CliError) -> impl Fn(Error) -> CliError {
    move |err| {
        let message = format!("{stage}: {err}");
        if err.is_numeric() {
            CliError::Numeric(message)
        } else {
            kind(message)
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "laborshare",
    version,
    about = "Fit and explore the long-tail labor-share model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit one country's labor share against its median age.
    #[command(allow_negative_numbers = true)]
    Fit(FitArgs),
    /// Fit every country listed in a manifest.
    #[command(allow_negative_numbers = true)]
    BatchFit(BatchFitArgs),
    /// Integrate da/dt = sigma - a delta.
    #[command(allow_negative_numbers = true)]
    Simulate(SimulateArgs),
    /// Labor-share decline vs aggregate cognitive decline across countries.
    #[command(allow_negative_numbers = true)]
    Fig10(Fig10Args),
    /// Generate a labor-share series from known parameters.
    #[command(allow_negative_numbers = true)]
    Synth(SynthArgs),
    /// Re-run the invocation recorded in a report.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args)]
struct FitFlags {
    /// Epochs per run.
    #[arg(long, default_value_t = 100)]
    iterations: usize,
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 0.05)]
    lr: f64,
    #[arg(long, default_value_t = fitter::DEFAULT_SEED)]
    seed: u64,
    /// Step k in units of the median-age span.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    scale_attenuation: bool,
}

impl FitFlags {
    fn config(&self) -> Result<FitConfig, CliError> {
        let config = FitConfig {
            iterations: self.iterations,
            runs: self.runs,
            learning_rate: self.lr,
            seed: self.seed,
            scale_attenuation: self.scale_attenuation,
            ..FitConfig::default()
        };
        config
            .validate()
            .map_err(at("fit configuration", CliError::Usage))?;
        Ok(config)
    }

    fn args(&self) -> Vec<String> {
        vec![
            "--iterations".into(),
            self.iterations.to_string(),
            "--runs".into(),
            self.runs.to_string(),
            "--lr".into(),
            self.lr.to_string(),
            "--seed".into(),
            self.seed.to_string(),
            "--scale-attenuation".into(),
            self.scale_attenuation.to_string(),
        ]
    }
}

fn record_config(report: &mut Report, config: &FitConfig) {
    report.meta("seed", config.seed);
    report.meta("iterations", config.iterations);
    report.meta("runs", config.runs);
    report.meta("learning_rate", config.learning_rate);
    report.meta("init_low", config.init_low);
    report.meta("init_high", config.init_high);
    report.meta("projection_margin", config.projection_margin);
    report.meta("scale_attenuation", config.scale_attenuation);
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Labor-share CSV (default: bundled US series).
    #[arg(long)]
    labor: Option<PathBuf>,
    /// Median-age CSV (default: bundled US series).
    #[arg(long)]
    age: Option<PathBuf>,
    #[command(flatten)]
    fit: FitFlags,
    /// Write `year,observed,fitted` here.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BatchFitArgs {
    /// Manifest CSV `country,labor_csv,age_csv,source` (default: bundled KLEMS manifest).
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[command(flatten)]
    fit: FitFlags,
    /// Write one `year,observed,fitted` file per country here.
    #[arg(long)]
    plot_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Fixed supply innovation rate.
    #[arg(long, conflicts_with_all = ["params", "age"], required_unless_present = "params")]
    sigma: Option<f64>,
    /// Demand innovation rate; the reference delta along an age path.
    #[arg(long)]
    delta: f64,
    /// `n,r0,k[,mu0]`; sigma then follows the median age in --age.
    #[arg(long, requires = "age")]
    params: Option<String>,
    #[arg(long, requires = "params")]
    age: Option<PathBuf>,
    /// Long-tail exponent for the labor share with fixed rates.
    #[arg(long, conflicts_with = "params", default_value_t = 1.0)]
    n: f64,
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    #[arg(long, default_value_t = 50.0)]
    horizon: f64,
    #[arg(long, default_value_t = 0.0)]
    a0: f64,
    /// Write `time,a,labor_share` here.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Fig10Args {
    /// Manifest CSV (default: bundled decline-comparison manifest).
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Cognition CSV (default: bundled word-recall scores).
    #[arg(long)]
    cognition: Option<PathBuf>,
    /// Countries flagged as outliers; pass "" for none.
    #[arg(long, value_delimiter = ',', default_value = "Spain")]
    exclude: Vec<String>,
    #[arg(long, default_value = "points", value_parser = parse_mode)]
    decline_mode: DeclineMode,
    /// Regression window, START-END.
    #[arg(long, default_value = "1970-2012", value_parser = parse_window)]
    window: Window,
    /// Source tag left out of the "without" correlations.
    #[arg(long, default_value = "fed")]
    supplementary: String,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    n: f64,
    #[arg(long)]
    r0: f64,
    #[arg(long)]
    k: f64,
    /// Baseline median age (default: first value of the age path).
    #[arg(long)]
    mu0: Option<f64>,
    /// Median-age CSV (default: bundled US series).
    #[arg(long)]
    age: Option<PathBuf>,
    /// Standard deviation of added Gaussian noise.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = fitter::DEFAULT_SEED)]
    seed: u64,
    /// Write the labor-share CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReplayArgs {
    #[arg(long)]
    report: PathBuf,
}

fn parse_mode(s: &str) -> Result<DeclineMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn mode_name(mode: DeclineMode) -> &'static str {
    match mode {
        DeclineMode::Points => "points",
        DeclineMode::Relative => "relative",
    }
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (a, b) = s.split_once('-').ok_or("expected START-END")?;
    let start = a
        .trim()
        .parse()
        .map_err(|_| format!("bad start year `{a}`"))?;
    let end = b
        .trim()
        .parse()
        .map_err(|_| format!("bad end year `{b}`"))?;
    Window::new(start, end).map_err(|e| e.to_string())
}

fn path_arg(path: &Path) -> String {
    path.display().to_string()
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(done) => Outcome {
            code: done.code,
            stdout: done.report.render(),
            stderr: done
                .message
                .map(|m| format!("error: {m}\n"))
                .unwrap_or_default(),
        },
        Err(err) => Outcome {
            code: err.code(),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

/// A finished command. `batch-fit` can finish with a report and a
/// nonzero code when some countries failed.
struct Done {
    report: Report,
    code: i32,
    message: Option<String>,
}

impl From<Report> for Done {
    fn from(report: Report) -> Self {
        Done {
            report,
            code: EXIT_OK,
            message: None,
        }
    }
}

fn execute(command: &Command) -> Result<Done, CliError> {
    match command {
        Command::Fit(a) => cmd_fit(a).map(Done::from),
        Command::BatchFit(a) => cmd_batch_fit(a),
        Command::Simulate(a) => cmd_simulate(a).map(Done::from),
        Command::Fig10(a) => cmd_fig10(a).map(Done::from),
        Command::Synth(a) => cmd_synth(a).map(Done::from),
        Command::Replay(a) => cmd_replay(a),
    }
}

fn fitted_csv(dataset: &CountryDataset, result: &FitResult) -> String {
    let mut out = String::from("year,observed,fitted\n");
    for (&(year, observed), fitted) in dataset
        .labor_share
        .points()
        .iter()
        .zip(result.fitted_series.values())
    {
        out.push_str(&format!("{year},{observed},{fitted}\n"));
    }
    out
}

fn runs_csv(config: &FitConfig, result: &FitResult) -> String {
    let failed: BTreeSet<usize> = result
        .warnings
        .failed_runs
        .iter()
        .map(|(i, _)| *i)
        .collect();
    let indices = (0..config.runs).filter(|i| !failed.contains(i));
    let mut out = String::from("run,n,r0,k,final_mse\n");
    for ((index, p), losses) in indices
        .zip(&result.per_run_params)
        .zip(&result.loss_history)
    {
        let last = losses.last().copied().unwrap_or(f64::NAN);
        out.push_str(&format!("{index},{},{},{},{last}\n", p.n, p.r0, p.k));
    }
    out
}

fn dropped_warnings(report: &mut Report, dataset: &CountryDataset, prefix: &str) {
    let years = |ys: &[i32]| ys.iter().map(i32::to_string).collect::<Vec<_>>().join(" ");
    if !dataset.dropped_labor.is_empty() {
        report.warn(format!(
            "{prefix}labor-share years without median age dropped: {}",
            years(&dataset.dropped_labor)
        ));
    }
    if !dataset.dropped_age.is_empty() {
        report.warn(format!(
            "{prefix}median-age years without labor share dropped: {}",
            years(&dataset.dropped_age)
        ));
    }
}

fn param_results(report: &mut Report, p: &ModelParams, rmse: f64) {
    report.result("n", p.n);
    report.result("r0", p.r0);
    report.result("k", p.k);
    report.result("mu0", p.mu0);
    report.result("rmse", rmse);
}

fn cmd_fit(args: &FitArgs) -> Result<Report, CliError> {
    let config = args.fit.config()?;
    let labor_path = args
        .labor
        .clone()
        .unwrap_or_else(|| data_dir().join("us/labor_share_fed.csv"));
    let age_path = args
        .age
        .clone()
        .unwrap_or_else(|| data_dir().join("us/median_age.csv"));

    let labor = load_labor_share(&labor_path).map_err(at("load labor share", CliError::Data))?;
    let age = load_median_age(&age_path).map_err(at("load median age", CliError::Data))?;
    let dataset = align(&labor.series, &age.series).map_err(at("align", CliError::Data))?;
    let result = fitter::fit(&dataset, &config).map_err(at("fit", CliError::Data))?;

    let mut invocation = vec![
        "fit".to_string(),
        "--labor".into(),
        path_arg(&labor_path),
        "--age".into(),
        path_arg(&age_path),
    ];
    invocation.extend(args.fit.args());
    if let Some(plot) = &args.plot {
        invocation.extend(["--plot".into(), path_arg(plot)]);
    }
    let mut report = Report::new("fit", &invocation);
    report.meta("labor", path_arg(&labor_path));
    report.meta("age", path_arg(&age_path));
    record_config(&mut report, &config);

    param_results(&mut report, &result.averaged_params, result.rmse);
    report.result("points", dataset.len());
    report.result("successful_runs", result.per_run_params.len());
    report.result("projections", result.warnings.projections);

    for note in labor.notes.iter().chain(&age.notes) {
        report.warn(note.clone());
    }
    dropped_warnings(&mut report, &dataset, "");
    for (index, message) in &result.warnings.failed_runs {
        report.warn(format!("run {index} failed: {message}"));
    }

    let plot = fitted_csv(&dataset, &result);
    report.table("fitted", plot.clone());
    report.table("runs", runs_csv(&config, &result));
    if let Some(path) = &args.plot {
        std::fs::write(path, plot)
            .map_err(|e| CliError::Data(format!("write plot: {}: {e}", path.display())))?;
    }
    Ok(report)
}

fn slug(country: &str, source: &str) -> String {
    format!("{country}_{source}")
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect()
}

fn fit_entry(
    entry: &ManifestEntry,
    config: &FitConfig,
) -> Result<(CountryDataset, Vec<String>, FitResult), CliError> {
    let (dataset, notes) = load_country(entry).map_err(at("load", CliError::Data))?;
    let result = fitter::fit(&dataset, config).map_err(at("fit", CliError::Data))?;
    Ok((dataset, notes, result))
}

fn cmd_batch_fit(args: &BatchFitArgs) -> Result<Done, CliError> {
    let config = args.fit.config()?;
    let manifest = args
        .manifest
        .clone()
        .unwrap_or_else(|| data_dir().join("klems_manifest.csv"));
    let entries = load_manifest(&manifest).map_err(at("load manifest", CliError::Data))?;
    if entries.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: manifest lists no countries",
            manifest.display()
        )));
    }

    // Collecting a parallel iterator keeps manifest order.
    let outcomes: Vec<_> = entries
        .par_iter()
        .map(|entry| fit_entry(entry, &config))
        .collect();

    let mut invocation = vec![
        "batch-fit".to_string(),
        "--manifest".into(),
        path_arg(&manifest),
    ];
    invocation.extend(args.fit.args());
    if let Some(dir) = &args.plot_dir {
        invocation.extend(["--plot-dir".into(), path_arg(dir)]);
    }
    let mut report = Report::new("batch-fit", &invocation);
    report.meta("manifest", path_arg(&manifest));
    record_config(&mut report, &config);

    let mut summary = String::from("country,source,points,n,sigma_over_delta,k,mu0,rmse,status\n");
    let mut plots = Vec::new();
    let mut failures = Vec::new();
    let mut max_rmse: f64 = 0.0;
    for (entry, outcome) in entries.iter().zip(outcomes) {
        let name = &entry.country;
        match outcome {
            Ok((dataset, notes, result)) => {
                let p = &result.averaged_params;
                summary.push_str(&format!(
                    "{name},{},{},{},{},{},{},{},ok\n",
                    entry.source,
                    dataset.len(),
                    p.n,
                    p.r0,
                    p.k,
                    p.mu0,
                    result.rmse
                ));
                max_rmse = max_rmse.max(result.rmse);
                for note in notes {
                    report.warn(format!("{name}: {note}"));
                }
                dropped_warnings(&mut report, &dataset, &format!("{name}: "));
                for (index, message) in &result.warnings.failed_runs {
                    report.warn(format!("{name}: run {index} failed: {message}"));
                }
                let csv = fitted_csv(&dataset, &result);
                plots.push((
                    format!("fitted {name} ({})", entry.source),
                    slug(name, &entry.source),
                    csv,
                ));
            }
            Err(err) => {
                summary.push_str(&format!("{name},{},,,,,,,failed\n", entry.source));
                report.warn(format!("{name}: {err}"));
                failures.push(err);
            }
        }
    }
    report.result("countries", entries.len());
    report.result("succeeded", entries.len() - failures.len());
    report.result("failed", failures.len());
    if failures.len() < entries.len() {
        report.result("max_rmse", max_rmse);
    }
    report.table("summary", summary);
    for (table, _, csv) in &plots {
        report.table(table, csv.clone());
    }

    if let Some(dir) = &args.plot_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Data(format!("create {}: {e}", dir.display())))?;
        for (_, file, csv) in &plots {
            let path = dir.join(format!("{file}.csv"));
            std::fs::write(&path, csv)
                .map_err(|e| CliError::Data(format!("write plot: {}: {e}", path.display())))?;
        }
    }

    if failures.is_empty() {
        return Ok(report.into());
    }
    let code = if failures.iter().all(|f| matches!(f, CliError::Numeric(_))) {
        EXIT_NUMERIC
    } else {
        EXIT_DATA
    };
    Ok(Done {
        report,
        code,
        message: Some(format!(
            "{} of {} countries failed",
            failures.len(),
            entries.len()
        )),
    })
}

fn parse_params(text: &str, ages: &TimeSeries) -> Result<ModelParams, CliError> {
    let fields: Vec<f64> = text
        .split(',')
        .map(|f| f.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--params expects n,r0,k[,mu0], got `{text}`")))?;
    let mu0 = match fields.as_slice() {
        [_, _, _] => ages.values().next().expect("loaded series are non-empty"),
        [_, _, _, mu0] => *mu0,
        _ => {
            return Err(CliError::Usage(format!(
                "--params expects n,r0,k[,mu0], got `{text}`"
            )))
        }
    };
    ModelParams::new(fields[0], fields[1], fields[2], mu0).map_err(at("--params", CliError::Usage))
}

fn cmd_simulate(args: &SimulateArgs) -> Result<Report, CliError> {
    let mut invocation = vec!["simulate".to_string()];
    let mut meta = Vec::new();
    let (rates, equilibrium) = match (&args.params, &args.age, args.sigma) {
        (Some(text), Some(age_path), _) => {
            let ages = load_median_age(age_path)
                .map_err(at("load median age", CliError::Data))?
                .series;
            let params = parse_params(text, &ages)?;
            let last_mu = ages.values().last().expect("loaded series are non-empty");
            let equilibrium =
                attenuated_ratio(&params, last_mu).map_err(at("equilibrium", CliError::Usage))?;
            let p = format!("{},{},{},{}", params.n, params.r0, params.k, params.mu0);
            invocation.extend([
                "--params".into(),
                p.clone(),
                "--age".into(),
                path_arg(age_path),
            ]);
            meta.push(("mode", "age-path".to_string()));
            meta.push(("params", p));
            meta.push(("age", path_arg(age_path)));
            let source = RateSource::AgePath {
                params,
                ages,
                reference_delta: args.delta,
            };
            (source, equilibrium)
        }
        (None, None, Some(sigma)) => {
            let rates =
                InnovationRates::new(sigma, args.delta).map_err(at("rates", CliError::Usage))?;
            invocation.extend([
                "--sigma".into(),
                sigma.to_string(),
                "--n".into(),
                args.n.to_string(),
            ]);
            meta.push(("mode", "fixed".to_string()));
            meta.push(("sigma", sigma.to_string()));
            meta.push(("n", args.n.to_string()));
            (
                RateSource::Fixed {
                    rates,
                    exponent: args.n,
                },
                rates.ratio(),
            )
        }
        _ => {
            return Err(CliError::Usage(
                "give either --sigma or --params with --age".into(),
            ))
        }
    };
    let config = SimConfig {
        a_init: args.a0,
        dt: args.dt,
        horizon: args.horizon,
        rates,
    };
    let trajectory = simulate(&config).map_err(at("simulate", CliError::Usage))?;

    invocation.extend([
        "--delta".into(),
        args.delta.to_string(),
        "--dt".into(),
        args.dt.to_string(),
        "--horizon".into(),
        args.horizon.to_string(),
        "--a0".into(),
        args.a0.to_string(),
    ]);
    if let Some(plot) = &args.plot {
        invocation.extend(["--plot".into(), path_arg(plot)]);
    }
    let mut report = Report::new("simulate", &invocation);
    for (k, v) in meta {
        report.meta(k, v);
    }
    report.meta("delta", args.delta);
    report.meta("dt", args.dt);
    report.meta("horizon", args.horizon);
    report.meta("a0", args.a0);
    report.result("steps", trajectory.times.len() - 1);
    report.result("final_time", trajectory.times.last().expect("non-empty"));
    report.result("final_a", trajectory.final_a());
    report.result("final_labor_share", trajectory.final_labor_share());
    report.result("equilibrium_a", equilibrium);
    report.result("clamp_events", trajectory.clamp_events);
    if trajectory.clamp_events > 0 {
        report.warn(format!(
            "{} steps left [0, 1] and were clamped; dt is too large for these rates",
            trajectory.clamp_events
        ));
    }
    let csv = trajectory.to_csv();
    report.table("trajectory", csv.clone());
    if let Some(path) = &args.plot {
        std::fs::write(path, csv)
            .map_err(|e| CliError::Data(format!("write plot: {}: {e}", path.display())))?;
    }
    Ok(report)
}

fn cmd_fig10(args: &Fig10Args) -> Result<Report, CliError> {
    let manifest = args
        .manifest
        .clone()
        .unwrap_or_else(|| data_dir().join("fig10_manifest.csv"));
    let cognition_path = args
        .cognition
        .clone()
        .unwrap_or_else(|| data_dir().join("cognition.csv"));
    let exclude: Vec<String> = args
        .exclude
        .iter()
        .map(|c| c.trim().to_string())
        .filter(|c| !c.is_empty())
        .collect();

    let entries = load_manifest(&manifest).map_err(at("load manifest", CliError::Data))?;
    let cognition =
        load_cognition(&cognition_path).map_err(at("load cognition", CliError::Data))?;
    let index = cognition_index(&cognition.records);

    let mut warnings: Vec<String> = cognition.notes.clone();
    let mut records = Vec::new();
    for entry in &entries {
        let Some(cog) = index.get(entry.country.as_str()) else {
            warnings.push(format!(
                "{} ({}) skipped: no cognition record",
                entry.country, entry.source
            ));
            continue;
        };
        let labor =
            load_labor_share(&entry.labor_csv).map_err(at("load labor share", CliError::Data))?;
        let age = load_median_age(&entry.age_csv).map_err(at("load median age", CliError::Data))?;
        warnings.extend(
            labor
                .notes
                .iter()
                .map(|n| format!("{}: {n}", entry.country)),
        );
        let record = decline_record(
            &entry.country,
            &entry.source,
            &labor.series,
            &age.series,
            cog,
            args.window,
            args.decline_mode,
        )
        .map_err(at("decline", CliError::Data))?;
        records.push(record);
    }
    let summary = fig10_analysis(&records, &exclude, &args.supplementary)
        .map_err(at("fig10", CliError::Data))?;

    let invocation = vec![
        "fig10".to_string(),
        "--manifest".into(),
        path_arg(&manifest),
        "--cognition".into(),
        path_arg(&cognition_path),
        "--exclude".into(),
        exclude.join(","),
        "--decline-mode".into(),
        mode_name(args.decline_mode).into(),
        "--window".into(),
        format!("{}-{}", args.window.start, args.window.end),
        "--supplementary".into(),
        args.supplementary.clone(),
    ];
    let mut report = Report::new("fig10", &invocation);
    report.meta("manifest", path_arg(&manifest));
    report.meta("cognition", path_arg(&cognition_path));
    report.meta("exclude", exclude.join(","));
    report.meta("decline_mode", mode_name(args.decline_mode));
    report.meta(
        "window",
        format!("{}-{}", args.window.start, args.window.end),
    );
    report.meta("supplementary", &args.supplementary);

    let tag = &args.supplementary;
    let used = summary.records.iter().filter(|r| !r.outlier).count();
    report.result("records", summary.records.len());
    report.result("used", used);
    report.result("slope", summary.slope);
    for (name, pair) in [
        ("aggregate", summary.aggregate),
        ("median_age", summary.median_age),
        ("cognition", summary.cognition),
    ] {
        report.result(&format!("r_{name}_with_{tag}"), pair.with_supplementary);
        report.result(
            &format!("r_{name}_without_{tag}"),
            pair.without_supplementary,
        );
    }
    for w in warnings {
        report.warn(w);
    }

    let mut csv = String::from(
        "country,source,labor_share_decline,median_age_increase,cognitive_band_decline_pct,cognitive_decline_pct,window_start,window_end,outlier\n",
    );
    for r in &summary.records {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.country,
            r.source,
            r.labor_share_decline_pp,
            r.median_age_increase,
            r.cognitive_band_decline_pct,
            r.cognitive_decline_pct,
            r.window.start,
            r.window.end,
            r.outlier
        ));
    }
    report.table("records", csv);
    Ok(report)
}

fn cmd_synth(args: &SynthArgs) -> Result<Report, CliError> {
    let age_path = args
        .age
        .clone()
        .unwrap_or_else(|| data_dir().join("us/median_age.csv"));
    let ages = load_median_age(&age_path).map_err(at("load median age", CliError::Data))?;
    let mu0 = args.mu0.unwrap_or_else(|| {
        ages.series
            .values()
            .next()
            .expect("loaded series are non-empty")
    });
    let params = ModelParams::new(args.n, args.r0, args.k, mu0)
        .map_err(at("parameters", CliError::Usage))?;
    let dataset =
        synthesize(&params, &ages.series, args.noise, args.seed).map_err(|err| match err {
            Error::Domain(_) => at("synthesize", CliError::Usage)(err),
            _ => at("synthesize", CliError::Data)(err),
        })?;

    let mut invocation = vec![
        "synth".to_string(),
        "--n".into(),
        args.n.to_string(),
        "--r0".into(),
        args.r0.to_string(),
        "--k".into(),
        args.k.to_string(),
        "--mu0".into(),
        mu0.to_string(),
        "--age".into(),
        path_arg(&age_path),
        "--noise".into(),
        args.noise.to_string(),
        "--seed".into(),
        args.seed.to_string(),
    ];
    if let Some(out) = &args.out {
        invocation.extend(["--out".into(), path_arg(out)]);
    }
    let mut report = Report::new("synth", &invocation);
    report.meta("age", path_arg(&age_path));
    report.meta("seed", args.seed);
    report.meta("noise", args.noise);
    report.result("n", params.n);
    report.result("r0", params.r0);
    report.result("k", params.k);
    report.result("mu0", params.mu0);
    report.result("points", dataset.len());
    report.table("labor_share", dataset.labor_share.to_csv());
    if let Some(out) = &args.out {
        write_series(&dataset.labor_share, out).map_err(at("write", CliError::Data))?;
    }
    Ok(report)
}

fn cmd_replay(args: &ReplayArgs) -> Result<Done, CliError> {
    let text = std::fs::read_to_string(&args.report)
        .map_err(|e| CliError::Data(format!("read report: {}: {e}", args.report.display())))?;
    let report = Report::parse(&text)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.report.display())))?;
    let invocation = report
        .invocation()
        .map_err(|e| CliError::Data(format!("{}: {e}", args.report.display())))?;
    if invocation.first().map(String::as_str) == Some("replay") {
        return Err(CliError::Usage("a replay report cannot be replayed".into()));
    }
    let argv = std::iter::once("laborshare".to_string()).chain(invocation);
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        CliError::Data(format!(
            "{}: recorded invocation: {e}",
            args.report.display()
        ))
    })?;
    execute(&cli.command)
}
