use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use boxdtw::compactdp::CompactOptions;
use boxdtw::gen::InstanceGen;
use boxdtw::oracle::{coupling_from_path, matching_from_path};
use boxdtw::preprocess::{fingerprint, load_cache, preprocess_faithful, save_cache};
use boxdtw::{
    decompose, preprocess_direct, solve_preprocessed, solve_quadratic, ArithMode, Error, Float,
    GridCostModel, Metric, MetricKind, PointSequence, Rational, Result, Scalar,
};

use crate::input::parse_input;
use crate::report::{BenchReport, Output, Report, WorkUnits};
use crate::selftest::run_selftest;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Dtw,
    Ged,
    Bench,
    Selftest,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algorithm {
    Quadratic,
    #[default]
    Subquadratic,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Quadratic => "quadratic",
            Algorithm::Subquadratic => "subquadratic",
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quadratic" => Ok(Algorithm::Quadratic),
            "subquadratic" => Ok(Algorithm::Subquadratic),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Direct,
    Faithful,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "direct" => Ok(Mode::Direct),
            "faithful" => Ok(Mode::Faithful),
            other => Err(format!("unknown preprocessing mode `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Json,
    Tsv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "tsv" => Ok(OutputFormat::Tsv),
            other => Err(format!("unknown output format `{other}`")),
        }
    }
}

/// Everything one invocation needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub algorithm: Algorithm,
    pub mode: Mode,
    pub g: usize,
    /// Gap penalty as written; parsed in the chosen arithmetic mode.
    pub rho: Option<String>,
    /// `None` picks `abs1d` for one-dimensional input and `l1` otherwise.
    pub metric: Option<MetricKind>,
    pub arith: ArithMode,
    pub traceback: bool,
    pub output: OutputFormat,
    pub seed: u64,
    pub threads: usize,
    pub cache: Option<PathBuf>,
    /// Length of each generated sequence when `bench` has no input file.
    pub length: usize,
    /// Generated instances per `selftest` run.
    pub instances: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            algorithm: Algorithm::default(),
            mode: Mode::default(),
            g: 3,
            rho: None,
            metric: None,
            arith: ArithMode::Integer,
            traceback: false,
            output: OutputFormat::default(),
            seed: 1,
            threads: 1,
            cache: None,
            length: 256,
            instances: 40,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == Mode::Faithful && self.g != 2 {
            return Err(Error::Config(format!(
                "faithful mode requires g = 2, got g = {}",
                self.g
            )));
        }
        if self.command == Command::Ged && self.rho.is_none() {
            return Err(Error::Config("ged requires --rho".into()));
        }
        if matches!(self.command, Command::Dtw | Command::Ged) && self.input.is_none() {
            return Err(Error::Config("an input file is required".into()));
        }
        if self.cache.is_some()
            && self.algorithm == Algorithm::Quadratic
            && self.command != Command::Bench
        {
            return Err(Error::Config(
                "--cache only applies to the subquadratic algorithm".into(),
            ));
        }
        if self.threads == 0 {
            return Err(Error::Config("--threads must be at least 1".into()));
        }
        boxdtw::staircase::check_g(self.g)
    }
}

/// Process exit code for an error: 1 for bad input or configuration, 2 for
/// a broken internal invariant.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_input_error() {
        1
    } else {
        2
    }
}

pub fn run(config: &RunConfig) -> Result<Output> {
    config.validate()?;
    if config.command == Command::Selftest {
        return Ok(Output::Selftest(run_selftest(
            config.seed,
            config.instances,
        )));
    }
    match config.arith {
        ArithMode::Integer => run_typed::<i64>(config),
        ArithMode::Rational => run_typed::<Rational>(config),
        ArithMode::Float => run_typed::<Float>(config),
    }
}

fn run_typed<S: Scalar>(config: &RunConfig) -> Result<Output> {
    let (a, b) = match (&config.input, config.command) {
        (Some(path), _) => parse_input::<S>(path)?,
        (None, _) => {
            let dim = match config.metric {
                None | Some(MetricKind::Abs1D) => 1,
                Some(_) => 2,
            };
            let mut gen = InstanceGen::new(config.seed);
            let a = gen.sequence("A", config.length.max(1), dim, -1_000_000, 1_000_000);
            let b = gen.sequence("B", config.length.max(1), dim, -1_000_000, 1_000_000);
            (a, b)
        }
    };
    let model = build_model::<S>(config, a.dim())?;
    match config.command {
        Command::Bench => {
            let quadratic = solve(config, &a, &b, &model, Algorithm::Quadratic)?;
            let subquadratic = solve(config, &a, &b, &model, Algorithm::Subquadratic)?;
            if !quadratic_matches(&quadratic, &subquadratic) {
                return Err(Error::Invariant(format!(
                    "distances differ: quadratic {} vs subquadratic {}",
                    quadratic.distance_exact, subquadratic.distance_exact
                )));
            }
            Ok(Output::Bench(BenchReport {
                problem: model.name().to_string(),
                n: a.len(),
                m: b.len(),
                quadratic,
                subquadratic,
            }))
        }
        _ => Ok(Output::Single(solve(
            config,
            &a,
            &b,
            &model,
            config.algorithm,
        )?)),
    }
}

fn quadratic_matches(q: &Report, s: &Report) -> bool {
    q.distance_exact == s.distance_exact
        || (q.distance - s.distance).abs() <= 1e-9 * q.distance.abs().max(1.0)
}

fn build_model<S: Scalar>(config: &RunConfig, dim: usize) -> Result<GridCostModel<S>> {
    let kind = config.metric.unwrap_or(if dim == 1 {
        MetricKind::Abs1D
    } else {
        MetricKind::L1
    });
    let metric = Metric::new(kind, dim)?;
    let ged = match config.command {
        Command::Ged => true,
        Command::Bench => config.rho.is_some(),
        _ => false,
    };
    if !ged {
        return Ok(GridCostModel::dtw(metric));
    }
    let text = config.rho.as_deref().unwrap_or_default();
    let rho = S::parse_literal(text).map_err(|m| Error::Config(format!("--rho: {m}")))?;
    GridCostModel::ged(metric, rho)
}

fn alignment<S: Scalar>(model: &GridCostModel<S>, path: &[(usize, usize)]) -> Vec<(usize, usize)> {
    if model.is_ged() {
        matching_from_path(path).pairs
    } else {
        coupling_from_path(path).pairs
    }
}

fn solve<S: Scalar>(
    config: &RunConfig,
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    model: &GridCostModel<S>,
    algorithm: Algorithm,
) -> Result<Report> {
    let started = Instant::now();
    let (distance, path, work, g) = match algorithm {
        Algorithm::Quadratic => {
            let sol = solve_quadratic(a, b, model, config.traceback)?;
            let work = WorkUnits {
                cell_updates: sol.cell_updates,
                ..WorkUnits::default()
            };
            (sol.distance, sol.path, work, None)
        }
        Algorithm::Subquadratic => {
            let (d, path, work) = solve_boxed(config, a, b, model)?;
            (d, path, work, Some(config.g))
        }
    };
    Ok(Report {
        distance: distance.to_f64(),
        distance_exact: distance.to_string(),
        coupling_or_matching: path.map(|p| alignment(model, &p)),
        algorithm: algorithm.name().to_string(),
        g,
        work_units: work,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

type Boxed<S> = (S, Option<Vec<(usize, usize)>>, WorkUnits);

fn solve_boxed<S: Scalar>(
    config: &RunConfig,
    a: &PointSequence<S>,
    b: &PointSequence<S>,
    model: &GridCostModel<S>,
) -> Result<Boxed<S>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let grid = decompose(a, b, config.g)?;
    grid.check_metric(model.metric())?;
    let print = fingerprint(&grid, model);
    let cached = config
        .cache
        .as_ref()
        .and_then(|path| std::fs::read(path).ok())
        .and_then(|bytes| load_cache::<S>(&bytes, &print).ok());
    let pre = match cached {
        Some(pre) => pre,
        None => {
            let pre = match config.mode {
                Mode::Direct => preprocess_direct(&grid, model, config.threads > 1)?,
                Mode::Faithful => preprocess_faithful(&grid, model)?,
            };
            if let Some(path) = &config.cache {
                std::fs::write(path, save_cache(&pre, &print))
                    .map_err(|e| Error::Cache(format!("cannot write {}: {e}", path.display())))?;
            }
            pre
        }
    };
    let opts = CompactOptions {
        traceback: config.traceback,
        ..CompactOptions::default()
    };
    let (value, path, stats) = solve_preprocessed(&grid, model, &pre, opts)?;
    if stats.monge_violations > 0 {
        return Err(Error::Invariant(format!(
            "{} crossing minimal-pair paths detected",
            stats.monge_violations
        )));
    }
    let distance = value
        .into_finite()
        .ok_or_else(|| Error::Invariant("boxed algorithm returned an infinite distance".into()))?;
    let work = WorkUnits {
        cell_updates: stats.finishing_cell_updates,
        candidate_evaluations: stats.candidate_evaluations,
        dominance_pairs_reported: pre.stats.dominance_pairs_reported,
    };
    Ok((distance, path, work))
}
