use std::path::PathBuf;
use std::process::ExitCode;

use boxdtw::{ArithMode, MetricKind};
use boxdtw_cli::{exit_code, run, Algorithm, Command, Mode, OutputFormat, RunConfig};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "boxdtw",
    version,
    about = "Exact DTW and geometric edit distance, quadratic or boxed subquadratic"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dynamic time warping distance of the two sequences in FILE.
    Dtw {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Geometric edit distance of the two sequences in FILE (needs --rho).
    Ged {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Runs both algorithms on FILE or on a generated instance; GED when --rho is given.
    Bench {
        file: Option<PathBuf>,
        /// Length of each generated sequence.
        #[arg(long, default_value_t = 256)]
        length: usize,
        #[command(flatten)]
        opts: Opts,
    },
    /// Checks the boxed algorithm against the quadratic oracle on generated instances.
    Selftest {
        /// Number of generated instances.
        #[arg(long, default_value_t = 40)]
        instances: usize,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args)]
struct Opts {
    /// quadratic | subquadratic
    #[arg(long, default_value = "subquadratic")]
    algorithm: Algorithm,
    /// Box side length, 2..=13.
    #[arg(long, default_value_t = 3)]
    g: usize,
    /// Gap penalty for GED.
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
    /// abs1d | l1 | linf (default: abs1d for dim=1, l1 otherwise)
    #[arg(long)]
    metric: Option<MetricKind>,
    /// int | rational | float
    #[arg(long, default_value = "int")]
    arith: ArithMode,
    /// direct | faithful (faithful requires --g 2)
    #[arg(long, default_value = "direct")]
    mode: Mode,
    /// Include the optimal coupling or matching in the report.
    #[arg(long)]
    traceback: bool,
    /// json | tsv
    #[arg(long, default_value = "json")]
    output: OutputFormat,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads for preprocessing.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Reuse or store preprocessing results in this file.
    #[arg(long)]
    cache: Option<PathBuf>,
}

fn config(cli: Cli) -> RunConfig {
    let (command, input, opts, length, instances) = match cli.command {
        Cmd::Dtw { file, opts } => (Command::Dtw, Some(file), opts, None, None),
        Cmd::Ged { file, opts } => (Command::Ged, Some(file), opts, None, None),
        Cmd::Bench { file, length, opts } => (Command::Bench, file, opts, Some(length), None),
        Cmd::Selftest { instances, opts } => (Command::Selftest, None, opts, None, Some(instances)),
    };
    let mut cfg = RunConfig::new(command);
    cfg.input = input;
    cfg.algorithm = opts.algorithm;
    cfg.mode = opts.mode;
    cfg.g = opts.g;
    cfg.rho = opts.rho;
    cfg.metric = opts.metric;
    cfg.arith = opts.arith;
    cfg.traceback = opts.traceback;
    cfg.output = opts.output;
    cfg.seed = opts.seed;
    cfg.threads = opts.threads;
    cfg.cache = opts.cache;
    cfg.length = length.unwrap_or(cfg.length);
    cfg.instances = instances.unwrap_or(cfg.instances);
    cfg
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = config(cli);
    if cfg.threads > 1 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build_global()
        {
            eprintln!("error[config]: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cfg) {
        Ok(out) => {
            match cfg.output {
                OutputFormat::Json => println!("{}", out.to_json()),
                OutputFormat::Tsv => print!("{}", out.to_tsv()),
            }
            if out.failed() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
