//! `ncbm` command-line entry points.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O, 3 data/training, 4 model/policy.
//! Configuration precedence: individual flags > `--preset` > `--config`
//! file > built-in defaults.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{Preset, RunConfig};
use crate::error::Error;
use crate::io::{fmt_g12, line_chart_svg, write_atomic, Series};
use crate::sim::{simulate_classical, simulate_ncbm, NcbmSemantics};
use crate::sweep::{comparison_metrics, run_sweep};
use crate::training::{load_model, residuals_csv, save_model, DegradationDataset};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_MODEL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ncbm", version, about = "Classical vs neural condition-based maintenance on a gamma degradation process")]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub preset: Option<PresetArg>,
    /// Also write SVG charts (sweep).
    #[arg(long, global = true)]
    pub svg: bool,
    /// Discount rate per year.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    #[arg(long = "ncbm-semantics", global = true, value_enum)]
    pub ncbm_semantics: Option<SemanticsArg>,
    /// Replace degradation draws with the mean path.
    #[arg(long, global = true)]
    pub deterministic: bool,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long = "n-reps", global = true)]
    pub n_reps: Option<usize>,
    /// Inspection interval for `simulate`.
    #[arg(long = "t-i", global = true)]
    pub t_i: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PresetArg {
    Desk,
    Full,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SemanticsArg {
    Code,
    Prose,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum PolicyArg {
    Classical,
    Ncbm,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate training data and write `tau,x` CSV.
    GenData {
        #[arg(long)]
        out: PathBuf,
    },
    /// Train the estimator; writes the model JSON plus record and residual CSVs.
    Train {
        #[arg(long)]
        data: PathBuf,
        #[arg(long = "model-out")]
        model_out: PathBuf,
        /// Defaults to `<model-out stem>.record.csv`.
        #[arg(long = "record-out")]
        record_out: Option<PathBuf>,
        /// Defaults to `<model-out stem>.residuals.csv`.
        #[arg(long = "residuals-out")]
        residuals_out: Option<PathBuf>,
    },
    /// One replication of one policy; writes the ledger CSV and prints the cost rate.
    Simulate {
        #[arg(long, value_enum, default_value = "classical")]
        policy: PolicyArg,
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep the inspection interval for both policies.
    Sweep {
        #[arg(long)]
        model: PathBuf,
        /// Writes `<prefix>.csv` and, with `--svg`, `<prefix>_cost_rate.svg`
        /// and `<prefix>_cost_std.svg`.
        #[arg(long = "out-prefix")]
        out_prefix: PathBuf,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

/// Maps a library error to an exit code given the stage it came from.
fn classify(stage_code: i32, e: Error) -> CliError {
    let code = match &e {
        Error::Io { .. } => EXIT_IO,
        Error::Config(_) => EXIT_USAGE,
        _ => stage_code,
    };
    CliError::new(code, e.to_string())
}

impl Cli {
    /// Defaults, then the config file, then the preset, then individual flags.
    pub fn resolve_config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path).map_err(|e| classify(EXIT_USAGE, e))?,
            None => RunConfig::default(),
        };
        if let Some(p) = self.preset {
            cfg.apply_preset(match p {
                PresetArg::Desk => Preset::Desk,
                PresetArg::Full => Preset::Full,
            });
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(g) = self.gamma {
            cfg.discount_rate = g;
        }
        if let Some(s) = self.ncbm_semantics {
            cfg.ncbm_semantics = match s {
                SemanticsArg::Code => NcbmSemantics::Code,
                SemanticsArg::Prose => NcbmSemantics::Prose,
            };
        }
        if self.deterministic {
            cfg.deterministic = true;
        }
        if let Some(w) = self.workers {
            cfg.workers = Some(w);
        }
        if let Some(n) = self.n_reps {
            cfg.n_reps = n;
        }
        if let Some(t) = self.t_i {
            cfg.t_i = t;
        }
        cfg.validate().map_err(|e| CliError::new(EXIT_USAGE, e.to_string()))?;
        Ok(cfg)
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = cli.resolve_config()?;
    match &cli.command {
        Command::GenData { out } => cmd_gen_data(&cfg, out),
        Command::Train {
            data,
            model_out,
            record_out,
            residuals_out,
        } => {
            let record_out = record_out.clone().unwrap_or_else(|| sibling(model_out, "record.csv"));
            let residuals_out = residuals_out.clone().unwrap_or_else(|| sibling(model_out, "residuals.csv"));
            cmd_train(&cfg, data, model_out, &record_out, &residuals_out)
        }
        Command::Simulate { policy, model, out } => {
            cmd_simulate(&cfg, *policy, model.as_deref(), out, stdout)
        }
        Command::Sweep { model, out_prefix } => cmd_sweep(&cfg, model, out_prefix, cli.svg, stdout),
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn cmd_gen_data(cfg: &RunConfig, out: &Path) -> Result<(), CliError> {
    let data = cfg.generate_dataset().map_err(|e| classify(EXIT_DATA, e))?;
    data.save_csv(out).map_err(|e| classify(EXIT_IO, e))?;
    log::info!("wrote {} records to {}", data.len(), out.display());
    Ok(())
}

pub fn cmd_train(
    cfg: &RunConfig,
    data_path: &Path,
    model_out: &Path,
    record_out: &Path,
    residuals_out: &Path,
) -> Result<(), CliError> {
    let data = DegradationDataset::load_csv(data_path).map_err(|e| classify(EXIT_DATA, e))?;
    let fitted = cfg.fit(&data).map_err(|e| classify(EXIT_DATA, e))?;
    save_model(&fitted.model, fitted.margin, model_out).map_err(|e| classify(EXIT_IO, e))?;
    write_atomic(record_out, fitted.record.to_csv().as_bytes()).map_err(|e| classify(EXIT_IO, e))?;
    write_atomic(residuals_out, residuals_csv(&fitted.model, &data).as_bytes())
        .map_err(|e| classify(EXIT_IO, e))?;
    log::info!(
        "trained {} epochs (best {}), risk margin {}",
        fitted.record.epochs(),
        fitted.record.best_epoch,
        fmt_g12(fitted.margin.err)
    );
    Ok(())
}

pub fn cmd_simulate(
    cfg: &RunConfig,
    policy: PolicyArg,
    model_path: Option<&Path>,
    out: &Path,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let policy_cfg = cfg.policy_config().map_err(|e| classify(EXIT_USAGE, e))?;
    let mut rng = cfg.simulate_stream();
    let outcome = match (policy, model_path) {
        (PolicyArg::Classical, _) => simulate_classical(&policy_cfg, &mut rng),
        (PolicyArg::Ncbm, Some(path)) => {
            let (model, margin) = load_model(path).map_err(|e| classify(EXIT_MODEL, e_model(e)))?;
            simulate_ncbm(&policy_cfg, &model, margin, &mut rng)
        }
        (PolicyArg::Ncbm, None) => {
            return Err(CliError::new(EXIT_MODEL, "the ncbm policy needs --model"));
        }
    }
    .map_err(|e| classify(EXIT_USAGE, e))?;
    write_atomic(out, outcome.ledger.to_csv(&policy_cfg.costs).as_bytes())
        .map_err(|e| classify(EXIT_IO, e))?;
    writeln!(stdout, "cost_rate={}", fmt_g12(outcome.cost_rate))
        .map_err(|e| CliError::new(EXIT_IO, e.to_string()))?;
    Ok(())
}

// A missing or unreadable model is a model error, not an I/O error.
fn e_model(e: Error) -> Error {
    match e {
        Error::Io { path, source } => Error::format(path.display().to_string(), source.to_string()),
        other => other,
    }
}

pub fn cmd_sweep(
    cfg: &RunConfig,
    model_path: &Path,
    out_prefix: &Path,
    svg: bool,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let (model, margin) = load_model(model_path).map_err(|e| classify(EXIT_MODEL, e_model(e)))?;
    let base = cfg.policy_config().map_err(|e| classify(EXIT_USAGE, e))?;
    let result = run_sweep(&cfg.grid(), &base, &model, margin, &cfg.sweep_settings())
        .map_err(|e| classify(EXIT_USAGE, e))?;
    let csv_path = with_suffix(out_prefix, ".csv");
    write_atomic(&csv_path, result.to_csv().as_bytes()).map_err(|e| classify(EXIT_IO, e))?;
    if svg {
        let rate = line_chart_svg(
            "Cost Rate",
            "Inspection interval (year)",
            "Expectation of cost rate (per year)",
            &result.t_i,
            &[
                Series { name: "classical", color: "#1f77b4", y: &result.classical.mean_ema },
                Series { name: "N-CBM", color: "#d62728", y: &result.ncbm.mean_ema },
            ],
        );
        let std = line_chart_svg(
            "Standard Deviation of Cost Rate",
            "Inspection interval (year)",
            "Standard Deviation of cost rate (per year)",
            &result.t_i,
            &[
                Series { name: "classical", color: "#1f77b4", y: &result.classical.std_ema },
                Series { name: "N-CBM", color: "#d62728", y: &result.ncbm.std_ema },
            ],
        );
        write_atomic(&with_suffix(out_prefix, "_cost_rate.svg"), rate.as_bytes()).map_err(|e| classify(EXIT_IO, e))?;
        write_atomic(&with_suffix(out_prefix, "_cost_std.svg"), std.as_bytes()).map_err(|e| classify(EXIT_IO, e))?;
    }
    let metrics = comparison_metrics(&result).map_err(|e| classify(EXIT_DATA, e))?;
    writeln!(stdout, "{}", result.summary_line(&metrics)).map_err(|e| CliError::new(EXIT_IO, e.to_string()))?;
    Ok(())
}
