//! Run configuration: one flat JSON object whose keys follow the model
//! symbols. Missing keys take the reference-experiment defaults; unknown
//! keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::GammaProcess;
use crate::io::read_to_string;
use crate::nn::{Activation, MlpModel};
use crate::rng::{derive_stream, RngStream};
use crate::sim::{CostParams, NcbmSemantics, PolicyConfig, Thresholds};
use crate::sweep::{SweepGrid, SweepSettings};
use crate::training::{
    generate_training_data, risk_margin, AdaptiveRate, split_dataset, train_model, DegradationDataset,
    RiskMargin, SplitIndices, TrainingConfig, TrainingRecord,
};

// Stream keys reserved for the pipeline stages outside the sweep grid.
pub const DATA_STREAM: u64 = u64::MAX;
pub const SPLIT_STREAM: u64 = u64::MAX - 1;
pub const INIT_STREAM: u64 = u64::MAX - 2;
pub const SIMULATE_STREAM: u64 = u64::MAX - 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Grid step 0.5, 1000 replications.
    Desk,
    /// Grid step 0.1, 5000 replications.
    Full,
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Preset::Desk),
            "full" => Ok(Preset::Full),
            other => Err(Error::Config(format!("unknown preset `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub a: f64,
    pub b: f64,
    pub t_horizon: f64,
    pub c_inspect: f64,
    pub c_prevent: f64,
    pub c_fail: f64,
    pub x_pc: f64,
    pub x_fc: f64,
    pub discount_rate: f64,
    /// Inspection interval for single runs.
    pub t_i: f64,
    pub k_checks: u32,
    pub n_reps: usize,
    pub seed: u64,
    pub grid_start: f64,
    pub grid_step: f64,
    pub grid_end: f64,
    pub sample_interval: f64,
    pub hidden_size: usize,
    pub activation: Activation,
    pub learning_rate: f64,
    /// Adapt the learning rate between epochs.
    pub adaptive_lr: bool,
    pub max_epochs: usize,
    pub patience: usize,
    pub alpha: f64,
    pub ncbm_semantics: NcbmSemantics,
    pub deterministic: bool,
    pub path_consistent: bool,
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let training = TrainingConfig::default();
        let grid = SweepGrid::default();
        let sweep = SweepSettings::default();
        let process = GammaProcess::reference();
        let costs = CostParams::default();
        let thresholds = Thresholds::default();
        Self {
            a: process.a(),
            b: process.b(),
            t_horizon: 50.0,
            c_inspect: costs.c_inspect,
            c_prevent: costs.c_prevent,
            c_fail: costs.c_fail,
            x_pc: thresholds.x_pc,
            x_fc: thresholds.x_fc,
            discount_rate: costs.discount_rate,
            t_i: 25.0,
            k_checks: 2,
            n_reps: sweep.n_reps,
            seed: sweep.master_seed,
            grid_start: grid.start,
            grid_step: grid.step,
            grid_end: grid.end,
            sample_interval: 0.1,
            hidden_size: training.hidden_size,
            activation: training.activation,
            learning_rate: training.learning_rate,
            adaptive_lr: training.adaptive.is_some(),
            max_epochs: training.max_epochs,
            patience: training.patience,
            alpha: sweep.alpha,
            ncbm_semantics: NcbmSemantics::Code,
            deterministic: false,
            path_consistent: false,
            workers: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn apply_preset(&mut self, preset: Preset) {
        match preset {
            Preset::Desk => {
                self.grid_step = 0.5;
                self.n_reps = 1000;
            }
            Preset::Full => {
                self.grid_step = 0.1;
                self.n_reps = 5000;
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.policy_config()?.validate()?;
        self.grid().validate()?;
        if self.n_reps < 2 {
            return Err(Error::Config("n_reps must be >= 2".into()));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::Config("alpha must be in (0, 1]".into()));
        }
        if self.hidden_size < 1 {
            return Err(Error::Config("hidden_size must be >= 1".into()));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Config("learning_rate must be > 0".into()));
        }
        if !(self.sample_interval > 0.0 && self.sample_interval < self.t_horizon) {
            return Err(Error::Config("sample_interval must be in (0, t_horizon)".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        Ok(())
    }

    pub fn process(&self) -> Result<GammaProcess> {
        GammaProcess::new(self.a, self.b)
    }

    pub fn thresholds(&self) -> Thresholds {
        Thresholds {
            x_pc: self.x_pc,
            x_fc: self.x_fc,
        }
    }

    pub fn policy_config(&self) -> Result<PolicyConfig> {
        Ok(PolicyConfig {
            horizon: self.t_horizon,
            inspection_interval: self.t_i,
            mid_checks: self.k_checks,
            process: self.process()?,
            costs: CostParams {
                c_inspect: self.c_inspect,
                c_prevent: self.c_prevent,
                c_fail: self.c_fail,
                discount_rate: self.discount_rate,
            },
            thresholds: self.thresholds(),
            deterministic: self.deterministic,
            path_consistent: self.path_consistent,
            ncbm_semantics: self.ncbm_semantics,
        })
    }

    pub fn grid(&self) -> SweepGrid {
        SweepGrid {
            start: self.grid_start,
            step: self.grid_step,
            end: self.grid_end,
        }
    }

    pub fn sweep_settings(&self) -> SweepSettings {
        SweepSettings {
            n_reps: self.n_reps,
            master_seed: self.seed,
            alpha: self.alpha,
            workers: self.workers,
        }
    }

    pub fn training_config(&self) -> TrainingConfig {
        TrainingConfig {
            hidden_size: self.hidden_size,
            activation: self.activation,
            learning_rate: self.learning_rate,
            adaptive: self.adaptive_lr.then(AdaptiveRate::default),
            max_epochs: self.max_epochs,
            patience: self.patience,
        }
    }

    pub fn simulate_stream(&self) -> RngStream {
        derive_stream(self.seed, SIMULATE_STREAM, 0)
    }

    /// Training data from the configured seed.
    pub fn generate_dataset(&self) -> Result<DegradationDataset> {
        let mut rng = derive_stream(self.seed, DATA_STREAM, 0);
        generate_training_data(
            &self.process()?,
            &self.thresholds(),
            self.t_horizon,
            self.sample_interval,
            &mut rng,
        )
    }

    /// Splits, trains and computes the risk margin, all from the configured seed.
    pub fn fit(&self, data: &DegradationDataset) -> Result<FittedEstimator> {
        let splits = split_dataset(data.len(), &mut derive_stream(self.seed, SPLIT_STREAM, 0))?;
        let mut init = derive_stream(self.seed, INIT_STREAM, 0);
        let (model, record) = train_model(data, &splits, &self.training_config(), &mut init)?;
        let margin = risk_margin(&model, data)?;
        Ok(FittedEstimator {
            model,
            margin,
            record,
            splits,
        })
    }
}

#[derive(Debug, Clone)]
pub struct FittedEstimator {
    pub model: MlpModel,
    pub margin: RiskMargin,
    pub record: TrainingRecord,
    pub splits: SplitIndices,
}
