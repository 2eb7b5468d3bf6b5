//! Training-data generation, dataset splitting, early-stopped training,
//! risk margin and model files.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::GammaProcess;
use crate::io::{fmt_g12, read_to_string, write_atomic};
use crate::nn::{backprop_gradient, batch_mse, Activation, MlpModel, NormBounds};
use crate::sim::Thresholds;

/// `(tau, x)` records in simulation order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DegradationDataset {
    records: Vec<(f64, f64)>,
}

impl DegradationDataset {
    pub fn from_records(records: Vec<(f64, f64)>) -> Result<Self> {
        for (i, &(tau, x)) in records.iter().enumerate() {
            if !(tau.is_finite() && tau > 0.0) {
                return Err(Error::param("tau", format!("record {i}: must be > 0, got {tau}")));
            }
            if !(x.is_finite() && x >= 0.0) {
                return Err(Error::param("x", format!("record {i}: must be >= 0, got {x}")));
            }
        }
        Ok(Self { records })
    }

    pub fn records(&self) -> &[(f64, f64)] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn subset(&self, indices: &[usize]) -> Vec<(f64, f64)> {
        indices.iter().map(|&i| self.records[i]).collect()
    }

    /// CSV with header `tau,x`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tau,x\n");
        for &(tau, x) in &self.records {
            out.push_str(&fmt_g12(tau));
            out.push(',');
            out.push_str(&fmt_g12(x));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next().map(str::trim) {
            Some("tau,x") => {}
            other => {
                return Err(Error::format(
                    "header",
                    format!("expected `tau,x`, got {:?}", other.unwrap_or("")),
                ))
            }
        }
        let mut records = Vec::new();
        for (n, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (tau, x) = line
                .split_once(',')
                .ok_or_else(|| Error::format("row", format!("line {}: expected two columns", n + 2)))?;
            let parse = |field: &str, s: &str| -> Result<f64> {
                s.trim()
                    .parse()
                    .map_err(|_| Error::format(field, format!("line {}: not a number: {s:?}", n + 2)))
            };
            records.push((parse("tau", tau)?, parse("x", x)?));
        }
        Self::from_records(records)
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_csv().as_bytes())
    }

    pub fn load_csv(path: &Path) -> Result<Self> {
        Self::from_csv(&read_to_string(path)?)
    }
}

/// Simulates one component sampled every `sample_interval` years, recording
/// `(years since replacement, degradation)` at each step. The replacement
/// clock restarts whenever the sample reaches the preventive level.
pub fn generate_training_data<R: Rng + ?Sized>(
    process: &GammaProcess,
    thresholds: &Thresholds,
    horizon: f64,
    sample_interval: f64,
    rng: &mut R,
) -> Result<DegradationDataset> {
    thresholds.validate()?;
    if !(sample_interval.is_finite() && sample_interval > 0.0) {
        return Err(Error::param(
            "sample_interval",
            format!("must be > 0, got {sample_interval}"),
        ));
    }
    if !(horizon.is_finite() && horizon > sample_interval) {
        return Err(Error::param(
            "t_horizon",
            format!("must exceed the sample interval, got {horizon}"),
        ));
    }
    let mut records = Vec::new();
    let mut replaced_step: u64 = 0;
    let mut i: u64 = 1;
    while (i as f64) * sample_interval < horizon {
        let tau = (i - replaced_step) as f64 * sample_interval;
        let x = process.sample(tau, rng)?;
        records.push((tau, x));
        if x >= thresholds.x_pc {
            replaced_step = i;
        }
        i += 1;
    }
    Ok(DegradationDataset { records })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIndices {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
}

pub const VALIDATION_RATIO: f64 = 0.15;
pub const TEST_RATIO: f64 = 0.15;

/// Random 70/15/15 partition. Validation and test each get
/// `round(0.15·n)` indices; the remainder trains.
pub fn split_dataset<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SplitIndices> {
    if n == 0 {
        return Err(Error::param("dataset", "cannot split an empty dataset"));
    }
    let n_val = (VALIDATION_RATIO * n as f64).round() as usize;
    let n_test = (TEST_RATIO * n as f64).round() as usize;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let test = perm.split_off(n - n_test);
    let validation = perm.split_off(n - n_test - n_val);
    Ok(SplitIndices {
        train: perm,
        validation,
        test,
    })
}

const MAX_STEP_RETRIES: usize = 60;

/// Learning-rate adaptation for gradient descent: grow the rate after a step
/// that lowers the training loss, shrink it and retry when a step raises the
/// loss by more than the allowed factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveRate {
    pub increase: f64,
    pub decrease: f64,
    pub max_loss_increase: f64,
}

impl Default for AdaptiveRate {
    fn default() -> Self {
        Self {
            increase: 1.05,
            decrease: 0.7,
            max_loss_increase: 1.04,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingConfig {
    pub hidden_size: usize,
    pub activation: Activation,
    /// Initial learning rate (normalized space).
    pub learning_rate: f64,
    /// `None` keeps the learning rate fixed.
    pub adaptive: Option<AdaptiveRate>,
    pub max_epochs: usize,
    /// Consecutive epochs of nondecreasing validation MSE before stopping.
    pub patience: usize,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            hidden_size: 10,
            activation: Activation::Tanh,
            learning_rate: 0.01,
            adaptive: Some(AdaptiveRate::default()),
            max_epochs: 1000,
            patience: 6,
        }
    }
}

/// Per-epoch training history. MSE values are in original target units;
/// gradient norms are of the normalized-space loss.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainingRecord {
    pub train_mse: Vec<f64>,
    pub val_mse: Vec<f64>,
    pub test_mse: Vec<f64>,
    pub grad_norm: Vec<f64>,
    pub best_epoch: usize,
}

impl TrainingRecord {
    pub fn epochs(&self) -> usize {
        self.train_mse.len()
    }

    /// CSV with header `epoch,train_mse,val_mse,test_mse,grad_norm`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epoch,train_mse,val_mse,test_mse,grad_norm\n");
        for e in 0..self.epochs() {
            out.push_str(&format!(
                "{e},{},{},{},{}\n",
                fmt_g12(self.train_mse[e]),
                fmt_g12(self.val_mse[e]),
                fmt_g12(self.test_mse[e]),
                fmt_g12(self.grad_norm[e])
            ));
        }
        out
    }
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Normalization bounds from a dataset's full range of `tau` and `x`.
pub fn dataset_bounds(data: &DegradationDataset) -> Result<NormBounds> {
    if data.is_empty() {
        return Err(Error::Normalization("dataset is empty".into()));
    }
    let (in_min, in_max) = min_max(data.records.iter().map(|r| r.0));
    let (out_min, out_max) = min_max(data.records.iter().map(|r| r.1));
    if in_min >= in_max {
        return Err(Error::Normalization(format!("all tau equal ({in_min})")));
    }
    if out_min >= out_max {
        return Err(Error::Normalization(format!("all x equal ({out_min})")));
    }
    Ok(NormBounds {
        in_min,
        in_max,
        out_min,
        out_max,
    })
}

/// Full-batch gradient descent on the training split with early stopping on
/// the validation split. Returns the weights of the best validation epoch.
pub fn train_model<R: Rng + ?Sized>(
    data: &DegradationDataset,
    splits: &SplitIndices,
    config: &TrainingConfig,
    rng: &mut R,
) -> Result<(MlpModel, TrainingRecord)> {
    if config.hidden_size < 1 {
        return Err(Error::param("hidden_size", "must be >= 1"));
    }
    if !(config.learning_rate.is_finite() && config.learning_rate > 0.0) {
        return Err(Error::param("learning_rate", "must be > 0"));
    }
    check_splits(splits, data.len())?;
    let bounds = dataset_bounds(data)?;
    // normalized MSE -> original units
    let half_range = (bounds.out_max - bounds.out_min) / 2.0;
    let scale = half_range * half_range;

    let train = data.subset(&splits.train);
    let val = data.subset(&splits.validation);
    let test = data.subset(&splits.test);

    let mut model = MlpModel::random(config.hidden_size, config.activation, bounds, rng)?;
    let mut record = TrainingRecord::default();
    let mut best = (f64::INFINITY, 0usize, model.clone());
    let mut fails = 0usize;
    let mut prev_val = f64::INFINITY;

    let mut learning_rate = config.learning_rate;
    let (mut grad, mut train_mse) = backprop_gradient(&model, &train)?;
    for epoch in 0..=config.max_epochs {
        let val_mse = batch_mse(&model, &val)?;
        let test_mse = batch_mse(&model, &test)?;
        record.train_mse.push(train_mse * scale);
        record.val_mse.push(val_mse * scale);
        record.test_mse.push(test_mse * scale);
        record.grad_norm.push(grad.norm());

        if val_mse < best.0 {
            best = (val_mse, epoch, model.clone());
        }
        // The stall counter compares against the previous epoch, so a
        // transient rise followed by recovery does not end training.
        if val_mse < prev_val {
            fails = 0;
        } else {
            fails += 1;
        }
        prev_val = val_mse;
        if fails >= config.patience || epoch == config.max_epochs {
            break;
        }

        // A step that raises the training loss by more than
        // `max_loss_increase` is retried with a smaller rate.
        let mut accepted = false;
        for _ in 0..MAX_STEP_RETRIES {
            let candidate = model.apply_update(&grad, learning_rate)?;
            let (cand_grad, cand_mse) = backprop_gradient(&candidate, &train)?;
            let acceptable = candidate.is_finite() && cand_mse.is_finite();
            if let Some(adapt) = &config.adaptive {
                if !acceptable || cand_mse > train_mse * adapt.max_loss_increase {
                    learning_rate *= adapt.decrease;
                    continue;
                }
                if cand_mse < train_mse {
                    learning_rate *= adapt.increase;
                }
            } else if !acceptable {
                break;
            }
            model = candidate;
            grad = cand_grad;
            train_mse = cand_mse;
            accepted = true;
            break;
        }
        if !accepted {
            return Err(Error::Normalization(format!(
                "training diverged at epoch {epoch}; lower the learning rate"
            )));
        }
    }
    record.best_epoch = best.1;
    log::debug!(
        "training stopped after {} epochs, best epoch {}",
        record.epochs(),
        record.best_epoch
    );
    Ok((best.2, record))
}

fn check_splits(splits: &SplitIndices, n: usize) -> Result<()> {
    if splits.train.is_empty() || splits.validation.is_empty() || splits.test.is_empty() {
        return Err(Error::param(
            "splits",
            "train, validation and test sets must all be nonempty",
        ));
    }
    let mut seen = vec![false; n];
    for &i in splits.train.iter().chain(&splits.validation).chain(&splits.test) {
        if i >= n || seen[i] {
            return Err(Error::param("splits", format!("index {i} out of range or repeated")));
        }
        seen[i] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::param("splits", "splits do not cover the dataset"));
    }
    Ok(())
}

/// Signed maximum residual `target − estimate`, added to estimates before
/// they are compared with the thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskMargin {
    pub err: f64,
}

/// Maximum of `x − model(tau)` over every record. Negative if the model
/// over-predicts everywhere.
pub fn risk_margin(model: &MlpModel, data: &DegradationDataset) -> Result<RiskMargin> {
    if data.is_empty() {
        return Err(Error::param("dataset", "risk margin of an empty dataset"));
    }
    let err = data
        .records
        .iter()
        .map(|&(tau, x)| x - model.forward(tau))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(RiskMargin { err })
}

/// `tau,target,output,error` rows over the full dataset.
pub fn residuals_csv(model: &MlpModel, data: &DegradationDataset) -> String {
    let mut out = String::from("tau,target,output,error\n");
    for &(tau, x) in &data.records {
        let y = model.forward(tau);
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_g12(tau),
            fmt_g12(x),
            fmt_g12(y),
            fmt_g12(x - y)
        ));
    }
    out
}

/// On-disk model: JSON, weights row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub input_dim: usize,
    pub hidden: usize,
    pub activation: Activation,
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
    pub in_min: f64,
    pub in_max: f64,
    pub out_min: f64,
    pub out_max: f64,
    pub risk_margin: f64,
}

impl ModelFile {
    pub fn new(model: &MlpModel, margin: RiskMargin) -> Self {
        let b = model.bounds();
        Self {
            input_dim: 1,
            hidden: model.hidden_size(),
            activation: model.activation(),
            w1: model.hidden_weights().to_vec(),
            b1: model.hidden_biases().to_vec(),
            w2: model.output_weights().to_vec(),
            b2: model.output_bias(),
            in_min: b.in_min,
            in_max: b.in_max,
            out_min: b.out_min,
            out_max: b.out_max,
            risk_margin: margin.err,
        }
    }

    pub fn into_model(self) -> Result<(MlpModel, RiskMargin)> {
        if self.input_dim != 1 {
            return Err(Error::format("input_dim", format!("must be 1, got {}", self.input_dim)));
        }
        if self.hidden == 0 {
            return Err(Error::format("hidden", "must be >= 1"));
        }
        for (field, len) in [("w1", self.w1.len()), ("b1", self.b1.len()), ("w2", self.w2.len())] {
            if len != self.hidden {
                return Err(Error::format(
                    field,
                    format!("expected {} values for hidden = {}, got {len}", self.hidden, self.hidden),
                ));
            }
        }
        if !(self.in_min < self.in_max) {
            return Err(Error::format("in_min", "must be < in_max"));
        }
        if !(self.out_min < self.out_max) {
            return Err(Error::format("out_min", "must be < out_max"));
        }
        if !self.risk_margin.is_finite() {
            return Err(Error::format("risk_margin", "must be finite"));
        }
        let bounds = NormBounds {
            in_min: self.in_min,
            in_max: self.in_max,
            out_min: self.out_min,
            out_max: self.out_max,
        };
        let model = MlpModel::from_parts(self.activation, self.w1, self.b1, self.w2, self.b2, bounds)
            .map_err(|e| Error::format("weights", e.to_string()))?;
        Ok((model, RiskMargin { err: self.risk_margin }))
    }
}

pub fn model_to_json(model: &MlpModel, margin: RiskMargin) -> String {
    let mut s = serde_json::to_string_pretty(&ModelFile::new(model, margin)).expect("model serializes");
    s.push('\n');
    s
}

pub fn model_from_json(text: &str) -> Result<(MlpModel, RiskMargin)> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        // serde reports the offending key inside backticks
        let field = msg
            .split('`')
            .nth(1)
            .map(str::to_string)
            .unwrap_or_else(|| "<document>".to_string());
        Error::format(field, msg)
    })?;
    file.into_model()
}

pub fn save_model(model: &MlpModel, margin: RiskMargin, path: &Path) -> Result<()> {
    write_atomic(path, model_to_json(model, margin).as_bytes())
}

pub fn load_model(path: &Path) -> Result<(MlpModel, RiskMargin)> {
    model_from_json(&read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;

    fn reference_data(seed: u64) -> DegradationDataset {
        let mut s = derive_stream(seed, 0, 0);
        generate_training_data(&GammaProcess::reference(), &Thresholds::default(), 50.0, 0.1, &mut s).unwrap()
    }

    #[test]
    fn record_count_and_reset_semantics() {
        let d = reference_data(1);
        assert_eq!(d.len(), 499);
        assert!((d.records()[0].0 - 0.1).abs() < 1e-12);
        for w in d.records().windows(2) {
            if w[0].1 >= 2.0 {
                assert!((w[1].0 - 0.1).abs() < 1e-12);
            } else {
                assert!((w[1].0 - w[0].0 - 0.1).abs() < 1e-9);
            }
        }
        for &(tau, x) in d.records() {
            assert!(tau > 0.0 && x >= 0.0);
            let q = tau / 0.1;
            assert!((q - q.round()).abs() < 1e-9);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(reference_data(4), reference_data(4));
        assert_ne!(reference_data(4), reference_data(5));
    }

    #[test]
    fn generation_validates_inputs() {
        let mut s = derive_stream(1, 0, 0);
        let p = GammaProcess::reference();
        assert!(generate_training_data(&p, &Thresholds { x_pc: 3.0, x_fc: 2.0 }, 50.0, 0.1, &mut s).is_err());
        assert!(generate_training_data(&p, &Thresholds { x_pc: 0.0, x_fc: 2.0 }, 50.0, 0.1, &mut s).is_err());
        assert!(generate_training_data(&p, &Thresholds::default(), 50.0, 0.0, &mut s).is_err());
        assert!(generate_training_data(&p, &Thresholds::default(), 0.05, 0.1, &mut s).is_err());
    }

    #[test]
    fn split_sizes() {
        let mut s = derive_stream(1, 0, 0);
        let sp = split_dataset(499, &mut s).unwrap();
        assert_eq!((sp.train.len(), sp.validation.len(), sp.test.len()), (349, 75, 75));
        let sp = split_dataset(20, &mut s).unwrap();
        assert_eq!((sp.train.len(), sp.validation.len(), sp.test.len()), (14, 3, 3));
        let mut all: Vec<usize> = sp.train.iter().chain(&sp.validation).chain(&sp.test).copied().collect();
        all.sort();
        assert_eq!(all, (0..20).collect::<Vec<_>>());
        assert!(split_dataset(0, &mut s).is_err());
    }

    #[test]
    fn degenerate_data_is_a_normalization_error() {
        let mut s = derive_stream(1, 0, 0);
        let same_tau = DegradationDataset::from_records(vec![(1.0, 0.1), (1.0, 0.2), (1.0, 0.3), (1.0, 0.4)]).unwrap();
        let same_x = DegradationDataset::from_records((1..=20).map(|i| (i as f64, 0.5)).collect()).unwrap();
        let small = SplitIndices { train: vec![0, 1], validation: vec![2], test: vec![3] };
        let r = train_model(&same_tau, &small, &TrainingConfig::default(), &mut s);
        assert!(matches!(r, Err(Error::Normalization(_))), "{r:?}");
        let sp = split_dataset(same_x.len(), &mut s).unwrap();
        let r = train_model(&same_x, &sp, &TrainingConfig::default(), &mut s);
        assert!(matches!(r, Err(Error::Normalization(_))), "{r:?}");
    }

    #[test]
    fn record_bookkeeping_and_early_stopping() {
        let d = reference_data(2);
        let mut s = derive_stream(2, 0, 1);
        let sp = split_dataset(d.len(), &mut s).unwrap();
        let cfg = TrainingConfig { max_epochs: 3000, ..TrainingConfig::default() };
        let (model, rec) = train_model(&d, &sp, &cfg, &mut s).unwrap();
        let n = rec.epochs();
        assert!(n >= 1 && n <= cfg.max_epochs + 1);
        assert_eq!(rec.val_mse.len(), n);
        assert_eq!(rec.test_mse.len(), n);
        assert_eq!(rec.grad_norm.len(), n);
        let best = rec.val_mse[rec.best_epoch];
        assert!(rec.val_mse[..rec.best_epoch].iter().all(|&v| best <= v));
        assert!(rec.val_mse.iter().all(|&v| best <= v));
        if n <= cfg.max_epochs {
            let tail = &rec.val_mse[n - 1 - cfg.patience..];
            assert!(tail.windows(2).all(|w| w[1] >= w[0]));
        }
        // the returned model is the best-epoch model
        let val = d.subset(&sp.validation);
        let scale = {
            let b = model.bounds();
            ((b.out_max - b.out_min) / 2.0).powi(2)
        };
        let got = batch_mse(&model, &val).unwrap() * scale;
        assert!((got - best).abs() <= 1e-12 * best.max(1.0));
        assert_eq!(rec.to_csv().lines().count(), n + 1);
    }

    #[test]
    fn risk_margin_cases() {
        let bounds = NormBounds { in_min: 0.0, in_max: 10.0, out_min: 0.0, out_max: 2.0 };
        let m = MlpModel::zeros(3, Activation::Tanh, bounds).unwrap(); // outputs 1.0
        let exact = DegradationDataset::from_records(vec![(1.0, 1.0), (2.0, 1.0)]).unwrap();
        assert_eq!(risk_margin(&m, &exact).unwrap().err, 0.0);
        let offset = DegradationDataset::from_records(vec![(1.0, 1.3), (5.0, 1.3)]).unwrap();
        assert!((risk_margin(&m, &offset).unwrap().err - 0.3).abs() < 1e-15);
        let over = DegradationDataset::from_records(vec![(1.0, 0.2), (5.0, 0.5)]).unwrap();
        assert!((risk_margin(&m, &over).unwrap().err + 0.5).abs() < 1e-15);
        assert!(risk_margin(&m, &DegradationDataset::default()).is_err());
    }

    #[test]
    fn dataset_csv_roundtrip() {
        let d = DegradationDataset::from_records(vec![(0.1, 0.012345678901234), (0.2, 1.5)]).unwrap();
        let csv = d.to_csv();
        assert_eq!(csv, "tau,x\n0.1,0.0123456789012\n0.2,1.5\n");
        let back = DegradationDataset::from_csv(&csv).unwrap();
        assert_eq!(back.len(), 2);
        assert!(DegradationDataset::from_csv("t,x\n1,2\n").is_err());
        assert!(DegradationDataset::from_csv("tau,x\n1;2\n").is_err());
        assert!(DegradationDataset::from_csv("tau,x\n-1,2\n").is_err());
    }

    #[test]
    fn model_file_validation() {
        let mut s = derive_stream(3, 0, 0);
        let bounds = NormBounds { in_min: 0.1, in_max: 20.0, out_min: 0.0, out_max: 3.0 };
        let m = MlpModel::random(4, Activation::Sigmoid, bounds, &mut s).unwrap();
        let json = model_to_json(&m, RiskMargin { err: 0.123456789 });
        let (back, margin) = model_from_json(&json).unwrap();
        assert_eq!(back, m);
        assert_eq!(margin.err.to_bits(), 0.123456789f64.to_bits());

        let mut file = ModelFile::new(&m, margin);
        file.hidden = 5;
        let err = model_from_json(&serde_json::to_string(&file).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Format { ref field, .. } if field == "w1"), "{err}");

        let err = model_from_json(&json.replace("\"b2\"", "\"bias2\"")).unwrap_err();
        assert!(matches!(err, Error::Format { .. }));
        let err = model_from_json(&json.replace("\"input_dim\": 1", "\"input_dim\": 2")).unwrap_err();
        assert!(matches!(err, Error::Format { ref field, .. } if field == "input_dim"));
    }
}
