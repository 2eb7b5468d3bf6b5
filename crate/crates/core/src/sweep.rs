//! Inspection-interval sweep: N paired replications of both policies per
//! grid point, mean/std aggregation, EMA smoothing and comparison metrics.
//!
//! Replication `r` at grid index `g` draws from `derive_stream(seed, g, r)`,
//! and both policies start from that same stream. Results are collected in
//! index order and folded sequentially, so the output does not depend on the
//! number of worker threads.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::io::{csv_row, fmt_g12};
use crate::rng::derive_stream;
use crate::sim::{simulate_classical, simulate_ncbm, DegradationEstimator, PolicyConfig};
use crate::training::RiskMargin;

pub const CSV_HEADER: &str = "t_i,classical_mean,classical_std,ncbm_mean,ncbm_std,classical_mean_ema,classical_std_ema,ncbm_mean_ema,ncbm_std_ema";

/// Points below this classical value are left out of relative reductions.
pub const METRIC_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub start: f64,
    pub step: f64,
    pub end: f64,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            start: 0.5,
            step: 0.1,
            end: 50.0,
        }
    }
}

impl SweepGrid {
    pub fn desk() -> Self {
        Self {
            step: 0.5,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.start > 0.0) {
            return Err(Error::param("grid_start", format!("must be > 0, got {}", self.start)));
        }
        if !(self.end.is_finite() && self.end >= self.start) {
            return Err(Error::param("grid_end", format!("must be >= start, got {}", self.end)));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::param("grid_step", format!("must be > 0, got {}", self.step)));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `start + i·step`, recomputed from the index.
    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.start + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub n_reps: usize,
    pub master_seed: u64,
    pub alpha: f64,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            n_reps: 5000,
            master_seed: 2014,
            alpha: 0.1,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolicyStats {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub mean_ema: Vec<f64>,
    pub std_ema: Vec<f64>,
}

impl PolicyStats {
    fn smooth(mean: Vec<f64>, std: Vec<f64>, alpha: f64) -> Result<Self> {
        Ok(Self {
            mean_ema: ema_smooth(&mean, alpha)?,
            std_ema: ema_smooth(&std, alpha)?,
            mean,
            std,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub t_i: Vec<f64>,
    pub classical: PolicyStats,
    pub ncbm: PolicyStats,
    pub n_reps: usize,
    pub master_seed: u64,
    pub alpha: f64,
}

/// Mean and sample (n − 1) standard deviation, summed in slice order.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().fold(0.0, |acc, v| acc + v) / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Cost rates of both policies for one paired replication.
pub fn replicate<E: DegradationEstimator + ?Sized>(
    config: &PolicyConfig,
    estimator: &E,
    margin: RiskMargin,
    master_seed: u64,
    grid_index: usize,
    replication: usize,
) -> Result<(f64, f64)> {
    let stream = derive_stream(master_seed, grid_index as u64, replication as u64);
    let classical = simulate_classical(config, &mut stream.clone())?;
    let ncbm = simulate_ncbm(config, estimator, margin, &mut stream.clone())?;
    Ok((classical.cost_rate, ncbm.cost_rate))
}

pub fn run_sweep<E: DegradationEstimator + ?Sized>(
    grid: &SweepGrid,
    base: &PolicyConfig,
    estimator: &E,
    margin: RiskMargin,
    settings: &SweepSettings,
) -> Result<SweepResult> {
    grid.validate()?;
    base.validate()?;
    if settings.n_reps < 2 {
        return Err(Error::param("n_reps", "need at least 2 replications"));
    }
    let points = grid.points();
    let work = || -> Result<Vec<Vec<(f64, f64)>>> {
        points
            .par_iter()
            .enumerate()
            .map(|(g, &t_i)| {
                let cfg = base.with_interval(t_i);
                (0..settings.n_reps)
                    .into_par_iter()
                    .map(|r| replicate(&cfg, estimator, margin, settings.master_seed, g, r))
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    };
    let per_point = match settings.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::param("workers", e.to_string()))?
            .install(work)?,
        None => work()?,
    };

    let mut c_mean = Vec::with_capacity(points.len());
    let mut c_std = Vec::with_capacity(points.len());
    let mut n_mean = Vec::with_capacity(points.len());
    let mut n_std = Vec::with_capacity(points.len());
    for reps in &per_point {
        let classical: Vec<f64> = reps.iter().map(|p| p.0).collect();
        let ncbm: Vec<f64> = reps.iter().map(|p| p.1).collect();
        let (m, s) = mean_std(&classical);
        c_mean.push(m);
        c_std.push(s);
        let (m, s) = mean_std(&ncbm);
        n_mean.push(m);
        n_std.push(s);
    }
    Ok(SweepResult {
        t_i: points,
        classical: PolicyStats::smooth(c_mean, c_std, settings.alpha)?,
        ncbm: PolicyStats::smooth(n_mean, n_std, settings.alpha)?,
        n_reps: settings.n_reps,
        master_seed: settings.master_seed,
        alpha: settings.alpha,
    })
}

/// Exponential moving average: `s₀ = x₀`, `sᵢ = α·xᵢ + (1 − α)·sᵢ₋₁`.
pub fn ema_smooth(series: &[f64], alpha: f64) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::param("alpha", format!("must be in (0, 1], got {alpha}")));
    }
    let Some(&first) = series.first() else {
        return Err(Error::param("series", "cannot smooth an empty series"));
    };
    let mut out = Vec::with_capacity(series.len());
    let mut s = first;
    out.push(s);
    for &x in &series[1..] {
        s = alpha * x + (1.0 - alpha) * s;
        out.push(s);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction {
    /// Average of `(classical − ncbm) / classical`, in percent.
    pub pct: f64,
    pub included: usize,
    pub excluded: usize,
}

/// Pointwise relative reduction averaged over points where the classical
/// value exceeds [`METRIC_FLOOR`].
pub fn mean_reduction(classical: &[f64], ncbm: &[f64]) -> Result<Reduction> {
    if classical.len() != ncbm.len() {
        return Err(Error::param("ncbm", "series lengths differ"));
    }
    let mut sum = 0.0;
    let mut included = 0;
    for (&c, &n) in classical.iter().zip(ncbm) {
        if c > METRIC_FLOOR {
            sum += (c - n) / c;
            included += 1;
        }
    }
    if included == 0 {
        return Err(Error::UndefinedMetric(
            "every classical value is at or below the floor".into(),
        ));
    }
    Ok(Reduction {
        pct: 100.0 * sum / included as f64,
        included,
        excluded: classical.len() - included,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonMetrics {
    /// On the EMA-smoothed mean curves.
    pub mean_cost_reduction: Reduction,
    /// On the EMA-smoothed std curves.
    pub mean_std_reduction: Reduction,
    pub raw_cost_reduction: Option<Reduction>,
    pub raw_std_reduction: Option<Reduction>,
}

impl ComparisonMetrics {
    pub fn mean_cost_reduction_pct(&self) -> f64 {
        self.mean_cost_reduction.pct
    }

    pub fn mean_std_reduction_pct(&self) -> f64 {
        self.mean_std_reduction.pct
    }
}

pub fn comparison_metrics(result: &SweepResult) -> Result<ComparisonMetrics> {
    Ok(ComparisonMetrics {
        mean_cost_reduction: mean_reduction(&result.classical.mean_ema, &result.ncbm.mean_ema)?,
        mean_std_reduction: mean_reduction(&result.classical.std_ema, &result.ncbm.std_ema)?,
        raw_cost_reduction: mean_reduction(&result.classical.mean, &result.ncbm.mean).ok(),
        raw_std_reduction: mean_reduction(&result.classical.std, &result.ncbm.std).ok(),
    })
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.t_i.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for i in 0..self.t_i.len() {
            out.push_str(&csv_row(&[
                self.t_i[i],
                self.classical.mean[i],
                self.classical.std[i],
                self.ncbm.mean[i],
                self.ncbm.std[i],
                self.classical.mean_ema[i],
                self.classical.std_ema[i],
                self.ncbm.mean_ema[i],
                self.ncbm.std_ema[i],
            ]));
            out.push('\n');
        }
        out
    }

    /// Parses a sweep CSV. Replication count and seed are not stored in the
    /// file and come back as zero.
    pub fn from_csv(text: &str, alpha: f64) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some(CSV_HEADER) {
            return Err(Error::format("header", "unexpected sweep CSV header"));
        }
        let mut cols: [Vec<f64>; 9] = Default::default();
        for (n, line) in lines.enumerate() {
            let values: Vec<&str> = line.split(',').collect();
            if values.len() != 9 {
                return Err(Error::format("row", format!("line {}: expected 9 columns", n + 2)));
            }
            for (col, v) in cols.iter_mut().zip(values) {
                col.push(v.parse().map_err(|_| Error::format("row", format!("line {}: bad number {v:?}", n + 2)))?);
            }
        }
        let [t_i, cm, cs, nm, ns, cme, cse, nme, nse] = cols;
        Ok(Self {
            t_i,
            classical: PolicyStats { mean: cm, std: cs, mean_ema: cme, std_ema: cse },
            ncbm: PolicyStats { mean: nm, std: ns, mean_ema: nme, std_ema: nse },
            n_reps: 0,
            master_seed: 0,
            alpha,
        })
    }

    /// Grid value where the smoothed classical mean is smallest.
    pub fn classical_argmin(&self) -> (f64, f64) {
        argmin(&self.t_i, &self.classical.mean_ema)
    }

    pub fn summary_line(&self, metrics: &ComparisonMetrics) -> String {
        format!(
            "mean cost reduction: {}% ; mean std reduction: {}% (smoothed, alpha={}, {} of {} points)",
            fmt_g12(metrics.mean_cost_reduction.pct),
            fmt_g12(metrics.mean_std_reduction.pct),
            fmt_g12(self.alpha),
            metrics.mean_cost_reduction.included,
            self.t_i.len()
        )
    }
}

fn argmin(x: &[f64], y: &[f64]) -> (f64, f64) {
    let mut best = (f64::NAN, f64::INFINITY);
    for (&a, &b) in x.iter().zip(y) {
        if b < best.1 {
            best = (a, b);
        }
    }
    best
}
