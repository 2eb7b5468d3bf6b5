//! Policy simulators and discounted cost-rate accounting.
//!
//! Both simulators walk the horizon in inspection intervals `T_I`. Inside
//! each interval, `K - 1` mid-interval checks at spacing `Δt = T_I / K` probe
//! for failures (a modelling device, never billed as an inspection). What
//! happens at the inspection point is where the policies differ:
//!
//! * classical: sample the degradation level, always bill the inspection,
//!   then replace on failure or on crossing the preventive level;
//! * neural: ask the estimator for the degradation level, add the risk
//!   margin and compare against the thresholds.
//!
//! Degradation observations are independent marginal draws
//! `Gamma(a·τ, b)` at each observation time unless `path_consistent` is set.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{sample_gamma, GammaProcess};
use crate::io::fmt_g12;
use crate::nn::MlpModel;
use crate::training::RiskMargin;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostParams {
    pub c_inspect: f64,
    pub c_prevent: f64,
    pub c_fail: f64,
    /// Continuous discount rate per year.
    pub discount_rate: f64,
}

impl Default for CostParams {
    fn default() -> Self {
        Self {
            c_inspect: 0.1,
            c_prevent: 1.0,
            c_fail: 10.0,
            discount_rate: 0.0,
        }
    }
}

impl CostParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("c_inspect", self.c_inspect),
            ("c_prevent", self.c_prevent),
            ("c_fail", self.c_fail),
            ("discount_rate", self.discount_rate),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::param(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        if !(self.c_fail >= self.c_prevent && self.c_prevent >= self.c_inspect) {
            log::warn!(
                "unusual cost ordering: c_fail={} c_prevent={} c_inspect={}",
                self.c_fail,
                self.c_prevent,
                self.c_inspect
            );
        }
        Ok(())
    }

    pub fn cost_of(&self, kind: EventKind) -> f64 {
        match kind {
            EventKind::Inspection => self.c_inspect,
            EventKind::Preventive => self.c_prevent,
            EventKind::Failure => self.c_fail,
        }
    }

    pub fn discount(&self, t: f64) -> f64 {
        (-self.discount_rate * t).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Preventive replacement level.
    pub x_pc: f64,
    /// Failure level.
    pub x_fc: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { x_pc: 2.0, x_fc: 3.09 }
    }
}

impl Thresholds {
    pub fn new(x_pc: f64, x_fc: f64) -> Result<Self> {
        let t = Self { x_pc, x_fc };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_pc.is_finite() && self.x_pc > 0.0) {
            return Err(Error::param("x_pc", format!("must be > 0, got {}", self.x_pc)));
        }
        if !(self.x_fc.is_finite() && self.x_fc > self.x_pc) {
            return Err(Error::param(
                "x_fc",
                format!("must exceed x_pc = {}, got {}", self.x_pc, self.x_fc),
            ));
        }
        Ok(())
    }
}

/// How the neural policy bills an inspection point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NcbmSemantics {
    /// Inspection and preventive are billed together, only when
    /// `estimate + margin >= x_fc`; nothing is billed otherwise.
    #[default]
    Code,
    /// Inspection always billed, then the three-region threshold rule on
    /// `estimate + margin`.
    Prose,
}

impl std::str::FromStr for NcbmSemantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "code" => Ok(NcbmSemantics::Code),
            "prose" => Ok(NcbmSemantics::Prose),
            other => Err(Error::param(
                "ncbm_semantics",
                format!("expected `code` or `prose`, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyConfig {
    pub horizon: f64,
    pub inspection_interval: f64,
    pub mid_checks: u32,
    pub process: GammaProcess,
    pub costs: CostParams,
    pub thresholds: Thresholds,
    /// Replace every sampled observation with the mean path `a·τ/b`.
    pub deterministic: bool,
    /// Observe one consistent path (sum of independent increments) instead
    /// of independent marginal draws.
    pub path_consistent: bool,
    pub ncbm_semantics: NcbmSemantics,
}

impl Default for PolicyConfig {
    fn default() -> Self {
        Self {
            horizon: 50.0,
            inspection_interval: 25.0,
            mid_checks: 2,
            process: GammaProcess::reference(),
            costs: CostParams::default(),
            thresholds: Thresholds::default(),
            deterministic: false,
            path_consistent: false,
            ncbm_semantics: NcbmSemantics::Code,
        }
    }
}

impl PolicyConfig {
    pub fn with_interval(&self, inspection_interval: f64) -> Self {
        Self {
            inspection_interval,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(Error::param("t_horizon", format!("must be > 0, got {}", self.horizon)));
        }
        if !(self.inspection_interval.is_finite() && self.inspection_interval > 0.0) {
            return Err(Error::param(
                "t_i",
                format!("must be > 0, got {}", self.inspection_interval),
            ));
        }
        if self.mid_checks < 1 {
            return Err(Error::param("k_checks", "must be >= 1"));
        }
        self.costs.validate()?;
        self.thresholds.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Inspection,
    Preventive,
    Failure,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Inspection => "inspection",
            EventKind::Preventive => "preventive",
            EventKind::Failure => "failure",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerEvent {
    pub kind: EventKind,
    pub time: f64,
}

/// Billable events in the order they occurred.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CostLedger {
    events: Vec<LedgerEvent>,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_events(events: Vec<LedgerEvent>) -> Self {
        Self { events }
    }

    pub fn record(&mut self, kind: EventKind, time: f64) {
        debug_assert!(self.events.last().is_none_or(|e| e.time <= time));
        self.events.push(LedgerEvent { kind, time });
    }

    pub fn events(&self) -> &[LedgerEvent] {
        &self.events
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn times(&self, kind: EventKind) -> impl Iterator<Item = f64> + '_ {
        self.events.iter().filter(move |e| e.kind == kind).map(|e| e.time)
    }

    pub fn count(&self, kind: EventKind) -> usize {
        self.times(kind).count()
    }

    pub fn inspection_times(&self) -> Vec<f64> {
        self.times(EventKind::Inspection).collect()
    }

    pub fn preventive_times(&self) -> Vec<f64> {
        self.times(EventKind::Preventive).collect()
    }

    pub fn failure_times(&self) -> Vec<f64> {
        self.times(EventKind::Failure).collect()
    }

    /// CSV with header `event_type,time,discounted_cost`, in event order.
    pub fn to_csv(&self, costs: &CostParams) -> String {
        let mut out = String::from("event_type,time,discounted_cost\n");
        for e in &self.events {
            let cost = costs.cost_of(e.kind) * costs.discount(e.time);
            out.push_str(&format!("{},{},{}\n", e.kind, fmt_g12(e.time), fmt_g12(cost)));
        }
        out
    }
}

/// Total discounted cost divided by the horizon.
///
/// Each cost type is factored out of its discount sum, so with a zero
/// discount rate the result is exactly `(C_I·n + C_P·n_P + C_F·n_F) / T`.
pub fn cost_rate_from_ledger(ledger: &CostLedger, costs: &CostParams, horizon: f64) -> f64 {
    // fold from +0.0: an empty f64 sum is -0.0, which would print as "-0"
    let discounted = |kind| ledger.times(kind).map(|t| costs.discount(t)).fold(0.0, |acc, d| acc + d);
    let total = costs.c_inspect * discounted(EventKind::Inspection)
        + costs.c_prevent * discounted(EventKind::Preventive)
        + costs.c_fail * discounted(EventKind::Failure);
    total / horizon
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub cost_rate: f64,
    pub ledger: CostLedger,
}

impl SimOutcome {
    fn from_ledger(ledger: CostLedger, config: &PolicyConfig) -> Self {
        Self {
            cost_rate: cost_rate_from_ledger(&ledger, &config.costs, config.horizon),
            ledger,
        }
    }
}

/// Anything that maps years-since-replacement to an estimated degradation level.
pub trait DegradationEstimator: Sync {
    fn estimate(&self, tau: f64) -> f64;
}

impl DegradationEstimator for MlpModel {
    fn estimate(&self, tau: f64) -> f64 {
        self.forward(tau)
    }
}

/// Wraps a closure as an estimator.
pub struct FnEstimator<F>(pub F);

impl<F: Fn(f64) -> f64 + Sync> DegradationEstimator for FnEstimator<F> {
    fn estimate(&self, tau: f64) -> f64 {
        (self.0)(tau)
    }
}

/// Source of degradation observations for one simulated component.
struct Observer<'a> {
    process: &'a GammaProcess,
    mode: ObservationMode,
    // path-consistent state: level at `last_time`
    level: f64,
    last_time: f64,
}

#[derive(Clone, Copy)]
enum ObservationMode {
    Marginal,
    MeanPath,
    Path,
}

impl<'a> Observer<'a> {
    fn new(config: &'a PolicyConfig) -> Self {
        let mode = if config.deterministic {
            ObservationMode::MeanPath
        } else if config.path_consistent {
            ObservationMode::Path
        } else {
            ObservationMode::Marginal
        };
        Self {
            process: &config.process,
            mode,
            level: 0.0,
            last_time: 0.0,
        }
    }

    /// Degradation at absolute time `t`, last replaced at `replaced_at`.
    fn observe<R: Rng + ?Sized>(&mut self, t: f64, replaced_at: f64, rng: &mut R) -> f64 {
        let tau = t - replaced_at;
        match self.mode {
            ObservationMode::MeanPath => self.process.mean_at(tau),
            ObservationMode::Marginal => draw(self.process, tau, rng),
            ObservationMode::Path => {
                let from = self.last_time.max(replaced_at);
                if replaced_at > self.last_time {
                    self.level = 0.0;
                }
                self.level += draw(self.process, t - from, rng);
                self.last_time = t;
                self.level
            }
        }
    }

    fn replaced(&mut self, t: f64) {
        self.level = 0.0;
        self.last_time = t;
    }
}

#[inline]
fn draw<R: Rng + ?Sized>(process: &GammaProcess, tau: f64, rng: &mut R) -> f64 {
    if tau <= 0.0 {
        0.0
    } else {
        sample_gamma(process.shape_at(tau), process.b(), rng)
    }
}

/// Walks the horizon, running the mid-interval failure checks, and hands
/// each inspection point to `inspect`. Returns the ledger.
fn run_policy<R, I>(config: &PolicyConfig, rng: &mut R, mut inspect: I) -> Result<CostLedger>
where
    R: Rng + ?Sized,
    I: FnMut(f64, f64, &mut Observer<'_>, &mut R, &mut CostLedger) -> bool,
{
    config.validate()?;
    let ti_step = config.inspection_interval;
    let k_total = config.mid_checks;
    let dt = ti_step / k_total as f64;
    let x_fc = config.thresholds.x_fc;

    let mut ledger = CostLedger::new();
    let mut observer = Observer::new(config);
    let mut replaced_at = 0.0;
    let mut i: u64 = 1;
    while (i as f64) * ti_step < config.horizon {
        let t_i = i as f64 * ti_step;
        let interval_start = (i - 1) as f64 * ti_step;

        // Mid-interval checks. A horizon abort before the last check skips
        // the inspection at t_i.
        let mut inspect_now = true;
        for k in 1..k_total {
            let c = interval_start + k as f64 * dt;
            let x = observer.observe(c, replaced_at, rng);
            if x >= x_fc {
                ledger.record(EventKind::Failure, c);
                replaced_at = c;
                observer.replaced(c);
            }
            if c >= config.horizon {
                inspect_now = k == k_total - 1;
                break;
            }
        }

        if inspect_now && inspect(t_i, t_i - replaced_at, &mut observer, rng, &mut ledger) {
            replaced_at = t_i;
            observer.replaced(t_i);
        }
        i += 1;
    }
    Ok(ledger)
}

/// Classical statistical CBM: sample at every inspection and apply the
/// threshold rules.
pub fn simulate_classical<R: Rng + ?Sized>(config: &PolicyConfig, rng: &mut R) -> Result<SimOutcome> {
    let th = config.thresholds;
    let ledger = run_policy(config, rng, |t_i, tau, observer, rng, ledger| {
        let x = observer.observe(t_i, t_i - tau, rng);
        ledger.record(EventKind::Inspection, t_i);
        if x >= th.x_fc {
            ledger.record(EventKind::Failure, t_i);
            true
        } else if x >= th.x_pc {
            ledger.record(EventKind::Preventive, t_i);
            true
        } else {
            false
        }
    })?;
    Ok(SimOutcome::from_ledger(ledger, config))
}

/// Neural CBM: the estimator plus risk margin stands in for the physical
/// inspection. Mid-interval failure checks still use real draws.
pub fn simulate_ncbm<R, E>(
    config: &PolicyConfig,
    estimator: &E,
    margin: RiskMargin,
    rng: &mut R,
) -> Result<SimOutcome>
where
    R: Rng + ?Sized,
    E: DegradationEstimator + ?Sized,
{
    let th = config.thresholds;
    let semantics = config.ncbm_semantics;
    let ledger = run_policy(config, rng, |t_i, tau, _observer, _rng, ledger| {
        let predicted = estimator.estimate(tau) + margin.err;
        match semantics {
            NcbmSemantics::Code => {
                if predicted >= th.x_fc {
                    ledger.record(EventKind::Inspection, t_i);
                    ledger.record(EventKind::Preventive, t_i);
                    true
                } else {
                    false
                }
            }
            NcbmSemantics::Prose => {
                ledger.record(EventKind::Inspection, t_i);
                if predicted >= th.x_fc {
                    ledger.record(EventKind::Failure, t_i);
                    true
                } else if predicted >= th.x_pc {
                    ledger.record(EventKind::Preventive, t_i);
                    true
                } else {
                    false
                }
            }
        }
    })?;
    Ok(SimOutcome::from_ledger(ledger, config))
}
