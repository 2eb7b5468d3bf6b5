//! Condition-based maintenance (CBM) on a gamma-process degradation model.
//!
//! Two inspection policies are simulated and compared over a sweep of
//! inspection intervals:
//!
//! * the classical statistical policy, which samples the degradation level at
//!   every inspection and applies preventive/failure thresholds, and
//! * the neural policy (N-CBM), which replaces the physical inspection with a
//!   small feed-forward regressor plus a risk margin.
//!
//! The crate is organised bottom-up:
//!
//! * [`rng`] and [`gamma`]: reproducible random streams and gamma sampling.
//! * [`nn`]: perceptron, activations, the 1-H-1 network and back-propagation.
//! * [`training`]: training-data generation, splitting, early-stopped training,
//!   risk margin and model files.
//! * [`sim`]: the two policy simulators and discounted cost-rate accounting.
//! * [`sweep`]: the inspection-interval sweep, EMA smoothing and metrics.
//! * [`config`], [`io`] and [`cli`]: run configuration, CSV/SVG output and the
//!   `ncbm` command-line entry points.

pub mod cli;
pub mod config;
pub mod error;
pub mod gamma;
pub mod io;
pub mod nn;
pub mod rng;
pub mod sim;
pub mod sweep;
pub mod training;

pub use error::{Error, Result};
pub use gamma::GammaProcess;
pub use nn::{Activation, MlpModel};
pub use rng::{derive_stream, RngStream};
pub use sim::{CostLedger, CostParams, NcbmSemantics, PolicyConfig, SimOutcome, Thresholds};
pub use sweep::{SweepGrid, SweepResult};
pub use training::{DegradationDataset, RiskMargin, TrainingConfig, TrainingRecord};
