//! Gamma-process degradation law.
//!
//! The degradation accumulated over `t` years since the last replacement is
//! gamma distributed with shape `a·t` and rate `b`. Sampling uses the
//! Marsaglia–Tsang squeeze method; shapes below one are boosted from a
//! `shape + 1` draw via the `U^(1/shape)` transformation.
//!
//! MATLAB's `gamrnd(shape, scale)` takes a scale parameter; here the rate `b`
//! is stored and `scale = 1/b`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaProcess {
    /// Shape growth per year.
    a: f64,
    /// Rate, in 1/degradation-unit.
    b: f64,
}

impl GammaProcess {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::param("a", format!("must be finite and > 0, got {a}")));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::param("b", format!("must be finite and > 0, got {b}")));
        }
        Ok(Self { a, b })
    }

    /// The process used throughout the experiments: `a = 10/9`, `b = 100/9`,
    /// i.e. mean degradation 0.1 per year.
    pub fn reference() -> Self {
        Self {
            a: 10.0 / 9.0,
            b: 100.0 / 9.0,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn shape_at(&self, t: f64) -> f64 {
        self.a * t
    }

    /// Mean degradation `a·t/b`; the deterministic "mean path".
    pub fn mean_at(&self, t: f64) -> f64 {
        self.a * t / self.b
    }

    /// `(a·t/b, a·t/b²)`.
    pub fn moments(&self, t: f64) -> Result<(f64, f64)> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::param("t", format!("must be >= 0, got {t}")));
        }
        Ok((self.a * t / self.b, self.a * t / (self.b * self.b)))
    }

    /// Density of the degradation level `x` after `t` years.
    pub fn pdf(&self, x: f64, t: f64) -> Result<f64> {
        gamma_pdf(x, self.shape_at(t), self.b)
    }

    /// One degradation draw after `tau` years without replacement.
    ///
    /// `tau == 0` is the point mass at zero.
    pub fn sample<R: Rng + ?Sized>(&self, tau: f64, rng: &mut R) -> Result<f64> {
        if tau.is_nan() || tau < 0.0 {
            return Err(Error::param("tau", format!("must be >= 0, got {tau}")));
        }
        if tau == 0.0 {
            return Ok(0.0);
        }
        Ok(sample_gamma(self.shape_at(tau), self.b, rng))
    }
}

pub fn gamma_moments(process: &GammaProcess, t: f64) -> Result<(f64, f64)> {
    process.moments(t)
}

pub fn sample_degradation<R: Rng + ?Sized>(
    process: &GammaProcess,
    tau: f64,
    rng: &mut R,
) -> Result<f64> {
    process.sample(tau, rng)
}

/// `rate^shape · x^(shape-1) · e^(-rate·x) / Γ(shape)`, evaluated in log space.
///
/// At `x = 0` the density is `0` for `shape > 1`, `rate` for `shape = 1` and
/// unbounded (`+inf`) for `shape < 1`.
pub fn gamma_pdf(x: f64, shape: f64, rate: f64) -> Result<f64> {
    if !(shape.is_finite() && shape > 0.0) {
        return Err(Error::param("shape", format!("must be > 0, got {shape}")));
    }
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::param("rate", format!("must be > 0, got {rate}")));
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::param("x", format!("must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(match shape.partial_cmp(&1.0) {
            Some(std::cmp::Ordering::Greater) => 0.0,
            Some(std::cmp::Ordering::Equal) => rate,
            _ => f64::INFINITY,
        });
    }
    let log_density = shape * rate.ln() + (shape - 1.0) * x.ln() - rate * x - ln_gamma(shape);
    Ok(log_density.exp())
}

/// Draws from Gamma(`shape`, `rate`). Both must be positive and finite.
pub fn sample_gamma<R: Rng + ?Sized>(shape: f64, rate: f64, rng: &mut R) -> f64 {
    debug_assert!(shape > 0.0 && rate > 0.0);
    if shape < 1.0 {
        let boosted = marsaglia_tsang(shape + 1.0, rng);
        let u: f64 = open01(rng);
        return boosted * (u.ln() / shape).exp() / rate;
    }
    marsaglia_tsang(shape, rng) / rate
}

// Unit-rate draw for shape >= 1.
fn marsaglia_tsang<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let z: f64 = rng.sample(StandardNormal);
        let t = 1.0 + c * z;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u: f64 = open01(rng);
        let z2 = z * z;
        if u < 1.0 - 0.0331 * z2 * z2 {
            return d * v;
        }
        if u.ln() < 0.5 * z2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

#[inline]
fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}
