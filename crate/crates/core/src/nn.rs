//! Feed-forward neural network primitives.
//!
//! The degradation estimator is a 1-H-1 network: one input (years since
//! replacement), `H` hidden neurons with a sigmoid or tanh activation, and a
//! linear output neuron. Inputs and targets are min-max mapped onto `[-1, 1]`
//! before the network sees them; training and gradients work in that
//! normalized space.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Threshold unit: `1` iff `Σ wᵢxᵢ > threshold`.
pub fn perceptron_output(inputs: &[f64], weights: &[f64], threshold: f64) -> Result<u8> {
    let sum = perceptron_weighted_sum(inputs, weights)?;
    Ok(u8::from(sum > threshold))
}

pub fn perceptron_weighted_sum(inputs: &[f64], weights: &[f64]) -> Result<f64> {
    if inputs.len() != weights.len() {
        return Err(Error::param(
            "weights",
            format!("length {} does not match {} inputs", weights.len(), inputs.len()),
        ));
    }
    Ok(inputs.iter().zip(weights).map(|(x, w)| x * w).sum())
}

/// Logistic function, branching on the sign of `z` so `exp` never overflows.
#[inline]
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

#[inline]
pub fn tanh_act(z: f64) -> f64 {
    z.tanh()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Sigmoid,
    #[default]
    Tanh,
}

impl Activation {
    #[inline]
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Sigmoid => sigmoid(z),
            Activation::Tanh => tanh_act(z),
        }
    }

    /// Derivative expressed through the activation output `o`.
    #[inline]
    pub fn derivative_from_output(self, o: f64) -> f64 {
        match self {
            Activation::Sigmoid => o * (1.0 - o),
            Activation::Tanh => 1.0 - o * o,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Activation::Sigmoid => "sigmoid",
            Activation::Tanh => "tanh",
        }
    }
}

impl std::str::FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigmoid" => Ok(Activation::Sigmoid),
            "tanh" => Ok(Activation::Tanh),
            other => Err(Error::param("activation", format!("unknown activation `{other}`"))),
        }
    }
}

/// Maps `[lo, hi]` onto `[-1, 1]`.
pub fn minmax_normalize(x: f64, lo: f64, hi: f64) -> Result<f64> {
    check_bounds("bounds", lo, hi)?;
    Ok(normalize_unchecked(x, lo, hi))
}

pub fn minmax_denormalize(y: f64, lo: f64, hi: f64) -> Result<f64> {
    check_bounds("bounds", lo, hi)?;
    Ok(denormalize_unchecked(y, lo, hi))
}

#[inline]
fn normalize_unchecked(x: f64, lo: f64, hi: f64) -> f64 {
    2.0 * (x - lo) / (hi - lo) - 1.0
}

#[inline]
fn denormalize_unchecked(y: f64, lo: f64, hi: f64) -> f64 {
    (y + 1.0) * (hi - lo) / 2.0 + lo
}

fn check_bounds(name: &'static str, lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::param(name, format!("bounds must be finite, got [{lo}, {hi}]")));
    }
    if lo >= hi {
        return Err(Error::param(name, format!("need lo < hi, got [{lo}, {hi}]")));
    }
    Ok(())
}

/// Min-max bounds for the input and the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBounds {
    pub in_min: f64,
    pub in_max: f64,
    pub out_min: f64,
    pub out_max: f64,
}

impl NormBounds {
    pub fn validate(&self) -> Result<()> {
        check_bounds("in_min/in_max", self.in_min, self.in_max)?;
        check_bounds("out_min/out_max", self.out_min, self.out_max)
    }
}

/// 1-H-1 regression network with linear output.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpModel {
    activation: Activation,
    /// Hidden weights, one per hidden neuron (H×1).
    w1: Vec<f64>,
    /// Hidden biases.
    b1: Vec<f64>,
    /// Output weights (1×H).
    w2: Vec<f64>,
    b2: f64,
    bounds: NormBounds,
}

impl MlpModel {
    /// Builds a model from explicit parameters, validating dimensions,
    /// bounds and finiteness.
    pub fn from_parts(
        activation: Activation,
        w1: Vec<f64>,
        b1: Vec<f64>,
        w2: Vec<f64>,
        b2: f64,
        bounds: NormBounds,
    ) -> Result<Self> {
        let h = w1.len();
        if h == 0 {
            return Err(Error::param("hidden", "need at least one hidden neuron"));
        }
        if b1.len() != h {
            return Err(Error::param("b1", format!("expected {h} entries, got {}", b1.len())));
        }
        if w2.len() != h {
            return Err(Error::param("w2", format!("expected {h} entries, got {}", w2.len())));
        }
        bounds.validate()?;
        let model = Self {
            activation,
            w1,
            b1,
            w2,
            b2,
            bounds,
        };
        if !model.is_finite() {
            return Err(Error::param("weights", "all parameters must be finite"));
        }
        Ok(model)
    }

    /// All weights and biases zero: the output is the target midpoint.
    pub fn zeros(hidden: usize, activation: Activation, bounds: NormBounds) -> Result<Self> {
        Self::from_parts(
            activation,
            vec![0.0; hidden],
            vec![0.0; hidden],
            vec![0.0; hidden],
            0.0,
            bounds,
        )
    }

    /// Weights and biases drawn uniformly from `[-0.5, 0.5]`.
    pub fn random<R: Rng + ?Sized>(
        hidden: usize,
        activation: Activation,
        bounds: NormBounds,
        rng: &mut R,
    ) -> Result<Self> {
        let mut draw = |n: usize| -> Vec<f64> {
            (0..n).map(|_| rng.random::<f64>() - 0.5).collect()
        };
        let w1 = draw(hidden);
        let b1 = draw(hidden);
        let w2 = draw(hidden);
        let b2 = draw(1)[0];
        Self::from_parts(activation, w1, b1, w2, b2, bounds)
    }

    pub fn hidden_size(&self) -> usize {
        self.w1.len()
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn hidden_weights(&self) -> &[f64] {
        &self.w1
    }

    pub fn hidden_biases(&self) -> &[f64] {
        &self.b1
    }

    pub fn output_weights(&self) -> &[f64] {
        &self.w2
    }

    pub fn output_bias(&self) -> f64 {
        self.b2
    }

    pub fn bounds(&self) -> NormBounds {
        self.bounds
    }

    pub fn is_finite(&self) -> bool {
        self.b2.is_finite()
            && self
                .w1
                .iter()
                .chain(&self.b1)
                .chain(&self.w2)
                .all(|v| v.is_finite())
    }

    pub fn normalize_input(&self, tau: f64) -> f64 {
        normalize_unchecked(tau, self.bounds.in_min, self.bounds.in_max)
    }

    pub fn normalize_target(&self, x: f64) -> f64 {
        normalize_unchecked(x, self.bounds.out_min, self.bounds.out_max)
    }

    pub fn denormalize_output(&self, y: f64) -> f64 {
        denormalize_unchecked(y, self.bounds.out_min, self.bounds.out_max)
    }

    /// Network output in normalized space.
    pub fn raw_forward(&self, z: f64) -> f64 {
        let mut y = self.b2;
        for j in 0..self.w1.len() {
            y += self.w2[j] * self.activation.apply(self.w1[j] * z + self.b1[j]);
        }
        y
    }

    /// Estimated degradation after `tau` years since replacement.
    ///
    /// Inputs outside the training range are still evaluated; their
    /// normalized value simply leaves `[-1, 1]`.
    pub fn forward(&self, tau: f64) -> f64 {
        self.denormalize_output(self.raw_forward(self.normalize_input(tau)))
    }

    /// Subtracts `learning_rate × gradient` from every parameter.
    pub fn apply_update(&self, gradient: &Gradient, learning_rate: f64) -> Result<MlpModel> {
        if !(learning_rate.is_finite() && learning_rate > 0.0) {
            return Err(Error::param(
                "learning_rate",
                format!("must be > 0, got {learning_rate}"),
            ));
        }
        if gradient.w1.len() != self.hidden_size() {
            return Err(Error::param("gradient", "dimension does not match model"));
        }
        let step = |p: &[f64], g: &[f64]| -> Vec<f64> {
            p.iter().zip(g).map(|(p, g)| p - learning_rate * g).collect()
        };
        Ok(MlpModel {
            activation: self.activation,
            w1: step(&self.w1, &gradient.w1),
            b1: step(&self.b1, &gradient.b1),
            w2: step(&self.w2, &gradient.w2),
            b2: self.b2 - learning_rate * gradient.b2,
            bounds: self.bounds,
        })
    }

    /// Parameters flattened as `[w1, b1, w2, b2]`.
    pub fn parameters(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(3 * self.hidden_size() + 1);
        p.extend_from_slice(&self.w1);
        p.extend_from_slice(&self.b1);
        p.extend_from_slice(&self.w2);
        p.push(self.b2);
        p
    }

    /// Inverse of [`MlpModel::parameters`].
    pub fn with_parameters(&self, params: &[f64]) -> Result<MlpModel> {
        let h = self.hidden_size();
        if params.len() != 3 * h + 1 {
            return Err(Error::param(
                "params",
                format!("expected {} values, got {}", 3 * h + 1, params.len()),
            ));
        }
        MlpModel::from_parts(
            self.activation,
            params[..h].to_vec(),
            params[h..2 * h].to_vec(),
            params[2 * h..3 * h].to_vec(),
            params[3 * h],
            self.bounds,
        )
    }
}

/// Gradient of the batch loss, shaped like the model parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

impl Gradient {
    pub fn zeros(hidden: usize) -> Self {
        Self {
            w1: vec![0.0; hidden],
            b1: vec![0.0; hidden],
            w2: vec![0.0; hidden],
            b2: 0.0,
        }
    }

    pub fn flatten(&self) -> Vec<f64> {
        let mut g = Vec::with_capacity(3 * self.w1.len() + 1);
        g.extend_from_slice(&self.w1);
        g.extend_from_slice(&self.b1);
        g.extend_from_slice(&self.w2);
        g.push(self.b2);
        g
    }

    pub fn norm(&self) -> f64 {
        self.flatten().iter().map(|g| g * g).sum::<f64>().sqrt()
    }
}

/// `½ Σ (d − o)²`.
pub fn sse(desired: &[f64], outputs: &[f64]) -> Result<f64> {
    check_lengths(desired, outputs)?;
    Ok(0.5 * squared_residuals(desired, outputs))
}

/// Mean of squared residuals.
pub fn mse(desired: &[f64], outputs: &[f64]) -> Result<f64> {
    check_lengths(desired, outputs)?;
    if desired.is_empty() {
        return Err(Error::param("desired", "mse of an empty vector is undefined"));
    }
    Ok(squared_residuals(desired, outputs) / desired.len() as f64)
}

fn squared_residuals(desired: &[f64], outputs: &[f64]) -> f64 {
    desired.iter().zip(outputs).map(|(d, o)| (d - o) * (d - o)).sum()
}

fn check_lengths(desired: &[f64], outputs: &[f64]) -> Result<()> {
    if desired.len() != outputs.len() {
        return Err(Error::param(
            "outputs",
            format!("length {} does not match {} desired values", outputs.len(), desired.len()),
        ));
    }
    Ok(())
}

/// Exact gradient of the normalized-space batch MSE, plus that MSE.
///
/// `batch` holds `(tau, target)` pairs in original units.
pub fn backprop_gradient(model: &MlpModel, batch: &[(f64, f64)]) -> Result<(Gradient, f64)> {
    if batch.is_empty() {
        return Err(Error::param("batch", "batch must be nonempty"));
    }
    let h = model.hidden_size();
    let n = batch.len() as f64;
    let mut grad = Gradient::zeros(h);
    let mut hidden_out = vec![0.0; h];
    let mut loss = 0.0;

    for &(tau, target) in batch {
        let z = model.normalize_input(tau);
        let t = model.normalize_target(target);

        // forward
        let mut y = model.b2;
        for j in 0..h {
            let o = model.activation.apply(model.w1[j] * z + model.b1[j]);
            hidden_out[j] = o;
            y += model.w2[j] * o;
        }
        let residual = y - t;
        loss += residual * residual;

        // backward: dL/dy for L = mean (y - t)^2
        let delta_out = 2.0 * residual / n;
        grad.b2 += delta_out;
        for j in 0..h {
            let o = hidden_out[j];
            grad.w2[j] += delta_out * o;
            let delta_hidden = delta_out * model.w2[j] * model.activation.derivative_from_output(o);
            grad.w1[j] += delta_hidden * z;
            grad.b1[j] += delta_hidden;
        }
    }
    Ok((grad, loss / n))
}

/// Normalized-space batch MSE without gradients.
pub fn batch_mse(model: &MlpModel, batch: &[(f64, f64)]) -> Result<f64> {
    if batch.is_empty() {
        return Err(Error::param("batch", "batch must be nonempty"));
    }
    let total: f64 = batch
        .iter()
        .map(|&(tau, target)| {
            let r = model.raw_forward(model.normalize_input(tau)) - model.normalize_target(target);
            r * r
        })
        .sum();
    Ok(total / batch.len() as f64)
}
