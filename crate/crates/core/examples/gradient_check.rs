//! Compares back-propagated gradients with central finite differences on
//! random networks and batches.

use ncbm::nn::{backprop_gradient, batch_mse, Activation, MlpModel, NormBounds};
use ncbm::rng::derive_stream;
use rand::Rng;

fn main() -> ncbm::Result<()> {
    let bounds = NormBounds { in_min: 0.0, in_max: 30.0, out_min: 0.0, out_max: 3.0 };
    let h = 1e-6;
    for (trial, activation) in [Activation::Tanh, Activation::Sigmoid].into_iter().cycle().take(6).enumerate() {
        let mut rng = derive_stream(11, trial as u64, 0);
        let model = MlpModel::random(10, activation, bounds, &mut rng)?;
        let batch: Vec<(f64, f64)> = (0..8)
            .map(|_| (rng.random_range(0.0..30.0), rng.random_range(0.0..3.0)))
            .collect();
        let (grad, _) = backprop_gradient(&model, &batch)?;
        let params = model.parameters();
        let mut worst: f64 = 0.0;
        for (i, g) in grad.flatten().into_iter().enumerate() {
            let mut p = params.clone();
            p[i] += h;
            let up = batch_mse(&model.with_parameters(&p)?, &batch)?;
            p[i] -= 2.0 * h;
            let down = batch_mse(&model.with_parameters(&p)?, &batch)?;
            let fd = (up - down) / (2.0 * h);
            worst = worst.max((g - fd).abs() / g.abs().max(fd.abs()).max(1e-8));
        }
        println!("{:8} trial {trial}: max relative error {worst:.2e}", activation.name());
    }
    Ok(())
}
