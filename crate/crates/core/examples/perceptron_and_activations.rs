//! The threshold perceptron, the two hidden activations and min-max scaling.

use ncbm::nn::{minmax_denormalize, minmax_normalize, perceptron_output, perceptron_weighted_sum, sigmoid, tanh_act};

fn main() -> ncbm::Result<()> {
    let weights = [1.5, 0.85, 2.0];
    let threshold = 2.7;
    for inputs in [[1.0, 1.0, 1.0], [1.0, 0.0, 0.0]] {
        println!(
            "inputs {inputs:?}: sum {} -> output {}",
            perceptron_weighted_sum(&inputs, &weights)?,
            perceptron_output(&inputs, &weights, threshold)?
        );
    }

    println!("\n     z    sigmoid      tanh");
    for z in [-1e6, -5.0, -1.0, 0.0, 1.0, 5.0, 1e6] {
        println!("{z:>8} {:10.6} {:9.6}", sigmoid(z), tanh_act(z));
    }

    let (lo, hi) = (0.1, 15.8);
    for x in [lo, 8.0, hi, 25.0] {
        let y = minmax_normalize(x, lo, hi)?;
        println!("tau {x:5.1} -> {y:+.4} -> {:.4}", minmax_denormalize(y, lo, hi)?);
    }
    Ok(())
}
