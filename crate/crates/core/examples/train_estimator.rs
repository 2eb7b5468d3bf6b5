//! Generates the degradation dataset, trains the 1-10-1 estimator with early
//! stopping and reports the fit, the risk margin and the learning curve.
//!
//! ```text
//! cargo run --release --example train_estimator [model.json]
//! ```

use ncbm::config::RunConfig;
use ncbm::training::save_model;

fn main() -> ncbm::Result<()> {
    let cfg = RunConfig::default();
    let process = cfg.process()?;
    let data = cfg.generate_dataset()?;
    let fitted = cfg.fit(&data)?;
    let rec = &fitted.record;

    println!("{} records, {} epochs, best epoch {}", data.len(), rec.epochs(), rec.best_epoch);
    for e in (0..rec.epochs()).step_by((rec.epochs() / 8).max(1)) {
        println!(
            "  epoch {e:4}  train {:.5}  val {:.5}  test {:.5}  |grad| {:.2e}",
            rec.train_mse[e], rec.val_mse[e], rec.test_mse[e], rec.grad_norm[e]
        );
    }
    println!("risk margin err = {:.4}", fitted.margin.err);

    println!("\n  tau   x_hat   x_hat+err   E[X(tau)]");
    for tau in [2.5, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0] {
        let x = fitted.model.forward(tau);
        println!("{tau:5.1}  {x:6.3}  {:9.3}  {:9.3}", x + fitted.margin.err, process.mean_at(tau));
    }

    if let Some(path) = std::env::args().nth(1) {
        save_model(&fitted.model, fitted.margin, path.as_ref())?;
        println!("model written to {path}");
    }
    Ok(())
}
