//! Desk-scale inspection-interval sweep of both policies, with and without
//! discounting.
//!
//! ```text
//! cargo run --release --example sweep_comparison [seed]
//! ```
//!
//! Every fifth grid point is printed; set `ALL=1` to print all of them.

use ncbm::config::{Preset, RunConfig};
use ncbm::io::fmt_g12;
use ncbm::sweep::{comparison_metrics, run_sweep};

fn main() -> ncbm::Result<()> {
    let seed = std::env::args().nth(1).map_or(2014, |s| s.parse().expect("seed"));
    let mut cfg = RunConfig { seed, ..RunConfig::default() };
    cfg.apply_preset(Preset::Desk);

    let data = cfg.generate_dataset()?;
    let fitted = cfg.fit(&data)?;
    println!(
        "estimator: {} epochs, risk margin {}, x(25) = {}",
        fitted.record.epochs(),
        fmt_g12(fitted.margin.err),
        fmt_g12(fitted.model.forward(25.0))
    );

    for gamma in [0.0, 0.05] {
        let run = RunConfig { discount_rate: gamma, ..cfg.clone() };
        let t0 = std::time::Instant::now();
        let result = run_sweep(
            &run.grid(),
            &run.policy_config()?,
            &fitted.model,
            fitted.margin,
            &run.sweep_settings(),
        )?;
        let metrics = comparison_metrics(&result)?;
        let (t_best, c_best) = result.classical_argmin();
        println!("\ngamma = {gamma} ({:.1?})", t0.elapsed());
        println!("  classical smoothed minimum {} at T_I = {}", fmt_g12(c_best), fmt_g12(t_best));
        println!("  {}", result.summary_line(&metrics));
        println!("   T_I   classical (raw, smoothed)   N-CBM (raw, smoothed)");
        for (i, t) in result.t_i.iter().enumerate() {
            if std::env::var_os("ALL").is_some() || (t * 2.0).round() as i64 % 10 == 0 {
                println!(
                    "  {t:5.1}  {:9.4} {:9.4}          {:9.4} {:9.4}",
                    result.classical.mean[i],
                    result.classical.mean_ema[i],
                    result.ncbm.mean[i],
                    result.ncbm.mean_ema[i]
                );
            }
        }
    }
    Ok(())
}
