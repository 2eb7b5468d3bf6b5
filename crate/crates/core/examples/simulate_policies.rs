//! Single runs of both maintenance policies at one inspection interval,
//! with their event ledgers, plus Monte Carlo averages.

use ncbm::config::RunConfig;
use ncbm::io::fmt_g12;
use ncbm::rng::derive_stream;
use ncbm::sim::{simulate_classical, simulate_ncbm, FnEstimator};
use ncbm::training::RiskMargin;

fn main() -> ncbm::Result<()> {
    let cfg = RunConfig::default();
    let base = cfg.policy_config()?;
    let policy = base.with_interval(25.0);

    // Mean-path trace: inspection and preventive replacement at 25 years.
    let det = ncbm::sim::PolicyConfig { deterministic: true, ..policy.clone() };
    let out = simulate_classical(&det, &mut derive_stream(1, 0, 0))?;
    println!("deterministic classical, T_I = 25: cost rate {}", fmt_g12(out.cost_rate));
    print!("{}", out.ledger.to_csv(&policy.costs));

    // A stand-in estimator that knows the mean path.
    let process = policy.process;
    let estimator = FnEstimator(move |tau: f64| process.mean_at(tau));
    let margin = RiskMargin { err: 0.9 };

    let mut rng = cfg.simulate_stream();
    let one = simulate_ncbm(&policy, &estimator, margin, &mut rng)?;
    println!("\none N-CBM run, T_I = 25: cost rate {}", fmt_g12(one.cost_rate));
    print!("{}", one.ledger.to_csv(&policy.costs));

    println!("\n  T_I   classical   N-CBM   (mean of 2000 runs)");
    for t_i in [5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 40.0] {
        let p = base.with_interval(t_i);
        let n = 2000;
        let (mut c, mut m) = (0.0, 0.0);
        for r in 0..n {
            let stream = derive_stream(cfg.seed, 0, r);
            c += simulate_classical(&p, &mut stream.clone())?.cost_rate;
            m += simulate_ncbm(&p, &estimator, margin, &mut stream.clone())?.cost_rate;
        }
        println!("{t_i:5.1}  {:9.4}  {:7.4}", c / n as f64, m / n as f64);
    }
    Ok(())
}
