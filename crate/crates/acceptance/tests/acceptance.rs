//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fail.

use std::time::Instant;

use ncbm::config::{Preset, RunConfig, INIT_STREAM};
use ncbm::gamma::GammaProcess;
use ncbm::nn::{backprop_gradient, batch_mse, perceptron_output, perceptron_weighted_sum, Activation, MlpModel, NormBounds};
use ncbm::rng::derive_stream;
use ncbm::sim::{
    cost_rate_from_ledger, simulate_classical, simulate_ncbm, CostParams, EventKind, FnEstimator, NcbmSemantics,
    PolicyConfig,
};
use ncbm::sweep::{comparison_metrics, mean_std, run_sweep, SweepResult};
use ncbm::training::{train_model, DegradationDataset, RiskMargin, TrainingConfig};
use rand::Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn gamma_moments() -> Verdict {
    let p = GammaProcess::reference();
    let t = 20.0;
    let (em, ev) = (p.a() * t / p.b(), p.a() * t / (p.b() * p.b()));
    let mut rng = derive_stream(1, 0, 0);
    let n = 100_000;
    let xs: Vec<f64> = (0..n).map(|_| p.sample(t, &mut rng).unwrap()).collect();
    let m = xs.iter().sum::<f64>() / n as f64;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64;
    verdict(
        within(m, em, 0.02) && within(v, ev, 0.1 * ev),
        format!("mean {m:.4} (exact {em:.4} +- 0.02), variance {v:.4} (exact {ev:.4} +- 10%)"),
    )
}

fn gradient_check() -> Verdict {
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for trial in 0..100u64 {
        let mut rng = derive_stream(2, trial, 0);
        let hidden = rng.random_range(1..=12);
        let activation = if trial % 2 == 0 { Activation::Tanh } else { Activation::Sigmoid };
        let bounds = NormBounds { in_min: 0.1, in_max: 16.0, out_min: 0.0, out_max: 2.1 };
        let model = MlpModel::random(hidden, activation, bounds, &mut rng).unwrap();
        let batch: Vec<(f64, f64)> = (0..8).map(|_| (rng.random_range(0.0..30.0), rng.random_range(0.0..3.0))).collect();
        let (grad, _) = backprop_gradient(&model, &batch).unwrap();
        let params = model.parameters();
        for (i, g) in grad.flatten().into_iter().enumerate() {
            let mut p = params.clone();
            p[i] += h;
            let up = batch_mse(&model.with_parameters(&p).unwrap(), &batch).unwrap();
            p[i] -= 2.0 * h;
            let down = batch_mse(&model.with_parameters(&p).unwrap(), &batch).unwrap();
            let fd = (up - down) / (2.0 * h);
            // absolute floor keeps round-off in near-zero components out of the ratio
            worst = worst.max((g - fd).abs() / g.abs().max(fd.abs()).max(1e-6));
        }
    }
    verdict(worst < 1e-4, format!("max relative error {worst:.2e} over 100 model/batch pairs (limit 1e-4)"))
}

fn perceptron() -> Verdict {
    let w = [1.5, 0.85, 2.0];
    let a = [1.0, 1.0, 1.0];
    let b = [1.0, 0.0, 0.0];
    let (sa, sb) = (perceptron_weighted_sum(&a, &w).unwrap(), perceptron_weighted_sum(&b, &w).unwrap());
    let (oa, ob) = (perceptron_output(&a, &w, 2.7).unwrap(), perceptron_output(&b, &w, 2.7).unwrap());
    verdict(
        sa == 4.35 && sb == 1.5 && oa == 1 && ob == 0,
        format!("sums {sa} and {sb}, outputs {oa} and {ob}"),
    )
}

fn training_sanity() -> Verdict {
    let cfg = RunConfig::default();

    let noiseless =
        DegradationDataset::from_records((1..=300).map(|i| (i as f64 * 0.1, 0.01 * i as f64)).collect()).unwrap();
    let fit = cfg.fit(&noiseless).unwrap();
    let train_mse = fit.record.train_mse[fit.record.best_epoch];
    let noiseless_ok = train_mse < 1e-4;

    let data = cfg.generate_dataset().unwrap();
    let fit_ref = cfg.fit(&data).unwrap();
    let process = cfg.process().unwrap();
    let test = &fit_ref.splits.test;
    let floor = test
        .iter()
        .map(|&i| {
            let tau = data.records()[i].0;
            process.a() * tau / (process.b() * process.b())
        })
        .sum::<f64>()
        / test.len() as f64;
    let test_mse = fit_ref.record.test_mse[fit_ref.record.best_epoch];
    let ratio = test_mse / floor;
    let ratio_ok = (0.5..=2.0).contains(&ratio);

    // same noiseless data with unbounded patience, for the record
    let long = TrainingConfig { patience: usize::MAX, max_epochs: 20_000, ..cfg.training_config() };
    let splits = &fit.splits;
    let (_, rec) = train_model(&noiseless, splits, &long, &mut derive_stream(cfg.seed, INIT_STREAM, 0)).unwrap();
    let long_mse = rec.train_mse[rec.best_epoch];

    verdict(
        noiseless_ok && ratio_ok,
        format!(
            "noiseless train MSE {train_mse:.3e} after {} epochs (limit 1e-4; {long_mse:.3e} with patience disabled, \
             best epoch {}); reference test MSE {test_mse:.4} vs noise floor {floor:.4}, ratio {ratio:.2} (band 0.5-2)",
            fit.record.epochs(),
            rec.best_epoch
        ),
    )
}

struct DeskSweeps {
    undiscounted: SweepResult,
    discounted: SweepResult,
    elapsed: f64,
}

fn desk_sweeps() -> DeskSweeps {
    let t0 = Instant::now();
    let mut cfg = RunConfig::default();
    cfg.apply_preset(Preset::Desk);
    let data = cfg.generate_dataset().unwrap();
    let fit = cfg.fit(&data).unwrap();
    let sweep = |gamma: f64| {
        let run = RunConfig { discount_rate: gamma, ..cfg.clone() };
        run_sweep(&run.grid(), &run.policy_config().unwrap(), &fit.model, fit.margin, &run.sweep_settings()).unwrap()
    };
    DeskSweeps {
        undiscounted: sweep(0.0),
        discounted: sweep(0.05),
        elapsed: t0.elapsed().as_secs_f64(),
    }
}

fn classical_minimum(s: &DeskSweeps) -> Verdict {
    let r = &s.undiscounted;
    let (t, c) = r.classical_argmin();
    let i25 = r.t_i.iter().position(|&t| (t - 25.0).abs() < 1e-9).unwrap();
    verdict(
        within(t, 25.0, 2.0) && within(c, 0.022, 0.2 * 0.022),
        format!(
            "smoothed argmin T_I = {t} with value {c:.4} (target 25 +- 2 and 0.022 +- 20%); raw mean at 25 is {:.4}",
            r.classical.mean[i25]
        ),
    )
}

fn ncbm_flat_region(s: &DeskSweeps) -> Verdict {
    let r = &s.undiscounted;
    let in_band: Vec<usize> = (0..r.t_i.len()).filter(|&i| r.t_i[i] >= 25.0 - 1e-9 && r.t_i[i] <= 40.0 + 1e-9).collect();
    let range = |v: &[f64]| {
        in_band.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| (lo.min(v[i]), hi.max(v[i])))
    };
    let (lo, hi) = range(&r.ncbm.mean_ema);
    let (raw_lo, raw_hi) = range(&r.ncbm.mean);
    verdict(
        lo >= 0.016 && hi <= 0.028,
        format!("smoothed N-CBM over [25, 40] spans [{lo:.4}, {hi:.4}] (band [0.016, 0.028]); raw spans [{raw_lo:.4}, {raw_hi:.4}]"),
    )
}

fn cost_reduction(r: &SweepResult, floor: f64, reference: f64) -> Verdict {
    let m = comparison_metrics(r).unwrap();
    let pct = m.mean_cost_reduction_pct();
    let raw = m.raw_cost_reduction.map_or(f64::NAN, |x| x.pct);
    verdict(
        pct >= floor,
        format!("{pct:.2}% smoothed (floor {floor}%, reference {reference}%, gap {:+.2}); {raw:.2}% unsmoothed", pct - reference),
    )
}

fn stability(s: &DeskSweeps) -> Verdict {
    let a = comparison_metrics(&s.undiscounted).unwrap().mean_std_reduction_pct();
    let b = comparison_metrics(&s.discounted).unwrap().mean_std_reduction_pct();
    verdict(
        a >= 60.0 && b >= 50.0,
        format!(
            "std reduction {a:.2}% at gamma 0 (floor 60, reference 81.29) and {b:.2}% at gamma 0.05 (floor 50, reference 73.02)"
        ),
    )
}

fn determinism() -> Verdict {
    let dir = tempfile::TempDir::new().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let cli = |args: &[&str]| {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = ncbm::cli::run(std::iter::once("ncbm").chain(args.iter().copied()), &mut out, &mut err);
        assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    };
    cli(&["gen-data", "--out", &path("data.csv")]);
    cli(&["train", "--data", &path("data.csv"), "--model-out", &path("model.json")]);
    let runs = [("a", "1"), ("b", "1"), ("c", "8")];
    for (name, workers) in runs {
        cli(&["--preset", "desk", "--seed", "31", "--workers", workers, "sweep", "--model", &path("model.json"), "--out-prefix", &path(name)]);
    }
    let read = |n: &str| std::fs::read(path(&format!("{n}.csv"))).unwrap();
    let (a, b, c) = (read("a"), read("b"), read("c"));
    verdict(
        a == b && a == c,
        format!("rerun identical: {}, 1 vs 8 workers identical: {} ({} bytes)", a == b, a == c, a.len()),
    )
}

fn ledger_equivalence() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut exact_misses = 0;
    let estimator = FnEstimator(|tau: f64| 0.1 * tau);
    for n in 0..1000u64 {
        let mut rng = derive_stream(11, n, 0);
        let gamma = if n % 2 == 0 { 0.0 } else { rng.random_range(0.0..0.2) };
        let cfg = PolicyConfig {
            inspection_interval: rng.random_range(0.5..50.0),
            mid_checks: rng.random_range(1..=4),
            costs: CostParams { discount_rate: gamma, ..CostParams::default() },
            ncbm_semantics: if n % 3 == 0 { NcbmSemantics::Prose } else { NcbmSemantics::Code },
            ..PolicyConfig::default()
        };
        let out = if n % 4 < 2 {
            simulate_classical(&cfg, &mut rng).unwrap()
        } else {
            simulate_ncbm(&cfg, &estimator, RiskMargin { err: rng.random_range(0.0..1.5) }, &mut rng).unwrap()
        };
        worst = worst.max((out.cost_rate - cost_rate_from_ledger(&out.ledger, &cfg.costs, cfg.horizon)).abs());
        if gamma == 0.0 {
            let count = |k| out.ledger.count(k) as f64;
            let formula =
                (0.1 * count(EventKind::Inspection) + count(EventKind::Preventive) + 10.0 * count(EventKind::Failure)) / 50.0;
            if out.cost_rate != formula {
                exact_misses += 1;
            }
        }
    }
    verdict(
        worst <= 1e-12 && exact_misses == 0,
        format!("max |reported - recomputed| = {worst:.1e}; undiscounted formula mismatches: {exact_misses} of 500"),
    )
}

fn deterministic_traces() -> Verdict {
    let cfg = PolicyConfig { deterministic: true, ..PolicyConfig::default() }.with_interval(25.0);
    let out = simulate_classical(&cfg, &mut derive_stream(0, 0, 0)).unwrap();
    let events: Vec<(EventKind, f64)> = out.ledger.events().iter().map(|e| (e.kind, e.time)).collect();
    let trace_ok = events == [(EventKind::Inspection, 25.0), (EventKind::Preventive, 25.0)]
        && within(out.cost_rate, 0.022, 1e-12);

    let zero = FnEstimator(|_: f64| 0.0);
    let base = PolicyConfig::default().with_interval(25.0);
    let rates: Vec<f64> = (0..1000)
        .map(|r| simulate_ncbm(&base, &zero, RiskMargin { err: 0.0 }, &mut derive_stream(12, 0, r)).unwrap().cost_rate)
        .collect();
    let (mean, _) = mean_std(&rates);
    verdict(
        trace_ok && mean < 0.02,
        format!("trace {events:?} at cost rate {}; zero-estimator N-CBM mean {mean:.5} (limit 0.02)", out.cost_rate),
    )
}

fn main() {
    let t0 = Instant::now();
    let desk = desk_sweeps();
    let results: Vec<(&str, Verdict)> = vec![
        ("gamma sampler moments", gamma_moments()),
        ("gradient correctness", gradient_check()),
        ("perceptron worked example", perceptron()),
        ("training sanity", training_sanity()),
        ("classical cost-rate minimum", classical_minimum(&desk)),
        ("N-CBM flat region", ncbm_flat_region(&desk)),
        ("cost reduction, gamma 0", cost_reduction(&desk.undiscounted, 55.0, 73.47)),
        ("cost reduction, gamma 0.05", cost_reduction(&desk.discounted, 50.0, 66.7)),
        ("stability", stability(&desk)),
        ("determinism", determinism()),
        ("ledger/formula equivalence", ledger_equivalence()),
        ("deterministic traces", deterministic_traces()),
    ];
    println!();
    for (i, (name, v)) in results.iter().enumerate() {
        println!("{} {:2}. {name}: {}", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    let failed = results.iter().filter(|(_, v)| !v.pass).count();
    println!(
        "\n{} of {} criteria passed (desk sweeps {:.1}s, total {:.1}s)",
        results.len() - failed,
        results.len(),
        desk.elapsed,
        t0.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
