//! Draws degradation levels from the reference gamma process and compares
//! the sample moments with `a·t/b` and `a·t/b²`.

use ncbm::gamma::GammaProcess;
use ncbm::rng::derive_stream;

fn main() -> ncbm::Result<()> {
    let process = GammaProcess::reference();
    let mut rng = derive_stream(7, 0, 0);
    let n = 100_000;

    println!("   t    mean (sample / exact)    variance (sample / exact)");
    for t in [1.0, 5.0, 12.5, 20.0, 25.0] {
        let draws: Vec<f64> = (0..n)
            .map(|_| process.sample(t, &mut rng))
            .collect::<ncbm::Result<_>>()?;
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let (m, v) = process.moments(t)?;
        println!("{t:5.1}    {mean:.4} / {m:.4}          {var:.4} / {v:.4}");
    }

    // Density of X(20) on a coarse grid
    println!("\nf(x; t=20)");
    for i in 1..=8 {
        let x = 0.5 * i as f64;
        let bar = "#".repeat((process.pdf(x, 20.0)? * 40.0).round() as usize);
        println!("{x:4.1} {bar}");
    }
    Ok(())
}
