//! Exponential convergence of both variants: ln(deviation) against N^{3/5}.

use cubic_vpt::bender_wu::ground_state_series;
use cubic_vpt::convergence::{fit_convergence, fit_convergence_even, ConvergenceFit};
use cubic_vpt::error::Result;
use cubic_vpt::vpt::{naive_b0_from, veff_b0, NaiveConfig, TrickSeries};

fn show(name: &str, f: &ConvergenceFit) {
    println!(
        "{name}: slope {:.3} ± {:.3}, intercept {:.3} ± {:.3} over {} points",
        f.slope,
        f.slope_stderr,
        f.intercept,
        f.intercept_stderr,
        f.points.len()
    );
}

fn main() -> Result<()> {
    let (_, eps) = ground_state_series(40)?;
    let cfg = NaiveConfig::default();
    let mut naive = Vec::new();
    for n in 1..=20 {
        naive.push((n, naive_b0_from(&TrickSeries::from_energy(&eps, n)?, &cfg)?.relative_deviation()));
    }
    show("plain, N = 1..20", &fit_convergence(&naive)?);
    show("plain, even N", &fit_convergence_even(&naive)?);

    let mut veff = Vec::new();
    for n in 1..=5 {
        veff.push((n, veff_b0(n)?.relative_deviation()));
    }
    show("effective potential, N = 1..5", &fit_convergence(&veff)?);
    Ok(())
}
