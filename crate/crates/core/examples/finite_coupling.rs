//! Effective-potential VPT at finite coupling, next to the truncated weak-
//! coupling series and the large-coupling expansion of the first order.
//!
//! Below g ≈ 0.5 the low orders lock onto a background of order g^{1/3}
//! and drift away from the series; only N = 5 tracks it there.

use cubic_vpt::bender_wu::dimensionful_energy;
use cubic_vpt::error::Result;
use cubic_vpt::vpt::{veff_optimize, veff_strong_coupling_x1, veff_trick, veff_x1_residual, VeffConfig};
use num_complex::Complex64;

fn main() -> Result<()> {
    let cfg = VeffConfig { y_range: (1e-4, 3.0), ..VeffConfig::default() };
    println!("{:>8} {:>14} {:>14} {:>14} {:>14}", "g", "series K=4", "N=1", "N=3", "N=5");
    for g in [0.05, 0.5, 1.0, 2.0, 10.0] {
        let mut row = Vec::new();
        for n in [1, 3, 5] {
            let s = veff_optimize(&veff_trick(n, 1.0, 1.0, g)?, &cfg)?;
            row.push(format!("{:>14.10}", s.b0));
        }
        println!("{g:>8} {:>14.10} {}", dimensionful_energy(4, 1.0, 1.0, g)?, row.join(" "));
    }

    let g = 100.0;
    let s = veff_optimize(&veff_trick(1, 1.0, 1.0, g)?, &cfg)?;
    let y = s.y.unwrap();
    let sc = veff_strong_coupling_x1(3)?;
    let e = g.powf(-0.8);
    let approx = g.powf(-0.2) * (sc.x[0].value() + sc.x[1].value() * e + sc.x[2].value() * e * e);
    println!("g = {g}: background y = {y:.12}, expansion {approx:.12}");
    println!("residual of the first-order equation: {:.1e}", veff_x1_residual(Complex64::new(0.0, -y), 1.0, 1.0, g).norm());
    println!("b_n: {}", sc.b.iter().map(|b| format!("{b} = {:.10}", b.value())).collect::<Vec<_>>().join(", "));
    Ok(())
}
