//! Extremize the effective potential order by order and recover the
//! energy series.

use cubic_vpt::bender_wu::ground_state_series;
use cubic_vpt::effective_potential::perturbative_extremum;
use cubic_vpt::error::Result;

fn main() -> Result<()> {
    let ext = perturbative_extremum(10)?;
    if let Some(x) = ext.hbar_coefficients() {
        for (n, xn) in x.iter().enumerate() {
            let n = n + 1;
            println!("X_{n} = i · {xn} · g^{} · omega^{}", 2 * n - 1, 2 - 5 * n as i64);
        }
    }
    let (_, eps) = ground_state_series(10)?;
    println!("energy series equals eps_k: {}", ext.energy == eps.as_slice());
    println!("background at hbar = omega = 1, g = 0.1: X = i · {:.12}", ext.background(1.0, 1.0, 0.1).unwrap());
    Ok(())
}
