//! Floating-point Rayleigh–Schrödinger series in the oscillator basis
//! against the exact recursion.

use cubic_vpt::algebra::to_f64;
use cubic_vpt::bender_wu::ground_state_series;
use cubic_vpt::error::Result;
use cubic_vpt::verification::{grid_pms_oracle, rs_energy_series};
use cubic_vpt::vpt::trick_reexpand_energy;

fn main() -> Result<()> {
    let k = 16;
    let (_, eps) = ground_state_series(k)?;
    let rs = rs_energy_series(k, 3 * k)?;
    for n in (2..=k).step_by(2) {
        let exact = to_f64(&eps.get(n).re);
        println!("eps_{n:<2}  exact {exact:>24.12e}  matrix {:>24.12e}  rel {:.1e}", rs[n], (rs[n] / exact - 1.0).abs());
    }

    let f = trick_reexpand_energy(4)?.strong_coupling();
    // Near Ω̂ = 0 the Ω̂^{-19} term dominates, so keep the bracket away from it.
    let points = grid_pms_oracle(|w| f.value(w), (1.0, 4.0), 5000)?;
    println!("grid scan of the N = 4 plain profile: stationary at {points:?}");
    Ok(())
}
