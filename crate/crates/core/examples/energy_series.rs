//! Exact weak-coupling coefficients of the ground-state energy and the
//! truncated dimensionful energy at a small coupling.

use cubic_vpt::bender_wu::{dimensionful_energy, ground_state_series};
use cubic_vpt::error::Result;

fn main() -> Result<()> {
    let order = 16;
    let (table, eps) = ground_state_series(order)?;
    for k in (2..=order).step_by(2) {
        println!("eps_{k:<2} = {}", eps.get(k));
    }
    println!("c^(2) = [{}]", table.row(2).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));

    // The series is asymptotic: at g = 0.1 the partial sums settle before they blow up.
    for k in [0, 2, 4, 8, 12, 16] {
        println!("E_{k:<2}(g = 0.1) = {:.12}", dimensionful_energy(k, 1.0, 1.0, 0.1)?);
    }
    Ok(())
}
