//! Square-root trick on the energy series and PMS in the strong-coupling
//! limit, with the candidate lists behind each choice.

use cubic_vpt::bender_wu::ground_state_series;
use cubic_vpt::error::Result;
use cubic_vpt::vpt::{naive_b0_from, subleading_order1, NaiveConfig, NaiveRule, TrickSeries};

fn main() -> Result<()> {
    let max = 12;
    let (_, eps) = ground_state_series(2 * max)?;
    for rule in [NaiveRule::SmallestExtremum, NaiveRule::Flattest] {
        println!("{rule:?}");
        let cfg = NaiveConfig { rule, ..NaiveConfig::default() };
        for n in 1..=max {
            let s = naive_b0_from(&TrickSeries::from_energy(&eps, n)?, &cfg)?;
            println!(
                "  N = {n:>2}  b0 = {:.10}  Omega = {:.6}  dev = {:.2e}  ({} candidates)",
                s.b0,
                s.omega_var,
                s.relative_deviation(),
                s.candidates.len()
            );
        }
    }
    let sub = subleading_order1(3)?;
    for n in 0..3 {
        println!("Omega_{n} = {}   b_{n} = {} = {:.12}", sub.omega[n], sub.b[n], sub.b[n].value());
    }
    Ok(())
}
