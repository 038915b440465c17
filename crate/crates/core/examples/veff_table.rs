//! Strong-coupling coefficient from the tricked effective potential, N = 1..5.

use cubic_vpt::vpt::{veff_b0, Criticality, B0_REFERENCE};

fn main() -> Result<(), cubic_vpt::error::Error> {
    println!("{:>2} {:>14} {:>12} {:>12} {:>10}  kind", "N", "b0", "Omega", "y", "dev");
    for n in 1..=5 {
        let s = veff_b0(n)?;
        let kind = match s.criticality {
            Criticality::Extremum => "extremum",
            Criticality::TurningPoint => "turning point",
        };
        println!(
            "{:>2} {:>14.10} {:>12.8} {:>12.8} {:>10.3e}  {kind}",
            n,
            s.b0,
            s.omega_var,
            s.y.unwrap_or(f64::NAN),
            s.relative_deviation()
        );
        for c in &s.candidates {
            println!("     candidate b0 = {:.10} Omega = {:.6} y = {:.6} curvature = {:.3e}", c.b0, c.omega_var, c.y.unwrap_or(f64::NAN), c.curvature);
        }
    }
    println!("reference {B0_REFERENCE}");
    Ok(())
}
