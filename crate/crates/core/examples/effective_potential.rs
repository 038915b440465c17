//! Background-dependent recursion: V_k(X), its expansion in g with units
//! restored, and the loop coefficients r_l read off from it.

use cubic_vpt::effective_potential::{g_expansion, loop_coefficients_from, loop_consistency_check, veff_series};
use cubic_vpt::error::Result;

fn main() -> Result<()> {
    let (_, series) = veff_series(8)?;
    for k in 1..=4 {
        println!("V_{k}(X) = {}", series.get(k));
    }
    for (k, row) in g_expansion(&series).iter().enumerate().take(5) {
        let terms: Vec<String> = row.iter().map(|t| t.to_string()).collect();
        println!("g^{k}: {}", terms.join(" + "));
    }
    let loops = loop_coefficients_from(&series, 5)?;
    for l in 1..=5 {
        println!("loop {l}: {}", loops.template(l));
    }
    let report = loop_consistency_check(5, 14)?;
    println!("loop consistency: {} cells, passed = {}", report.cells.len(), report.passed());
    Ok(())
}
