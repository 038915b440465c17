//! Weak-coupling ground-state series of `H = p²/2 + ω²x²/2 + i g x³`.
//!
//! With `x̂ = x·sqrt(ω/ħ)` and `ĝ = g·sqrt(ħ/ω⁵)` the ground state is written
//! as `exp(−x̂²/2 + Σ_k ĝ^k φ_k(x̂))` with `φ_k = Σ_{m=1}^{k+2} c_m^(k) x̂^m`,
//! and the energy as `ħω(1/2 + Σ_k ĝ^k ε_k)`. Matching powers of `x̂` in the
//! Schrödinger equation gives a closed recursion for the `c_m^(k)`, solved
//! here order by order with exact Gaussian rationals.

use crate::algebra::{rat, to_f64, GaussRational, Ring};
use crate::error::{Error, Result};

/// The coefficients `c_m^(k)` for `1 ≤ k ≤ K`, `1 ≤ m ≤ k+2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveCorrectionTable {
    // rows[k - 1][m - 1]
    rows: Vec<Vec<GaussRational>>,
}

impl WaveCorrectionTable {
    /// Rebuild from rows `[c_1^(k), …, c_{k+2}^(k)]`, `k = 1, 2, …`.
    pub fn from_rows(rows: Vec<Vec<GaussRational>>) -> Result<Self> {
        if let Some((i, row)) = rows.iter().enumerate().find(|(i, r)| r.len() != i + 3) {
            return Err(Error::invalid(format!("row {} has {} entries, expected {}", i + 1, row.len(), i + 3)));
        }
        Ok(WaveCorrectionTable { rows })
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// `c_m^(k)`, identically zero outside `1 ≤ k ≤ K`, `1 ≤ m ≤ k+2`.
    pub fn get(&self, k: usize, m: usize) -> GaussRational {
        if k == 0 || m == 0 {
            return GaussRational::zero();
        }
        self.rows
            .get(k - 1)
            .and_then(|row| row.get(m - 1))
            .cloned()
            .unwrap_or_else(GaussRational::zero)
    }

    fn at(&self, k: usize, m: usize) -> Option<&GaussRational> {
        self.rows.get(k.checked_sub(1)?)?.get(m.checked_sub(1)?)
    }

    /// Row `k` as `[c_1^(k), …, c_{k+2}^(k)]`.
    pub fn row(&self, k: usize) -> &[GaussRational] {
        &self.rows[k - 1]
    }
}

/// The energy coefficients `ε_1 … ε_K` (prefactor `ħω` stripped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyCoefficients {
    eps: Vec<GaussRational>,
}

impl EnergyCoefficients {
    pub fn from_vec(eps: Vec<GaussRational>) -> Self {
        EnergyCoefficients { eps }
    }

    pub fn order(&self) -> usize {
        self.eps.len()
    }

    /// `ε_k`; `ε_0 = 1/2` is the harmonic ground state.
    pub fn get(&self, k: usize) -> GaussRational {
        if k == 0 {
            return GaussRational::real(rat(1, 2));
        }
        self.eps.get(k - 1).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn as_slice(&self) -> &[GaussRational] {
        &self.eps
    }

    /// `ħω[1/2 + Σ_{2j ≤ K} (ħg²/ω⁵)^j ε_{2j}]` in floating point.
    pub fn dimensionful(&self, hbar: f64, omega: f64, g: f64) -> Result<f64> {
        if !(omega > 0.0) {
            return Err(Error::domain(format!("omega must be positive, got {omega}")));
        }
        let ghat2 = hbar * g * g / omega.powi(5);
        let mut sum = 0.5;
        let mut pow = 1.0;
        for j in 1..=self.order() / 2 {
            pow *= ghat2;
            sum += pow * to_f64(&self.get(2 * j).re);
        }
        Ok(hbar * omega * sum)
    }
}

fn first_order_row() -> Vec<GaussRational> {
    vec![
        GaussRational::imag(rat(-1, 1)),
        GaussRational::zero(),
        GaussRational::imag(rat(-1, 3)),
    ]
}

/// Sum `Σ_{l=1}^{k−1} Σ_{n=1}^{m+1} n(m+2−n) c_n^(l) c_{m+2−n}^(k−l)`.
fn convolution(table: &WaveCorrectionTable, k: usize, m: usize) -> GaussRational {
    let mut acc = GaussRational::zero();
    for l in 1..k {
        for n in 1..=m + 1 {
            let (Some(a), Some(b)) = (table.at(l, n), table.at(k - l, m + 2 - n)) else {
                continue;
            };
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let w = (n * (m + 2 - n)) as i64;
            acc.add_assign(&(a * b).scale_int(w));
        }
    }
    acc
}

/// Bender–Wu recursion through order `K`.
pub fn ground_state_series(order: usize) -> Result<(WaveCorrectionTable, EnergyCoefficients)> {
    if order < 1 {
        return Err(Error::invalid("order must be at least 1"));
    }
    let mut table = WaveCorrectionTable { rows: vec![first_order_row()] };
    let mut eps = vec![GaussRational::zero()];

    for k in 2..=order {
        let mut row = vec![GaussRational::zero(); k + 2];
        for m in (1..=k + 2).rev() {
            let mut c = GaussRational::zero();
            if m + 2 <= k + 2 {
                c = row[m + 1].scale(&rat(((m + 2) * (m + 1)) as i64, 2 * m as i64));
            }
            let conv = convolution(&table, k, m);
            if !conv.is_zero() {
                c.add_assign(&conv.scale(&rat(1, 2 * m as i64)));
            }
            row[m - 1] = c;
        }
        table.rows.push(row);

        let mut e = table.get(k, 2).neg();
        let mut half = GaussRational::zero();
        for l in 1..k {
            half.add_assign(&(&table.get(l, 1) * &table.get(k - l, 1)));
        }
        e = e.sub(&half.scale(&rat(1, 2)));
        eps.push(e);
    }
    Ok((table, EnergyCoefficients { eps }))
}

/// Dimensionful ground-state energy truncated at order `K` in `ĝ`.
///
/// `K = 0` gives the harmonic value `ħω/2`.
pub fn dimensionful_energy(order: usize, hbar: f64, omega: f64, g: f64) -> Result<f64> {
    if order == 0 {
        return EnergyCoefficients::from_vec(Vec::new()).dimensionful(hbar, omega, g);
    }
    let (_, eps) = ground_state_series(order)?;
    eps.dimensionful(hbar, omega, g)
}
