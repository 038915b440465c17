//! Effective potential of the cubic oscillator in a constant background.
//!
//! Shifting the coordinate by the background `X` and repeating the ground-state
//! recursion gives coefficients `c_m^(k)(X̂)` that are polynomials in the
//! rescaled background `X̂ = X·sqrt(ω/ħ)`, and the weak-coupling series
//!
//! ```text
//! V_eff(X) = ħω [1/2 + X̂²/2 + Σ_k ĝ^k V_k(X̂)].
//! ```
//!
//! Regrouping the double series in `ĝ` and `X̂` by powers of `ħ` yields the
//! loop expansion `V^(l)(X) = r_l g^{2(l−1)} ω̃^{1−5(l−1)}` with
//! `ω̃ = sqrt(ω² + 6igX)`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::algebra::{fmt_rational, half_binomial, int, rat, BigRational, GaussRational, Poly, Ring, Series};
use crate::error::{Error, Result};

pub type BackgroundPoly = Poly<GaussRational>;

/// `c_m^(k)(X̂)` for `1 ≤ k ≤ K`, `1 ≤ m ≤ k+2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackgroundWaveTable {
    rows: Vec<Vec<BackgroundPoly>>,
}

impl BackgroundWaveTable {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Zero outside `1 ≤ k ≤ K`, `1 ≤ m ≤ k+2`.
    pub fn get(&self, k: usize, m: usize) -> BackgroundPoly {
        self.at(k, m).cloned().unwrap_or_else(Poly::zero)
    }

    fn at(&self, k: usize, m: usize) -> Option<&BackgroundPoly> {
        self.rows.get(k.checked_sub(1)?)?.get(m.checked_sub(1)?)
    }
}

/// `V_1(X̂) … V_K(X̂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectivePotentialSeries {
    v: Vec<BackgroundPoly>,
}

impl EffectivePotentialSeries {
    pub fn from_vec(v: Vec<BackgroundPoly>) -> Self {
        EffectivePotentialSeries { v }
    }

    pub fn order(&self) -> usize {
        self.v.len()
    }

    /// `V_k(X̂)`, zero for `k = 0` or `k > K`.
    pub fn get(&self, k: usize) -> BackgroundPoly {
        match k {
            0 => Poly::zero(),
            _ => self.v.get(k - 1).cloned().unwrap_or_else(Poly::zero),
        }
    }

    pub fn as_slice(&self) -> &[BackgroundPoly] {
        &self.v
    }

    /// Coefficient of `ĝ^k X̂^j` in the bracket, including the `k = 0` terms
    /// `1/2 + X̂²/2`.
    pub fn cell(&self, k: usize, j: usize) -> GaussRational {
        if k == 0 {
            return match j {
                0 | 2 => GaussRational::real(rat(1, 2)),
                _ => GaussRational::zero(),
            };
        }
        self.get(k).coeff(j)
    }
}

fn first_order() -> (Vec<BackgroundPoly>, BackgroundPoly) {
    let im = |n, d| GaussRational::imag(rat(n, d));
    let z = GaussRational::zero;
    let c1 = Poly::from_coeffs(vec![im(1, 2), z(), im(2, 1)]);
    let c2 = Poly::from_coeffs(vec![z(), im(-1, 2)]);
    let c3 = Poly::constant(im(-1, 3));
    let v1 = Poly::from_coeffs(vec![z(), im(3, 2), z(), im(1, 1)]);
    (vec![c1, c2, c3], v1)
}

fn scale_q(p: &BackgroundPoly, n: i64, d: i64) -> BackgroundPoly {
    p.scale(&GaussRational::real(rat(n, d)))
}

/// Run the background recursion through order `K`.
pub fn veff_series(order: usize) -> Result<(BackgroundWaveTable, EffectivePotentialSeries)> {
    if order < 1 {
        return Err(Error::invalid("order must be at least 1"));
    }
    let x = BackgroundPoly::x();
    let (row1, v1) = first_order();
    let mut table = BackgroundWaveTable { rows: vec![row1] };
    let mut v = vec![v1];

    for k in 2..=order {
        let mut row = vec![Poly::zero(); k + 2];
        for m in (2..=k + 2).rev() {
            let mut c = Poly::zero();
            if m + 2 <= k + 2 {
                c = scale_q(&row[m + 1], ((m + 2) * (m + 1)) as i64, 2 * m as i64);
            }
            if m + 1 <= k + 2 {
                c = c.add(&scale_q(&x.mul(&row[m]), (m + 1) as i64, m as i64));
            }
            let mut acc = Poly::zero();
            for l in 1..k {
                for n in 1..=m + 1 {
                    let (Some(a), Some(b)) = (table.at(l, n), table.at(k - l, m + 2 - n)) else {
                        continue;
                    };
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b).scale_int((n * (m + 2 - n)) as i64));
                }
            }
            row[m - 1] = c.add(&scale_q(&acc, 1, 2 * m as i64));
        }

        let c2 = row[1].clone();
        let c3 = row[2].clone();
        let mut cross = Poly::zero();
        let mut square = Poly::zero();
        for l in 1..k {
            let (a1, a2) = (table.get(l, 1), table.get(l, 2));
            let (b1, b2) = (table.get(k - l, 1), table.get(k - l, 2));
            cross = cross.add(&b2.mul(&a1)).add(&b1.mul(&a2));
            square = square.add(&a1.mul(&b1));
        }
        let vk = c2
            .neg()
            .sub(&x.mul(&c3).scale_int(3))
            .sub(&x.mul(&x).mul(&c2).scale_int(2))
            .sub(&x.mul(&cross))
            .sub(&scale_q(&square, 1, 2));

        row[0] = c3.scale_int(3).add(&x.mul(&c2).scale_int(2)).add(&vk.derivative()).add(&cross);
        table.rows.push(row);
        v.push(vk);
    }
    Ok((table, EffectivePotentialSeries { v }))
}

/// Monomial `coeff · g^k · X^j · ħ^a · ω^b` of the dimensionful potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionfulTerm {
    pub coeff: GaussRational,
    pub g_power: usize,
    pub x_power: usize,
    pub hbar_power: Ratio<i64>,
    pub omega_power: Ratio<i64>,
}

impl fmt::Display for DimensionfulTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coeff)?;
        let mut factor = |name: &str, p: Ratio<i64>| -> fmt::Result {
            if p == Ratio::from_integer(0) {
                Ok(())
            } else if p == Ratio::from_integer(1) {
                write!(f, " {name}")
            } else {
                write!(f, " {name}^{p}")
            }
        };
        factor("g", Ratio::from_integer(self.g_power as i64))?;
        factor("ħ", self.hbar_power)?;
        factor("ω", self.omega_power)?;
        factor("X", Ratio::from_integer(self.x_power as i64))
    }
}

/// Restore units: `ħω ĝ^k X̂^j = g^k X^j ħ^{1+(k−j)/2} ω^{1+(j−5k)/2}`.
///
/// Returns, for each power `g^k` with `k ≤ K`, the nonzero monomials in
/// increasing powers of `X`. The `g⁰` entry is `ħω/2 + ω²X²/2`.
pub fn g_expansion(series: &EffectivePotentialSeries) -> Vec<Vec<DimensionfulTerm>> {
    (0..=series.order())
        .map(|k| {
            let degree = if k == 0 { 2 } else { series.get(k).degree().unwrap_or(0) };
            (0..=degree)
                .filter_map(|j| {
                    let coeff = series.cell(k, j);
                    if coeff.is_zero() {
                        return None;
                    }
                    let (k, j) = (k as i64, j as i64);
                    Some(DimensionfulTerm {
                        coeff,
                        g_power: k as usize,
                        x_power: j as usize,
                        hbar_power: Ratio::new(2 + k - j, 2),
                        omega_power: Ratio::new(2 + j - 5 * k, 2),
                    })
                })
                .collect()
        })
        .collect()
}

/// The loop coefficients `r_1 … r_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopExpansion {
    r: Vec<BigRational>,
}

impl LoopExpansion {
    pub fn loops(&self) -> usize {
        self.r.len()
    }

    /// `r_l` for `1 ≤ l ≤ L`.
    pub fn get(&self, l: usize) -> BigRational {
        self.r[l - 1].clone()
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.r
    }

    /// Exponent `p_l = 1 − 5(l−1)` of `ω̃` at loop order `l`.
    pub fn omega_exponent(l: usize) -> i64 {
        1 - 5 * (l as i64 - 1)
    }

    /// `r_l · g^{2(l−1)} · wtilde^{1−5(l−1)}`, with `r_l` written out.
    pub fn template(&self, l: usize) -> String {
        format!(
            "{} · g^{} · wtilde^{}",
            fmt_rational(&self.get(l)),
            2 * (l - 1),
            Self::omega_exponent(l)
        )
    }
}

/// `r_l` is the `X`-independent part of `V_{2(l−1)}`; `r_1 = 1/2`.
pub fn loop_coefficients_from(series: &EffectivePotentialSeries, loops: usize) -> Result<LoopExpansion> {
    if loops < 1 {
        return Err(Error::invalid("loop count must be at least 1"));
    }
    if series.order() < 2 * (loops - 1) {
        return Err(Error::invalid(format!(
            "{loops} loops need the series through order {}",
            2 * (loops - 1)
        )));
    }
    let mut r = vec![rat(1, 2)];
    for l in 2..=loops {
        let c = series.cell(2 * (l - 1), 0);
        match c.graded_part(0) {
            Some(q) => r.push(q),
            None => return Err(Error::domain(format!("constant term of V_{} is not real", 2 * (l - 1)))),
        }
    }
    Ok(LoopExpansion { r })
}

pub fn loop_coefficients(loops: usize) -> Result<LoopExpansion> {
    if loops < 1 {
        return Err(Error::invalid("loop count must be at least 1"));
    }
    if loops == 1 {
        return Ok(LoopExpansion { r: vec![rat(1, 2)] });
    }
    let (_, series) = veff_series(2 * (loops - 1))?;
    loop_coefficients_from(&series, loops)
}

/// One cell of the loop-consistency comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopCell {
    pub loop_order: usize,
    pub x_power: usize,
    pub g_order: usize,
    pub recursion: GaussRational,
    pub closed_form: GaussRational,
}

impl LoopCell {
    pub fn passed(&self) -> bool {
        self.recursion == self.closed_form
    }
}

/// Outcome of [`loop_consistency_check`].
#[derive(Clone, Debug, Default)]
pub struct LoopReport {
    pub cells: Vec<LoopCell>,
    /// Cells `(k, j)` with `k − j` odd that were found nonzero.
    pub odd_violations: Vec<(usize, usize)>,
    /// Cells not accounted for by any loop order `l ≥ 1`, keyed by `(k, j)`.
    pub classical: BTreeMap<(usize, usize), GaussRational>,
}

impl LoopReport {
    /// The only cell outside the loop orders is the classical `i X̂³` at `ĝ¹`.
    pub fn passed(&self) -> bool {
        let expect: BTreeMap<_, _> = [((1, 3), GaussRational::i())].into_iter().collect();
        self.cells.iter().all(LoopCell::passed) && self.odd_violations.is_empty() && self.classical == expect
    }
}

/// Closed-form coefficient of `ĝ^{2(l−1)+j} X̂^j`: the `j`-th Taylor term of
/// `r_l ω̃^{p_l}` in `6igX/ω²`, i.e. `r_l C(p_l/2, j) (6i)^j`.
pub fn loop_cell_closed_form(r_l: &BigRational, l: usize, j: usize) -> GaussRational {
    let half_p = rat(LoopExpansion::omega_exponent(l), 2);
    let six_i_j = GaussRational::i_pow(j as i64).scale(&num_traits::pow(int(6), j));
    six_i_j.scale(&(r_l * half_binomial(&half_p, j)))
}

/// Compare every `(k, j)` cell of the double series against the loop
/// expansion, for `l ≤ L` and `k = 2(l−1)+j ≤ K`.
pub fn loop_consistency_check(loops: usize, order: usize) -> Result<LoopReport> {
    if loops < 1 || order < 2 * (loops - 1) || order < 1 {
        return Err(Error::invalid("need L ≥ 1 and K ≥ max(1, 2(L−1))"));
    }
    let (_, series) = veff_series(order)?;
    let lx = loop_coefficients_from(&series, loops)?;
    let mut report = LoopReport::default();

    for k in 0..=order {
        let degree = if k == 0 { 2 } else { series.get(k).degree().unwrap_or(0) };
        for j in 0..=degree {
            let c = series.cell(k, j);
            if c.is_zero() {
                continue;
            }
            if (k + j) % 2 == 1 {
                report.odd_violations.push((k, j));
            } else if j > k + 1 && !(k == 0 && j == 2) {
                report.classical.insert((k, j), c);
            }
        }
    }

    for l in 1..=loops {
        for j in 0..=order - 2 * (l - 1) {
            let k = 2 * (l - 1) + j;
            let mut recursion = series.cell(k, j);
            if k == 0 && j == 0 {
                recursion = GaussRational::real(rat(1, 2));
            }
            report.cells.push(LoopCell {
                loop_order: l,
                x_power: j,
                g_order: k,
                recursion,
                closed_form: loop_cell_closed_form(&lx.get(l), l, j),
            });
        }
    }
    Ok(report)
}

/// Perturbative extremum of the effective potential and the energy it gives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbativeExtremum {
    /// `ξ_1 … ξ_K` in `X̂_e = Σ_k ξ_k ĝ^k`.
    pub xi: Vec<GaussRational>,
    /// `E_1 … E_K` in `V_eff(X_e) = ħω(1/2 + Σ_k E_k ĝ^k)`.
    pub energy: Vec<GaussRational>,
}

impl PerturbativeExtremum {
    /// Rational `x_n` with `X_e = i Σ_n ħ^n x_n g^{2n−1} ω^{2−5n}`, `n ≥ 1`.
    ///
    /// The `ħ⁰` term vanishes. Returns `None` if the series is not of that
    /// shape (an even `ξ` nonzero or an odd `ξ` not imaginary).
    pub fn hbar_coefficients(&self) -> Option<Vec<BigRational>> {
        let mut out = Vec::new();
        for (idx, xi) in self.xi.iter().enumerate() {
            let k = idx + 1;
            if k % 2 == 0 {
                if !xi.is_zero() {
                    return None;
                }
            } else {
                out.push(xi.graded_part(1)?);
            }
        }
        Some(out)
    }

    /// `X_e = i·y`; returns `y` for the given parameters.
    pub fn background(&self, hbar: f64, omega: f64, g: f64) -> Option<f64> {
        let x = self.hbar_coefficients()?;
        Some(
            x.iter()
                .enumerate()
                .map(|(i, xn)| {
                    let n = i as i32 + 1;
                    crate::algebra::to_f64(xn) * hbar.powi(n) * g.powi(2 * n - 1) * omega.powi(2 - 5 * n)
                })
                .sum(),
        )
    }
}

/// Solve `∂V_eff/∂X̂ = 0` order by order in `ĝ` and re-expand the energy.
///
/// The stationarity condition reads `X̂ + Σ_k ĝ^k V_k'(X̂) = 0`; the linear
/// term has unit coefficient, so every order is a solve with pivot 1.
pub fn perturbative_extremum_from(series: &EffectivePotentialSeries) -> PerturbativeExtremum {
    let order = series.order();
    let derivs: Vec<BackgroundPoly> = series.as_slice().iter().map(Poly::derivative).collect();
    let sum_over_k = |s: &Series<GaussRational>, polys: &[BackgroundPoly]| {
        let mut acc = Series::zero(order);
        for (idx, p) in polys.iter().enumerate() {
            acc = acc.add(&p.eval_series(s).shift(idx + 1));
        }
        acc
    };

    let mut s = Series::<GaussRational>::zero(order);
    for n in 1..=order {
        let residual = sum_over_k(&s, &derivs).coeff(n);
        s.set_coeff(n, residual.neg());
    }

    let mut e = sum_over_k(&s, series.as_slice());
    e = e.add(&s.mul(&s).scale(&GaussRational::real(rat(1, 2))));
    PerturbativeExtremum {
        xi: s.coeffs()[1..].to_vec(),
        energy: e.coeffs()[1..].to_vec(),
    }
}

pub fn perturbative_extremum(order: usize) -> Result<PerturbativeExtremum> {
    let (_, series) = veff_series(order)?;
    Ok(perturbative_extremum_from(&series))
}
