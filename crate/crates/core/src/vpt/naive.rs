use num_rational::Ratio;

use crate::algebra::{int, rat, to_f64, BigRational, Poly, Series, Surd};
use crate::error::{Error, Result};

use super::roots::isolate_roots;
use super::trick::{trick_reexpand_energy, TrickSeries};
use super::{Candidate, Criticality, Variant, VptSolution};

/// Strong-coupling profile `f(Ω̂) = Σ_k a_k Ω̂^{1−5k}` of the tricked series.
///
/// In `u = Ω̂^{−5}` the derivatives become polynomials:
/// `f' = P(u)` with `P = Σ (1−5k) a_k u^k`, and `f'' = −Q(u)/Ω̂` with
/// `Q = Σ 5k(1−5k) a_k u^k`. Their roots are isolated in exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongCouplingFunction {
    a: Vec<BigRational>,
}

impl StrongCouplingFunction {
    pub fn new(a: Vec<BigRational>) -> Self {
        StrongCouplingFunction { a }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.a
    }

    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    fn weighted(&self, w: impl Fn(i64) -> i64) -> Poly<BigRational> {
        Poly::from_coeffs(self.a.iter().enumerate().map(|(k, a)| a * int(w(k as i64))).collect())
    }

    /// `R(u) = Σ a_k u^k`, so that `f = Ω̂ R(u)`.
    pub fn r_poly(&self) -> Poly<BigRational> {
        self.weighted(|_| 1)
    }

    /// `P(u) = f'(Ω̂)`.
    pub fn p_poly(&self) -> Poly<BigRational> {
        self.weighted(|k| 1 - 5 * k)
    }

    /// `Q(u) = −Ω̂ f''(Ω̂)`.
    pub fn q_poly(&self) -> Poly<BigRational> {
        self.weighted(|k| 5 * k * (1 - 5 * k))
    }

    /// `Ω̂² f'''(Ω̂)`.
    pub fn t_poly(&self) -> Poly<BigRational> {
        self.weighted(|k| (1 + 5 * k) * 5 * k * (1 - 5 * k))
    }

    fn sum_f64(&self, w: f64, pow_weight: impl Fn(i64) -> (f64, i32)) -> f64 {
        self.a
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (c, e) = pow_weight(k as i64);
                to_f64(a) * c * w.powi(e)
            })
            .sum()
    }

    pub fn value(&self, w: f64) -> f64 {
        self.sum_f64(w, |k| (1.0, (1 - 5 * k) as i32))
    }

    pub fn derivative(&self, w: f64) -> f64 {
        self.sum_f64(w, |k| ((1 - 5 * k) as f64, (-5 * k) as i32))
    }

    pub fn second_derivative(&self, w: f64) -> f64 {
        self.sum_f64(w, |k| (((1 - 5 * k) * (-5 * k)) as f64, (-5 * k - 1) as i32))
    }

    /// `f(Ω̂)` at `Ω̂ = u^{−1/5}`, with the polynomial part evaluated exactly.
    pub fn value_at_u(&self, u: &BigRational) -> f64 {
        to_f64(u).powf(-0.2) * to_f64(&self.r_poly().eval(u))
    }
}

/// Selection among several PMS candidates of the plain variant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NaiveRule {
    /// Extremum with the smallest `Ω̂`; turning points only if no extremum.
    #[default]
    SmallestExtremum,
    /// Extremum with the smallest `|f''|`; turning points only if no extremum.
    Flattest,
    /// Smallest `Ω̂` among extrema and turning points alike.
    SmallestAny,
}

#[derive(Clone, Debug)]
pub struct NaiveConfig {
    /// Search range for `Ω̂`.
    pub bracket: (f64, f64),
    pub grid_points: usize,
    /// Relative width of the final exact bisection interval.
    pub tol: f64,
    pub rule: NaiveRule,
}

impl Default for NaiveConfig {
    fn default() -> Self {
        NaiveConfig { bracket: (0.1, 10.0), grid_points: 4000, tol: 1e-30, rule: NaiveRule::default() }
    }
}

struct Found {
    candidate: Candidate,
    residual: f64,
}

fn stationary_points(f: &StrongCouplingFunction, cfg: &NaiveConfig) -> Vec<Found> {
    let (lo, hi) = cfg.bracket;
    let (ulo, uhi) = (hi.powi(-5), lo.powi(-5));
    let (p, q, t) = (f.p_poly(), f.q_poly(), f.t_poly());
    let mut out = Vec::new();
    for u in isolate_roots(&p, ulo, uhi, cfg.grid_points, cfg.tol) {
        let w = to_f64(&u).powf(-0.2);
        out.push(Found {
            candidate: Candidate {
                omega_var: w,
                y: None,
                b0: f.value_at_u(&u),
                criticality: Criticality::Extremum,
                curvature: -to_f64(&q.eval(&u)) / w,
            },
            residual: to_f64(&p.eval(&u)).abs(),
        });
    }
    for u in isolate_roots(&q, ulo, uhi, cfg.grid_points, cfg.tol) {
        let w = to_f64(&u).powf(-0.2);
        out.push(Found {
            candidate: Candidate {
                omega_var: w,
                y: None,
                b0: f.value_at_u(&u),
                criticality: Criticality::TurningPoint,
                curvature: to_f64(&t.eval(&u)) / (w * w),
            },
            residual: (to_f64(&q.eval(&u)) / w).abs(),
        });
    }
    out.sort_by(|a, b| a.candidate.omega_var.total_cmp(&b.candidate.omega_var));
    out
}

/// PMS optimum of a given profile.
pub fn naive_b0_from(series: &TrickSeries, cfg: &NaiveConfig) -> Result<VptSolution> {
    let f = series.strong_coupling();
    let found = stationary_points(&f, cfg);
    let is_ext = |x: &&Found| x.candidate.criticality == Criticality::Extremum;
    let ext: Vec<&Found> = found.iter().filter(is_ext).collect();
    let tp: Vec<&Found> = found.iter().filter(|x| !is_ext(x)).collect();

    let pool = if ext.is_empty() { &tp } else { &ext };
    let chosen = match cfg.rule {
        NaiveRule::SmallestExtremum => pool.first().copied(),
        NaiveRule::Flattest => pool
            .iter()
            .copied()
            .min_by(|a, b| a.candidate.curvature.abs().total_cmp(&b.candidate.curvature.abs())),
        NaiveRule::SmallestAny => found.first(),
    };
    let Some(chosen) = chosen else {
        return Err(Error::NoPmsPoint { order: series.order(), lo: cfg.bracket.0, hi: cfg.bracket.1 });
    };
    let c = &chosen.candidate;
    Ok(VptSolution {
        variant: Variant::Naive,
        order: series.order(),
        omega_var: c.omega_var,
        y: None,
        b0: c.b0,
        criticality: c.criticality,
        residuals: vec![chosen.residual],
        candidates: found.iter().map(|x| x.candidate.clone()).collect(),
    })
}

pub fn naive_b0(order: usize) -> Result<VptSolution> {
    naive_b0_from(&trick_reexpand_energy(order)?, &NaiveConfig::default())
}

/// Exact strong-coupling data at first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subleading {
    /// `Ω_n` in `Ω/(ω α̂^{1/5}) = Σ_n Ω_n α̂^{−2n/5}`.
    pub omega: Vec<Surd>,
    /// `b_n` in `E/(ħω ĝ^{2/5}) = Σ_n b_n ĝ^{−4n/5}`.
    pub b: Vec<Surd>,
}

/// Expand the first-order optimum for large coupling.
///
/// With `ħ = ω = 1`, `Ω = g^{2/5} W` and `η = g^{−4/5}`, stationarity of
/// `Ω/4 + ω²/(4Ω) + 11g²/(8Ω⁴)` reads `W⁵ − ηW³ − 22 = 0`. Writing
/// `W = 22^{1/5}(1+z)` and `δ = η/22^{2/5}` gives `(1+z)⁵ − δ(1+z)³ − 1 = 0`,
/// a rational series problem in `δ`, and
/// `E/g^{2/5} = 22^{1/5}[(1+z)/4 + δ/(4(1+z)) + (1+z)^{−4}/16]`.
pub fn subleading_order1(terms: usize) -> Result<Subleading> {
    if terms < 1 {
        return Err(Error::invalid("need at least one term"));
    }
    let order = terms - 1;
    let one = Series::constant(int(1), order);
    let delta = Series::variable(order);
    let z = Series::solve_implicit(order, &int(5), |z| {
        let w = one.add(z);
        Ok(w.pow(5).sub(&delta.mul(&w.pow(3))).sub(&one))
    })?;
    let w = one.add(&z);
    let energy = w
        .scale(&rat(1, 4))
        .add(&delta.mul(&w.inverse()?).scale(&rat(1, 4)))
        .add(&w.powq(&int(-4))?.scale(&rat(1, 16)));

    // δ^n = η^n 22^{−2n/5}, so coefficient n picks up 22^{(1−2n)/5}.
    let surd = |c: BigRational, n: usize| Surd::root(22, Ratio::new(1 - 2 * n as i64, 5)).scale(&c);
    Ok(Subleading {
        omega: (0..terms).map(|n| surd(w.coeff(n), n)).collect(),
        b: (0..terms).map(|n| surd(energy.coeff(n), n)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn first_order_optimum() {
        let s = naive_b0(1).unwrap();
        let w0 = 22f64.powf(0.2);
        assert!((s.omega_var - w0).abs() < 1e-14 * w0);
        assert!((s.omega_var.powi(5) - 22.0).abs() < 1e-12);
        let b0 = 5.0 * w0 / 16.0;
        assert!((s.b0 - b0).abs() < 1e-15);
        assert_eq!(s.criticality, Criticality::Extremum);
        assert_eq!(s.candidates.len(), 1);
        assert!((s.relative_deviation() - 0.2399).abs() < 5e-4);
    }

    #[test]
    fn first_order_profile_shape() {
        let f = trick_reexpand_energy(1).unwrap().strong_coupling();
        for w in [0.3f64, 1.0, 2.5, 7.0] {
            let expect = w / 4.0 + 11.0 / (8.0 * w.powi(4));
            assert!((f.value(w) - expect).abs() < 1e-14 * expect);
        }
    }

    #[test]
    fn subleading_closed_forms() {
        let s = subleading_order1(3).unwrap();
        assert_eq!(s.omega[0], Surd::root(22, r(1, 5)));
        assert_eq!(s.omega[1], Surd::root(22, r(-1, 5)).scale(&rat(1, 5)));
        assert_eq!(s.omega[2], Surd::root(10648, r(-1, 5)).scale(&rat(1, 25)));
        assert_eq!(s.b[0], Surd::root(22, r(1, 5)).scale(&rat(5, 16)));
        assert_eq!(s.b[1], Surd::root(22, r(-1, 5)).scale(&rat(1, 4)));
        assert_eq!(s.b[2], Surd::root(22, r(-3, 5)).scale(&rat(-1, 40)));
    }

    #[test]
    fn subleading_matches_numeric_solution() {
        // Solve W⁵ − ηW³ − 22 = 0 at small η and compare the energy.
        let s = subleading_order1(3).unwrap();
        let eta = 1e-3f64;
        let w = super::super::bisect(|w| w.powi(5) - eta * w.powi(3) - 22.0, 1.0, 3.0, 1e-16);
        let e = w / 4.0 + eta / (4.0 * w) + 11.0 / (8.0 * w.powi(4));
        let series = s.b[0].value() + s.b[1].value() * eta + s.b[2].value() * eta * eta;
        assert!((e - series).abs() < 1e-9 * e);
    }

    #[test]
    fn candidates_agree_between_rules() {
        let t = trick_reexpand_energy(4).unwrap();
        let a = naive_b0_from(&t, &NaiveConfig::default()).unwrap();
        let b = naive_b0_from(&t, &NaiveConfig { rule: NaiveRule::Flattest, ..NaiveConfig::default() }).unwrap();
        assert_eq!(a.candidates, b.candidates);
        assert!(a.candidates.iter().any(|c| c.b0 == b.b0));
    }

    #[test]
    fn empty_bracket_reports_no_pms_point() {
        let t = trick_reexpand_energy(1).unwrap();
        let cfg = NaiveConfig { bracket: (5.0, 9.0), ..NaiveConfig::default() };
        assert!(matches!(naive_b0_from(&t, &cfg), Err(Error::NoPmsPoint { order: 1, .. })));
    }

    proptest! {
        #[test]
        fn profile_derivatives_match_finite_differences(n in 1usize..6, w in 1.0f64..4.0) {
            let f = trick_reexpand_energy(n).unwrap().strong_coupling();
            // Richardson-extrapolated central differences.
            let fd = |g: &dyn Fn(f64) -> f64, h: f64| {
                let c = |h: f64| (g(w + h) - g(w - h)) / (2.0 * h);
                (4.0 * c(h / 2.0) - c(h)) / 3.0
            };
            let h = 1e-3 * w;
            let d1 = fd(&|x| f.value(x), h);
            let d2 = fd(&|x| f.derivative(x), h);
            // Terms cancel strongly, so compare against their absolute sum.
            let mag = |d: i32| -> f64 {
                f.coefficients().iter().enumerate().map(|(k, a)| {
                    let e = 1 - 5 * k as i32;
                    let fall: f64 = (0..d).map(|i| (e - i) as f64).product();
                    (to_f64(a) * fall).abs() * w.powi(e - d)
                }).sum()
            };
            prop_assert!((d1 - f.derivative(w)).abs() <= 1e-8 * mag(1), "{} vs {}", d1, f.derivative(w));
            prop_assert!((d2 - f.second_derivative(w)).abs() <= 1e-8 * mag(2), "{} vs {}", d2, f.second_derivative(w));
        }

        #[test]
        fn exact_polynomials_agree_with_float_derivatives(n in 1usize..6, w in 1.0f64..4.0) {
            let f = trick_reexpand_energy(n).unwrap().strong_coupling();
            let u = crate::algebra::from_f64(w.powi(-5));
            let wu = to_f64(&u).powf(-0.2);
            let p = to_f64(&f.p_poly().eval(&u));
            let q = -to_f64(&f.q_poly().eval(&u)) / wu;
            prop_assert!((p - f.derivative(wu)).abs() <= 1e-9 * p.abs().max(1.0));
            prop_assert!((q - f.second_derivative(wu)).abs() <= 1e-9 * q.abs().max(1.0));
        }
    }
}
