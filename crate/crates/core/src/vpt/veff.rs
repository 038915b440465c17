use num_complex::Complex64;
use num_rational::Ratio;

use crate::algebra::{half_binomial, int, rat, to_f64, BigRational, Series, Surd};
use crate::effective_potential::{loop_coefficients, LoopExpansion};
use crate::error::{Error, Result};

use super::jet::Jet2;
use super::roots::{bisect, log_grid};
use super::{Candidate, Criticality, Variant, VptSolution};

/// Loop expansion after the square-root trick in `ħ`, on the slice
/// `X = −i y`:
///
/// ```text
/// V^(N)(y, Ω) = −ω²y²/2 − g y³
///     + Σ_{l=1}^{N} ħ^l r_l g^{2(l−1)} Σ_{j=0}^{N−l} C(p_l/2, j) (ω²−Ω²)^j A^{p_l/2−j}
/// ```
///
/// with `A = Ω² + 6 g y` and `p_l = 1 − 5(l−1)`. Every term is real for
/// `A > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrickedVeff {
    order: usize,
    r: Vec<BigRational>,
    hbar: f64,
    omega: f64,
    g: f64,
    // (prefactor, power of (ω² − Ω²), power of A)
    terms: Vec<(f64, u32, f64)>,
}

impl TrickedVeff {
    pub fn new(loops: &LoopExpansion, order: usize, hbar: f64, omega: f64, g: f64) -> Result<Self> {
        if order < 1 || order > loops.loops() {
            return Err(Error::invalid(format!("order must be in 1..={}", loops.loops())));
        }
        let r: Vec<BigRational> = loops.as_slice()[..order].to_vec();
        let mut terms = Vec::new();
        for l in 1..=order {
            let half_p = rat(LoopExpansion::omega_exponent(l), 2);
            let pre = hbar.powi(l as i32) * to_f64(&r[l - 1]) * g.powi(2 * (l as i32 - 1));
            for j in 0..=order - l {
                let c = to_f64(&half_binomial(&half_p, j));
                terms.push((pre * c, j as u32, to_f64(&half_p) - j as f64));
            }
        }
        Ok(TrickedVeff { order, r, hbar, omega, g, terms })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn params(&self) -> (f64, f64, f64) {
        (self.hbar, self.omega, self.g)
    }

    /// `A = Ω² + 6 g y`.
    pub fn a(&self, y: f64, big_omega: f64) -> f64 {
        big_omega * big_omega + 6.0 * self.g * y
    }

    /// `Σ_{j ≤ N−l} C(p_l/2, j) s^j`, the exact factor multiplying
    /// `A^{p_l/2}` at loop `l` when `s = (ω²−Ω²)/A`.
    pub fn loop_factor(&self, l: usize, s: &BigRational) -> BigRational {
        let half_p = rat(LoopExpansion::omega_exponent(l), 2);
        let mut acc = int(0);
        let mut pow = int(1);
        for j in 0..=self.order - l {
            acc += half_binomial(&half_p, j) * &pow;
            pow *= s;
        }
        acc
    }

    pub fn r(&self, l: usize) -> &BigRational {
        &self.r[l - 1]
    }

    /// Value and derivatives through third order in `(y, Ω)`, or `None`
    /// outside `A > 0`.
    pub fn jet(&self, y: f64, big_omega: f64) -> Option<Jet2> {
        if !(self.a(y, big_omega) > 0.0) {
            return None;
        }
        let yj = Jet2::variable(y, 0);
        let wj = Jet2::variable(big_omega, 1);
        let w2 = wj * wj;
        let a = w2 + yj.scale(6.0 * self.g);
        let b = Jet2::constant(self.omega * self.omega) - w2;
        let mut v = yj.powi(2).scale(-0.5 * self.omega * self.omega) - yj.powi(3).scale(self.g);
        for &(c, j, q) in &self.terms {
            v = v + (b.powi(j) * a.powf(q)).scale(c);
        }
        Some(v)
    }

    pub fn value(&self, y: f64, big_omega: f64) -> f64 {
        self.jet(y, big_omega).map_or(f64::NAN, |j| j.value())
    }

    /// `(∂V/∂y, ∂V/∂Ω)`.
    pub fn gradient(&self, y: f64, big_omega: f64) -> [f64; 2] {
        self.jet(y, big_omega).map_or([f64::NAN; 2], |j| j.gradient())
    }

    /// The untricked loop sum `Σ_{l ≤ N} ħ^l V^(l)` plus the classical part.
    pub fn untricked(&self, y: f64) -> f64 {
        let wt2 = self.omega * self.omega + 6.0 * self.g * y;
        let mut v = -0.5 * self.omega * self.omega * y * y - self.g * y.powi(3);
        for l in 1..=self.order {
            let p = LoopExpansion::omega_exponent(l) as f64;
            v += self.hbar.powi(l as i32) * to_f64(self.r(l)) * self.g.powi(2 * (l as i32 - 1)) * wt2.powf(p / 2.0);
        }
        v
    }
}

/// Tricked effective potential of order `N` at the given parameters.
pub fn veff_trick(order: usize, hbar: f64, omega: f64, g: f64) -> Result<TrickedVeff> {
    let loops = loop_coefficients(order.max(1))?;
    TrickedVeff::new(&loops, order, hbar, omega, g)
}

#[derive(Clone, Debug)]
pub struct VeffConfig {
    /// Seed and scan range for the background `y`.
    pub y_range: (f64, f64),
    /// Seed range for `Ω > 0`.
    pub omega_range: (f64, f64),
    pub y_seeds: usize,
    pub omega_seeds: usize,
    /// Stationarity tolerance on the gradient.
    pub tol: f64,
    /// `|V_ΩΩ|` below this counts as a turning point.
    pub flat_tol: f64,
}

impl Default for VeffConfig {
    fn default() -> Self {
        VeffConfig {
            y_range: (0.02, 3.0),
            omega_range: (0.05, 4.0),
            y_seeds: 24,
            omega_seeds: 24,
            tol: 1e-11,
            flat_tol: 1e-9,
        }
    }
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Damped Newton for a 2×2 system; `None` if it leaves the domain or stalls.
fn newton2<F>(f: F, mut x: [f64; 2], tol: f64) -> Option<[f64; 2]>
where
    F: Fn([f64; 2]) -> Option<([f64; 2], [[f64; 2]; 2])>,
{
    for _ in 0..100 {
        let (r, j) = f(x)?;
        let rn = norm(r);
        if rn < tol * 1e-2 {
            return Some(x);
        }
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let dx = [(-r[0] * j[1][1] + r[1] * j[0][1]) / det, (-r[1] * j[0][0] + r[0] * j[1][0]) / det];
        let mut lambda = 1.0;
        loop {
            let trial = [x[0] + lambda * dx[0], x[1] + lambda * dx[1]];
            if let Some((rt, _)) = f(trial) {
                if norm(rt) < rn || norm(rt) < tol * 1e-2 {
                    let small = (lambda * dx[0]).abs() <= 1e-16 * x[0].abs().max(1e-300)
                        && (lambda * dx[1]).abs() <= 1e-16 * x[1].abs().max(1e-300);
                    x = trial;
                    if small {
                        return (norm(rt) < tol).then_some(x);
                    }
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-8 {
                return (rn < tol).then_some(x);
            }
        }
    }
    let (r, _) = f(x)?;
    (norm(r) < tol).then_some(x)
}

struct Point {
    y: f64,
    w: f64,
    jet: Jet2,
}

impl Point {
    fn candidate(&self, flat_tol: f64) -> Candidate {
        let vww = self.jet.derivative(0, 2);
        let (criticality, curvature) = if vww.abs() > flat_tol {
            (Criticality::Extremum, vww)
        } else {
            (Criticality::TurningPoint, self.jet.derivative(0, 3))
        };
        Candidate { omega_var: self.w, y: Some(self.y), b0: self.jet.value(), criticality, curvature }
    }
}

fn push_unique(points: &mut Vec<Point>, p: Point) {
    let same = points.iter().any(|q| (q.y - p.y).abs() <= 1e-8 * (1.0 + q.y.abs()) && (q.w - p.w).abs() <= 1e-8 * (1.0 + q.w.abs()));
    if !same {
        points.push(p);
    }
}

fn axis_points(v: &TrickedVeff, cfg: &VeffConfig) -> Vec<Point> {
    let dy = |y: f64| v.gradient(y, 0.0)[0];
    let grid = log_grid(cfg.y_range.0, cfg.y_range.1, 40 * cfg.y_seeds);
    let mut out = Vec::new();
    for pair in grid.windows(2) {
        let (a, b) = (dy(pair[0]), dy(pair[1]));
        if !(a.is_finite() && b.is_finite()) || (a > 0.0) == (b > 0.0) {
            continue;
        }
        let mut y = bisect(dy, pair[0], pair[1], 1e-15);
        // Newton polish in y alone.
        for _ in 0..5 {
            let Some(j) = v.jet(y, 0.0) else { break };
            let step = j.derivative(1, 0) / j.derivative(2, 0);
            if !step.is_finite() || !(y - step > 0.0) {
                break;
            }
            y -= step;
        }
        if let Some(jet) = v.jet(y, 0.0) {
            if jet.derivative(1, 0).abs() < cfg.tol {
                push_unique(&mut out, Point { y, w: 0.0, jet });
            }
        }
    }
    out
}

fn seeds(cfg: &VeffConfig) -> Vec<[f64; 2]> {
    let ys = log_grid(cfg.y_range.0, cfg.y_range.1, cfg.y_seeds);
    let ws = log_grid(cfg.omega_range.0, cfg.omega_range.1, cfg.omega_seeds);
    ys.iter().flat_map(|&y| ws.iter().map(move |&w| [y, w])).collect()
}

fn off_axis(v: &TrickedVeff, cfg: &VeffConfig, turning: bool) -> Vec<Point> {
    let system = |x: [f64; 2]| -> Option<([f64; 2], [[f64; 2]; 2])> {
        if !(x[0] > 0.0) {
            return None;
        }
        let j = v.jet(x[0], x[1])?;
        if turning {
            let r = [j.derivative(1, 0), j.derivative(0, 2)];
            let m = [[j.derivative(2, 0), j.derivative(1, 1)], [j.derivative(1, 2), j.derivative(0, 3)]];
            Some((r, m))
        } else {
            Some((j.gradient(), j.hessian()))
        }
    };
    let mut out = Vec::new();
    for s in seeds(cfg) {
        let Some(x) = newton2(system, s, cfg.tol) else { continue };
        let w = x[1].abs();
        // Far outside the seed box the potential flattens and Newton
        // settles on asymptotic artefacts.
        let inside = x[0] >= 0.1 * cfg.y_range.0 && x[0] <= 10.0 * cfg.y_range.1 && w <= 10.0 * cfg.omega_range.1;
        if w < 1e-7 || !inside {
            continue;
        }
        if let Some(jet) = v.jet(x[0], w) {
            push_unique(&mut out, Point { y: x[0], w, jet });
        }
    }
    out
}

/// Joint PMS optimization in `Ω` and the background.
///
/// Candidates are all stationary points of `V^(N)` on the slice with
/// `y > 0`, `Ω ≥ 0`: the `Ω = 0` axis, where `∂V/∂Ω` vanishes by symmetry,
/// is scanned in `y` directly and the interior is covered by Newton runs
/// from a seed grid. Among extrema in `Ω` the one with the smallest
/// `|∂²V/∂Ω²|` is selected; turning points (`∂V/∂y = ∂²V/∂Ω² = 0`) are used
/// only when no extremum exists.
pub fn veff_optimize(v: &TrickedVeff, cfg: &VeffConfig) -> Result<VptSolution> {
    let mut points = axis_points(v, cfg);
    for p in off_axis(v, cfg, false) {
        push_unique(&mut points, p);
    }
    let mut candidates: Vec<Candidate> = points.iter().map(|p| p.candidate(cfg.flat_tol)).collect();
    let extremum = candidates
        .iter()
        .filter(|c| c.criticality == Criticality::Extremum)
        .min_by(|a, b| a.curvature.abs().total_cmp(&b.curvature.abs()))
        .cloned();

    let turning: Vec<Point> = off_axis(v, cfg, true)
        .into_iter()
        .filter(|p| !points.iter().any(|q| (q.y - p.y).abs() < 1e-8 && (q.w - p.w).abs() < 1e-8))
        .collect();
    for p in &turning {
        let mut c = p.candidate(cfg.flat_tol);
        c.criticality = Criticality::TurningPoint;
        c.curvature = p.jet.derivative(0, 3);
        candidates.push(c);
    }
    candidates.sort_by(|a, b| (a.omega_var, a.y).partial_cmp(&(b.omega_var, b.y)).unwrap());

    let chosen = match extremum {
        Some(c) => c,
        None => candidates
            .iter()
            .filter(|c| c.criticality == Criticality::TurningPoint)
            .min_by(|a, b| {
                let ga = v.gradient(a.y.unwrap(), a.omega_var)[1].abs();
                let gb = v.gradient(b.y.unwrap(), b.omega_var)[1].abs();
                ga.total_cmp(&gb)
            })
            .cloned()
            .ok_or(Error::NoPmsPoint { order: v.order(), lo: cfg.omega_range.0, hi: cfg.omega_range.1 })?,
    };
    let y = chosen.y.unwrap();
    let jet = v.jet(y, chosen.omega_var).ok_or_else(|| Error::NonConvergence("left the domain".into()))?;
    let residuals = match chosen.criticality {
        Criticality::Extremum => vec![jet.derivative(1, 0).abs(), jet.derivative(0, 1).abs()],
        Criticality::TurningPoint => vec![jet.derivative(1, 0).abs(), jet.derivative(0, 2).abs()],
    };
    Ok(VptSolution {
        variant: Variant::Veff,
        order: v.order(),
        omega_var: chosen.omega_var,
        y: Some(y),
        b0: chosen.b0,
        criticality: chosen.criticality,
        residuals,
        candidates,
    })
}

/// Strong-coupling optimum (`ħ = g = 1`, `ω = 0`) from given loop data.
pub fn veff_b0_from(loops: &LoopExpansion, order: usize, cfg: &VeffConfig) -> Result<VptSolution> {
    veff_optimize(&TrickedVeff::new(loops, order, 1.0, 0.0, 1.0)?, cfg)
}

pub fn veff_b0(order: usize) -> Result<VptSolution> {
    let loops = loop_coefficients(order.max(1))?;
    veff_b0_from(&loops, order, &VeffConfig::default())
}

/// Residual of the first-order background equation
/// `X + ω²/(3ig) + ħ/(2 sqrt(6ig) X^{3/2}) = 0`, principal branches.
pub fn veff_x1_residual(x: Complex64, hbar: f64, omega: f64, g: f64) -> Complex64 {
    let i = Complex64::i();
    let six_ig = 6.0 * i * g;
    x + omega * omega / (3.0 * i * g) + hbar / (2.0 * six_ig.sqrt() * x.powf(1.5))
}

/// First-order strong-coupling data of the effective-potential variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeffStrongCoupling {
    /// `X_n` in `X = −i ĝ^{−1/5} sqrt(ħ/ω) Σ_n X_n ĝ^{−4n/5}`.
    pub x: Vec<Surd>,
    /// `b_n` in `E/(ħω ĝ^{2/5}) = Σ_n b_n ĝ^{−4n/5}`.
    pub b: Vec<Surd>,
}

/// Expand the first-order background for large coupling.
///
/// At `Ω = 0` and `ħ = ω = 1`, `y = ĝ^{−1/5} Y` and `ε = ĝ^{−4/5}` turn the
/// background equation into `−εY − 3Y² + (√6/4) Y^{−1/2} = 0`. With
/// `Y = Y_0(1+z)`, `Y_0 = 24^{−1/5}` and `δ = ε/(3Y_0)` this is
/// `−δ(1+z) − (1+z)² + (1+z)^{−1/2} = 0`, and the energy is
/// `E/ĝ^{2/5} = Y_0³[−(3/2)δ(1+z)² − (1+z)³ + 6(1+z)^{1/2}]`.
pub fn veff_strong_coupling_x1(terms: usize) -> Result<VeffStrongCoupling> {
    if terms < 1 {
        return Err(Error::invalid("need at least one term"));
    }
    let order = terms - 1;
    let one = Series::constant(int(1), order);
    let delta = Series::variable(order);
    let z = Series::solve_implicit(order, &rat(-5, 2), |z| {
        let w = one.add(z);
        Ok(delta.mul(&w).add(&w.mul(&w)).scale(&int(-1)).add(&w.powq(&rat(-1, 2))?))
    })?;
    let w = one.add(&z);
    let energy = delta
        .mul(&w.mul(&w))
        .scale(&rat(-3, 2))
        .sub(&w.pow(3))
        .add(&w.powq(&rat(1, 2))?.scale(&int(6)));

    let three_pow = |n: usize| num_traits::pow(int(3), n).recip();
    // δ^n = ε^n (3 Y_0)^{−n}; Y_0 = 24^{−1/5}.
    let x = (0..terms)
        .map(|n| Surd::root(24, Ratio::new(n as i64 - 1, 5)).scale(&(w.coeff(n) * three_pow(n))))
        .collect();
    let b = (0..terms)
        .map(|n| Surd::root(24, Ratio::new(n as i64 - 3, 5)).scale(&(energy.coeff(n) * three_pow(n))))
        .collect();
    Ok(VeffStrongCoupling { x, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::from_f64;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn first_order_closed_form() {
        // −ω²y²/2 − g y³ + (ħ/2) sqrt(Ω² + 6 g y)
        let v = veff_trick(1, 0.7, 1.3, 0.4).unwrap();
        for (y, w) in [(0.2f64, 0.5f64), (1.0, 2.0), (0.05, 0.0)] {
            let expect = -0.5 * 1.69 * y * y - 0.4 * y * y * y + 0.35 * (w * w + 2.4 * y).sqrt();
            assert!((v.value(y, w) - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn identity_trick() {
        for n in 1..=5 {
            let v = veff_trick(n, 0.9, 1.4, 0.3).unwrap();
            for y in [0.1, 0.5, 2.0] {
                assert_eq!(v.value(y, 1.4), v.untricked(y));
            }
            for l in 1..=n {
                assert_eq!(v.loop_factor(l, &int(0)), int(1));
            }
        }
    }

    // Substitute ω² = Ω²(1 + h r) into h^l r_l g^{2(l−1)} (ω² + 6gy)^{p_l/2},
    // expand in h by series arithmetic, cut at h^N, evaluate at h = ħ.
    fn substituted(v: &TrickedVeff, y: &BigRational, w: &BigRational, omega: &BigRational, g: &BigRational, hbar: &BigRational) -> f64 {
        let n = v.order();
        let a = w * w + int(6) * g * y;
        let s = (omega * omega - w * w) / (hbar * &a);
        let base = Series::from_coeffs(vec![int(1), s], n);
        let mut total = 0.0;
        for l in 1..=n {
            let half_p = rat(LoopExpansion::omega_exponent(l), 2);
            let expanded = base.powq(&half_p).unwrap().shift(l);
            let mut poly = int(0);
            for (k, c) in expanded.coeffs().iter().enumerate() {
                poly += c * num_traits::pow(hbar.clone(), k);
            }
            let pre = v.r(l) * num_traits::pow(g.clone(), 2 * (l - 1));
            total += to_f64(&(pre * poly)) * to_f64(&a).powf(to_f64(&half_p));
        }
        let cl = -(omega * omega) * y * y / int(2) - g * y * y * y;
        total + to_f64(&cl)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn closed_form_matches_series_substitution(
            yn in 1i64..40, wn in 1i64..40, on in 0i64..20, gn in 1i64..20, hn in 1i64..20,
        ) {
            let (y, w, om, g, h) = (rat(yn, 16), rat(wn, 16), rat(on, 10), rat(gn, 10), rat(hn, 10));
            let v = veff_trick(3, to_f64(&h), to_f64(&om), to_f64(&g)).unwrap();
            let direct = v.value(to_f64(&y), to_f64(&w));
            let oracle = substituted(&v, &y, &w, &om, &g, &h);
            prop_assert!((direct - oracle).abs() <= 1e-12 * oracle.abs().max(1.0), "{} vs {}", direct, oracle);
        }

        #[test]
        fn gradient_matches_finite_differences(n in 1usize..6, y in 0.2f64..1.5, w in 0.2f64..2.5) {
            let v = veff_trick(n, 1.0, 0.0, 1.0).unwrap();
            let j = v.jet(y, w).unwrap();
            let h = 1e-5;
            let dy = (v.value(y + h, w) - v.value(y - h, w)) / (2.0 * h);
            let dw = (v.value(y, w + h) - v.value(y, w - h)) / (2.0 * h);
            let dww = (v.gradient(y, w + h)[1] - v.gradient(y, w - h)[1]) / (2.0 * h);
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-6 * b.abs().max(1e-2);
            prop_assert!(close(dy, j.derivative(1, 0)));
            prop_assert!(close(dw, j.derivative(0, 1)));
            prop_assert!(close(dww, j.derivative(0, 2)));
        }
    }

    #[test]
    fn first_order_optimum() {
        let s = veff_b0(1).unwrap();
        assert_eq!(s.omega_var, 0.0);
        let y = s.y.unwrap();
        assert!((y - 24f64.powf(-0.2)).abs() < 1e-12);
        assert!((y.powi(5) - 1.0 / 24.0).abs() < 1e-14);
        let b0 = Surd::root(432, r(-1, 5)).scale(&rat(5, 2)).value();
        assert!((s.b0 - b0).abs() < 1e-14);
        assert_eq!(s.criticality, Criticality::Extremum);
    }

    #[test]
    fn reproduces_reference_table() {
        for (n, want) in [(1, 0.742751023), (3, 0.758783545), (4, 0.762843684), (5, 0.762849959)] {
            let got = veff_b0(n).unwrap().b0;
            assert!((got - want).abs() < 1e-8, "N = {n}: {got}");
        }
    }

    #[test]
    fn finite_coupling_background_equation() {
        let v = veff_trick(1, 1.0, 1.0, 1.0).unwrap();
        let s = veff_optimize(&v, &VeffConfig::default()).unwrap();
        assert_eq!(s.omega_var, 0.0);
        let x = Complex64::new(0.0, -s.y.unwrap());
        assert!(veff_x1_residual(x, 1.0, 1.0, 1.0).norm() < 1e-12);
    }

    #[test]
    fn strong_coupling_expansion() {
        let sc = veff_strong_coupling_x1(3).unwrap();
        assert_eq!(sc.x[0], Surd::root(24, r(-1, 5)));
        assert_eq!(sc.x[1], Surd::rational(rat(-2, 15)));
        assert_eq!(sc.x[2], Surd::root(24, r(1, 5)).scale(&rat(1, 75)));
        assert_eq!(sc.b[0], Surd::root(432, r(-1, 5)).scale(&rat(5, 2)));
        assert_eq!(sc.b[1], Surd::root(18, r(-1, 5)).scale(&rat(-1, 4)));
        assert_eq!(sc.b[2], Surd::root(24, r(-1, 5)).scale(&rat(1, 15)));
    }

    #[test]
    fn strong_coupling_expansion_against_numeric_root() {
        let g = 1e4;
        let v = veff_trick(1, 1.0, 1.0, g).unwrap();
        let cfg = VeffConfig { y_range: (1e-3, 3.0), ..VeffConfig::default() };
        let s = veff_optimize(&v, &cfg).unwrap();
        let sc = veff_strong_coupling_x1(3).unwrap();
        let e = g.powf(-0.8);
        let series = g.powf(-0.2) * (sc.x[0].value() + sc.x[1].value() * e + sc.x[2].value() * e * e);
        let y = s.y.unwrap();
        assert!((y - series).abs() < 1e-6 * y);
        assert!(veff_x1_residual(Complex64::new(0.0, -y), 1.0, 1.0, g).norm() < 1e-10 * y);
    }

    #[test]
    fn candidates_are_stationary() {
        for n in 1..=5 {
            let s = veff_b0(n).unwrap();
            let v = veff_trick(n, 1.0, 0.0, 1.0).unwrap();
            for c in s.candidates.iter().filter(|c| c.criticality == Criticality::Extremum) {
                let grad = v.gradient(c.y.unwrap(), c.omega_var);
                assert!(norm(grad) < 1e-10, "N = {n}: {c:?}");
            }
            assert!(s.residuals.iter().all(|r| *r < 1e-10));
        }
    }

    #[test]
    fn exact_loop_factor_matches_float_terms() {
        let v = veff_trick(4, 1.0, 0.5, 1.0).unwrap();
        let s = from_f64(0.125);
        let f = to_f64(&v.loop_factor(2, &s));
        let p = -2.0;
        let expect = 1.0 + p * 0.125 + p * (p - 1.0) / 2.0 * 0.125f64.powi(2);
        assert!((f - expect).abs() < 1e-15);
    }
}
