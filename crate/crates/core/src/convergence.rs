//! Relative deviations and the straight-line fit `ln d = a N^{3/5} + c`.

use serde::Serialize;

use crate::error::{Error, Result};

/// `|b − b_ref| / |b_ref|`.
pub fn relative_deviation(b: f64, b_ref: f64) -> Result<f64> {
    if b_ref == 0.0 {
        return Err(Error::domain("reference value is zero"));
    }
    Ok((b - b_ref).abs() / b_ref.abs())
}

/// Regressor `N^{3/5}`.
pub fn regressor(order: usize) -> f64 {
    (order as f64).powf(0.6)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub intercept_stderr: f64,
    /// `(N, deviation)`, sorted by `N`.
    pub points: Vec<(usize, f64)>,
}

impl ConvergenceFit {
    /// `ln d − (a x + c)` per point.
    pub fn residuals(&self) -> Vec<f64> {
        self.points
            .iter()
            .map(|&(n, d)| d.ln() - (self.slope * regressor(n) + self.intercept))
            .collect()
    }

    /// `(Σ e, Σ e x)`; both vanish at the least-squares solution.
    pub fn normal_equations(&self) -> [f64; 2] {
        let e = self.residuals();
        let s0 = e.iter().sum();
        let s1 = e.iter().zip(&self.points).map(|(e, &(n, _))| e * regressor(n)).sum();
        [s0, s1]
    }
}

/// Ordinary least squares of `ln d` on `N^{3/5}` with intercept.
///
/// Standard errors use the unbiased residual variance with `n − 2` degrees
/// of freedom. Points are sorted by `N` first so the result does not depend
/// on input order.
pub fn fit_convergence(points: &[(usize, f64)]) -> Result<ConvergenceFit> {
    if points.len() < 3 {
        return Err(Error::invalid(format!("need at least 3 points, got {}", points.len())));
    }
    if let Some(&(n, d)) = points.iter().find(|p| !(p.1 > 0.0)) {
        return Err(Error::domain(format!("deviation at N = {n} is {d}, log undefined")));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let m = pts.len() as f64;
    let xs: Vec<f64> = pts.iter().map(|p| regressor(p.0)).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let xbar = xs.iter().sum::<f64>() / m;
    let ybar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("all points share one order"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ssr: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
    let s2 = ssr / (m - 2.0);
    Ok(ConvergenceFit {
        slope,
        intercept,
        slope_stderr: (s2 / sxx).sqrt(),
        intercept_stderr: (s2 * (1.0 / m + xbar * xbar / sxx)).sqrt(),
        points: pts,
    })
}

/// The same fit restricted to even `N`.
pub fn fit_convergence_even(points: &[(usize, f64)]) -> Result<ConvergenceFit> {
    let even: Vec<_> = points.iter().copied().filter(|p| p.0 % 2 == 0).collect();
    fit_convergence(&even)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn deviation_examples() {
        assert!((relative_deviation(0.5799, 0.762851773).unwrap() - 0.2399).abs() < 1e-4);
        assert_eq!(relative_deviation(0.762851773, 0.762851773).unwrap(), 0.0);
        assert!((relative_deviation(0.742751023, 0.762851773).unwrap() - 0.02635).abs() < 5e-6);
        assert!(matches!(relative_deviation(1.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn exact_law_is_recovered() {
        let pts: Vec<_> = (1..=10).map(|n| (n, (-2.0 * regressor(n) + 1.0).exp())).collect();
        let fit = fit_convergence(&pts).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!(fit.slope_stderr < 1e-6 && fit.intercept_stderr < 1e-6);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(fit_convergence(&[(1, 0.1), (2, 0.01)]), Err(Error::InvalidArgument(_))));
        assert!(matches!(fit_convergence(&[(1, 0.1), (2, 0.0), (3, 0.01)]), Err(Error::Domain(_))));
        assert!(matches!(fit_convergence(&[(1, 0.1), (2, -1.0), (3, 0.01)]), Err(Error::Domain(_))));
    }

    // Closed-form oracle: solve the 2×2 normal equations directly.
    fn normal_solution(pts: &[(usize, f64)]) -> (f64, f64) {
        let (mut n, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(k, d) in pts {
            let (x, y) = (regressor(k), d.ln());
            n += 1.0;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        let det = n * sxx - sx * sx;
        ((n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det)
    }

    fn dataset() -> impl Strategy<Value = Vec<(usize, f64)>> {
        prop::collection::btree_map(1usize..40, 1e-12f64..1.0, 3..15).prop_map(|m| m.into_iter().collect())
    }

    proptest! {
        #[test]
        fn residuals_are_orthogonal(pts in dataset()) {
            let fit = fit_convergence(&pts).unwrap();
            let [a, b] = fit.normal_equations();
            prop_assert!(a.abs() < 1e-12 * pts.len() as f64 * 30.0);
            prop_assert!(b.abs() < 1e-12 * pts.len() as f64 * 30.0 * 10.0);
            let (slope, intercept) = normal_solution(&pts);
            prop_assert!((fit.slope - slope).abs() < 1e-8 * slope.abs().max(1.0));
            prop_assert!((fit.intercept - intercept).abs() < 1e-8 * intercept.abs().max(1.0));
        }

        #[test]
        fn reordering_does_not_matter(pts in dataset(), seed in any::<u64>()) {
            let mut shuffled = pts.clone();
            let len = shuffled.len();
            for i in 0..len {
                let j = (seed.wrapping_mul(6364136223846793005).wrapping_add(i as u64) % len as u64) as usize;
                shuffled.swap(i, j);
            }
            prop_assert_eq!(fit_convergence(&pts).unwrap(), fit_convergence(&shuffled).unwrap());
        }

        #[test]
        fn scaling_shifts_only_the_intercept(pts in dataset(), k in 1e-3f64..1e3) {
            let scaled: Vec<_> = pts.iter().map(|&(n, d)| (n, d * k)).collect();
            let (a, b) = (fit_convergence(&pts).unwrap(), fit_convergence(&scaled).unwrap());
            prop_assert!((a.slope - b.slope).abs() < 1e-9 * a.slope.abs().max(1.0));
            prop_assert!((b.intercept - a.intercept - k.ln()).abs() < 1e-9 * a.intercept.abs().max(1.0));
            prop_assert!((a.slope_stderr - b.slope_stderr).abs() < 1e-9 * a.slope_stderr.max(1e-3));
        }
    }
}
