//! Floating-point cross-checks that share no code with the exact paths.

use crate::error::{Error, Result};

/// `x³` in the oscillator eigenbasis `|0⟩ … |n_max⟩`, with
/// `x = (a + a†)/√2`, stored dense.
#[derive(Clone, Debug, PartialEq)]
pub struct OscillatorBasisOperator {
    n_max: usize,
    m: Vec<Vec<f64>>,
}

impl OscillatorBasisOperator {
    pub fn cubic(n_max: usize) -> Self {
        // Build x on a basis three states larger so the cube is exact on
        // the kept block.
        let big = n_max + 4;
        let mut x = vec![vec![0.0; big]; big];
        for n in 0..big - 1 {
            let v = ((n + 1) as f64 / 2.0).sqrt();
            x[n][n + 1] = v;
            x[n + 1][n] = v;
        }
        let mul = |a: &Vec<Vec<f64>>, b: &Vec<Vec<f64>>| {
            let mut c = vec![vec![0.0; big]; big];
            for i in 0..big {
                for k in 0..big {
                    if a[i][k] != 0.0 {
                        for j in 0..big {
                            c[i][j] += a[i][k] * b[k][j];
                        }
                    }
                }
            }
            c
        };
        let x3 = mul(&mul(&x, &x), &x);
        let m = x3.into_iter().take(n_max + 1).map(|row| row.into_iter().take(n_max + 1).collect()).collect();
        OscillatorBasisOperator { n_max, m }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.m[row][col]
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Rayleigh–Schrödinger corrections `ε_0 … ε_K` for `H0 + i ĝ x³`.
///
/// Writing the `k`-th state correction as `i^k φ_k` and the energy
/// correction as `i^k e_k` keeps the recursion real:
/// `e_k = (x³ φ_{k−1})_0`, `φ_k = −(x³ φ_{k−1} − Σ e_j φ_{k−j})_n / n` for
/// `n ≥ 1`. The physical coefficient is `ε_k = Re(i^k) e_k`.
pub fn rs_energy_series(order: usize, n_max: usize) -> Result<Vec<f64>> {
    if n_max < 3 * order {
        return Err(Error::invalid(format!("n_max = {n_max} is below 3K = {}", 3 * order)));
    }
    let op = OscillatorBasisOperator::cubic(n_max);
    let dim = n_max + 1;
    let mut phi: Vec<Vec<f64>> = vec![{
        let mut v = vec![0.0; dim];
        v[0] = 1.0;
        v
    }];
    let mut e = vec![0.5];
    for k in 1..=order {
        let mut w = op.apply(&phi[k - 1]);
        e.push(w[0]);
        for j in 1..k {
            for (wi, pi) in w.iter_mut().zip(&phi[k - j]) {
                *wi -= e[j] * pi;
            }
        }
        let mut next = vec![0.0; dim];
        for n in 1..dim {
            next[n] = -w[n] / n as f64;
        }
        phi.push(next);
    }
    Ok(e
        .iter()
        .enumerate()
        .map(|(k, &v)| match k % 4 {
            0 => v,
            2 => -v,
            _ => 0.0,
        })
        .collect())
}

/// Stationary points of `profile` in `[lo, hi]`.
///
/// The derivative is taken by central differences on a uniform grid of
/// `resolution` points; every sign change is refined by bisection.
pub fn grid_pms_oracle<F: Fn(f64) -> f64>(profile: F, bracket: (f64, f64), resolution: usize) -> Result<Vec<f64>> {
    let (lo, hi) = bracket;
    if !(lo < hi) {
        return Err(Error::invalid("empty bracket"));
    }
    if resolution < 100 {
        return Err(Error::invalid("resolution must be at least 100"));
    }
    let h = 1e-5 * (hi - lo);
    let d = |x: f64| (profile(x + h) - profile(x - h)) / (2.0 * h);
    let xs: Vec<f64> = (0..resolution).map(|i| lo + (hi - lo) * i as f64 / (resolution - 1) as f64).collect();
    let ds: Vec<f64> = xs.iter().map(|&x| d(x)).collect();
    let scale = ds.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    // Differences of a flat profile are pure rounding noise.
    let noise = 1e-9 * (scale + xs.iter().map(|&x| profile(x).abs()).fold(0.0, f64::max) / h);
    let mut out = Vec::new();
    let mut last: Option<usize> = None;
    for i in 0..xs.len() {
        if ds[i].abs() <= noise {
            continue;
        }
        if let Some(j) = last {
            if (ds[j] > 0.0) != (ds[i] > 0.0) {
                let (mut a, mut b) = (xs[j], xs[i]);
                let sa = ds[j] > 0.0;
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if b - a <= 1e-14 * mid.abs().max(1.0) {
                        break;
                    }
                    if (d(mid) > 0.0) == sa {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                out.push(0.5 * (a + b));
            }
        }
        last = Some(i);
    }
    Ok(out)
}
