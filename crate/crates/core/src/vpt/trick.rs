use crate::algebra::{half_binomial, int, rat, to_f64, BigRational};
use crate::bender_wu::{ground_state_series, EnergyCoefficients};
use crate::error::{Error, Result};

use super::naive::StrongCouplingFunction;

/// Energy series after the square-root trick, truncated at `α^N`:
///
/// ```text
/// E^(N)(α, ω, Ω) = Σ_{k=0}^{N} ε_{2k} ħ^{k+1} α^k Ω^{1−5k}
///                  Σ_{j=0}^{N−k} C((1−5k)/2, j) ((ω²−Ω²)/Ω²)^j
/// ```
///
/// with `ε_0 = 1/2` and `α = g²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrickSeries {
    order: usize,
    // eps[k] = ε_{2k}
    eps: Vec<BigRational>,
}

impl TrickSeries {
    /// Needs `ε` through order `2N`.
    pub fn from_energy(eps: &EnergyCoefficients, order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::invalid("order must be at least 1"));
        }
        if eps.order() < 2 * order {
            return Err(Error::invalid(format!("order {order} needs ε through {}", 2 * order)));
        }
        let eps = (0..=order)
            .map(|k| {
                eps.get(2 * k)
                    .graded_part(0)
                    .ok_or_else(|| Error::domain(format!("ε_{} is not real", 2 * k)))
            })
            .collect::<Result<_>>()?;
        Ok(TrickSeries { order, eps })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `ε_{2k}`.
    pub fn eps(&self, k: usize) -> &BigRational {
        &self.eps[k]
    }

    /// Exponent `1 − 5k` of `Ω` in the `α^k` term.
    pub fn omega_exponent(k: usize) -> i64 {
        1 - 5 * k as i64
    }

    /// `ε_{2k} C((1−5k)/2, j)`, the weight of `α^k Ω^{1−5k} ((ω²−Ω²)/Ω²)^j`.
    pub fn coefficient(&self, k: usize, j: usize) -> BigRational {
        if k > self.order || j > self.order - k {
            return int(0);
        }
        &self.eps[k] * half_binomial(&rat(Self::omega_exponent(k), 2), j)
    }

    /// Exact value for rational arguments.
    pub fn eval_exact(&self, hbar: &BigRational, alpha: &BigRational, omega: &BigRational, big_omega: &BigRational) -> BigRational {
        let w2 = big_omega * big_omega;
        let ratio = (omega * omega - &w2) / &w2;
        let mut total = int(0);
        for k in 0..=self.order {
            let mut inner = int(0);
            let mut pow = int(1);
            for j in 0..=self.order - k {
                inner += self.coefficient(k, j) * &pow;
                pow *= &ratio;
            }
            let pre = num_traits::pow(hbar.clone(), k + 1)
                * num_traits::pow(alpha.clone(), k)
                * rational_powi(big_omega, Self::omega_exponent(k));
            total += pre * inner;
        }
        total
    }

    /// The untricked series `Σ_{k ≤ N} ε_{2k} ħ^{k+1} α^k ω^{1−5k}`.
    pub fn plain_exact(&self, hbar: &BigRational, alpha: &BigRational, omega: &BigRational) -> BigRational {
        (0..=self.order)
            .map(|k| {
                &self.eps[k]
                    * num_traits::pow(hbar.clone(), k + 1)
                    * num_traits::pow(alpha.clone(), k)
                    * rational_powi(omega, Self::omega_exponent(k))
            })
            .sum()
    }

    pub fn eval(&self, hbar: f64, alpha: f64, omega: f64, big_omega: f64) -> f64 {
        let ratio = (omega * omega - big_omega * big_omega) / (big_omega * big_omega);
        (0..=self.order)
            .map(|k| {
                let inner: f64 = (0..=self.order - k)
                    .map(|j| to_f64(&self.coefficient(k, j)) * ratio.powi(j as i32))
                    .sum();
                hbar.powi(k as i32 + 1) * alpha.powi(k as i32) * big_omega.powi(Self::omega_exponent(k) as i32) * inner
            })
            .sum()
    }

    /// Limit `ω → 0`, in the reduced parameter `Ω̂ = Ω / (ħα)^{1/5}`.
    pub fn strong_coupling(&self) -> StrongCouplingFunction {
        let a = (0..=self.order)
            .map(|k| {
                let mut s = int(0);
                for j in 0..=self.order - k {
                    let c = self.coefficient(k, j);
                    if j % 2 == 0 {
                        s += c;
                    } else {
                        s -= c;
                    }
                }
                s
            })
            .collect();
        StrongCouplingFunction::new(a)
    }
}

fn rational_powi(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// Square-root trick applied to the plain energy series at order `N`.
pub fn trick_reexpand_energy(order: usize) -> Result<TrickSeries> {
    if order < 1 {
        return Err(Error::invalid("order must be at least 1"));
    }
    let (_, eps) = ground_state_series(2 * order)?;
    TrickSeries::from_energy(&eps, order)
}
