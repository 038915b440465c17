use super::{BigRational, Field, Ring};
use crate::error::{Error, Result};

/// Power series truncated after `x^order`.
///
/// Products are computed only up to the truncation order; every stored
/// coefficient is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![R::zero(); order + 1] }
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The expansion variable itself, `x`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = R::one();
        }
        s
    }

    /// Coefficients beyond `order` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> R {
        self.coeffs.get(n).cloned().unwrap_or_else(R::zero)
    }

    pub fn set_coeff(&mut self, n: usize, c: R) {
        if n < self.coeffs.len() {
            self.coeffs[n] = c;
        }
    }

    fn common_order(&self, rhs: &Self) -> usize {
        self.order().min(rhs.order())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.common_order(rhs);
        Series { coeffs: (0..=n).map(|i| self.coeffs[i].add(&rhs.coeffs[i])).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.common_order(rhs);
        Series { coeffs: (0..=n).map(|i| self.coeffs[i].sub(&rhs.coeffs[i])).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.common_order(rhs);
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j].add_assign(&a.mul(b));
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: &R) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Series::constant(R::one(), self.order());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `x^k`, dropping what falls off the end.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![R::zero(); n + 1];
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out[i + k] = self.coeffs[i].clone();
            }
        }
        Series { coeffs: out }
    }
}

impl<R: Field> Series<R> {
    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inv().ok_or(Error::DivisionByZero)?;
        let n = self.order();
        let mut out = vec![R::zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut acc = R::zero();
            for i in 1..=k {
                acc.add_assign(&self.coeffs[i].mul(&out[k - i]));
            }
            out[k] = acc.mul(&c0).neg();
        }
        Ok(Series { coeffs: out })
    }
}

impl Series<BigRational> {
    /// `self^p` for rational `p`, for a series with constant term 1.
    ///
    /// Uses the power recurrence `n g_n = Σ_{i=1}^{n} ((p+1) i − n) f_i g_{n−i}`.
    pub fn powq(&self, p: &BigRational) -> Result<Self> {
        if self.coeffs[0] != super::int(1) {
            return Err(Error::invalid("rational power needs constant term 1"));
        }
        let n = self.order();
        let mut g = vec![super::int(0); n + 1];
        g[0] = super::int(1);
        let p1 = p + super::int(1);
        for m in 1..=n {
            let mut acc = super::int(0);
            for i in 1..=m {
                if self.coeffs[i] == super::int(0) {
                    continue;
                }
                let w = &p1 * super::int(i as i64) - super::int(m as i64);
                acc += w * &self.coeffs[i] * &g[m - i];
            }
            g[m] = acc / super::int(m as i64);
        }
        Ok(Series { coeffs: g })
    }

    /// Solve `F(z) = 0` for a series `z` with zero constant term.
    ///
    /// `pivot` must be `∂F/∂z` at the origin; each order is then a linear
    /// equation in the newest coefficient.
    pub fn solve_implicit<F>(order: usize, pivot: &BigRational, f: F) -> Result<Self>
    where
        F: Fn(&Series<BigRational>) -> Result<Series<BigRational>>,
    {
        if *pivot == super::int(0) {
            return Err(Error::DegeneratePivot { order: 1 });
        }
        let mut z = Series::zero(order);
        for n in 1..=order {
            let residual = f(&z)?.coeff(n);
            z.coeffs[n] = -(residual / pivot);
        }
        Ok(z)
    }
}
