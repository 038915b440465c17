//! Exact coefficient arithmetic.
//!
//! Every recursion in this crate runs over exact numbers: arbitrary-precision
//! rationals, Gaussian rationals built from them, dense univariate polynomials
//! and truncated power series over either. Floating point only appears at the
//! boundary, when a finished coefficient is handed to an optimizer or printed.

mod binomial;
mod gauss;
mod poly;
mod series;
mod surd;

pub use binomial::half_binomial;
pub use gauss::GaussRational;
pub use num_rational::BigRational;
pub use poly::Poly;
pub use series::Series;
pub use surd::Surd;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Commutative ring with unit, as needed by [`Poly`] and [`Series`].
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;

    fn add_assign(&mut self, rhs: &Self) {
        *self = Ring::add(self, rhs);
    }

    fn scale_int(&self, n: i64) -> Self {
        Ring::mul(self, &Self::from_i64(n))
    }
}

/// A ring in which nonzero elements can be inverted.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest `f64` to an exact rational, correct even when numerator and
/// denominator individually overflow `f64`.
pub fn to_f64(q: &BigRational) -> f64 {
    if Zero::is_zero(q) {
        return 0.0;
    }
    let (n, d) = (q.numer(), q.denom());
    if let (Some(nf), Some(df)) = (n.to_f64(), d.to_f64()) {
        if nf.is_finite() && df.is_finite() && nf.abs() < 1e300 && df < 1e300 {
            return nf / df;
        }
    }
    // Shift both to ~64 significant bits before dividing.
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let nn = (n.abs() >> shift_n as usize).to_f64().unwrap_or(f64::MAX);
    let dd = (d >> shift_d as usize).to_f64().unwrap_or(f64::MAX);
    let mag = (nn / dd) * 2f64.powi((shift_n - shift_d) as i32);
    if n.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Exact rational with the same value as a finite `f64`.
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Format as `n/d`, or just `n` for integers.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
