use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::{fmt_rational, BigRational, Field, Ring};
use crate::error::{Error, Result};

/// Exact complex number `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRational { re, im: BigRational::zero() }
    }

    pub fn imag(im: BigRational) -> Self {
        GaussRational { re: BigRational::zero(), im }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::imag(super::int(1))
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::real(super::int(1)),
            1 => Self::imag(super::int(1)),
            2 => Self::real(super::int(-1)),
            _ => Self::imag(super::int(-1)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        GaussRational::new(&self.re * q, &self.im * q)
    }

    /// Multiplicative inverse, or `DivisionByZero`.
    pub fn inverse(&self) -> Result<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussRational::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// `self · i^{-k}`, which is rational exactly when `self` lies in `i^k ℚ`.
    pub fn rotate(&self, k: i64) -> Self {
        self * &Self::i_pow(-k)
    }

    /// The rational `q` with `self = i^k q`, if it exists.
    pub fn graded_part(&self, k: i64) -> Option<BigRational> {
        let r = self.rotate(k);
        if r.is_real() {
            Some(r.re)
        } else {
            None
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (super::to_f64(&self.re), super::to_f64(&self.im))
    }
}

// `3i/2`, `-i`, `5i`.
fn fmt_imag(q: &BigRational) -> String {
    let n = q.numer().to_string();
    let n = match n.as_str() {
        "1" => String::new(),
        "-1" => "-".to_string(),
        _ => n,
    };
    if q.is_integer() {
        format!("{n}i")
    } else {
        format!("{n}i/{}", q.denom())
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", fmt_imag(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}", fmt_rational(&self.re), sign, fmt_imag(&self.im.abs()))
            }
        }
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        // Most coefficients are purely real or purely imaginary; skip the
        // zero cross terms instead of multiplying through them.
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        if !self.re.is_zero() {
            if !rhs.re.is_zero() {
                re += &self.re * &rhs.re;
            }
            if !rhs.im.is_zero() {
                im += &self.re * &rhs.im;
            }
        }
        if !self.im.is_zero() {
            if !rhs.im.is_zero() {
                re -= &self.im * &rhs.im;
            }
            if !rhs.re.is_zero() {
                im += &self.im * &rhs.re;
            }
        }
        GaussRational::new(re, im)
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: GaussRational) -> GaussRational {
        &self + &rhs
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: GaussRational) -> GaussRational {
        &self - &rhs
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: GaussRational) -> GaussRational {
        &self * &rhs
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-&self.re, -&self.im)
    }
}

impl From<BigRational> for GaussRational {
    fn from(q: BigRational) -> Self {
        GaussRational::real(q)
    }
}

impl Ring for GaussRational {
    fn zero() -> Self {
        GaussRational::default()
    }
    fn one() -> Self {
        GaussRational::real(super::int(1))
    }
    fn is_zero(&self) -> bool {
        GaussRational::is_zero(self)
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
        GaussRational::real(super::int(n))
    }
    fn add_assign(&mut self, rhs: &Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
    fn scale_int(&self, n: i64) -> Self {
        self.scale(&super::int(n))
    }
}

impl Field for GaussRational {
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use proptest::prelude::*;

    fn g(a: (i64, i64), b: (i64, i64)) -> GaussRational {
        GaussRational::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let mi = -GaussRational::i();
        assert_eq!(&mi * &mi, GaussRational::real(int(-1)));
    }

    #[test]
    fn additive_identity_and_scaling() {
        let mi = -GaussRational::i();
        assert_eq!(&mi + &GaussRational::zero(), mi);
        let third = GaussRational::imag(rat(-1, 3));
        assert_eq!(third.scale(&int(3)), mi);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let x = GaussRational::i();
        assert!(matches!(x.checked_div(&GaussRational::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(g((3, 2), (0, 1)).to_string(), "3/2");
        assert_eq!(g((0, 1), (-1, 3)).to_string(), "-i/3");
        assert_eq!(g((0, 1), (3, 2)).to_string(), "3i/2");
        assert_eq!(g((0, 1), (1, 1)).to_string(), "i");
        assert_eq!(g((1, 2), (-2, 1)).to_string(), "1/2 - 2i");
    }

    fn small() -> impl Strategy<Value = GaussRational> {
        (-20i64..20, 1i64..12, -20i64..20, 1i64..12).prop_map(|(a, b, c, d)| g((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn ring_axioms(x in small(), y in small(), z in small()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn inverse_round_trips(x in small()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inverse().unwrap(), GaussRational::one());
        }
    }
}
