use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::{fmt_rational, int, to_f64, BigRational};

/// Exact value `q · Π p^{e_p}` with rational `q`, primes `p` and exponents
/// reduced into `[0, 1)`.
///
/// The reduced form is canonical, so two surds are equal exactly when they
/// denote the same real number. Closed-form constants such as
/// `5·22^{1/5}/16` and `5/(2·432^{1/5})` are compared with `==`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    coeff: BigRational,
    radicals: BTreeMap<u64, Ratio<i64>>,
}

fn factorize(mut n: u64) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn big_pow(base: u64, e: i64) -> BigRational {
    let b = int(base as i64);
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b, (-e) as usize).recip()
    }
}

impl Surd {
    pub fn rational(q: BigRational) -> Self {
        Surd { coeff: q, radicals: BTreeMap::new() }
    }

    /// `radicand^exponent` for a positive integer radicand.
    pub fn root(radicand: u64, exponent: Ratio<i64>) -> Self {
        assert!(radicand > 0, "radicand must be positive");
        let mut s = Surd::rational(int(1));
        for (p, e) in factorize(radicand) {
            s = s.mul(&Surd::prime_power(p, exponent * e));
        }
        s
    }

    fn prime_power(p: u64, exponent: Ratio<i64>) -> Self {
        let whole = exponent.floor().to_integer();
        let frac = exponent - Ratio::from_integer(whole);
        let mut radicals = BTreeMap::new();
        if !frac.is_zero() {
            radicals.insert(p, frac);
        }
        Surd { coeff: big_pow(p, whole), radicals }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        out.coeff *= q;
        if out.coeff.is_zero() {
            out.radicals.clear();
        }
        out
    }

    pub fn mul(&self, rhs: &Surd) -> Self {
        let mut out = Surd { coeff: &self.coeff * &rhs.coeff, radicals: self.radicals.clone() };
        for (&p, &e) in &rhs.radicals {
            let total = out.radicals.get(&p).copied().unwrap_or_else(Ratio::zero) + e;
            if total >= Ratio::one() {
                out.coeff *= int(p as i64);
            }
            let frac = total - Ratio::from_integer(total.floor().to_integer());
            if frac.is_zero() {
                out.radicals.remove(&p);
            } else {
                out.radicals.insert(p, frac);
            }
        }
        if out.coeff.is_zero() {
            out.radicals.clear();
        }
        out
    }

    pub fn recip(&self) -> Self {
        let mut out = Surd::rational(self.coeff.recip());
        for (&p, &e) in &self.radicals {
            out = out.mul(&Surd::prime_power(p, -e));
        }
        out
    }

    pub fn value(&self) -> f64 {
        self.radicals.iter().fold(to_f64(&self.coeff), |acc, (&p, e)| {
            acc * (p as f64).powf(*e.numer() as f64 / *e.denom() as f64)
        })
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.coeff))?;
        for (p, e) in &self.radicals {
            let e = e.reduced();
            if e.denom().is_one() {
                write!(f, "·{p}^{}", e.numer())?;
            } else {
                write!(f, "·{p}^({}/{})", e.numer(), e.denom())?;
            }
        }
        Ok(())
    }
}
