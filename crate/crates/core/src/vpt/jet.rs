use std::ops::{Add, Mul, Neg, Sub};

const ORDER: usize = 3;

/// Truncated Taylor expansion in two variables through total degree 3.
///
/// `c[a][b]` multiplies `h_0^a h_1^b`; entries with `a + b > 3` stay zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    c: [[f64; ORDER + 1]; ORDER + 1],
}

impl Jet2 {
    pub fn constant(v: f64) -> Self {
        let mut c = [[0.0; ORDER + 1]; ORDER + 1];
        c[0][0] = v;
        Jet2 { c }
    }

    /// The coordinate `x_axis` (0 or 1) expanded around `v`.
    pub fn variable(v: f64, axis: usize) -> Self {
        let mut j = Self::constant(v);
        if axis == 0 {
            j.c[1][0] = 1.0;
        } else {
            j.c[0][1] = 1.0;
        }
        j
    }

    pub fn value(&self) -> f64 {
        self.c[0][0]
    }

    /// Partial derivative `∂^{a+b} / ∂x_0^a ∂x_1^b`.
    pub fn derivative(&self, a: usize, b: usize) -> f64 {
        if a + b > ORDER {
            return f64::NAN;
        }
        self.c[a][b] * factorial(a) * factorial(b)
    }

    pub fn gradient(&self) -> [f64; 2] {
        [self.derivative(1, 0), self.derivative(0, 1)]
    }

    pub fn hessian(&self) -> [[f64; 2]; 2] {
        let xy = self.derivative(1, 1);
        [[self.derivative(2, 0), xy], [xy, self.derivative(0, 2)]]
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        out.c.iter_mut().flatten().for_each(|x| *x *= s);
        out
    }

    /// Compose with a scalar function given its value and first three
    /// derivatives at the constant term.
    fn compose(&self, d: [f64; ORDER + 1]) -> Self {
        let mut h = *self;
        h.c[0][0] = 0.0;
        let mut out = Self::constant(d[0]);
        let mut pow = Self::constant(1.0);
        for (n, dn) in d.iter().enumerate().skip(1) {
            pow = pow * h;
            out = out + pow.scale(dn / factorial(n));
        }
        out
    }

    /// `self^q` for a positive constant term.
    pub fn powf(&self, q: f64) -> Self {
        let x = self.value();
        self.compose([
            x.powf(q),
            q * x.powf(q - 1.0),
            q * (q - 1.0) * x.powf(q - 2.0),
            q * (q - 1.0) * (q - 2.0) * x.powf(q - 3.0),
        ])
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(1.0), |acc, _| acc * *self)
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).product::<usize>() as f64
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(mut self, rhs: Jet2) -> Jet2 {
        for a in 0..=ORDER {
            for b in 0..=ORDER - a {
                self.c[a][b] += rhs.c[a][b];
            }
        }
        self
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self + (-rhs)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let mut out = Jet2::constant(0.0);
        for a1 in 0..=ORDER {
            for b1 in 0..=ORDER - a1 {
                let x = self.c[a1][b1];
                if x == 0.0 {
                    continue;
                }
                for a2 in 0..=ORDER - a1 - b1 {
                    for b2 in 0..=ORDER - a1 - b1 - a2 {
                        out.c[a1 + a2][b1 + b2] += x * rhs.c[a2][b2];
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_derivatives() {
        // f = x² y + y³ at (2, 3)
        let x = Jet2::variable(2.0, 0);
        let y = Jet2::variable(3.0, 1);
        let f = x.powi(2) * y + y.powi(3);
        assert_eq!(f.value(), 39.0);
        assert_eq!(f.gradient(), [12.0, 31.0]);
        assert_eq!(f.hessian(), [[6.0, 4.0], [4.0, 18.0]]);
        assert_eq!(f.derivative(2, 1), 2.0);
        assert_eq!(f.derivative(0, 3), 6.0);
        assert_eq!(f.derivative(3, 0), 0.0);
    }

    #[test]
    fn fractional_power_matches_closed_form() {
        // (x + 2y)^{-3/2} at (1, 1)
        let s = Jet2::variable(1.0, 0) + Jet2::variable(1.0, 1).scale(2.0);
        let f = s.powf(-1.5);
        let u: f64 = 3.0;
        assert!((f.value() - u.powf(-1.5)).abs() < 1e-15);
        assert!((f.derivative(1, 1) - 2.0 * 3.75 * u.powf(-3.5)).abs() < 1e-14);
        assert!((f.derivative(0, 3) - 8.0 * -1.5 * -2.5 * -3.5 * u.powf(-4.5)).abs() < 1e-13);
    }
}
