use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::algebra::{from_f64, to_f64, BigRational, Poly};

/// `n` points spaced evenly in `ln x` on `[lo, hi]`, both ends included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

// A dyadic rational `m / 2^e`. Every grid point and bisection midpoint is
// one, which keeps sign evaluation in integer arithmetic.
#[derive(Clone, Debug)]
struct Dyadic {
    m: BigInt,
    e: u64,
}

impl Dyadic {
    fn from_f64(x: f64) -> Self {
        let q = from_f64(x);
        let e = q.denom().bits() - 1;
        Dyadic { m: q.numer().clone(), e }
    }

    fn mid(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let e = a.e.max(b.e);
        let m = (&a.m << (e - a.e)) + (&b.m << (e - b.e));
        Dyadic { m, e: e + 1 }
    }

    fn to_rational(&self) -> BigRational {
        BigRational::new(self.m.clone(), BigInt::one() << self.e)
    }
}

// Integer multiple of the polynomial with the same signs.
fn integer_coefficients(p: &Poly<BigRational>) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    p.coeffs().iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
}

// Sign of `Σ a_i (m/2^e)^i`, via `Σ a_i m^i 2^{e(d−i)}`.
fn sign(a: &[BigInt], x: &Dyadic) -> Ordering {
    let Some(d) = a.len().checked_sub(1) else {
        return Ordering::Equal;
    };
    let mut acc = a[d].clone();
    for i in (0..d).rev() {
        acc = acc * &x.m + (&a[i] << (x.e * (d - i) as u64));
    }
    acc.sign().cmp(&num_bigint::Sign::NoSign)
}

/// Real roots of an exact polynomial in `[lo, hi]` (`0 < lo < hi`).
///
/// Signs are evaluated exactly, so cancellation between large coefficients
/// cannot produce spurious or missed sign changes. Roots of even
/// multiplicity that do not change sign on the grid are not reported.
/// Each root is returned as a rational within `rel_width · |root|`.
pub fn isolate_roots(p: &Poly<BigRational>, lo: f64, hi: f64, points: usize, rel_width: f64) -> Vec<BigRational> {
    let a = integer_coefficients(p);
    let grid: Vec<Dyadic> = log_grid(lo, hi, points).into_iter().map(Dyadic::from_f64).collect();
    let signs: Vec<Ordering> = grid.iter().map(|x| sign(&a, x)).collect();
    let mut roots = Vec::new();
    for i in 0..grid.len() {
        if signs[i] == Ordering::Equal {
            roots.push(grid[i].to_rational());
            continue;
        }
        if i + 1 == grid.len() || signs[i + 1] == Ordering::Equal || signs[i] == signs[i + 1] {
            continue;
        }
        let (mut l, mut r) = (grid[i].clone(), grid[i + 1].clone());
        let sl = signs[i];
        // Halvings needed to bring the bracket below `rel_width · lo`.
        let width = (r.to_rational() - l.to_rational()) / l.to_rational();
        let steps = (to_f64(&width) / rel_width).log2().ceil().max(0.0) as usize + 1;
        for _ in 0..steps {
            let mid = Dyadic::mid(&l, &r);
            match sign(&a, &mid) {
                Ordering::Equal => {
                    l = mid.clone();
                    r = mid;
                    break;
                }
                s if s == sl => l = mid,
                _ => r = mid,
            }
        }
        roots.push(Dyadic::mid(&l, &r).to_rational());
    }
    roots
}

/// Bisection for a continuous `f` with a sign change on `[a, b]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, rel_tol: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a).abs() <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
