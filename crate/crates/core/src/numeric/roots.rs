use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Real polynomial with coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coefficients: Vec<f64>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<f64>) -> Self {
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Value and first derivative by Horner's rule.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut value = 0.0;
        let mut slope = 0.0;
        for &c in self.coefficients.iter().rev() {
            slope = slope * x + value;
            value = value * x + c;
        }
        (value, slope)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c)
    }

    /// `Σ |c_k|·|x|^k`, the natural size against which a residual at `x` is judged.
    pub fn magnitude(&self, x: f64) -> f64 {
        let ax = libm::fabs(x);
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * ax + libm::fabs(c))
    }
}

/// A polynomial and an interval holding exactly one of its roots.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySpec {
    pub polynomial: Polynomial,
    pub bracket: (f64, f64),
}

impl PolySpec {
    pub fn new(coefficients: Vec<f64>, bracket: (f64, f64)) -> Self {
        Self {
            polynomial: Polynomial::new(coefficients),
            bracket,
        }
    }
}

/// Width at which [`solve_poly`] hands over from bisection to Newton.
const BISECTION_WIDTH: f64 = 1e-6;

/// The root of `ps` inside its bracket: bisection down to width 1e-6, then
/// Newton steps, each replaced by a bisection step if it would leave the
/// current bracket.
pub fn solve_poly(ps: &PolySpec) -> Result<f64> {
    let poly = &ps.polynomial;
    let (mut lo, mut hi) = ps.bracket;
    if lo > hi {
        core::mem::swap(&mut lo, &mut hi);
    }
    let (mut flo, fhi) = (poly.eval(lo), poly.eval(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !(flo.is_finite() && fhi.is_finite()) {
        return Err(Error::NoSignChange { lo, hi });
    }
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let fm = poly.eval(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let (fx, dfx) = poly.eval_with_derivative(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == x || hi - lo <= 2.0 * f64::EPSILON * libm::fabs(x) {
            break;
        }
        x = next;
    }
    Ok(x)
}

/// Result of [`bisect_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracketed {
    pub root: f64,
    pub lo: f64,
    pub hi: f64,
    pub evaluations: usize,
}

/// Plain bisection on a sign change of `f`, down to adjacent floats.
pub fn bisect_root<F>(mut f: F, lo: f64, hi: f64) -> Result<Bracketed>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let (mut flo, fhi) = (f(lo), f(hi));
    let mut evaluations = 2;
    let done = |root, lo, hi, evaluations| {
        Ok(Bracketed {
            root,
            lo,
            hi,
            evaluations,
        })
    };
    if flo == 0.0 {
        return done(lo, lo, lo, evaluations);
    }
    if fhi == 0.0 {
        return done(hi, hi, hi, evaluations);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::NoSignChange { lo, hi });
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return done(mid, lo, hi, evaluations);
        }
        let fm = f(mid);
        evaluations += 1;
        if fm == 0.0 {
            return done(mid, mid, mid, evaluations);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
}
