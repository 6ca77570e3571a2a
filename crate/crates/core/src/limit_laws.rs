//! Limit discrepancies of the family `p(n, c/√n)` as `n → ∞`.
//!
//! Socks: `ℓ(c) = c²/(1+c²) − ∫₀^∞ c²·t·e^{−ct − t²/2} dt`.
//! Shoes with head masses `a/√n` (left) and `b/√n` (right):
//! `ℓ(a,b) = ab/(1+ab) − ∫₀^∞ (a e^{−at} + b e^{−bt} − (a+b) e^{−(a+b)t})·e^{−t²} dt`.
//!
//! Both integrals are truncated at `T = max(12, 12/scale)`; past `t = 12` the
//! Gaussian factor alone is below `e^{−72}`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family_opt::family_discrepancy_at;
use crate::numeric::{adaptive_simpson, golden_max, GridScan, OptResult, QuadratureResult};

/// `sup_c ℓ(c)` as reproduced by [`ell_argmax`]; the conjectured supremum of
/// the socks discrepancy over all distributions, not a proven bound.
pub const CONJECTURED_SOCKS_SUPREMUM: f64 = 0.183_200_062_408_710_6;
/// Smallest quadrature tolerance accepted.
pub const MIN_QUAD_TOL: f64 = 1e-14;
/// Smallest argmax tolerance accepted.
pub const MIN_ARGMAX_TOL: f64 = 1e-12;
/// Upper end of the parameter range searched by the argmax routines.
pub const ARGMAX_UPPER: f64 = 50.0;
const ARGMAX_LOWER: f64 = 1e-3;
const ARGMAX_GRID_POINTS: usize = 2048;
const GAUSS_CUTOFF: f64 = 12.0;
/// Quadrature tolerance and peak-count noise for the argmax pre-scan.
const SCAN_QUAD_TOL: f64 = 1e-10;
const SCAN_NOISE: f64 = 1e-9;

/// A point on a limit curve (`b` is set for the two-parameter shoes surface).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitCurveSample {
    pub a: f64,
    pub b: Option<f64>,
    pub value: f64,
}

/// Density of the second arrival of a rate-`c` Poisson process times the
/// limiting survival `e^{−t²/2}` of all other colors.
#[inline]
pub fn ell_integrand(c: f64, t: f64) -> f64 {
    c * c * t * libm::exp(-c * t - 0.5 * t * t)
}

/// Limit density of the first left/right match of the head color, times
/// the survival `e^{−t²}` of the others. Symmetric in `(a, b)` bit for bit.
#[inline]
pub fn shoes_integrand(a: f64, b: f64, t: f64) -> f64 {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let s = a + b;
    (a * libm::exp(-a * t) + b * libm::exp(-b * t) - s * libm::exp(-s * t)) * libm::exp(-t * t)
}

/// Panel edges: unit steps to the Gaussian cutoff, plus points at a few
/// multiples of each exponential scale `1/rate`, plus the far end.
fn breakpoints(rates: &[f64], end: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = (0..=(2.0 * GAUSS_CUTOFF) as usize)
        .map(|i| 0.5 * i as f64)
        .collect();
    for &r in rates {
        for mult in [0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let t = mult / r;
            if t < GAUSS_CUTOFF {
                pts.push(t);
            }
        }
    }
    pts.push(end);
    pts.sort_unstable_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn check_tol(tol: f64, min: f64) -> Result<()> {
    if tol >= min && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// `ℓ(c)` with the integral to absolute tolerance `tol`.
pub fn ell(c: f64, tol: f64) -> Result<QuadratureResult> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::NonPositiveC(c));
    }
    check_tol(tol, MIN_QUAD_TOL)?;
    let end = GAUSS_CUTOFF.max(GAUSS_CUTOFF / c);
    let q = adaptive_simpson(|t| ell_integrand(c, t), &breakpoints(&[c], end), tol)?;
    let c2 = c * c;
    Ok(QuadratureResult {
        value: c2 / (1.0 + c2) - q.value,
        ..q
    })
}

/// `ℓ(a, b)` with the integral to absolute tolerance `tol`.
pub fn ell_shoes(a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if !(a > 0.0 && b > 0.0) || !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonPositiveParameter(a, b));
    }
    check_tol(tol, MIN_QUAD_TOL)?;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let end = GAUSS_CUTOFF.max(GAUSS_CUTOFF / lo);
    let q = adaptive_simpson(
        |t| shoes_integrand(lo, hi, t),
        &breakpoints(&[lo, hi, lo + hi], end),
        tol,
    )?;
    let ab = lo * hi;
    Ok(QuadratureResult {
        value: ab / (1.0 + ab) - q.value,
        ..q
    })
}

fn quad_tol_for(argmax_tol: f64) -> f64 {
    (argmax_tol * 1e-2).max(MIN_QUAD_TOL)
}

/// Grid scan with cheap integrals to find and check the peak, then golden
/// section with integrals at the tolerance `tol` asks for.
fn scan_then_golden<F>(f: F, tol: f64) -> Result<OptResult>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    check_tol(tol, MIN_ARGMAX_TOL)?;
    let scan = GridScan::run(
        |x| f(x, SCAN_QUAD_TOL),
        ARGMAX_LOWER,
        ARGMAX_UPPER,
        ARGMAX_GRID_POINTS,
    )?;
    scan.require_unimodal(SCAN_NOISE)?;
    let (lo, hi) = scan.bracket();
    let qt = quad_tol_for(tol);
    let mut best = golden_max(|x| f(x, qt), lo, hi, tol)?;
    best.evaluations += ARGMAX_GRID_POINTS;
    Ok(best)
}

/// `c₀ = argmax ℓ` on `(0, 50]` and `ℓ₀ = ℓ(c₀)`; `tol` is the final
/// golden-section bracket width.
pub fn ell_argmax(tol: f64) -> Result<OptResult> {
    scan_then_golden(|c, qt| ell(c, qt).map(|r| r.value), tol)
}

/// Maximizer of the diagonal `a ↦ ℓ(a, a)` on `(0, 50]`.
pub fn ell_shoes_diag_argmax(tol: f64) -> Result<OptResult> {
    scan_then_golden(|a, qt| ell_shoes(a, a, qt).map(|r| r.value), tol)
}

/// Samples of `ℓ(c)`.
pub fn ell_curve(cs: &[f64], tol: f64) -> Result<Vec<LimitCurveSample>> {
    cs.iter()
        .map(|&c| {
            Ok(LimitCurveSample {
                a: c,
                b: None,
                value: ell(c, tol)?.value,
            })
        })
        .collect()
}

/// Samples of `ℓ(a, b)` over the product grid `as × bs`.
pub fn ell_shoes_grid(as_: &[f64], bs: &[f64], tol: f64) -> Result<Vec<LimitCurveSample>> {
    let mut out = Vec::with_capacity(as_.len() * bs.len());
    for &a in as_ {
        for &b in bs {
            out.push(LimitCurveSample {
                a,
                b: Some(b),
                value: ell_shoes(a, b, tol)?.value,
            });
        }
    }
    Ok(out)
}

/// One row of a finite-`n` convergence table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: u64,
    pub d: f64,
    pub gap: f64,
}

/// Quadrature tolerance used for the reference `ℓ(c)` in convergence tables.
pub const CONVERGENCE_QUAD_TOL: f64 = 1e-13;

/// `D(p(n, c/√n))` and its distance to `ℓ(c)` for each `n`.
pub fn convergence_check(c: f64, n_list: &[u64]) -> Result<Vec<ConvergenceRow>> {
    let limit = ell(c, CONVERGENCE_QUAD_TOL)?.value;
    n_list
        .iter()
        .map(|&n| {
            if !(n as f64 * c * c > 1.0) {
                return Err(Error::DomainError {
                    what: "n",
                    value: n as f64,
                });
            }
            let d = family_discrepancy_at(n, c / libm::sqrt(n as f64))?;
            Ok(ConvergenceRow {
                n,
                d,
                gap: libm::fabs(d - limit),
            })
        })
        .collect()
}

/// True when the gaps never grow along the table.
pub fn gaps_shrinking(rows: &[ConvergenceRow]) -> bool {
    rows.windows(2).all(|w| w[1].gap < w[0].gap)
}
