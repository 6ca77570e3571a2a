use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Hard cap on leaf intervals across all panels of one integral.
pub const MAX_SUBDIVISIONS: usize = 1 << 20;
const MIN_DEPTH: u32 = 4;
const MAX_DEPTH: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub subdivisions: usize,
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

/// Adaptive Simpson over consecutive panels `[breaks[j], breaks[j+1]]`.
///
/// Each panel gets an equal share of `tol`; a leaf is accepted once
/// `|S_2 − S_1| ≤ 15·tol_leaf` (or the difference is at rounding level) and
/// contributes the Richardson-corrected `S_2 + (S_2 − S_1)/15`. The summed leaf
/// estimates must come in under `tol`, otherwise [`Error::ToleranceNotMet`].
/// Breakpoints should straddle every feature of the integrand: a panel
/// whose first few samples are all zero will be integrated as zero.
pub fn adaptive_simpson<F>(f: F, breaks: &[f64], tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if breaks.len() < 2 || !(tol > 0.0) {
        return Err(Error::InvalidArgument(
            "need two breakpoints and a positive tolerance",
        ));
    }
    let share = tol / (breaks.len() - 1) as f64;
    let mut stack: Vec<Panel> = Vec::with_capacity(64);
    let mut value = 0.0;
    let mut comp = 0.0;
    let mut error = 0.0;
    let mut leaves = 0usize;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
        stack.push(Panel {
            a,
            b,
            fa,
            fm,
            fb,
            whole: (b - a) / 6.0 * (fa + 4.0 * fm + fb),
            tol: share,
            depth: 0,
        });
        while let Some(p) = stack.pop() {
            let m = 0.5 * (p.a + p.b);
            let (lm, rm) = (0.5 * (p.a + m), 0.5 * (m + p.b));
            let (flm, frm) = (f(lm), f(rm));
            let h = (p.b - p.a) / 12.0;
            let left = h * (p.fa + 4.0 * flm + p.fm);
            let right = h * (p.fm + 4.0 * frm + p.fb);
            let both = left + right;
            let diff = both - p.whole;
            let noise = 64.0 * f64::EPSILON * (libm::fabs(left) + libm::fabs(right));
            let settled = libm::fabs(diff) <= 15.0 * p.tol || libm::fabs(diff) <= noise;
            if (p.depth >= MIN_DEPTH && settled) || p.depth >= MAX_DEPTH || m <= p.a || m >= p.b {
                let leaf = both + diff / 15.0;
                // Kahan-style accumulation of accepted leaves
                let y = leaf - comp;
                let t = value + y;
                comp = (t - value) - y;
                value = t;
                error += libm::fabs(diff) / 15.0;
                leaves += 1;
                if leaves > MAX_SUBDIVISIONS {
                    return Err(Error::ToleranceNotMet {
                        requested: tol,
                        achieved: f64::INFINITY,
                    });
                }
                continue;
            }
            let tol = 0.5 * p.tol;
            let depth = p.depth + 1;
            stack.push(Panel {
                a: m,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
                tol,
                depth,
            });
            stack.push(Panel {
                a: p.a,
                b: m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
                tol,
                depth,
            });
        }
    }
    if !(error <= tol) || !value.is_finite() {
        return Err(Error::ToleranceNotMet {
            requested: tol,
            achieved: error,
        });
    }
    Ok(QuadratureResult {
        value,
        abs_error_estimate: error,
        subdivisions: leaves,
    })
}
