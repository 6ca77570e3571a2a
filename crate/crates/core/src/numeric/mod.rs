//! Scalar numerics: compensated sums, quadrature, 1-D maximization and
//! bracketed root finding.

mod optimize;
mod quad;
mod roots;

pub use optimize::{count_peaks, golden_max, grid_then_golden, GridScan, OptResult};
pub use quad::{adaptive_simpson, QuadratureResult, MAX_SUBDIVISIONS};
pub use roots::{bisect_root, solve_poly, Bracketed, PolySpec, Polynomial};

/// Neumaier's compensated summation.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if libm::fabs(sum) >= libm::fabs(v) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
