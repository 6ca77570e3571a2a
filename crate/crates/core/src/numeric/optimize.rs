use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Outcome of a 1-D maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptResult {
    pub argmax: f64,
    pub value: f64,
    /// Final search interval; always contains `argmax`.
    pub bracket: (f64, f64),
    pub evaluations: usize,
}

/// Objective samples on a uniform grid.
#[derive(Debug, Clone)]
pub struct GridScan {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub best: usize,
}

impl GridScan {
    /// Samples `f` at `points` equally spaced abscissae spanning `[lo, hi]`.
    pub fn run<F>(mut f: F, lo: f64, hi: f64, points: usize) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if points < 3 || !(hi > lo) {
            return Err(Error::InvalidArgument(
                "grid needs 3+ points on a nonempty interval",
            ));
        }
        let step = (hi - lo) / (points - 1) as f64;
        let xs: Vec<f64> = (0..points)
            .map(|i| {
                if i + 1 == points {
                    hi
                } else {
                    lo + step * i as f64
                }
            })
            .collect();
        let values = xs.iter().map(|&x| f(x)).collect::<Result<Vec<f64>>>()?;
        let best = values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        Ok(Self { xs, values, best })
    }

    /// Neighbours of the best sample, clamped to the grid.
    pub fn bracket(&self) -> (f64, f64) {
        let last = self.xs.len() - 1;
        (
            self.xs[self.best.saturating_sub(1)],
            self.xs[(self.best + 1).min(last)],
        )
    }

    /// Fails unless the samples rise then fall, ignoring wiggles below `noise`.
    pub fn require_unimodal(&self, noise: f64) -> Result<()> {
        match count_peaks(&self.values, noise) {
            0 | 1 => Ok(()),
            peaks => Err(Error::NotUnimodal { peaks }),
        }
    }
}

/// Number of local maxima in `values`, with hysteresis `noise`: a direction
/// change only counts once the values move more than `noise` away from the
/// running extreme. Endpoints count as peaks when the sequence falls away
/// from them.
pub fn count_peaks(values: &[f64], noise: f64) -> usize {
    let Some((&first, rest)) = values.split_first() else {
        return 0;
    };
    let mut rising = true;
    let mut extreme = first;
    let mut peaks = 0;
    for &v in rest {
        if rising {
            if v > extreme {
                extreme = v;
            } else if v < extreme - noise {
                peaks += 1;
                rising = false;
                extreme = v;
            }
        } else if v < extreme {
            extreme = v;
        } else if v > extreme + noise {
            rising = true;
            extreme = v;
        }
    }
    peaks + usize::from(rising)
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `width`.
pub fn golden_max<F>(mut f: F, lo: f64, hi: f64, width: f64) -> Result<OptResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    let mut evaluations = 2;
    while b - a > width {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            if !(c > a && c < d) {
                break;
            }
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            if !(d > c && d < b) {
                break;
            }
            fd = f(d)?;
        }
        evaluations += 1;
    }
    let (argmax, value) = if fc >= fd { (c, fc) } else { (d, fd) };
    Ok(OptResult {
        argmax,
        value,
        bracket: (a, b),
        evaluations,
    })
}

/// Grid pre-scan over `[lo, hi]`, unimodality guard, then golden section in
/// the cell pair around the best grid point.
pub fn grid_then_golden<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    points: usize,
    width: f64,
    noise: f64,
) -> Result<OptResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let scan = GridScan::run(&mut f, lo, hi, points)?;
    scan.require_unimodal(noise)?;
    let (a, b) = scan.bracket();
    let mut best = golden_max(&mut f, a, b, width)?;
    best.evaluations += points;
    // a peak on the grid itself can beat the interior probes at the boundary
    let grid_best = scan.values[scan.best];
    if grid_best > best.value {
        best.argmax = scan.xs[scan.best];
        best.value = grid_best;
        best.bracket = (
            best.bracket.0.min(best.argmax),
            best.bracket.1.max(best.argmax),
        );
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peaks_with_hysteresis() {
        assert_eq!(count_peaks(&[0.0, 1.0, 2.0, 1.0, 0.0], 1e-12), 1);
        assert_eq!(count_peaks(&[3.0, 2.0, 1.0], 1e-12), 1);
        assert_eq!(count_peaks(&[1.0, 2.0, 3.0], 1e-12), 1);
        assert_eq!(count_peaks(&[0.0, 2.0, 1.0, 2.0, 0.0], 1e-12), 2);
        // wiggle below the noise floor
        assert_eq!(count_peaks(&[0.0, 2.0, 1.0, 1.0 + 1e-14, 0.5], 1e-12), 1);
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let r = golden_max(|x| Ok(-(x - 0.3) * (x - 0.3)), 0.0, 1.0, 1e-10).unwrap();
        assert!(libm::fabs(r.argmax - 0.3) < 1e-7);
        assert!(r.bracket.0 <= r.argmax && r.argmax <= r.bracket.1);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-10 || r.evaluations > 40);
    }

    #[test]
    fn grid_guard_rejects_bimodal() {
        let f = |x: f64| Ok(libm::sin(6.0 * core::f64::consts::PI * x));
        assert!(matches!(
            grid_then_golden(f, 0.0, 1.0, 257, 1e-9, 1e-12),
            Err(Error::NotUnimodal { .. })
        ));
    }

    #[test]
    fn grid_then_golden_endpoint_maximum() {
        let r = grid_then_golden(|x| Ok(-x), 0.0, 1.0, 65, 1e-9, 1e-12).unwrap();
        assert_eq!(r.argmax, 0.0);
        assert_eq!(r.value, 0.0);
    }
}
