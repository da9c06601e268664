//! Small float helpers shared across the crate. All math routes through
//! `libm` so std and `no_std` builds compute bit-identical results.

/// `x^y` for positive `x`.
#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

/// Absolute value without relying on std.
#[inline]
pub fn fabs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Symmetric relative gap `|a - b| / max(|a|, |b|)`, zero when both are zero.
pub fn rel_gap(a: f64, b: f64) -> f64 {
    let scale = fabs(a).max(fabs(b));
    if scale == 0.0 {
        0.0
    } else {
        fabs(a - b) / scale
    }
}

/// True when `a` and `b` agree within `tol` relative (symmetric).
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    rel_gap(a, b) <= tol
}

/// Index of the grid point closest to `x`. Grid must be non-empty.
pub fn nearest_index(grid: &[f64], x: f64) -> usize {
    let mut best = 0;
    let mut best_dist = f64::INFINITY;
    for (i, &g) in grid.iter().enumerate() {
        let d = fabs(g - x);
        if d < best_dist {
            best_dist = d;
            best = i;
        }
    }
    best
}

/// Validates that a value is a finite, strictly positive real.
#[inline]
pub fn positive_finite(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rel_gap_is_symmetric_and_scale_free() {
        assert_eq!(rel_gap(0.0, 0.0), 0.0);
        assert_eq!(rel_gap(1.0, 1.0), 0.0);
        assert!((rel_gap(1.0, 2.0) - 0.5).abs() < 1e-15);
        assert_eq!(rel_gap(1.0, 2.0), rel_gap(2.0, 1.0));
        assert_eq!(rel_gap(1e-9, 2e-9), rel_gap(1.0, 2.0));
    }

    #[test]
    fn nearest_index_picks_closest() {
        let grid = [0.25, 0.5, 1.0, 2.0, 4.0];
        assert_eq!(nearest_index(&grid, 0.9), 2);
        assert_eq!(nearest_index(&grid, 100.0), 4);
        assert_eq!(nearest_index(&grid, 0.0), 0);
    }
}
