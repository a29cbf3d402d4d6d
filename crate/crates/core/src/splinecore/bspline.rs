//! Centered B-splines via the order-raising recurrence.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::piecewise::{rat_int, PiecewisePolynomial};
use super::{lift_order, SplineError};

fn cache() -> &'static Mutex<HashMap<u32, Arc<PiecewisePolynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<PiecewisePolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact piecewise form of the centered B-spline of order `m`, built from the
/// indicator of `[-1/2, 1/2)` by the recurrence; supported on `[-m/2, m/2]`.
pub fn bspline_piecewise(m: u32) -> Result<Arc<PiecewisePolynomial>, SplineError> {
    if m < 1 {
        return Err(SplineError::InvalidOrder { min: 1, got: m });
    }
    if let Some(hit) = cache().lock().unwrap().get(&m) {
        return Ok(hit.clone());
    }
    let mut cur = PiecewisePolynomial::unit_box(&rat_int(1));
    let mut order = 1u32;
    // reuse any cached lower order as the starting point
    {
        let store = cache().lock().unwrap();
        for j in (1..m).rev() {
            if let Some(hit) = store.get(&j) {
                cur = (**hit).clone();
                order = j;
                break;
            }
        }
    }
    while order < m {
        cur = lift_order(&cur, order, 0);
        order += 1;
        cache()
            .lock()
            .unwrap()
            .entry(order)
            .or_insert_with(|| Arc::new(cur.clone()));
    }
    let arc = Arc::new(cur);
    Ok(cache()
        .lock()
        .unwrap()
        .entry(m)
        .or_insert_with(|| arc)
        .clone())
}

/// `B_m(x)`.
pub fn bspline_eval(m: u32, x: f64) -> Result<f64, SplineError> {
    Ok(bspline_piecewise(m)?.eval(x))
}

/// `d/dx B_m(x) = B_{m-1}(x + 1/2) - B_{m-1}(x - 1/2)`, defined for `m >= 2`.
pub fn bspline_derivative_eval(m: u32, x: f64) -> Result<f64, SplineError> {
    if m < 2 {
        return Err(SplineError::InvalidOrder { min: 2, got: m });
    }
    let lower = bspline_piecewise(m - 1)?;
    Ok(lower.eval(x + 0.5) - lower.eval(x - 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splinecore::boxspline::{box_spline_piecewise, DirectionSet};
    use approx::assert_abs_diff_eq;

    #[test]
    fn base_cases() {
        assert_eq!(bspline_eval(1, 0.0).unwrap(), 1.0);
        assert_eq!(bspline_eval(2, 0.0).unwrap(), 1.0);
        for m in 1..=6u32 {
            let outside = m as f64 / 2.0 + 0.1;
            assert_eq!(bspline_eval(m, outside).unwrap(), 0.0);
        }
        assert!(matches!(
            bspline_eval(0, 0.0),
            Err(SplineError::InvalidOrder { .. })
        ));
    }

    #[test]
    fn hat_matches_direct_convolution() {
        // the recurrence and the convolution definition agree exactly
        for m in 1..=7u32 {
            let via_recurrence = bspline_piecewise(m).unwrap();
            let dirs = DirectionSet::new(vec![1.0; m as usize]).unwrap();
            let via_convolution = box_spline_piecewise(&dirs).unwrap();
            assert_eq!(*via_recurrence, via_convolution);
        }
    }

    #[test]
    fn derivative_values() {
        assert_eq!(bspline_derivative_eval(2, 0.0).unwrap(), 0.0);
        assert_eq!(bspline_derivative_eval(2, -0.25).unwrap(), 1.0);
        assert!(matches!(
            bspline_derivative_eval(1, 0.0),
            Err(SplineError::InvalidOrder { .. })
        ));
        // finite-difference oracle for B_3
        let h = 1e-6;
        for i in 0..40 {
            let x = -2.0 + 4.0 * (i as f64) / 40.0 + 0.013;
            let fd = (bspline_eval(3, x + h).unwrap() - bspline_eval(3, x - h).unwrap()) / (2.0 * h);
            assert_abs_diff_eq!(bspline_derivative_eval(3, x).unwrap(), fd, epsilon = 1e-6);
        }
    }
}
