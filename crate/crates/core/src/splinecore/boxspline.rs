//! Univariate box splines: Fourier symbol and exact piecewise construction
//! by iterated convolution with normalized boxes.

use super::piecewise::{rat_from_f64, PiecewisePolynomial};
use super::SplineError;
use crate::quad::sinc;

/// Weight multiset of a univariate box spline. Every finite `f64` is a dyadic
/// rational, so the induced piecewise construction is always exact.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionSet {
    weights: Vec<f64>,
}

impl DirectionSet {
    pub fn new(weights: Vec<f64>) -> Result<Self, SplineError> {
        if weights.is_empty() {
            return Err(SplineError::EmptyDirections);
        }
        for &w in &weights {
            if !(w.is_finite() && w > 0.0) {
                return Err(SplineError::InvalidDirection(w));
            }
        }
        Ok(DirectionSet { weights })
    }

    /// `count` copies of the same weight.
    pub fn uniform(count: usize, weight: f64) -> Result<Self, SplineError> {
        if count == 0 {
            return Err(SplineError::EmptyDirections);
        }
        Self::new(vec![weight; count])
    }

    /// The framelet direction set: `m - l` ones followed by `2l` halves.
    pub fn framelet_directions(m: u32, l: u32) -> Self {
        assert!(l <= m && m >= 1);
        let mut w = vec![1.0; (m - l) as usize];
        w.extend(std::iter::repeat(0.5).take(2 * l as usize));
        DirectionSet { weights: w }
    }

    /// The discretization direction set: `m - l` ones followed by `l` halves.
    pub fn discretization_directions(m: u32, l: u32) -> Self {
        assert!(l <= m && m >= 1);
        let mut w = vec![1.0; (m - l) as usize];
        w.extend(std::iter::repeat(0.5).take(l as usize));
        DirectionSet { weights: w }
    }

    pub fn scaled(&self, c: f64) -> Result<Self, SplineError> {
        Self::new(self.weights.iter().map(|w| w * c).collect())
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Length of the support of the induced box spline.
    pub fn support_length(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Squared Euclidean norm of the weight vector.
    pub fn norm_sq(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum()
    }
}

/// Fourier transform of the box spline: `prod_j sinc(a_j w / 2)`.
pub fn box_spline_fourier(dirs: &DirectionSet, w: f64) -> f64 {
    dirs.weights.iter().map(|a| sinc(a * w / 2.0)).product()
}

/// Exact piecewise polynomial of the box spline, built by convolving
/// normalized boxes; degree `|dirs| - 1`, support `[-L/2, L/2]`, unit mass.
pub fn box_spline_piecewise(dirs: &DirectionSet) -> Result<PiecewisePolynomial, SplineError> {
    let mut iter = dirs.weights.iter();
    let first = iter.next().ok_or(SplineError::EmptyDirections)?;
    let mut p = PiecewisePolynomial::unit_box(&rat_from_f64(*first));
    for a in iter {
        p = p.convolve_box(&rat_from_f64(*a));
    }
    Ok(p)
}

/// Pointwise box-spline value through the exact piecewise form.
pub fn box_spline_eval(dirs: &DirectionSet, x: f64) -> Result<f64, SplineError> {
    Ok(box_spline_piecewise(dirs)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splinecore::bspline::bspline_piecewise;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn fourier_basics() {
        let d = DirectionSet::new(vec![1.0, 0.5, 0.25]).unwrap();
        assert_eq!(box_spline_fourier(&d, 0.0), 1.0);
        let single = DirectionSet::new(vec![1.0]).unwrap();
        for w in [0.3, 1.7, -4.1] {
            assert_abs_diff_eq!(box_spline_fourier(&single, w), sinc(w / 2.0), epsilon = 1e-16);
        }
        let pair = DirectionSet::new(vec![1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(box_spline_fourier(&pair, 2.0 * PI), 0.0, epsilon = 1e-16);
    }

    #[test]
    fn unit_directions_reduce_to_bspline() {
        for m in 1..=6u32 {
            let d = DirectionSet::uniform(m as usize, 1.0).unwrap();
            assert_eq!(box_spline_piecewise(&d).unwrap(), *bspline_piecewise(m).unwrap());
        }
    }

    #[test]
    fn all_halves_is_scaled_double_order_bspline() {
        // with 2m halves the box spline is 2 B_{2m}(2x): same Fourier
        // transform sinc^{2m}(w/4), and twice the B-spline after rescaling
        for m in 1..=4u32 {
            let d = DirectionSet::uniform(2 * m as usize, 0.5).unwrap();
            let b = box_spline_piecewise(&d).unwrap();
            let b2m = bspline_piecewise(2 * m).unwrap();
            for i in 0..=40 {
                let x = -1.2 + 2.4 * (i as f64) / 40.0;
                assert_abs_diff_eq!(b.eval(x), 2.0 * b2m.eval(2.0 * x), epsilon = 1e-13);
            }
            assert_eq!(b.integral_rational(), crate::splinecore::one());
        }
    }

    #[test]
    fn support_and_zero_outside() {
        // support length of [1, 1/2, 1/2] is 2
        let d = DirectionSet::new(vec![1.0, 0.5, 0.5]).unwrap();
        assert_eq!(d.support_length(), 2.0);
        for x in [-1.01, 1.01, -3.0, 7.5] {
            assert_eq!(box_spline_eval(&d, x).unwrap(), 0.0);
        }
        let single = DirectionSet::new(vec![1.0]).unwrap();
        assert_eq!(box_spline_eval(&single, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            DirectionSet::new(vec![]),
            Err(SplineError::EmptyDirections)
        ));
        assert!(matches!(
            DirectionSet::new(vec![1.0, -0.5]),
            Err(SplineError::InvalidDirection(_))
        ));
        assert!(matches!(
            DirectionSet::new(vec![f64::NAN]),
            Err(SplineError::InvalidDirection(_))
        ));
    }
}
