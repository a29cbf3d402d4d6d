//! Exact B-spline and univariate box-spline construction and evaluation,
//! plus the piecewise-polynomial engine the rest of the crate builds on.

mod bspline;
mod boxspline;
mod piecewise;

pub use bspline::{bspline_derivative_eval, bspline_eval, bspline_piecewise};
pub use boxspline::{box_spline_eval, box_spline_fourier, box_spline_piecewise, DirectionSet};
pub use piecewise::{
    binomial, piecewise_derivative, rat, rat_from_f64, rat_int, PiecewisePolynomial, Rat, Scale,
};

use num_traits::One;
use thiserror::Error;

/// Errors from spline construction and exact piecewise arithmetic.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum SplineError {
    #[error("spline order must be at least {min}, got {got}")]
    InvalidOrder { min: u32, got: u32 },

    #[error("direction set must contain at least one weight")]
    EmptyDirections,

    #[error("direction weights must be positive and finite, got {0}")]
    InvalidDirection(f64),

    #[error(
        "cannot take derivative of order {requested}: function is only {smoothness} time(s) differentiable as a function"
    )]
    OverDifferentiation { requested: usize, smoothness: usize },

    #[error("breakpoints must be strictly increasing")]
    BreakpointsNotIncreasing,

    #[error("piece list and breakpoints are inconsistent")]
    MalformedPieces,

    #[error("cannot add piecewise polynomials with different irrational scales")]
    ScaleMismatch,
}

/// One step of the order-raising recurrence: maps the centered generator of
/// index `l` at order `m` to the one at order `m + 1`,
///
/// `sqrt((m+1)/(m+1-l)) * [ (2x+m+1)/(2m) p(x+1/2) + (m+1-2x)/(2m) p(x-1/2) + (l/m) p(x) ]`.
///
/// With `l = 0` the prefactor is 1 and the step reduces to the classical
/// B-spline recurrence, so B-splines and framelets share this code path.
pub(crate) fn lift_order(p: &PiecewisePolynomial, m: u32, l: u32) -> PiecewisePolynomial {
    assert!(m >= 1 && l <= m);
    let m_rat = rat_int(m as i64);
    let a0 = rat(m as i64 + 1, 2 * m as i64); // (m+1)/(2m)
    let inv_m = m_rat.recip();

    // (2x + m + 1)/(2m) * p(x + 1/2)
    let t1 = p.translate(&rat(-1, 2)).mul_affine(&a0, &inv_m);
    // (m + 1 - 2x)/(2m) * p(x - 1/2)
    let t2 = p.translate(&rat(1, 2)).mul_affine(&a0, &-&inv_m);
    // (l/m) * p(x)
    let sum = if l == 0 {
        t1.add(&t2).expect("common scale")
    } else {
        let t3 = p.mul_rational(&rat(l as i64, m as i64));
        t1.add(&t2).and_then(|s| s.add(&t3)).expect("common scale")
    };
    if l == 0 {
        sum
    } else {
        let factor = rat(m as i64 + 1, (m + 1 - l) as i64);
        sum.mul_scale(&Scale::sqrt_rational(&factor))
    }
}

/// The diagonal recurrence step: maps the centered generator `(m, m)` to
/// `(m+1, m+1)`,
///
/// `(2x+m+1)/(2m) p(x+1/2) + (2x-m-1)/(2m) p(x-1/2) - (2x/m) p(x)`.
pub(crate) fn lift_diagonal(p: &PiecewisePolynomial, m: u32) -> PiecewisePolynomial {
    assert!(m >= 1);
    let a0 = rat(m as i64 + 1, 2 * m as i64);
    let inv_m = rat_int(m as i64).recip();

    let t1 = p.translate(&rat(-1, 2)).mul_affine(&a0, &inv_m);
    let t2 = p.translate(&rat(1, 2)).mul_affine(&-&a0, &inv_m);
    let t3 = p.mul_affine(&rat_int(0), &-rat(2, m as i64));
    t1.add(&t2)
        .and_then(|s| s.add(&t3))
        .expect("common scale")
}

pub(crate) fn one() -> Rat {
    Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn partition_of_unity() {
        // B-splines reproduce constants: sum over integer shifts equals 1.
        for m in 1..=10u32 {
            let b = bspline_piecewise(m).unwrap();
            for i in 0..=64 {
                let x = -1.0 + 2.0 * (i as f64) / 64.0 + 0.001;
                let mut s = 0.0;
                for k in -((m as i64) + 2)..=(m as i64 + 2) {
                    s += b.eval(x - k as f64);
                }
                assert!((s - 1.0).abs() < 1e-12, "m={m} x={x} sum={s}");
            }
        }
    }

    #[test]
    fn bspline_nonnegative_and_symmetric() {
        for m in 1..=8u32 {
            let b = bspline_piecewise(m).unwrap();
            assert_eq!(b.reflect(), *b);
            for i in 0..=200 {
                let x = -5.0 + 10.0 * (i as f64) / 200.0;
                assert!(b.eval(x) >= 0.0);
            }
        }
    }

    proptest! {
        #[test]
        fn box_spline_mass_is_one(weights in proptest::collection::vec(1u32..=16u32, 1..6)) {
            // random small dyadic direction sets integrate to exactly 1
            let dirs = DirectionSet::new(weights.iter().map(|&w| w as f64 / 8.0).collect()).unwrap();
            let b = box_spline_piecewise(&dirs).unwrap();
            prop_assert_eq!(b.integral_rational(), one());
        }

        #[test]
        fn box_spline_symmetric_nonnegative(weights in proptest::collection::vec(1u32..=8u32, 1..5), xs in -4.0f64..4.0) {
            let dirs = DirectionSet::new(weights.iter().map(|&w| w as f64 / 4.0).collect()).unwrap();
            let b = box_spline_piecewise(&dirs).unwrap();
            prop_assert_eq!(b.reflect(), b.clone());
            prop_assert!(b.eval(xs) >= 0.0);
        }
    }
}
