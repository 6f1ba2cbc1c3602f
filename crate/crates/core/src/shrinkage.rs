//! Logarithmic singular value thresholding.
//!
//! `qlsvt(Y)` is the closed-form minimizer of
//! `0.5 * ||Y - X||_F^2 + lambda * sum_i log(sigma_i(X) + epsilon)`.
//! The problem separates over singular values, each of which solves the
//! scalar problem `min_{a >= 0} h(a) = 0.5 (a - x)^2 + lambda log(a + epsilon)`.

use crate::error::{Error, Result};
use crate::linalg::spectral_map;
use crate::matrix::QuaternionMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShrinkParams {
    lambda: f64,
    epsilon: f64,
}

impl ShrinkParams {
    pub fn new(lambda: f64, epsilon: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!("lambda must be >= 0, got {lambda}")));
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!("epsilon must be > 0, got {epsilon}")));
        }
        Ok(Self { lambda, epsilon })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The scalar objective `h(a)` for input `x`.
    pub fn objective(&self, x: f64, a: f64) -> f64 {
        0.5 * (a - x) * (a - x) + self.lambda * (a + self.epsilon).ln()
    }

    /// Thresholding of a value already known to be nonnegative.
    fn apply(&self, x: f64) -> f64 {
        let (lambda, eps) = (self.lambda, self.epsilon);
        let delta = (x - eps) * (x - eps) - 4.0 * (lambda - x * eps);
        if delta <= 0.0 {
            return 0.0;
        }
        let root = 0.5 * (x - eps + delta.sqrt());
        if root <= 0.0 {
            return 0.0;
        }
        // ties go to the nonzero root
        if self.objective(x, root) <= self.objective(x, 0.0) {
            root.min(x)
        } else {
            0.0
        }
    }
}

/// Scalar logarithmic thresholding operator. Output lies in `[0, x]`.
pub fn lsvt_scalar(x: f64, params: ShrinkParams) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidParameter(format!("thresholding input must be >= 0, got {x}")));
    }
    Ok(params.apply(x))
}

/// Logarithmic singular value thresholding of a quaternion matrix.
pub fn qlsvt(y: &QuaternionMatrix, params: ShrinkParams) -> Result<QuaternionMatrix> {
    spectral_map(y, |s| params.apply(s))
}
