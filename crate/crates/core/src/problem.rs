use crate::error::{check_same_shape, Result};
use crate::matrix::{MaskMatrix, QuaternionMatrix};

/// Partially observed quaternion matrix together with its observation mask.
///
/// The observation is stored zero-filled: entries outside the mask are zero.
#[derive(Clone, Debug)]
pub struct CompletionProblem {
    observed: QuaternionMatrix,
    mask: MaskMatrix,
}

impl CompletionProblem {
    /// Builds a problem, zeroing any entry of `data` the mask marks as missing.
    pub fn new(data: &QuaternionMatrix, mask: MaskMatrix) -> Result<Self> {
        check_same_shape("CompletionProblem::new", data.shape(), mask.shape())?;
        let observed = data.masked(&mask)?;
        Ok(Self { observed, mask })
    }

    pub fn observed(&self) -> &QuaternionMatrix {
        &self.observed
    }

    pub fn mask(&self) -> &MaskMatrix {
        &self.mask
    }

    pub fn shape(&self) -> (usize, usize) {
        self.observed.shape()
    }

    /// `||W ⊙ (X - M)||_F`.
    pub fn observed_residual(&self, x: &QuaternionMatrix) -> Result<f64> {
        Ok((x - &self.observed).masked(&self.mask)?.frobenius_norm())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    MaxIterations,
    /// Nothing was observed; the zero matrix is returned.
    EmptyMask,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::MaxIterations => "max_iter",
            SolveStatus::EmptyMask => "empty_mask",
        }
    }
}

/// Result of a completion run.
#[derive(Clone, Debug)]
pub struct Completion {
    pub matrix: QuaternionMatrix,
    /// Outer iterations performed.
    pub iterations: usize,
    pub status: SolveStatus,
}
