//! Quaternion matrix algebra and low-rank quaternion matrix completion.
//!
//! Color images are handled as pure quaternion matrices (one quaternion per
//! pixel, `R i + G j + B k`). Two completion solvers are provided:
//! [`qlnf`], a factorized solver with accelerated proximal steps on both
//! factors, and [`tqlna`], a truncated logarithmic-norm solver driven by an
//! inner ADMM loop.

pub mod error;
pub mod imaging;
pub mod linalg;
pub mod matrix;
pub mod problem;
pub mod qlnf;
pub mod quaternion;
pub mod shrinkage;
pub mod synthetic;
pub mod tqlna;

pub use error::{Error, Result};
pub use linalg::{qrank, qsvd, quat_norm, to_complex_adjoint, ComplexAdjoint, LogNormParams, NormKind, QsvdResult};
pub use matrix::{hadamard_mask, MaskMatrix, QuaternionMatrix};
pub use problem::{Completion, CompletionProblem, SolveStatus};
pub use qlnf::{solve_qlnf, QlnfConfig};
pub use quaternion::Quaternion;
pub use shrinkage::{lsvt_scalar, qlsvt, ShrinkParams};
pub use tqlna::{solve_tqlna, truncation_pair, TqlnaConfig, TruncationPair};
pub use imaging::{gen_mask, image_to_quaternion, psnr, quaternion_to_image, ssim, MetricReport, RgbImage};
