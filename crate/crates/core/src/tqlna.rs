//! Two-step completion with a truncated logarithmic norm.
//!
//! The outer loop fixes the top-`r` singular subspaces of the current
//! estimate as a pair `(C, D)` and the inner loop minimizes
//! `||X||_L - re tr(C X D^H)` subject to `X` matching the observation on the
//! observed entries, using ADMM with an increasing penalty.

use crate::error::{Error, Result};
use crate::linalg::qsvd;
use crate::matrix::QuaternionMatrix;
use crate::problem::{Completion, CompletionProblem, SolveStatus};
use crate::shrinkage::{qlsvt, ShrinkParams};

/// Solver parameters. The defaults are tuned for 8-bit image data (entries
/// in `[0, 255]`); data on other scales needs `lambda` and `epsilon` scaled
/// accordingly (roughly `lambda ~ s^2`, `epsilon ~ s` for a scale factor `s`).
#[derive(Clone, Debug, PartialEq)]
pub struct TqlnaConfig {
    /// Number of leading singular values left unpenalized.
    pub r: usize,
    pub lambda: f64,
    pub epsilon: f64,
    /// Penalty growth factor.
    pub rho: f64,
    pub beta0: f64,
    pub beta_max: f64,
    /// Inner stopping threshold, relative to `||M_obs||_F`.
    pub inner_tol: f64,
    /// Outer stopping threshold, relative to `||M_obs||_F`.
    pub outer_tol: f64,
    pub inner_max: usize,
    pub outer_max: usize,
}

impl Default for TqlnaConfig {
    fn default() -> Self {
        Self {
            r: 1,
            lambda: 1e7,
            epsilon: 3000.0,
            rho: 1.5,
            beta0: 0.003,
            beta_max: 1e7,
            inner_tol: 1e-4,
            outer_tol: 1e-3,
            inner_max: 500,
            outer_max: 5,
        }
    }
}

impl TqlnaConfig {
    pub fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.r > rows.min(cols) {
            return bad(format!("truncation r = {} exceeds min(M, N) = {}", self.r, rows.min(cols)));
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return bad(format!("lambda must be >= 0, got {}", self.lambda));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return bad(format!("epsilon must be > 0, got {}", self.epsilon));
        }
        if !(self.rho > 1.0) || !self.rho.is_finite() {
            return bad(format!("rho must be > 1, got {}", self.rho));
        }
        if !(self.beta0 > 0.0) || !(self.beta0 <= self.beta_max) || !self.beta_max.is_finite() {
            return bad(format!("need 0 < beta0 <= beta_max, got {} and {}", self.beta0, self.beta_max));
        }
        if !(self.inner_tol > 0.0) || !(self.outer_tol > 0.0) {
            return bad(format!("tolerances must be > 0, got {} and {}", self.inner_tol, self.outer_tol));
        }
        Ok(())
    }
}

/// Row-orthonormal factors spanning the leading singular subspaces.
#[derive(Clone, Debug)]
pub struct TruncationPair {
    /// `r x M`, the conjugate transposes of the first `r` left singular vectors.
    pub c: QuaternionMatrix,
    /// `r x N`, likewise for the right singular vectors.
    pub d: QuaternionMatrix,
}

impl TruncationPair {
    pub fn r(&self) -> usize {
        self.c.rows()
    }

    /// `C^H D`, an `M x N` matrix (zero when `r = 0`).
    pub fn product(&self) -> QuaternionMatrix {
        self.c.conj_transpose().matmul(&self.d).expect("pair rows agree")
    }

    /// `tr(C X D^H)`.
    pub fn trace_of(&self, x: &QuaternionMatrix) -> Result<crate::Quaternion> {
        Ok(self.c.matmul(x)?.matmul(&self.d.conj_transpose())?.trace())
    }
}

pub fn truncation_pair(x: &QuaternionMatrix, r: usize) -> Result<TruncationPair> {
    let (m, n) = x.shape();
    if r > m.min(n) {
        return Err(Error::InvalidParameter(format!("truncation r = {r} exceeds min(M, N) = {}", m.min(n))));
    }
    if r == 0 {
        return Ok(TruncationPair {
            c: QuaternionMatrix::zeros(0, m),
            d: QuaternionMatrix::zeros(0, n),
        });
    }
    let dec = qsvd(x)?;
    Ok(TruncationPair {
        c: dec.u.leading_columns(r).conj_transpose(),
        d: dec.v.leading_columns(r).conj_transpose(),
    })
}

#[derive(Clone, Debug)]
pub struct AdmmState {
    pub x: QuaternionMatrix,
    pub h: QuaternionMatrix,
    pub y: QuaternionMatrix,
    pub beta: f64,
    /// Inner iterations performed.
    pub tau: usize,
    /// `||X_tau - X_{tau-1}||_F` of the last iteration.
    pub last_change: f64,
}

impl AdmmState {
    pub fn new(x: QuaternionMatrix, beta: f64) -> Self {
        Self {
            h: x.clone(),
            y: x.clone(),
            x,
            beta,
            tau: 0,
            last_change: f64::INFINITY,
        }
    }

    /// `||X - H||_F`.
    pub fn primal_residual(&self) -> f64 {
        (&self.x - &self.h).frobenius_norm()
    }
}

/// One ADMM sweep with `ch_d = C^H D` precomputed.
fn admm_step(state: &mut AdmmState, problem: &CompletionProblem, ch_d: &QuaternionMatrix, config: &TqlnaConfig) -> Result<()> {
    let beta = state.beta;
    let inv = 1.0 / beta;

    let target = state.h.add_scaled(-inv, &state.y);
    let x_next = qlsvt(&target, ShrinkParams::new(config.lambda * inv, config.epsilon)?)?;
    state.tau += 1;
    if !x_next.is_finite() {
        return Err(Error::NonFinite {
            solver: "tqlna",
            iteration: state.tau,
        });
    }
    state.last_change = (&x_next - &state.x).frobenius_norm();
    state.x = x_next;

    let mask = problem.mask().as_slice();
    let obs = problem.observed().as_slice();
    let x = state.x.as_slice();
    let cd = ch_d.as_slice();
    for (idx, h) in state.h.as_mut_slice().iter_mut().enumerate() {
        *h = if mask[idx] {
            obs[idx]
        } else {
            x[idx] + (cd[idx] + state.y.as_slice()[idx]) * inv
        };
    }
    let h = state.h.as_slice();
    for (idx, y) in state.y.as_mut_slice().iter_mut().enumerate() {
        *y += (x[idx] - h[idx]) * beta;
    }
    state.beta = (config.rho * beta).min(config.beta_max);
    Ok(())
}

/// Inner ADMM started from `H = Y = X = x_init` and `beta = beta0`.
///
/// Stops once both `||X_tau - X_{tau-1}||_F` and `||X_tau - H_tau||_F` fall
/// below `inner_tol * ||M_obs||_F`, or after `inner_max` iterations.
pub fn admm_inner(
    problem: &CompletionProblem,
    pair: &TruncationPair,
    config: &TqlnaConfig,
    x_init: &QuaternionMatrix,
) -> Result<AdmmState> {
    admm_inner_observed(problem, pair, config, x_init, |_| {})
}

/// [`admm_inner`] with a callback invoked after every inner iteration.
pub fn admm_inner_observed(
    problem: &CompletionProblem,
    pair: &TruncationPair,
    config: &TqlnaConfig,
    x_init: &QuaternionMatrix,
    mut observer: impl FnMut(&AdmmState),
) -> Result<AdmmState> {
    let (m, n) = problem.shape();
    if x_init.shape() != (m, n) {
        return Err(Error::DimensionMismatch {
            op: "admm_inner",
            left: x_init.shape(),
            right: (m, n),
        });
    }
    if pair.c.cols() != m || pair.d.cols() != n || pair.c.rows() != pair.d.rows() {
        return Err(Error::DimensionMismatch {
            op: "admm_inner",
            left: (pair.c.rows(), pair.c.cols()),
            right: (pair.d.rows(), pair.d.cols()),
        });
    }
    config.validate(m, n)?;

    let threshold = config.inner_tol * problem.observed().frobenius_norm();
    let ch_d = pair.product();
    let mut state = AdmmState::new(x_init.clone(), config.beta0);
    while state.tau < config.inner_max {
        admm_step(&mut state, problem, &ch_d, config)?;
        observer(&state);
        if state.last_change <= threshold && state.primal_residual() <= threshold {
            break;
        }
    }
    Ok(state)
}

pub fn solve_tqlna(problem: &CompletionProblem, config: &TqlnaConfig) -> Result<Completion> {
    solve_tqlna_observed(problem, config, |_, _, _| {})
}

/// [`solve_tqlna`] with a callback receiving, after every outer iteration,
/// the pair used, the previous estimate and the inner state.
pub fn solve_tqlna_observed(
    problem: &CompletionProblem,
    config: &TqlnaConfig,
    observer: impl FnMut(&TruncationPair, &QuaternionMatrix, &AdmmState),
) -> Result<Completion> {
    run(problem, config, |_, _| {}, observer)
}

/// [`solve_tqlna`] with a callback invoked after every inner iteration,
/// given the 1-based outer iteration and the inner state.
pub fn solve_tqlna_traced(
    problem: &CompletionProblem,
    config: &TqlnaConfig,
    observer: impl FnMut(usize, &AdmmState),
) -> Result<Completion> {
    run(problem, config, observer, |_, _, _| {})
}

fn run(
    problem: &CompletionProblem,
    config: &TqlnaConfig,
    mut on_inner: impl FnMut(usize, &AdmmState),
    mut on_outer: impl FnMut(&TruncationPair, &QuaternionMatrix, &AdmmState),
) -> Result<Completion> {
    let (m, n) = problem.shape();
    config.validate(m, n)?;
    if problem.mask().observed_count() == 0 {
        log::warn!("tqlna: mask has no observed entries, returning the zero matrix");
        return Ok(Completion {
            matrix: QuaternionMatrix::zeros(m, n),
            iterations: 0,
            status: SolveStatus::EmptyMask,
        });
    }

    let threshold = config.outer_tol * problem.observed().frobenius_norm();
    let mut x = problem.observed().clone();
    let mut status = SolveStatus::MaxIterations;
    let mut k = 0;
    while k < config.outer_max {
        let pair = truncation_pair(&x, config.r)?;
        let inner = admm_inner_observed(problem, &pair, config, &x, |s| on_inner(k + 1, s))?;
        k += 1;
        on_outer(&pair, &x, &inner);
        let change = (&inner.x - &x).frobenius_norm();
        log::debug!("tqlna outer {k}: {} inner iterations, change {change:.3e}", inner.tau);
        x = inner.x;
        if change <= threshold {
            status = SolveStatus::Converged;
            break;
        }
    }
    Ok(Completion {
        matrix: x,
        iterations: k,
        status,
    })
}
