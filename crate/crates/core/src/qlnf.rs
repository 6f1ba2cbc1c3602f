//! Factorized completion with a logarithmic-norm penalty on both factors.
//!
//! Minimizes `(lambda / 2) (||U||_L + ||V||_L) + ||W ⊙ (U V^H - M)||_F^2`
//! over `U` (`M x d`) and `V` (`N x d`) by alternating accelerated proximal
//! gradient steps. Each proximal step is a logarithmic singular value
//! thresholding of a `M x d` (or `N x d`) matrix, so no full-size SVD is
//! needed after initialization.

use crate::error::{Error, Result};
use crate::linalg::qsvd;
use crate::matrix::QuaternionMatrix;
use crate::problem::{Completion, CompletionProblem, SolveStatus};
use crate::shrinkage::{qlsvt, ShrinkParams};

#[derive(Clone, Debug, PartialEq)]
pub struct QlnfConfig {
    /// Factor width.
    pub d: usize,
    pub lambda: f64,
    /// Offset of the logarithmic norm.
    pub epsilon: f64,
    /// Lower bound on the step-size constant `mu`.
    pub mu_min: f64,
    /// Stopping threshold on the mean relative factor change.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for QlnfConfig {
    fn default() -> Self {
        Self {
            d: 10,
            lambda: 1.25e-5,
            epsilon: 0.1,
            mu_min: 0.005,
            tol: 1e-3,
            max_iter: 200,
        }
    }
}

impl QlnfConfig {
    pub fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.d == 0 || self.d > rows.min(cols) {
            return bad(format!("factor width d = {} must lie in 1..={}", self.d, rows.min(cols)));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return bad(format!("lambda must be > 0, got {}", self.lambda));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return bad(format!("epsilon must be > 0, got {}", self.epsilon));
        }
        if !(self.mu_min > 0.0) {
            return bad(format!("mu_min must be > 0, got {}", self.mu_min));
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol must be > 0, got {}", self.tol));
        }
        Ok(())
    }
}

/// Iterate of the alternating scheme.
#[derive(Clone, Debug)]
pub struct QlnfState {
    pub u_prev: QuaternionMatrix,
    pub u: QuaternionMatrix,
    pub v_prev: QuaternionMatrix,
    pub v: QuaternionMatrix,
    pub t_prev: f64,
    pub t: f64,
    pub iter: usize,
}

impl QlnfState {
    pub fn new(u: QuaternionMatrix, v: QuaternionMatrix) -> Self {
        Self {
            u_prev: u.clone(),
            u,
            v_prev: v.clone(),
            v,
            t_prev: 1.0,
            t: 1.0,
            iter: 0,
        }
    }

    /// Extrapolation weight `(t_prev - 1) / t` of the current step.
    pub fn omega(&self) -> f64 {
        (self.t_prev - 1.0) / self.t
    }

    pub fn product(&self) -> QuaternionMatrix {
        self.u.matmul(&self.v.conj_transpose()).expect("factor widths agree")
    }
}

/// Balanced rank-`d` factors of the zero-filled observation:
/// `U = U_d diag(sqrt(sigma_d))`, `V = V_d diag(sqrt(sigma_d))`.
pub fn init_factors(problem: &CompletionProblem, d: usize) -> Result<(QuaternionMatrix, QuaternionMatrix)> {
    let (m, n) = problem.shape();
    if d == 0 || d > m.min(n) {
        return Err(Error::InvalidParameter(format!("factor width d = {d} must lie in 1..={}", m.min(n))));
    }
    let dec = qsvd(problem.observed())?;
    let root: Vec<f64> = dec.sigma[..d].iter().map(|s| s.sqrt()).collect();
    let u = dec.u.leading_columns(d).scale_columns(&root);
    let v = dec.v.leading_columns(d).scale_columns(&root);
    Ok((u, v))
}

/// Advances the momentum scalar: returns `(t, omega)` with
/// `t = (1 + sqrt(1 + 4 t_prev^2)) / 2` and `omega = (t_prev - 1) / t`.
pub fn fista_momentum(t_prev: f64) -> (f64, f64) {
    let t = 0.5 * (1.0 + (1.0 + 4.0 * t_prev * t_prev).sqrt());
    (t, (t_prev - 1.0) / t)
}

fn check_factor(name: &str, f: &QuaternionMatrix, rows: usize, d: usize) -> Result<()> {
    if f.shape() != (rows, d) {
        return Err(Error::DimensionMismatch {
            op: if name == "u" { "update_factor_u" } else { "update_factor_v" },
            left: f.shape(),
            right: (rows, d),
        });
    }
    Ok(())
}

/// Proximal gradient step on `U` with `V` fixed at `state.v`.
pub fn update_factor_u(state: &QlnfState, problem: &CompletionProblem, config: &QlnfConfig) -> Result<QuaternionMatrix> {
    let (m, n) = problem.shape();
    let d = state.u.cols();
    check_factor("u", &state.u, m, d)?;
    check_factor("u", &state.u_prev, m, d)?;
    check_factor("v", &state.v, n, d)?;

    let u_hat = state.u.add_scaled(state.omega(), &(&state.u - &state.u_prev));
    let mu = state.v.frobenius_norm_sqr().max(config.mu_min);
    let residual = (&u_hat.matmul(&state.v.conj_transpose())? - problem.observed()).masked(problem.mask())?;
    let grad = residual.matmul(&state.v)?;
    let g = u_hat.add_scaled(-1.0 / mu, &grad);
    qlsvt(&g, ShrinkParams::new(config.lambda / (2.0 * mu), config.epsilon)?)
}

/// Proximal gradient step on `V` with `U` fixed at `u_next`.
pub fn update_factor_v(
    state: &QlnfState,
    u_next: &QuaternionMatrix,
    problem: &CompletionProblem,
    config: &QlnfConfig,
) -> Result<QuaternionMatrix> {
    let (m, n) = problem.shape();
    let d = state.v.cols();
    check_factor("v", &state.v, n, d)?;
    check_factor("v", &state.v_prev, n, d)?;
    check_factor("u", u_next, m, d)?;

    let v_hat = state.v.add_scaled(state.omega(), &(&state.v - &state.v_prev));
    let mu = u_next.frobenius_norm_sqr().max(config.mu_min);
    let residual = (&u_next.matmul(&v_hat.conj_transpose())? - problem.observed()).masked(problem.mask())?;
    let grad = residual.conj_transpose().matmul(u_next)?;
    let g = v_hat.add_scaled(-1.0 / mu, &grad);
    qlsvt(&g, ShrinkParams::new(config.lambda / (2.0 * mu), config.epsilon)?)
}

fn relative_change(new: &QuaternionMatrix, old: &QuaternionMatrix) -> f64 {
    let diff = (new - old).frobenius_norm();
    let base = old.frobenius_norm();
    if base > 0.0 {
        diff / base
    } else {
        diff
    }
}

pub fn solve_qlnf(problem: &CompletionProblem, config: &QlnfConfig) -> Result<Completion> {
    solve_qlnf_observed(problem, config, |_| {})
}

/// [`solve_qlnf`] with a callback invoked after every iteration.
pub fn solve_qlnf_observed(
    problem: &CompletionProblem,
    config: &QlnfConfig,
    mut observer: impl FnMut(&QlnfState),
) -> Result<Completion> {
    let (m, n) = problem.shape();
    config.validate(m, n)?;
    if problem.mask().observed_count() == 0 {
        log::warn!("qlnf: mask has no observed entries, returning the zero matrix");
        return Ok(Completion {
            matrix: QuaternionMatrix::zeros(m, n),
            iterations: 0,
            status: SolveStatus::EmptyMask,
        });
    }

    let (u0, v0) = init_factors(problem, config.d)?;
    let mut state = QlnfState::new(u0, v0);
    let mut status = SolveStatus::MaxIterations;
    while state.iter < config.max_iter {
        let (t, _) = fista_momentum(state.t);
        state.t_prev = state.t;
        state.t = t;

        let u_next = update_factor_u(&state, problem, config)?;
        let v_next = update_factor_v(&state, &u_next, problem, config)?;
        state.iter += 1;
        if !u_next.is_finite() || !v_next.is_finite() {
            return Err(Error::NonFinite {
                solver: "qlnf",
                iteration: state.iter,
            });
        }
        let change = 0.5 * (relative_change(&u_next, &state.u) + relative_change(&v_next, &state.v));
        state.u_prev = std::mem::replace(&mut state.u, u_next);
        state.v_prev = std::mem::replace(&mut state.v, v_next);
        observer(&state);
        log::debug!("qlnf iter {} change {:.3e}", state.iter, change);
        if change <= config.tol {
            status = SolveStatus::Converged;
            break;
        }
    }

    Ok(Completion {
        matrix: state.product(),
        iterations: state.iter,
        status,
    })
}
