//! QSVD through the complex adjoint embedding, quaternion rank, and the
//! nuclear / logarithmic / truncated logarithmic norm family.
//!
//! A quaternion matrix `A = A_p + A_q j` with `A_p = A0 + A1 i` and
//! `A_q = A2 + A3 i` is embedded as the `2M x 2N` complex matrix
//!
//! ```text
//!     [  A_p        A_q     ]
//!     [ -conj(A_q)  conj(A_p) ]
//! ```
//!
//! The embedding is a ring homomorphism, so every singular value of `A`
//! appears twice in the spectrum of the embedding.

use faer::{c64, Mat, MatRef};

use crate::error::{Error, Result};
use crate::matrix::QuaternionMatrix;
use crate::quaternion::Quaternion;

/// Singular values below `SPECTRUM_FLOOR * sigma_max` are treated as exact zeros.
pub const SPECTRUM_FLOOR: f64 = 1e-14;

/// Default relative tolerance for [`qrank`].
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Consecutive singular value pairs closer than this (relative to `sigma_max`)
/// are orthonormalized together when the quaternion factors are extracted.
const CLUSTER_TOL: f64 = 1e-9;

#[inline]
fn q_from_parts(p: c64, q: c64) -> Quaternion {
    Quaternion::new(p.re, p.im, q.re, q.im)
}

/// The `2M x 2N` complex embedding of a quaternion matrix.
#[derive(Clone, Debug)]
pub struct ComplexAdjoint {
    rows: usize,
    cols: usize,
    matrix: Mat<c64>,
}

impl ComplexAdjoint {
    pub fn from_quaternion(a: &QuaternionMatrix) -> Self {
        let (m, n) = a.shape();
        let matrix = Mat::from_fn(2 * m, 2 * n, |i, j| {
            let q = a[(i % m, j % n)];
            let p = c64::new(q.a0, q.a1);
            let s = c64::new(q.a2, q.a3);
            match (i < m, j < n) {
                (true, true) => p,
                (true, false) => s,
                (false, true) => -s.conj(),
                (false, false) => p.conj(),
            }
        });
        Self { rows: m, cols: n, matrix }
    }

    /// Wraps a complex matrix that is assumed to have the adjoint block layout.
    pub fn from_complex(matrix: Mat<c64>) -> Result<Self> {
        if matrix.nrows() % 2 != 0 || matrix.ncols() % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "complex adjoint must have even dimensions, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self {
            rows: matrix.nrows() / 2,
            cols: matrix.ncols() / 2,
            matrix,
        })
    }

    /// Shape of the quaternion matrix this embeds.
    pub fn quaternion_shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn matrix(&self) -> MatRef<'_, c64> {
        self.matrix.as_ref()
    }

    pub fn into_matrix(self) -> Mat<c64> {
        self.matrix
    }

    /// Recovers the quaternion matrix from the top block row `[A_p, A_q]`.
    pub fn to_quaternion(&self) -> QuaternionMatrix {
        quaternion_from_top_blocks(self.matrix.as_ref(), self.rows, self.cols)
    }
}

pub fn to_complex_adjoint(a: &QuaternionMatrix) -> ComplexAdjoint {
    ComplexAdjoint::from_quaternion(a)
}

/// Builds `P + Q j` from the `M x 2N` matrix `[P, Q]`.
fn quaternion_from_top_blocks(top: MatRef<'_, c64>, m: usize, n: usize) -> QuaternionMatrix {
    QuaternionMatrix::from_fn(m, n, |i, j| q_from_parts(top[(i, j)], top[(i, j + n)]))
}

fn complex_svd(ac: MatRef<'_, c64>, thin: bool) -> Result<faer::linalg::solvers::Svd<c64>> {
    let res = if thin { ac.thin_svd() } else { ac.svd() };
    res.map_err(|e| Error::Svd {
        rows: ac.nrows(),
        cols: ac.ncols(),
        reason: format!("{e:?}"),
    })
}

/// Full quaternion SVD `A = U diag(sigma) V^H`.
#[derive(Clone, Debug)]
pub struct QsvdResult {
    /// `M x M` unitary.
    pub u: QuaternionMatrix,
    /// `N x N` unitary.
    pub v: QuaternionMatrix,
    /// `min(M, N)` singular values, descending and nonnegative.
    pub sigma: Vec<f64>,
}

impl QsvdResult {
    /// `U diag(sigma) V^H`.
    pub fn reconstruct(&self) -> QuaternionMatrix {
        self.reconstruct_with(&self.sigma)
    }

    /// `U diag(s) V^H` for a replacement spectrum `s`.
    pub fn reconstruct_with(&self, s: &[f64]) -> QuaternionMatrix {
        let k = s.iter().rposition(|&x| x != 0.0).map_or(0, |p| p + 1);
        let us = self.u.leading_columns(k).scale_columns(&s[..k]);
        let vk = self.v.leading_columns(k).conj_transpose();
        us.matmul(&vk).expect("conformable by construction")
    }

    /// Best rank-`k` approximation, or fewer terms if the spectrum is shorter.
    pub fn truncated(&self, k: usize) -> QuaternionMatrix {
        let mut s = self.sigma.clone();
        for x in s.iter_mut().skip(k) {
            *x = 0.0;
        }
        self.reconstruct_with(&s)
    }
}

/// The antilinear pairing map on an embedded column: `[x; y] -> [-conj(y); conj(x)]`.
///
/// `col` is the concatenation of blocks of length `half`, possibly several
/// (the stacked `[u; v]` vectors use two such pairs).
fn pair_partner(col: &[c64], halves: &[usize]) -> Vec<c64> {
    let mut out = Vec::with_capacity(col.len());
    let mut off = 0;
    for &h in halves {
        let (x, y) = col[off..off + 2 * h].split_at(h);
        out.extend(y.iter().map(|v| -v.conj()));
        out.extend(x.iter().map(|v| v.conj()));
        off += 2 * h;
    }
    out
}

fn dot(a: &[c64], b: &[c64]) -> c64 {
    a.iter().zip(b).fold(c64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y)
}

fn norm_sqr(a: &[c64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// Chooses `picks` vectors from an orthonormal, pairing-invariant set of
/// candidates such that the chosen vectors and their partners stay orthonormal.
fn pick_paired_basis(mut cands: Vec<Vec<c64>>, picks: usize, halves: &[usize]) -> Vec<Vec<c64>> {
    if picks == 1 && cands.len() == 2 {
        let mut first = cands.swap_remove(0);
        let n = norm_sqr(&first).sqrt();
        first.iter_mut().for_each(|z| *z /= n);
        return vec![first];
    }
    let mut chosen: Vec<Vec<c64>> = Vec::with_capacity(picks);
    let mut taken = vec![false; cands.len()];
    for _ in 0..picks {
        let (best, _) = cands
            .iter()
            .enumerate()
            .filter(|(j, _)| !taken[*j])
            .map(|(j, c)| (j, norm_sqr(c)))
            .fold((usize::MAX, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        taken[best] = true;
        let mut q = std::mem::take(&mut cands[best]);
        // second pass cleans up the loss of orthogonality from the first
        for prev in &chosen {
            let partner = pair_partner(prev, halves);
            for basis in [prev, &partner] {
                let c = dot(basis, &q);
                q.iter_mut().zip(basis).for_each(|(z, b)| *z -= b * c);
            }
        }
        let n = norm_sqr(&q).sqrt();
        q.iter_mut().for_each(|z| *z /= n);
        let partner = pair_partner(&q, halves);
        for (j, c) in cands.iter_mut().enumerate() {
            if taken[j] {
                continue;
            }
            for basis in [&q, &partner] {
                let d = dot(basis, c);
                c.iter_mut().zip(basis).for_each(|(z, b)| *z -= b * d);
            }
        }
        chosen.push(q);
    }
    chosen
}

fn column(m: MatRef<'_, c64>, j: usize) -> Vec<c64> {
    (0..m.nrows()).map(|i| m[(i, j)]).collect()
}

/// Quaternion column `x - conj(y) j` from an embedded column `[x; y]`.
fn quaternion_column(col: &[c64]) -> Vec<Quaternion> {
    let h = col.len() / 2;
    (0..h).map(|i| q_from_parts(col[i], -col[h + i].conj())).collect()
}

fn assemble(rows: usize, columns: &[Vec<Quaternion>]) -> QuaternionMatrix {
    QuaternionMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i])
}

/// Number of singular value pairs above the zero floor, given the complex spectrum.
fn positive_pairs(s: &[f64], min_dim: usize) -> usize {
    let smax = s.first().copied().unwrap_or(0.0);
    (0..min_dim).take_while(|&t| s[2 * t] > SPECTRUM_FLOOR * smax).count()
}

/// Quaternion singular value decomposition.
///
/// Computes the full SVD of the complex embedding and extracts the quaternion
/// factors from the first block rows of the complex singular vectors. Where
/// singular values repeat, the complex SVD is free to return any basis of the
/// singular subspace, so the extraction re-selects a basis that is compatible
/// with the quaternion structure.
pub fn qsvd(a: &QuaternionMatrix) -> Result<QsvdResult> {
    let (m, n) = a.shape();
    let k = m.min(n);
    if m == 0 || n == 0 {
        return Ok(QsvdResult {
            u: QuaternionMatrix::identity(m),
            v: QuaternionMatrix::identity(n),
            sigma: Vec::new(),
        });
    }
    let ac = ComplexAdjoint::from_quaternion(a);
    let svd = complex_svd(ac.matrix(), false)?;
    let (cu, cv) = (svd.U(), svd.V());
    let s: Vec<f64> = (0..2 * k).map(|i| svd.S().column_vector()[i].re).collect();
    let smax = s[0];
    let r = positive_pairs(&s, k);

    let mut u_cols: Vec<Vec<Quaternion>> = Vec::with_capacity(m);
    let mut v_cols: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
    let mut sigma = vec![0.0; k];

    // positive part: left and right vectors are selected jointly so that the
    // pairing u_t <-> v_t survives the re-orthogonalization
    let mut t = 0;
    while t < r {
        let mut end = t + 1;
        while end < r && s[2 * end - 1] - s[2 * end] <= CLUSTER_TOL * smax {
            end += 1;
        }
        let cands: Vec<Vec<c64>> = (2 * t..2 * end)
            .map(|j| {
                let mut z = column(cu, j);
                z.extend(column(cv, j));
                z
            })
            .collect();
        for stacked in pick_paired_basis(cands, end - t, &[m, n]) {
            let (mut uc, mut vc) = (stacked[..2 * m].to_vec(), stacked[2 * m..].to_vec());
            let (nu, nv) = (norm_sqr(&uc).sqrt(), norm_sqr(&vc).sqrt());
            uc.iter_mut().for_each(|z| *z /= nu);
            vc.iter_mut().for_each(|z| *z /= nv);
            u_cols.push(quaternion_column(&uc));
            v_cols.push(quaternion_column(&vc));
        }
        for (tt, sig) in sigma.iter_mut().enumerate().take(end).skip(t) {
            *sig = s[2 * tt];
        }
        t = end;
    }

    // null-space completions are chosen independently on each side
    let tail_u: Vec<Vec<c64>> = (2 * r..2 * m).map(|j| column(cu, j)).collect();
    u_cols.extend(pick_paired_basis(tail_u, m - r, &[m]).iter().map(|c| quaternion_column(c)));
    let tail_v: Vec<Vec<c64>> = (2 * r..2 * n).map(|j| column(cv, j)).collect();
    v_cols.extend(pick_paired_basis(tail_v, n - r, &[n]).iter().map(|c| quaternion_column(c)));

    Ok(QsvdResult {
        u: assemble(m, &u_cols),
        v: assemble(n, &v_cols),
        sigma,
    })
}

/// Quaternion singular values (descending, floored) without forming factors.
pub fn singular_values(a: &QuaternionMatrix) -> Result<Vec<f64>> {
    let (m, n) = a.shape();
    let k = m.min(n);
    if k == 0 {
        return Ok(Vec::new());
    }
    let ac = ComplexAdjoint::from_quaternion(a);
    let s = ac.matrix().singular_values().map_err(|e| Error::Svd {
        rows: 2 * m,
        cols: 2 * n,
        reason: format!("{e:?}"),
    })?;
    let r = positive_pairs(&s, k);
    Ok((0..k).map(|t| if t < r { s[2 * t] } else { 0.0 }).collect())
}

/// Applies `f` to every singular value: `U diag(f(sigma)) V^H`.
///
/// Works directly on the complex embedding, whose singular triplets come in
/// pairs with equal values, so no quaternion factors need to be extracted.
/// `f(0)` must be 0 (the result otherwise depends on the null-space basis).
pub fn spectral_map(a: &QuaternionMatrix, f: impl Fn(f64) -> f64) -> Result<QuaternionMatrix> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(a.clone());
    }
    let ac = ComplexAdjoint::from_quaternion(a);
    let svd = complex_svd(ac.matrix(), true)?;
    let (cu, cv) = (svd.U(), svd.V());
    let s = svd.S().column_vector();
    let len = 2 * m.min(n);
    let smax = s[0].re;
    let mapped: Vec<f64> = (0..len)
        .map(|i| {
            let x = s[i].re;
            if x > SPECTRUM_FLOOR * smax {
                f(x)
            } else {
                0.0
            }
        })
        .collect();
    let kept = mapped.iter().rposition(|&x| x != 0.0).map_or(0, |p| p + 1);
    if kept == 0 {
        return Ok(QuaternionMatrix::zeros(m, n));
    }
    let us = Mat::from_fn(m, kept, |i, j| cu[(i, j)] * mapped[j]);
    let top = &us * cv.subcols(0, kept).adjoint();
    Ok(quaternion_from_top_blocks(top.as_ref(), m, n))
}

/// Number of singular values above `tol * sigma_max`.
pub fn qrank(a: &QuaternionMatrix, tol: f64) -> Result<usize> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidParameter(format!("rank tolerance must be >= 0, got {tol}")));
    }
    let s = singular_values(a)?;
    let smax = s.first().copied().unwrap_or(0.0);
    Ok(s.iter().filter(|&&x| x > 0.0 && x > tol * smax).count())
}

/// Exponent and offset of the logarithmic norm `sum log(sigma^p + epsilon)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogNormParams {
    p: f64,
    epsilon: f64,
}

impl LogNormParams {
    pub fn new(p: f64, epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("p must lie in [0, 1], got {p}")));
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!("epsilon must be > 0, got {epsilon}")));
        }
        Ok(Self { p, epsilon })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `log(sigma^p + epsilon)`, with `0^p` taken as 0 for every `p`.
    pub fn term(&self, sigma: f64) -> f64 {
        let pow = if sigma == 0.0 { 0.0 } else { sigma.powf(self.p) };
        (pow + self.epsilon).ln()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormKind {
    Nuclear,
    Log(LogNormParams),
    /// Skips the `r` largest singular values.
    TruncatedLog { r: usize, params: LogNormParams },
}

/// Evaluates a norm from an already computed (descending) spectrum.
pub fn norm_of_spectrum(sigma: &[f64], kind: NormKind) -> Result<f64> {
    match kind {
        NormKind::Nuclear => Ok(sigma.iter().sum()),
        NormKind::Log(params) => Ok(sigma.iter().map(|&s| params.term(s)).sum()),
        NormKind::TruncatedLog { r, params } => {
            if r >= sigma.len() {
                return Err(Error::InvalidParameter(format!(
                    "truncation r = {r} must be below min(M, N) = {}",
                    sigma.len()
                )));
            }
            Ok(sigma[r..].iter().map(|&s| params.term(s)).sum())
        }
    }
}

pub fn quat_norm(a: &QuaternionMatrix, kind: NormKind) -> Result<f64> {
    norm_of_spectrum(&singular_values(a)?, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic::{random_low_rank, random_matrix};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel_err(a: &QuaternionMatrix, b: &QuaternionMatrix) -> f64 {
        (a - b).frobenius_norm() / a.frobenius_norm().max(1.0)
    }

    fn unitarity_defect(u: &QuaternionMatrix) -> f64 {
        let g = u.conj_transpose().matmul(u).unwrap();
        (&g - &QuaternionMatrix::identity(u.cols())).frobenius_norm()
    }

    fn complex_mul(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> Mat<c64> {
        a * b
    }

    fn max_abs_diff(a: MatRef<'_, c64>, b: MatRef<'_, c64>) -> f64 {
        let mut d = 0.0f64;
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                d = d.max((a[(i, j)] - b[(i, j)]).norm());
            }
        }
        d
    }

    #[test]
    fn real_matrix_embeds_block_diagonally() {
        let a = QuaternionMatrix::from_fn(2, 3, |i, j| Quaternion::real((i * 3 + j) as f64));
        let ac = to_complex_adjoint(&a);
        let m = ac.matrix();
        for i in 0..4 {
            for j in 0..6 {
                let expected = if (i < 2) == (j < 3) { ((i % 2) * 3 + j % 3) as f64 } else { 0.0 };
                assert_eq!(m[(i, j)], c64::new(expected, 0.0));
            }
        }
        assert_eq!(ac.to_quaternion(), a);
    }

    #[test]
    fn embedding_is_multiplicative_and_respects_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..5 {
            let a = random_matrix(&mut rng, 3, 3);
            let b = random_matrix(&mut rng, 3, 3);
            let ab = to_complex_adjoint(&a.matmul(&b).unwrap());
            let prod = complex_mul(to_complex_adjoint(&a).matrix(), to_complex_adjoint(&b).matrix());
            assert!(max_abs_diff(ab.matrix(), prod.as_ref()) <= 1e-10);

            let ah = to_complex_adjoint(&a.conj_transpose());
            let adj = to_complex_adjoint(&a).matrix().adjoint().to_owned();
            assert_eq!(max_abs_diff(ah.matrix(), adj.as_ref()), 0.0);
        }
    }

    #[test]
    fn identity_qsvd() {
        let r = qsvd(&QuaternionMatrix::identity(4)).unwrap();
        assert!(r.sigma.iter().all(|&s| (s - 1.0).abs() < 1e-12));
        assert!(unitarity_defect(&r.u) < 1e-10);
        assert!(unitarity_defect(&r.v) < 1e-10);
        assert!(rel_err(&QuaternionMatrix::identity(4), &r.reconstruct()) < 1e-12);
    }

    #[test]
    fn diagonal_example() {
        let a = QuaternionMatrix::from_vec(
            2,
            2,
            vec![Quaternion::new(1.0, 1.0, 0.0, 0.0), Quaternion::ZERO, Quaternion::ZERO, Quaternion::new(0.0, 0.0, 2.0, 0.0)],
        )
        .unwrap();
        let r = qsvd(&a).unwrap();
        assert!((r.sigma[0] - 2.0).abs() < 1e-12);
        assert!((r.sigma[1] - 2f64.sqrt()).abs() < 1e-12);
        assert!(rel_err(&a, &r.reconstruct()) < 1e-12);
    }

    #[test]
    fn random_qsvd_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let m = rng.random_range(1..12);
            let n = rng.random_range(1..12);
            let a = random_matrix(&mut rng, m, n);
            let r = qsvd(&a).unwrap();
            assert_eq!(r.sigma.len(), m.min(n));
            assert!(r.sigma.windows(2).all(|w| w[0] >= w[1]));
            assert!(r.sigma.iter().all(|&s| s >= 0.0));
            assert!(rel_err(&a, &r.reconstruct()) <= 1e-10);
            assert!(unitarity_defect(&r.u) <= 1e-10);
            assert!(unitarity_defect(&r.v) <= 1e-10);
        }
    }

    #[test]
    fn rank_deficient_and_repeated_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = random_low_rank(&mut rng, 9, 7, 2);
        let r = qsvd(&a).unwrap();
        assert!(rel_err(&a, &r.reconstruct()) <= 1e-10);
        assert!(unitarity_defect(&r.u) <= 1e-9);
        assert!(unitarity_defect(&r.v) <= 1e-9);
        assert!(r.sigma[2..].iter().all(|&s| s == 0.0));

        // a unitary matrix scaled by 3: one cluster holding every singular value
        let q = qsvd(&random_matrix(&mut rng, 5, 5)).unwrap().u.scale(3.0);
        let r = qsvd(&q).unwrap();
        assert!(r.sigma.iter().all(|&s| (s - 3.0).abs() < 1e-10));
        assert!(rel_err(&q, &r.reconstruct()) <= 1e-10);
        assert!(unitarity_defect(&r.u) <= 1e-9);
    }

    #[test]
    fn zero_matrix() {
        let z = QuaternionMatrix::zeros(3, 4);
        let r = qsvd(&z).unwrap();
        assert_eq!(r.sigma, vec![0.0; 3]);
        assert!(unitarity_defect(&r.u) < 1e-12);
        assert!(unitarity_defect(&r.v) < 1e-12);
        assert_eq!(qrank(&z, DEFAULT_RANK_TOL).unwrap(), 0);
    }

    #[test]
    fn spectral_map_agrees_with_qsvd_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_matrix(&mut rng, 6, 4);
        let f = |x: f64| (x - 0.7).max(0.0);
        let fast = spectral_map(&a, f).unwrap();
        let r = qsvd(&a).unwrap();
        let s: Vec<f64> = r.sigma.iter().map(|&x| f(x)).collect();
        let slow = r.reconstruct_with(&s);
        assert!((&fast - &slow).frobenius_norm() < 1e-10);
    }

    #[test]
    fn ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        assert_eq!(qrank(&QuaternionMatrix::identity(5), DEFAULT_RANK_TOL).unwrap(), 5);
        let u = random_matrix(&mut rng, 6, 1);
        let v = random_matrix(&mut rng, 4, 1);
        let outer = u.matmul(&v.conj_transpose()).unwrap();
        assert_eq!(qrank(&outer, DEFAULT_RANK_TOL).unwrap(), 1);
        assert!(qrank(&outer, -1.0).is_err());
    }

    #[test]
    fn norm_examples() {
        let eps = 0.1;
        let zero = QuaternionMatrix::zeros(3, 5);
        for p in [0.0, 0.5, 1.0] {
            let params = LogNormParams::new(p, eps).unwrap();
            let v = quat_norm(&zero, NormKind::Log(params)).unwrap();
            assert!((v - 3.0 * eps.ln()).abs() < 1e-12);
        }

        let a = QuaternionMatrix::from_vec(
            2,
            2,
            vec![Quaternion::new(1.0, 1.0, 0.0, 0.0), Quaternion::ZERO, Quaternion::ZERO, Quaternion::new(0.0, 0.0, 2.0, 0.0)],
        )
        .unwrap();
        let params = LogNormParams::new(1.0, eps).unwrap();
        let log = quat_norm(&a, NormKind::Log(params)).unwrap();
        let expected = 2.1f64.ln() + (2f64.sqrt() + 0.1).ln();
        assert!((log - expected).abs() < 1e-12);
        assert!((log - 1.15684).abs() < 1e-5);

        let nuc = quat_norm(&a, NormKind::Nuclear).unwrap();
        assert!((nuc - (2.0 + 2f64.sqrt())).abs() < 1e-12);

        let tr = quat_norm(&a, NormKind::TruncatedLog { r: 1, params }).unwrap();
        assert!((tr - (2f64.sqrt() + 0.1).ln()).abs() < 1e-12);
        assert!(quat_norm(&a, NormKind::TruncatedLog { r: 2, params }).is_err());
    }

    #[test]
    fn log_norm_params_validation() {
        assert!(LogNormParams::new(1.5, 0.1).is_err());
        assert!(LogNormParams::new(-0.1, 0.1).is_err());
        assert!(LogNormParams::new(0.5, 0.0).is_err());
        assert!(LogNormParams::new(0.5, f64::NAN).is_err());
    }
}
