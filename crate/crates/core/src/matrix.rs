//! Dense row-major quaternion matrices and 0/1 observation masks.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{check_same_shape, Error, Result};
use crate::quaternion::Quaternion;

/// Dense `rows x cols` quaternion matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QuaternionMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Quaternion::ONE } else { Quaternion::ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadLength {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Real diagonal matrix of shape `rows x cols` carrying `diag` on its main diagonal.
    pub fn from_real_diagonal(rows: usize, cols: usize, diag: &[f64]) -> Self {
        let mut out = Self::zeros(rows, cols);
        for (t, &s) in diag.iter().enumerate().take(rows.min(cols)) {
            out[(t, t)] = Quaternion::real(s);
        }
        out
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [Quaternion] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Quaternion> {
        self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Quaternion] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `C = A B` with entries `C_ij = sum_k A_ik B_kj` (left operand on the left).
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == Quaternion::ZERO {
                    continue;
                }
                for (c, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *c += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `A^H`, the quaternion conjugate transpose.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sqr().sqrt()
    }

    /// `W ⊙ A`: keeps entries where the mask is set and zeroes the rest.
    pub fn masked(&self, mask: &MaskMatrix) -> Result<Self> {
        check_same_shape("hadamard_mask", mask.shape(), self.shape())?;
        let data = self
            .data
            .iter()
            .zip(&mask.data)
            .map(|(&q, &m)| if m { q } else { Quaternion::ZERO })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Overwrites the entries observed in `mask` with the corresponding entries of `src`.
    pub fn copy_observed_from(&mut self, mask: &MaskMatrix, src: &Self) -> Result<()> {
        check_same_shape("copy_observed_from", mask.shape(), self.shape())?;
        check_same_shape("copy_observed_from", src.shape(), self.shape())?;
        for ((dst, &s), &m) in self.data.iter_mut().zip(&src.data).zip(&mask.data) {
            if m {
                *dst = s;
            }
        }
        Ok(())
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|q| q * s)
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&q| f(q)).collect(),
        }
    }

    /// `self + alpha * other`.
    pub fn add_scaled(&self, alpha: f64, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "add_scaled: shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b * alpha)
                .collect(),
        }
    }

    /// The first `k` columns.
    pub fn leading_columns(&self, k: usize) -> Self {
        assert!(k <= self.cols, "leading_columns: {k} > {}", self.cols);
        Self::from_fn(self.rows, k, |i, j| self[(i, j)])
    }

    /// Right-multiplies by `diag(d)`, i.e. scales column `j` by `d[j]`.
    pub fn scale_columns(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.cols, "scale_columns: length mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * d[j])
    }

    pub fn trace(&self) -> Quaternion {
        (0..self.rows.min(self.cols)).map(|t| self[(t, t)]).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|q| q.is_finite())
    }

    /// Quaternion matrix with all entries zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&q| q == Quaternion::ZERO)
    }
}

impl Index<(usize, usize)> for QuaternionMatrix {
    type Output = Quaternion;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QuaternionMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

fn zip_with(
    a: &QuaternionMatrix,
    b: &QuaternionMatrix,
    op: &'static str,
    f: impl Fn(Quaternion, Quaternion) -> Quaternion,
) -> QuaternionMatrix {
    assert_eq!(a.shape(), b.shape(), "{op}: shape mismatch");
    QuaternionMatrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| f(x, y)).collect(),
    }
}

/// Panics on shape mismatch.
impl Add for &QuaternionMatrix {
    type Output = QuaternionMatrix;

    fn add(self, rhs: Self) -> QuaternionMatrix {
        zip_with(self, rhs, "add", |a, b| a + b)
    }
}

/// Panics on shape mismatch.
impl Sub for &QuaternionMatrix {
    type Output = QuaternionMatrix;

    fn sub(self, rhs: Self) -> QuaternionMatrix {
        zip_with(self, rhs, "sub", |a, b| a - b)
    }
}

impl Neg for &QuaternionMatrix {
    type Output = QuaternionMatrix;

    fn neg(self) -> QuaternionMatrix {
        self.map(|q| -q)
    }
}

impl Mul<f64> for &QuaternionMatrix {
    type Output = QuaternionMatrix;

    fn mul(self, s: f64) -> QuaternionMatrix {
        self.scale(s)
    }
}

/// Real 0/1 indicator of observed entries. `true` marks an observed entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl MaskMatrix {
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![true; rows * cols],
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![false; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<bool>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadLength {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_observed(&self, i: usize, j: usize) -> bool {
        self.data[i * self.cols + j]
    }

    /// Entry as the real value 0.0 or 1.0.
    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        if self.is_observed(i, j) {
            1.0
        } else {
            0.0
        }
    }

    #[inline]
    pub fn as_slice(&self) -> &[bool] {
        &self.data
    }

    pub fn observed_count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    /// Fraction of observed entries; 0 for an empty mask shape.
    pub fn sampling_rate(&self) -> f64 {
        if self.data.is_empty() {
            0.0
        } else {
            self.observed_count() as f64 / self.data.len() as f64
        }
    }
}

/// `W ⊙ A` as a free function.
pub fn hadamard_mask(mask: &MaskMatrix, a: &QuaternionMatrix) -> Result<QuaternionMatrix> {
    a.masked(mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic::random_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_is_neutral_for_matmul() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_matrix(&mut rng, 4, 3);
        assert_eq!(a.matmul(&QuaternionMatrix::identity(3)).unwrap(), a);
        assert_eq!(QuaternionMatrix::identity(4).matmul(&a).unwrap(), a);
    }

    #[test]
    fn one_by_one_matmul_is_qmul() {
        let a = QuaternionMatrix::from_vec(1, 1, vec![Quaternion::I]).unwrap();
        let b = QuaternionMatrix::from_vec(1, 1, vec![Quaternion::J]).unwrap();
        assert_eq!(a.matmul(&b).unwrap()[(0, 0)], Quaternion::K);
        assert_eq!(b.matmul(&a).unwrap()[(0, 0)], -Quaternion::K);
    }

    #[test]
    fn matmul_dimension_mismatch() {
        let a = QuaternionMatrix::zeros(2, 3);
        let b = QuaternionMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn matmul_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let a = random_matrix(&mut rng, 5, 4);
            let b = random_matrix(&mut rng, 4, 6);
            let c = random_matrix(&mut rng, 6, 3);
            let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
            let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
            let rel = (&left - &right).frobenius_norm() / left.frobenius_norm();
            assert!(rel <= 1e-9, "rel {rel}");
        }
    }

    #[test]
    fn conj_transpose_is_involution_and_reverses_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 3, 5);
        let b = random_matrix(&mut rng, 5, 2);
        assert_eq!(a.conj_transpose().conj_transpose(), a);
        let lhs = a.matmul(&b).unwrap().conj_transpose();
        let rhs = b.conj_transpose().matmul(&a.conj_transpose()).unwrap();
        assert!((&lhs - &rhs).frobenius_norm() < 1e-12);
    }

    #[test]
    fn frobenius_norm_matches_entry_moduli() {
        let single = QuaternionMatrix::from_vec(1, 1, vec![Quaternion::new(1.0, 1.0, 1.0, 1.0)]).unwrap();
        assert_eq!(single.frobenius_norm(), 2.0);

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_matrix(&mut rng, 7, 4);
        let direct: f64 = a.as_slice().iter().map(|q| q.modulus().powi(2)).sum();
        assert!((a.frobenius_norm().powi(2) - direct).abs() <= 1e-10 * direct);
        // tr(A^H A) is real and equals the squared norm
        let tr = a.conj_transpose().matmul(&a).unwrap().trace();
        assert!((tr.a0 - direct).abs() <= 1e-10 * direct);
        assert!(tr.a1.abs() + tr.a2.abs() + tr.a3.abs() < 1e-10);
        assert_eq!(QuaternionMatrix::zeros(3, 3).frobenius_norm(), 0.0);
    }

    #[test]
    fn masking() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 3, 4);
        assert_eq!(hadamard_mask(&MaskMatrix::ones(3, 4), &a).unwrap(), a);
        assert!(hadamard_mask(&MaskMatrix::zeros(3, 4), &a).unwrap().is_zero());

        let w = MaskMatrix::from_fn(3, 4, |i, j| (i + j) % 2 == 0);
        let m = a.masked(&w).unwrap();
        for i in 0..3 {
            for j in 0..4 {
                let expected = if w.is_observed(i, j) { a[(i, j)] } else { Quaternion::ZERO };
                assert_eq!(m[(i, j)], expected);
                assert_eq!(w.value(i, j), if (i + j) % 2 == 0 { 1.0 } else { 0.0 });
            }
        }
        assert_eq!(w.observed_count(), 6);
        assert_eq!(w.sampling_rate(), 0.5);
        assert!(a.masked(&MaskMatrix::ones(4, 3)).is_err());
    }

    #[test]
    fn copy_observed_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let src = random_matrix(&mut rng, 4, 4);
        let mut dst = random_matrix(&mut rng, 4, 4);
        let before = dst.clone();
        let w = MaskMatrix::from_fn(4, 4, |i, _| i < 2);
        dst.copy_observed_from(&w, &src).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i < 2 { src[(i, j)] } else { before[(i, j)] };
                assert_eq!(dst[(i, j)], expected);
            }
        }
    }

    #[test]
    fn from_vec_checks_length() {
        assert!(QuaternionMatrix::from_vec(2, 2, vec![Quaternion::ZERO; 3]).is_err());
        assert!(MaskMatrix::from_vec(2, 2, vec![true; 5]).is_err());
    }
}
