//! Seeded generators for synthetic quaternion test problems.

use rand::Rng;

use crate::matrix::QuaternionMatrix;
use crate::quaternion::Quaternion;

pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

/// Entries with every component uniform on `[-1, 1)`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> QuaternionMatrix {
    QuaternionMatrix::from_fn(rows, cols, |_, _| random_quaternion(rng))
}

/// `A B^H` with random `rows x rank` and `cols x rank` factors.
pub fn random_low_rank<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    rank: usize,
) -> QuaternionMatrix {
    let a = random_matrix(rng, rows, rank);
    let b = random_matrix(rng, cols, rank);
    a.matmul(&b.conj_transpose()).expect("conformable")
}

/// Orthonormalizes the columns in place (modified Gram-Schmidt over the
/// quaternions acting from the right). Assumes full column rank.
pub fn orthonormalize_columns(a: &QuaternionMatrix) -> QuaternionMatrix {
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<Quaternion>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let q = &done[k];
                let v = &mut rest[0];
                let c: Quaternion = q.iter().zip(v.iter()).map(|(&qi, &vi)| qi.conj() * vi).sum();
                for (vi, &qi) in v.iter_mut().zip(q) {
                    *vi -= qi * c;
                }
            }
        }
        let norm = cols[j].iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|q| *q = *q / norm);
    }
    QuaternionMatrix::from_fn(m, n, |i, j| cols[j][i])
}

/// Haar-like random `n x n` unitary quaternion matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QuaternionMatrix {
    orthonormalize_columns(&random_matrix(rng, n, n))
}

/// Random `rows x cols` matrix (`rows <= cols`) with orthonormal rows.
pub fn random_semi_unitary_rows<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> QuaternionMatrix {
    assert!(rows <= cols, "need rows <= cols for orthonormal rows");
    orthonormalize_columns(&random_matrix(rng, cols, rows)).conj_transpose()
}
