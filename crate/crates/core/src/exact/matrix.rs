//! Dense matrices over an exact coefficient domain, plus the Bareiss
//! fraction-free determinant.

use super::ring::{Conj, Ring};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                if self[(i, k)].is_zero() || rhs[(k, j)].is_zero() {
                    continue;
                }
                acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        (0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Ring + Conj> Matrix<T> {
    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// All leading principal minors `det M_1 .. det M_n` of a square matrix, by
/// one fraction-free elimination pass (the Bareiss pivot entering step k is
/// exactly the k-th leading minor).
///
/// No pivoting is performed: the caller must guarantee the monotone-rank
/// property that a vanishing leading minor forces all larger ones to vanish.
/// Hankel matrices of power sums of Hermitian matrices have it — their
/// minors are sums of squared Vandermonde products of a real spectrum.
pub fn leading_principal_minors<T: Ring>(m: &Matrix<T>) -> Vec<T> {
    assert!(m.is_square(), "principal minors of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut minors = Vec::with_capacity(n);
    let mut prev_pivot = T::one();
    for k in 0..n {
        let pivot = a[(k, k)].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            minors.resize(n, T::zero());
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = pivot.clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = num.exact_div(&prev_pivot);
            }
        }
        prev_pivot = pivot;
    }
    minors
}

/// Exact determinant by Bareiss one-step fraction-free elimination with row
/// pivoting. Works over any integral domain: every division performed is
/// exact by the Sylvester identity.
pub fn bareiss_det<T: Ring>(m: &Matrix<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut prev_pivot = T::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        let tmp = a[(k, j)].clone();
                        a[(k, j)] = a[(r, j)].clone();
                        a[(r, j)] = tmp;
                    }
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num =
                    a[(k, k)].clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = num.exact_div(&prev_pivot);
            }
            a[(i, k)] = T::zero();
        }
        prev_pivot = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}
