//! Small dense matrices over any [`Scalar`].
//!
//! The representation matrices are at most 10×10, so a row-major `Vec`
//! is all we need. Exact row reduction is available over [`FieldScalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{fmt_gaussian, FieldScalar, GaussianRational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { S::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Product of a word of matrices; the identity of size `n` when empty.
    pub fn product<'a>(n: usize, factors: impl IntoIterator<Item = &'a Self>) -> Self {
        factors.into_iter().fold(Self::identity(n), |acc, m| &acc * m)
    }

    /// Nonzero entries as `(row, col, value)`, used for counterexamples.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, S)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Restriction to the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn to_c64(&self) -> Matrix<num_complex::Complex<f64>> {
        self.map(|v| v.to_c64())
    }

    /// Frobenius norm in floating point; diagnostics only.
    pub fn norm_f64(&self) -> f64 {
        self.data.iter().map(|v| v.to_c64().norm_sqr()).sum::<f64>().sqrt()
    }
}

impl<S: FieldScalar> Matrix<S> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<'a, S: Scalar> Add<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<'a, S: Scalar> Sub<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<'a, S: Scalar> Mul<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::<S>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<S: Scalar> Add for Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Matrix<S>) -> Matrix<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Matrix<S>) -> Matrix<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Matrix<S>) -> Matrix<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.map(|v| -v.clone())
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:?}", self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// One matrix entry in serialized form: `[[re_num, re_den], [im_num, im_den]]`.
pub type EntryRepr = [[i128; 2]; 2];

pub fn entry_repr(z: &GaussianRational) -> EntryRepr {
    [[*z.re.numer(), *z.re.denom()], [*z.im.numer(), *z.im.denom()]]
}

/// Serializable sparse view of an exact matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseEntry {
    pub row: usize,
    pub col: usize,
    pub value: EntryRepr,
    pub display: String,
}

impl Matrix<GaussianRational> {
    pub fn sparse_entries(&self) -> Vec<SparseEntry> {
        self.nonzero_entries()
            .into_iter()
            .map(|(row, col, v)| SparseEntry { row, col, value: entry_repr(&v), display: fmt_gaussian(&v) })
            .collect()
    }

    /// `E_{ij}` with 0-based indices.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, GaussianRational::one());
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gi;

    type M = Matrix<GaussianRational>;

    #[test]
    fn identity_is_neutral() {
        let a = M::from_fn(3, 3, |i, j| gi(i as i64 - j as i64, (i * j) as i64));
        let id = M::identity(3);
        assert_eq!(&a * &id, a);
        assert_eq!(&id * &a, a);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = M::from_rows(vec![vec![gi(1, 0), gi(2, 0)], vec![gi(2, 0), gi(4, 0)]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Zero::is_zero));
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn adjoint_conjugates() {
        let a = M::from_rows(vec![vec![gi(0, 1), gi(1, 0)], vec![gi(0, 0), gi(2, -3)]]);
        let b = a.adjoint();
        assert_eq!(*b.get(0, 0), gi(0, -1));
        assert_eq!(*b.get(0, 1), gi(0, 0));
        assert_eq!(*b.get(1, 0), gi(1, 0));
    }
}
