//! Dense matrices over Q(i) with exact elimination.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::GaussianRational as G;
use crate::unipoly::UniPoly;

/// Row-major dense matrix. Most of the crate uses square matrices, but
/// rectangular shapes appear for bases and coefficient tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<G>,
}

pub type SquareMatrix = Matrix;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![G::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = G::one();
        }
        m
    }

    pub fn diagonal(d: &[G]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<G>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and tables: integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| G::from(v)).collect()).collect())
            .expect("well-formed integer table")
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

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn row(&self, i: usize) -> Vec<G> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<G> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<G>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &G) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn checked_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a * &o[(k, j)];
                    out[(i, j)] += &t;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[G]) -> Vec<G> {
        assert_eq!(v.len(), self.cols, "mul_vec: length");
        (0..self.rows)
            .map(|i| {
                let mut acc = G::zero();
                for (j, x) in v.iter().enumerate() {
                    acc += &(&self[(i, j)] * x);
                }
                acc
            })
            .collect()
    }

    /// `uᵀ·self·v`.
    pub fn bilinear(&self, u: &[G], v: &[G]) -> G {
        dot(u, &self.mul_vec(v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        *self == -&self.transpose()
    }

    pub fn sym_part(&self) -> Matrix {
        (self + &self.transpose()).scale(&G::from_ratio(1, 2))
    }

    pub fn antisym_part(&self) -> Matrix {
        (self - &self.transpose()).scale(&G::from_ratio(1, 2))
    }

    pub fn trace(&self) -> G {
        let mut t = G::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut acc = Matrix::identity(self.dim());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Row echelon form by exact elimination; returns (echelon, pivot columns, sign of row swaps).
    fn echelon(&self) -> (Matrix, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut flipped = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap_rows(p, r);
                flipped = !flipped;
            }
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..m.cols {
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, flipped)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn det(&self) -> G {
        assert!(self.is_square(), "det of a non-square matrix");
        let (m, pivots, flipped) = self.echelon();
        if pivots.len() < self.rows {
            return G::zero();
        }
        let mut d = if flipped { -G::one() } else { G::one() };
        for i in 0..self.rows {
            d *= &m[(i, i)];
        }
        d
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (mut m, pivots, _) = self.echelon();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                m[(r, j)] *= &inv;
            }
            for i in 0..r {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in 0..m.cols {
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= &t;
                }
            }
        }
        (m, pivots)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = G::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Basis of the right kernel `{v : self·v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<G>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![G::zero(); self.cols];
                v[f] = G::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Some solution of `self·x = b`, if the system is consistent.
    pub fn solve(&self, b: &[G]) -> Option<Vec<G>> {
        assert_eq!(b.len(), self.rows, "solve: right-hand side length");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![G::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Monic characteristic polynomial det(xI − M), by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> UniPoly {
        let n = self.dim();
        let mut coeffs = vec![G::zero(); n + 1];
        coeffs[n] = G::one();
        let mut mk = Matrix::zeros(n, n);
        let id = Matrix::identity(n);
        for k in 1..=n {
            let c_prev = coeffs[n + 1 - k].clone();
            mk = &(self * &mk) + &id.scale(&c_prev);
            let t = (self * &mk).trace();
            coeffs[n - k] = -(&t / &G::from(k as i64));
        }
        UniPoly::new(coeffs)
    }

    /// Projective equality of matrices.
    pub fn proportional_to(&self, o: &Matrix) -> bool {
        if self.rows != o.rows || self.cols != o.cols {
            return false;
        }
        let Some(k) = (0..self.data.len()).find(|&k| !self.data[k].is_zero()) else {
            return o.is_zero();
        };
        if o.data[k].is_zero() {
            return false;
        }
        let f = &o.data[k] / &self.data[k];
        self.scale(&f) == *o
    }
}

pub fn dot(u: &[G], v: &[G]) -> G {
    let mut acc = G::zero();
    for (a, b) in u.iter().zip(v) {
        acc += &(a * b);
    }
    acc
}

/// Projective equality of vectors.
pub fn vec_proportional(u: &[G], v: &[G]) -> bool {
    let a = Matrix::from_rows(vec![u.to_vec()]).expect("nonempty");
    let b = Matrix::from_rows(vec![v.to_vec()]).expect("nonempty");
    a.proportional_to(&b)
}

impl Index<(usize, usize)> for Matrix {
    type Output = G;
    fn index(&self, (i, j): (usize, usize)) -> &G {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut G {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, o: &'a Matrix) -> Matrix {
        self.checked_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, o: &'a Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "add: shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, o: &'a Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "sub: shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-G::one())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(G::to_text).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| self.row(i).iter().map(G::to_text).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<G>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gq;

    #[test]
    fn fixture_determinant() {
        let m = Matrix::from_ints(&[&[0, 0, -2, 0], &[0, 0, 0, -1], &[2, 0, 2, 0], &[0, -1, 0, 0]]);
        assert_eq!(m.det(), gq(-4, 1));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_ints(&[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert_eq!(&m.det() * &inv.det(), gq(1, 1));
        let sing = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(matches!(sing.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn char_poly_of_identity() {
        let cp = Matrix::identity(4).char_poly();
        let xm1 = UniPoly::new(vec![gq(-1, 1), gq(1, 1)]);
        assert_eq!(cp, xm1.pow(4));
    }

    #[test]
    fn nullspace_and_solve() {
        let m = Matrix::from_ints(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Zero::is_zero));
        let x = m.solve(&[gq(2, 1), gq(3, 1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![gq(2, 1), gq(3, 1)]);
        let inconsistent = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(inconsistent.solve(&[gq(1, 1), gq(2, 1)]).is_none());
    }
}
