//! Dense matrices over a prime field.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field;
use crate::error::{Error, Result};

/// A dense row-major matrix over F_p. Empty shapes (`0 x n`, `n x 0`) are legal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFieldMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// A column vector, stored as a plain slice of reduced entries.
pub type Vector = Vec<u32>;

impl PrimeFieldMatrix {
    /// Builds a matrix, reducing every entry mod p.
    pub fn new(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        field::check_prime(p)?;
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        let data = data.into_iter().map(|v| v % p).collect();
        Ok(Self { p, rows, cols, data })
    }

    pub fn from_i64(p: u32, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        field::check_prime(p)?;
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        let data = data.iter().map(|&v| field::reduce(p, v)).collect();
        Ok(Self { p, rows, cols, data })
    }

    /// Row-major literal; panics on ragged input. Intended for tests and examples.
    pub fn from_rows(p: u32, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let flat: Vec<i64> = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged matrix literal");
                row.iter().copied()
            })
            .collect();
        Self::from_i64(p, r, c, &flat).expect("valid literal")
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// `c * I_n`
    pub fn scalar(p: u32, n: usize, c: i64) -> Self {
        let mut m = Self::zeros(p, n, n);
        let v = field::reduce(p, c);
        for i in 0..n {
            m.data[i * n + i] = v;
        }
        m
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(p: u32, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v % p;
            }
        }
        m
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
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
    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    /// Checked product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = vec![0u32; self.rows * other.cols];
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(brow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out[i * other.cols + j] = *a as u32;
            }
        }
        Ok(Self { p: self.p, rows: self.rows, cols: other.cols, data: out })
    }

    /// Product for internally constructed operands; panics on mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.matmul(other).expect("conforming matrices")
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    s = (s + self.get(i, k) as u64 * x as u64) % self.p as u64;
                }
                s as u32
            })
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        assert_eq!(self.p, other.p);
        assert_eq!(self.shape(), other.shape(), "shape mismatch in elementwise op");
        Self {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        self.zip_with(other, |a, b| field::add(p, a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        self.zip_with(other, |a, b| field::sub(p, a, b))
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self { data: self.data.iter().map(|&a| field::neg(p, a)).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p;
        Self { data: self.data.iter().map(|&a| field::mul(p, a, c)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Copy of the block with rows `r0..r0+h` and columns `c0..c0+w`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols);
        let mut b = Self::zeros(self.p, h, w);
        for i in 0..h {
            for j in 0..w {
                b.data[i * w + j] = self.get(r0 + i, c0 + j);
            }
        }
        b
    }

    /// Overwrite the block at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of bounds");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j);
            }
        }
    }

    /// Add `b` into the block at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of bounds");
        for i in 0..b.rows {
            for j in 0..b.cols {
                let k = (r0 + i) * self.cols + c0 + j;
                self.data[k] = field::add(self.p, self.data[k], b.get(i, j));
            }
        }
    }

    /// Select rows by index (in the given order).
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.p, idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        m
    }

    /// Select columns by index (in the given order).
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.p, self.rows, idx.len());
        for i in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.data[i * idx.len() + j] = self.get(i, c);
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(p: u32, blocks: &[&Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(p, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Reduced row echelon form and pivot columns. The pivot in each column is the
    /// first nonzero entry at or below the current pivot row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if r != prow {
                for j in 0..m.cols {
                    m.data.swap(r * m.cols + j, prow * m.cols + j);
                }
            }
            let iv = field::inv(p, m.get(prow, c));
            for j in c..m.cols {
                let k = prow * m.cols + j;
                m.data[k] = field::mul(p, m.data[k], iv);
            }
            for r2 in 0..m.rows {
                if r2 == prow {
                    continue;
                }
                let f = m.get(r2, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let a = m.data[prow * m.cols + j];
                    if a != 0 {
                        let k = r2 * m.cols + j;
                        m.data[k] = field::sub(p, m.data[k], field::mul(p, f, a));
                    }
                }
            }
            pivots.push(c);
            prow += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        (0..self.cols)
            .filter(|&f| is_pivot[f].is_none())
            .map(|f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (i, &c) in pivots.iter().enumerate() {
                    v[c] = field::neg(self.p, r.get(i, f));
                }
                v
            })
            .collect()
    }

    /// Solve `self * x = b`. `None` when `b` is outside the column space; otherwise a
    /// particular solution (free variables zero) and a basis of the homogeneous solutions.
    pub fn solve_affine(&self, b: &[u32]) -> Result<Option<(Vector, Vec<Vector>)>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let mut aug = Self::zeros(self.p, self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, &v) in b.iter().enumerate() {
            aug.set(i, self.cols, v);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.get(i, self.cols);
        }
        Ok(Some((x, self.kernel_basis())))
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.p, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(self.p, n));
        let (r, pivots) = aug.rref();
        if pivots.iter().take(n).copied().ne(0..n) {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Indices of a maximal independent subset of the columns, greedily from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Extend the (independent) columns of `self` to a basis of F_p^rows by appending
    /// standard basis vectors; returns the indices of the appended unit vectors.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut aug = Self::zeros(self.p, self.rows, self.cols + self.rows);
        aug.set_block(0, 0, self);
        aug.set_block(0, self.cols, &Self::identity(self.p, self.rows));
        aug.rref().1.into_iter().filter(|&c| c >= self.cols).map(|c| c - self.cols).collect()
    }
}

impl fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{} mod {}]", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            write!(f, "\n  ")?;
            for j in 0..self.cols {
                write!(f, "{:>4}", field::centered(self.p, self.get(i, j)))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 101;

    #[test]
    fn identity_times_m() {
        let m = PrimeFieldMatrix::from_rows(P, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(PrimeFieldMatrix::identity(P, 3).matmul(&m).unwrap(), m);
    }

    #[test]
    fn empty_composition() {
        let a = PrimeFieldMatrix::zeros(P, 2, 0);
        let b = PrimeFieldMatrix::zeros(P, 0, 3);
        assert_eq!(a.matmul(&b).unwrap(), PrimeFieldMatrix::zeros(P, 2, 3));
    }

    #[test]
    fn small_product_mod5() {
        let a = PrimeFieldMatrix::from_rows(5, &[&[1, 2], &[3, 4]]);
        let b = PrimeFieldMatrix::from_rows(5, &[&[1], &[1]]);
        assert_eq!(a.matmul(&b).unwrap(), PrimeFieldMatrix::from_rows(5, &[&[3], &[2]]));
    }

    #[test]
    fn matmul_errors() {
        let a = PrimeFieldMatrix::zeros(P, 2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::ShapeMismatch(_))));
        let b = PrimeFieldMatrix::zeros(5, 3, 1);
        assert!(matches!(a.matmul(&b), Err(Error::ModulusMismatch(101, 5))));
        assert!(PrimeFieldMatrix::new(4, 1, 1, vec![1]).is_err());
    }

    #[test]
    fn kernels() {
        assert_eq!(PrimeFieldMatrix::zeros(P, 2, 3).kernel_basis().len(), 3);
        assert!(PrimeFieldMatrix::identity(P, 4).kernel_basis().is_empty());
        let m = PrimeFieldMatrix::from_rows(2, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![vec![1, 1]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(PrimeFieldMatrix::identity(P, 5).rank(), 5);
        assert_eq!(PrimeFieldMatrix::zeros(P, 3, 2).rank(), 0);
    }

    #[test]
    fn affine_solutions() {
        let id = PrimeFieldMatrix::identity(P, 3);
        let (x, k) = id.solve_affine(&[4, 5, 6]).unwrap().unwrap();
        assert_eq!(x, vec![4, 5, 6]);
        assert!(k.is_empty());
        let z = PrimeFieldMatrix::zeros(P, 2, 2);
        assert!(z.solve_affine(&[1, 0]).unwrap().is_none());
        // rows (1,2) and (2,4) are dependent mod 5; b = (1,2) is twice-consistent
        let a = PrimeFieldMatrix::from_rows(5, &[&[1, 2], &[2, 4]]);
        let (x, k) = a.solve_affine(&[1, 2]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![1, 2]);
        assert_eq!(k.len(), 1);
        assert!(a.solve_affine(&[1]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = PrimeFieldMatrix::from_rows(P, &[&[2, 1], &[1, 1]]);
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        let s = PrimeFieldMatrix::from_rows(P, &[&[1, 1], &[1, 1]]);
        assert!(s.inverse().is_none());
        assert_eq!(PrimeFieldMatrix::identity(P, 0).inverse().unwrap().shape(), (0, 0));
    }
}
