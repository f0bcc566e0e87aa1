//! Dense matrices over a [`Ring`].
//!
//! Vectors are rows and linear maps act on the right: the image of `x` under
//! `M` is `x * M`, and "first `F`, then `G`" is the product `F * G`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    /// Builds a matrix from row-major data, normalizing every entry into the
    /// ring.
    pub fn new(ring: &Ring, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data.into_iter().map(|s| ring.normalize(s)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { ring: ring.clone(), rows, cols, data })
    }

    pub fn from_rows(ring: &Ring, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Matrix::new(ring, n, cols, data)
    }

    pub fn from_i64(ring: &Ring, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&v| ring.from_i64(v))
            })
            .collect();
        Matrix { ring: ring.clone(), rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose entries are computed by `f(row, col)`.
    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    pub(crate) fn from_raw(ring: &Ring, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn row_vector(ring: &Ring, v: Vec<Scalar>) -> Self {
        let n = v.len();
        Matrix { ring: ring.clone(), rows: 1, cols: n, data: v }
    }

    /// The `i`-th standard basis row of length `n`.
    pub fn unit_vector(ring: &Ring, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![ring.zero(); n];
        v[i] = ring.one();
        v
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| self.ring.is_zero(s))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product {:?} * {:?}", self.shape(), other.shape());
        let r = &self.ring;
        let mut out = Matrix::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = r.add(&out.data[idx], &r.mul(a, b));
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "vector of length {} against {:?}", v.len(), self.shape());
        let r = &self.ring;
        let mut out = vec![r.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if !r.is_zero(b) {
                    *o = r.add(o, &r.mul(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let r = &self.ring;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| r.add(a, b)).collect();
        Matrix::from_raw(r, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let r = &self.ring;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| r.sub(a, b)).collect();
        Matrix::from_raw(r, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Matrix {
        let r = &self.ring;
        Matrix::from_raw(r, self.rows, self.cols, self.data.iter().map(|a| r.neg(a)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let r = &self.ring;
        Matrix::from_raw(r, self.rows, self.cols, self.data.iter().map(|a| r.mul(a, c)).collect())
    }

    /// Kronecker product. Row `(i, k)` of the result has index
    /// `i * other.rows + k`, so `(x ⊗ y) * (A ⊗ B) = (x A) ⊗ (y B)`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let r = &self.ring;
        let (ra, ca) = self.shape();
        let (rb, cb) = other.shape();
        let mut out = Matrix::zeros(r, ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let a = self.get(i, j);
                if r.is_zero(a) {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        let b = other.get(k, l);
                        if !r.is_zero(b) {
                            out.set(i * rb + k, j * cb + l, r.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(&self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::from_raw(&self.ring, self.rows + other.rows, self.cols, data)
    }

    pub fn vstack_all(ring: &Ring, cols: usize, parts: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        Matrix::from_raw(ring, rows, cols, data)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Matrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j).clone());
            }
        }
    }

    pub fn add_to_block(&mut self, row: usize, col: usize, block: &Matrix) {
        let r = self.ring.clone();
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = block.get(i, j);
                if !r.is_zero(b) {
                    let cur = self.get(row + i, col + j).clone();
                    self.set(row + i, col + j, r.add(&cur, b));
                }
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix::from_raw(&self.ring, idx.len(), self.cols, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        let idx: Vec<usize> = (start..end).collect();
        self.select_rows(&idx)
    }

    pub fn col_range(&self, start: usize, end: usize) -> Matrix {
        let idx: Vec<usize> = (start..end).collect();
        self.select_cols(&idx)
    }

    /// Drops rows that are entirely zero.
    pub fn without_zero_rows(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&i| self.row(i).iter().any(|s| !self.ring.is_zero(s)))
            .collect();
        self.select_rows(&keep)
    }

    /// Reinterprets the entries in another ring through `f`.
    pub fn map_entries(&self, ring: &Ring, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix::from_raw(ring, self.rows, self.cols, self.data.iter().map(|s| ring.normalize(f(s)).expect("entry map")).collect())
    }

    /// Entries as integers; valid for integral rings.
    pub(crate) fn to_int_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|s| s.as_int().clone()).collect()).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, s) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Entrywise helpers on row vectors.
pub mod vec_ops {
    use crate::ring::{Ring, Scalar};

    pub fn add(r: &Ring, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| r.add(x, y)).collect()
    }

    pub fn sub(r: &Ring, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| r.sub(x, y)).collect()
    }

    pub fn scale(r: &Ring, c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| r.mul(c, x)).collect()
    }

    pub fn axpy(r: &Ring, acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
        if r.is_zero(c) {
            return;
        }
        for (a, v) in acc.iter_mut().zip(x) {
            if !r.is_zero(v) {
                *a = r.add(a, &r.mul(c, v));
            }
        }
    }

    pub fn is_zero(r: &Ring, a: &[Scalar]) -> bool {
        a.iter().all(|x| r.is_zero(x))
    }

    /// `a ⊗ b` with index `i * b.len() + j`.
    pub fn kron(r: &Ring, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(r.mul(x, y));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_respects_row_convention() {
        let r = Ring::integers();
        let a = Matrix::from_i64(&r, &[&[1, 2], &[0, 1]]);
        let b = Matrix::from_i64(&r, &[&[3], &[4]]);
        let x = vec![r.from_i64(1), r.from_i64(-1)];
        let y = vec![r.from_i64(2), r.from_i64(5)];
        let lhs = a.kron(&b).apply(&vec_ops::kron(&r, &x, &y));
        let rhs = vec_ops::kron(&r, &a.apply(&x), &b.apply(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn new_checks_dimensions() {
        let r = Ring::integers();
        assert!(Matrix::new(&r, 2, 2, vec![r.one(); 3]).is_err());
    }
}
