//! Finite-rank commutative algebras `B` over a base ring and matrices with
//! entries in `B`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{vec_ops, Matrix};
use crate::ring::{Ring, Scalar};

/// An element of `B`, as coordinates in the algebra's `R`-basis.
pub type BElem = Vec<Scalar>;

/// A commutative `R`-algebra, free of rank `d` over `R`, given by structure
/// constants `b_i b_j = Σ_k c[i][j][k] b_k` and a unit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BAlgebra {
    ring: Ring,
    constants: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    // right multiplication by b_l on B, as a d x d matrix
    mult: Vec<Matrix>,
}

impl BAlgebra {
    /// Validates commutativity, associativity and the unit law.
    pub fn new(ring: &Ring, constants: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let d = unit.len();
        if d == 0 {
            return Err(Error::InvalidInput("algebra of rank 0".into()));
        }
        if constants.len() != d || constants.iter().any(|c| c.len() != d || c.iter().any(|v| v.len() != d)) {
            return Err(Error::DimensionMismatch(format!("structure constants must be {d}x{d}x{d}")));
        }
        let norm = |v: &Vec<Scalar>| v.iter().map(|s| ring.normalize(s.clone())).collect::<Result<Vec<_>>>();
        let constants = constants
            .iter()
            .map(|plane| plane.iter().map(norm).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = norm(&unit)?;
        let mult = (0..d)
            .map(|l| Matrix::from_fn(ring, d, d, |k, j| constants[k][l][j].clone()))
            .collect();
        let algebra = BAlgebra { ring: ring.clone(), constants, unit, mult };
        algebra.validate()?;
        Ok(algebra)
    }

    /// `B = R`.
    pub fn trivial(ring: &Ring) -> Self {
        BAlgebra::new(ring, vec![vec![vec![ring.one()]]], vec![ring.one()]).expect("R is an R-algebra")
    }

    /// `R × R × ... × R` with its idempotent basis.
    pub fn split(ring: &Ring, n: usize) -> Self {
        let constants = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| if i == j && j == k { ring.one() } else { ring.zero() }).collect()).collect())
            .collect();
        BAlgebra::new(ring, constants, vec![ring.one(); n]).expect("split algebra")
    }

    fn validate(&self) -> Result<()> {
        let r = &self.ring;
        let d = self.rank();
        for i in 0..d {
            for j in 0..d {
                if self.constants[i][j] != self.constants[j][i] {
                    return Err(Error::InvalidInput(format!("algebra not commutative at (b{i}, b{j})")));
                }
                for k in 0..d {
                    let lhs = self.mul(&self.mul(&self.basis(i), &self.basis(j)), &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.mul(&self.basis(j), &self.basis(k)));
                    if lhs != rhs {
                        return Err(Error::InvalidInput(format!("algebra not associative at (b{i}, b{j}, b{k})")));
                    }
                }
            }
            if self.mul(&self.unit, &self.basis(i)) != self.basis(i) {
                return Err(Error::InvalidInput(format!("unit does not fix b{i}")));
            }
        }
        let _ = r;
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.unit.len()
    }

    pub fn constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.constants
    }

    pub fn unit(&self) -> &BElem {
        &self.unit
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 1
    }

    pub fn basis(&self, l: usize) -> BElem {
        Matrix::unit_vector(&self.ring, self.rank(), l)
    }

    pub fn zero(&self) -> BElem {
        vec![self.ring.zero(); self.rank()]
    }

    /// The image of a base-ring scalar in `B`.
    pub fn scalar(&self, s: &Scalar) -> BElem {
        vec_ops::scale(&self.ring, s, &self.unit)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> BElem {
        let r = &self.ring;
        let d = self.rank();
        let mut out = vec![r.zero(); d];
        for (i, x) in a.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if r.is_zero(y) {
                    continue;
                }
                let xy = r.mul(x, y);
                vec_ops::axpy(r, &mut out, &xy, &self.constants[i][j]);
            }
        }
        out
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> BElem {
        vec_ops::add(&self.ring, a, b)
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> BElem {
        vec_ops::sub(&self.ring, a, b)
    }

    pub fn is_zero(&self, a: &[Scalar]) -> bool {
        vec_ops::is_zero(&self.ring, a)
    }

    /// Matrix of `x ↦ x b_l` on `B` in the row convention.
    pub fn mult_matrix(&self, l: usize) -> &Matrix {
        &self.mult[l]
    }

    /// Matrix of `x ↦ x b` for an arbitrary element `b`.
    pub fn mult_by(&self, b: &[Scalar]) -> Matrix {
        let r = &self.ring;
        let d = self.rank();
        let mut out = Matrix::zeros(r, d, d);
        for (l, c) in b.iter().enumerate() {
            if !r.is_zero(c) {
                out = out.add(&self.mult[l].scale(c));
            }
        }
        out
    }

    pub fn inverse(&self, b: &[Scalar]) -> Option<BElem> {
        linalg::solve(&self.mult_by(b), &self.unit)
    }

    /// Every element of `B`, when `R` is finite and there are at most `limit`
    /// of them.
    pub fn elements(&self, limit: usize) -> Option<Vec<BElem>> {
        enumerate_vectors(&self.ring, self.rank(), limit)
    }
}

/// All vectors of length `len` over a finite ring, or `None` if the ring is
/// infinite or there are more than `limit` of them.
pub fn enumerate_vectors(ring: &Ring, len: usize, limit: usize) -> Option<Vec<Vec<Scalar>>> {
    let elems = ring.elements()?;
    let q = elems.len();
    let mut total: usize = 1;
    for _ in 0..len {
        total = total.checked_mul(q)?;
        if total > limit {
            return None;
        }
    }
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(elems[idx % q].clone());
            idx /= q;
        }
        v.reverse();
        out.push(v);
    }
    Some(out)
}

/// A matrix with entries in a commutative algebra `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BMatrix {
    algebra: Arc<BAlgebra>,
    rows: usize,
    cols: usize,
    entries: Vec<BElem>,
}

impl BMatrix {
    pub fn new(algebra: &Arc<BAlgebra>, rows: usize, cols: usize, entries: Vec<BElem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} B-matrix", entries.len())));
        }
        let d = algebra.rank();
        let ring = algebra.ring();
        let entries = entries
            .into_iter()
            .map(|e| {
                if e.len() != d {
                    return Err(Error::DimensionMismatch(format!("B-entry of length {} but B has rank {d}", e.len())));
                }
                e.into_iter().map(|s| ring.normalize(s)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BMatrix { algebra: algebra.clone(), rows, cols, entries })
    }

    /// Entries given as base-ring scalars, embedded through the unit of `B`.
    pub fn from_scalars(algebra: &Arc<BAlgebra>, m: &Matrix) -> Self {
        let entries = m.data().iter().map(|s| algebra.scalar(s)).collect();
        BMatrix { algebra: algebra.clone(), rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn zeros(algebra: &Arc<BAlgebra>, rows: usize, cols: usize) -> Self {
        BMatrix { algebra: algebra.clone(), rows, cols, entries: vec![algebra.zero(); rows * cols] }
    }

    pub fn identity(algebra: &Arc<BAlgebra>, n: usize) -> Self {
        let mut m = BMatrix::zeros(algebra, n, n);
        for i in 0..n {
            m.entries[i * n + i] = algebra.unit().clone();
        }
        m
    }

    pub fn algebra(&self) -> &Arc<BAlgebra> {
        &self.algebra
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BElem> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.algebra.is_zero(e))
    }

    /// All entries' coordinates, row-major.
    pub fn hat_entries(&self) -> Vec<Scalar> {
        self.entries.iter().flat_map(|e| e.iter().cloned()).collect()
    }

    pub fn mul(&self, other: &BMatrix) -> BMatrix {
        assert_eq!(self.cols, other.rows, "B-matrix product shape mismatch");
        let b = &self.algebra;
        let mut out = BMatrix::zeros(b, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if b.is_zero(x) {
                    continue;
                }
                for j in 0..other.cols {
                    let y = other.get(k, j);
                    if b.is_zero(y) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = b.add(&out.entries[idx], &b.mul(x, y));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &BMatrix) -> BMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(x, y)| self.algebra.add(x, y)).collect();
        BMatrix { algebra: self.algebra.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &BMatrix) -> BMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(x, y)| self.algebra.sub(x, y)).collect();
        BMatrix { algebra: self.algebra.clone(), rows: self.rows, cols: self.cols, entries }
    }

    /// Multiplies every entry by the base scalar `c`.
    pub fn scale(&self, c: &Scalar) -> BMatrix {
        let r = self.algebra.ring();
        let entries = self.entries.iter().map(|e| vec_ops::scale(r, c, e)).collect();
        BMatrix { algebra: self.algebra.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn transpose(&self) -> BMatrix {
        let mut out = BMatrix::zeros(&self.algebra, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product over `B`, with the same index convention as
    /// [`Matrix::kron`].
    pub fn kron(&self, other: &BMatrix) -> BMatrix {
        let b = &self.algebra;
        let mut out = BMatrix::zeros(b, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if b.is_zero(x) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, b.mul(x, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// The `R`-linear map `B^rows → B^cols` this matrix defines, with
    /// coordinate `(i, l)` of `B^n` standing for `e_i b_l`.
    pub fn hat(&self) -> Matrix {
        let b = &self.algebra;
        let r = b.ring();
        let d = b.rank();
        let mut out = Matrix::zeros(r, self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let f = self.get(i, j);
                if b.is_zero(f) {
                    continue;
                }
                for k in 0..d {
                    let prod = b.mul(&b.basis(k), f);
                    for (l, v) in prod.into_iter().enumerate() {
                        out.set(i * d + k, j * d + l, v);
                    }
                }
            }
        }
        out
    }

    /// Reads a `B`-linear map back from its `R`-level matrix by evaluating on
    /// the unit of each summand.
    pub fn from_hat(algebra: &Arc<BAlgebra>, rows: usize, cols: usize, m: &Matrix) -> Self {
        let d = algebra.rank();
        let r = algebra.ring();
        let mut out = BMatrix::zeros(algebra, rows, cols);
        for i in 0..rows {
            let mut image = vec![r.zero(); cols * d];
            for (l, u) in algebra.unit().iter().enumerate() {
                vec_ops::axpy(r, &mut image, u, m.row(i * d + l));
            }
            for j in 0..cols {
                out.set(i, j, image[j * d..(j + 1) * d].to_vec());
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<BMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let inv = linalg::inverse(&self.hat())?;
        Some(BMatrix::from_hat(&self.algebra, self.rows, self.cols, &inv))
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }
}

/// `R`-level coordinates of a vector of `B`-elements (a row of `B^n`).
pub fn hat_vector(v: &[BElem]) -> Vec<Scalar> {
    v.iter().flat_map(|e| e.iter().cloned()).collect()
}

/// Multiplies a `B`-vector entrywise by `b`.
pub fn scale_vector(algebra: &BAlgebra, b: &[Scalar], v: &[BElem]) -> Vec<BElem> {
    v.iter().map(|e| algebra.mul(b, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_noncommutative_constants() {
        let r = Ring::integers();
        let mut c = vec![vec![vec![r.zero(); 2]; 2]; 2];
        c[0][0][0] = r.one();
        c[0][1][1] = r.one();
        c[1][0][1] = r.one();
        c[1][1][0] = r.one();
        // group algebra of C2: commutative, fine
        assert!(BAlgebra::new(&r, c.clone(), vec![r.one(), r.zero()]).is_ok());
        c[0][1][1] = r.zero();
        assert!(BAlgebra::new(&r, c, vec![r.one(), r.zero()]).is_err());
    }

    #[test]
    fn hat_round_trip() {
        let r = Ring::integers_mod(6).unwrap();
        let b = Arc::new(BAlgebra::split(&r, 2));
        let m = BMatrix::new(&b, 1, 2, vec![vec![r.from_i64(1), r.from_i64(2)], vec![r.from_i64(3), r.from_i64(0)]]).unwrap();
        let h = m.hat();
        assert_eq!(BMatrix::from_hat(&b, 1, 2, &h), m);
    }

    #[test]
    fn hat_is_multiplicative() {
        let r = Ring::integers();
        let b = Arc::new(BAlgebra::split(&r, 2));
        let e = |x: i64, y: i64| vec![r.from_i64(x), r.from_i64(y)];
        let m = BMatrix::new(&b, 2, 2, vec![e(1, 2), e(0, 1), e(3, 0), e(1, 1)]).unwrap();
        let n = BMatrix::new(&b, 2, 1, vec![e(2, 2), e(-1, 5)]).unwrap();
        assert_eq!(m.mul(&n).hat(), m.hat().mul(&n.hat()));
    }

    #[test]
    fn enumeration_counts() {
        let r = Ring::integers_mod(3).unwrap();
        assert_eq!(enumerate_vectors(&r, 2, 100).unwrap().len(), 9);
        assert!(enumerate_vectors(&r, 5, 100).is_none());
        assert!(enumerate_vectors(&Ring::integers(), 1, 100).is_none());
    }
}
