//! Linear systems with congruence constraints.
//!
//! An unknown vector `u ∈ R^n` is subject to blocks of constraints
//! `u C ≡ rhs (mod rowspan(Rel))`. Homogeneous solutions and particular
//! solutions are read off one stacked matrix
//!
//! ```text
//! [ C_1    C_2   ... ]
//! [ Rel_1  0     ... ]
//! [ 0      Rel_2 ... ]
//! ```
//!
//! by projecting its kernel (or a solution of the stacked system) onto the
//! first `n` coordinates.

use crate::linalg;
use crate::matrix::Matrix;
use crate::ring::{Ring, Scalar};

#[derive(Clone, Debug)]
struct Block {
    coeffs: Matrix,
    rhs: Vec<Scalar>,
    modulo: Matrix,
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    ring: Ring,
    unknowns: usize,
    blocks: Vec<Block>,
}

impl LinearSystem {
    pub fn new(ring: &Ring, unknowns: usize) -> Self {
        LinearSystem { ring: ring.clone(), unknowns, blocks: Vec::new() }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Adds `u coeffs ≡ rhs (mod rowspan(modulo))`. A missing `rhs` means zero
    /// and a missing `modulo` means exact equality.
    pub fn constrain(&mut self, coeffs: Matrix, rhs: Option<Vec<Scalar>>, modulo: Option<Matrix>) {
        assert_eq!(coeffs.rows(), self.unknowns, "constraint has wrong number of unknowns");
        let w = coeffs.cols();
        let rhs = rhs.unwrap_or_else(|| vec![self.ring.zero(); w]);
        assert_eq!(rhs.len(), w);
        let modulo = modulo.map(|m| m.without_zero_rows()).unwrap_or_else(|| Matrix::zeros(&self.ring, 0, w));
        assert_eq!(modulo.cols(), w);
        self.blocks.push(Block { coeffs, rhs, modulo });
    }

    fn stacked(&self) -> (Matrix, Vec<Scalar>) {
        let width: usize = self.blocks.iter().map(|b| b.coeffs.cols()).sum();
        let extra: usize = self.blocks.iter().map(|b| b.modulo.rows()).sum();
        let mut m = Matrix::zeros(&self.ring, self.unknowns + extra, width);
        let mut rhs = Vec::with_capacity(width);
        let mut col = 0;
        let mut row = self.unknowns;
        for b in &self.blocks {
            m.set_block(0, col, &b.coeffs);
            m.set_block(row, col, &b.modulo);
            rhs.extend(b.rhs.iter().cloned());
            col += b.coeffs.cols();
            row += b.modulo.rows();
        }
        (m, rhs)
    }

    /// Generators of the solution module of the homogeneous system, in normal
    /// form.
    pub fn homogeneous_solutions(&self) -> Matrix {
        if self.blocks.is_empty() {
            return Matrix::identity(&self.ring, self.unknowns);
        }
        let (m, _) = self.stacked();
        let k = linalg::kernel(&m);
        linalg::normal_form(&k.col_range(0, self.unknowns))
    }

    pub fn particular_solution(&self) -> Option<Vec<Scalar>> {
        if self.blocks.is_empty() {
            return Some(vec![self.ring.zero(); self.unknowns]);
        }
        let (m, rhs) = self.stacked();
        let x = linalg::solve(&m, &rhs)?;
        Some(x[..self.unknowns].to_vec())
    }
}

/// Coefficients of `X ↦ L X R` for an unknown `p x q` matrix `X`, whose entry
/// `(a, b)` is unknown number `a q + b`. The result row-indexes unknowns and
/// column-indexes the entries of `L X R` in row-major order.
pub fn coeffs_left_right(l: &Matrix, r: &Matrix) -> Matrix {
    l.transpose().kron(r)
}

/// Coefficients of `X ↦ P (I_c ⊗ X)` for an unknown `p x q` matrix `X` and a
/// fixed `P` with `c p` columns.
pub fn coeffs_kron_right(p_mat: &Matrix, c: usize, p: usize, q: usize) -> Matrix {
    let ring = p_mat.ring();
    let rows = p_mat.rows();
    assert_eq!(p_mat.cols(), c * p);
    let mut out = Matrix::zeros(ring, p * q, rows * c * q);
    for i in 0..rows {
        for cc in 0..c {
            for a in 0..p {
                let v = p_mat.get(i, cc * p + a);
                if ring.is_zero(v) {
                    continue;
                }
                for b in 0..q {
                    out.set(a * q + b, i * c * q + cc * q + b, v.clone());
                }
            }
        }
    }
    out
}

/// Relations expressing "every row of an `n`-row matrix lies in
/// `rowspan(rel)`" on its row-major flattening.
pub fn rowwise_modulo(rel: &Matrix, n: usize) -> Matrix {
    Matrix::identity(rel.ring(), n).kron(rel)
}

/// Reassembles a row-major flattened vector into a `p x q` matrix.
pub fn unflatten(ring: &Ring, v: &[Scalar], p: usize, q: usize) -> Matrix {
    Matrix::from_raw(ring, p, q, v.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_right_coefficients_match_direct_product() {
        let r = Ring::integers();
        let l = Matrix::from_i64(&r, &[&[1, 2], &[0, 1], &[3, -1]]);
        let rr = Matrix::from_i64(&r, &[&[2, 0, 1]]);
        let x = Matrix::from_i64(&r, &[&[5], &[-2]]);
        let direct = l.mul(&x).mul(&rr);
        let coeffs = coeffs_left_right(&l, &rr);
        assert_eq!(coeffs.apply(x.data()), direct.data().to_vec());
    }

    #[test]
    fn kron_right_coefficients_match_direct_product() {
        let r = Ring::integers();
        let p = Matrix::from_i64(&r, &[&[1, 2, 0, 3], &[0, 1, 1, 1]]);
        let x = Matrix::from_i64(&r, &[&[2, 1, 0], &[1, -1, 4]]);
        let direct = p.mul(&Matrix::identity(&r, 2).kron(&x));
        let coeffs = coeffs_kron_right(&p, 2, 2, 3);
        assert_eq!(coeffs.apply(x.data()), direct.data().to_vec());
    }

    #[test]
    fn congruence_constraints() {
        // 2u ≡ 0 mod 4 over Z: solutions u ∈ 2Z
        let r = Ring::integers();
        let mut s = LinearSystem::new(&r, 1);
        s.constrain(Matrix::from_i64(&r, &[&[2]]), None, Some(Matrix::from_i64(&r, &[&[4]])));
        assert_eq!(s.homogeneous_solutions(), Matrix::from_i64(&r, &[&[2]]));
        let mut s = LinearSystem::new(&r, 1);
        s.constrain(Matrix::from_i64(&r, &[&[2]]), Some(vec![r.from_i64(1)]), Some(Matrix::from_i64(&r, &[&[4]])));
        assert!(s.particular_solution().is_none());
    }
}
