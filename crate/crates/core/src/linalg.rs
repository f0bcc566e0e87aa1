//! Canonical forms, kernels and linear solving over the supported base rings.
//!
//! Everything follows the row-vector convention of [`Matrix`]: the row span of
//! `M` is `{x M}`, the kernel is `{x : x M = 0}` and solving means finding `x`
//! with `x M = b`.
//!
//! Over `Z/N` a matrix `M` is lifted to the integer lattice spanned by the rows
//! of `M` together with `N Z^c`. Submodules of `(Z/N)^c` correspond exactly to
//! lattices between `N Z^c` and `Z^c`, so the Hermite form of the lifted
//! lattice, read modulo `N`, is the Howell form: a canonical generating set for
//! the row span. Kernels and solutions over `Z/N` are computed the same way,
//! with the extra `N I` rows absorbing the modular reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Ring, RingKind, Scalar};

type IntRows = Vec<Vec<BigInt>>;

fn int_identity(n: usize) -> IntRows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Integers the Hermite reduction runs over. Machine integers report
/// overflow through the checked operations and `in_range`, and the caller
/// then retries with [`BigInt`].
trait HermiteInt: Integer + Signed + Clone + CheckedMul + CheckedSub {
    fn in_range(&self) -> bool {
        true
    }
}

impl HermiteInt for BigInt {}

impl HermiteInt for i128 {
    fn in_range(&self) -> bool {
        // keeps abs, negation and floor division total
        *self != i128::MIN
    }
}

fn row_axpy<T: HermiteInt>(rows: &mut [Vec<T>], target: usize, source: usize, q: &T) -> Option<()> {
    // rows[target] -= q * rows[source]
    if q.is_zero() {
        return Some(());
    }
    let (t_row, s_row) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (t, s) in t_row.iter_mut().zip(s_row.iter()) {
        if !s.is_zero() {
            *t = t.checked_sub(&q.checked_mul(s)?)?;
            if !t.in_range() {
                return None;
            }
        }
    }
    Some(())
}

fn int_row_axpy(rows: &mut IntRows, target: usize, source: usize, q: &BigInt) {
    row_axpy(rows, target, source, q).expect("big integers do not overflow");
}

/// Row-style Hermite normal form: returns `(H, U, pivots)` with `U A = H`,
/// `U` unimodular (only when `track`), positive pivots in strictly increasing
/// columns, entries above each pivot reduced into `[0, pivot)` and zero rows
/// at the bottom.
fn int_hnf(a: IntRows, ncols: usize, track: bool) -> (IntRows, IntRows, Vec<usize>) {
    let u = if track { Some(int_identity(a.len())) } else { None };
    int_hnf_with(a, ncols, u)
}

/// [`int_hnf`] applying the row operations to a caller-supplied `u`.
fn int_hnf_with(a: IntRows, ncols: usize, u: Option<IntRows>) -> (IntRows, IntRows, Vec<usize>) {
    let small = |rows: &IntRows| -> Option<Vec<Vec<i128>>> {
        rows.iter().map(|r| r.iter().map(|v| v.to_i128().filter(|x| x.in_range())).collect()).collect()
    };
    let big = |rows: Vec<Vec<i128>>| -> IntRows { rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect() };
    let small_u = match &u {
        Some(u) => small(u).map(Some),
        None => Some(None),
    };
    if let (Some(mut sa), Some(mut su)) = (small(&a), small_u) {
        if let Some(pivots) = hermite(&mut sa, ncols, su.as_mut()) {
            return (big(sa), su.map(big).unwrap_or_default(), pivots);
        }
    }
    let (mut a, mut u) = (a, u);
    let pivots = hermite(&mut a, ncols, u.as_mut()).expect("big integers do not overflow");
    (a, u.unwrap_or_default(), pivots)
}

fn hermite<T: HermiteInt>(a: &mut [Vec<T>], ncols: usize, mut u: Option<&mut Vec<Vec<T>>>) -> Option<Vec<usize>> {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m {
            break;
        }
        let mut found = false;
        loop {
            let mut best: Option<usize> = None;
            for i in row..m {
                if !a[i][col].is_zero() && best.is_none_or(|b| a[i][col].abs() < a[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            found = true;
            a.swap(row, p);
            if let Some(u) = u.as_mut() {
                u.swap(row, p);
            }
            let mut done = true;
            for i in row + 1..m {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[row][col]);
                row_axpy(a, i, row, &q)?;
                if let Some(u) = u.as_mut() {
                    row_axpy(u, i, row, &q)?;
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[row][col].is_negative() {
            for v in a[row].iter_mut() {
                *v = -v.clone();
            }
            if let Some(u) = u.as_mut() {
                for v in u[row].iter_mut() {
                    *v = -v.clone();
                }
            }
        }
        for i in 0..row {
            let q = a[i][col].div_floor(&a[row][col]);
            row_axpy(a, i, row, &q)?;
            if let Some(u) = u.as_mut() {
                row_axpy(u, i, row, &q)?;
            }
        }
        pivots.push(col);
        row += 1;
    }
    Some(pivots)
}

/// Reduced row echelon form over a field with transform `U A = E`.
fn field_rref(ring: &Ring, mut a: Vec<Vec<Scalar>>, ncols: usize, track: bool) -> (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>, Vec<usize>) {
    let m = a.len();
    let mut u: Vec<Vec<Scalar>> = if track {
        (0..m).map(|i| Matrix::unit_vector(ring, m, i)).collect()
    } else {
        Vec::new()
    };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !ring.is_zero(&a[i][col])) else { continue };
        a.swap(row, p);
        if track {
            u.swap(row, p);
        }
        let inv = ring.inv(&a[row][col]).expect("nonzero element of a field");
        a[row] = a[row].iter().map(|x| ring.mul(&inv, x)).collect();
        if track {
            u[row] = u[row].iter().map(|x| ring.mul(&inv, x)).collect();
        }
        for i in 0..m {
            if i == row || ring.is_zero(&a[i][col]) {
                continue;
            }
            let f = a[i][col].clone();
            let src = a[row].clone();
            for (t, s) in a[i].iter_mut().zip(&src) {
                *t = ring.sub(t, &ring.mul(&f, s));
            }
            if track {
                let src = u[row].clone();
                for (t, s) in u[i].iter_mut().zip(&src) {
                    *t = ring.sub(t, &ring.mul(&f, s));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, u, pivots)
}

/// Lifts `M` over `Z/N` to the integer matrix `[M; N I]`.
fn lift_with_modulus(m: &Matrix, n: &BigInt) -> IntRows {
    let mut rows = m.to_int_rows();
    for i in 0..m.cols() {
        let mut r = vec![BigInt::zero(); m.cols()];
        r[i] = n.clone();
        rows.push(r);
    }
    rows
}

/// [`lift_with_modulus`] in machine integers, when every entry fits.
fn small_lift(m: &Matrix, n: &BigInt) -> Option<(Vec<Vec<i128>>, i128)> {
    let n = n.to_i128()?;
    let mut rows: Vec<Vec<i128>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|s| s.as_int().to_i128()).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    for i in 0..m.cols() {
        let mut r = vec![0; m.cols()];
        r[i] = n;
        rows.push(r);
    }
    Some((rows, n))
}

/// Rows reduced modulo `n`, zero rows dropped.
fn small_rows_to_matrix(ring: &Ring, rows: &[Vec<i128>], cols: usize, n: i128) -> Matrix {
    let data: Vec<Scalar> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(n)).collect::<Vec<_>>())
        .filter(|r| r.iter().any(|x| *x != 0))
        .flatten()
        .map(|x| Scalar::Int(BigInt::from(x)))
        .collect();
    Matrix::from_raw(ring, data.len() / cols.max(1), cols, data)
}

fn uses_field_route(ring: &Ring) -> bool {
    matches!(ring.kind(), RingKind::Rationals | RingKind::PrimeField { .. })
}

fn int_rows_to_matrix(ring: &Ring, rows: &[Vec<BigInt>], cols: usize) -> Matrix {
    let data = rows.iter().flat_map(|r| r.iter().map(|v| ring.from_bigint(v.clone()))).collect();
    Matrix::from_raw(ring, rows.len(), cols, data)
}

/// Canonical generators of the row span: reduced row echelon form over
/// fields, Hermite form over the integers and Howell form over `Z/N`. Zero
/// rows are dropped, so equal row spans give identical matrices.
pub fn normal_form(m: &Matrix) -> Matrix {
    let ring = m.ring();
    let cols = m.cols();
    if uses_field_route(ring) {
        let (e, _, pivots) = field_rref(ring, m.to_rows(), cols, false);
        let rows: Vec<Vec<Scalar>> = e.into_iter().take(pivots.len()).collect();
        return Matrix::from_raw(ring, rows.len(), cols, rows.into_iter().flatten().collect());
    }
    match ring.modulus() {
        None => {
            let (h, _, pivots) = int_hnf(m.to_int_rows(), cols, false);
            int_rows_to_matrix(ring, &h[..pivots.len()], cols)
        }
        Some(n) => {
            if let Some((mut a, small_n)) = small_lift(m, n) {
                if let Some(pivots) = hermite(&mut a, cols, None) {
                    return small_rows_to_matrix(ring, &a[..pivots.len()], cols, small_n);
                }
            }
            let (h, _, pivots) = int_hnf(lift_with_modulus(m, n), cols, false);
            int_rows_to_matrix(ring, &h[..pivots.len()], cols).without_zero_rows()
        }
    }
}

/// Generators of the left kernel `{x : x M = 0}`, in normal form.
pub fn kernel(m: &Matrix) -> Matrix {
    let ring = m.ring();
    let (rows, cols) = m.shape();
    if uses_field_route(ring) {
        let (_, u, pivots) = field_rref(ring, m.to_rows(), cols, true);
        let basis: Vec<Vec<Scalar>> = u.into_iter().skip(pivots.len()).collect();
        let k = Matrix::from_raw(ring, basis.len(), rows, basis.into_iter().flatten().collect());
        return normal_form(&k);
    }
    match ring.modulus() {
        None => {
            let (_, u, pivots) = int_hnf(m.to_int_rows(), cols, true);
            let k = int_rows_to_matrix(ring, &u[pivots.len()..], rows);
            normal_form(&k)
        }
        Some(n) => {
            // only the coefficients of the rows of M matter
            if let Some((mut a, small_n)) = small_lift(m, n) {
                let mut u: Vec<Vec<i128>> = (0..rows + cols).map(|i| (0..rows).map(|j| (i == j) as i128).collect()).collect();
                if let Some(pivots) = hermite(&mut a, cols, Some(&mut u)) {
                    return normal_form(&small_rows_to_matrix(ring, &u[pivots.len()..], rows, small_n));
                }
            }
            let lifted = lift_with_modulus(m, n);
            let mut u = int_identity(rows);
            u.extend((0..cols).map(|_| vec![BigInt::zero(); rows]));
            let (_, u, pivots) = int_hnf_with(lifted, cols, Some(u));
            let k = int_rows_to_matrix(ring, &u[pivots.len()..], rows);
            normal_form(&k)
        }
    }
}

/// A precomputed echelon form of `M` that answers repeated `x M = b`
/// queries.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: Ring,
    rows: usize,
    cols: usize,
    inner: EchelonInner,
}

#[derive(Clone, Debug)]
enum EchelonInner {
    Field { e: Vec<Vec<Scalar>>, u: Vec<Vec<Scalar>>, pivots: Vec<usize> },
    Int { h: IntRows, u: IntRows, pivots: Vec<usize> },
}

impl Echelon {
    pub fn new(m: &Matrix) -> Self {
        let ring = m.ring().clone();
        let (rows, cols) = m.shape();
        let inner = if uses_field_route(&ring) {
            let (e, u, pivots) = field_rref(&ring, m.to_rows(), cols, true);
            let k = pivots.len();
            EchelonInner::Field { e: e.into_iter().take(k).collect(), u: u.into_iter().take(k).collect(), pivots }
        } else {
            let lifted = match ring.modulus() {
                Some(n) => lift_with_modulus(m, n),
                None => m.to_int_rows(),
            };
            let (h, u, pivots) = int_hnf(lifted, cols, true);
            let k = pivots.len();
            EchelonInner::Int { h: h.into_iter().take(k).collect(), u: u.into_iter().take(k).collect(), pivots }
        };
        Echelon { ring, rows, cols, inner }
    }

    /// Some `x` with `x M = b`, or `None` when `b` is outside the row span.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.cols, "right-hand side has wrong length");
        let ring = &self.ring;
        match &self.inner {
            EchelonInner::Field { e, u, pivots } => {
                let mut residual = b.to_vec();
                let mut x = vec![ring.zero(); self.rows];
                for (i, &p) in pivots.iter().enumerate() {
                    let c = residual[p].clone();
                    if ring.is_zero(&c) {
                        continue;
                    }
                    for (r, v) in residual.iter_mut().zip(&e[i]) {
                        *r = ring.sub(r, &ring.mul(&c, v));
                    }
                    for (xv, uv) in x.iter_mut().zip(&u[i]) {
                        *xv = ring.add(xv, &ring.mul(&c, uv));
                    }
                }
                if residual.iter().all(|r| ring.is_zero(r)) {
                    Some(x)
                } else {
                    None
                }
            }
            EchelonInner::Int { h, u, pivots, .. } => {
                let mut residual: Vec<BigInt> = b.iter().map(|s| s.as_int().clone()).collect();
                let width = u.first().map_or(self.rows, |r| r.len());
                let mut y = vec![BigInt::zero(); width];
                for (i, &p) in pivots.iter().enumerate() {
                    if residual[p].is_zero() {
                        continue;
                    }
                    let (q, rem) = residual[p].div_rem(&h[i][p]);
                    if !rem.is_zero() {
                        return None;
                    }
                    for (r, v) in residual.iter_mut().zip(&h[i]) {
                        if !v.is_zero() {
                            *r -= &q * v;
                        }
                    }
                    for (yv, uv) in y.iter_mut().zip(&u[i]) {
                        if !uv.is_zero() {
                            *yv += &q * uv;
                        }
                    }
                }
                if residual.iter().any(|r| !r.is_zero()) {
                    return None;
                }
                Some(y.into_iter().take(self.rows).map(|v| ring.from_bigint(v)).collect())
            }
        }
    }

    pub fn contains(&self, b: &[Scalar]) -> bool {
        self.solve(b).is_some()
    }
}

/// Some `x` with `x M = b`, if one exists.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    Echelon::new(m).solve(b)
}

pub fn row_span_contains(m: &Matrix, v: &[Scalar]) -> bool {
    solve(m, v).is_some()
}

pub fn same_row_span(a: &Matrix, b: &Matrix) -> bool {
    a.cols() == b.cols() && normal_form(a) == normal_form(b)
}

/// Two-sided inverse of a square matrix, if it exists.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let ring = m.ring();
    let n = m.rows();
    let ech = Echelon::new(m);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        rows.push(ech.solve(&Matrix::unit_vector(ring, n, i))?);
    }
    let inv = Matrix::from_raw(ring, n, n, rows.into_iter().flatten().collect());
    if m.mul(&inv) == Matrix::identity(ring, n) {
        Some(inv)
    } else {
        None
    }
}

/// Rank over a field (number of pivots of the reduced echelon form).
pub fn field_rank(m: &Matrix) -> Result<usize> {
    if !m.ring().is_field() {
        return Err(Error::Unsupported(format!("rank over the non-field {}", m.ring())));
    }
    Ok(normal_form(m).rows())
}

/// Smith decomposition `U M V = D` over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl Smith {
    /// The diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).as_int().clone()).collect()
    }
}

pub(crate) struct IntSmith {
    pub u: IntRows,
    pub d: IntRows,
    pub v: IntRows,
    pub v_inv: IntRows,
}

pub(crate) fn int_smith(mut a: IntRows, ncols: usize) -> IntSmith {
    let m = a.len();
    let n = ncols;
    let mut u = int_identity(m);
    let mut v = int_identity(n);
    let mut v_inv = int_identity(n);

    fn col_axpy(a: &mut IntRows, target: usize, source: usize, q: &BigInt) {
        // col target -= q * col source
        if q.is_zero() {
            return;
        }
        for row in a.iter_mut() {
            if !row[source].is_zero() {
                let s = row[source].clone();
                row[target] -= q * s;
            }
        }
    }
    fn col_swap(a: &mut IntRows, i: usize, j: usize) {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }

    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        col_swap(&mut a, t, pj);
        col_swap(&mut v, t, pj);
        v_inv.swap(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                int_row_axpy(&mut a, i, t, &q);
                int_row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                // V^{-1} <- E^{-1} V^{-1}: row t += q * row j
                let neg = -q;
                int_row_axpy(&mut v_inv, t, j, &neg);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                let mut bad = None;
                'scan: for i in t + 1..m {
                    for j in t + 1..n {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        int_row_axpy(&mut a, t, i, &minus_one);
                        int_row_axpy(&mut u, t, i, &minus_one);
                        continue;
                    }
                }
            }
            // bring the smallest entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t + 1..m {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
                u.swap(t, best.0);
            } else if best.1 != t {
                col_swap(&mut a, t, best.1);
                col_swap(&mut v, t, best.1);
                v_inv.swap(t, best.1);
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    IntSmith { u, d: a, v, v_inv }
}

/// Smith normal form over the integers.
pub fn smith(m: &Matrix) -> Result<Smith> {
    let ring = m.ring();
    if !matches!(ring.kind(), RingKind::Integers) {
        return Err(Error::Unsupported(format!("Smith form over {ring}")));
    }
    let (rows, cols) = m.shape();
    let s = int_smith(m.to_int_rows(), cols);
    Ok(Smith {
        u: int_rows_to_matrix(ring, &s.u, rows),
        d: int_rows_to_matrix(ring, &s.d, cols),
        v: int_rows_to_matrix(ring, &s.v, cols),
    })
}

/// Structure of a finitely presented module `R^m / rowspan(rel)`:
/// `free_rank` copies of `R` and cyclic torsion summands `R / (t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleStructure {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl ModuleStructure {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Result of simplifying a presentation: the new relations, a projection from
/// the old ambient coordinates to the new ones and a section back.
pub(crate) struct Simplified {
    pub relations: Matrix,
    pub proj: Matrix,
    pub sect: Matrix,
    pub structure: ModuleStructure,
}

/// Minimizes the presentation `R^m / rowspan(rel)`. Over fields this keeps
/// the non-pivot coordinates; over `Z` and `Z/N` it diagonalizes with the
/// Smith form and drops coordinates killed by a unit.
pub(crate) fn simplify_presentation(rel: &Matrix, ambient: usize) -> Simplified {
    let ring = rel.ring();
    if uses_field_route(ring) || (ring.modulus().is_some() && ring.is_field()) {
        let nf = normal_form(rel);
        let pivots: Vec<usize> = (0..nf.rows())
            .map(|i| (0..ambient).find(|&j| !ring.is_zero(nf.get(i, j))).expect("nonzero row"))
            .collect();
        let keep: Vec<usize> = (0..ambient).filter(|j| !pivots.contains(j)).collect();
        let mut proj = Matrix::zeros(ring, ambient, keep.len());
        for (new, &old) in keep.iter().enumerate() {
            proj.set(old, new, ring.one());
        }
        for (i, &p) in pivots.iter().enumerate() {
            for (new, &old) in keep.iter().enumerate() {
                proj.set(p, new, ring.neg(nf.get(i, old)));
            }
        }
        let mut sect = Matrix::zeros(ring, keep.len(), ambient);
        for (new, &old) in keep.iter().enumerate() {
            sect.set(new, old, ring.one());
        }
        return Simplified {
            relations: Matrix::zeros(ring, 0, keep.len()),
            proj,
            sect,
            structure: ModuleStructure { free_rank: keep.len(), torsion: Vec::new() },
        };
    }
    let modulus = ring.modulus().cloned();
    let lifted = match &modulus {
        Some(n) => lift_with_modulus(rel, n),
        None => rel.to_int_rows(),
    };
    let s = int_smith(lifted, ambient);
    let diag = |j: usize| -> BigInt {
        if j < s.d.len() {
            s.d[j][j].clone()
        } else {
            BigInt::zero()
        }
    };
    let keep: Vec<usize> = (0..ambient).filter(|&j| !diag(j).is_one()).collect();
    let mut relations = Vec::new();
    let mut free_rank = 0;
    let mut torsion = Vec::new();
    for (new, &j) in keep.iter().enumerate() {
        let d = diag(j);
        let is_free = d.is_zero() || modulus.as_ref() == Some(&d);
        if is_free {
            free_rank += 1;
        } else {
            let mut row = vec![ring.zero(); keep.len()];
            row[new] = ring.from_bigint(d.clone());
            relations.push(row);
            torsion.push(d);
        }
    }
    let v = int_rows_to_matrix(ring, &s.v, ambient);
    let v_inv = int_rows_to_matrix(ring, &s.v_inv, ambient);
    Simplified {
        relations: Matrix::from_raw(ring, relations.len(), keep.len(), relations.into_iter().flatten().collect()),
        proj: v.select_cols(&keep),
        sect: v_inv.select_rows(&keep),
        structure: ModuleStructure { free_rank, torsion },
    }
}

/// Decomposes `R^m / rowspan(rel)` into free and cyclic torsion parts.
pub fn module_structure(rel: &Matrix, ambient: usize) -> ModuleStructure {
    simplify_presentation(rel, ambient).structure
}
