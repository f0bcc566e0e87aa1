//! Filtered `F`-modules over `W_n = Z/p^n` with the Frobenius taken to be the
//! identity: a free module `M`, a finite decreasing filtration by direct
//! summands and maps `φ^i : Fil^i M → M` with `φ^i|Fil^{i+1} = p φ^{i+1}`
//! whose images span `M`.
//!
//! `Fil^i` is stored for `i` in the window `[low, high]` by generator rows and
//! a retraction; below the window it is `M`, above it `0`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::algebra::{BAlgebra, BMatrix};
use crate::category::{concrete_category, ConcreteHom, LinearCategory, LinearFunctor};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::matrix::Matrix;
use crate::modules::Presentation;
use crate::report::CheckReport;
use crate::ring::Ring;
use crate::system::{coeffs_left_right, LinearSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FLObject {
    pub name: String,
    pub p: u64,
    pub n: u32,
    pub rank: usize,
    pub low: i64,
    pub high: i64,
    /// Generators of `Fil^i`, one `k_i × rank` matrix per level.
    pub fil: Vec<Matrix>,
    /// `rank × k_i` with `fil[i] · retraction[i] = I`.
    pub retraction: Vec<Matrix>,
    /// `k_i × rank`: `φ^i` on the generators of `Fil^i`.
    pub phi: Vec<Matrix>,
}

/// `W_n` as a supported ring.
pub fn witt_ring(p: u64, n: u32) -> Result<Ring> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let prime = Ring::prime_field(p)?;
    if n == 1 {
        Ok(prime)
    } else {
        Ring::integers_mod(BigInt::from(p).pow(n))
    }
}

impl FLObject {
    /// Validates shapes and the ring; the axioms are left to
    /// [`check_fl_object`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(name: &str, p: u64, n: u32, rank: usize, low: i64, high: i64, fil: Vec<Matrix>, retraction: Vec<Matrix>, phi: Vec<Matrix>) -> Result<Self> {
        let ring = witt_ring(p, n)?;
        if high < low {
            return Err(Error::InvalidInput("empty filtration window".into()));
        }
        let levels = (high - low + 1) as usize;
        if fil.len() != levels || retraction.len() != levels || phi.len() != levels {
            return Err(Error::DimensionMismatch("one generator matrix, retraction and φ per level required".into()));
        }
        for i in 0..levels {
            let k = fil[i].rows();
            if fil[i].cols() != rank || retraction[i].shape() != (rank, k) || phi[i].shape() != (k, rank) {
                return Err(Error::DimensionMismatch(format!("level {} has inconsistent shapes", low + i as i64)));
            }
            for m in [&fil[i], &retraction[i], &phi[i]] {
                if m.ring() != &ring {
                    return Err(Error::RingMismatch(m.ring().to_string(), ring.to_string()));
                }
            }
        }
        Ok(FLObject { name: name.into(), p, n, rank, low, high, fil, retraction, phi })
    }

    /// The Tate twist `M(k)`: rank one, `Fil^k = M`, `Fil^{k+1} = 0`, `φ^k = 1`.
    pub fn twist(p: u64, n: u32, k: i64) -> Result<Self> {
        let ring = witt_ring(p, n)?;
        let one = Matrix::identity(&ring, 1);
        FLObject::new(&format!("M({k})"), p, n, 1, k, k, vec![one.clone()], vec![one.clone()], vec![one])
    }

    pub fn ring(&self) -> Ring {
        witt_ring(self.p, self.n).expect("validated on construction")
    }

    fn level(&self, i: i64) -> (Matrix, Matrix, Matrix) {
        let ring = self.ring();
        if i > self.high {
            return (Matrix::zeros(&ring, 0, self.rank), Matrix::zeros(&ring, self.rank, 0), Matrix::zeros(&ring, 0, self.rank));
        }
        let j = i.max(self.low);
        let k = (j - self.low) as usize;
        let mut phi = self.phi[k].clone();
        for _ in i..self.low {
            phi = phi.scale(&ring.from_bigint(BigInt::from(self.p)));
        }
        (self.fil[k].clone(), self.retraction[k].clone(), phi)
    }

    /// Generators of `Fil^i` for any `i`.
    pub fn fil_at(&self, i: i64) -> Matrix {
        self.level(i).0
    }

    pub fn retraction_at(&self, i: i64) -> Matrix {
        self.level(i).1
    }

    /// `φ^i` on the generators of `Fil^i`, extended below the window by
    /// `φ^{i} = p φ^{i+1}`.
    pub fn phi_at(&self, i: i64) -> Matrix {
        self.level(i).2
    }
}

pub fn check_fl_object(x: &FLObject) -> CheckReport {
    let mut report = CheckReport::new();
    let ring = x.ring();
    let r = x.rank;
    let full = Presentation::free(&ring, r);
    if !full.quotient(&x.fil[0]).is_zero_module() {
        report.fail("fl-exhaustive", format!("{} at level {}", x.name, x.low), "the lowest filtration step is not all of M");
    }
    for (k, (fil, ret)) in x.fil.iter().zip(&x.retraction).enumerate() {
        let i = x.low + k as i64;
        if fil.mul(ret) != Matrix::identity(&ring, fil.rows()) {
            report.fail("fl-summand", format!("{} at level {i}", x.name), "the retraction does not split the inclusion");
        }
        if k + 1 < x.fil.len() {
            let next = &x.fil[k + 1];
            let span = Echelon::new(fil);
            if let Some(row) = (0..next.rows()).find(|&s| !span.contains(next.row(s))) {
                report.fail("fl-decreasing", format!("{} at level {}", x.name, i + 1), format!("generator {row} is not in the previous step"));
                continue;
            }
            // inclusion of Fil^{i+1} in the generators of Fil^i
            let inclusion = next.mul(ret);
            let lhs = inclusion.mul(&x.phi[k]);
            let rhs = x.phi[k + 1].scale(&ring.from_bigint(BigInt::from(x.p)));
            if lhs != rhs {
                report.fail("fl-compatibility", format!("{} at level {i}", x.name), "φ^i on Fil^{i+1} is not p φ^{i+1}");
            }
        }
    }
    let parts: Vec<&Matrix> = x.phi.iter().collect();
    let images = Matrix::vstack_all(&ring, r, &parts);
    if !full.quotient(&images).is_zero_module() {
        report.fail("fl-span", x.name.clone(), "the images of the φ^i do not span M");
    }
    report
}

fn same_base(x: &FLObject, y: &FLObject) -> Result<()> {
    if (x.p, x.n) != (y.p, y.n) {
        return Err(Error::RingMismatch(x.ring().to_string(), y.ring().to_string()));
    }
    Ok(())
}

fn levels(x: &FLObject, y: &FLObject) -> std::ops::RangeInclusive<i64> {
    x.low.min(y.low)..=x.high.max(y.high) + 1
}

/// The linear conditions on an unknown `rank_x × rank_y` matrix `g` for
/// being a morphism.
fn morphism_system(x: &FLObject, y: &FLObject) -> LinearSystem {
    let ring = x.ring();
    let mut system = LinearSystem::new(&ring, x.rank * y.rank);
    let id_y = Matrix::identity(&ring, y.rank);
    for i in levels(x, y) {
        let (fx, px) = (x.fil_at(i), x.phi_at(i));
        let (fy, ry, py) = (y.fil_at(i), y.retraction_at(i), y.phi_at(i));
        if fx.rows() == 0 {
            continue;
        }
        // g(Fil^i X) ⊆ Fil^i Y
        let outside = id_y.sub(&ry.mul(&fy));
        system.constrain(coeffs_left_right(&fx, &outside), None, None);
        // g φ^i_X = φ^i_Y g on Fil^i X
        let lhs = coeffs_left_right(&px, &id_y);
        let rhs = coeffs_left_right(&fx, &ry.mul(&py));
        system.constrain(lhs.sub(&rhs), None, None);
    }
    system
}

/// Morphisms `X → Y`: the generating matrices and the module they span.
#[derive(Clone, Debug)]
pub struct FLHomSpace {
    pub generators: Vec<Matrix>,
    pub module: Presentation,
}

pub fn fl_hom_space(x: &FLObject, y: &FLObject) -> Result<FLHomSpace> {
    same_base(x, y)?;
    let ring = x.ring();
    let sols = morphism_system(x, y).homogeneous_solutions();
    let generators: Vec<Matrix> = (0..sols.rows())
        .map(|k| crate::system::unflatten(&ring, sols.row(k), x.rank, y.rank))
        .filter(|g| !g.is_zero())
        .collect();
    let stacked = Matrix::from_rows(&ring, x.rank * y.rank, generators.iter().map(|g| g.data().to_vec()).collect())?;
    let module = Presentation::new(&ring, generators.len(), linalg::kernel(&stacked))?;
    Ok(FLHomSpace { generators, module })
}

pub fn is_fl_morphism(x: &FLObject, y: &FLObject, g: &Matrix) -> bool {
    if same_base(x, y).is_err() || g.shape() != (x.rank, y.rank) {
        return false;
    }
    let mut system = morphism_system(x, y);
    // g is a solution iff fixing it leaves the system consistent
    let ring = x.ring();
    let n = x.rank * y.rank;
    system.constrain(Matrix::identity(&ring, n), Some(g.data().to_vec()), None);
    system.particular_solution().is_some()
}

/// An isomorphism `X → Y` among the morphisms, found by enumerating the hom
/// module up to `bound` elements.
pub fn fl_isomorphism(x: &FLObject, y: &FLObject, bound: usize) -> Result<Option<Matrix>> {
    let hom = fl_hom_space(x, y)?;
    if x.rank != y.rank {
        return Ok(None);
    }
    let ring = x.ring();
    let combos = crate::algebra::enumerate_vectors(&ring, hom.generators.len(), bound)
        .ok_or_else(|| Error::Unsupported("hom module too large to search for an isomorphism".into()))?;
    for coeffs in combos {
        let mut g = Matrix::zeros(&ring, x.rank, y.rank);
        for (c, h) in coeffs.iter().zip(&hom.generators) {
            g = g.add(&h.scale(c));
        }
        if let Some(inv) = linalg::inverse(&g) {
            if is_fl_morphism(y, x, &inv) {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

/// Picks a basis of the span of `rows` with a retraction, requiring the span
/// to be a direct summand. Over the local ring `W_n` rows independent modulo
/// `p` extend to a basis.
fn split_span(rows: &Matrix, p: u64) -> Result<(Matrix, Matrix)> {
    let ring = rows.ring().clone();
    let residue = Ring::prime_field(p)?;
    let cols = rows.cols();
    let mut chosen: Vec<Vec<crate::ring::Scalar>> = Vec::new();
    let mut reduced: Vec<Vec<crate::ring::Scalar>> = Vec::new();
    for s in 0..rows.rows() {
        let r = rows.row_vec(s);
        let mut trial = reduced.clone();
        trial.push(r.iter().map(|v| residue.from_bigint(v.as_int().clone())).collect());
        if linalg::field_rank(&Matrix::from_rows(&residue, cols, trial.clone())?)? == trial.len() {
            reduced = trial;
            chosen.push(r);
        }
    }
    let basis = Matrix::from_rows(&ring, cols, chosen)?;
    let span = Echelon::new(&basis);
    if (0..rows.rows()).any(|s| !span.contains(rows.row(s))) {
        return Err(Error::NotWellDefined("filtration step of the tensor product is not a direct summand".into()));
    }
    let k = basis.rows();
    let bt = Echelon::new(&basis.transpose());
    let mut ret = Matrix::zeros(&ring, cols, k);
    for j in 0..k {
        let col = bt
            .solve(&Matrix::unit_vector(&ring, k, j))
            .ok_or_else(|| Error::NotWellDefined("no retraction onto a filtration step".into()))?;
        for (i, v) in col.into_iter().enumerate() {
            ret.set(i, j, v);
        }
    }
    Ok((basis, ret))
}

/// `X ⊗ Y` with `Fil^k = Σ_{i+j=k} Fil^i X ⊗ Fil^j Y` and
/// `φ^k(x ⊗ y) = φ^i(x) ⊗ φ^j(y)`, checked to be well defined.
pub fn fl_tensor(x: &FLObject, y: &FLObject) -> Result<FLObject> {
    same_base(x, y)?;
    let ring = x.ring();
    let rank = x.rank * y.rank;
    let (low, high) = (x.low + y.low, x.high + y.high);
    let (mut fil, mut retraction, mut phi) = (Vec::new(), Vec::new(), Vec::new());
    for k in low..=high {
        let mut gens: Vec<Matrix> = Vec::new();
        let mut images: Vec<Matrix> = Vec::new();
        for i in x.low..=x.high {
            let j = k - i;
            gens.push(x.fil_at(i).kron(&y.fil_at(j)));
            images.push(x.phi_at(i).kron(&y.phi_at(j)));
        }
        let g = Matrix::vstack_all(&ring, rank, &gens.iter().collect::<Vec<_>>());
        let im = Matrix::vstack_all(&ring, rank, &images.iter().collect::<Vec<_>>());
        if !linalg::kernel(&g).mul(&im).is_zero() {
            return Err(Error::NotWellDefined(format!("φ^{k} of the tensor product depends on the presentation")));
        }
        let (basis, ret) = split_span(&g, x.p)?;
        let span = Echelon::new(&g);
        let coords: Vec<_> = (0..basis.rows())
            .map(|s| span.solve(basis.row(s)).expect("basis lies in the span"))
            .collect();
        let coords = Matrix::from_rows(&ring, g.rows(), coords)?;
        phi.push(coords.mul(&im));
        fil.push(basis);
        retraction.push(ret);
    }
    FLObject::new(&format!("{}⊗{}", x.name, y.name), x.p, x.n, rank, low, high, fil, retraction, phi)
}

/// The full subcategory on `objects` with the forgetful functor to free
/// `W_n`-modules.
pub fn fl_to_category(objects: &[FLObject], p: u64, n: u32) -> Result<(Arc<LinearCategory>, Arc<LinearFunctor>)> {
    let ring = witt_ring(p, n)?;
    let algebra = Arc::new(BAlgebra::trivial(&ring));
    for x in objects {
        if (x.p, x.n) != (p, n) {
            return Err(Error::RingMismatch(x.ring().to_string(), ring.to_string()));
        }
        let report = check_fl_object(x);
        if !report.is_pass() {
            return Err(Error::Precondition(format!("{}: {}", x.name, report.violations[0])));
        }
    }
    let mut generators = Vec::new();
    for (a, x) in objects.iter().enumerate() {
        for (b, y) in objects.iter().enumerate() {
            for (k, g) in fl_hom_space(x, y)?.generators.into_iter().enumerate() {
                generators.push(ConcreteHom {
                    source: a,
                    target: b,
                    name: format!("{}→{}#{k}", x.name, y.name),
                    matrix: BMatrix::from_scalars(&algebra, &g),
                });
            }
        }
    }
    let names = objects.iter().map(|x| x.name.clone()).collect();
    let ranks = objects.iter().map(|x| x.rank).collect();
    concrete_category(&algebra, names, ranks, generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{check_category, check_functor};

    #[test]
    fn twists_pass() {
        for k in 0..3 {
            assert!(check_fl_object(&FLObject::twist(2, 1, k).unwrap()).is_pass());
        }
    }

    #[test]
    fn span_failure() {
        let ring = witt_ring(2, 1).unwrap();
        let one = Matrix::identity(&ring, 1);
        let x = FLObject::new("bad", 2, 1, 1, 0, 0, vec![one.clone()], vec![one], vec![Matrix::from_i64(&ring, &[&[2]])]).unwrap();
        let report = check_fl_object(&x);
        assert!(report.has("fl-span"));
        assert_eq!(report.violations.len(), 1);
    }

    #[test]
    fn compatibility_failure() {
        // rank one, Fil^0 = Fil^1 = M with φ^0 = φ^1 = 1 over Z/4
        let ring = witt_ring(2, 2).unwrap();
        let one = Matrix::identity(&ring, 1);
        let x = FLObject::new("x", 2, 2, 1, 0, 1, vec![one.clone(); 2], vec![one.clone(); 2], vec![one.clone(); 2]).unwrap();
        assert!(check_fl_object(&x).has("fl-compatibility"));
    }

    #[test]
    fn homs_between_twists() {
        for r in 0..3 {
            for s in 0..3 {
                let hom = fl_hom_space(&FLObject::twist(2, 1, r).unwrap(), &FLObject::twist(2, 1, s).unwrap()).unwrap();
                assert_eq!(hom.module.structure().free_rank, usize::from(r == s), "Hom(M({r}), M({s}))");
            }
        }
    }

    #[test]
    fn tensor_of_twists() {
        let m1 = FLObject::twist(2, 1, 1).unwrap();
        let t = fl_tensor(&m1, &m1).unwrap();
        assert!(check_fl_object(&t).is_pass());
        assert!(fl_isomorphism(&t, &FLObject::twist(2, 1, 2).unwrap(), 1 << 10).unwrap().is_some());
        assert!(fl_isomorphism(&t, &m1, 1 << 10).unwrap().is_none());
        let unit = FLObject::twist(2, 1, 0).unwrap();
        assert!(fl_isomorphism(&fl_tensor(&unit, &m1).unwrap(), &m1, 1 << 10).unwrap().is_some());
    }

    #[test]
    fn rank_two_tensor_over_z4() {
        // M(0) ⊕ M(1) as one object over Z/4
        let ring = witt_ring(2, 2).unwrap();
        let id2 = Matrix::identity(&ring, 2);
        let top = Matrix::from_i64(&ring, &[&[0, 1]]);
        let x = FLObject::new(
            "x",
            2,
            2,
            2,
            0,
            1,
            vec![id2.clone(), top.clone()],
            vec![id2.clone(), top.transpose()],
            vec![Matrix::from_i64(&ring, &[&[1, 0], &[0, 2]]), top],
        )
        .unwrap();
        assert!(check_fl_object(&x).is_pass(), "{}", check_fl_object(&x));
        let t = fl_tensor(&x, &x).unwrap();
        assert!(check_fl_object(&t).is_pass(), "{}", check_fl_object(&t));
        assert_eq!((t.low, t.high, t.fil[1].rows(), t.fil[2].rows()), (0, 2, 3, 1));
    }

    #[test]
    fn category_of_twists() {
        let objs = [FLObject::twist(2, 1, 0).unwrap(), FLObject::twist(2, 1, 1).unwrap()];
        let (c, w) = fl_to_category(&objs, 2, 1).unwrap();
        assert!(check_category(&c).is_pass());
        assert!(check_functor(&w).is_pass());
        assert_eq!(c.hom(0, 1).len(), 0);
        let (e, _) = fl_to_category(&[], 2, 1).unwrap();
        assert!(e.is_empty());
    }
}
