//! The coend `L = ∫^A w(A) ⊗ w(A)^∨` of a fiber functor, its coalgebroid
//! structure, the universal coactions on the fibers and the comparison of a
//! family of comodules against the regular one.
//!
//! Component `T_A = w(A) ⊗_R w(A)^∨` has coordinates `((i, l), (k, l'))`
//! standing for `e_i b_l ⊗ e_k^∨ b_l'`. The source action of `B` comes from
//! `w(A)` and the target action from the dual.

use std::sync::Arc;

use crate::algebra::{BAlgebra, BMatrix};
use crate::base_change::RingMap;
use crate::category::{check_functor, LinearFunctor};
use crate::coalgebroid::{check_comodule, comodule_map_system, is_comodule_map, map_space_from, Coalgebroid, Comodule};
use crate::error::{Error, Result};
use crate::matrix::{vec_ops, Matrix};
use crate::modules::{injectivity_witness, surjectivity_witness, Presentation};
use crate::report::CheckReport;
use crate::ring::{Ring, Scalar};
use crate::system::{coeffs_left_right, rowwise_modulo};

#[derive(Clone, Debug)]
pub struct CoendPresentation {
    functor: Arc<LinearFunctor>,
    offsets: Vec<usize>,
    relations: Matrix,
    carrier: Presentation,
    proj: Matrix,
    sect: Matrix,
    source: Vec<Matrix>,
    target: Vec<Matrix>,
}

/// `T_A` coordinate of `e_i b_l`.
fn fiber_index(d: usize, i: usize, l: usize) -> usize {
    i * d + l
}

pub fn coend(w: &Arc<LinearFunctor>) -> Result<CoendPresentation> {
    let report = check_functor(w);
    if !report.is_pass() {
        return Err(Error::Precondition(format!("functor check failed: {}", report.violations[0])));
    }
    let c = w.category();
    let algebra = w.algebra();
    let ring = w.ring();
    let d = algebra.rank();
    let n = c.len();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for a in 0..n {
        let m = w.rank(a) * d;
        offsets.push(offsets[a] + m * m);
    }
    let total = offsets[n];
    let mut parts = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for g in 0..c.hom(a, b).len() {
                let f = w.generator_image(a, b, g);
                let (ma, mb) = (w.rank(a) * d, w.rank(b) * d);
                if ma == 0 || mb == 0 {
                    continue;
                }
                // rows ((i,l),(k,l')) for x = e_i b_l in w(a), φ = e_k^∨ b_l' in w(b)^∨
                let mut rel = Matrix::zeros(ring, ma * mb, total);
                rel.add_to_block(0, offsets[b], &f.hat().kron(&Matrix::identity(ring, mb)));
                rel.add_to_block(0, offsets[a], &Matrix::identity(ring, ma).kron(&f.transpose().hat()).neg());
                parts.push(rel.without_zero_rows());
            }
        }
    }
    let refs: Vec<&Matrix> = parts.iter().collect();
    let relations = Matrix::vstack_all(ring, total, &refs);
    let simplified = Presentation::new(ring, total, relations.clone())?.simplify();
    let mut s_total = Vec::with_capacity(d);
    let mut t_total = Vec::with_capacity(d);
    for l in 0..d {
        let mut s = Matrix::zeros(ring, total, total);
        let mut t = Matrix::zeros(ring, total, total);
        for a in 0..n {
            let r = w.rank(a);
            if r == 0 {
                continue;
            }
            let act = Matrix::identity(ring, r).kron(algebra.mult_matrix(l));
            let id = Matrix::identity(ring, r * d);
            s.set_block(offsets[a], offsets[a], &act.kron(&id));
            t.set_block(offsets[a], offsets[a], &id.kron(&act));
        }
        s_total.push(simplified.sect.mul(&s).mul(&simplified.proj));
        t_total.push(simplified.sect.mul(&t).mul(&simplified.proj));
    }
    Ok(CoendPresentation {
        functor: w.clone(),
        offsets,
        relations,
        carrier: simplified.presentation,
        proj: simplified.proj,
        sect: simplified.sect,
        source: s_total,
        target: t_total,
    })
}

impl CoendPresentation {
    pub fn functor(&self) -> &Arc<LinearFunctor> {
        &self.functor
    }

    pub fn algebra(&self) -> &Arc<BAlgebra> {
        self.functor.algebra()
    }

    pub fn ring(&self) -> &Ring {
        self.functor.ring()
    }

    pub fn carrier(&self) -> &Presentation {
        &self.carrier
    }

    pub fn ambient(&self) -> usize {
        self.carrier.ambient()
    }

    pub fn source_action(&self) -> &[Matrix] {
        &self.source
    }

    pub fn target_action(&self) -> &[Matrix] {
        &self.target
    }

    /// Relations on the direct sum of the components.
    pub fn total_relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn total_ambient(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    /// Direct sum of components → `L`.
    pub fn projection(&self) -> &Matrix {
        &self.proj
    }

    /// `L` → direct sum of components, inverse to the projection in `L`.
    pub fn section(&self) -> &Matrix {
        &self.sect
    }

    pub fn component_offset(&self, a: usize) -> usize {
        self.offsets[a]
    }

    /// `ι_A : T_A → L`.
    pub fn insertion(&self, a: usize) -> Matrix {
        self.proj.row_range(self.offsets[a], self.offsets[a + 1])
    }

    /// `ι_A(x ⊗ φ)` for `R`-coordinates `x` of `w(A)` and `φ` of `w(A)^∨`.
    pub fn insert(&self, a: usize, x: &[Scalar], phi: &[Scalar]) -> Vec<Scalar> {
        let ring = self.ring();
        let v = vec_ops::kron(ring, x, phi);
        let mut out = vec![ring.zero(); self.ambient()];
        for (k, c) in v.iter().enumerate() {
            if !ring.is_zero(c) {
                vec_ops::axpy(ring, &mut out, c, self.proj.row(self.offsets[a] + k));
            }
        }
        out
    }

    /// `R`-coordinates of the basis vector `e_i` of `w(A)` (or of its dual).
    pub fn basis_vector(&self, a: usize, i: usize) -> Vec<Scalar> {
        let algebra = self.algebra();
        let d = algebra.rank();
        let mut v = vec![self.ring().zero(); self.functor.rank(a) * d];
        v[i * d..(i + 1) * d].clone_from_slice(algebra.unit());
        v
    }

    /// Factors a cowedge `k_A : T_A → X` through `L`. Returns `None` when the
    /// family is not a cowedge.
    pub fn factor_cowedge(&self, target: &Presentation, legs: &[Matrix]) -> Result<Option<Matrix>> {
        let ring = self.ring();
        let n = self.functor.category().len();
        if legs.len() != n {
            return Err(Error::DimensionMismatch("one leg per object required".into()));
        }
        let parts: Vec<&Matrix> = legs.iter().collect();
        let k_total = Matrix::vstack_all(ring, target.ambient(), &parts);
        if k_total.rows() != self.total_ambient() {
            return Err(Error::DimensionMismatch("legs do not match the components".into()));
        }
        if !target.is_zero_map(&self.relations.mul(&k_total)) {
            return Ok(None);
        }
        let h = self.sect.mul(&k_total);
        debug_assert!(target.maps_agree(&self.proj.mul(&h), &k_total));
        Ok(Some(h))
    }
}

/// The coend relations hold in `L` and every insertion is a bimodule map.
pub fn check_coend(p: &CoendPresentation) -> CheckReport {
    let mut report = CheckReport::new();
    let w = p.functor();
    let c = w.category();
    let d = p.algebra().rank();
    let ring = p.ring();
    let n = c.len();
    for a in 0..n {
        for b in 0..n {
            for g in 0..c.hom(a, b).len() {
                let f = w.generator_image(a, b, g);
                let fh = f.hat();
                let fth = f.transpose().hat();
                let (ma, mb) = (w.rank(a) * d, w.rank(b) * d);
                for x in 0..ma {
                    let xv = Matrix::unit_vector(ring, ma, x);
                    for phi in 0..mb {
                        let pv = Matrix::unit_vector(ring, mb, phi);
                        let lhs = p.insert(b, &fh.apply(&xv), &pv);
                        let rhs = p.insert(a, &xv, fth.row(phi));
                        if !p.carrier().equal_vectors(&lhs, &rhs) {
                            report.fail(
                                "coend-relation",
                                format!("{} at ({x}, {phi})", c.hom(a, b).names[g]),
                                "the two insertions disagree",
                            );
                        }
                    }
                }
            }
        }
    }
    for a in 0..n {
        let r = w.rank(a);
        if r == 0 {
            continue;
        }
        let ins = p.insertion(a);
        let id = Matrix::identity(ring, r * d);
        for l in 0..d {
            let act = Matrix::identity(ring, r).kron(p.algebra().mult_matrix(l));
            if !p.carrier().maps_agree(&act.kron(&id).mul(&ins), &ins.mul(&p.source[l])) {
                report.fail("insertion-bimodule", format!("{} s(b{l})", c.objects()[a]), "insertion is not source-linear");
            }
            if !p.carrier().maps_agree(&id.kron(&act).mul(&ins), &ins.mul(&p.target[l])) {
                report.fail("insertion-bimodule", format!("{} t(b{l})", c.objects()[a]), "insertion is not target-linear");
            }
        }
    }
    report
}

/// `Δ(ι(x⊗φ)) = Σ_k ι(x⊗e_k^∨) ⊗ ι(e_k⊗φ)` and `ε(ι(x⊗φ)) = φ(x)`.
pub fn induced_coalgebroid(p: &CoendPresentation) -> Result<Coalgebroid> {
    let w = p.functor();
    let algebra = p.algebra();
    let ring = p.ring();
    let d = algebra.rank();
    let m = p.ambient();
    let total = p.total_ambient();
    let mut delta_total = Matrix::zeros(ring, total, m * m);
    let mut eps_total = Matrix::zeros(ring, total, d);
    for a in 0..w.category().len() {
        let r = w.rank(a);
        let ma = r * d;
        let units: Vec<Vec<Scalar>> = (0..r).map(|k| p.basis_vector(a, k)).collect();
        for i in 0..r {
            for l in 0..d {
                let x = Matrix::unit_vector(ring, ma, fiber_index(d, i, l));
                let left: Vec<Vec<Scalar>> = units.iter().map(|e| p.insert(a, &x, e)).collect();
                for k in 0..r {
                    for l2 in 0..d {
                        let phi = Matrix::unit_vector(ring, ma, fiber_index(d, k, l2));
                        let row = p.component_offset(a) + fiber_index(d, i, l) * ma + fiber_index(d, k, l2);
                        let mut acc = vec![ring.zero(); m * m];
                        for (j, e) in units.iter().enumerate() {
                            let right = p.insert(a, e, &phi);
                            let term = vec_ops::kron(ring, &left[j], &right);
                            acc = vec_ops::add(ring, &acc, &term);
                        }
                        for (c, v) in acc.into_iter().enumerate() {
                            delta_total.set(row, c, v);
                        }
                        if i == k {
                            let v = algebra.mul(&algebra.basis(l), &algebra.basis(l2));
                            for (c, s) in v.into_iter().enumerate() {
                                eps_total.set(row, c, s);
                            }
                        }
                    }
                }
            }
        }
    }
    let delta = p.sect.mul(&delta_total);
    let counit = p.sect.mul(&eps_total);
    let coalg = Coalgebroid::new(algebra, p.carrier.clone(), p.source.clone(), p.target.clone(), delta, counit)?;
    if let Some(r) = coalg.pair().nonzero_row(&p.relations.mul(&delta_total)) {
        return Err(Error::NotWellDefined(format!("Δ does not vanish on coend relation {r}")));
    }
    if !p.relations.mul(&eps_total).is_zero() {
        return Err(Error::NotWellDefined("ε does not vanish on the coend relations".into()));
    }
    Ok(coalg)
}

/// `ρ(x) = Σ_k ι_A(x ⊗ e_k^∨) ⊗ e_k` on `w(A)`.
pub fn universal_coaction(p: &CoendPresentation, coalgebroid: &Arc<Coalgebroid>, a: usize) -> Result<Comodule> {
    let w = p.functor();
    let ring = p.ring();
    let d = p.algebra().rank();
    let r = w.rank(a);
    let ma = r * d;
    let m = p.ambient();
    let units: Vec<Vec<Scalar>> = (0..r).map(|k| p.basis_vector(a, k)).collect();
    let mut rho = Matrix::zeros(ring, ma, m * ma);
    for x in 0..ma {
        let xv = Matrix::unit_vector(ring, ma, x);
        let mut acc = vec![ring.zero(); m * ma];
        for e in &units {
            acc = vec_ops::add(ring, &acc, &vec_ops::kron(ring, &p.insert(a, &xv, e), e));
        }
        for (c, v) in acc.into_iter().enumerate() {
            rho.set(x, c, v);
        }
    }
    Comodule::new(coalgebroid, w.object(a), rho)
}

/// `(L ⊗ w(f)) ρ_A = ρ_{A'} w(f)` for every hom generator.
pub fn check_coaction_naturality(p: &CoendPresentation, coactions: &[Comodule]) -> CheckReport {
    let mut report = CheckReport::new();
    let w = p.functor();
    let c = w.category();
    let ring = p.ring();
    let m = p.ambient();
    for a in 0..c.len() {
        for b in 0..c.len() {
            for g in 0..c.hom(a, b).len() {
                let f = w.generator_image(a, b, g).hat();
                let lhs = coactions[a].coaction().mul(&Matrix::identity(ring, m).kron(&f));
                let rhs = f.mul(coactions[b].coaction());
                if let Some(i) = coactions[b].target().maps_differ_at(&lhs, &rhs) {
                    report.fail("coaction-naturality", format!("{} on generator {i}", c.hom(a, b).names[g]), "ρ is not natural");
                }
            }
        }
    }
    report
}

/// Whether a map `C → D` of coalgebroid carriers is an isomorphism of
/// coalgebroids.
pub fn check_coalgebroid_iso(c: &Coalgebroid, d: &Coalgebroid, f: &Matrix) -> CheckReport {
    let mut report = CheckReport::new();
    if f.shape() != (c.ambient(), d.ambient()) {
        report.fail("iso-shape", "", "map has the wrong shape");
        return report;
    }
    if !d.carrier().receives_well_defined(c.carrier(), f) {
        report.fail("iso-well-defined", "", "map does not respect relations");
    }
    if let Some(v) = injectivity_witness(c.carrier(), d.carrier(), f) {
        report.fail("iso-injective", format!("{v:?}"), "nonzero element maps to zero");
    }
    if let Some(j) = surjectivity_witness(d.carrier(), f) {
        report.fail("iso-surjective", format!("generator {j}"), "not in the image");
    }
    for l in 0..c.algebra().rank() {
        if !d.carrier().maps_agree(&c.source_action()[l].mul(f), &f.mul(&d.source_action()[l])) {
            report.fail("iso-source", format!("b{l}"), "map does not commute with s");
        }
        if !d.carrier().maps_agree(&c.target_action()[l].mul(f), &f.mul(&d.target_action()[l])) {
            report.fail("iso-target", format!("b{l}"), "map does not commute with t");
        }
    }
    if let Some(i) = d.pair().maps_differ_at(&c.delta().mul(&f.kron(f)), &f.mul(d.delta())) {
        report.fail("iso-delta", format!("generator {i}"), "map does not intertwine Δ");
    }
    if let Some(i) = (0..c.ambient()).find(|&i| f.mul(d.counit()).row(i) != c.counit().row(i)) {
        report.fail("iso-counit", format!("generator {i}"), "map does not intertwine ε");
    }
    report
}

/// Coend of a base-changed functor against the base change of the coend.
#[derive(Clone, Debug)]
pub struct BaseChangeComparison {
    /// `h(L(w))`
    pub transported: Coalgebroid,
    /// `L(h(w))`
    pub recomputed: Coalgebroid,
    /// `h(L(w)) → L(h(w))`
    pub iso: Matrix,
    pub report: CheckReport,
}

pub fn base_change_comparison(h: &RingMap, w: &Arc<LinearFunctor>) -> Result<BaseChangeComparison> {
    let p = coend(w)?;
    let c = induced_coalgebroid(&p)?;
    let transported = h.coalgebroid(&c)?;
    let hw = Arc::new(h.functor(w)?);
    let p2 = coend(&hw)?;
    let recomputed = induced_coalgebroid(&p2)?;
    let iso = h.matrix(p.section()).mul(p2.projection());
    let report = check_coalgebroid_iso(&transported, &recomputed, &iso);
    Ok(BaseChangeComparison { transported, recomputed, iso, report })
}

/// Coalgebroid isomorphism `L(w') → L(w)` for a functor rebased along
/// invertible `B`-matrices, one per object.
pub fn rebasing_iso(original: &CoendPresentation, rebased: &CoendPresentation, bases: &[BMatrix]) -> Result<Matrix> {
    let ring = original.ring();
    let total = original.total_ambient();
    if rebased.total_ambient() != total {
        return Err(Error::DimensionMismatch("rebased functor has different ranks".into()));
    }
    let mut block = Matrix::zeros(ring, total, total);
    for (a, n) in bases.iter().enumerate() {
        if n.rows() == 0 {
            continue;
        }
        let inv = n.inverse().ok_or_else(|| Error::NotInvertible(format!("basis change at object {a}")))?;
        let m = n.hat().kron(&inv.transpose().hat());
        let off = original.component_offset(a);
        block.set_block(off, off, &m);
    }
    Ok(rebased.section().mul(&block).mul(original.projection()))
}

/// Verdict of comparing a family of comodules over the regular comodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComparisonVerdict {
    Iso,
    /// Surjective; the witness is a nonzero element of the colimit mapping
    /// to zero.
    EpiNotMono { witness: Vec<Scalar> },
    /// The witness is an element of the regular comodule outside the image.
    NotEpi { witness: Vec<Scalar> },
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub verdict: ComparisonVerdict,
    /// The colimit of the diagram of the family, on the direct sum of the
    /// family's ambients.
    pub colimit: Presentation,
    /// Colimit → regular comodule.
    pub map: Matrix,
    /// Number of ordered pairs `(i, j)` with at least one diagram morphism.
    pub connected_pairs: usize,
}

/// Colimit of the diagram whose objects are comodule maps `φ_i : M_i → C`
/// and whose morphisms are the comodule maps `g` with `φ_j g = φ_i`,
/// compared with `C`. The verdict is relative to the family.
pub fn counit_comparison(c: &Arc<Coalgebroid>, family: &[(Comodule, Matrix)]) -> Result<Comparison> {
    let ring = c.ring();
    let regular = c.regular_comodule();
    for (idx, (m, phi)) in family.iter().enumerate() {
        let report = check_comodule(m);
        if !report.is_pass() {
            return Err(Error::Precondition(format!("family member {idx} is not a comodule: {}", report.violations[0])));
        }
        if phi.shape() != (m.ambient(), c.ambient()) || !is_comodule_map(m, &regular, phi) {
            return Err(Error::Precondition(format!("family member {idx} does not map into the regular comodule")));
        }
    }
    let mut offsets = vec![0];
    for (m, _) in family {
        offsets.push(offsets.last().unwrap() + m.ambient());
    }
    let total = *offsets.last().unwrap();
    let mut rows: Vec<Matrix> = Vec::new();
    for (idx, (m, _)) in family.iter().enumerate() {
        let rel = m.module().presentation().relations();
        let mut block = Matrix::zeros(ring, rel.rows(), total);
        block.set_block(0, offsets[idx], rel);
        rows.push(block);
    }
    let mut connected_pairs = 0;
    for (i, (mi, phi_i)) in family.iter().enumerate() {
        for (j, (mj, phi_j)) in family.iter().enumerate() {
            let (p, q) = (mi.ambient(), mj.ambient());
            let mut system = comodule_map_system(mi, mj);
            // φ_j g = φ_i
            system.constrain(
                coeffs_left_right(&Matrix::identity(ring, p), phi_j),
                Some(phi_i.data().to_vec()),
                Some(rowwise_modulo(c.carrier().relations(), p)),
            );
            let Some(g0) = system.particular_solution() else { continue };
            connected_pairs += 1;
            let g0 = Matrix::from_raw(ring, p, q, g0);
            // x − g0(x)
            let mut block = Matrix::zeros(ring, p, total);
            block.set_block(0, offsets[i], &Matrix::identity(ring, p));
            block.add_to_block(0, offsets[j], &g0.neg());
            rows.push(block);
            // homogeneous part: comodule maps h with φ_j h = 0
            let mut hom = comodule_map_system(mi, mj);
            hom.constrain(
                coeffs_left_right(&Matrix::identity(ring, p), phi_j),
                None,
                Some(rowwise_modulo(c.carrier().relations(), p)),
            );
            let space = map_space_from(&hom, mi, mj)?;
            for h in &space.maps {
                let mut block = Matrix::zeros(ring, p, total);
                block.set_block(0, offsets[j], h);
                rows.push(block);
            }
        }
    }
    let refs: Vec<&Matrix> = rows.iter().collect();
    let colimit = Presentation::new(ring, total, Matrix::vstack_all(ring, total, &refs))?;
    let parts: Vec<&Matrix> = family.iter().map(|(_, phi)| phi).collect();
    let map = Matrix::vstack_all(ring, c.ambient(), &parts);
    let verdict = if let Some(j) = surjectivity_witness(c.carrier(), &map) {
        ComparisonVerdict::NotEpi { witness: Matrix::unit_vector(ring, c.ambient(), j) }
    } else if let Some(v) = injectivity_witness(&colimit, c.carrier(), &map) {
        ComparisonVerdict::EpiNotMono { witness: v }
    } else {
        ComparisonVerdict::Iso
    };
    Ok(Comparison { verdict, colimit, map, connected_pairs })
}

/// Summary of a reconstruction: the coend, its coalgebroid and the
/// universal coactions, with every check run.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub coend: CoendPresentation,
    pub coalgebroid: Arc<Coalgebroid>,
    pub coactions: Vec<Comodule>,
    pub report: CheckReport,
}

pub fn reconstruct(w: &Arc<LinearFunctor>) -> Result<Reconstruction> {
    let p = coend(w)?;
    let coalgebroid = Arc::new(induced_coalgebroid(&p)?);
    let mut report = check_coend(&p);
    report.merge(crate::coalgebroid::check_coalgebroid(&coalgebroid));
    let coactions = (0..w.category().len())
        .map(|a| universal_coaction(&p, &coalgebroid, a))
        .collect::<Result<Vec<_>>>()?;
    for m in &coactions {
        report.merge(check_comodule(m));
    }
    report.merge(check_coaction_naturality(&p, &coactions));
    Ok(Reconstruction { coend: p, coalgebroid, coactions, report })
}

/// Rank of `L` over the base ring when it is free.
pub fn carrier_rank(p: &CoendPresentation) -> Option<usize> {
    let s = p.carrier().structure();
    s.is_free().then_some(s.free_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebroid::check_coalgebroid;
    use crate::fixtures;
    use crate::modules::BModule;

    fn f5() -> Ring {
        Ring::prime_field(5).unwrap()
    }

    #[test]
    fn comatrix_coalgebra() {
        let ring = f5();
        let w = fixtures::comatrix(&ring, 2);
        let rec = reconstruct(&w).unwrap();
        assert!(rec.report.is_pass(), "{}", rec.report);
        let p = &rec.coend;
        assert_eq!(carrier_rank(p), Some(4));
        let c = &rec.coalgebroid;
        let e = |i: usize, j: usize| p.insert(0, &Matrix::unit_vector(&ring, 2, i), &Matrix::unit_vector(&ring, 2, j));
        for i in 0..2 {
            for j in 0..2 {
                let x = e(i, j);
                let got = Matrix::row_vector(&ring, x.clone()).mul(c.delta());
                let mut want = vec![ring.zero(); 16];
                for k in 0..2 {
                    want = vec_ops::add(&ring, &want, &vec_ops::kron(&ring, &e(i, k), &e(k, j)));
                }
                assert!(c.pair().equal_vectors(got.row(0), &want));
                let eps = Matrix::row_vector(&ring, x).mul(c.counit());
                assert_eq!(eps.row(0)[0], ring.from_i64((i == j) as i64));
            }
        }
    }

    #[test]
    fn sign_lines_give_grouplikes() {
        let ring = Ring::prime_field(3).unwrap();
        let w = fixtures::sign_lines(&ring);
        let rec = reconstruct(&w).unwrap();
        assert!(rec.report.is_pass(), "{}", rec.report);
        let p = &rec.coend;
        assert_eq!(carrier_rank(p), Some(2));
        let one = vec![ring.one()];
        for a in 0..2 {
            let x = p.insert(a, &one, &one);
            let d = Matrix::row_vector(&ring, x.clone()).mul(rec.coalgebroid.delta());
            assert!(rec.coalgebroid.pair().equal_vectors(d.row(0), &vec_ops::kron(&ring, &x, &x)));
        }
    }

    #[test]
    fn zero_functor_has_zero_coend() {
        let ring = f5();
        let w = fixtures::comatrix(&ring, 0);
        let rec = reconstruct(&w).unwrap();
        assert!(rec.report.is_pass());
        assert!(rec.coend.carrier().is_zero_module());
    }

    #[test]
    fn nilpotent_coend_is_one_dimensional() {
        let ring = Ring::prime_field(2).unwrap();
        let rec = reconstruct(&fixtures::nilpotent(&ring)).unwrap();
        assert!(rec.report.is_pass(), "{}", rec.report);
        assert_eq!(carrier_rank(&rec.coend), Some(1));
    }

    #[test]
    fn comatrix_over_z4_is_free() {
        let ring = Ring::integers_mod(4).unwrap();
        let rec = reconstruct(&fixtures::comatrix(&ring, 2)).unwrap();
        assert!(rec.report.is_pass(), "{}", rec.report);
        assert_eq!(carrier_rank(&rec.coend), Some(4));
    }

    #[test]
    fn split_base_coend() {
        let ring = f5();
        let rec = reconstruct(&fixtures::split_base(&ring)).unwrap();
        assert!(rec.report.is_pass(), "{}", rec.report);
    }

    #[test]
    fn factor_through_coend() {
        let ring = f5();
        let w = fixtures::comatrix(&ring, 2);
        let p = coend(&w).unwrap();
        // the trace cowedge factors, a non-cowedge does not
        let target = Presentation::free(&ring, 1);
        let trace = Matrix::from_i64(&ring, &[&[1], &[0], &[0], &[1]]);
        let h = p.factor_cowedge(&target, &[trace]).unwrap().unwrap();
        assert_eq!(h.shape(), (4, 1));
        let lines = fixtures::sign_lines(&ring);
        let q = coend(&lines).unwrap();
        let legs = [Matrix::from_i64(&ring, &[&[1]]), Matrix::from_i64(&ring, &[&[2]])];
        assert!(q.factor_cowedge(&target, &legs).unwrap().is_some());
    }

    #[test]
    fn counit_comparison_verdicts() {
        let ring = f5();
        let rec = reconstruct(&fixtures::comatrix(&ring, 2)).unwrap();
        let c = rec.coalgebroid.clone();
        let fiber = rec.coactions[0].clone();
        // coaction maps x ↦ ι(x ⊗ φ) for each φ
        let maps = |phi: &[Scalar]| {
            let rows = (0..2).map(|x| rec.coend.insert(0, &Matrix::unit_vector(&ring, 2, x), phi)).collect();
            Matrix::from_rows(&ring, 4, rows).unwrap()
        };
        let e0 = Matrix::unit_vector(&ring, 2, 0);
        let e1 = Matrix::unit_vector(&ring, 2, 1);
        let both = vec![(fiber.clone(), maps(&e0)), (fiber.clone(), maps(&e1))];
        let cmp = counit_comparison(&c, &both).unwrap();
        assert_eq!(cmp.verdict, ComparisonVerdict::Iso);
        let one = vec![(fiber.clone(), maps(&e0))];
        match counit_comparison(&c, &one).unwrap().verdict {
            ComparisonVerdict::NotEpi { witness } => {
                let in_image = crate::modules::preimage(c.carrier(), &maps(&e0), &witness);
                assert!(in_image.is_none());
            }
            v => panic!("unexpected {v:?}"),
        }
        let regular = vec![(c.regular_comodule(), Matrix::identity(&ring, 4))];
        assert_eq!(counit_comparison(&c, &regular).unwrap().verdict, ComparisonVerdict::Iso);
    }

    #[test]
    fn trivial_coalgebroid_is_its_own_colimit() {
        let ring = f5();
        let algebra = Arc::new(BAlgebra::trivial(&ring));
        let c = Arc::new(Coalgebroid::trivial(&algebra));
        assert!(check_coalgebroid(&c).is_pass());
        let m = Comodule::new(&c, BModule::free(&algebra, 1), Matrix::identity(&ring, 1)).unwrap();
        let cmp = counit_comparison(&c, &[(m, Matrix::identity(&ring, 1))]).unwrap();
        assert_eq!(cmp.verdict, ComparisonVerdict::Iso);
    }

    #[test]
    fn rebasing_gives_isomorphic_coalgebroids() {
        let ring = f5();
        let w = fixtures::comatrix(&ring, 2);
        let n = BMatrix::from_scalars(w.algebra(), &Matrix::from_i64(&ring, &[&[1, 2], &[3, 4]]));
        let rebased = Arc::new(w.rebased(std::slice::from_ref(&n)).unwrap());
        let (p, q) = (coend(&w).unwrap(), coend(&rebased).unwrap());
        let (c, d) = (induced_coalgebroid(&p).unwrap(), induced_coalgebroid(&q).unwrap());
        let iso = rebasing_iso(&p, &q, &[n]).unwrap();
        let report = check_coalgebroid_iso(&d, &c, &iso);
        assert!(report.is_pass(), "{report}");
    }

    #[test]
    fn base_change_z_to_f3() {
        let z = Ring::integers();
        let f3 = Ring::prime_field(3).unwrap();
        let cmp = base_change_comparison(&RingMap::new(&z, &f3).unwrap(), &fixtures::lines_and_sum(&z)).unwrap();
        assert!(cmp.report.is_pass(), "{}", cmp.report);
    }

    #[test]
    fn lines_and_sum_coend_rank() {
        let ring = Ring::prime_field(2).unwrap();
        let rec = reconstruct(&fixtures::lines_and_sum(&ring)).unwrap();
        assert!(rec.report.is_pass(), "{}", rec.report);
        assert_eq!(carrier_rank(&rec.coend), Some(2));
    }
}
