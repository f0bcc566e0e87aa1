//! `B`-`B`-coalgebroids, their comodules, and the axiom checks for both.
//!
//! A coalgebroid carrier `C` carries two commuting `B`-actions, the source
//! action `s` and the target action `t`. `Δ` lands in `C ⊗_B C` balanced by
//! `t` on the left factor against `s` on the right one; a coaction lands in
//! `C ⊗_B M` balanced by `t` against the action on `M`.

use std::sync::Arc;

use crate::algebra::BAlgebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::modules::{balanced_tensor, subquotient, BModule, Presentation};
use crate::report::CheckReport;
use crate::ring::{Ring, Scalar};
use crate::system::{coeffs_kron_right, coeffs_left_right, rowwise_modulo, unflatten, LinearSystem};

#[derive(Clone, Debug)]
pub struct Coalgebroid {
    algebra: Arc<BAlgebra>,
    carrier: Presentation,
    source: Vec<Matrix>,
    target: Vec<Matrix>,
    delta: Matrix,
    counit: Matrix,
    pair: Presentation,
}

impl PartialEq for Coalgebroid {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra
            && self.carrier == other.carrier
            && self.source == other.source
            && self.target == other.target
            && self.delta == other.delta
            && self.counit == other.counit
    }
}

fn action_of(ring: &Ring, action: &[Matrix], b: &[Scalar]) -> Matrix {
    let m = action[0].rows();
    let mut out = Matrix::zeros(ring, m, m);
    for (l, c) in b.iter().enumerate() {
        if !ring.is_zero(c) {
            out = out.add(&action[l].scale(c));
        }
    }
    out
}

impl Coalgebroid {
    /// Only shapes are checked here; the axioms are checked by
    /// [`check_coalgebroid`].
    pub fn new(
        algebra: &Arc<BAlgebra>,
        carrier: Presentation,
        source: Vec<Matrix>,
        target: Vec<Matrix>,
        delta: Matrix,
        counit: Matrix,
    ) -> Result<Self> {
        let m = carrier.ambient();
        let d = algebra.rank();
        if source.len() != d || target.len() != d {
            return Err(Error::DimensionMismatch(format!("need {d} source and target action matrices")));
        }
        if source.iter().chain(&target).any(|a| a.shape() != (m, m)) {
            return Err(Error::DimensionMismatch(format!("action matrices must be {m}x{m}")));
        }
        if delta.shape() != (m, m * m) {
            return Err(Error::DimensionMismatch(format!("comultiplication must be {m}x{}", m * m)));
        }
        if counit.shape() != (m, d) {
            return Err(Error::DimensionMismatch(format!("counit must be {m}x{d}")));
        }
        let pair = balanced_tensor(&carrier, &target, &carrier, &source);
        Ok(Coalgebroid { algebra: algebra.clone(), carrier, source, target, delta, counit, pair })
    }

    /// `C = B` with `Δ` the canonical isomorphism and `ε = id`.
    pub fn trivial(algebra: &Arc<BAlgebra>) -> Self {
        let ring = algebra.ring();
        let d = algebra.rank();
        let action: Vec<Matrix> = (0..d).map(|l| algebra.mult_matrix(l).clone()).collect();
        // b ↦ b ⊗ 1
        let mut delta = Matrix::zeros(ring, d, d * d);
        for i in 0..d {
            for (l, u) in algebra.unit().iter().enumerate() {
                delta.set(i, i * d + l, u.clone());
            }
        }
        Coalgebroid::new(algebra, Presentation::free(ring, d), action.clone(), action, delta, Matrix::identity(ring, d))
            .expect("shapes agree")
    }

    pub fn algebra(&self) -> &Arc<BAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> &Ring {
        self.algebra.ring()
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

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    /// `C ⊗_B C`, balanced by `t` against `s`.
    pub fn pair(&self) -> &Presentation {
        &self.pair
    }

    /// `C ⊗_B C ⊗_B C`.
    pub fn triple(&self) -> Presentation {
        let ring = self.ring();
        let m = self.ambient();
        let right_t: Vec<Matrix> = self.target.iter().map(|t| Matrix::identity(ring, m).kron(t)).collect();
        balanced_tensor(&self.pair, &right_t, &self.carrier, &self.source)
    }

    pub fn source_of(&self, b: &[Scalar]) -> Matrix {
        action_of(self.ring(), &self.source, b)
    }

    pub fn target_of(&self, b: &[Scalar]) -> Matrix {
        action_of(self.ring(), &self.target, b)
    }

    /// The carrier as a `B`-module through `s`.
    pub fn source_module(&self) -> BModule {
        BModule::new_unchecked(&self.algebra, self.carrier.clone(), self.source.clone())
    }

    /// The carrier as a `B`-module through `t`.
    pub fn target_module(&self) -> BModule {
        BModule::new_unchecked(&self.algebra, self.carrier.clone(), self.target.clone())
    }

    /// `ε ⊗ id : C ⊗_B C → C`, `x ⊗ y ↦ s(ε(x)) y`.
    pub fn left_counit_map(&self) -> Matrix {
        let ring = self.ring();
        let m = self.ambient();
        let mut out = Matrix::zeros(ring, m * m, m);
        for i in 0..m {
            let act = self.source_of(self.counit.row(i));
            out.set_block(i * m, 0, &act);
        }
        out
    }

    /// `id ⊗ ε : C ⊗_B C → C`, `x ⊗ y ↦ t(ε(y)) x`.
    pub fn right_counit_map(&self) -> Matrix {
        let ring = self.ring();
        let m = self.ambient();
        let mut out = Matrix::zeros(ring, m * m, m);
        for j in 0..m {
            let act = self.target_of(self.counit.row(j));
            for i in 0..m {
                for k in 0..m {
                    out.set(i * m + j, k, act.get(i, k).clone());
                }
            }
        }
        out
    }

    /// The carrier as a comodule over itself via `Δ`.
    pub fn regular_comodule(self: &Arc<Self>) -> Comodule {
        Comodule { coalgebroid: self.clone(), module: self.source_module(), coaction: self.delta.clone() }
    }
}

pub fn check_coalgebroid(c: &Coalgebroid) -> CheckReport {
    let mut report = CheckReport::new();
    let ring = c.ring();
    let algebra = c.algebra();
    let m = c.ambient();
    let d = algebra.rank();
    for (name, action) in [("source", c.source_action()), ("target", c.target_action())] {
        if let Err(e) = BModule::new(algebra, c.carrier.clone(), action.to_vec()) {
            report.fail("bimodule", name, e.to_string());
        }
    }
    for i in 0..d {
        for j in 0..d {
            if !c.carrier.maps_agree(&c.source[i].mul(&c.target[j]), &c.target[j].mul(&c.source[i])) {
                report.fail("bimodule", format!("s(b{i}), t(b{j})"), "source and target actions do not commute");
            }
        }
    }
    if !report.is_pass() {
        return report;
    }
    if let Some(r) = c.pair.nonzero_row(&c.carrier.relations().mul(&c.delta)) {
        report.fail("delta-well-defined", format!("relation {r}"), "Δ does not vanish on a relation");
    }
    let eps_rel = c.carrier.relations().mul(&c.counit);
    if let Some(r) = (0..eps_rel.rows()).find(|&r| !algebra.is_zero(eps_rel.row(r))) {
        report.fail("counit-well-defined", format!("relation {r}"), "ε does not vanish on a relation");
    }
    let id_m = Matrix::identity(ring, m);
    for l in 0..d {
        if let Some(i) = c.pair.maps_differ_at(&c.source[l].mul(&c.delta), &c.delta.mul(&c.source[l].kron(&id_m))) {
            report.fail("delta-bimodule", format!("s(b{l}) on generator {i}"), "Δ is not left B-linear");
        }
        if let Some(i) = c.pair.maps_differ_at(&c.target[l].mul(&c.delta), &c.delta.mul(&id_m.kron(&c.target[l]))) {
            report.fail("delta-bimodule", format!("t(b{l}) on generator {i}"), "Δ is not right B-linear");
        }
        let mult = algebra.mult_matrix(l);
        if c.source[l].mul(&c.counit) != c.counit.mul(mult) {
            report.fail("counit-bimodule", format!("s(b{l})"), "ε is not left B-linear");
        }
        if c.target[l].mul(&c.counit) != c.counit.mul(mult) {
            report.fail("counit-bimodule", format!("t(b{l})"), "ε is not right B-linear");
        }
    }
    let triple = c.triple();
    let lhs = c.delta.mul(&c.delta.kron(&id_m));
    let rhs = c.delta.mul(&id_m.kron(&c.delta));
    if let Some(i) = triple.maps_differ_at(&lhs, &rhs) {
        report.fail("coassociativity", format!("generator {i}"), "(Δ⊗id)Δ differs from (id⊗Δ)Δ");
    }
    if let Some(i) = c.carrier.maps_differ_at(&c.delta.mul(&c.left_counit_map()), &id_m) {
        report.fail("left-counit", format!("generator {i}"), "(ε⊗id)Δ differs from id");
    }
    if let Some(i) = c.carrier.maps_differ_at(&c.delta.mul(&c.right_counit_map()), &id_m) {
        report.fail("right-counit", format!("generator {i}"), "(id⊗ε)Δ differs from id");
    }
    report
}

/// A comodule: a `B`-module `M` with a coaction `M → C ⊗_B M`.
#[derive(Clone, Debug)]
pub struct Comodule {
    coalgebroid: Arc<Coalgebroid>,
    module: BModule,
    coaction: Matrix,
}

impl Comodule {
    pub fn new(coalgebroid: &Arc<Coalgebroid>, module: BModule, coaction: Matrix) -> Result<Self> {
        if module.algebra() != coalgebroid.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let n = module.ambient();
        if coaction.shape() != (n, coalgebroid.ambient() * n) {
            return Err(Error::DimensionMismatch(format!("coaction must be {n}x{}", coalgebroid.ambient() * n)));
        }
        Ok(Comodule { coalgebroid: coalgebroid.clone(), module, coaction })
    }

    pub fn coalgebroid(&self) -> &Arc<Coalgebroid> {
        &self.coalgebroid
    }

    pub fn module(&self) -> &BModule {
        &self.module
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    pub fn ambient(&self) -> usize {
        self.module.ambient()
    }

    /// `C ⊗_B M`, balanced by `t` against the action on `M`.
    pub fn target(&self) -> Presentation {
        let c = &self.coalgebroid;
        balanced_tensor(c.carrier(), c.target_action(), self.module.presentation(), self.module.action())
    }

    /// `ε ⊗ id : C ⊗_B M → M`.
    pub fn counit_map(&self) -> Matrix {
        let c = &self.coalgebroid;
        let ring = c.ring();
        let (mc, n) = (c.ambient(), self.ambient());
        let mut out = Matrix::zeros(ring, mc * n, n);
        for i in 0..mc {
            out.set_block(i * n, 0, &self.module.action_of(c.counit().row(i)));
        }
        out
    }
}

pub fn check_comodule(m: &Comodule) -> CheckReport {
    let mut report = CheckReport::new();
    let c = m.coalgebroid();
    let ring = c.ring();
    let n = m.ambient();
    let target = m.target();
    let pres = m.module().presentation();
    if let Some(r) = target.nonzero_row(&pres.relations().mul(m.coaction())) {
        report.fail("coaction-well-defined", format!("relation {r}"), "ρ does not vanish on a relation");
    }
    let id_n = Matrix::identity(ring, n);
    for l in 0..c.algebra().rank() {
        let lhs = m.module().action()[l].mul(m.coaction());
        let rhs = m.coaction().mul(&c.source_action()[l].kron(&id_n));
        if let Some(i) = target.maps_differ_at(&lhs, &rhs) {
            report.fail("coaction-linear", format!("b{l} on generator {i}"), "ρ is not B-linear");
        }
    }
    let mc = c.ambient();
    let right_t: Vec<Matrix> = c.target_action().iter().map(|t| Matrix::identity(ring, mc).kron(t)).collect();
    let triple = balanced_tensor(c.pair(), &right_t, pres, m.module().action());
    let lhs = m.coaction().mul(&c.delta().kron(&id_n));
    let rhs = m.coaction().mul(&Matrix::identity(ring, mc).kron(m.coaction()));
    if let Some(i) = triple.maps_differ_at(&lhs, &rhs) {
        report.fail("coaction-coassociativity", format!("generator {i}"), "(Δ⊗id)ρ differs from (id⊗ρ)ρ");
    }
    if let Some(i) = pres.maps_differ_at(&m.coaction().mul(&m.counit_map()), &id_n) {
        report.fail("coaction-counit", format!("generator {i}"), "(ε⊗id)ρ differs from id");
    }
    report
}

/// A module of maps `M → N` presented on generating maps, over the base
/// ring.
#[derive(Clone, Debug)]
pub struct MapSpace {
    pub module: BModule,
    pub maps: Vec<Matrix>,
}

impl MapSpace {
    /// The map with the given coordinates in the generators.
    pub fn combine(&self, ring: &Ring, coeffs: &[Scalar], rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(ring, rows, cols);
        for (c, g) in coeffs.iter().zip(&self.maps) {
            if !ring.is_zero(c) {
                out = out.add(&g.scale(c));
            }
        }
        out
    }
}

/// The linear conditions on an unknown `M → N` for being a well-defined
/// comodule map; unknown `a * |N| + b` is the matrix entry `(a, b)`.
pub(crate) fn comodule_map_system(m: &Comodule, n: &Comodule) -> LinearSystem {
    let c = m.coalgebroid();
    let ring = c.ring();
    let (p, q) = (m.ambient(), n.ambient());
    let rel_m = m.module().presentation().relations();
    let rel_n = n.module().presentation().relations();
    let mut system = LinearSystem::new(ring, p * q);
    if rel_m.rows() > 0 {
        system.constrain(coeffs_left_right(rel_m, &Matrix::identity(ring, q)), None, Some(rowwise_modulo(rel_n, rel_m.rows())));
    }
    for l in 0..c.algebra().rank() {
        let lhs = coeffs_left_right(&m.module().action()[l], &Matrix::identity(ring, q));
        let rhs = coeffs_left_right(&Matrix::identity(ring, p), &n.module().action()[l]);
        system.constrain(lhs.sub(&rhs), None, Some(rowwise_modulo(rel_n, p)));
    }
    let tn = n.target();
    let lhs = coeffs_left_right(&Matrix::identity(ring, p), n.coaction());
    let rhs = coeffs_kron_right(m.coaction(), c.ambient(), p, q);
    system.constrain(lhs.sub(&rhs), None, Some(rowwise_modulo(tn.relations(), p)));
    system
}

/// Solution module of a map system, modulo maps that vanish in `N`. It is
/// presented over `R`: post-composing a comodule map with the action of `B`
/// need not give a comodule map.
pub(crate) fn map_space_from(system: &LinearSystem, m: &Comodule, n: &Comodule) -> Result<MapSpace> {
    let c = m.coalgebroid();
    let ring = c.ring();
    let (p, q) = (m.ambient(), n.ambient());
    let generators = system.homogeneous_solutions();
    let zero = rowwise_modulo(n.module().presentation().relations(), p);
    let base = Arc::new(BAlgebra::trivial(ring));
    let module = subquotient(&base, &generators, &zero, &[Matrix::identity(ring, p * q)])?;
    let maps = (0..generators.rows()).map(|k| unflatten(ring, generators.row(k), p, q)).collect();
    Ok(MapSpace { module, maps })
}

/// Comodule maps `M → N`.
pub fn comodule_hom_space(m: &Comodule, n: &Comodule) -> Result<MapSpace> {
    if !Arc::ptr_eq(m.coalgebroid(), n.coalgebroid()) && m.coalgebroid() != n.coalgebroid() {
        return Err(Error::InvalidInput("comodules over different coalgebroids".into()));
    }
    map_space_from(&comodule_map_system(m, n), m, n)
}

/// Whether `f : M → N` is a comodule map.
pub fn is_comodule_map(m: &Comodule, n: &Comodule, f: &Matrix) -> bool {
    let c = m.coalgebroid();
    let ring = c.ring();
    let pres_n = n.module().presentation();
    pres_n.receives_well_defined(m.module().presentation(), f)
        && m.module().linearity_failure(n.module(), f).is_none()
        && n.target().maps_agree(&f.mul(n.coaction()), &m.coaction().mul(&Matrix::identity(ring, c.ambient()).kron(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 2x2 comatrix coalgebra; coordinate `2 i + j` is `E_ij`.
    fn comatrix(r: &Ring) -> Coalgebroid {
        let b = Arc::new(BAlgebra::trivial(r));
        let mut delta = Matrix::zeros(r, 4, 16);
        let mut eps = Matrix::zeros(r, 4, 1);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    delta.set(2 * i + j, (2 * i + k) * 4 + 2 * k + j, r.one());
                }
                if i == j {
                    eps.set(2 * i + j, 0, r.one());
                }
            }
        }
        let id = vec![Matrix::identity(r, 4)];
        Coalgebroid::new(&b, Presentation::free(r, 4), id.clone(), id, delta, eps).unwrap()
    }

    #[test]
    fn comatrix_coalgebra_passes() {
        let r = Ring::prime_field(3).unwrap();
        assert!(check_coalgebroid(&comatrix(&r)).is_pass());
    }

    #[test]
    fn trivial_coalgebroid_passes() {
        let r = Ring::integers_mod(6).unwrap();
        let b = Arc::new(BAlgebra::split(&r, 2));
        assert!(check_coalgebroid(&Coalgebroid::trivial(&b)).is_pass());
        let b = Arc::new(BAlgebra::trivial(&r));
        assert!(check_coalgebroid(&Coalgebroid::trivial(&b)).is_pass());
    }

    #[test]
    fn grouplike_with_zero_counit_fails() {
        let r = Ring::prime_field(3).unwrap();
        let b = Arc::new(BAlgebra::trivial(&r));
        let id = vec![Matrix::identity(&r, 1)];
        let c = Coalgebroid::new(&b, Presentation::free(&r, 1), id.clone(), id, Matrix::from_i64(&r, &[&[1]]), Matrix::zeros(&r, 1, 1))
            .unwrap();
        let report = check_coalgebroid(&c);
        assert!(report.has("left-counit"));
    }

    #[test]
    fn regular_comodule_and_scaled_coaction() {
        let r = Ring::prime_field(5).unwrap();
        let c = Arc::new(comatrix(&r));
        let reg = c.regular_comodule();
        assert!(check_comodule(&reg).is_pass());
        let scaled = Comodule::new(&c, reg.module().clone(), reg.coaction().scale(&r.from_i64(2))).unwrap();
        assert!(check_comodule(&scaled).has("coaction-counit"));
        let homs = comodule_hom_space(&reg, &reg).unwrap();
        assert!(homs.maps.iter().all(|f| is_comodule_map(&reg, &reg, f)));
        // right multiplications by the dual algebra: 2x2 matrices
        assert_eq!(homs.module.presentation().structure().free_rank, 4);
    }

    #[test]
    fn zero_comodule() {
        let r = Ring::prime_field(5).unwrap();
        let c = Arc::new(comatrix(&r));
        let b = c.algebra().clone();
        let zero = Comodule::new(&c, BModule::free(&b, 0), Matrix::zeros(&r, 0, 0)).unwrap();
        assert!(check_comodule(&zero).is_pass());
        let homs = comodule_hom_space(&c.regular_comodule(), &zero).unwrap();
        assert!(homs.module.presentation().is_zero_module());
    }
}
