//! Monoidal structure on a category and its fiber functor, and what it
//! induces on the coend: a commutative bialgebroid, an antipode from duals,
//! and the two fusion operators.
//!
//! Hom elements are coordinate vectors over the hom generators. The tensor
//! of morphisms is stored per quadruple of objects `(a, b, x, y)` as a table
//! with row `i * |Hom(x,y)| + j` holding `f_i ⊗ g_j ∈ Hom(a⊗x, b⊗y)`.

use std::sync::Arc;

use crate::algebra::{hat_vector, scale_vector, BAlgebra, BMatrix};
use crate::category::{LinearCategory, LinearFunctor};
use crate::coalgebroid::Coalgebroid;
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::matrix::{vec_ops, Matrix};
use crate::modules::{balanced_tensor, injectivity_witness, surjectivity_witness, Presentation};
use crate::reconstruct::CoendPresentation;
use crate::report::CheckReport;
use crate::ring::Scalar;
use crate::system::LinearSystem;

#[derive(Clone, Debug)]
pub struct MonoidalData {
    n: usize,
    /// `a ⊗ b` at index `a * n + b`.
    pub tensor: Vec<usize>,
    pub unit: usize,
    pub tensor_maps: Vec<Matrix>,
    /// `(a⊗b)⊗x → a⊗(b⊗x)` at index `(a * n + b) * n + x`.
    pub associator: Vec<Vec<Scalar>>,
    /// `I⊗a → a`
    pub left_unitor: Vec<Vec<Scalar>>,
    /// `a⊗I → a`
    pub right_unitor: Vec<Vec<Scalar>>,
}

impl MonoidalData {
    pub fn new(
        c: &LinearCategory,
        tensor: Vec<usize>,
        unit: usize,
        tensor_maps: Vec<Matrix>,
        associator: Vec<Vec<Scalar>>,
        left_unitor: Vec<Vec<Scalar>>,
        right_unitor: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let n = c.len();
        if tensor.len() != n * n || tensor.iter().any(|&t| t >= n) || (n > 0 && unit >= n) {
            return Err(Error::InvalidInput("tensor table must map pairs of objects to objects".into()));
        }
        let m = MonoidalData { n, tensor, unit, tensor_maps, associator, left_unitor, right_unitor };
        if m.tensor_maps.len() != n * n * n * n {
            return Err(Error::DimensionMismatch("one tensor table per quadruple of objects required".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        let t = &m.tensor_maps[m.quad(a, b, x, y)];
                        let want = (c.hom(a, b).len() * c.hom(x, y).len(), c.hom(m.obj(a, x), m.obj(b, y)).len());
                        if t.shape() != want {
                            return Err(Error::DimensionMismatch(format!(
                                "tensor table for ({}, {}, {}, {}) has shape {:?}, expected {want:?}",
                                c.objects()[a],
                                c.objects()[b],
                                c.objects()[x],
                                c.objects()[y],
                                t.shape()
                            )));
                        }
                    }
                }
            }
        }
        if m.associator.len() != n * n * n || m.left_unitor.len() != n || m.right_unitor.len() != n {
            return Err(Error::DimensionMismatch("associator and unitors must cover every object".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for x in 0..n {
                    let src = m.obj(m.obj(a, b), x);
                    let dst = m.obj(a, m.obj(b, x));
                    if m.associator[(a * n + b) * n + x].len() != c.hom(src, dst).len() {
                        return Err(Error::DimensionMismatch("associator component has the wrong length".into()));
                    }
                }
            }
            if m.left_unitor[a].len() != c.hom(m.obj(unit, a), a).len()
                || m.right_unitor[a].len() != c.hom(m.obj(a, unit), a).len()
            {
                return Err(Error::DimensionMismatch("unitor component has the wrong length".into()));
            }
        }
        Ok(m)
    }

    pub fn obj(&self, a: usize, b: usize) -> usize {
        self.tensor[a * self.n + b]
    }

    fn quad(&self, a: usize, b: usize, x: usize, y: usize) -> usize {
        ((a * self.n + b) * self.n + x) * self.n + y
    }

    pub fn associator_at(&self, a: usize, b: usize, x: usize) -> &[Scalar] {
        &self.associator[(a * self.n + b) * self.n + x]
    }

    /// `f ⊗ g` for `f ∈ Hom(a, b)` and `g ∈ Hom(x, y)`.
    pub fn tensor_hom(&self, c: &LinearCategory, (a, b): (usize, usize), (x, y): (usize, usize), f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let t = &self.tensor_maps[self.quad(a, b, x, y)];
        if t.rows() == 0 {
            return vec![c.ring().zero(); t.cols()];
        }
        t.apply(&vec_ops::kron(c.ring(), f, g))
    }
}

/// Structure maps `ψ_{a,b} : w(a) ⊗_B w(b) → w(a⊗b)` and `ψ_0 : B → w(I)`
/// as `B`-matrices, the source indexed by `i * rank(b) + j`.
#[derive(Clone, Debug)]
pub struct FiberMonoidal {
    pub psi: Vec<BMatrix>,
    pub unit: BMatrix,
}

#[derive(Clone, Debug)]
pub struct SymmetryData {
    /// `a⊗b → b⊗a` at index `a * n + b`.
    pub braiding: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct DualityData {
    pub dual: Vec<usize>,
    /// `a^∨ ⊗ a → I`
    pub evaluation: Vec<Vec<Scalar>>,
    /// `I → a ⊗ a^∨`
    pub coevaluation: Vec<Vec<Scalar>>,
}

/// A fiber functor with monoidal data, optionally symmetric and with duals.
#[derive(Clone, Debug)]
pub struct MonoidalFiber {
    pub functor: Arc<LinearFunctor>,
    pub monoidal: MonoidalData,
    pub fiber: FiberMonoidal,
    pub symmetry: Option<SymmetryData>,
    pub duality: Option<DualityData>,
}

/// Coordinates of a hom element whose image under `w` is `m`, if any.
pub fn functor_preimage(w: &LinearFunctor, a: usize, b: usize, m: &BMatrix) -> Option<Vec<Scalar>> {
    let c = w.category();
    let rows = (0..c.hom(a, b).len()).map(|i| w.generator_image(a, b, i).hat_entries()).collect();
    let width = w.rank(a) * w.rank(b) * w.algebra().rank();
    let span = Matrix::from_rows(w.ring(), width, rows).expect("shapes agree");
    Echelon::new(&span).solve(&m.hat_entries())
}

/// Inverse of `f ∈ Hom(a, b)` in the category, if it has one.
pub fn inverse_in(c: &LinearCategory, a: usize, b: usize, f: &[Scalar]) -> Option<Vec<Scalar>> {
    let ring = c.ring();
    let k = c.hom(b, a).len();
    let rows_after = (0..k).map(|j| c.compose(a, b, a, f, &c.generator(b, a, j))).collect();
    let rows_before = (0..k).map(|j| c.compose(b, a, b, &c.generator(b, a, j), f)).collect();
    let mut system = LinearSystem::new(ring, k);
    system.constrain(
        Matrix::from_rows(ring, c.hom(a, a).len(), rows_after).ok()?,
        Some(c.identity(a).to_vec()),
        Some(c.hom(a, a).presentation.relations().clone()),
    );
    system.constrain(
        Matrix::from_rows(ring, c.hom(b, b).len(), rows_before).ok()?,
        Some(c.identity(b).to_vec()),
        Some(c.hom(b, b).presentation.relations().clone()),
    );
    system.particular_solution()
}

fn swap(algebra: &Arc<BAlgebra>, ra: usize, rb: usize) -> BMatrix {
    let mut s = BMatrix::zeros(algebra, ra * rb, rb * ra);
    for i in 0..ra {
        for j in 0..rb {
            s.set(i * rb + j, j * ra + i, algebra.unit().clone());
        }
    }
    s
}

impl MonoidalFiber {
    /// Builds the monoidal data from the tensor on objects and `ψ`, reading
    /// every structure morphism off its image under a faithful functor.
    pub fn derive(
        w: &Arc<LinearFunctor>,
        tensor: Vec<usize>,
        unit: usize,
        fiber: FiberMonoidal,
        symmetric: bool,
        duals: Option<Vec<(usize, BMatrix, BMatrix)>>,
    ) -> Result<Self> {
        let c = w.category();
        let n = c.len();
        let algebra = w.algebra();
        let ring = w.ring();
        if tensor.len() != n * n || fiber.psi.len() != n * n {
            return Err(Error::DimensionMismatch("tensor and ψ must cover every pair of objects".into()));
        }
        let obj = |a: usize, b: usize| tensor[a * n + b];
        let psi = |a: usize, b: usize| &fiber.psi[a * n + b];
        let inv = |m: &BMatrix, what: &str| m.inverse().ok_or_else(|| Error::NotInvertible(what.to_string()));
        let pre = |a: usize, b: usize, m: &BMatrix, what: String| {
            functor_preimage(w, a, b, m).ok_or_else(|| Error::InvalidInput(format!("{what} is not the image of a morphism")))
        };
        let mut tensor_maps = Vec::with_capacity(n * n * n * n);
        for a in 0..n {
            for b in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        let (src, dst) = (obj(a, x), obj(b, y));
                        let psi_inv = inv(psi(a, x), "ψ")?;
                        let mut rows = Vec::new();
                        for i in 0..c.hom(a, b).len() {
                            for j in 0..c.hom(x, y).len() {
                                let k = w.generator_image(a, b, i).kron(w.generator_image(x, y, j));
                                let m = psi_inv.mul(&k).mul(psi(b, y));
                                rows.push(pre(src, dst, &m, format!("tensor of generators {i} and {j}"))?);
                            }
                        }
                        tensor_maps.push(Matrix::from_rows(ring, c.hom(src, dst).len(), rows)?);
                    }
                }
            }
        }
        let mut associator = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for x in 0..n {
                    let ia = BMatrix::identity(algebra, w.rank(a));
                    let ix = BMatrix::identity(algebra, w.rank(x));
                    let left = psi(a, b).kron(&ix).mul(psi(obj(a, b), x));
                    let right = ia.kron(psi(b, x)).mul(psi(a, obj(b, x)));
                    let m = inv(&left, "ψ")?.mul(&right);
                    associator.push(pre(obj(obj(a, b), x), obj(a, obj(b, x)), &m, "associator".into())?);
                }
            }
        }
        let mut left_unitor = Vec::with_capacity(n);
        let mut right_unitor = Vec::with_capacity(n);
        for a in 0..n {
            let ia = BMatrix::identity(algebra, w.rank(a));
            let l = inv(&fiber.unit.kron(&ia).mul(psi(unit, a)), "ψ_0")?;
            left_unitor.push(pre(obj(unit, a), a, &l, "left unitor".into())?);
            let r = inv(&ia.kron(&fiber.unit).mul(psi(a, unit)), "ψ_0")?;
            right_unitor.push(pre(obj(a, unit), a, &r, "right unitor".into())?);
        }
        let monoidal = MonoidalData::new(c, tensor.clone(), unit, tensor_maps, associator, left_unitor, right_unitor)?;
        let symmetry = if symmetric {
            let mut braiding = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    let m = inv(psi(a, b), "ψ")?.mul(&swap(algebra, w.rank(a), w.rank(b))).mul(psi(b, a));
                    braiding.push(pre(obj(a, b), obj(b, a), &m, "braiding".into())?);
                }
            }
            Some(SymmetryData { braiding })
        } else {
            None
        };
        let duality = match duals {
            None => None,
            Some(list) => {
                if list.len() != n {
                    return Err(Error::DimensionMismatch("one dual per object required".into()));
                }
                let mut dual = Vec::with_capacity(n);
                let mut evaluation = Vec::with_capacity(n);
                let mut coevaluation = Vec::with_capacity(n);
                for (a, (d, ev, coev)) in list.into_iter().enumerate() {
                    evaluation.push(pre(obj(d, a), unit, &ev, "evaluation".into())?);
                    coevaluation.push(pre(unit, obj(a, d), &coev, "coevaluation".into())?);
                    dual.push(d);
                }
                Some(DualityData { dual, evaluation, coevaluation })
            }
        };
        Ok(MonoidalFiber { functor: w.clone(), monoidal, fiber, symmetry, duality })
    }

    fn category(&self) -> &LinearCategory {
        self.functor.category()
    }

    fn psi(&self, a: usize, b: usize) -> &BMatrix {
        &self.fiber.psi[a * self.category().len() + b]
    }
}

/// `maps[0]` then `maps[1]` ... along `objs`.
fn chain(c: &LinearCategory, objs: &[usize], maps: &[&[Scalar]]) -> Vec<Scalar> {
    debug_assert_eq!(objs.len(), maps.len() + 1);
    let mut acc = maps[0].to_vec();
    for k in 1..maps.len() {
        acc = c.compose(objs[0], objs[k], objs[k + 1], &acc, maps[k]);
    }
    acc
}

/// Tensor and structure morphisms: well-definedness, bifunctoriality,
/// invertibility, naturality, pentagon and triangle.
pub fn check_monoidal(c: &LinearCategory, m: &MonoidalData) -> CheckReport {
    let mut report = CheckReport::new();
    let n = c.len();
    let o = |a: usize| c.objects()[a].as_str();
    let eq = |a: usize, b: usize, u: &[Scalar], v: &[Scalar]| c.hom(a, b).presentation.equal_vectors(u, v);
    let t = |ab: (usize, usize), xy: (usize, usize), f: &[Scalar], g: &[Scalar]| m.tensor_hom(c, ab, xy, f, g);
    let id = |a: usize| c.identity(a).to_vec();
    let unit = m.unit;
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let (src, dst) = (m.obj(a, x), m.obj(b, y));
                    let rel = c.hom(a, b).presentation.relations();
                    for r in 0..rel.rows() {
                        for j in 0..c.hom(x, y).len() {
                            if !c.hom(src, dst).presentation.is_zero_vector(&t((a, b), (x, y), rel.row(r), &c.generator(x, y, j))) {
                                report.fail("tensor-well-defined", format!("relation {r} of Hom({},{}) ⊗ generator {j}", o(a), o(b)), "tensor of a relation is nonzero");
                            }
                        }
                    }
                    let rel = c.hom(x, y).presentation.relations();
                    for r in 0..rel.rows() {
                        for i in 0..c.hom(a, b).len() {
                            if !c.hom(src, dst).presentation.is_zero_vector(&t((a, b), (x, y), &c.generator(a, b, i), rel.row(r))) {
                                report.fail("tensor-well-defined", format!("generator {i} ⊗ relation {r} of Hom({},{})", o(x), o(y)), "tensor of a relation is nonzero");
                            }
                        }
                    }
                }
            }
            let ab = m.obj(a, b);
            if !eq(ab, ab, &t((a, a), (b, b), &id(a), &id(b)), &id(ab)) {
                report.fail("tensor-identity", format!("({}, {})", o(a), o(b)), "id ⊗ id is not the identity");
            }
        }
    }
    // interchange on generators
    for a in 0..n {
        for a2 in 0..n {
            for a3 in 0..n {
                for x in 0..n {
                    for x2 in 0..n {
                        for x3 in 0..n {
                            let (s, mid, e) = (m.obj(a, x), m.obj(a2, x2), m.obj(a3, x3));
                            for i in 0..c.hom(a, a2).len() {
                                let f = c.generator(a, a2, i);
                                for i2 in 0..c.hom(a2, a3).len() {
                                    let f2 = c.generator(a2, a3, i2);
                                    let ff = c.compose(a, a2, a3, &f, &f2);
                                    for j in 0..c.hom(x, x2).len() {
                                        let g = c.generator(x, x2, j);
                                        for j2 in 0..c.hom(x2, x3).len() {
                                            let g2 = c.generator(x2, x3, j2);
                                            let gg = c.compose(x, x2, x3, &g, &g2);
                                            let lhs = c.compose(s, mid, e, &t((a, a2), (x, x2), &f, &g), &t((a2, a3), (x2, x3), &f2, &g2));
                                            let rhs = t((a, a3), (x, x3), &ff, &gg);
                                            if !eq(s, e, &lhs, &rhs) {
                                                report.fail(
                                                    "tensor-interchange",
                                                    format!("generators {i},{i2} of {}→{}→{} and {j},{j2} of {}→{}→{}", o(a), o(a2), o(a3), o(x), o(x2), o(x3)),
                                                    "(f⊗g)(f'⊗g') differs from ff'⊗gg'",
                                                );
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for a in 0..n {
        if inverse_in(c, m.obj(unit, a), a, &m.left_unitor[a]).is_none() {
            report.fail("left-unitor-invertible", o(a), "no inverse");
        }
        if inverse_in(c, m.obj(a, unit), a, &m.right_unitor[a]).is_none() {
            report.fail("right-unitor-invertible", o(a), "no inverse");
        }
        for b in 0..n {
            for x in 0..n {
                if inverse_in(c, m.obj(m.obj(a, b), x), m.obj(a, m.obj(b, x)), m.associator_at(a, b, x)).is_none() {
                    report.fail("associator-invertible", format!("({}, {}, {})", o(a), o(b), o(x)), "no inverse");
                }
            }
        }
    }
    // naturality, one variable at a time
    for a in 0..n {
        for a2 in 0..n {
            for g in 0..c.hom(a, a2).len() {
                let f = c.generator(a, a2, g);
                for b in 0..n {
                    for x in 0..n {
                        // first slot
                        let (ab, a2b, bx) = (m.obj(a, b), m.obj(a2, b), m.obj(b, x));
                        let lhs = c.compose(
                            m.obj(ab, x),
                            m.obj(a2b, x),
                            m.obj(a2, bx),
                            &t((ab, a2b), (x, x), &t((a, a2), (b, b), &f, &id(b)), &id(x)),
                            m.associator_at(a2, b, x),
                        );
                        let rhs = c.compose(m.obj(ab, x), m.obj(a, bx), m.obj(a2, bx), m.associator_at(a, b, x), &t((a, a2), (bx, bx), &f, &t((b, b), (x, x), &id(b), &id(x))));
                        if !eq(m.obj(ab, x), m.obj(a2, bx), &lhs, &rhs) {
                            report.fail("associator-natural", format!("{} in slot 1 with ({}, {})", c.hom(a, a2).names[g], o(b), o(x)), "naturality square fails");
                        }
                        // middle slot: b ⊗ (a → a2) ⊗ x
                        let (ba, ba2, ax, a2x) = (m.obj(b, a), m.obj(b, a2), m.obj(a, x), m.obj(a2, x));
                        let lhs = c.compose(
                            m.obj(ba, x),
                            m.obj(ba2, x),
                            m.obj(b, a2x),
                            &t((ba, ba2), (x, x), &t((b, b), (a, a2), &id(b), &f), &id(x)),
                            m.associator_at(b, a2, x),
                        );
                        let rhs = c.compose(m.obj(ba, x), m.obj(b, ax), m.obj(b, a2x), m.associator_at(b, a, x), &t((b, b), (ax, a2x), &id(b), &t((a, a2), (x, x), &f, &id(x))));
                        if !eq(m.obj(ba, x), m.obj(b, a2x), &lhs, &rhs) {
                            report.fail("associator-natural", format!("{} in slot 2 with ({}, {})", c.hom(a, a2).names[g], o(b), o(x)), "naturality square fails");
                        }
                        // last slot: b ⊗ x ⊗ (a → a2)
                        let (bx, xa, xa2) = (m.obj(b, x), m.obj(x, a), m.obj(x, a2));
                        let lhs = c.compose(m.obj(bx, a), m.obj(bx, a2), m.obj(b, xa2), &t((bx, bx), (a, a2), &id(bx), &f), m.associator_at(b, x, a2));
                        let rhs = c.compose(m.obj(bx, a), m.obj(b, xa), m.obj(b, xa2), m.associator_at(b, x, a), &t((b, b), (xa, xa2), &id(b), &t((x, x), (a, a2), &id(x), &f)));
                        if !eq(m.obj(bx, a), m.obj(b, xa2), &lhs, &rhs) {
                            report.fail("associator-natural", format!("{} in slot 3 with ({}, {})", c.hom(a, a2).names[g], o(b), o(x)), "naturality square fails");
                        }
                    }
                }
                let (ia, ia2) = (m.obj(unit, a), m.obj(unit, a2));
                let lhs = c.compose(ia, ia2, a2, &t((unit, unit), (a, a2), &id(unit), &f), &m.left_unitor[a2]);
                let rhs = c.compose(ia, a, a2, &m.left_unitor[a], &f);
                if !eq(ia, a2, &lhs, &rhs) {
                    report.fail("left-unitor-natural", c.hom(a, a2).names[g].clone(), "naturality square fails");
                }
                let (ai, a2i) = (m.obj(a, unit), m.obj(a2, unit));
                let lhs = c.compose(ai, a2i, a2, &t((a, a2), (unit, unit), &f, &id(unit)), &m.right_unitor[a2]);
                let rhs = c.compose(ai, a, a2, &m.right_unitor[a], &f);
                if !eq(ai, a2, &lhs, &rhs) {
                    report.fail("right-unitor-natural", c.hom(a, a2).names[g].clone(), "naturality square fails");
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let (ab, bx, xy) = (m.obj(a, b), m.obj(b, x), m.obj(x, y));
                    let s0 = m.obj(m.obj(ab, x), y);
                    let s2 = m.obj(a, m.obj(b, xy));
                    let lhs = chain(c, &[s0, m.obj(ab, xy), s2], &[m.associator_at(ab, x, y), m.associator_at(a, b, xy)]);
                    let (r1, r2) = (m.obj(m.obj(a, bx), y), m.obj(a, m.obj(bx, y)));
                    let step1 = t((m.obj(ab, x), m.obj(a, bx)), (y, y), m.associator_at(a, b, x), &id(y));
                    let step3 = t((a, a), (m.obj(bx, y), m.obj(b, xy)), &id(a), m.associator_at(b, x, y));
                    let rhs = chain(c, &[s0, r1, r2, s2], &[&step1, m.associator_at(a, bx, y), &step3]);
                    if !eq(s0, s2, &lhs, &rhs) {
                        report.fail("pentagon", format!("({}, {}, {}, {})", o(a), o(b), o(x), o(y)), "pentagon does not commute");
                    }
                }
            }
            let (ai, ib) = (m.obj(a, unit), m.obj(unit, b));
            let ab = m.obj(a, b);
            let lhs = c.compose(m.obj(ai, b), m.obj(a, ib), ab, m.associator_at(a, unit, b), &t((a, a), (ib, b), &id(a), &m.left_unitor[b]));
            let rhs = t((ai, a), (b, b), &m.right_unitor[a], &id(b));
            if !eq(m.obj(ai, b), ab, &lhs, &rhs) {
                report.fail("triangle", format!("({}, {})", o(a), o(b)), "triangle does not commute");
            }
        }
    }
    report
}

/// `ψ` is invertible, natural and compatible with the associator and unitors.
pub fn check_fiber_monoidal(mf: &MonoidalFiber) -> CheckReport {
    let mut report = CheckReport::new();
    let w = &mf.functor;
    let c = w.category();
    let m = &mf.monoidal;
    let n = c.len();
    let algebra = w.algebra();
    let o = |a: usize| c.objects()[a].as_str();
    let id = |a: usize| BMatrix::identity(algebra, w.rank(a));
    if mf.fiber.psi.len() != n * n {
        report.fail("psi-shape", "", "one ψ per pair of objects required");
        return report;
    }
    if (mf.fiber.unit.rows(), mf.fiber.unit.cols()) != (1, w.rank(m.unit)) {
        report.fail("psi-shape", "unit", "ψ_0 has the wrong shape");
        return report;
    }
    for a in 0..n {
        for b in 0..n {
            let p = mf.psi(a, b);
            if (p.rows(), p.cols()) != (w.rank(a) * w.rank(b), w.rank(m.obj(a, b))) {
                report.fail("psi-shape", format!("({}, {})", o(a), o(b)), "ψ has the wrong shape");
                return report;
            }
        }
    }
    if !mf.fiber.unit.is_invertible() {
        report.fail("psi-invertible", "unit", "ψ_0 is not invertible");
    }
    for a in 0..n {
        for b in 0..n {
            if !mf.psi(a, b).is_invertible() {
                report.fail("psi-invertible", format!("({}, {})", o(a), o(b)), "ψ is not invertible");
            }
        }
    }
    let tid = |a: usize| c.identity(a).to_vec();
    for a in 0..n {
        for a2 in 0..n {
            for g in 0..c.hom(a, a2).len() {
                let f = c.generator(a, a2, g);
                let wf = w.generator_image(a, a2, g);
                for b in 0..n {
                    let lhs = wf.kron(&id(b)).mul(mf.psi(a2, b));
                    let fb = m.tensor_hom(c, (a, a2), (b, b), &f, &tid(b));
                    let rhs = mf.psi(a, b).mul(&w.map_of(m.obj(a, b), m.obj(a2, b), &fb));
                    if lhs != rhs {
                        report.fail("psi-natural", format!("{} ⊗ {}", c.hom(a, a2).names[g], o(b)), "naturality square fails");
                    }
                    let lhs = id(b).kron(wf).mul(mf.psi(b, a2));
                    let bf = m.tensor_hom(c, (b, b), (a, a2), &tid(b), &f);
                    let rhs = mf.psi(b, a).mul(&w.map_of(m.obj(b, a), m.obj(b, a2), &bf));
                    if lhs != rhs {
                        report.fail("psi-natural", format!("{} ⊗ {}", o(b), c.hom(a, a2).names[g]), "naturality square fails");
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                let (ab, bx) = (m.obj(a, b), m.obj(b, x));
                let alpha = w.map_of(m.obj(ab, x), m.obj(a, bx), m.associator_at(a, b, x));
                let lhs = mf.psi(a, b).kron(&id(x)).mul(mf.psi(ab, x)).mul(&alpha);
                let rhs = id(a).kron(mf.psi(b, x)).mul(mf.psi(a, bx));
                if lhs != rhs {
                    report.fail("psi-hexagon", format!("({}, {}, {})", o(a), o(b), o(x)), "ψ does not match the associator");
                }
            }
        }
        let u = m.unit;
        let l = w.map_of(m.obj(u, a), a, &m.left_unitor[a]);
        if mf.fiber.unit.kron(&id(a)).mul(mf.psi(u, a)).mul(&l) != id(a) {
            report.fail("psi-unit", format!("left at {}", o(a)), "ψ does not match the left unitor");
        }
        let r = w.map_of(m.obj(a, u), a, &m.right_unitor[a]);
        if id(a).kron(&mf.fiber.unit).mul(mf.psi(a, u)).mul(&r) != id(a) {
            report.fail("psi-unit", format!("right at {}", o(a)), "ψ does not match the right unitor");
        }
    }
    report
}

pub fn check_symmetry(mf: &MonoidalFiber, s: &SymmetryData) -> CheckReport {
    let mut report = CheckReport::new();
    let w = &mf.functor;
    let c = w.category();
    let m = &mf.monoidal;
    let n = c.len();
    let o = |a: usize| c.objects()[a].as_str();
    let eq = |a: usize, b: usize, u: &[Scalar], v: &[Scalar]| c.hom(a, b).presentation.equal_vectors(u, v);
    let sigma = |a: usize, b: usize| s.braiding[a * n + b].as_slice();
    let id = |a: usize| c.identity(a).to_vec();
    if s.braiding.len() != n * n
        || (0..n * n).any(|k| s.braiding[k].len() != c.hom(m.obj(k / n, k % n), m.obj(k % n, k / n)).len())
    {
        report.fail("symmetry-shape", "", "braiding components have the wrong shape");
        return report;
    }
    for a in 0..n {
        for b in 0..n {
            let (ab, ba) = (m.obj(a, b), m.obj(b, a));
            if !eq(ab, ab, &c.compose(ab, ba, ab, sigma(a, b), sigma(b, a)), &id(ab)) {
                report.fail("symmetry-involution", format!("({}, {})", o(a), o(b)), "σ_ba σ_ab is not the identity");
            }
            let lhs = mf.psi(a, b).mul(&w.map_of(ab, ba, sigma(a, b)));
            let rhs = swap(w.algebra(), w.rank(a), w.rank(b)).mul(mf.psi(b, a));
            if lhs != rhs {
                report.fail("symmetry-fiber", format!("({}, {})", o(a), o(b)), "w(σ) is not the swap");
            }
            for x in 0..n {
                let (bx, ax) = (m.obj(b, x), m.obj(a, x));
                let s0 = m.obj(ab, x);
                let end = m.obj(b, m.obj(x, a));
                let lhs = chain(c, &[s0, m.obj(a, bx), m.obj(bx, a), end], &[m.associator_at(a, b, x), sigma(a, bx), m.associator_at(b, x, a)]);
                let step1 = m.tensor_hom(c, (ab, ba), (x, x), sigma(a, b), &id(x));
                let step3 = m.tensor_hom(c, (b, b), (ax, m.obj(x, a)), &id(b), sigma(a, x));
                let rhs = chain(c, &[s0, m.obj(ba, x), m.obj(b, ax), end], &[&step1, m.associator_at(b, a, x), &step3]);
                if !eq(s0, end, &lhs, &rhs) {
                    report.fail("symmetry-hexagon", format!("({}, {}, {})", o(a), o(b), o(x)), "hexagon does not commute");
                }
            }
        }
    }
    for a in 0..n {
        for a2 in 0..n {
            for g in 0..c.hom(a, a2).len() {
                let f = c.generator(a, a2, g);
                for b in 0..n {
                    let lhs = c.compose(m.obj(a, b), m.obj(a2, b), m.obj(b, a2), &m.tensor_hom(c, (a, a2), (b, b), &f, &id(b)), sigma(a2, b));
                    let rhs = c.compose(m.obj(a, b), m.obj(b, a), m.obj(b, a2), sigma(a, b), &m.tensor_hom(c, (b, b), (a, a2), &id(b), &f));
                    if !eq(m.obj(a, b), m.obj(b, a2), &lhs, &rhs) {
                        report.fail("symmetry-natural", format!("{} with {}", c.hom(a, a2).names[g], o(b)), "naturality square fails");
                    }
                }
            }
        }
    }
    report
}

pub fn check_duality(mf: &MonoidalFiber, d: &DualityData) -> CheckReport {
    let mut report = CheckReport::new();
    let c = mf.category();
    let m = &mf.monoidal;
    let n = c.len();
    let u = m.unit;
    let o = |a: usize| c.objects()[a].as_str();
    let id = |a: usize| c.identity(a).to_vec();
    if d.dual.len() != n || d.dual.iter().any(|&x| x >= n) || d.evaluation.len() != n || d.coevaluation.len() != n {
        report.fail("duality-shape", "", "one dual with evaluation and coevaluation per object required");
        return report;
    }
    for a in 0..n {
        let da = d.dual[a];
        if d.evaluation[a].len() != c.hom(m.obj(da, a), u).len() || d.coevaluation[a].len() != c.hom(u, m.obj(a, da)).len() {
            report.fail("duality-shape", o(a), "evaluation or coevaluation has the wrong length");
            continue;
        }
        let (ev, coev) = (&d.evaluation[a], &d.coevaluation[a]);
        let (ia, ai, ida, dai) = (m.obj(u, a), m.obj(a, u), m.obj(u, da), m.obj(da, u));
        let (ad, dad) = (m.obj(a, da), m.obj(da, a));
        let (l_inv, r_inv) = (inverse_in(c, ia, a, &m.left_unitor[a]), inverse_in(c, dai, da, &m.right_unitor[da]));
        let alpha_inv = inverse_in(c, m.obj(dad, da), m.obj(da, ad), m.associator_at(da, a, da));
        let (Some(l_inv), Some(r_inv), Some(alpha_inv)) = (l_inv, r_inv, alpha_inv) else {
            report.fail("duality-snake", o(a), "structure morphisms are not invertible");
            continue;
        };
        let s1 = m.tensor_hom(c, (u, ad), (a, a), coev, &id(a));
        let s3 = m.tensor_hom(c, (a, a), (m.obj(da, a), u), &id(a), ev);
        let first = chain(
            c,
            &[a, ia, m.obj(ad, a), m.obj(a, dad), ai, a],
            &[&l_inv, &s1, m.associator_at(a, da, a), &s3, &m.right_unitor[a]],
        );
        if !c.hom(a, a).presentation.equal_vectors(&first, &id(a)) {
            report.fail("duality-snake", format!("{} on {}", o(a), o(a)), "(id⊗ev)(coev⊗id) is not the identity");
        }
        let t1 = m.tensor_hom(c, (da, da), (u, ad), &id(da), coev);
        let t3 = m.tensor_hom(c, (dad, u), (da, da), ev, &id(da));
        let second = chain(
            c,
            &[da, dai, m.obj(da, ad), m.obj(dad, da), ida, da],
            &[&r_inv, &t1, &alpha_inv, &t3, &m.left_unitor[da]],
        );
        if !c.hom(da, da).presentation.equal_vectors(&second, &id(da)) {
            report.fail("duality-snake", format!("{} on its dual", o(a)), "(ev⊗id)(id⊗coev) is not the identity");
        }
    }
    report
}

/// Every piece of monoidal data present.
pub fn check_monoidal_fiber(mf: &MonoidalFiber) -> CheckReport {
    let mut report = check_monoidal(mf.category(), &mf.monoidal);
    report.merge(check_fiber_monoidal(mf));
    if let Some(s) = &mf.symmetry {
        report.merge(check_symmetry(mf, s));
    }
    if let Some(d) = &mf.duality {
        report.merge(check_duality(mf, d));
    }
    report
}

/// The coend with its induced multiplication, unit and the algebra maps
/// `s, t : B → L`.
#[derive(Clone, Debug)]
pub struct Bialgebroid {
    pub coalgebroid: Arc<Coalgebroid>,
    /// `L ⊗_R L → L`
    pub mult: Matrix,
    pub unit: Vec<Scalar>,
    /// `B → L`
    pub source_map: Matrix,
    pub target_map: Matrix,
}

impl Bialgebroid {
    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.mult.apply(&vec_ops::kron(self.coalgebroid.ring(), u, v))
    }

    fn carrier(&self) -> &Presentation {
        self.coalgebroid.carrier()
    }
}

/// `R`-coordinates of `b · e_idx` in `B^r`.
fn scaled_unit(algebra: &BAlgebra, r: usize, idx: usize, b: &[Scalar]) -> Vec<Scalar> {
    let mut v = vec![algebra.zero(); r];
    v[idx] = b.to_vec();
    hat_vector(&v)
}

/// `ι_A(x⊗φ) · ι_A'(y⊗χ) = ι_{A⊗A'}(ψ(x⊗y) ⊗ (φ⊗χ)ψ^{-1})`, and
/// `s(b) = ι_I(bψ_0(1) ⊗ ψ_0^{-1})`, `t(b) = ι_I(ψ_0(1) ⊗ bψ_0^{-1})`.
pub fn induced_bialgebroid(p: &CoendPresentation, coalgebroid: &Arc<Coalgebroid>, mf: &MonoidalFiber) -> Result<Bialgebroid> {
    let w = p.functor();
    let n = w.category().len();
    let algebra = p.algebra();
    let ring = p.ring();
    let d = algebra.rank();
    let total = p.total_ambient();
    let m = p.ambient();
    let mon = &mf.monoidal;
    let mut mult_total = Matrix::zeros(ring, total * total, m);
    for a in 0..n {
        for a2 in 0..n {
            let (ra, rb) = (w.rank(a), w.rank(a2));
            if ra == 0 || rb == 0 {
                continue;
            }
            let ab = mon.obj(a, a2);
            let psi = mf.psi(a, a2);
            let psi_hat = psi.hat();
            let dual_hat = psi
                .inverse()
                .ok_or_else(|| Error::NotInvertible(format!("ψ at ({a}, {a2})")))?
                .transpose()
                .hat();
            let (ma, mb) = (ra * d, rb * d);
            for i in 0..ra {
                for l in 0..d {
                    for k in 0..ra {
                        for l2 in 0..d {
                            let row1 = p.component_offset(a) + (i * d + l) * ma + (k * d + l2);
                            for j in 0..rb {
                                for q in 0..d {
                                    let x = psi_hat.apply(&scaled_unit(algebra, ra * rb, i * rb + j, &algebra.mul(&algebra.basis(l), &algebra.basis(q))));
                                    for k2 in 0..rb {
                                        for q2 in 0..d {
                                            let phi = dual_hat.apply(&scaled_unit(
                                                algebra,
                                                ra * rb,
                                                k * rb + k2,
                                                &algebra.mul(&algebra.basis(l2), &algebra.basis(q2)),
                                            ));
                                            let row2 = p.component_offset(a2) + (j * d + q) * mb + (k2 * d + q2);
                                            let v = p.insert(ab, &x, &phi);
                                            for (col, s) in v.into_iter().enumerate() {
                                                mult_total.set(row1 * total + row2, col, s);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let carrier = coalgebroid.carrier();
    let rel = p.total_relations();
    let id_total = Matrix::identity(ring, total);
    if let Some(r) = carrier.nonzero_row(&rel.kron(&id_total).mul(&mult_total)) {
        return Err(Error::NotWellDefined(format!("multiplication does not vanish on relation row {r} in the left factor")));
    }
    if let Some(r) = carrier.nonzero_row(&id_total.kron(rel).mul(&mult_total)) {
        return Err(Error::NotWellDefined(format!("multiplication does not vanish on relation row {r} in the right factor")));
    }
    let sect = p.section();
    let mult = sect.kron(sect).mul(&mult_total);

    let u = mon.unit;
    let ru = w.rank(u);
    let psi0 = &mf.fiber.unit;
    let psi0_hat = psi0.hat();
    let dual0_hat = psi0.inverse().ok_or_else(|| Error::NotInvertible("ψ_0".into()))?.transpose().hat();
    let one = hat_vector(&[algebra.unit().clone()]);
    let image_of_one = psi0_hat.apply(&one);
    let functional = dual0_hat.apply(&one);
    let mut source_rows = Vec::with_capacity(d);
    let mut target_rows = Vec::with_capacity(d);
    for l in 0..d {
        let b = hat_vector(&[algebra.basis(l)]);
        source_rows.push(if ru == 0 { vec![ring.zero(); m] } else { p.insert(u, &psi0_hat.apply(&b), &functional) });
        target_rows.push(if ru == 0 { vec![ring.zero(); m] } else { p.insert(u, &image_of_one, &dual0_hat.apply(&b)) });
    }
    let unit = if ru == 0 { vec![ring.zero(); m] } else { p.insert(u, &image_of_one, &functional) };
    Ok(Bialgebroid {
        coalgebroid: coalgebroid.clone(),
        mult,
        unit,
        source_map: Matrix::from_rows(ring, m, source_rows)?,
        target_map: Matrix::from_rows(ring, m, target_rows)?,
    })
}

/// Algebra axioms, compatibility of `s`, `t` with the bimodule structure and
/// multiplicativity of `Δ` and `ε`.
pub fn check_bialgebroid(bi: &Bialgebroid, commutative: bool) -> CheckReport {
    let mut report = CheckReport::new();
    let c = &bi.coalgebroid;
    let ring = c.ring();
    let algebra = c.algebra();
    let d = algebra.rank();
    let m = c.ambient();
    let carrier = bi.carrier();
    let e = |i: usize| Matrix::unit_vector(ring, m, i);
    for i in 0..m {
        for j in 0..m {
            let ij = bi.mul(&e(i), &e(j));
            for k in 0..m {
                let lhs = bi.mul(&ij, &e(k));
                let rhs = bi.mul(&e(i), &bi.mul(&e(j), &e(k)));
                if !carrier.equal_vectors(&lhs, &rhs) {
                    report.fail("mult-associative", format!("generators ({i}, {j}, {k})"), "(uv)w differs from u(vw)");
                }
            }
            if commutative && !carrier.equal_vectors(&ij, &bi.mul(&e(j), &e(i))) {
                report.fail("mult-commutative", format!("generators ({i}, {j})"), "uv differs from vu");
            }
        }
        if !carrier.equal_vectors(&bi.mul(&bi.unit, &e(i)), &e(i)) || !carrier.equal_vectors(&bi.mul(&e(i), &bi.unit), &e(i)) {
            report.fail("mult-unit", format!("generator {i}"), "1 is not a unit");
        }
    }
    for (name, map, action) in [("source", &bi.source_map, c.source_action()), ("target", &bi.target_map, c.target_action())] {
        let image = |b: &[Scalar]| map.apply(b);
        if !carrier.equal_vectors(&image(algebra.unit()), &bi.unit) {
            report.fail(&format!("{name}-algebra-map"), "unit", "1 is not sent to 1");
        }
        for l in 0..d {
            for l2 in 0..d {
                let lhs = image(&algebra.mul(&algebra.basis(l), &algebra.basis(l2)));
                let rhs = bi.mul(map.row(l), map.row(l2));
                if !carrier.equal_vectors(&lhs, &rhs) {
                    report.fail(&format!("{name}-algebra-map"), format!("(b{l}, b{l2})"), "not multiplicative");
                }
            }
            for i in 0..m {
                let lhs = action[l].row(i).to_vec();
                let rhs = bi.mul(map.row(l), &e(i));
                if !carrier.equal_vectors(&lhs, &rhs) {
                    report.fail(&format!("{name}-action"), format!("b{l} on generator {i}"), "action is not multiplication by the image of b");
                }
            }
        }
    }
    let delta = c.delta();
    let pair = c.pair();
    if !pair.equal_vectors(&delta.apply(&bi.unit), &vec_ops::kron(ring, &bi.unit, &bi.unit)) {
        report.fail("delta-unit", "", "Δ(1) is not 1⊗1");
    }
    if c.counit().apply(&bi.unit) != *algebra.unit() {
        report.fail("counit-unit", "", "ε(1) is not 1");
    }
    let pair_product = |x: &[Scalar], y: &[Scalar]| {
        let mut out = vec![ring.zero(); m * m];
        for (pq, cx) in x.iter().enumerate() {
            if ring.is_zero(cx) {
                continue;
            }
            for (pq2, cy) in y.iter().enumerate() {
                if ring.is_zero(cy) {
                    continue;
                }
                let left = bi.mul(&e(pq / m), &e(pq2 / m));
                let right = bi.mul(&e(pq % m), &e(pq2 % m));
                vec_ops::axpy(ring, &mut out, &ring.mul(cx, cy), &vec_ops::kron(ring, &left, &right));
            }
        }
        out
    };
    for i in 0..m {
        for j in 0..m {
            let lhs = delta.apply(&bi.mul(&e(i), &e(j)));
            let rhs = pair_product(delta.row(i), delta.row(j));
            if !pair.equal_vectors(&lhs, &rhs) {
                report.fail("delta-multiplicative", format!("generators ({i}, {j})"), "Δ(uv) differs from Δ(u)Δ(v)");
            }
            let lhs = c.counit().apply(&bi.mul(&e(i), &e(j)));
            let rhs = algebra.mul(c.counit().row(i), c.counit().row(j));
            if lhs != rhs {
                report.fail("counit-multiplicative", format!("generators ({i}, {j})"), "ε(uv) differs from ε(u)ε(v)");
            }
        }
    }
    report
}

/// `S(ι_A(x⊗φ)) = ι_{A^∨}(d_A(φ) ⊗ χ_x)` where `d_A` identifies `w(A)^∨` with
/// `w(A^∨)` through the evaluation and `χ_x` is evaluation at `x`.
pub fn induced_antipode(p: &CoendPresentation, mf: &MonoidalFiber) -> Result<Matrix> {
    let duality = mf.duality.as_ref().ok_or_else(|| Error::Precondition("no duals given".into()))?;
    let w = p.functor();
    let c = w.category();
    let mon = &mf.monoidal;
    let algebra = p.algebra();
    let ring = p.ring();
    let d = algebra.rank();
    let m = p.ambient();
    let total = p.total_ambient();
    let psi0_inv = mf.fiber.unit.inverse().ok_or_else(|| Error::NotInvertible("ψ_0".into()))?;
    let mut s_total = Matrix::zeros(ring, total, m);
    for a in 0..c.len() {
        let da = duality.dual[a];
        let (ra, rd) = (w.rank(a), w.rank(da));
        if ra == 0 {
            continue;
        }
        let ev = w.map_of(mon.obj(da, a), mon.unit, &duality.evaluation[a]);
        let pairing = mf.psi(da, a).mul(&ev).mul(&psi0_inv);
        // rows: basis of w(A^∨), columns: basis of w(A)
        let mut pair = BMatrix::zeros(algebra, rd, ra);
        for x in 0..rd {
            for i in 0..ra {
                pair.set(x, i, pairing.get(x * ra + i, 0).clone());
            }
        }
        let dmap = pair.inverse().ok_or_else(|| Error::NotWellDefined(format!("evaluation at {} is not a perfect pairing", c.objects()[a])))?;
        let ma = ra * d;
        for i in 0..ra {
            for l in 0..d {
                let chi = hat_vector(&scale_vector(algebra, &algebra.basis(l), &pair.col(i)));
                for k in 0..ra {
                    for l2 in 0..d {
                        let first = hat_vector(&scale_vector(algebra, &algebra.basis(l2), &dmap.row(k)));
                        let row = p.component_offset(a) + (i * d + l) * ma + (k * d + l2);
                        for (col, s) in p.insert(da, &first, &chi).into_iter().enumerate() {
                            s_total.set(row, col, s);
                        }
                    }
                }
            }
        }
    }
    if let Some(r) = p.carrier().nonzero_row(&p.total_relations().mul(&s_total)) {
        return Err(Error::NotWellDefined(format!("antipode does not vanish on coend relation {r}")));
    }
    Ok(p.section().mul(&s_total))
}

pub fn check_antipode(bi: &Bialgebroid, s: &Matrix) -> CheckReport {
    let mut report = CheckReport::new();
    let c = &bi.coalgebroid;
    let ring = c.ring();
    let m = c.ambient();
    let carrier = bi.carrier();
    if s.shape() != (m, m) {
        report.fail("antipode-shape", "", "antipode has the wrong shape");
        return report;
    }
    if !carrier.receives_well_defined(carrier, s) {
        report.fail("antipode-well-defined", "", "antipode does not respect relations");
    }
    if !carrier.maps_agree(&bi.source_map.mul(s), &bi.target_map) {
        report.fail("antipode-source", "", "S∘s differs from t");
    }
    if !carrier.maps_agree(&bi.target_map.mul(s), &bi.source_map) {
        report.fail("antipode-target", "", "S∘t differs from s");
    }
    if let Some(i) = carrier.maps_differ_at(&s.mul(s), &Matrix::identity(ring, m)) {
        report.fail("antipode-involution", format!("generator {i}"), "S∘S is not the identity");
    }
    let e = |i: usize| Matrix::unit_vector(ring, m, i);
    for i in 0..m {
        for j in 0..m {
            let lhs = s.apply(&bi.mul(&e(i), &e(j)));
            let rhs = bi.mul(s.row(i), s.row(j));
            if !carrier.equal_vectors(&lhs, &rhs) {
                report.fail("antipode-multiplicative", format!("generators ({i}, {j})"), "S(uv) differs from S(u)S(v)");
            }
        }
    }
    let id = Matrix::identity(ring, m);
    let left = c.delta().mul(&s.kron(&id).mul(&bi.mult));
    let right = c.delta().mul(&id.kron(s).mul(&bi.mult));
    let t_eps = c.counit().mul(&bi.target_map);
    let s_eps = c.counit().mul(&bi.source_map);
    if let Some(i) = carrier.maps_differ_at(&left, &t_eps) {
        report.fail("antipode-left", format!("generator {i}"), "μ(S⊗id)Δ differs from t∘ε");
    }
    if let Some(i) = carrier.maps_differ_at(&right, &s_eps) {
        report.fail("antipode-right", format!("generator {i}"), "μ(id⊗S)Δ differs from s∘ε");
    }
    report
}

/// A fusion operator with its balanced source and target.
#[derive(Clone, Debug)]
pub struct Fusion {
    pub map: Matrix,
    pub source: Presentation,
    pub target: Presentation,
    /// A nonzero source element sent to zero.
    pub kernel_witness: Option<Vec<Scalar>>,
    /// A target generator outside the image.
    pub cokernel_witness: Option<usize>,
}

impl Fusion {
    pub fn is_bijective(&self) -> bool {
        self.kernel_witness.is_none() && self.cokernel_witness.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct FusionOperators {
    /// `u ⊗ v ↦ u₁ ⊗ u₂v`
    pub right: Fusion,
    /// `u ⊗ v ↦ u₁v ⊗ u₂`
    pub left: Fusion,
}

impl FusionOperators {
    pub fn is_hopf(&self) -> bool {
        self.right.is_bijective() && self.left.is_bijective()
    }
}

pub fn fusion_operators(bi: &Bialgebroid) -> Result<FusionOperators> {
    let c = &bi.coalgebroid;
    let ring = c.ring();
    let m = c.ambient();
    let carrier = bi.carrier();
    let (s, t) = (c.source_action(), c.target_action());
    let target = c.pair().clone();
    let e = |i: usize| Matrix::unit_vector(ring, m, i);
    let mut right = Matrix::zeros(ring, m * m, m * m);
    let mut left = Matrix::zeros(ring, m * m, m * m);
    for u in 0..m {
        let du = c.delta().row(u);
        for v in 0..m {
            let mut r = vec![ring.zero(); m * m];
            let mut l = vec![ring.zero(); m * m];
            for (pq, coef) in du.iter().enumerate() {
                if ring.is_zero(coef) {
                    continue;
                }
                let (p1, q1) = (pq / m, pq % m);
                vec_ops::axpy(ring, &mut r, coef, &vec_ops::kron(ring, &e(p1), &bi.mul(&e(q1), &e(v))));
                vec_ops::axpy(ring, &mut l, coef, &vec_ops::kron(ring, &bi.mul(&e(p1), &e(v)), &e(q1)));
            }
            for (col, x) in r.into_iter().enumerate() {
                right.set(u * m + v, col, x);
            }
            for (col, x) in l.into_iter().enumerate() {
                left.set(u * m + v, col, x);
            }
        }
    }
    let build = |map: Matrix, source: Presentation| -> Result<Fusion> {
        if !target.receives_well_defined(&source, &map) {
            return Err(Error::NotWellDefined("fusion operator does not respect the balanced tensor".into()));
        }
        let kernel_witness = injectivity_witness(&source, &target, &map);
        let cokernel_witness = surjectivity_witness(&target, &map);
        Ok(Fusion { map, source, target: target.clone(), kernel_witness, cokernel_witness })
    };
    Ok(FusionOperators {
        right: build(right, balanced_tensor(carrier, t, carrier, t))?,
        left: build(left, balanced_tensor(carrier, s, carrier, s))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::reconstruct::{carrier_rank, reconstruct};
    use crate::ring::Ring;

    fn bialgebroid_of(mf: &MonoidalFiber) -> (CoendPresentation, Bialgebroid) {
        let rec = reconstruct(&mf.functor).unwrap();
        assert!(rec.report.is_pass(), "{}", rec.report);
        let bi = induced_bialgebroid(&rec.coend, &rec.coalgebroid, mf).unwrap();
        (rec.coend, bi)
    }

    #[test]
    fn sign_lines_are_hopf() {
        let ring = Ring::prime_field(3).unwrap();
        let mf = fixtures::sign_lines_monoidal(&ring);
        let report = check_monoidal_fiber(&mf);
        assert!(report.is_pass(), "{report}");
        let (p, bi) = bialgebroid_of(&mf);
        let report = check_bialgebroid(&bi, true);
        assert!(report.is_pass(), "{report}");
        // x_- squared is the unit
        let minus = p.insert(1, &[ring.one()], &[ring.one()]);
        assert!(p.carrier().equal_vectors(&bi.mul(&minus, &minus), &bi.unit));
        let s = induced_antipode(&p, &mf).unwrap();
        let report = check_antipode(&bi, &s);
        assert!(report.is_pass(), "{report}");
        let fusion = fusion_operators(&bi).unwrap();
        assert!(fusion.is_hopf());
    }

    #[test]
    fn idempotent_is_not_hopf() {
        let ring = Ring::prime_field(3).unwrap();
        let mf = fixtures::idempotent_monoidal(&ring);
        assert!(check_monoidal_fiber(&mf).is_pass());
        let (p, bi) = bialgebroid_of(&mf);
        assert_eq!(carrier_rank(&p), Some(2));
        assert!(check_bialgebroid(&bi, true).is_pass());
        let fusion = fusion_operators(&bi).unwrap();
        let witness = fusion.right.kernel_witness.clone().expect("right fusion is not injective");
        assert!(!fusion.right.source.is_zero_vector(&witness));
        assert!(fusion.right.target.is_zero_vector(&fusion.right.map.apply(&witness)));
        assert!(!fusion.is_hopf());
        let image_rank = crate::linalg::field_rank(&fusion.right.map).unwrap();
        assert_eq!(image_rank, 3);
        assert!(matches!(induced_antipode(&p, &mf), Err(Error::Precondition(_))));
    }

    #[test]
    fn broken_associator_fails_triangle() {
        let ring = Ring::prime_field(3).unwrap();
        let mut mf = fixtures::sign_lines_monoidal(&ring);
        mf.monoidal.associator[0] = vec![ring.from_i64(2)];
        let report = check_monoidal_fiber(&mf);
        assert!(report.has("triangle"), "{report}");
        assert!(report.has("psi-hexagon"));
    }

    #[test]
    fn wrong_braiding_fails() {
        let ring = Ring::prime_field(3).unwrap();
        let mut mf = fixtures::sign_lines_monoidal(&ring);
        if let Some(s) = mf.symmetry.as_mut() {
            s.braiding[3] = vec![ring.from_i64(2)];
        }
        let report = check_monoidal_fiber(&mf);
        assert!(report.has("symmetry-involution") || report.has("symmetry-fiber"), "{report}");
    }

    #[test]
    fn inverse_in_category() {
        let ring = Ring::prime_field(3).unwrap();
        let w = fixtures::sign_lines(&ring);
        let c = w.category();
        assert_eq!(inverse_in(c, 0, 0, &[ring.from_i64(2)]), Some(vec![ring.from_i64(2)]));
        assert_eq!(inverse_in(c, 0, 0, &[ring.zero()]), None);
    }
}
