//! Finite checkers for the three recognition hypotheses on a fiber functor:
//! faithful and reflecting isomorphisms, cofiltered category of elements,
//! and existence and preservation of cokernels with free image.
//!
//! Enumeration only happens over finite rings. Whenever a search could not
//! be completed the verdict is `Unverified`, never `Pass`.

use std::fmt;

use crate::algebra::{enumerate_vectors, BElem};
use crate::category::{LinearCategory, LinearFunctor};
use crate::linalg;
use crate::matrix::{vec_ops, Matrix};
use crate::modules::{cokernel, injectivity_witness, is_free_over_local, surjectivity_witness, BLinearMap, BModule, Presentation};
use crate::monoidal::inverse_in;
use crate::ring::Scalar;
use crate::system::LinearSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConditionId {
    FaithfulReflectsIsos,
    Cofiltered,
    Cokernels,
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionId::FaithfulReflectsIsos => "i",
            ConditionId::Cofiltered => "ii",
            ConditionId::Cokernels => "iii",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Unverified,
}

/// An object `(A, x)` of the category of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementObject {
    pub object: usize,
    pub element: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A nonzero morphism sent to zero.
    NotFaithful { source: usize, target: usize, element: Vec<Scalar> },
    /// A morphism sent to an isomorphism without being one.
    IsoNotReflected { source: usize, target: usize, element: Vec<Scalar> },
    EmptyCategory,
    /// Two elements with no common cone.
    NoCone { left: ElementObject, right: ElementObject },
    /// Parallel morphisms out of `source` into `target`, differing by
    /// `difference`, that nothing equalizes.
    NoEqualizer { source: ElementObject, target: usize, difference: Vec<Scalar> },
    /// A declared cokernel that fails one of its checks.
    BadCokernel { declaration: usize, check: String, detail: String },
    /// A morphism whose image has a free cokernel but no declared cokernel.
    UndeclaredCokernel { source: usize, target: usize, element: Vec<Scalar> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionReport {
    pub condition: ConditionId,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    /// Whether every enumeration the verdict depends on ran to completion.
    pub exhaustive: bool,
}

impl RecognitionReport {
    fn new(condition: ConditionId) -> Self {
        RecognitionReport { condition, verdict: Verdict::Pass, witnesses: Vec::new(), notes: Vec::new(), exhaustive: true }
    }

    fn fail(&mut self, w: Witness) {
        self.verdict = Verdict::Fail;
        self.witnesses.push(w);
    }

    fn unverified(&mut self, note: impl Into<String>) {
        self.exhaustive = false;
        self.notes.push(note.into());
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Unverified;
        }
    }
}

#[derive(Clone, Debug)]
pub struct RecognitionOptions {
    /// Largest set enumerated in a single search.
    pub bound: usize,
    /// Generators of the maximal ideal of `B` when `B` is local and not the
    /// base ring, used to decide freeness of cokernels.
    pub local_ideal: Option<Vec<BElem>>,
    /// Also require cokernels for every hom element, not only generators.
    pub all_elements: bool,
}

impl Default for RecognitionOptions {
    fn default() -> Self {
        RecognitionOptions { bound: 1 << 12, local_ideal: None, all_elements: true }
    }
}

fn hom_images(w: &LinearFunctor, a: usize, b: usize) -> Matrix {
    let c = w.category();
    let rows = (0..c.hom(a, b).len()).map(|i| w.generator_image(a, b, i).hat_entries()).collect();
    Matrix::from_rows(w.ring(), w.rank(a) * w.rank(b) * w.algebra().rank(), rows).expect("shapes agree")
}

/// Elements of `Hom(a, b)` up to the bound, as coordinate vectors.
fn hom_elements(c: &LinearCategory, a: usize, b: usize, bound: usize) -> Option<Vec<Vec<Scalar>>> {
    enumerate_vectors(c.ring(), c.hom(a, b).len(), bound)
}

pub fn check_condition_i(w: &LinearFunctor, options: &RecognitionOptions) -> RecognitionReport {
    let mut report = RecognitionReport::new(ConditionId::FaithfulReflectsIsos);
    let c = w.category();
    let n = c.len();
    for a in 0..n {
        for b in 0..n {
            let hom = &c.hom(a, b).presentation;
            let ker = linalg::kernel(&hom_images(w, a, b));
            if let Some(r) = hom.nonzero_row(&ker) {
                report.fail(Witness::NotFaithful { source: a, target: b, element: ker.row_vec(r) });
            }
        }
    }
    if !c.ring().is_finite() {
        report.unverified("reflecting isomorphisms needs a finite base ring");
        return report;
    }
    for a in 0..n {
        for b in 0..n {
            if w.rank(a) != w.rank(b) {
                continue;
            }
            let Some(elements) = hom_elements(c, a, b, options.bound) else {
                report.unverified(format!("Hom({}, {}) exceeds the bound", c.objects()[a], c.objects()[b]));
                continue;
            };
            for f in elements {
                if w.map_of(a, b, &f).is_invertible() && inverse_in(c, a, b, &f).is_none() {
                    report.fail(Witness::IsoNotReflected { source: a, target: b, element: f });
                }
            }
        }
    }
    report
}

/// Coefficients of `f ↦ z·w(f)` on `Hom(c, a)`.
fn evaluation_at(w: &LinearFunctor, c: usize, a: usize, z: &[Scalar]) -> Matrix {
    let cat = w.category();
    let rows = (0..cat.hom(c, a).len()).map(|i| w.generator_image(c, a, i).hat().apply(z)).collect();
    Matrix::from_rows(w.ring(), w.rank(a) * w.algebra().rank(), rows).expect("shapes agree")
}

/// Some `f : c → a` with `z·w(f) = x`.
fn reaches(w: &LinearFunctor, c: usize, z: &[Scalar], a: usize, x: &[Scalar]) -> bool {
    let mut system = LinearSystem::new(w.ring(), w.category().hom(c, a).len());
    system.constrain(evaluation_at(w, c, a, z), Some(x.to_vec()), None);
    system.particular_solution().is_some()
}

/// Some `h : c → a` with `z·w(h) = x` and `h;δ = 0`.
fn equalizes(w: &LinearFunctor, c: usize, z: &[Scalar], a: usize, x: &[Scalar], b: usize, delta: &[Scalar]) -> bool {
    let cat = w.category();
    let k = cat.hom(c, a).len();
    let mut system = LinearSystem::new(w.ring(), k);
    system.constrain(evaluation_at(w, c, a, z), Some(x.to_vec()), None);
    let rows = (0..k).map(|i| cat.compose(c, a, b, &cat.generator(c, a, i), delta)).collect();
    system.constrain(
        Matrix::from_rows(w.ring(), cat.hom(c, b).len(), rows).expect("shapes agree"),
        None,
        Some(cat.hom(c, b).presentation.relations().clone()),
    );
    system.particular_solution().is_some()
}

fn fiber_elements(w: &LinearFunctor, a: usize, bound: usize) -> Option<Vec<Vec<Scalar>>> {
    enumerate_vectors(w.ring(), w.rank(a) * w.algebra().rank(), bound)
}

/// All elements of every fiber, or the first object whose fiber is too large.
fn all_element_objects(w: &LinearFunctor, bound: usize) -> Result<Vec<ElementObject>, usize> {
    let mut out = Vec::new();
    for a in 0..w.category().len() {
        let elems = fiber_elements(w, a, bound).ok_or(a)?;
        out.extend(elems.into_iter().map(|element| ElementObject { object: a, element }));
    }
    Ok(out)
}

fn has_cone(w: &LinearFunctor, candidates: &[ElementObject], left: &ElementObject, right: &ElementObject) -> bool {
    candidates.iter().any(|z| {
        reaches(w, z.object, &z.element, left.object, &left.element)
            && reaches(w, z.object, &z.element, right.object, &right.element)
    })
}

fn has_equalizer(w: &LinearFunctor, candidates: &[ElementObject], source: &ElementObject, target: usize, delta: &[Scalar]) -> bool {
    candidates
        .iter()
        .any(|z| equalizes(w, z.object, &z.element, source.object, &source.element, target, delta))
}

/// Nonempty, every pair of elements has a cone, every parallel pair of
/// element-preserving morphisms is equalized, all by exhaustive search.
pub fn check_condition_ii(w: &LinearFunctor, options: &RecognitionOptions) -> RecognitionReport {
    let mut report = RecognitionReport::new(ConditionId::Cofiltered);
    let c = w.category();
    if c.is_empty() {
        report.fail(Witness::EmptyCategory);
        return report;
    }
    if !w.ring().is_finite() {
        report.unverified("cofilteredness is only decided over a finite base ring");
        return report;
    }
    let elements = match all_element_objects(w, options.bound) {
        Ok(e) => e,
        Err(a) => {
            report.unverified(format!("fiber at {} exceeds the bound", c.objects()[a]));
            return report;
        }
    };
    for (i, left) in elements.iter().enumerate() {
        for right in &elements[i..] {
            if !has_cone(w, &elements, left, right) {
                report.fail(Witness::NoCone { left: left.clone(), right: right.clone() });
                return report;
            }
        }
    }
    for source in &elements {
        for b in 0..c.len() {
            let Some(homs) = hom_elements(c, source.object, b, options.bound) else {
                report.unverified(format!("Hom({}, {}) exceeds the bound", c.objects()[source.object], c.objects()[b]));
                continue;
            };
            let hom = &c.hom(source.object, b).presentation;
            for delta in homs {
                if hom.is_zero_vector(&delta) {
                    continue;
                }
                let moved = w.map_of(source.object, b, &delta).hat().apply(&source.element);
                if !vec_ops::is_zero(w.ring(), &moved) {
                    continue;
                }
                if !has_equalizer(w, &elements, source, b, &delta) {
                    report.fail(Witness::NoEqualizer { source: source.clone(), target: b, difference: delta });
                    return report;
                }
            }
        }
    }
    report
}

/// `q : target → quotient` declared as a cokernel of `f : source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelDeclaration {
    pub source: usize,
    pub target: usize,
    pub map: Vec<Scalar>,
    pub quotient: usize,
    pub projection: Vec<Scalar>,
}

/// Failed checks of one declaration as `(check, detail)`.
pub fn check_cokernel_declaration(w: &LinearFunctor, decl: &CokernelDeclaration) -> Vec<(String, String)> {
    let c = w.category();
    let ring = w.ring();
    let (a, b, q) = (decl.source, decl.target, decl.quotient);
    let mut out = Vec::new();
    let n = c.len();
    if a >= n || b >= n || q >= n || decl.map.len() != c.hom(a, b).len() || decl.projection.len() != c.hom(b, q).len() {
        out.push(("declaration-shape".into(), "declaration does not match the hom modules".into()));
        return out;
    }
    if !c.hom(a, q).presentation.is_zero_vector(&c.compose(a, b, q, &decl.map, &decl.projection)) {
        out.push(("cokernel-composite".into(), "q∘f is not zero".into()));
    }
    for x in 0..n {
        // {g : b → x | f;g = 0} = {q;h}, with h unique
        let kb = c.hom(b, x).len();
        let mut system = LinearSystem::new(ring, kb);
        let rows = (0..kb).map(|i| c.compose(a, b, x, &decl.map, &c.generator(b, x, i))).collect();
        system.constrain(
            Matrix::from_rows(ring, c.hom(a, x).len(), rows).expect("shapes agree"),
            None,
            Some(c.hom(a, x).presentation.relations().clone()),
        );
        let killed = system.homogeneous_solutions();
        let kq = c.hom(q, x).len();
        let through_q = Matrix::from_rows(ring, kb, (0..kq).map(|i| c.compose(b, q, x, &decl.projection, &c.generator(q, x, i))).collect())
            .expect("shapes agree");
        let relations_bx = c.hom(b, x).presentation.relations();
        for r in 0..killed.rows() {
            let mut factor = LinearSystem::new(ring, kq);
            factor.constrain(through_q.clone(), Some(killed.row_vec(r)), Some(relations_bx.clone()));
            if factor.particular_solution().is_none() {
                out.push(("cokernel-universal".into(), format!("a map {} → {} killing f does not factor through q", c.objects()[b], c.objects()[x])));
                break;
            }
        }
        let mut unique = LinearSystem::new(ring, kq);
        unique.constrain(through_q, None, Some(relations_bx.clone()));
        if c.hom(q, x).presentation.nonzero_row(&unique.homogeneous_solutions()).is_some() {
            out.push(("cokernel-unique".into(), format!("factorization through q into {} is not unique", c.objects()[x])));
        }
    }
    let wf = BLinearMap::from_b_matrix(&w.map_of(a, b, &decl.map));
    let (coker, _) = cokernel(&wf);
    let wq = w.map_of(b, q, &decl.projection).hat();
    let target = Presentation::free(ring, w.rank(q) * w.algebra().rank());
    if !target.receives_well_defined(coker.presentation(), &wq) {
        out.push(("cokernel-preserved".into(), "w(q) does not vanish on the image of w(f)".into()));
    } else if injectivity_witness(coker.presentation(), &target, &wq).is_some() || surjectivity_witness(&target, &wq).is_some() {
        out.push(("cokernel-preserved".into(), "w(q) does not induce a bijection from the cokernel of w(f)".into()));
    }
    out
}

fn free_over_b(m: &BModule, ideal: Option<&[BElem]>) -> Option<bool> {
    if m.algebra().is_trivial() {
        return Some(m.presentation().structure().is_free());
    }
    let ideal = ideal?;
    is_free_over_local(m, ideal).ok().map(|b| b.is_some())
}

pub fn check_condition_iii(w: &LinearFunctor, declared: &[CokernelDeclaration], options: &RecognitionOptions) -> RecognitionReport {
    let mut report = RecognitionReport::new(ConditionId::Cokernels);
    let c = w.category();
    let n = c.len();
    for (idx, decl) in declared.iter().enumerate() {
        for (check, detail) in check_cokernel_declaration(w, decl) {
            report.fail(Witness::BadCokernel { declaration: idx, check, detail });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let hom = &c.hom(a, b).presentation;
            let mut required: Vec<Vec<Scalar>> = (0..c.hom(a, b).len()).map(|i| c.generator(a, b, i)).collect();
            if options.all_elements {
                match hom_elements(c, a, b, options.bound) {
                    Some(all) => required = all,
                    None => report.unverified(format!("Hom({}, {}) exceeds the bound; only generators were examined", c.objects()[a], c.objects()[b])),
                }
            }
            for f in required {
                // id_b is a cokernel of any zero map and w keeps it one
                if hom.is_zero_vector(&f) {
                    continue;
                }
                let (coker, _) = cokernel(&BLinearMap::from_b_matrix(&w.map_of(a, b, &f)));
                match free_over_b(&coker, options.local_ideal.as_deref()) {
                    Some(false) => continue,
                    None => {
                        report.unverified(format!("freeness of a cokernel over B is undecided for a map {} → {}", c.objects()[a], c.objects()[b]));
                        continue;
                    }
                    Some(true) => {}
                }
                let covered = declared.iter().any(|d| d.source == a && d.target == b && d.map.len() == f.len() && hom.equal_vectors(&d.map, &f));
                if !covered {
                    report.witnesses.push(Witness::UndeclaredCokernel { source: a, target: b, element: f });
                    if report.verdict == Verdict::Pass {
                        report.verdict = Verdict::Unverified;
                    }
                    report.exhaustive = false;
                }
            }
        }
    }
    report
}

/// Re-evaluates the data cited by a witness and confirms the violation.
pub fn replays(w: &LinearFunctor, witness: &Witness, declared: &[CokernelDeclaration], options: &RecognitionOptions) -> bool {
    let c = w.category();
    match witness {
        Witness::NotFaithful { source, target, element } => {
            w.map_of(*source, *target, element).is_zero() && !c.hom(*source, *target).presentation.is_zero_vector(element)
        }
        Witness::IsoNotReflected { source, target, element } => {
            w.map_of(*source, *target, element).is_invertible() && inverse_in(c, *source, *target, element).is_none()
        }
        Witness::EmptyCategory => c.is_empty(),
        Witness::NoCone { left, right } => match all_element_objects(w, options.bound) {
            Ok(all) => !has_cone(w, &all, left, right),
            Err(_) => false,
        },
        Witness::NoEqualizer { source, target, difference } => match all_element_objects(w, options.bound) {
            Ok(all) => !has_equalizer(w, &all, source, *target, difference),
            Err(_) => false,
        },
        Witness::BadCokernel { declaration, check, .. } => declared
            .get(*declaration)
            .is_some_and(|d| check_cokernel_declaration(w, d).iter().any(|(k, _)| k == check)),
        Witness::UndeclaredCokernel { source, target, element } => {
            !c.hom(*source, *target).presentation.is_zero_vector(element)
                && !declared
            .iter()
            .any(|d| d.source == *source && d.target == *target && c.hom(*source, *target).presentation.equal_vectors(&d.map, element))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ring::Ring;

    fn f2() -> Ring {
        Ring::prime_field(2).unwrap()
    }

    #[test]
    fn sum_fixture_passes_i_and_ii() {
        let w = fixtures::lines_and_sum(&f2());
        let opts = RecognitionOptions::default();
        let r1 = check_condition_i(&w, &opts);
        assert_eq!(r1.verdict, Verdict::Pass, "{r1:?}");
        let r2 = check_condition_ii(&w, &opts);
        assert_eq!(r2.verdict, Verdict::Pass, "{r2:?}");
        assert!(r2.exhaustive);
    }

    #[test]
    fn lines_alone_have_no_cone() {
        let w = fixtures::sign_lines(&f2());
        let opts = RecognitionOptions::default();
        let r = check_condition_ii(&w, &opts);
        assert_eq!(r.verdict, Verdict::Fail);
        let one = vec![f2().one()];
        let want = Witness::NoCone {
            left: ElementObject { object: 0, element: one.clone() },
            right: ElementObject { object: 1, element: one },
        };
        assert_eq!(r.witnesses, vec![want.clone()]);
        assert!(replays(&w, &want, &[], &opts));
        assert_eq!(check_condition_i(&w, &opts).verdict, Verdict::Pass);
    }

    #[test]
    fn empty_category_fails_nonemptiness() {
        let w = fixtures::comatrix(&f2(), 1);
        let empty = std::sync::Arc::new(LinearCategory::new(&f2(), Vec::new()));
        let functor = LinearFunctor::new(&empty, w.algebra(), Vec::new(), Vec::new()).unwrap();
        let r = check_condition_ii(&functor, &RecognitionOptions::default());
        assert_eq!(r.witnesses, vec![Witness::EmptyCategory]);
    }

    #[test]
    fn nilpotent_is_not_faithful() {
        let w = fixtures::nilpotent(&f2());
        let r = check_condition_i(&w, &RecognitionOptions::default());
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses[0], Witness::NotFaithful { source: 0, target: 0, element: vec![f2().zero(), f2().one()] });
        assert!(replays(&w, &r.witnesses[0], &[], &RecognitionOptions::default()));
    }

    #[test]
    fn infinite_ring_is_unverified() {
        let w = fixtures::lines_and_sum(&Ring::rationals());
        let opts = RecognitionOptions::default();
        assert_eq!(check_condition_ii(&w, &opts).verdict, Verdict::Unverified);
        assert_eq!(check_condition_i(&w, &opts).verdict, Verdict::Unverified);
    }

    #[test]
    fn declared_cokernels() {
        let ring = f2();
        let w = fixtures::with_zero_object(&ring);
        let (one, zero) = (ring.one(), ring.zero());
        // generators: id_A, id_Z (zero), q
        let decls = vec![
            CokernelDeclaration { source: 0, target: 0, map: vec![one.clone()], quotient: 1, projection: vec![one.clone()] },
            CokernelDeclaration { source: 1, target: 1, map: vec![one.clone()], quotient: 1, projection: vec![one.clone()] },
            CokernelDeclaration { source: 0, target: 1, map: vec![one.clone()], quotient: 1, projection: vec![one.clone()] },
        ];
        let gens_only = RecognitionOptions { all_elements: false, ..Default::default() };
        let r = check_condition_iii(&w, &decls, &gens_only);
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        // zero endomorphism of A with the identity as its cokernel
        let zero_map = CokernelDeclaration { source: 0, target: 0, map: vec![zero.clone()], quotient: 0, projection: vec![one.clone()] };
        assert!(check_cokernel_declaration(&w, &zero_map).is_empty());
        // without declarations everything required is unverified, never pass
        let r = check_condition_iii(&w, &[], &gens_only);
        assert_eq!(r.verdict, Verdict::Unverified);
        assert!(r.witnesses.contains(&Witness::UndeclaredCokernel { source: 0, target: 0, element: vec![one.clone()] }));
        // a wrong declaration fails with a witness that replays
        let bad = vec![CokernelDeclaration { source: 0, target: 0, map: vec![zero], quotient: 1, projection: vec![one] }];
        let r = check_condition_iii(&w, &bad, &gens_only);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witnesses.iter().all(|x| replays(&w, x, &bad, &gens_only)));
    }
}
