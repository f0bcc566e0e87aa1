//! Small worked models used by tests, the acceptance suite and the CLI.

use std::sync::Arc;

use crate::algebra::{BAlgebra, BMatrix};
use crate::category::{concrete_category, ConcreteHom, LinearCategory, LinearFunctor};
use crate::matrix::Matrix;
use crate::monoidal::{FiberMonoidal, MonoidalFiber};
use crate::ring::Ring;

pub(crate) fn scalar_matrix(algebra: &Arc<BAlgebra>, rows: &[&[i64]], cols: usize) -> BMatrix {
    let ring = algebra.ring();
    let m = if rows.is_empty() { Matrix::zeros(ring, 0, cols) } else { Matrix::from_i64(ring, rows) };
    BMatrix::from_scalars(algebra, &m)
}

fn hom(algebra: &Arc<BAlgebra>, source: usize, target: usize, name: &str, rows: &[&[i64]], cols: usize) -> ConcreteHom {
    ConcreteHom { source, target, name: name.into(), matrix: scalar_matrix(algebra, rows, cols) }
}

fn identities(algebra: &Arc<BAlgebra>, ranks: &[usize]) -> Vec<ConcreteHom> {
    ranks
        .iter()
        .enumerate()
        .map(|(a, &r)| ConcreteHom { source: a, target: a, name: format!("id{a}"), matrix: BMatrix::identity(algebra, r) })
        .collect()
}

fn functor(ring: &Ring, objects: &[&str], ranks: Vec<usize>, extra: impl FnOnce(&Arc<BAlgebra>) -> Vec<ConcreteHom>) -> Arc<LinearFunctor> {
    let algebra = Arc::new(BAlgebra::trivial(ring));
    let mut gens = identities(&algebra, &ranks);
    gens.extend(extra(&algebra));
    let (_, w) = concrete_category(&algebra, objects.iter().map(|s| s.to_string()).collect(), ranks, gens)
        .expect("fixture is consistent");
    w
}

/// One object with only scalar endomorphisms, sent to `R^n`.
pub fn comatrix(ring: &Ring, n: usize) -> Arc<LinearFunctor> {
    functor(ring, &["V"], vec![n], |_| Vec::new())
}

/// The two one-dimensional representations of a group of order two,
/// labelled `+` and `-`, with no maps between them.
pub fn sign_lines(ring: &Ring) -> Arc<LinearFunctor> {
    functor(ring, &["+", "-"], vec![1, 1], |_| Vec::new())
}

/// Two rank one objects `e` and `t`, to be made monoidal with `t ⊗ t = t`.
pub fn idempotent_pair(ring: &Ring) -> Arc<LinearFunctor> {
    functor(ring, &["e", "t"], vec![1, 1], |_| Vec::new())
}

/// The lines `+`, `-` and their sum `P`, with inclusions, projections and
/// the two idempotents of `P`.
pub fn lines_and_sum(ring: &Ring) -> Arc<LinearFunctor> {
    functor(ring, &["+", "-", "P"], vec![1, 1, 2], |b| {
        vec![
            hom(b, 0, 2, "i+", &[&[1, 0]], 2),
            hom(b, 1, 2, "i-", &[&[0, 1]], 2),
            hom(b, 2, 0, "p+", &[&[1], &[0]], 1),
            hom(b, 2, 1, "p-", &[&[0], &[1]], 1),
            hom(b, 2, 2, "e+", &[&[1, 0], &[0, 0]], 2),
        ]
    })
}

/// One object with endomorphisms spanned by the identity and a square-zero
/// `n`, sent to `R` with `n ↦ 0`. Not faithful.
pub fn nilpotent(ring: &Ring) -> Arc<LinearFunctor> {
    let algebra = Arc::new(BAlgebra::trivial(ring));
    let mut c = LinearCategory::new(ring, vec!["A".into()]);
    c.set_hom(0, 0, vec!["id".into(), "n".into()], Matrix::zeros(ring, 0, 2)).expect("shapes");
    c.set_identity(0, vec![ring.one(), ring.zero()]).expect("shapes");
    // rows (id,id), (id,n), (n,id), (n,n)
    c.set_composition(0, 0, 0, Matrix::from_i64(ring, &[&[1, 0], &[0, 1], &[0, 1], &[0, 0]])).expect("shapes");
    let c = Arc::new(c);
    let images = vec![vec![BMatrix::identity(&algebra, 1), BMatrix::zeros(&algebra, 1, 1)]];
    Arc::new(LinearFunctor::new(&c, &algebra, vec![1], images).expect("fixture is consistent"))
}

/// An object `A` of rank one and a zero object `Z` with the zero map `q`.
pub fn with_zero_object(ring: &Ring) -> Arc<LinearFunctor> {
    functor(ring, &["A", "Z"], vec![1, 0], |b| vec![hom(b, 0, 1, "q", &[&[]], 0)])
}

/// `B = R × R` with one object sent to the free module of rank one.
pub fn split_base(ring: &Ring) -> Arc<LinearFunctor> {
    let algebra = Arc::new(BAlgebra::split(ring, 2));
    let gens = identities(&algebra, &[1]);
    let (_, w) = concrete_category(&algebra, vec!["V".into()], vec![1], gens).expect("fixture is consistent");
    w
}

fn rank_one_monoidal(w: &Arc<LinearFunctor>, tensor: Vec<usize>, self_dual: bool) -> MonoidalFiber {
    let algebra = w.algebra();
    let one = || BMatrix::identity(algebra, 1);
    let n = w.category().len();
    let fiber = FiberMonoidal { psi: vec![one(); n * n], unit: one() };
    let duals = self_dual.then(|| (0..n).map(|a| (a, one(), one())).collect());
    MonoidalFiber::derive(w, tensor, 0, fiber, true, duals).expect("fixture is consistent")
}

/// [`sign_lines`] with `- ⊗ - = +`, the symmetry and self-duality.
pub fn sign_lines_monoidal(ring: &Ring) -> MonoidalFiber {
    rank_one_monoidal(&sign_lines(ring), vec![0, 1, 1, 0], true)
}

/// [`idempotent_pair`] with unit `e` and `t ⊗ t = t`; `t` has no dual.
pub fn idempotent_monoidal(ring: &Ring) -> MonoidalFiber {
    rank_one_monoidal(&idempotent_pair(ring), vec![0, 1, 1, 1], false)
}
