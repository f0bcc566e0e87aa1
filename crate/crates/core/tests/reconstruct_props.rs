use std::sync::Arc;

use proptest::prelude::*;
use tannaka::algebra::BMatrix;
use tannaka::base_change::RingMap;
use tannaka::category::{check_category, check_functor, concrete_category, nat_space, ConcreteHom, LinearFunctor};
use tannaka::coalgebroid::{check_coalgebroid, comodule_hom_space, is_comodule_map, Comodule};
use tannaka::fixtures;
use tannaka::linalg::{inverse, row_span_contains};
use tannaka::reconstruct::{
    base_change_comparison, check_coalgebroid_iso, coend, induced_coalgebroid, rebasing_iso, universal_coaction,
};
use tannaka::{BAlgebra, Matrix, Ring};

fn f5() -> Ring {
    Ring::prime_field(5).unwrap()
}

fn all_fixtures() -> Vec<Arc<LinearFunctor>> {
    let rings = [Ring::prime_field(2).unwrap(), Ring::prime_field(3).unwrap(), Ring::integers_mod(4).unwrap(), Ring::integers()];
    rings
        .iter()
        .flat_map(|r| {
            [
                fixtures::comatrix(r, 2),
                fixtures::sign_lines(r),
                fixtures::idempotent_pair(r),
                fixtures::lines_and_sum(r),
                fixtures::nilpotent(r),
                fixtures::with_zero_object(r),
                fixtures::split_base(r),
            ]
        })
        .collect()
}

/// Every image in the order `LinearFunctor::new` expects.
fn images(w: &LinearFunctor) -> Vec<Vec<BMatrix>> {
    let c = w.category();
    let n = c.len();
    (0..n * n).map(|ab| (0..c.hom(ab / n, ab % n).len()).map(|i| w.generator_image(ab / n, ab % n, i).clone()).collect()).collect()
}

#[test]
fn fixtures_are_categories_and_functors() {
    for w in all_fixtures() {
        assert!(check_category(w.category()).is_pass());
        assert!(check_functor(&w).is_pass());
    }
}

#[test]
fn corrupted_composition_is_reported() {
    let ring = Ring::prime_field(3).unwrap();
    let w = fixtures::lines_and_sum(&ring);
    let mut c = (**w.category()).clone();
    // composites landing in Hom(P, P) get an extra component
    let mut table = c.composition(2, 2, 2).clone();
    let cols = table.cols();
    table.set(0, cols - 1, ring.add(table.get(0, cols - 1), &ring.one()));
    c.set_composition(2, 2, 2, table).unwrap();
    let report = check_category(&c);
    assert!(!report.is_pass());
    assert!(!report.violations.is_empty());
}

#[test]
fn corrupted_functor_is_reported() {
    let ring = Ring::prime_field(3).unwrap();
    let w = fixtures::lines_and_sum(&ring);
    let mut imgs = images(&w);
    let n = w.category().len();
    let e = w.category().hom(2, 2).names.iter().position(|s| s == "e+").unwrap();
    imgs[2 * n + 2][e] = BMatrix::from_scalars(w.algebra(), &Matrix::from_i64(&ring, &[&[0, 1], &[0, 0]]));
    match LinearFunctor::new(w.category(), w.algebra(), w.ranks().to_vec(), imgs) {
        Ok(bad) => assert!(!check_functor(&bad).is_pass()),
        Err(_) => {}
    }
}

#[test]
fn identity_is_natural() {
    for w in all_fixtures() {
        let nat = nat_space(&w, &w).unwrap();
        let hats: Vec<Vec<_>> = nat.families.iter().map(|fam| fam.iter().flat_map(|m| m.hat_entries()).collect()).collect();
        let identity: Vec<_> = (0..w.category().len()).flat_map(|a| BMatrix::identity(w.algebra(), w.rank(a)).hat_entries()).collect();
        let span = Matrix::from_rows(w.ring(), identity.len(), hats).unwrap();
        assert!(row_span_contains(&span, &identity));
    }
}

#[test]
fn coend_relations_hold() {
    for w in all_fixtures() {
        let p = coend(&w).unwrap();
        let c = w.category();
        for a in 0..c.len() {
            for b in 0..c.len() {
                for g in 0..c.hom(a, b).len() {
                    let f = w.generator_image(a, b, g).hat();
                    let ft = f.transpose();
                    for i in 0..f.rows() {
                        for j in 0..f.cols() {
                            let x = Matrix::unit_vector(w.ring(), f.rows(), i);
                            let phi = Matrix::unit_vector(w.ring(), f.cols(), j);
                            let left = p.insert(b, &f.apply(&x), &phi);
                            let right = p.insert(a, &x, &ft.apply(&phi));
                            assert!(p.carrier().equal_vectors(&left, &right));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn reconstructed_structure_passes_its_checks() {
    for w in all_fixtures() {
        let p = coend(&w).unwrap();
        let c = Arc::new(induced_coalgebroid(&p).unwrap());
        assert!(check_coalgebroid(&c).is_pass());
        for a in 0..w.category().len() {
            // counit after insertion is evaluation
            for i in 0..w.rank(a) {
                for j in 0..w.rank(a) {
                    let v = p.insert(a, &p.basis_vector(a, i), &p.basis_vector(a, j));
                    let eps = c.counit().apply(&v);
                    let want = if i == j { w.algebra().unit().clone() } else { w.algebra().zero() };
                    assert_eq!(eps, want);
                }
            }
        }
    }
}

#[test]
fn comodule_maps_satisfy_their_equations() {
    for w in all_fixtures() {
        let p = coend(&w).unwrap();
        let c = Arc::new(induced_coalgebroid(&p).unwrap());
        let coactions: Vec<Comodule> = (0..w.category().len()).map(|a| universal_coaction(&p, &c, a).unwrap()).collect();
        for m in &coactions {
            for n in &coactions {
                let space = comodule_hom_space(m, n).unwrap_or_else(|e| panic!("{} {:?}: {e}", w.ring(), w.category().objects()));
                for f in space.maps {
                    assert!(is_comodule_map(m, n, &f));
                }
            }
        }
    }
}

#[test]
fn base_change_commutes_with_the_coend() {
    let z = Ring::integers();
    let z4 = Ring::integers_mod(4).unwrap();
    let z12 = Ring::integers_mod(12).unwrap();
    let cases = [
        (z.clone(), Ring::prime_field(3).unwrap(), fixtures::lines_and_sum(&z)),
        (z.clone(), Ring::integers_mod(6).unwrap(), fixtures::nilpotent(&z)),
        (z4.clone(), Ring::integers_mod(2).unwrap(), fixtures::comatrix(&z4, 2)),
        (z12.clone(), Ring::integers_mod(4).unwrap(), fixtures::split_base(&z12)),
        (z12.clone(), Ring::integers_mod(3).unwrap(), fixtures::with_zero_object(&z12)),
    ];
    for (source, target, w) in cases {
        let cmp = base_change_comparison(&RingMap::new(&source, &target).unwrap(), &w).unwrap();
        assert!(cmp.report.is_pass(), "{source} → {target}: {}", cmp.report);
    }
}

fn invertible(rows: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0i64..5, rows * rows)
        .prop_map(move |v| {
            let ring = f5();
            Matrix::from_rows(&ring, rows, v.chunks(rows).map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect()).unwrap()
        })
        .prop_filter("invertible", |m| inverse(m).is_some())
}

proptest! {
    #[test]
    fn coalgebroid_is_basis_independent(a in invertible(1), b in invertible(1), p in invertible(2)) {
        let ring = f5();
        let w = fixtures::lines_and_sum(&ring);
        let bases: Vec<BMatrix> = [a, b, p].iter().map(|m| BMatrix::from_scalars(w.algebra(), m)).collect();
        let rebased = Arc::new(w.rebased(&bases).unwrap());
        let (orig, other) = (coend(&w).unwrap(), coend(&rebased).unwrap());
        let (c, d) = (induced_coalgebroid(&orig).unwrap(), induced_coalgebroid(&other).unwrap());
        let iso = rebasing_iso(&orig, &other, &bases).unwrap();
        let report = check_coalgebroid_iso(&d, &c, &iso);
        prop_assert!(report.is_pass(), "{}", report);
    }

    #[test]
    fn coalgebroid_is_natural_in_the_object_order(perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let ring = f5();
        let algebra = Arc::new(BAlgebra::trivial(&ring));
        let w = fixtures::lines_and_sum(&ring);
        let c = w.category();
        // position of the original object a in the new order
        let pos: Vec<usize> = (0..3).map(|a| perm.iter().position(|&x| x == a).unwrap()).collect();
        let mut gens = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for (i, name) in c.hom(a, b).names.iter().enumerate() {
                    gens.push(ConcreteHom { source: pos[a], target: pos[b], name: name.clone(), matrix: w.generator_image(a, b, i).clone() });
                }
            }
        }
        let objects = perm.iter().map(|&a| c.objects()[a].clone()).collect();
        let ranks = perm.iter().map(|&a| w.rank(a)).collect();
        let (_, v) = concrete_category(&algebra, objects, ranks, gens).unwrap();
        let (p, q) = (coend(&w).unwrap(), coend(&v).unwrap());
        let (cw, cv) = (induced_coalgebroid(&p).unwrap(), induced_coalgebroid(&q).unwrap());
        // ι_a(x ⊗ φ) ↦ ι'_{pos a}(x ⊗ φ)
        let mut block = Matrix::zeros(&ring, p.total_ambient(), q.ambient());
        for a in 0..3 {
            let ins = q.insertion(pos[a]);
            for k in 0..ins.rows() {
                for j in 0..ins.cols() {
                    block.set(p.component_offset(a) + k, j, ins.get(k, j).clone());
                }
            }
        }
        let iso = p.section().mul(&block);
        let report = check_coalgebroid_iso(&cw, &cv, &iso);
        prop_assert!(report.is_pass(), "{}", report);
    }
}
