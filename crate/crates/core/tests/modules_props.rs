use std::sync::Arc;

use proptest::prelude::*;
use tannaka::base_change::RingMap;
use tannaka::linalg::kernel;
use tannaka::matrix::vec_ops;
use tannaka::modules::{cokernel, dual_over_b, tensor_over_b};
use tannaka::{BAlgebra, BLinearMap, BModule, Matrix, Presentation, Ring};

fn dual_numbers(ring: &Ring) -> BAlgebra {
    // basis 1, x with x² = 0
    let (o, z) = (ring.one(), ring.zero());
    let constants = vec![vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]], vec![vec![z.clone(), o], vec![z.clone(), z]]];
    BAlgebra::new(ring, constants, vec![ring.one(), ring.zero()]).unwrap()
}

/// Modules over a few algebras: free ones, torsion and a residue field.
fn fixture_modules() -> Vec<BModule> {
    let z4 = Ring::integers_mod(4).unwrap();
    let f3 = Ring::prime_field(3).unwrap();
    let f2 = Ring::prime_field(2).unwrap();
    let trivial = Arc::new(BAlgebra::trivial(&z4));
    let split = Arc::new(BAlgebra::split(&f3, 2));
    let local = Arc::new(dual_numbers(&f2));
    let torsion = Presentation::new(&z4, 2, Matrix::from_i64(&z4, &[&[2, 0]])).unwrap();
    let first_factor = BModule::new(&split, Presentation::free(&f3, 1), vec![Matrix::identity(&f3, 1), Matrix::zeros(&f3, 1, 1)]).unwrap();
    let residue = BModule::new(&local, Presentation::free(&f2, 1), vec![Matrix::identity(&f2, 1), Matrix::zeros(&f2, 1, 1)]).unwrap();
    vec![
        BModule::free(&trivial, 2),
        BModule::over_base(&trivial, torsion).unwrap(),
        BModule::free(&split, 2),
        first_factor,
        BModule::free(&local, 1),
        residue,
    ]
}

fn unit_maps(m: &BModule, unit_first: bool) -> (BLinearMap, BLinearMap) {
    let b = m.algebra();
    let ring = m.ring();
    let (d, k) = (b.rank(), m.ambient());
    let one = BModule::free(b, 1);
    let pair = if unit_first { tensor_over_b(&one, m) } else { tensor_over_b(m, &one) }.unwrap();
    let mut fwd = Matrix::zeros(ring, pair.ambient(), k);
    for l in 0..d {
        for j in 0..k {
            let row = if unit_first { l * k + j } else { j * d + l };
            let image = m.act(&Matrix::unit_vector(ring, k, j), &b.basis(l));
            for (c, s) in image.into_iter().enumerate() {
                fwd.set(row, c, s);
            }
        }
    }
    let back = (0..k)
        .map(|j| {
            let e = Matrix::unit_vector(ring, k, j);
            if unit_first {
                vec_ops::kron(ring, b.unit(), &e)
            } else {
                vec_ops::kron(ring, &e, b.unit())
            }
        })
        .collect();
    let back = Matrix::from_rows(ring, pair.ambient(), back).unwrap();
    (BLinearMap::new(&pair, m, fwd).unwrap(), BLinearMap::new(m, &pair, back).unwrap())
}

#[test]
fn tensoring_with_the_base_is_trivial() {
    for m in fixture_modules() {
        for unit_first in [true, false] {
            let (fwd, back) = unit_maps(&m, unit_first);
            assert!(fwd.then(&back).unwrap().agrees_with(&BLinearMap::identity(fwd.source())));
            assert!(back.then(&fwd).unwrap().agrees_with(&BLinearMap::identity(&m)));
        }
    }
}

#[test]
fn evaluation_pairing_is_perfect() {
    for m in fixture_modules().into_iter().filter(|m| m.rank().is_some()) {
        let b = m.algebra();
        let ring = m.ring();
        let d = b.rank();
        let dual = dual_over_b(&m).unwrap();
        let r = dual.module.rank().unwrap();
        let dual_basis = dual.module.basis().unwrap().clone();
        // x ↦ (φ ↦ ev(φ ⊗ x)) in the dual basis of the double dual
        let rows = (0..m.ambient())
            .map(|j| {
                let x = Matrix::unit_vector(ring, m.ambient(), j);
                (0..r).flat_map(|i| dual.evaluation.matrix().apply(&vec_ops::kron(ring, dual_basis.row(i), &x))).collect()
            })
            .collect();
        let to_double = Matrix::from_rows(ring, r * d, rows).unwrap();
        let double = dual_over_b(&dual.module).unwrap().module;
        let map = BLinearMap::new(&m, &double, to_double).unwrap();
        assert!(map.is_iso());
    }
}

#[test]
fn cokernels_are_universal() {
    let ring = Ring::integers_mod(6).unwrap();
    let b = Arc::new(BAlgebra::trivial(&ring));
    let maps = [Matrix::from_i64(&ring, &[&[2, 0, 3]]), Matrix::from_i64(&ring, &[&[1, 1, 0], &[0, 3, 3]]), Matrix::zeros(&ring, 1, 3)];
    let target = BModule::free(&b, 3);
    for f in maps {
        let f = BLinearMap::new(&BModule::free(&b, f.rows()), &target, f).unwrap();
        let (quotient, q) = cokernel(&f);
        assert!(f.then(&q).unwrap().is_zero());
        // every g : R^3 → R with f g = 0 factors through q
        let annihilators = kernel(&f.matrix().transpose());
        for i in 0..annihilators.rows() {
            let g = Matrix::row_vector(&ring, annihilators.row(i).to_vec()).transpose();
            let h = BLinearMap::new(&quotient, &BModule::free(&b, 1), g.clone()).unwrap();
            assert!(q.then(&h).unwrap().agrees_with(&BLinearMap::new(&target, &BModule::free(&b, 1), g).unwrap()));
        }
        let stray = Matrix::from_i64(&ring, &[&[1], &[0], &[0]]);
        if !f.matrix().mul(&stray).is_zero() {
            assert!(BLinearMap::new(&quotient, &BModule::free(&b, 1), stray).is_err());
        }
    }
}

fn ring_pair(kind: u8) -> (Ring, Ring) {
    match kind {
        0 => (Ring::integers_mod(4).unwrap(), Ring::integers_mod(2).unwrap()),
        1 => (Ring::integers(), Ring::prime_field(3).unwrap()),
        2 => (Ring::integers(), Ring::integers_mod(6).unwrap()),
        _ => (Ring::integers_mod(12).unwrap(), Ring::integers_mod(3).unwrap()),
    }
}

proptest! {
    #[test]
    fn base_change_is_functorial(kind in 0u8..4, a in prop::collection::vec(-20i64..20, 6), b in prop::collection::vec(-20i64..20, 6)) {
        let (source, target) = ring_pair(kind);
        let h = RingMap::new(&source, &target).unwrap();
        let f = Matrix::from_rows(&source, 3, a.chunks(3).map(|r| r.iter().map(|&x| source.from_i64(x)).collect()).collect()).unwrap();
        let g = Matrix::from_rows(&source, 2, b.chunks(2).map(|r| r.iter().map(|&x| source.from_i64(x)).collect()).collect()).unwrap();
        prop_assert_eq!(h.matrix(&f.mul(&g)), h.matrix(&f).mul(&h.matrix(&g)));
        prop_assert_eq!(h.matrix(&Matrix::identity(&source, 3)), Matrix::identity(&target, 3));
    }
}
