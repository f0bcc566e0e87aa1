use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tannaka::algebra::enumerate_vectors;
use tannaka::linalg::{inverse, kernel, normal_form, row_span_contains, smith, solve};
use tannaka::{Matrix, Ring};

fn ring_named(kind: u8) -> Ring {
    match kind {
        0 => Ring::integers(),
        1 => Ring::rationals(),
        2 => Ring::prime_field(5).unwrap(),
        3 => Ring::integers_mod(4).unwrap(),
        4 => Ring::integers_mod(6).unwrap(),
        _ => Ring::integers_mod(9).unwrap(),
    }
}

fn small_ring(kind: u8) -> Ring {
    match kind % 4 {
        0 => Ring::integers_mod(2).unwrap(),
        1 => Ring::integers_mod(3).unwrap(),
        2 => Ring::integers_mod(4).unwrap(),
        _ => Ring::prime_field(3).unwrap(),
    }
}

fn build(ring: &Ring, cols: usize, entries: &[i64]) -> Matrix {
    let rows = entries.chunks(cols).map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect();
    Matrix::from_rows(ring, cols, rows).unwrap()
}

fn matrix_in(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| (Just(c), prop::collection::vec(-9i64..=9, r * c)))
}

proptest! {
    #[test]
    fn normal_form_is_idempotent(kind in 0u8..6, (cols, entries) in matrix_in(4, 4)) {
        let m = build(&ring_named(kind), cols, &entries);
        let nf = normal_form(&m);
        prop_assert_eq!(normal_form(&nf), nf);
    }

    #[test]
    fn normal_form_keeps_the_row_span(kind in 0u8..6, (cols, entries) in matrix_in(4, 4)) {
        let m = build(&ring_named(kind), cols, &entries);
        let nf = normal_form(&m);
        for i in 0..m.rows() {
            prop_assert!(row_span_contains(&nf, m.row(i)));
        }
        for i in 0..nf.rows() {
            prop_assert!(row_span_contains(&m, nf.row(i)));
        }
    }

    #[test]
    fn kernel_rows_annihilate(kind in 0u8..6, (cols, entries) in matrix_in(4, 4)) {
        let m = build(&ring_named(kind), cols, &entries);
        prop_assert!(kernel(&m).mul(&m).is_zero());
    }

    #[test]
    fn kernel_contains_every_solution(kind in 0u8..4, (cols, entries) in matrix_in(3, 3)) {
        let ring = small_ring(kind);
        let m = build(&ring, cols, &entries);
        let k = kernel(&m);
        for x in enumerate_vectors(&ring, m.rows(), 1 << 12).unwrap() {
            if Matrix::row_vector(&ring, x.clone()).mul(&m).is_zero() {
                prop_assert!(solve(&k, &x).is_some(), "{:?} missing from the kernel of {}", x, m);
            }
        }
    }

    #[test]
    fn membership_matches_enumeration(kind in 0u8..4, (cols, entries) in matrix_in(3, 3)) {
        let ring = small_ring(kind);
        let m = build(&ring, cols, &entries);
        let nf = normal_form(&m);
        let span: Vec<Vec<_>> = enumerate_vectors(&ring, m.rows(), 1 << 12)
            .unwrap()
            .into_iter()
            .map(|c| Matrix::row_vector(&ring, c).mul(&m).row(0).to_vec())
            .collect();
        for v in enumerate_vectors(&ring, cols, 1 << 12).unwrap() {
            prop_assert_eq!(solve(&nf, &v).is_some(), span.contains(&v));
        }
    }

    #[test]
    fn smith_decomposes(rows in 1usize..=5, cols in 1usize..=5, seed in prop::collection::vec(-9i64..=9, 25)) {
        let z = Ring::integers();
        let m = build(&z, cols, &seed[..rows * cols]);
        let s = smith(&m).unwrap();
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(inverse(&s.u).is_some() && inverse(&s.v).is_some());
        let factors = s.invariant_factors();
        prop_assert!(factors.iter().all(|d| !d.is_negative()));
        for w in factors.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
    }
}
