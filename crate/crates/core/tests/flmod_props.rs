use proptest::prelude::*;
use tannaka::flmod::{check_fl_object, fl_hom_space, fl_isomorphism, fl_tensor, fl_to_category, is_fl_morphism, witt_ring, FLObject};
use tannaka::linalg::inverse;
use tannaka::modules::is_free_over_local;
use tannaka::reconstruct::{carrier_rank, reconstruct};
use tannaka::Matrix;

/// `M(0) ⊕ M(1)` written out by hand.
fn zero_plus_one(p: u64, n: u32) -> FLObject {
    let r = witt_ring(p, n).unwrap();
    let m = |rows: &[&[i64]]| Matrix::from_i64(&r, rows);
    FLObject::new(
        "M(0)+M(1)",
        p,
        n,
        2,
        0,
        1,
        vec![m(&[&[1, 0], &[0, 1]]), m(&[&[0, 1]])],
        vec![m(&[&[1, 0], &[0, 1]]), m(&[&[0], &[1]])],
        vec![m(&[&[1, 0], &[0, p as i64]]), m(&[&[0, 1]])],
    )
    .unwrap()
}

/// The same object with each `Fil^i` generated by `u_i · fil[i]`.
fn regenerated(x: &FLObject, us: &[Matrix]) -> FLObject {
    let fil = x.fil.iter().zip(us).map(|(f, u)| u.mul(f)).collect();
    let ret = x.retraction.iter().zip(us).map(|(r, u)| r.mul(&inverse(u).unwrap())).collect();
    let phi = x.phi.iter().zip(us).map(|(f, u)| u.mul(f)).collect();
    FLObject::new("regenerated", x.p, x.n, x.rank, x.low, x.high, fil, ret, phi).unwrap()
}

/// The same object transported along `x ↦ x g`.
fn transported(x: &FLObject, g: &Matrix) -> FLObject {
    let gi = inverse(g).unwrap();
    let fil = x.fil.iter().map(|f| f.mul(g)).collect();
    let ret = x.retraction.iter().map(|r| gi.mul(r)).collect();
    let phi = x.phi.iter().map(|f| f.mul(g)).collect();
    FLObject::new("transported", x.p, x.n, x.rank, x.low, x.high, fil, ret, phi).unwrap()
}

fn unit_matrix(p: u64, n: u32, size: usize) -> impl Strategy<Value = Matrix> {
    let modulus = (p as i64).pow(n);
    prop::collection::vec(0..modulus, size * size)
        .prop_map(move |v| {
            let r = witt_ring(p, n).unwrap();
            Matrix::from_rows(&r, size, v.chunks(size).map(|c| c.iter().map(|&x| r.from_i64(x)).collect()).collect()).unwrap()
        })
        .prop_filter("invertible", |m| inverse(m).is_some())
}

#[test]
fn hand_written_sum_is_an_object() {
    for (p, n) in [(2, 1), (3, 1), (3, 2), (2, 3)] {
        let x = zero_plus_one(p, n);
        assert!(check_fl_object(&x).is_pass(), "{}", check_fl_object(&x));
        let h = fl_hom_space(&x, &x).unwrap();
        // End(M(0)) × End(M(1)), no maps between the summands
        assert_eq!(h.module.structure().free_rank, 2);
        assert!(h.generators.iter().all(|g| is_fl_morphism(&x, &x, g)));
    }
}

#[test]
fn twists_are_flat_coalgebroids() {
    for (p, n) in [(2, 1), (3, 1), (2, 2)] {
        let objects: Vec<FLObject> = (0..2).map(|k| FLObject::twist(p, n, k).unwrap()).collect();
        let (_, w) = fl_to_category(&objects, p, n).unwrap();
        let rec = reconstruct(&w).unwrap();
        assert!(rec.report.is_pass(), "{}", rec.report);
        assert_eq!(carrier_rank(&rec.coend), Some(2));
        let ideal = vec![vec![w.ring().from_i64(p as i64)]];
        for m in [rec.coalgebroid.source_module(), rec.coalgebroid.target_module()] {
            assert!(is_free_over_local(&m, &ideal).unwrap().is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tensor_ignores_the_choice_of_generators(u0 in unit_matrix(3, 1, 2), u1 in unit_matrix(3, 1, 1)) {
        let x = zero_plus_one(3, 1);
        let y = regenerated(&x, &[u0, u1]);
        prop_assert!(check_fl_object(&y).is_pass());
        let (a, b) = (fl_tensor(&x, &x).unwrap(), fl_tensor(&y, &x).unwrap());
        prop_assert!(check_fl_object(&a).is_pass() && check_fl_object(&b).is_pass());
        let iso = fl_isomorphism(&a, &b, 1 << 12).unwrap();
        prop_assert!(iso.is_some());
        let g = iso.unwrap();
        prop_assert!(is_fl_morphism(&a, &b, &g) && is_fl_morphism(&b, &a, &inverse(&g).unwrap()));
    }

    #[test]
    fn transport_gives_an_isomorphic_object(g in unit_matrix(3, 2, 2)) {
        let x = zero_plus_one(3, 2);
        let y = transported(&x, &g);
        prop_assert!(check_fl_object(&y).is_pass());
        prop_assert!(is_fl_morphism(&x, &y, &g));
        prop_assert!(fl_isomorphism(&x, &y, 1 << 12).unwrap().is_some());
    }
}
