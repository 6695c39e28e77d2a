use moufang_core::models::MoufangSide;
use moufang_core::octonion::{traceless_malcev, CayleyAlgebra, MalcevAlgebra, Vector};
use moufang_core::scalar::{int, ratio, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

fn params() -> Vec<[i64; 3]> {
    vec![[-1, -1, -1], [-1, -4, -1], [2, 3, 5]]
}

fn algebra(p: [i64; 3]) -> CayleyAlgebra {
    CayleyAlgebra::octonions(int(p[0]), int(p[1]), int(p[2])).unwrap()
}

#[test]
fn alternative_moufang_and_nalt_for_all_parameters() {
    for p in params() {
        let a = algebra(p);
        assert_eq!(a.alternativity_witness(), None, "{p:?}");
        for side in MoufangSide::ALL {
            assert_eq!(a.check_moufang(side), None, "{p:?} {side:?}");
        }
        for i in 0..8 {
            assert_eq!(a.nalt_check(&a.basis(i)), Ok(()), "{p:?} e{i}");
        }
        let m = traceless_malcev(&a).unwrap();
        assert_eq!(m.malcev_witness(), None);
        let (u, v, w) = (m.basis(0), m.basis(1), m.basis(3));
        assert!(m.jacobian(&u, &v, &w).iter().any(|x| !x.is_zero()), "{p:?} is Lie?");
    }
}

#[test]
fn non_associative_generators() {
    let a = algebra([-1, -1, -1]);
    let (u, v, w) = (a.basis(1), a.basis(2), a.basis(4));
    let l = a.mul(&a.mul(&u, &v), &w);
    let r = a.mul(&u, &a.mul(&v, &w));
    assert_ne!(l, r);
    assert_eq!(l, r.iter().map(|x| -x.clone()).collect::<Vector>());
}

#[test]
fn conjugation_is_an_involutive_anti_automorphism() {
    let a = algebra([2, 3, 5]);
    for i in 0..8 {
        for j in 0..8 {
            let (x, y) = (a.basis(i), a.basis(j));
            assert_eq!(a.conj(&a.mul(&x, &y)), a.mul(&a.conj(&y), &a.conj(&x)));
        }
        assert_eq!(a.conj(&a.conj(&a.basis(i))), a.basis(i));
    }
}

#[test]
fn malcev_basics() {
    let m = traceless_malcev(&algebra([-1, -1, -1])).unwrap();
    assert_eq!(m.labels(), ["u", "v", "uv", "w", "uw", "vw", "(uv)w"]);
    let u = m.basis(0);
    assert!(m.bracket(&u, &u).iter().all(Zero::is_zero));
    assert!(m.jacobian(&u, &u, &m.basis(2)).iter().all(Zero::is_zero));
    assert!(m.export().lines().any(|l| l.starts_with("bracket (0, 1, 2, ")));
}

fn sl2() -> MalcevAlgebra {
    // basis e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = -2f
    let z = || vec![Scalar::zero(); 3];
    let mut b = vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![z(), z(), z()]];
    b[0][1][2] = int(1);
    b[1][0][2] = int(-1);
    b[2][0][0] = int(2);
    b[0][2][0] = int(-2);
    b[2][1][1] = int(-2);
    b[1][2][1] = int(2);
    MalcevAlgebra::new(["e", "f", "h"].map(String::from).to_vec(), b).unwrap()
}

#[test]
fn lie_algebras_have_zero_jacobian() {
    let g = sl2();
    for t in 0..27 {
        let j = g.jacobian(&g.basis(t / 9), &g.basis(t / 3 % 3), &g.basis(t % 3));
        assert!(j.iter().all(Zero::is_zero));
    }
}

#[test]
fn corrupted_fixtures_are_caught() {
    let a = algebra([-1, -1, -1]);
    let bad = a.corrupted(1, 2, 3, int(2));
    assert!(bad.check_moufang(MoufangSide::Right).is_some());
    assert!(bad.alternativity_witness().is_some());
    let q = CayleyAlgebra::ground().double(int(-1)).unwrap().double(int(-1)).unwrap();
    let bad_q = q.corrupted(1, 1, 0, int(1));
    assert!(bad_q.nalt_check(&bad_q.basis(1)).is_err());
}

#[test]
fn unit_loop_needs_signed_units() {
    assert!(algebra([-1, -4, -1]).unit_loop().is_err());
    let l = algebra([-1, -1, -1]).unit_loop().unwrap();
    assert_eq!(l.order(), 16);
    assert!(l.associativity_witness().is_some());
}

#[test]
fn export_lists_every_product() {
    let text = algebra([-1, -1, -1]).export();
    assert_eq!(text.lines().filter(|l| l.starts_with("mul ")).count(), 64);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nalt_holds_for_random_elements(c in proptest::collection::vec((-9i64..=9, 1i64..=4), 8)) {
        let a = algebra([-1, -4, -1]);
        let x: Vector = c.iter().map(|&(n, d)| ratio(n, d)).collect();
        prop_assert_eq!(a.nalt_check(&x), Ok(()));
    }

    #[test]
    fn norm_multiplicative(x in proptest::collection::vec(-6i64..=6, 8), y in proptest::collection::vec(-6i64..=6, 8)) {
        let a = algebra([2, 3, 5]);
        let (x, y): (Vector, Vector) = (x.into_iter().map(int).collect(), y.into_iter().map(int).collect());
        prop_assert_eq!(a.norm(&a.mul(&x, &y)), a.norm(&x) * a.norm(&y));
    }

    #[test]
    fn jacobian_is_alternating(i in 0usize..7, j in 0usize..7, k in 0usize..7) {
        let m = traceless_malcev(&algebra([-1, -1, -1])).unwrap();
        let (a, b, c) = (m.basis(i), m.basis(j), m.basis(k));
        let neg = |v: Vector| v.into_iter().map(|x| -x).collect::<Vector>();
        prop_assert_eq!(m.jacobian(&a, &b, &c), neg(m.jacobian(&b, &a, &c)));
        prop_assert_eq!(m.jacobian(&a, &b, &c), neg(m.jacobian(&a, &c, &b)));
    }
}

#[test]
fn commutators_of_imaginary_units_are_traceless() {
    for p in params() {
        let a = algebra(p);
        for i in 1..8 {
            for j in 1..8 {
                let (x, y) = (a.basis(i), a.basis(j));
                let c: Vector = a.mul(&x, &y).into_iter().zip(a.mul(&y, &x)).map(|(s, t)| s - t).collect();
                assert!(c[0].is_zero(), "{p:?} [e{i}, e{j}]");
            }
        }
    }
}
