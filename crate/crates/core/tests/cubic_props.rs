use proptest::prelude::*;
use trigonal::algebra::{cubic_discriminant, BinaryForm, Field, PrimeField, ProjPoint, Rationals, Ring};
use trigonal::cover::{algebra_to_form, form_to_algebra};
use trigonal::cubic::{
    act_gl2, act_hg, beta, in_w, jacobian, mat_det, mat_from_i64, mat_inverse, mat_mul,
    DualCubic, HgElement, Mat2,
};

fn fp() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn form(c: &[i64]) -> BinaryForm<PrimeField> {
    BinaryForm::from_i64(fp(), c)
}

fn mat(c: [i64; 4]) -> Mat2<u64> {
    mat_from_i64(&fp(), [[c[0], c[1]], [c[2], c[3]]])
}

fn invertible() -> impl Strategy<Value = Mat2<u64>> {
    prop::array::uniform4(0i64..101)
        .prop_map(mat)
        .prop_filter("invertible", |m| mat_det(&fp(), m) != 0)
}

fn any_mat() -> impl Strategy<Value = Mat2<u64>> {
    prop::array::uniform4(0i64..101).prop_map(mat)
}

fn cubic() -> impl Strategy<Value = BinaryForm<PrimeField>> {
    prop::collection::vec(0i64..101, 4).prop_map(|c| form(&c))
}

fn hg() -> impl Strategy<Value = HgElement<PrimeField>> {
    (1i64..101, invertible(), any_mat())
        .prop_map(|(u, a, b)| HgElement::new(fp(), fp().from_i64(u), a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gl2_action_is_a_left_action(a in invertible(), b in invertible(), f in cubic()) {
        let lhs = act_gl2(&a, &act_gl2(&b, &f).unwrap()).unwrap();
        let rhs = act_gl2(&mat_mul(&fp(), &a, &b), &f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_scales_by_det_squared(a in invertible(), f in cubic()) {
        let k = fp();
        let d = mat_det(&k, &a);
        let lhs = cubic_discriminant(&act_gl2(&a, &f).unwrap()).unwrap();
        let rhs = k.mul(&k.mul(&d, &d), &cubic_discriminant(&f).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hg_action_is_a_left_action(h1 in hg(), h2 in hg(), f in cubic(), g in cubic()) {
        let v = DualCubic::new(f, g).unwrap();
        let lhs = act_hg(&h1, &act_hg(&h2, &v).unwrap()).unwrap();
        let rhs = act_hg(&h1.multiply(&h2), &v).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = act_hg(&h1.inverse(), &act_hg(&h1, &v).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn hg_law_is_associative(h1 in hg(), h2 in hg(), h3 in hg()) {
        prop_assert_eq!(h1.multiply(&h2).multiply(&h3), h1.multiply(&h2.multiply(&h3)));
    }

    #[test]
    fn beta_is_equivariant(
        lambda in 1i64..101, alpha in 1i64..101, a in invertible(),
        p in (0i64..101, 0i64..101).prop_filter("nonzero", |p| *p != (0, 0)),
        f in cubic(), g in cubic(),
    ) {
        let k = fp();
        let v = DualCubic::new(f, g).unwrap();
        let (lam, al) = (k.from_i64(lambda), k.from_i64(alpha));
        let ai = mat_inverse(&k, &a).unwrap();
        // p' = λ p A⁻¹ as a row vector
        let (p1, p2) = (k.from_i64(p.0), k.from_i64(p.1));
        let q1 = k.mul(&lam, &k.add(&k.mul(&p1, &ai[0][0]), &k.mul(&p2, &ai[1][0])));
        let q2 = k.mul(&lam, &k.add(&k.mul(&p1, &ai[0][1]), &k.mul(&p2, &ai[1][1])));
        let moved = act_hg(&HgElement::new(k, al, a, mat_from_i64(&k, [[0, 0], [0, 0]])).unwrap(), &v).unwrap();
        let (g1, j1, j2) = beta(&ProjPoint::new(k, q1, q2).unwrap(), &moved);
        let (g0, i1, i2) = beta(&ProjPoint::new(k, p1, p2).unwrap(), &v);
        let dinv = k.inv(&mat_det(&k, &a)).unwrap();
        let l2 = k.mul(&lam, &lam);
        prop_assert_eq!(g1, k.mul(&k.mul(&dinv, &k.mul(&al, &k.mul(&l2, &lam))), &g0));
        // J_f(p)ᵀ Aᵀ = (A J_f(p))ᵀ
        let w1 = k.add(&k.mul(&a[0][0], &i1), &k.mul(&a[0][1], &i2));
        let w2 = k.add(&k.mul(&a[1][0], &i1), &k.mul(&a[1][1], &i2));
        let s = k.mul(&dinv, &l2);
        prop_assert_eq!((j1, j2), (k.mul(&s, &w1), k.mul(&s, &w2)));
    }

    #[test]
    fn w_membership_is_invariant(h in hg(), f in cubic(), g in cubic(), double in any::<bool>(), r in 0i64..101, m in (0i64..101, 0i64..101), q in cubic()) {
        let k = fp();
        let v = if double {
            // f = l² m, g = l q' with l = x1 − r x2
            let l = BinaryForm::linear(k, 1, k.from_i64(-r));
            let quad = BinaryForm::new(k, q.coeffs()[..3].to_vec());
            DualCubic::new(l.mul(&l).mul(&form(&[m.0, m.1])), l.mul(&quad)).unwrap()
        } else {
            DualCubic::new(f, g).unwrap()
        };
        let before = in_w(&v);
        if double {
            prop_assert!(before.in_w);
        }
        prop_assert_eq!(before.in_w, in_w(&act_hg(&h, &v).unwrap()).in_w);
    }

    #[test]
    fn euler_identity(f in cubic()) {
        let k = fp();
        let (j1, j2) = jacobian(&f);
        let x1 = BinaryForm::linear(k, 1, 0);
        let x2 = BinaryForm::linear(k, 0, 1);
        prop_assert_eq!(x1.mul(&j1).add(&x2.mul(&j2)), f.scale(&3));
    }

    #[test]
    fn roundtrip_over_f101(f in cubic()) {
        let alg = form_to_algebra(&f).unwrap();
        prop_assert_eq!(algebra_to_form(&alg).unwrap(), f);
    }

    #[test]
    fn roundtrip_over_q(c in prop::collection::vec(-1000i64..1000, 4)) {
        let f = BinaryForm::from_i64(Rationals, &c);
        let alg = form_to_algebra(&f).unwrap();
        prop_assert!(alg.associators().iter().all(|(_, v)| v.iter().all(|x| Rationals.is_zero(x))));
        prop_assert_eq!(alg.trace_form_det(), cubic_discriminant(&f).unwrap());
        prop_assert_eq!(algebra_to_form(&alg).unwrap(), f);
    }
}
