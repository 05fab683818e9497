use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use trigonal::algebra::{
    binary_gcd, smith_normal_form, BinaryForm, DualRing, GenusPoly, GradedClass, IntMatrix, PrimeField,
    Rationals, Ring, RingPresentation,
};
use trigonal::chow::{free_presentation, standard_presentation, GENERATORS};

fn class_from(pres: &Arc<RingPresentation>, coeffs: &[i64]) -> GradedClass {
    // a fixed list of monomials of degree ≤ 2 in the standard generators
    let monos: [&[(&str, u32)]; 8] = [
        &[],
        &[("xi", 1)],
        &[("sigma1", 1)],
        &[("c1", 1)],
        &[("mu1", 1)],
        &[("xi", 2)],
        &[("mu1", 1), ("c1", 1)],
        &[("sigma2", 1)],
    ];
    let mut acc = GradedClass::zero(pres);
    for (c, m) in coeffs.iter().zip(monos) {
        acc = acc.add(&GradedClass::monomial(pres, GenusPoly::from_ints(&[*c, c % 3]), m).unwrap());
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduction_is_a_ring_map(a in prop::collection::vec(-5i64..5, 8), b in prop::collection::vec(-5i64..5, 8)) {
        let free = free_presentation(2);
        let std = standard_presentation(2);
        let (x, y) = (class_from(&free, &a), class_from(&free, &b));
        let prod = x.mul(&y).reinterpret(&std).unwrap();
        let split = x.reinterpret(&std).unwrap().mul(&y.reinterpret(&std).unwrap());
        prop_assert_eq!(&prod, &split);
        prop_assert_eq!(prod.reduce(), prod.clone());
        let sum = x.add(&y).reinterpret(&std).unwrap();
        prop_assert_eq!(sum, x.reinterpret(&std).unwrap().add(&y.reinterpret(&std).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn series_inverse_is_an_inverse(a in prop::collection::vec(-5i64..5, 8)) {
        let pres = standard_presentation(2);
        let mut x = class_from(&pres, &a);
        x = x.sub(&GradedClass::constant(&pres, x.constant_term())).add(&GradedClass::one(&pres));
        let inv = x.series_inverse(2).unwrap();
        prop_assert_eq!(x.mul(&inv).truncate(2), GradedClass::one(&pres));
    }

    #[test]
    fn pushforward_projection_formula(a in prop::collection::vec(-5i64..5, 8), s in -5i64..5, t in -5i64..5) {
        let pres = Arc::new(RingPresentation::new(&GENERATORS, 3).unwrap()
            .with_rule("xi", 2, &[(GenusPoly::int(-1), &[("sigma1", 1), ("xi", 1)]), (GenusPoly::int(-1), &[("sigma2", 1)])]).unwrap());
        let x = class_from(&pres, &a).without_var("mu1").unwrap();
        let y = GradedClass::monomial(&pres, GenusPoly::int(s), &[("sigma1", 1)]).unwrap()
            .add(&GradedClass::monomial(&pres, GenusPoly::int(t), &[("delta1", 1)]).unwrap());
        let lhs = x.mul(&y).pushforward("xi").unwrap();
        let rhs = x.pushforward("xi").unwrap().mul(&y);
        prop_assert_eq!(lhs, rhs);
    }
}

fn form_q(c: &[i64]) -> BinaryForm<Rationals> {
    BinaryForm::from_i64(Rationals, c)
}

fn form_p(f: PrimeField, c: &[i64]) -> BinaryForm<PrimeField> {
    BinaryForm::from_i64(f, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn gcd_divides_and_is_greatest_over_q(
        common in prop::collection::vec(-6i64..6, 2..4),
        a in prop::collection::vec(-6i64..6, 2..4),
        b in prop::collection::vec(-6i64..6, 2..4),
    ) {
        let c = form_q(&common);
        prop_assume!(!c.is_zero());
        let (fa, fb) = (c.mul(&form_q(&a)), c.mul(&form_q(&b)));
        prop_assume!(!fa.is_zero() && !fb.is_zero());
        let h = binary_gcd(&[fa.clone(), fb.clone()]).unwrap();
        prop_assert!(fa.exact_div(&h).is_some());
        prop_assert!(fb.exact_div(&h).is_some());
        prop_assert!(h.exact_div(&c).is_some());
    }

    #[test]
    fn gcd_divides_and_is_greatest_over_f101(
        common in prop::collection::vec(0i64..101, 2..4),
        a in prop::collection::vec(0i64..101, 2..4),
        b in prop::collection::vec(0i64..101, 2..4),
    ) {
        let f = PrimeField::new(101).unwrap();
        let c = form_p(f, &common);
        prop_assume!(!c.is_zero());
        let (fa, fb) = (c.mul(&form_p(f, &a)), c.mul(&form_p(f, &b)));
        prop_assume!(!fa.is_zero() && !fb.is_zero());
        let h = binary_gcd(&[fa.clone(), fb.clone()]).unwrap();
        prop_assert!(fa.exact_div(&h).is_some());
        prop_assert!(fb.exact_div(&h).is_some());
        prop_assert!(h.exact_div(&c).is_some());
    }
}

proptest! {
    #[test]
    fn smith_form_invariants(rows in 1usize..4, cols in 1usize..4, seed in prop::collection::vec(-20i64..20, 9)) {
        let entries: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| (0..cols).map(|j| BigInt::from(seed[i * 3 + j])).collect())
            .collect();
        let m = IntMatrix::new(entries);
        let s = smith_normal_form(&m);
        let d = s.u.mul(&m).mul(&s.v);
        for i in 0..rows {
            for j in 0..cols {
                let want = if i == j { s.diag[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(d.get(i, j), &want);
            }
        }
        prop_assert_eq!(s.u.det().magnitude().clone(), 1u32.into());
        prop_assert_eq!(s.v.det().magnitude().clone(), 1u32.into());
        for w in s.diag.windows(2) {
            prop_assert!(w[0] >= BigInt::from(0));
            prop_assert!(w[0] == BigInt::from(0) && w[1] == BigInt::from(0) || (w[0] != BigInt::from(0) && w[1].is_multiple_of(&w[0])));
        }
    }

    #[test]
    fn dual_number_arithmetic(a in 1i64..101, b in 0i64..101, c in 0i64..101, d in 0i64..101) {
        let f = PrimeField::new(101).unwrap();
        let r = DualRing::new(f);
        let x = r.make(f.from_i64(a), f.from_i64(b));
        let y = r.make(f.from_i64(c), f.from_i64(d));
        let e = r.epsilon();
        prop_assert!(r.is_zero(&r.mul(&e, &e)));
        let xy = r.mul(&x, &y);
        prop_assert_eq!(xy.re, f.from_i64(a * c));
        prop_assert_eq!(xy.eps, f.from_i64(a * d + b * c));
        let inv = r.inv_unit(&x).unwrap();
        prop_assert_eq!(r.mul(&x, &inv), r.one());
        prop_assert!(r.inv_unit(&r.make(f.zero(), f.from_i64(b))).is_none());
    }
}
