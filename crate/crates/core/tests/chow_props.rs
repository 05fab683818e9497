use proptest::prelude::*;
use trigonal::chow::{
    chern_e_prime, chern_twisted_gamma, class_of_w, class_of_y, expected_picard, kernel_coordinates,
    picard_row, pullback_table, standard_presentation,
};
use trigonal::algebra::GradedClass;

#[test]
fn instantiation_commutes_with_the_pipeline() {
    let pres = standard_presentation(2);
    let symbolic = class_of_y().unwrap();
    let w = class_of_w().unwrap().w.reinterpret(&pres).unwrap();
    for g in [2, 3, 5, 12] {
        // Chern class of E′ with g fixed before inverting
        let early = chern_twisted_gamma(&pres).unwrap().instantiate(g).series_inverse(2).unwrap();
        let delta = GradedClass::one(&pres)
            .add(&GradedClass::var(&pres, "delta1").unwrap())
            .add(&GradedClass::var(&pres, "delta2").unwrap());
        let early = early.mul(&delta);
        assert_eq!(early, chern_e_prime(&pres).unwrap().instantiate(g));

        // substitution with an instantiated table
        let table: Vec<(&str, GradedClass)> = pullback_table(&pres)
            .unwrap()
            .into_iter()
            .map(|(n, c)| (n, c.instantiate(g)))
            .collect();
        let tilde = w.substitute(&pres, &table).unwrap();
        assert_eq!(tilde, symbolic.tilde.instantiate(g));
        let pushed = tilde.pushforward("xi").unwrap();
        let y = &symbolic.y;
        let coords = y.at(g).unwrap();
        for (name, c) in [("delta1", &coords[0]), ("gamma1", &coords[1]), ("sigma1", &coords[2])] {
            let got = pushed.coeff(&[(name, 1)]).unwrap().eval_int(0);
            assert_eq!(got.to_integer(), *c);
        }
    }
}

#[test]
fn magnitudes_for_small_genus() {
    let y = class_of_y().unwrap().y;
    for g in 2..=200i64 {
        let (a, b) = kernel_coordinates(&y, g).unwrap();
        assert_eq!(a, (-(g + 6)).into());
        let want = if g % 2 == 1 { (g + 15) / 2 } else { g + 15 };
        assert_eq!(b, want.into());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn picard_matches_congruence_table_for_large_genus(g in 2i64..10_000_000) {
        let y = class_of_y().unwrap().y;
        let row = picard_row(&y, g).unwrap();
        prop_assert_eq!(row.group, expected_picard(g));
    }
}
