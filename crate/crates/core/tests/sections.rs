use num_traits::Zero;
use proptest::prelude::*;
use quadcong::congruence::{build_type1, build_type2, Type2Params};
use quadcong::orbit::Type1Params;
use quadcong::poly::HomPoly;
use quadcong::sections::*;
use quadcong::{gq, GaussianRational as G};

fn small() -> impl Strategy<Value = G> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| gq(n, d))
}

fn gaussian() -> impl Strategy<Value = G> {
    (small(), small()).prop_map(|(a, b)| &a + &(&b * &G::i()))
}

fn six() -> impl Strategy<Value = [G; 6]> {
    [small(), small(), small(), small(), small(), small()]
}

fn conic(u: &G, v: &G, w: &G, t: &G) -> HomPoly {
    let x = HomPoly::vars(3);
    let terms = [(0, 1, u), (1, 2, v), (0, 2, w), (2, 2, t)];
    terms.iter().fold(HomPoly::zero(3, 2), |acc, (i, j, c)| &acc + &x[*i].mul_poly(&x[*j]).scale(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trivialization_pulls_back(u in small(), v in small(), w in small(), t in small()) {
        let k = &(&v * &w) - &(&u * &t);
        prop_assume!(!(&u * &k).is_zero());
        let m = conic_trivialize(&u, &v, &w, &t).unwrap();
        prop_assert!(!m.det().is_zero());
        let pb = pullback(&xy_minus_z2(), &m).unwrap();
        prop_assert_eq!(pb, conic(&u, &v, &w, &t).scale(&(&u * &k)));
    }

    #[test]
    fn base_case_identity(a in gaussian(), b in gaussian(), c in gaussian()) {
        let d = &(&(&a * &a) + &(&b * &b)) - &(&G::from(4) * &c);
        prop_assume!(!d.is_zero());
        let m = rank3_normalize(&a, &b, &c).unwrap();
        prop_assert_eq!(pullback(&x02_plus_x12_minus_x22(), &m).unwrap(), rank3_source(&a, &b, &c).scale(&d));
        let printed = rank3_printed_matrix(&a, &b, &c).unwrap();
        let holds = pullback(&x02_plus_x12_minus_x22(), &printed).unwrap() == rank3_source(&a, &b, &c).scale(&d);
        prop_assert_eq!(holds, b.is_zero());
    }

    #[test]
    fn normalizer_identity(alpha in prop::collection::vec(gaussian(), 3..=8)) {
        prop_assume!(!normalizer_radicand(&alpha).is_zero());
        let nz = quadric_normalize(&alpha).unwrap();
        prop_assert_eq!(nz.depth, alpha.len() - 3);
        prop_assert!(nz.verify(&alpha));
    }

    #[test]
    fn type6_point_on_conic(a in small(), b in small(), c in small(), d in small()) {
        prop_assume!(!(&a + &b).is_zero() || !(&c + &d).is_zero());
        let p = section_type6(&a, &b, &c, &d).unwrap();
        let v = &(&(&(&a * &(&p[0] * &p[2])) + &(&b * &(&p[1] * &p[2]))) + &(&c * &(&p[0] * &p[0]))) + &(&d * &(&p[1] * &p[1]));
        prop_assert!(v.is_zero());
    }

    #[test]
    fn type1_factorization(v in six()) {
        let p = Type1Params::new(v);
        prop_assume!(!p.matrix().det().is_zero());
        let s = build_type1(&p).unwrap();
        let Ok(r) = r_map_type1(&s) else { return Ok(()); };
        prop_assert_eq!(r.r.degree(), 6);
        let (rep, matches) = r.check().unwrap();
        prop_assert!(rep.ok && matches);
    }

    #[test]
    fn type2_factorization(v in six()) {
        let p = Type2Params::new(v);
        prop_assume!(!p.matrix().det().is_zero());
        let s = build_type2(&p).unwrap();
        let Ok(r) = r_map_type2(&s) else { return Ok(()); };
        prop_assert_eq!(r.r.degree(), 2);
        let (rep, matches) = r.check().unwrap();
        prop_assert!(rep.ok && matches);
    }

    #[test]
    fn quadratic_factorization(a0 in small(), step in small(), b0 in small(), e in small(), f in small()) {
        prop_assume!(!step.is_zero());
        let a1 = &a0 + &step;
        let b1 = &(&(&(&(&a0 * &a0) - &(&G::from(4) * &(&a0 * &a1))) + &(&a1 * &a1)) - &b0) - &G::from(2);
        let p = QuadraticRParams { alpha0: a0, alpha1: a1, beta0: b0, beta1: b1, e, f };
        let Ok(r) = r_map_quadratic(&p) else { return Ok(()); };
        let (rep, matches) = r.check().unwrap();
        prop_assert!(rep.ok && matches);
        prop_assert!(quadcong::congruence::verify_axioms(&r.sigma).all_pass());
        prop_assert!(quadcong::congruence::is_linear_translation(&r.sigma).unwrap());
    }

    #[test]
    fn linear_factorization(a0 in small(), step in small(), w in small()) {
        prop_assume!(!step.is_zero() && !w.is_zero());
        let a1 = &a0 + &step;
        let nu = (&step * &step).inv().unwrap();
        let r = r_map_linear(&LinearRParams { nu, alpha0: a0, alpha1: a1, w }).unwrap();
        prop_assert_eq!(r.r.degree(), 1);
        let (rep, matches) = r.check().unwrap();
        prop_assert!(rep.ok && matches);
        prop_assert!(quadcong::congruence::verify_axioms(&r.sigma).all_pass());
    }
}

#[test]
fn listed_quadratic_instance() {
    let p = QuadraticRParams { alpha0: gq(1, 1), alpha1: gq(0, 1), beta0: gq(2, 1), beta1: gq(-3, 1), e: gq(0, 1), f: gq(0, 1) };
    let r = r_map_quadratic(&p).unwrap();
    let (rep, matches) = r.check().unwrap();
    assert!(rep.ok && matches);
    let bad = QuadraticRParams { beta1: gq(-1, 1), ..p.clone() };
    assert!(r_map_quadratic(&bad).is_err());
    let singular = QuadraticRParams { beta0: gq(-1, 1), beta1: gq(0, 1), ..p };
    assert!(matches!(r_map_quadratic(&singular), Err(quadcong::Error::Singular)));
}

#[test]
fn mismatched_sigma_fails() {
    let s1 = build_type1(&Type1Params::new([1, 2, 0, 3, -1, 1].map(G::from))).unwrap();
    let s2 = build_type1(&Type1Params::new([0, 1, 0, 3, -1, 1].map(G::from))).unwrap();
    let r = r_map_type1(&s1).unwrap();
    let rep = verify_pullback(&r.r, &r.c0, &s2).unwrap();
    assert!(!rep.ok);
}

#[test]
fn member_normalization() {
    let w = [gq(1, 1), gq(2, 1), gq(-1, 1), gq(3, 1), gq(2, 1)];
    let (alpha, nz) = normalize_member(&w).unwrap();
    assert_eq!(alpha, vec![gq(1, 2), gq(1, 1), gq(-1, 2), gq(3, 2)]);
    assert!(nz.verify(&alpha));
}
