use num_traits::Zero;
use proptest::prelude::*;
use quadcong::congruence::*;
use quadcong::map::RationalMap;
use quadcong::model::{self, StandardModel};
use quadcong::orbit::Type1Params;
use quadcong::poly::{linear_coeffs, HomPoly};
use quadcong::{gq, GaussianRational as G, Matrix};

fn small() -> impl Strategy<Value = G> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| gq(n, d))
}

fn six() -> impl Strategy<Value = [G; 6]> {
    [small(), small(), small(), small(), small(), small()]
}

fn antisym(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(small(), n * (n - 1) / 2).prop_map(move |v| {
        let mut m = Matrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m[(i, j)] = v[k].clone();
                m[(j, i)] = -&v[k];
                k += 1;
            }
        }
        m
    })
}

fn vars3() -> RationalMap {
    RationalMap::identity(3)
}

fn inverse_pair_ok(s: &QuadraticCongruence) -> bool {
    let t = translation_map(s).unwrap().reduced;
    let tt = translation_map(&s.transpose()).unwrap().reduced;
    tt.compose(&t).unwrap().proportional_to(&RationalMap::identity(s.n()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn type1_congruences_satisfy_everything(v in six()) {
        let p = Type1Params::new(v);
        prop_assume!(!p.matrix().det().is_zero());
        let s = build_type1(&p).unwrap();
        prop_assert!(verify_axioms(&s).all_pass());
        let t = translation_map(&s).unwrap();
        prop_assert!(check_translation(&s, t.map.coords()).unwrap().holds());
        prop_assert!(check_translation(&s, t.reduced.coords()).unwrap().holds());
        prop_assert!(linearity_report(&s).unwrap().consistent());
        let nd = normal_data(&s).unwrap();
        prop_assert!(nd.rank_identity_holds());
        prop_assert_eq!(nd.c_rank, 2);
        prop_assert!(nd.restriction_constant);
        prop_assert!(inverse_pair_ok(&s));
        let dl = degenerate_locus(&s).unwrap();
        prop_assert!(dl.all_degenerate() || dl.matches_predicted);
    }

    #[test]
    fn type2_congruences_satisfy_everything(v in six()) {
        let p = Type2Params::new(v);
        prop_assume!(!p.matrix().det().is_zero());
        let s = build_type2(&p).unwrap();
        prop_assert!(verify_axioms(&s).all_pass());
        let t = translation_map(&s).unwrap();
        prop_assert!(check_translation(&s, t.map.coords()).unwrap().holds());
        prop_assert!(linearity_report(&s).unwrap().consistent());
        let nd = normal_data(&s).unwrap();
        prop_assert_eq!((nd.c_rank, nd.q_rank), (1, 3));
        prop_assert!(inverse_pair_ok(&s));
        let dl = degenerate_locus(&s).unwrap();
        prop_assert!(dl.all_degenerate() || dl.matches_predicted);
        prop_assert!(dl.line_count <= 4);
    }

    #[test]
    fn model_construction(a in antisym(5), m in 2usize..=4) {
        let n = 4;
        let model = StandardModel::new(n, m, a.clone()).unwrap();
        let phi = model.phi();
        prop_assume!(!phi.det().is_zero());
        let s = model::geometric_build(&phi, n).unwrap();
        prop_assert!(verify_axioms(&s).all_pass());
        prop_assert_eq!(model::associated_isomorphism(&s).unwrap(), phi.clone());
        prop_assert_eq!(model::extract_antisymmetric(n, m, s.phi_inv()).unwrap(), a);
        let t = translation_map(&s).unwrap();
        prop_assert!(check_translation(&s, t.map.coords()).unwrap().holds());
        let nd = normal_data(&s).unwrap();
        prop_assert_eq!(nd.h_var, n - 1);
        prop_assert!(nd.rank_identity_holds());
        prop_assert_eq!(nd.c_rank, m - 1);
        let l = RationalMap::new(vec![nd.l_form.clone()]).unwrap();
        let lc = linear_coeffs(&nd.l_form);
        prop_assert!(quadcong::matrix::vec_proportional(&lc, &model::o_perp_form(&phi)));
        let mut h = vec![G::zero(); n];
        h[n - 1] = G::from(1);
        prop_assert!(quadcong::matrix::vec_proportional(&h, &model::tangent_form(&phi)));
        prop_assert_eq!(l.degree(), 1);
        prop_assert_eq!(model::sigma_prime_equation(&phi), s.transpose().equation());
    }

    #[test]
    fn eta_lands_on_the_quadric(a in antisym(4), q in [small(), small(), small()]) {
        let phi = StandardModel::new(3, 3, a).unwrap().phi();
        let mut qv = q.to_vec();
        qv.push(G::zero());
        let e = model::eta(&phi, &model::origin(3), &qv);
        prop_assert!(phi.bilinear(&e, &e).is_zero());
    }
}

#[test]
fn transposition_is_an_involution() {
    let s = build_type1(&Type1Params::new([1, 2, 0, 3, -1, 1].map(G::from))).unwrap();
    assert_eq!(s.transpose().transpose(), s);
    let sym = QuadraticCongruence::unchecked(3, BasisKind::Custom, type1_basis(), Matrix::from_ints(&[
        &[0, 0, 0, 1],
        &[0, 0, -1, 0],
        &[0, -1, 0, 0],
        &[1, 0, 0, 0],
    ]));
    assert_eq!(sym.transpose(), sym);
}

#[test]
fn negative_axiom_controls() {
    let s = build_type1(&Type1Params::new([0; 6].map(G::from))).unwrap();
    let singular = QuadraticCongruence::unchecked(3, BasisKind::Custom, type1_basis(), Matrix::from_ints(&[
        &[0, 0, 0, 1],
        &[0, 0, 0, 0],
        &[0, 0, 0, 0],
        &[1, 0, 0, 0],
    ]));
    assert!(!verify_axioms(&singular).nonsingular);
    let x = HomPoly::var(3, 0);
    let bad = s.with_coords(s.coords().iter().map(|c| c.mul_poly(&x)).collect());
    let r = verify_axioms(&bad);
    assert!(!r.degree_contract);
    assert!(r.failures().contains(&"degree_contract"));
}

#[test]
fn linear_cases_match_listed_tuples() {
    let p = Type1Params::new([0, 0, 2, 3, -1, 1].map(G::from));
    let s = build_type1(&p).unwrap();
    let t = translation_map(&s).unwrap();
    assert_eq!(t.reduced.degree(), 1);
    assert!(t.reduced.proportional_to(&RationalMap::new(linear_case1_tuple(&p)).unwrap()));
    let q = Type2Params::new([0, 2, 1, 0, 3, -1].map(G::from));
    let s = build_type2(&q).unwrap();
    let t = translation_map(&s).unwrap();
    assert!(is_linear_translation(&s).unwrap());
    assert!(t.reduced.proportional_to(&RationalMap::new(linear_case2_tuple(&q).unwrap()).unwrap()));
    let s = build_type1(&Type1Params::new([1, 0, 0, 0, 0, 0].map(G::from))).unwrap();
    assert!(!is_linear_translation(&s).unwrap());
    assert!(!translation_map(&s).unwrap().reduced.proportional_to(&vars3()));
}

#[test]
fn trivial_parameters_contain_coordinate_lines() {
    let s = build_type1(&Type1Params::new([0; 6].map(G::from))).unwrap();
    let d = degenerate_locus(&s).unwrap().determinant;
    for k in 0..3 {
        assert!(HomPoly::var(3, k).divides(&d), "line {k}");
    }
}

#[test]
fn json_round_trip() {
    let v = serde_json::json!({"n": 3, "type": "2", "params": {"b": -2}});
    let s = parse_congruence(&v).unwrap();
    let w = serde_json::json!({
        "n": 3, "type": "2",
        "basis": ["X*Z", "Y^2", "Y*Z", "Z^2"],
        "phi_inv": s.phi_inv().to_rows().iter().map(|r| r.iter().map(|c| c.to_text()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    assert_eq!(parse_congruence(&w).unwrap(), s);
}
