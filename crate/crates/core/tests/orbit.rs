use num_traits::Zero;
use proptest::prelude::*;
use quadcong::bilinear::{smooth_fixed_point_check, translation_of, Isomorphism};
use quadcong::congruence::type1_basis;
use quadcong::invariant::similar;
use quadcong::orbit::*;
use quadcong::poly::HomPoly;
use quadcong::{gq, GaussianRational as G, Matrix};

fn small() -> impl Strategy<Value = G> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| gq(n, d))
}

fn nonzero() -> impl Strategy<Value = G> {
    small().prop_filter("nonzero", |g| !g.is_zero())
}

fn invertible() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(small(), 16)
        .prop_map(|v| Matrix::from_rows(v.chunks(4).map(<[G]>::to_vec).collect()).unwrap())
        .prop_filter("invertible", |m| !m.det().is_zero())
}

/// Coordinates of `b ∘ g` on the type-1 basis, column by column.
fn induced(g: &StabilizerElement) -> Matrix {
    let x = HomPoly::vars(3);
    let sub = vec![
        &x[0].scale(&g.alpha) + &x[2].scale(&g.u),
        &x[1].scale(&g.beta) + &x[2].scale(&g.v),
        x[2].scale(&g.gamma),
    ];
    let basis = type1_basis();
    let mut m = Matrix::zeros(4, 4);
    for (j, b) in basis.iter().enumerate() {
        let img = b.substitute(&sub).unwrap();
        for (i, bi) in basis.iter().enumerate() {
            let (exp, _) = bi.leading().unwrap();
            m[(i, j)] = img.coeff(exp);
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn classification_is_a_congruence_invariant(v in [small(), small(), small(), small(), small(), small()], g in invertible()) {
        let m = Type1Params::new(v).matrix();
        prop_assume!(!m.det().is_zero());
        let phi = Isomorphism::new(m.inverse().unwrap()).unwrap();
        let moved = phi.act(&g).unwrap();
        prop_assert_eq!(classify(&phi).unwrap().case, classify(&moved).unwrap().case);
        prop_assert!(equivalent(&phi, &moved));
        prop_assert!(similar(&translation_of(&phi), &translation_of(&moved)));
    }

    #[test]
    fn stabilizer_action_matches_induced_action(
        v in [small(), small(), small(), small(), small(), small()],
        al in nonzero(), be in nonzero(), u in small(), w in small(),
    ) {
        let m = Type1Params::new(v).matrix();
        let ga = (&al * &be).inv().unwrap();
        let g = StabilizerElement { alpha: al, beta: be, gamma: ga.clone(), u, v: w };
        let rho_inv = induced(&g).inverse().unwrap();
        let oracle = rho_inv.checked_mul(&m).unwrap().checked_mul(&rho_inv.transpose()).unwrap().scale(&ga);
        prop_assert_eq!(gc_action(&m, &g).unwrap(), oracle);
    }

    #[test]
    fn m1_normal_form(a in nonzero(), b in nonzero(), c in small(), d in small(), e in small(), f in small()) {
        let m = Type1Params::new([a, b, c, d, e, f]).matrix();
        prop_assume!(!m.det().is_zero());
        // roots outside Q(i) are reported, not approximated
        let Ok((m2, r)) = normal_form_m1(&m) else { return Ok(()); };
        let n = &r.normalized;
        prop_assert!(n.a == G::from(1) && n.b == G::from(1) && n.e.is_zero() && n.f.is_zero());
        prop_assert!(r.char_poly_matches);
        let before = Isomorphism::new(m.inverse().unwrap()).unwrap();
        let after = Isomorphism::new(m2.inverse().unwrap()).unwrap();
        prop_assert!(equivalent(&before, &after));
    }
}

#[test]
fn fixed_point_conditions_at_a_moving_point() {
    let phi = Isomorphism::new(Matrix::from_ints(&[&[0, 1, 0, 0], &[2, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 3, 0]])).unwrap();
    let r = smooth_fixed_point_check(&phi, &[G::from(1), G::zero(), G::from(1), G::zero()]).unwrap();
    assert!(r.all_agree());
    assert!(!r.translation_fixes_p);
}

#[test]
fn equal_pairs_classify_as_the_repeated_case() {
    // the 1.1 display at λ = μ = 2
    let phi = Isomorphism::new(Matrix::from_ints(&[&[0, 5, 0, 0], &[10, 0, 0, 0], &[0, 0, 0, 7], &[0, 0, 14, 0]])).unwrap();
    assert_eq!(classify(&phi).unwrap().case, CaseId::C12);
}

#[test]
fn antisymmetric_form_is_case_14() {
    let phi = Isomorphism::new(Matrix::from_ints(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 2], &[0, 0, -2, 0]])).unwrap();
    assert_eq!(classify(&phi).unwrap().case, CaseId::C14);
}
