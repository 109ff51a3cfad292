//! One pass over every operation of the library, grouped into suites.
//!
//! Displays recorded as not holding (the 2.6 sign, the printed rank-3 and
//! base-case formulas, the listed degeneracy products) count as passing when
//! the recorded outcome is reproduced and the corrected form holds.

use std::collections::HashMap;

use num_traits::Zero;
use rand::Rng;
use serde_json::{json, Value};

use crate::bilinear::{pairing, perp, quadric_of, smooth_fixed_point_check, translation_of, Isomorphism, LinearSubspace, Side};
use crate::catalog::{self, case_table, catalog_check, check_entry, corrupted, default_params, entries, heading_comparison};
use crate::congruence::*;
use crate::error::Result;
use crate::field::{gq, GaussianRational as G};
use crate::gallery::{gallery_check, NAMES};
use crate::map::RationalMap;
use crate::matrix::{vec_proportional, Matrix};
use crate::model::{self, StandardModel};
use crate::orbit::{classify, equivalent, gc_action, normal_form_m1, StabilizerElement, Type1Params};
use crate::random;
use crate::sections::*;

#[derive(Clone, Debug)]
pub struct Suite {
    pub name: &'static str,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<Suite>,
}

impl SelftestReport {
    pub fn passes(&self) -> bool {
        self.suites.iter().all(|s| s.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "pass": self.passes(),
            "suites": self.suites.iter().map(|s| json!({"suite": s.name, "pass": s.pass, "detail": s.detail})).collect::<Vec<_>>(),
        })
    }
}

fn suite(name: &'static str, f: impl FnOnce() -> Result<(bool, Value)>) -> Suite {
    match f() {
        Ok((pass, detail)) => Suite { name, pass, detail },
        Err(e) => Suite { name, pass: false, detail: json!({ "error": e.to_string() }) },
    }
}

fn case_table_suite() -> Result<(bool, Value)> {
    let rows = case_table()?;
    let ok = rows.iter().all(|r| match r.case.as_str() {
        "2.6" => !r.passes() && r.corrected.as_ref().is_some_and(|c| c.0.passes()),
        _ => r.passes(),
    });
    Ok((ok, json!(rows.iter().map(|r| r.to_json()).collect::<Vec<_>>())))
}

fn catalog_suite() -> Result<(bool, Value)> {
    let p = default_params();
    let mut ok = true;
    let mut out = Vec::new();
    for e in entries() {
        let r = catalog_check(&e.label, &p)?;
        let negative = check_entry(&corrupted(e), &p).map_or(true, |c| !c.passes());
        ok &= r.passes() && negative;
        out.push(json!({"label": e.label, "pass": r.passes(), "corrupted_fails": negative}));
    }
    for case in ["1.1", "1.2", "1.5", "2.3", "2.6", "2.8"] {
        ok &= heading_comparison(case, &p)?.iter().all(|c| c.gl_equivalent && c.patterns_differ);
    }
    let phi = catalog::instantiate("2.4a", &HashMap::new())?;
    ok &= classify(&phi)?.case.name() == "2.4";
    Ok((ok, json!(out)))
}

fn gallery_suite() -> Result<(bool, Value)> {
    let mut ok = true;
    let mut out = Vec::new();
    for n in NAMES {
        let r = gallery_check(n, &HashMap::new())?;
        ok &= r.passes();
        out.push(json!({"name": n, "pass": r.passes(), "discrepancies": r.discrepancies().iter().map(|c| &c.name).collect::<Vec<_>>()}));
    }
    Ok((ok, json!(out)))
}

fn orbit_suite(seed: u64) -> Result<(bool, Value)> {
    let mut rng = random::rng(seed);
    let phi = catalog::instantiate("1.5c", &default_params())?;
    let mut invariant = true;
    for _ in 0..10 {
        let g = random::random_invertible(&mut rng, 4);
        let moved = phi.act(&g)?;
        invariant &= classify(&moved)?.case == classify(&phi)?.case && equivalent(&phi, &moved);
    }
    let q = quadric_of(&phi)?;
    let one = G::from(1);
    let axis = LinearSubspace::span(4, &[vec![one.clone(), G::zero(), G::zero(), G::zero()]]);
    let perps = perp(&phi, &axis, Side::Left).dim() == 3 && perp(&phi, &axis, Side::Right).dim() == 3;
    let c11 = Isomorphism::new(Matrix::from_ints(&[&[0, 1, 0, 0], &[2, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 3, 0]]))?;
    let p = [one.clone(), G::zero(), one.clone(), G::zero()];
    let fixed = smooth_fixed_point_check(&c11, &p)?.all_agree() && pairing(&c11, &p, &p).is_zero();
    let m = Type1Params::new([gq(1, 1), gq(2, 1), gq(1, 3), gq(1, 5), gq(3, 1), gq(5, 1)]).matrix();
    let g = StabilizerElement { alpha: gq(2, 1), beta: gq(1, 2), ..StabilizerElement::identity() };
    let acted = gc_action(&m, &g)?;
    let nf = Type1Params::new([gq(1, 1), gq(1, 1), gq(-1, 3), gq(1, 3), gq(0, 1), gq(0, 1)]).matrix();
    let (_, rep) = normal_form_m1(&nf)?;
    let ok = invariant && q.rank() == 4 && perps && fixed && acted != m && rep.char_poly_matches;
    Ok((ok, json!({"invariance": invariant, "perps": perps, "fixed_point": fixed, "m1": rep.char_poly_matches})))
}

fn congruence_suite(seed: u64) -> Result<(bool, Value)> {
    let mut rng = random::rng(seed ^ 0x11);
    let mut ok = true;
    let mut checked = 0;
    while checked < 6 {
        let v: [G; 6] = std::array::from_fn(|_| random::small_rational(&mut rng));
        let s = if checked % 2 == 0 {
            let p = Type1Params::new(v);
            if p.matrix().det().is_zero() {
                continue;
            }
            build_type1(&p)?
        } else {
            let p = Type2Params::new(v);
            if p.matrix().det().is_zero() {
                continue;
            }
            build_type2(&p)?
        };
        checked += 1;
        ok &= verify_axioms(&s).all_pass();
        let t = translation_map(&s)?;
        ok &= check_translation(&s, t.reduced.coords())?.holds();
        ok &= linearity_report(&s)?.consistent();
        ok &= normal_data(&s)?.rank_identity_holds();
        let d = degenerate_locus(&s)?;
        ok &= d.all_degenerate() || d.matches_predicted;
        ok &= s.transpose().transpose() == s;
        let tt = translation_map(&s.transpose())?.reduced;
        ok &= tt.compose(&t.reduced)?.proportional_to(&RationalMap::identity(3));
        ok &= parse_congruence(&json!({"n": 3, "type": s.kind().name(), "basis": basis_strings(&s), "phi_inv": s.phi_inv()}))? == s;
        let p = random::random_point(&mut rng, 3);
        if let Ok(f) = s.f_sigma(&p) {
            ok &= f.contains(&p);
        }
    }
    let p2 = Type2Params::new([0, 2, 1, 0, 3, -1].map(G::from));
    ok &= is_linear_translation(&build_type2(&p2)?)?;
    ok &= check_translation(&build_type2(&p2)?, &linear_case2_tuple(&p2)?).is_ok();
    Ok((ok, json!({"congruences_checked": checked})))
}

fn basis_strings(s: &QuadraticCongruence) -> Vec<String> {
    s.basis().iter().map(|b| b.to_string_with(&["X", "Y", "Z"])).collect()
}

fn model_suite(seed: u64) -> Result<(bool, Value)> {
    let mut rng = random::rng(seed ^ 0x22);
    let mut ok = true;
    for n in [3usize, 4] {
        let m = rng.gen_range(2..=n);
        let a = random::random_antisymmetric(&mut rng, n + 1);
        let model = StandardModel::new(n, m, a.clone())?;
        ok &= model::extract_antisymmetric(n, m, &model.b_matrix())? == a;
        let phi = model.phi();
        if phi.det().is_zero() {
            continue;
        }
        let s = model::geometric_build(&phi, n)?;
        ok &= verify_axioms(&s).all_pass();
        ok &= model::associated_isomorphism(&s)? == phi;
        ok &= model::sigma_prime_equation(&phi) == s.transpose().equation();
        let t = translation_map(&s)?;
        ok &= check_translation(&s, t.map.coords())?.holds();
        ok &= vec_proportional(&normal_data(&s)?.l.equations()[0], &model::o_perp_form(&phi));
    }
    Ok((ok, json!({})))
}

fn sections_suite(seed: u64) -> Result<(bool, Value)> {
    let mut rng = random::rng(seed ^ 0x33);
    let g = |n: i64| G::from(n);
    let mut ok = true;
    let m = conic_trivialize(&g(1), &g(2), &g(3), &g(4))?;
    ok &= !m.det().is_zero() && !pullback(&xy_minus_z2(), &m)?.is_zero();
    let (a, b, c) = (g(1), g(2), g(3));
    let d = &(&(&a * &a) + &(&b * &b)) - &(&g(4) * &c);
    ok &= pullback(&x02_plus_x12_minus_x22(), &rank3_normalize(&a, &b, &c)?)? == rank3_source(&a, &b, &c).scale(&d);
    ok &= pullback(&x02_plus_x12_minus_x22(), &rank3_printed_matrix(&a, &b, &c)?)? != rank3_source(&a, &b, &c).scale(&d);
    let alpha: Vec<G> = (0..5).map(|_| random::small_gaussian(&mut rng)).collect();
    if !normalizer_radicand(&alpha).is_zero() {
        ok &= quadric_normalize(&alpha)?.verify(&alpha);
    }
    let (al, nz) = normalize_member(&[g(1), g(2), g(-1), g(3), g(2)])?;
    ok &= nz.verify(&al);
    let pt = section_type6(&g(1), &g(2), &g(3), &g(-1))?;
    ok &= pt.len() == 3;
    let s1 = build_type1(&Type1Params::new([1, 2, 0, 3, -1, 1].map(G::from)))?;
    let (r1, m1) = r_map_type1(&s1)?.check()?;
    let s2 = build_type2(&Type2Params::new([1, -1, 2, 1, 3, -2].map(G::from)))?;
    let (r2, m2) = r_map_type2(&s2)?.check()?;
    let q = QuadraticRParams { alpha0: g(1), alpha1: g(0), beta0: g(2), beta1: g(-3), e: g(0), f: g(0) };
    let (r3, m3) = r_map_quadratic(&q)?.check()?;
    let l = LinearRParams { nu: g(1), alpha0: g(1), alpha1: g(0), w: g(2) };
    let (r4, m4) = r_map_linear(&l)?.check()?;
    ok &= r1.ok && m1 && r2.ok && m2 && r3.ok && m3 && r4.ok && m4;
    Ok((ok, json!({"rmaps": [r1.ok && m1, r2.ok && m2, r3.ok && m3, r4.ok && m4]})))
}

/// Run every suite with randomness drawn from `seed`.
pub fn run(seed: u64) -> SelftestReport {
    let suites = vec![
        suite("case-table", case_table_suite),
        suite("catalog", catalog_suite),
        suite("gallery", gallery_suite),
        suite("orbit", || orbit_suite(seed)),
        suite("congruence", || congruence_suite(seed)),
        suite("model", || model_suite(seed)),
        suite("sections", || sections_suite(seed)),
    ];
    let _ = translation_of;
    SelftestReport { seed, suites }
}
