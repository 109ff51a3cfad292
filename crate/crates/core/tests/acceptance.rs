//! The eleven acceptance criteria, each printed as one PASS/FAIL line and
//! compared with the recorded expected outcome.

use std::collections::HashMap;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;

use quadcong::bilinear::Isomorphism;
use quadcong::catalog::{self, case_table, catalog_check, check_entry, corrupted, default_params, entries};
use quadcong::congruence::*;
use quadcong::expr::env_of;
use quadcong::gallery::{gallery_check, NAMES};
use quadcong::map::RationalMap;
use quadcong::matrix::vec_proportional;
use quadcong::model::{self, StandardModel};
use quadcong::orbit::{classify, Type1Params};
use quadcong::random::{self, small_gaussian, small_rational};
use quadcong::sections::*;
use quadcong::{gq, GaussianRational as G, Matrix};

/// Criteria recorded as failing: 1 (case 2.6 display), 4 (printed rank-3
/// coefficient), 7 (printed base matrix), 10 (listed degeneracy products).
const EXPECTED: [bool; 11] = [false, true, true, false, true, true, false, true, true, false, true];

struct Outcome {
    pass: bool,
    summary: String,
}

fn six(rng: &mut StdRng) -> [G; 6] {
    std::array::from_fn(|_| small_rational(rng))
}

fn random_type1(rng: &mut StdRng) -> QuadraticCongruence {
    loop {
        let p = Type1Params::new(six(rng));
        if !p.matrix().det().is_zero() {
            return build_type1(&p).unwrap();
        }
    }
}

fn random_type2(rng: &mut StdRng) -> QuadraticCongruence {
    loop {
        let p = Type2Params::new(six(rng));
        if !p.matrix().det().is_zero() {
            return build_type2(&p).unwrap();
        }
    }
}

fn criterion1() -> Outcome {
    let rows = case_table().unwrap();
    let failing: Vec<&str> = rows.iter().filter(|r| !r.passes()).map(|r| r.case.as_str()).collect();
    let corrected_ok = rows.iter().filter(|r| !r.passes()).all(|r| r.corrected.as_ref().is_some_and(|c| c.0.passes()));
    let stray = rows.iter().find_map(|r| r.stray.as_ref().map(|s| (r.case.clone(), s.0.passes())));
    assert!(corrected_ok, "every failing row has a passing correction");
    Outcome {
        pass: failing.is_empty(),
        summary: format!(
            "case table: {}/13 displays reproduce verbatim, failing {:?} (corrected display passes); stray factor in {:?} at 3 reproduces T: {} (reported only)",
            13 - failing.len(),
            failing,
            stray.as_ref().map(|s| &s.0),
            stray.as_ref().is_some_and(|s| s.1)
        ),
    }
}

fn criterion2() -> Outcome {
    let second = env_of(&[("l", gq(1, 3)), ("m", gq(5, 1))]);
    let mut bad = Vec::new();
    for e in entries() {
        for p in [default_params(), second.clone()] {
            if !catalog_check(&e.label, &p).unwrap().passes() {
                bad.push(e.label.clone());
            }
        }
    }
    Outcome { pass: bad.is_empty(), summary: format!("catalog: 33 entries at two parameter sets, failures {bad:?}") }
}

fn criterion3() -> Outcome {
    let mut rng = random::rng(3);
    let mut bad = 0;
    for k in 0..200 {
        let s = if k < 100 { random_type1(&mut rng) } else { random_type2(&mut rng) };
        let r = verify_axioms(&s);
        let nd = normal_data(&s).unwrap();
        if !(r.incidence && r.image_in_quadric && nd.rank_identity_holds()) {
            bad += 1;
        }
    }
    Outcome { pass: bad == 0, summary: format!("axioms and rank C = rank Q − 2 on 100 draws per type, {bad} failures") }
}

fn criterion4() -> Outcome {
    let mut rng = random::rng(4);
    let (mut printed_bad, mut derived_bad, mut lin_bad) = ([0; 2], [0; 2], 0);
    for k in 0..100 {
        let t = k / 50;
        let s = if t == 0 { random_type1(&mut rng) } else { random_type2(&mut rng) };
        let printed = match t {
            0 => type1_translation(&s.type1_params().unwrap()),
            _ => printed_v1_tuple(&s.type2_params().unwrap()),
        };
        let reduced = RationalMap::new(printed).unwrap().reduced();
        if !check_translation(&s, reduced.coords()).unwrap().holds() {
            printed_bad[t] += 1;
        }
        let derived = translation_map(&s).unwrap().reduced;
        if !check_translation(&s, derived.coords()).unwrap().holds() {
            derived_bad[t] += 1;
        }
        if !linearity_report(&s).unwrap().consistent() {
            lin_bad += 1;
        }
    }
    assert_eq!(derived_bad, [0, 0], "derived tuples satisfy both guarantees");
    assert_eq!(lin_bad, 0, "linearity views agree");
    Outcome {
        pass: printed_bad == [0, 0] && lin_bad == 0,
        summary: format!(
            "printed translation tuples on 50 draws per type: failures type 1 {}, type 2 {} (corrected rank-3 tuple: 0 failures); linearity views agree",
            printed_bad[0], printed_bad[1]
        ),
    }
}

fn criterion5() -> Outcome {
    let mut rng = random::rng(5);
    let (mut bad, mut tested) = (0, 0);
    for k in 0..20 {
        let s = if k % 2 == 0 { random_type1(&mut rng) } else { random_type2(&mut rng) };
        if s.transpose().transpose() != s {
            bad += 1;
        }
        let t = translation_map(&s).unwrap().reduced;
        let tt = translation_map(&s.transpose()).unwrap().reduced;
        for _ in 0..20 {
            let p = random::random_point(&mut rng, 3);
            let q = t.eval(&p);
            let r = tt.eval(&q);
            if p.iter().all(Zero::is_zero) || r.iter().all(Zero::is_zero) {
                continue;
            }
            tested += 1;
            if !vec_proportional(&r, &p) {
                bad += 1;
            }
        }
    }
    Outcome { pass: bad == 0 && tested > 0, summary: format!("transpose laws: {tested} point checks, {bad} failures") }
}

fn criterion6() -> Outcome {
    let mut rng = random::rng(6);
    let (mut bad, mut built) = (0, 0);
    for n in [3usize, 4, 5] {
        for _ in 0..100 {
            let m = rng.gen_range(2..=n);
            let a = random::random_antisymmetric(&mut rng, n + 1);
            let model = StandardModel::new(n, m, a.clone()).unwrap();
            if model::extract_antisymmetric(n, m, &model.b_matrix()).unwrap() != a {
                bad += 1;
            }
            let phi = model.phi();
            if phi.det().is_zero() {
                continue;
            }
            built += 1;
            let s = model::geometric_build(&phi, n).unwrap();
            if !verify_axioms(&s).all_pass() || model::associated_isomorphism(&s).unwrap() != phi {
                bad += 1;
            }
        }
    }
    Outcome {
        pass: bad == 0,
        summary: format!("dictionary round trip on 300 matrices, {built} nonsingular model builds verified, {bad} failures"),
    }
}

fn criterion7() -> Outcome {
    let mut rng = random::rng(7);
    let mut bad = 0;
    for n in 3..=6 {
        let mut done = 0;
        while done < 50 {
            let alpha: Vec<G> = (0..n).map(|_| small_gaussian(&mut rng)).collect();
            if normalizer_radicand(&alpha).is_zero() {
                continue;
            }
            done += 1;
            if !quadric_normalize(&alpha).unwrap().verify(&alpha) {
                bad += 1;
            }
        }
    }
    let (mut printed_bad, mut corrected_bad, mut draws) = (0, 0, 0);
    while draws < 50 {
        let (a, b, c) = (small_gaussian(&mut rng), small_gaussian(&mut rng), small_gaussian(&mut rng));
        let d = &(&(&a * &a) + &(&b * &b)) - &(&G::from(4) * &c);
        if d.is_zero() {
            continue;
        }
        draws += 1;
        let target = rank3_source(&a, &b, &c).scale(&d);
        if pullback(&x02_plus_x12_minus_x22(), &rank3_printed_matrix(&a, &b, &c).unwrap()).unwrap() != target {
            printed_bad += 1;
        }
        if pullback(&x02_plus_x12_minus_x22(), &rank3_normalize(&a, &b, &c).unwrap()).unwrap() != target {
            corrected_bad += 1;
        }
    }
    assert_eq!((bad, corrected_bad), (0, 0));
    Outcome {
        pass: bad == 0 && printed_bad == 0,
        summary: format!(
            "normalizer identity on 200 draws: {bad} failures; printed base matrix fails on {printed_bad}/50 draws (corrected matrix: 0)"
        ),
    }
}

fn criterion8() -> Outcome {
    let mut rng = random::rng(8);
    let mut counts = [0usize; 4];
    let mut bad = 0;
    let mut degree_ok = true;
    while counts[0] < 20 {
        if let Ok(r) = r_map_type1(&random_type1(&mut rng)) {
            counts[0] += 1;
            degree_ok &= r.r.degree() == 6;
            bad += usize::from(!r.check().map(|(rep, m)| rep.ok && m).unwrap());
        }
    }
    while counts[1] < 20 {
        if let Ok(r) = r_map_type2(&random_type2(&mut rng)) {
            counts[1] += 1;
            bad += usize::from(!r.check().map(|(rep, m)| rep.ok && m).unwrap());
        }
    }
    while counts[2] < 20 {
        let a0 = small_rational(&mut rng);
        let a1 = &a0 + &random::nonzero_rational(&mut rng);
        let b0 = small_rational(&mut rng);
        let b1 = &(&(&(&(&a0 * &a0) - &(&G::from(4) * &(&a0 * &a1))) + &(&a1 * &a1)) - &b0) - &G::from(2);
        let p = QuadraticRParams {
            alpha0: a0,
            alpha1: a1,
            beta0: b0,
            beta1: b1,
            e: small_rational(&mut rng),
            f: small_rational(&mut rng),
        };
        if let Ok(r) = r_map_quadratic(&p) {
            counts[2] += 1;
            bad += usize::from(!r.check().map(|(rep, m)| rep.ok && m).unwrap());
        }
    }
    while counts[3] < 20 {
        let a0 = small_rational(&mut rng);
        let step = random::nonzero_rational(&mut rng);
        let a1 = &a0 + &step;
        let nu = (&step * &step).inv().unwrap();
        let p = LinearRParams { nu, alpha0: a0, alpha1: a1, w: random::nonzero_rational(&mut rng) };
        if let Ok(r) = r_map_linear(&p) {
            counts[3] += 1;
            bad += usize::from(!r.check().map(|(rep, m)| rep.ok && m).unwrap());
        }
    }
    Outcome {
        pass: bad == 0 && degree_ok,
        summary: format!("R-map factorizations on 20 instances per kind: {bad} failures, type-1 degree 6: {degree_ok}"),
    }
}

fn criterion9() -> Outcome {
    let mut ok = true;
    let mut found = Vec::new();
    for n in NAMES {
        let r = gallery_check(n, &HashMap::new()).unwrap();
        ok &= r.passes();
        found.extend(r.discrepancies().iter().map(|c| format!("{n}: {}", c.name)));
    }
    let detected = found.iter().any(|d| d.starts_with("tangente"));
    Outcome { pass: ok && detected, summary: format!("gallery: 4 examples, recorded discrepancies {found:?}") }
}

fn criterion10() -> Outcome {
    let mut rng = random::rng(10);
    let (mut displayed_bad, mut predicted_bad, mut lines_bad) = (0, 0, 0);
    for k in 0..100 {
        let s = if k < 50 { random_type1(&mut rng) } else { random_type2(&mut rng) };
        let d = degenerate_locus(&s).unwrap();
        if d.all_degenerate() {
            continue;
        }
        displayed_bad += usize::from(!d.matches_displayed);
        predicted_bad += usize::from(!d.matches_predicted);
        lines_bad += usize::from(d.line_count != if k < 50 { 6 } else { 4 });
    }
    assert_eq!((predicted_bad, lines_bad), (0, 0));
    Outcome {
        pass: displayed_bad == 0,
        summary: format!(
            "degeneracy loci on 50 draws per type: listed products match on {} draws; with H(σ) for L(σ) and the squared quadratic all match",
            100 - displayed_bad
        ),
    }
}

fn criterion11() -> Outcome {
    let params = default_params();
    let survivors: Vec<String> = entries()
        .iter()
        .filter(|e| check_entry(&corrupted(e), &params).is_ok_and(|r| r.passes()))
        .map(|e| e.label.clone())
        .collect();
    let mut rng = random::rng(11);
    let mut changed = 0;
    for k in 0..50 {
        let e = &entries()[k % entries().len()];
        let phi = catalog::instantiate(&e.label, &params).unwrap();
        let g = random::random_invertible(&mut rng, 4);
        let moved: Isomorphism = phi.act(&g).unwrap();
        if classify(&moved).unwrap().case != classify(&phi).unwrap().case {
            changed += 1;
        }
    }
    Outcome {
        pass: survivors.is_empty() && changed == 0,
        summary: format!("corrupted entries passing: {survivors:?}; classify changed under {changed}/50 actions"),
    }
}

#[test]
fn acceptance() {
    let runs: [fn() -> Outcome; 11] = [
        criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8, criterion9,
        criterion10, criterion11,
    ];
    let mut mismatches = Vec::new();
    for (k, run) in runs.iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {tag}  {}", k + 1, o.summary);
        if o.pass != EXPECTED[k] {
            mismatches.push(k + 1);
        }
    }
    assert!(mismatches.is_empty(), "outcomes differ from the recorded table for criteria {mismatches:?}");
}

#[test]
fn corrupted_type2_entry_keeps_its_symmetric_part() {
    let e = catalog::entry("2.8c").unwrap();
    let c = corrupted(e);
    assert_ne!(c.phi_inv, e.phi_inv);
    let m = Matrix::from_rows(quadcong::expr::eval_matrix(&c.phi_inv, &HashMap::new()).unwrap()).unwrap();
    assert!(!m.sym_part()[(2, 2)].is_zero());
}
