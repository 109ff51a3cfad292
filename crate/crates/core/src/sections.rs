//! Rational sections of families of quadrics: conic trivialization, the
//! recursive normalizer of rank-`n` quadrics, and factorizations
//! `σ(P) = R(P)⁻¹(C₀)` of plane congruences.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bilinear::Quadric;
use crate::congruence::{build_type1, BasisKind, QuadraticCongruence};
use crate::error::{Error, Result};
use crate::field::{GaussianRational as G, Surd};
use crate::map::MatrixOfForms;
use crate::matrix::Matrix;
use crate::orbit::Type1Params;
use crate::poly::HomPoly;

fn g(v: i64) -> G {
    G::from(v)
}

/// `G` with `Eq_{XY−Z²}(G·v) = u·k·(uXY + vYZ + wXZ + tZ²)`, `k = vw − ut`.
pub fn conic_trivialize(u: &G, v: &G, w: &G, t: &G) -> Result<Matrix> {
    let k = &(v * w) - &(u * t);
    if (u * &k).is_zero() {
        return Err(Error::SingularConic);
    }
    let z = G::zero();
    Matrix::from_rows(vec![
        vec![u * &k, z.clone(), v * &k],
        vec![z.clone(), u.clone(), w.clone()],
        vec![z.clone(), z, k],
    ])
}

/// `q ∘ G` for a quadric equation `q` and a linear substitution `G`.
pub fn pullback(q: &HomPoly, m: &Matrix) -> Result<HomPoly> {
    let x = HomPoly::vars(m.cols());
    let forms: Vec<HomPoly> = (0..m.rows())
        .map(|i| (0..m.cols()).fold(HomPoly::zero(m.cols(), 1), |acc, j| &acc + &x[j].scale(&m[(i, j)])))
        .collect();
    q.substitute(&forms)
}

pub fn xy_minus_z2() -> HomPoly {
    let x = HomPoly::vars(3);
    &x[0].mul_poly(&x[1]) - &x[2].mul_poly(&x[2])
}

fn delta3(a: &G, b: &G, c: &G) -> G {
    &(&(a * a) + &(b * b)) - &(&g(4) * c)
}

fn rank3_matrix(a: &G, b: &G, c: &G, sign: i64) -> Result<Matrix> {
    let d = delta3(a, b, c);
    if d.is_zero() {
        return Err(Error::RankDrop);
    }
    let i = G::i();
    let one = G::one();
    let half = G::from_ratio(1, 2);
    let quarter = G::from_ratio(1, 4);
    // w = a + ib for sign = 1, a − ib for sign = −1
    let ib = &(&i * b) * &g(sign);
    let w = a + &ib;
    let wb = a - &ib;
    Matrix::from_rows(vec![
        vec![&(&d + &one) * &half, &(&i * &(&d - &one)) * &half, &(&(&d * &w) + &wb) * &quarter],
        vec![&(&i * &(&d - &one)) * &half, -&(&(&d + &one) * &half), &(&i * &(&(&d * &w) - &wb)) * &quarter],
        vec![G::zero(), G::zero(), &d * &half],
    ])
}

/// Matrix `G` with `Eq_{X₀²+X₁²−X₂²}(G·v) = δ·(X₀²+X₁²+X₂(aX₀+bX₁+cX₂))`,
/// `δ = a²+b²−4c`.
pub fn rank3_normalize(a: &G, b: &G, c: &G) -> Result<Matrix> {
    rank3_matrix(a, b, c, 1)
}

/// The base-case matrix with `a − ib` and `a + ib` placed as printed; it
/// satisfies the identity only when `b = 0`.
pub fn rank3_printed_matrix(a: &G, b: &G, c: &G) -> Result<Matrix> {
    rank3_matrix(a, b, c, -1)
}

pub fn rank3_source(a: &G, b: &G, c: &G) -> HomPoly {
    quadric_source(&[a.clone(), b.clone(), c.clone()])
}

/// `X₀² + ⋯ + X_{n−2}² + X_{n−1}(α₀X₀ + ⋯ + α_{n−1}X_{n−1})`.
pub fn quadric_source(alpha: &[G]) -> HomPoly {
    let n = alpha.len();
    let x = HomPoly::vars(n);
    let mut q = HomPoly::zero(n, 2);
    for k in 0..n - 1 {
        q = &q + &x[k].mul_poly(&x[k]);
    }
    for (k, a) in alpha.iter().enumerate() {
        q = &q + &x[n - 1].mul_poly(&x[k]).scale(a);
    }
    q
}

pub fn x02_plus_x12_minus_x22() -> HomPoly {
    let x = HomPoly::vars(3);
    &(&x[0].mul_poly(&x[0]) + &x[1].mul_poly(&x[1])) - &x[2].mul_poly(&x[2])
}

/// Linear forms `L₀ … L_{n−2}` and `β` over `Q(i)(√D)` with
/// `Σ L_k² − β²X_{n−1}² = X₀² + ⋯ + X_{n−2}² + X_{n−1}(α·X)`.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub radicand: G,
    /// `(n−1) × n` coefficients of the forms `L_k`.
    pub rows: Vec<Vec<Surd>>,
    pub beta: Surd,
    pub depth: usize,
}

impl Normalization {
    pub fn n(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Check the defining identity through the rational and radical parts of
    /// its Gram matrix.
    pub fn verify(&self, alpha: &[G]) -> bool {
        let n = self.n();
        if alpha.len() != n || self.rows.len() != n - 1 {
            return false;
        }
        let mut rat = Matrix::zeros(n, n);
        let mut rad = Matrix::zeros(n, n);
        for row in &self.rows {
            for i in 0..n {
                for j in 0..n {
                    let p = row[i].mul(&row[j]);
                    rat[(i, j)] += &p.rational;
                    rad[(i, j)] += &p.radical;
                }
            }
        }
        let b2 = self.beta.mul(&self.beta);
        rat[(n - 1, n - 1)] -= &b2.rational;
        rad[(n - 1, n - 1)] -= &b2.radical;
        let target = Quadric::from_equation(quadric_source(alpha)).expect("quadric").gram().clone();
        rat == target && rad.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "radicand": self.radicand,
            "rows": self.rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "beta": self.beta.to_string(),
            "depth": self.depth,
        })
    }
}

pub fn normalizer_radicand(alpha: &[G]) -> G {
    let n = alpha.len();
    let s = alpha[..n - 1].iter().fold(G::zero(), |acc, a| &acc + &(a * a));
    &s - &(&g(4) * &alpha[n - 1])
}

pub fn quadric_normalize(alpha: &[G]) -> Result<Normalization> {
    let n = alpha.len();
    if n < 3 {
        return Err(Error::Dimension("the normalizer needs n >= 3".into()));
    }
    let d = normalizer_radicand(alpha);
    if d.is_zero() {
        return Err(Error::RankDrop);
    }
    if n == 3 {
        let m = rank3_normalize(&alpha[0], &alpha[1], &alpha[2])?;
        let dinv = d.inv()?;
        // rows of G/√D = G·√D/D
        let rows = (0..2)
            .map(|i| (0..3).map(|j| Surd::new(G::zero(), &m[(i, j)] * &dinv, d.clone())).collect())
            .collect();
        let beta = Surd::new(G::zero(), G::from_ratio(1, 2), d.clone());
        return Ok(Normalization { radicand: d, rows, beta, depth: 0 });
    }
    let a_prev = &alpha[n - 2];
    let gamma = &alpha[n - 1] - &(&(a_prev * a_prev) * &G::from_ratio(1, 4));
    let mut sub: Vec<G> = alpha[..n - 2].to_vec();
    sub.push(gamma);
    let inner = quadric_normalize(&sub)?;
    if inner.radicand != d {
        return Err(Error::Constraint("recursion changed the rank condition".into()));
    }
    let zero = Surd::from_rational(G::zero(), &d);
    let mut rows: Vec<Vec<Surd>> = inner
        .rows
        .iter()
        .map(|r| {
            let mut full = vec![zero.clone(); n];
            for (k, s) in r.iter().enumerate() {
                let target = if k < n - 2 { k } else { n - 1 };
                full[target] = s.clone();
            }
            full
        })
        .collect();
    let mut extra = vec![zero.clone(); n];
    extra[n - 2] = Surd::from_rational(G::one(), &d);
    extra[n - 1] = Surd::from_rational(a_prev * &G::from_ratio(1, 2), &d);
    rows.push(extra);
    Ok(Normalization { radicand: d, rows, beta: inner.beta, depth: inner.depth + 1 })
}

/// Normalize a member `Σ w_j p_j` of the space of quadrics containing a smooth
/// `C`, written in the normal basis with `c_rank = n − 1`.
pub fn normalize_member(w: &[G]) -> Result<(Vec<G>, Normalization)> {
    let n = w.len() - 1;
    let s = &w[n];
    if s.is_zero() {
        return Err(Error::RankDrop);
    }
    let inv = s.inv()?;
    let alpha: Vec<G> = w[..n].iter().map(|x| x * &inv).collect();
    let norm = quadric_normalize(&alpha)?;
    Ok((alpha, norm))
}

/// Point `(a+b, a+b, −c−d)` on the conic `aXZ + bYZ + cX² + dY²`.
pub fn section_type6(a: &G, b: &G, c: &G, d: &G) -> Result<Vec<G>> {
    let s = a + b;
    let t = -&(c + d);
    if s.is_zero() && t.is_zero() {
        return Err(Error::SectionUndefined);
    }
    Ok(vec![s.clone(), s, t])
}

/// Outcome of `Eq_{C₀}(R(P)·v) = h(P)·Eq_{σ(P)}(v)`.
#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub ok: bool,
    pub extraneous: Option<HomPoly>,
    pub detail: String,
}

impl PullbackReport {
    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok,
            "extraneous": self.extraneous.as_ref().map(|h| h.to_string()),
            "detail": self.detail,
        })
    }
}

pub fn verify_pullback(r: &MatrixOfForms, c0: &Quadric, s: &QuadraticCongruence) -> Result<PullbackReport> {
    let n = s.n();
    if r.dim() != n || c0.ambient_dim() != n || r.nvars() != n {
        return Err(Error::Dimension("R, C₀ and σ must live on the same plane".into()));
    }
    let psi = c0.equation().substitute(&r.apply_to_vector())?;
    let eq = s.equation();
    match psi.exact_div(&eq) {
        Ok(q) if q.degree_in_vars(n..2 * n) == 0 => {
            let keep: Vec<usize> = (0..n).collect();
            Ok(PullbackReport { ok: true, extraneous: Some(q.restrict(&keep)), detail: "exact".into() })
        }
        Ok(_) => Ok(PullbackReport { ok: false, extraneous: None, detail: "quotient depends on the fibre variables".into() }),
        Err(Error::InexactDivision(rem)) => {
            Ok(PullbackReport { ok: false, extraneous: None, detail: format!("remainder {rem}") })
        }
        Err(e) => Err(e),
    }
}

/// A factorization `σ(P) = R(P)⁻¹(C₀)` with its predicted extraneous factor.
#[derive(Clone, Debug)]
pub struct RMap {
    pub r: MatrixOfForms,
    pub c0: Quadric,
    pub sigma: QuadraticCongruence,
    pub predicted: HomPoly,
}

impl RMap {
    pub fn check(&self) -> Result<(PullbackReport, bool)> {
        let rep = verify_pullback(&self.r, &self.c0, &self.sigma)?;
        let matches = rep.extraneous.as_ref() == Some(&self.predicted);
        Ok((rep, matches))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "R": self.r.to_json(),
            "C0": self.c0.equation().to_string(),
            "sigma": self.sigma.to_json(),
            "predicted_extraneous": self.predicted.to_string(),
        })
    }
}

fn c0_quadric() -> Quadric {
    Quadric::from_equation(xy_minus_z2()).expect("conic")
}

pub fn r_map_type1(s: &QuadraticCongruence) -> Result<RMap> {
    if s.kind() != BasisKind::Type1 {
        return Err(Error::Shape("expected a type-1 congruence".into()));
    }
    let c = s.coords();
    let (pxy, pyz, pxz, pzz) = (&c[0], &c[1], &c[2], &c[3]);
    let delta = &pyz.mul_poly(pxz) - &pxy.mul_poly(pzz);
    if delta.is_zero() {
        return Err(Error::AllDegenerate);
    }
    let z = HomPoly::var(3, 2);
    let z2 = z.mul_poly(&z);
    let z4 = z2.mul_poly(&z2);
    let zero = HomPoly::zero(3, 6);
    let r = MatrixOfForms::new(vec![
        vec![pxy.mul_poly(&delta), zero.clone(), pyz.mul_poly(&delta)],
        vec![zero.clone(), z4.mul_poly(pxy), z4.mul_poly(pxz)],
        vec![zero.clone(), zero, z2.mul_poly(&delta)],
    ])?;
    let predicted = z4.mul_poly(&delta).mul_poly(pxy);
    Ok(RMap { r, c0: c0_quadric(), sigma: s.clone(), predicted })
}

pub fn r_map_type2(s: &QuadraticCongruence) -> Result<RMap> {
    if s.kind() != BasisKind::Type2 {
        return Err(Error::Shape("expected a type-2 congruence".into()));
    }
    let c = s.coords();
    let (pxz, pyy, pyz, pzz) = (&c[0], &c[1], &c[2], &c[3]);
    if pyy.is_zero() {
        return Err(Error::AllDegenerate);
    }
    let zero = HomPoly::zero(3, 2);
    let r = MatrixOfForms::new(vec![
        vec![pxz.clone(), pyz.clone(), pzz.clone()],
        vec![zero.clone(), zero.clone(), -pyy.clone()],
        vec![zero.clone(), pyy.clone(), zero],
    ])?;
    Ok(RMap { r, c0: c0_quadric(), sigma: s.clone(), predicted: -pyy.clone() })
}

/// Parameters of the quadratic factorization.
#[derive(Clone, Debug)]
pub struct QuadraticRParams {
    pub alpha0: G,
    pub alpha1: G,
    pub beta0: G,
    pub beta1: G,
    pub e: G,
    pub f: G,
}

fn sum3(t: [HomPoly; 3]) -> HomPoly {
    let [a, b, c] = t;
    &(&a + &b) + &c
}

pub fn r_map_quadratic(p: &QuadraticRParams) -> Result<RMap> {
    let QuadraticRParams { alpha0: a0, alpha1: a1, beta0: b0, beta1: b1, e, f } = p;
    if a0 == a1 {
        return Err(Error::Constraint("α₀ ≠ α₁".into()));
    }
    let lhs = &(&(&(&(a0 * a0) - &(&g(4) * &(a0 * a1))) + &(a1 * a1)) - b0) - b1;
    if lhs != g(2) {
        return Err(Error::Constraint("α₀² − 4α₀α₁ + α₁² − β₀ − β₁ = 2".into()));
    }
    let k0 = b0 + &(a1 * a1);
    let k1 = b1 + &(a0 * a0);
    if k0.is_zero() || k1.is_zero() {
        return Err(Error::Constraint("β₀ + α₁² ≠ 0 and β₁ + α₀² ≠ 0".into()));
    }
    let x = HomPoly::vars(3);
    let (xx, yy, zz) = (&x[0], &x[1], &x[2]);
    let xy = xx.mul_poly(yy);
    let yz = yy.mul_poly(zz);
    let xz = xx.mul_poly(zz);
    let z2 = zz.mul_poly(zz);
    let f0 = &yy.scale(&k0) - &zz.scale(f);
    let f1 = &xx.scale(&k1) - &zz.scale(e);
    let q0 = zz.mul_poly(&f0);
    let q1 = zz.mul_poly(&f1);
    let c0 = &(b0 * b1) - &(&(a0 * a0) * &(a1 * a1));
    let s0 = sum3([xy.scale(&c0), yz.scale(&-(b0 * e)), xz.scale(&-(b1 * f))]);
    let s0 = &s0 + &z2.scale(&(e * f));
    let c1 = -&(&(&(b0 + b1) + &(a0 * a0)) + &(a1 * a1));
    let s1 = sum3([xy.scale(&c1), yz.scale(e), xz.scale(f)]);
    let c2 = &(&(&(a0 * &(a1 * a1)) + &(&(a0 * a0) * a1)) + &(a0 * b0)) + &(a1 * b1);
    let s2 = sum3([xy.scale(&-c2), yz.scale(&(a1 * e)), xz.scale(&(a0 * f))]);
    let r = MatrixOfForms::new(vec![
        vec![q0.scale(&(a0 * a0)), q1.scale(&(a1 * a1)), s0],
        vec![q0.clone(), q1.clone(), s1],
        vec![q0.scale(a0), q1.scale(a1), s2],
    ])?;
    let one = G::one();
    let diff = a0 - a1;
    let c = &one - &(&diff * &diff);
    let d = &(&(&one + b0) - &(a0 * a0)) + &(&g(2) * &(a0 * a1));
    let sigma = build_type1(&Type1Params::new([G::zero(), G::zero(), c, d, e.clone(), f.clone()]))?;
    Ok(RMap { r, c0: c0_quadric(), sigma, predicted: f0.mul_poly(&f1) })
}

/// Parameters of the linear factorization; `ν = 1/(α₀ − α₁)²`.
#[derive(Clone, Debug)]
pub struct LinearRParams {
    pub nu: G,
    pub alpha0: G,
    pub alpha1: G,
    pub w: G,
}

pub fn r_map_linear(p: &LinearRParams) -> Result<RMap> {
    let LinearRParams { nu, alpha0: a0, alpha1: a1, w } = p;
    if a0 == a1 {
        return Err(Error::Constraint("α₀ ≠ α₁".into()));
    }
    let diff = a0 - a1;
    if *nu != (&diff * &diff).inv()? {
        return Err(Error::Constraint("ν = 1/(α₀ − α₁)²".into()));
    }
    if w.is_zero() {
        return Err(Error::Constraint("w ≠ 0".into()));
    }
    let x = HomPoly::vars(3);
    let (xx, yy, zz) = (&x[0], &x[1], &x[2]);
    let na0 = nu * a0;
    let na02 = &na0 * a0;
    let a12 = a1 * a1;
    let r = MatrixOfForms::new(vec![
        vec![zz.scale(&na02), zz.scale(&a12), &(&-xx.scale(&na02) - &yy.scale(&a12)) + &zz.scale(w)],
        vec![zz.scale(nu), zz.clone(), &-xx.scale(nu) - yy],
        vec![zz.scale(&na0), zz.scale(a1), &-xx.scale(&na0) - &yy.scale(a1)],
    ])?;
    let sigma =
        build_type1(&Type1Params::new([G::zero(), G::zero(), G::zero(), G::zero(), -w, -&(w * nu)]))?;
    Ok(RMap { r, c0: c0_quadric(), sigma, predicted: HomPoly::one(3) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gq;

    #[test]
    fn trivializations() {
        let m = conic_trivialize(&gq(1, 1), &gq(1, 1), &gq(1, 1), &gq(0, 1)).unwrap();
        assert_eq!(m, Matrix::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]));
        assert!(matches!(conic_trivialize(&gq(0, 1), &gq(1, 1), &gq(1, 1), &gq(0, 1)), Err(Error::SingularConic)));
    }

    #[test]
    fn base_case_diagonal() {
        let m = rank3_normalize(&gq(0, 1), &gq(0, 1), &gq(-1, 4)).unwrap();
        assert_eq!(m, Matrix::diagonal(&[gq(1, 1), gq(-1, 1), gq(1, 2)]));
        assert!(matches!(rank3_normalize(&gq(0, 1), &gq(0, 1), &gq(0, 1)), Err(Error::RankDrop)));
    }

    #[test]
    fn normalizer_small() {
        let alpha = [gq(0, 1), gq(0, 1), gq(0, 1), gq(1, 1)];
        let nz = quadric_normalize(&alpha).unwrap();
        assert_eq!(nz.depth, 1);
        assert!(nz.verify(&alpha));
    }

    #[test]
    fn type6_section() {
        assert_eq!(section_type6(&gq(1, 1), &gq(0, 1), &gq(0, 1), &gq(-1, 1)).unwrap(), vec![gq(1, 1); 3]);
        assert!(section_type6(&gq(1, 1), &gq(-1, 1), &gq(1, 1), &gq(-1, 1)).is_err());
    }
}
