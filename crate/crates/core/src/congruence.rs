//! Quadratic congruences: rational maps `σ` from `P_{n−1}` to a space `W₀` of
//! quadric equations such that `P ∈ σ(P)`.
//!
//! A congruence is stored as a basis `p` of `W₀` and the matrix `M` of
//! `σ* = φ⁻¹` in that basis. The coordinates of `σ(P)` are `c(P) = Mᵀ·p(P)`,
//! so that `Eq_{σ(Q)}(P) = p(Q)ᵀ·M·p(P)`.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::bilinear::{LinearSubspace, Quadric};
use crate::error::{Error, Result};
use crate::expr::{eval_scalar, parse_poly};
use crate::field::GaussianRational as G;
use crate::map::{bilinear_forms, det_forms, mat_forms, RationalMap};
use crate::matrix::Matrix;
use crate::model;
use crate::orbit::Type1Params;
use crate::poly::{default_names, linear_coeffs, linear_form, proportional, sum, HomPoly};
use crate::random;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Type1,
    Type2,
    /// Basis `(x_k·x_{n−1} for k < n−1, x_{n−1}², s)` with `s` a sum of `c_rank` squares.
    Normal { c_rank: usize },
    Custom,
}

impl BasisKind {
    pub fn name(&self) -> &'static str {
        match self {
            BasisKind::Type1 => "1",
            BasisKind::Type2 => "2",
            BasisKind::Normal { .. } => "normal",
            BasisKind::Custom => "custom",
        }
    }
}

/// `(a, …, f)` for the type-2 matrix
/// `[[0,a,b,c],[−a,0,d,e−1],[−b,−d,2,f],[−c,−e−1,−f,0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type2Params {
    pub a: G,
    pub b: G,
    pub c: G,
    pub d: G,
    pub e: G,
    pub f: G,
}

impl Type2Params {
    pub fn new(v: [G; 6]) -> Self {
        let [a, b, c, d, e, f] = v;
        Type2Params { a, b, c, d, e, f }
    }

    pub fn as_array(&self) -> [G; 6] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone(), self.e.clone(), self.f.clone()]
    }

    pub fn matrix(&self) -> Matrix {
        let one = G::one();
        let z = G::zero();
        let Type2Params { a, b, c, d, e, f } = self;
        Matrix::from_rows(vec![
            vec![z.clone(), a.clone(), b.clone(), c.clone()],
            vec![-a, z.clone(), d.clone(), e - &one],
            vec![-b, -d, G::from(2), f.clone()],
            vec![-c, -(e + &one), -f, z],
        ])
        .expect("4x4")
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::Shape("type-2 matrices are 4x4".into()));
        }
        let one = G::one();
        let p = Type2Params {
            a: m[(0, 1)].clone(),
            b: m[(0, 2)].clone(),
            c: m[(0, 3)].clone(),
            d: m[(1, 2)].clone(),
            e: &m[(1, 3)] + &one,
            f: m[(2, 3)].clone(),
        };
        if p.matrix() != *m {
            return Err(Error::Shape("matrix is not antisymmetric plus the type-2 pattern".into()));
        }
        Ok(p)
    }
}

fn mono(exp: [u32; 3]) -> HomPoly {
    HomPoly::monomial(3, exp.to_vec(), G::one())
}

pub fn type1_basis() -> Vec<HomPoly> {
    vec![mono([1, 1, 0]), mono([0, 1, 1]), mono([1, 0, 1]), mono([0, 0, 2])]
}

pub fn type2_basis() -> Vec<HomPoly> {
    vec![mono([1, 0, 1]), mono([0, 2, 0]), mono([0, 1, 1]), mono([0, 0, 2])]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticCongruence {
    n: usize,
    kind: BasisKind,
    basis: Vec<HomPoly>,
    phi_inv: Matrix,
    coords: Vec<HomPoly>,
}

impl QuadraticCongruence {
    /// Checked constructor: basis of `n+1` independent quadrics in `n`
    /// variables, invertible `phi_inv`, and `P ∈ σ(P)` identically.
    pub fn new(n: usize, kind: BasisKind, basis: Vec<HomPoly>, phi_inv: Matrix) -> Result<Self> {
        if basis.len() != n + 1 || phi_inv.rows() != n + 1 || phi_inv.cols() != n + 1 {
            return Err(Error::Dimension(format!("a congruence on P_{} needs {} basis forms", n - 1, n + 1)));
        }
        if basis.iter().any(|b| b.nvars() != n || b.degree() != 2 || b.is_zero()) {
            return Err(Error::DegreeMismatch("basis forms must be nonzero quadrics".into()));
        }
        if coefficient_rank(&basis) != n + 1 {
            return Err(Error::Dimension("basis forms are linearly dependent".into()));
        }
        if phi_inv.det().is_zero() {
            return Err(Error::Singular);
        }
        let s = Self::unchecked(n, kind, basis, phi_inv);
        if !s.incidence().is_zero() {
            return Err(Error::Constraint("P does not lie on σ(P)".into()));
        }
        Ok(s)
    }

    /// No checks; coordinates derived from `phi_inv`.
    pub fn unchecked(n: usize, kind: BasisKind, basis: Vec<HomPoly>, phi_inv: Matrix) -> Self {
        let coords = mat_forms(&phi_inv.transpose(), &basis);
        QuadraticCongruence { n, kind, basis, phi_inv, coords }
    }

    /// No checks, with explicitly supplied coordinates (for negative tests).
    pub fn with_coords(&self, coords: Vec<HomPoly>) -> Self {
        QuadraticCongruence { coords, ..self.clone() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn basis(&self) -> &[HomPoly] {
        &self.basis
    }

    pub fn phi_inv(&self) -> &Matrix {
        &self.phi_inv
    }

    pub fn coords(&self) -> &[HomPoly] {
        &self.coords
    }

    /// The associated isomorphism `φ = (phi_inv)⁻¹` on `W₀`.
    pub fn phi(&self) -> Result<Matrix> {
        self.phi_inv.inverse()
    }

    /// `Σ_j c_j(P)·p_j(P)`, zero for a congruence.
    pub fn incidence(&self) -> HomPoly {
        bilinear_forms(&Matrix::identity(self.n + 1), &self.coords, &self.basis)
    }

    /// Equation of `σ(P)` at a point, as a quadric in the target variables.
    pub fn sigma_at(&self, p: &[G]) -> HomPoly {
        let c: Vec<G> = self.coords.iter().map(|f| f.eval(p)).collect();
        sum(self.n, 2, self.basis.iter().zip(&c).map(|(b, cj)| b.scale(cj)))
    }

    /// `Eq_{σ(P)}(Q)` as a form in `2n` variables, `P` first.
    pub fn equation(&self) -> HomPoly {
        let tot = 2 * self.n;
        sum(
            tot,
            4,
            self.coords.iter().zip(&self.basis).map(|(c, b)| c.embed(tot, 0).mul_poly(&b.embed(tot, self.n))),
        )
    }

    /// `Eq_{σ(P)}(Q)` at two points.
    pub fn eq_at(&self, p: &[G], q: &[G]) -> G {
        self.sigma_at(p).eval(q)
    }

    pub fn transpose(&self) -> QuadraticCongruence {
        Self::unchecked(self.n, self.kind, self.basis.clone(), self.phi_inv.transpose())
    }

    /// `F_σ(P)`: the quadric `Q ↦ Eq_{σ(Q)}(P)`.
    pub fn f_sigma(&self, p: &[G]) -> Result<Quadric> {
        let pv: Vec<G> = self.basis.iter().map(|b| b.eval(p)).collect();
        let w = self.phi_inv.mul_vec(&pv);
        let eq = sum(self.n, 2, self.basis.iter().zip(&w).map(|(b, c)| b.scale(c)));
        if eq.is_zero() {
            return Err(Error::BasePoint("F_σ(P) vanishes identically".into()));
        }
        Quadric::from_equation(eq)
    }

    pub fn type1_params(&self) -> Result<Type1Params> {
        if self.kind != BasisKind::Type1 {
            return Err(Error::Shape("not a type-1 congruence".into()));
        }
        let k = self.phi_inv.sym_part()[(0, 3)].clone();
        Type1Params::from_matrix(&self.phi_inv.scale(&k.inv()?))
    }

    pub fn type2_params(&self) -> Result<Type2Params> {
        if self.kind != BasisKind::Type2 {
            return Err(Error::Shape("not a type-2 congruence".into()));
        }
        let k = &self.phi_inv.sym_part()[(2, 2)] * &G::from_ratio(1, 2);
        Type2Params::from_matrix(&self.phi_inv.scale(&k.inv()?))
    }

    pub fn to_json(&self) -> Value {
        let lower = default_names(self.n);
        let upper: Vec<String> = lower.iter().map(|s| s.to_uppercase()).collect();
        let up: Vec<&str> = upper.iter().map(String::as_str).collect();
        let lo: Vec<&str> = lower.iter().map(String::as_str).collect();
        let mut all = lo.clone();
        all.extend(&up);
        json!({
            "n": self.n,
            "type": self.kind.name(),
            "basis": self.basis.iter().map(|b| b.to_string_with(&up)).collect::<Vec<_>>(),
            "phi_inv": self.phi_inv,
            "coords": self.coords.iter().map(|c| c.to_string_with(&lo)).collect::<Vec<_>>(),
            "equation": self.equation().to_string_with(&all),
        })
    }
}

fn coefficient_rank(forms: &[HomPoly]) -> usize {
    let monos: BTreeSet<Vec<u32>> = forms.iter().flat_map(|f| f.terms().keys().cloned()).collect();
    if monos.is_empty() {
        return 0;
    }
    let rows = forms.iter().map(|f| monos.iter().map(|m| f.coeff(m)).collect()).collect();
    Matrix::from_rows(rows).map_or(0, |m| m.rank())
}

pub fn build_type1(p: &Type1Params) -> Result<QuadraticCongruence> {
    QuadraticCongruence::new(3, BasisKind::Type1, type1_basis(), p.matrix())
}

pub fn build_type2(p: &Type2Params) -> Result<QuadraticCongruence> {
    QuadraticCongruence::new(3, BasisKind::Type2, type2_basis(), p.matrix())
}

/// Itemized result of the congruence axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub degree_contract: bool,
    pub incidence: bool,
    pub nonsingular: bool,
    pub spanning: bool,
    pub image_in_quadric: bool,
    pub reciprocity: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.degree_contract, "degree_contract"),
            (self.incidence, "incidence"),
            (self.nonsingular, "nonsingular"),
            (self.spanning, "spanning"),
            (self.image_in_quadric, "image_in_quadric"),
            (self.reciprocity, "reciprocity"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree_contract": self.degree_contract,
            "incidence": self.incidence,
            "nonsingular": self.nonsingular,
            "spanning": self.spanning,
            "image_in_quadric": self.image_in_quadric,
            "reciprocity": self.reciprocity,
            "all_pass": self.all_pass(),
        })
    }
}

pub fn verify_axioms(s: &QuadraticCongruence) -> AxiomReport {
    let n = s.n;
    let degree_contract = s.coords.len() == n + 1
        && s.coords.iter().all(|c| c.nvars() == n && (c.is_zero() || c.degree() == 2));
    let incidence = degree_contract && s.incidence().is_zero();
    let inv = s.phi_inv.inverse().ok();
    let nonsingular = inv.is_some();
    let spanning = coefficient_rank(&s.coords) == n + 1;
    let image_in_quadric = match &inv {
        Some(phi) if degree_contract => bilinear_forms(phi, &s.coords, &s.coords).is_zero(),
        _ => false,
    };
    let reciprocity = inv.as_ref().is_some_and(|phi| {
        let mut rng = random::rng(0x5eed);
        (0..6).all(|_| {
            let p = random::random_point(&mut rng, n);
            let q = random::random_point(&mut rng, n);
            let cp: Vec<G> = s.coords.iter().map(|c| c.eval(&p)).collect();
            let cq: Vec<G> = s.coords.iter().map(|c| c.eval(&q)).collect();
            s.eq_at(&p, &q) == phi.bilinear(&cq, &cp)
        })
    });
    AxiomReport { degree_contract, incidence, nonsingular, spanning, image_in_quadric, reciprocity }
}

/// Hyperplane `H(σ)`, conic `C(σ)` and line `L(σ)` of a normal congruence.
#[derive(Clone, Debug)]
pub struct NormalData {
    /// Index of the variable cutting out `H`.
    pub h_var: usize,
    pub h: LinearSubspace,
    /// `C(σ)` in the coordinates of `H` (the variable `h_var` removed).
    pub c: Quadric,
    pub c_rank: usize,
    /// Equation of `L(σ)`, a linear form in the target variables.
    pub l_form: HomPoly,
    pub l: LinearSubspace,
    pub scalar: G,
    pub q_rank: usize,
    pub restriction_constant: bool,
}

impl NormalData {
    pub fn rank_identity_holds(&self) -> bool {
        self.c_rank + 2 == self.q_rank
    }

    pub fn l_equals_h(&self) -> bool {
        self.l.same_as(&self.h)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "h_var": self.h_var,
            "c_equation": self.c.equation().to_string(),
            "c_rank": self.c_rank,
            "l_form": linear_coeffs(&self.l_form),
            "scalar": self.scalar,
            "q_rank": self.q_rank,
            "rank_identity_holds": self.rank_identity_holds(),
            "l_equals_h": self.l_equals_h(),
            "restriction_constant": self.restriction_constant,
        })
    }
}

pub fn normal_data(s: &QuadraticCongruence) -> Result<NormalData> {
    let n = s.n;
    let (h_var, j0) = (0..n)
        .find_map(|h| {
            let xh = HomPoly::var(n, h);
            let outside: Vec<usize> = (0..=n).filter(|&j| !xh.divides(&s.basis[j])).collect();
            (outside.len() == 1).then(|| (h, outside[0]))
        })
        .ok_or_else(|| Error::NotNormal("no hyperplane divides all but one basis form".into()))?;
    let xh = HomPoly::var(n, h_var);
    let mut sq = vec![0; n];
    sq[h_var] = 2;
    let h2 = HomPoly::monomial(n, sq, G::one());
    let k_sq = s
        .basis
        .iter()
        .position(|b| *b == h2)
        .ok_or_else(|| Error::NotNormal("the square of the hyperplane equation is not a basis form".into()))?;
    let sym = s.phi_inv.sym_part();
    let scalar = sym[(j0, k_sq)].clone();
    if scalar.is_zero() || (0..=n).any(|k| k != k_sq && !sym[(j0, k)].is_zero()) {
        return Err(Error::NotNormal("symmetric part is not of the normal shape".into()));
    }
    let keep: Vec<usize> = (0..n).filter(|&k| k != h_var).collect();
    let c = Quadric::from_equation(s.basis[j0].restrict(&keep))?;
    let c_rank = c.rank();
    let row = s.phi_inv.row(j0);
    let l_form = sum(n, 2, s.basis.iter().zip(&row).map(|(b, r)| b.scale(r))).exact_div(&xh)?;
    let l = LinearSubspace::solutions(n, &[linear_coeffs(&l_form)]);
    let mut hc = vec![G::zero(); n];
    hc[h_var] = G::one();
    let h = LinearSubspace::solutions(n, &[hc]);
    let q_rank = s.phi()?.sym_part().rank();
    Ok(NormalData {
        h_var,
        h,
        c,
        c_rank,
        l_form,
        l,
        scalar,
        q_rank,
        restriction_constant: restriction_is_constant(s, h_var),
    })
}

/// `σ|_H` is a constant quadric divisible by the equation of `H`.
fn restriction_is_constant(s: &QuadraticCongruence, h: usize) -> bool {
    let n = s.n;
    let subs: Vec<HomPoly> =
        (0..n).map(|k| if k == h { HomPoly::zero(n, 1) } else { HomPoly::var(n, k) }).collect();
    let r: Vec<HomPoly> = s.coords.iter().map(|c| c.substitute(&subs).expect("same ring")).collect();
    let Some(k) = r.iter().position(|p| !p.is_zero()) else {
        return false;
    };
    let (lead_exp, lead_c) = r[k].leading().map(|(e, c)| (e.clone(), c.clone())).expect("nonzero");
    let v: Vec<G> = r.iter().map(|p| &p.coeff(&lead_exp) / &lead_c).collect();
    let constant = r.iter().zip(&v).all(|(p, vj)| *p == r[k].scale(vj));
    let eq = sum(n, 2, s.basis.iter().zip(&v).map(|(b, c)| b.scale(c)));
    constant && HomPoly::var(n, h).divides(&eq)
}

/// The translation `T(σ)` and how it was obtained.
#[derive(Clone, Debug)]
pub struct Translation {
    pub map: RationalMap,
    pub reduced: RationalMap,
    pub method: &'static str,
}

fn theta(a: &G, b: &G, c: &G, d: &G, e: &G, f: &G) -> G {
    &(&(a * f) + &(c * d)) - &(b * e)
}

fn lin3(a: G, b: G, c: G) -> HomPoly {
    linear_form(&[a, b, c])
}

/// Explicit rank-4 tuple `(L₁L₄, L₂L₃, L₂L₄)`.
pub fn type1_translation(p: &Type1Params) -> Vec<HomPoly> {
    let Type1Params { a, b, c, d, e, f } = p;
    let th = theta(a, b, c, d, e, f);
    let one = G::one();
    let two = G::from(2);
    let z = G::zero();
    let l1 = lin3(&(&(&th + c) + d) + &one, z.clone(), &two * e);
    let l2 = lin3(-(&two * b), z.clone(), &(&(&th - c) - d) + &one);
    let l3 = lin3(z.clone(), &(&(&th - c) + d) - &one, -(&two * f));
    let l4 = lin3(z, &two * a, &(&(&th - d) + c) - &one);
    vec![l1.mul_poly(&l4), l2.mul_poly(&l3), l2.mul_poly(&l4)]
}

fn type2_parts(p: &Type2Params, zz_sign: i64) -> Vec<HomPoly> {
    let Type2Params { a, b, c, d, e, f } = p;
    let th = theta(a, b, c, d, e, f);
    let delta = p.matrix().det();
    let g = |v: i64| G::from(v);
    let z = G::zero();
    let l1 = lin3(z.clone(), &th + b, &g(2) * c);
    let l2 = lin3(z, -(&g(2) * a), &th - b);
    // V1 = Δxz − 2(θd − 2ae + 2a + bd)y² − 4(θe − af + cd + b)yz − 2(θf ± 2ec − bf + 2c)z²
    let y2 = &(&(&(&th * d) - &(&g(2) * &(a * e))) + &(&g(2) * a)) + &(b * d);
    let yz = &(&(&(&th * e) - &(a * f)) + &(c * d)) + b;
    let z2 = &(&(&(&th * f) + &(&g(2 * zz_sign) * &(e * c))) - &(b * f)) + &(&g(2) * c);
    let v1 = HomPoly::from_terms(
        3,
        2,
        [
            (vec![1, 0, 1], delta),
            (vec![0, 2, 0], &g(-2) * &y2),
            (vec![0, 1, 1], &g(-4) * &yz),
            (vec![0, 0, 2], &g(-2) * &z2),
        ],
    )
    .expect("quadratic terms");
    vec![v1, l1.mul_poly(&l2), l2.mul_poly(&l2)]
}

/// Rank-3 tuple `(V₁, L₁L₂, L₂²)` with the `z²` coefficient of `V₁` taken as
/// `θf + 2ec − bf + 2c`, which makes both translation guarantees hold.
pub fn type2_translation(p: &Type2Params) -> Vec<HomPoly> {
    type2_parts(p, 1)
}

/// The rank-3 tuple with `−2ec` in the `z²` coefficient of `V₁`, as printed.
pub fn printed_v1_tuple(p: &Type2Params) -> Vec<HomPoly> {
    type2_parts(p, -1)
}

/// Linear translation when `a = b = 0` (rank 4).
pub fn linear_case1_tuple(p: &Type1Params) -> Vec<HomPoly> {
    let Type1Params { c, d, e, f, .. } = p;
    let one = G::one();
    let two = G::from(2);
    let z = G::zero();
    let dp = d + &one;
    let dm = d - &one;
    let cp = c + &one;
    vec![
        lin3(&(&cp * &dp) * &dp, z.clone(), &(&two * e) * &dp),
        lin3(z.clone(), &(&cp * &dm) * &dm, -&(&(&two * f) * &dm)),
        lin3(z.clone(), z, &(c - &one) * &(&(d * d) - &one)),
    ]
}

/// Linear translation when `a = d = 0` (rank 3); needs `b ≠ 0`.
pub fn linear_case2_tuple(p: &Type2Params) -> Result<Vec<HomPoly>> {
    let Type2Params { b, c, e, f, .. } = p;
    let one = G::one();
    let binv = b.inv()?;
    let em = e - &one;
    let g = |v: i64| G::from(v);
    let xz = &(&(&g(2) * f) * &binv) - &(&(&g(4) * c) * &(&binv * &binv));
    Ok(vec![
        lin3(em.clone(), &(&g(4) * &em) * &binv, xz),
        lin3(G::zero(), em, -&(&(&g(2) * c) * &binv)),
        lin3(G::zero(), G::zero(), e + &one),
    ])
}

pub fn translation_map(s: &QuadraticCongruence) -> Result<Translation> {
    let (coords, method) = match s.kind {
        BasisKind::Type1 => (type1_translation(&s.type1_params()?), "explicit rank-4 formula"),
        BasisKind::Type2 => (type2_translation(&s.type2_params()?), "explicit rank-3 formula"),
        BasisKind::Normal { .. } => (model::compositional_translation(s)?, "compositional through the standard model"),
        BasisKind::Custom => {
            return Err(Error::NotNormal("no translation formula for a custom basis".into()));
        }
    };
    let map = RationalMap::new(coords)?;
    let reduced = map.reduced();
    Ok(Translation { map, reduced, method })
}

/// Guarantees of a candidate translation tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationCheck {
    /// `Eq_{σ(P)}(T(P)) ≡ 0`.
    pub on_image_quadric: bool,
    /// `σ(T(P)) ∝ T(φ)(σ(P))`.
    pub equivariant: bool,
}

impl TranslationCheck {
    pub fn holds(&self) -> bool {
        self.on_image_quadric && self.equivariant
    }
}

/// `T(φ) = φ⁻ᵀφ` acting on coordinates of `W₀`, here `Mᵀ·M⁻¹`.
pub fn operator_on_w0(s: &QuadraticCongruence) -> Result<Matrix> {
    s.phi_inv.transpose().checked_mul(&s.phi_inv.inverse()?)
}

pub fn check_translation(s: &QuadraticCongruence, t: &[HomPoly]) -> Result<TranslationCheck> {
    if t.len() != s.n {
        return Err(Error::Dimension("translation tuple of the wrong length".into()));
    }
    let on_basis: Vec<HomPoly> = s.basis.iter().map(|b| b.substitute(t)).collect::<Result<_>>()?;
    let a = bilinear_forms(&Matrix::identity(s.n + 1), &s.coords, &on_basis).is_zero();
    let moved: Vec<HomPoly> = s.coords.iter().map(|c| c.substitute(t)).collect::<Result<_>>()?;
    let expected = mat_forms(&operator_on_w0(s)?, &s.coords);
    Ok(TranslationCheck { on_image_quadric: a, equivariant: proportional(&moved, &expected) })
}

/// Three independent views of linearity of `T(σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearityReport {
    /// `a = b = 0` (type 1) or `a = d = 0` (type 2); absent for other bases.
    pub by_parameters: Option<bool>,
    pub l_equals_h: bool,
    pub reduced_degree_one: bool,
}

impl LinearityReport {
    pub fn consistent(&self) -> bool {
        self.by_parameters.map_or(true, |b| b == self.l_equals_h) && self.l_equals_h == self.reduced_degree_one
    }
}

pub fn linearity_report(s: &QuadraticCongruence) -> Result<LinearityReport> {
    let by_parameters = match s.kind {
        BasisKind::Type1 => {
            let p = s.type1_params()?;
            Some(p.a.is_zero() && p.b.is_zero())
        }
        BasisKind::Type2 => {
            let p = s.type2_params()?;
            Some(p.a.is_zero() && p.d.is_zero())
        }
        _ => None,
    };
    let nd = normal_data(s)?;
    let t = translation_map(s)?;
    Ok(LinearityReport { by_parameters, l_equals_h: nd.l_equals_h(), reduced_degree_one: t.reduced.degree() == 1 })
}

pub fn is_linear_translation(s: &QuadraticCongruence) -> Result<bool> {
    let r = linearity_report(s)?;
    Ok(r.by_parameters.unwrap_or(r.l_equals_h))
}

/// Gram matrix of `σ(P)` with entries forms in `P`.
pub fn gram_of_image(s: &QuadraticCongruence) -> Vec<Vec<HomPoly>> {
    let n = s.n;
    let half = G::from_ratio(1, 2);
    let mut g = vec![vec![HomPoly::zero(n, 2); n]; n];
    for (b, c) in s.basis.iter().zip(&s.coords) {
        for (e, coef) in b.terms() {
            let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                g[i][i] = &g[i][i] + &c.scale(coef);
            } else {
                let t = c.scale(&(coef * &half));
                g[i][j] = &g[i][j] + &t;
                g[j][i] = &g[j][i] + &t;
            }
        }
    }
    g
}

/// Locus of points whose image conic is degenerate.
#[derive(Clone, Debug)]
pub struct DegenerateLocus {
    pub determinant: HomPoly,
    /// Product of the factors listed for the type, times the equation of `L(σ)`.
    pub displayed: HomPoly,
    /// Product that actually matches the determinant: the listed factors with
    /// the equation of `H(σ)` in place of `L(σ)` (and the type-2 quadratic squared).
    pub predicted: HomPoly,
    pub matches_predicted: bool,
    pub matches_displayed: bool,
    /// Number of lines in the union, counted with the factor structure of `predicted`.
    pub line_count: u32,
}

impl DegenerateLocus {
    pub fn all_degenerate(&self) -> bool {
        self.determinant.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "determinant": self.determinant.to_string(),
            "displayed": self.displayed.to_string(),
            "predicted": self.predicted.to_string(),
            "matches_predicted": self.matches_predicted,
            "matches_displayed": self.matches_displayed,
            "line_count": self.line_count,
            "all_degenerate": self.all_degenerate(),
        })
    }
}

fn quad3(yy: G, yz: G, zz: G, var: usize) -> HomPoly {
    // form in (var, z): yy·v² + yz·v·z + zz·z²
    let mut e1 = vec![0; 3];
    e1[var] = 2;
    let mut e2 = vec![0; 3];
    e2[var] = 1;
    e2[2] = 1;
    HomPoly::from_terms(3, 2, [(e1, yy), (e2, yz), (vec![0, 0, 2], zz)]).expect("quadratic")
}

pub fn degenerate_locus(s: &QuadraticCongruence) -> Result<DegenerateLocus> {
    if s.n != 3 {
        return Err(Error::Dimension("degenerate loci are computed for plane congruences".into()));
    }
    let determinant = det_forms(&gram_of_image(s));
    let z = HomPoly::var(3, 2);
    let one = G::one();
    let (factors, l_form, squared) = match s.kind {
        BasisKind::Type1 => {
            let Type1Params { a, b, c, d, e, f } = s.type1_params()?;
            let lin = lin3(-&b, -&a, &one - &c);
            let q1 = quad3(a.clone(), &c - &d, f.clone(), 1);
            let q2 = quad3(b.clone(), &c + &d, e.clone(), 0);
            let l = lin3(b.clone(), a.clone(), &c + &one);
            (vec![lin, q1, q2], l, None)
        }
        BasisKind::Type2 => {
            let Type2Params { a, b, c, d, e, f: _ } = s.type2_params()?;
            let lin = lin3(a.clone(), -&d, -&(e.clone() + one.clone()));
            let q = quad3(a.clone(), b.clone(), c.clone(), 1);
            let l = lin3(-&a, d.clone(), &e - &one);
            (vec![lin, q.clone()], l, Some(q))
        }
        _ => return Err(Error::Shape("degenerate loci are listed for types 1 and 2".into())),
    };
    let display = factors.iter().fold(HomPoly::one(3), |acc, f| acc.mul_poly(f));
    let displayed = display.mul_poly(&l_form);
    let mut predicted = display.mul_poly(&z);
    let line_count = predicted.degree();
    if let Some(q) = squared {
        predicted = predicted.mul_poly(&q);
    }
    let matches_predicted = !determinant.is_zero() && determinant.normalized() == predicted.normalized();
    let matches_displayed = !determinant.is_zero() && determinant.normalized() == displayed.normalized();
    Ok(DegenerateLocus { determinant, displayed, predicted, matches_predicted, matches_displayed, line_count })
}

#[derive(Clone, Debug, Default, Deserialize)]
pub struct ParamsJson {
    #[serde(default)]
    pub a: Option<G>,
    #[serde(default)]
    pub b: Option<G>,
    #[serde(default)]
    pub c: Option<G>,
    #[serde(default)]
    pub d: Option<G>,
    #[serde(default)]
    pub e: Option<G>,
    #[serde(default)]
    pub f: Option<G>,
}

impl ParamsJson {
    pub fn values(&self) -> [G; 6] {
        [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f].map(|v| v.clone().unwrap_or_else(G::zero))
    }
}

/// JSON description of a congruence.
#[derive(Clone, Debug, Deserialize)]
pub struct CongruenceJson {
    pub n: usize,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub params: Option<ParamsJson>,
    /// Basis forms written in the variables `X, Y, Z` (or `X1, X2, …`).
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub phi_inv: Option<Vec<Vec<Value>>>,
    /// Model isomorphism for `type = "normal"` built geometrically.
    #[serde(default)]
    pub phi: Option<Vec<Vec<Value>>>,
}

fn value_to_g(v: &Value) -> Result<G> {
    match v {
        Value::String(s) => eval_scalar(s, &HashMap::new()),
        other => serde_json::from_value(other.clone()).map_err(|e| Error::Parse(e.to_string())),
    }
}

pub fn matrix_from_json(rows: &[Vec<Value>]) -> Result<Matrix> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(value_to_g).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?)
}

impl CongruenceJson {
    pub fn build(&self) -> Result<QuadraticCongruence> {
        self.build_with(true)
    }

    /// As [`CongruenceJson::build`], but an explicit basis and matrix are only
    /// checked for shape, so that [`verify_axioms`] can report what fails.
    pub fn build_unchecked(&self) -> Result<QuadraticCongruence> {
        self.build_with(false)
    }

    fn build_with(&self, checked: bool) -> Result<QuadraticCongruence> {
        match (self.kind.as_str(), &self.params, &self.phi) {
            ("1", Some(p), _) => build_type1(&Type1Params::new(p.values())),
            ("2", Some(p), _) => build_type2(&Type2Params::new(p.values())),
            ("normal", None, Some(phi)) if self.basis.is_none() => model::geometric_build(&matrix_from_json(phi)?, self.n),
            (kind, None, _) => {
                let basis = self.basis.as_ref().ok_or_else(|| Error::Parse("missing basis".into()))?;
                let m = self.phi_inv.as_ref().ok_or_else(|| Error::Parse("missing phi_inv".into()))?;
                let names: Vec<String> = default_names(self.n).iter().map(|s| s.to_uppercase()).collect();
                let vars: Vec<&str> = names.iter().map(String::as_str).collect();
                let forms =
                    basis.iter().map(|b| parse_poly(b, &vars, &HashMap::new())).collect::<Result<Vec<_>>>()?;
                let kind = match kind {
                    "1" if forms == type1_basis() => BasisKind::Type1,
                    "2" if forms == type2_basis() => BasisKind::Type2,
                    "normal" => model::detect_normal_basis(self.n, &forms).unwrap_or(BasisKind::Custom),
                    "1" | "2" => return Err(Error::Shape(format!("basis does not match type {kind}"))),
                    _ => BasisKind::Custom,
                };
                let m = matrix_from_json(m)?;
                if checked {
                    return QuadraticCongruence::new(self.n, kind, forms, m);
                }
                if forms.len() != self.n + 1 || !m.is_square() || m.rows() != self.n + 1 {
                    return Err(Error::Dimension(format!("expected {} basis forms and a square matrix of that size", self.n + 1)));
                }
                Ok(QuadraticCongruence::unchecked(self.n, kind, forms, m))
            }
            _ => Err(Error::Parse(format!("unsupported congruence description of type {:?}", self.kind))),
        }
    }
}

fn congruence_desc(v: &Value) -> Result<CongruenceJson> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_congruence(v: &Value) -> Result<QuadraticCongruence> {
    congruence_desc(v)?.build()
}

pub fn parse_congruence_unchecked(v: &Value) -> Result<QuadraticCongruence> {
    congruence_desc(v)?.build_unchecked()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gq;

    fn t1(v: [i64; 6]) -> Type1Params {
        Type1Params::new(v.map(G::from))
    }

    #[test]
    fn trivial_type1_equation() {
        let s = build_type1(&t1([0; 6])).unwrap();
        assert_eq!(s.to_json()["equation"], "x*y*Z^2 - x*z*Y*Z - y*z*X*Z + z^2*X*Y");
        assert!(verify_axioms(&s).all_pass());
    }

    #[test]
    fn explicit_translations_hold() {
        let s = build_type1(&t1([1, 2, 0, 3, -1, 1])).unwrap();
        let t = translation_map(&s).unwrap();
        assert!(check_translation(&s, t.map.coords()).unwrap().holds());
        let p = Type2Params::new([1, -1, 2, 1, 3, -2].map(G::from));
        let s = build_type2(&p).unwrap();
        let t = translation_map(&s).unwrap();
        assert!(check_translation(&s, t.map.coords()).unwrap().holds());
        assert!(!check_translation(&s, &printed_v1_tuple(&p)).unwrap().holds());
    }

    #[test]
    fn tangent_fixture() {
        let s = build_type2(&Type2Params::new([0, -2, 0, 0, 0, 0].map(G::from))).unwrap();
        let t = translation_map(&s).unwrap();
        let [x, y, z] = [HomPoly::var(3, 0), HomPoly::var(3, 1), HomPoly::var(3, 2)];
        assert!(t.reduced.proportional_to(&RationalMap::new(vec![&x - &y.scale(&gq(2, 1)), y.clone(), -z.clone()]).unwrap()));
        assert!(is_linear_translation(&s).unwrap());
        let r = linearity_report(&s).unwrap();
        assert!(r.consistent());
    }

    #[test]
    fn normal_data_ranks() {
        let s = build_type1(&t1([1, 2, 0, 3, -1, 1])).unwrap();
        let nd = normal_data(&s).unwrap();
        assert_eq!((nd.h_var, nd.c_rank, nd.q_rank), (2, 2, 4));
        assert!(nd.restriction_constant);
        let s = build_type2(&Type2Params::new([1, -1, 2, 1, 3, -2].map(G::from))).unwrap();
        let nd = normal_data(&s).unwrap();
        assert_eq!((nd.c_rank, nd.q_rank), (1, 3));
    }

    #[test]
    fn f_sigma_of_transpose_is_sigma() {
        let s = build_type1(&t1([1, 2, 0, 3, -1, 1])).unwrap();
        let p = vec![gq(1, 1), gq(-2, 3), gq(5, 1)];
        assert_eq!(*s.transpose().f_sigma(&p).unwrap().equation(), s.sigma_at(&p));
    }
}
