//! GL(W)-orbits of translation operators in dimension 4, and the normal forms
//! of type-1 plane congruence matrices under the stabilizer of the fixed conic.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bilinear::{translation_of, Isomorphism};
use crate::error::{Error, Result};
use crate::field::GaussianRational as G;
use crate::invariant::invariant_factors;
use crate::matrix::Matrix;
use crate::unipoly::UniPoly;

/// Symmetric functions of the reciprocal pairs `s = λ + 1/λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairData {
    None,
    One { s: G },
    Two { e1: G, e2: G },
}

impl PairData {
    /// Whether two pairs coincide (`s₁ = s₂`).
    pub fn repeated(&self) -> bool {
        match self {
            PairData::Two { e1, e2 } => &(e1 * e1) == &(e2 * &G::from(4)),
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            PairData::None => json!(null),
            PairData::One { s } => json!({ "s": s.to_text() }),
            PairData::Two { e1, e2 } => json!({ "e1": e1.to_text(), "e2": e2.to_text() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSignature {
    pub char_poly: UniPoly,
    pub mult_plus1: u32,
    pub mult_minus1: u32,
    /// `rank (T − I)^k`, k = 1..=dim, when 1 is an eigenvalue.
    pub rank_profile_plus: Option<Vec<usize>>,
    /// `rank (T + I)^k`, k = 1..=dim, when −1 is an eigenvalue.
    pub rank_profile_minus: Option<Vec<usize>>,
    /// Monic palindromic residual factor with no roots ±1.
    pub reciprocal_part: UniPoly,
    pub pair_data: PairData,
    pub diagonalizable: bool,
    pub invariant_factors: Vec<UniPoly>,
}

impl OrbitSignature {
    pub fn to_json(&self) -> Value {
        json!({
            "char_poly": self.char_poly.to_string(),
            "mult_plus1": self.mult_plus1,
            "mult_minus1": self.mult_minus1,
            "rank_profile_plus": self.rank_profile_plus,
            "rank_profile_minus": self.rank_profile_minus,
            "reciprocal_part": self.reciprocal_part.to_string(),
            "pair_data": self.pair_data.to_json(),
            "diagonalizable": self.diagonalizable,
            "invariant_factors": self.invariant_factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        })
    }
}

fn rank_profile(t: &Matrix, shift: &G) -> Vec<usize> {
    let n = t.dim();
    let b = t - &Matrix::identity(n).scale(shift);
    let mut p = Matrix::identity(n);
    (0..n)
        .map(|_| {
            p = &p * &b;
            p.rank()
        })
        .collect()
}

pub fn signature(t: &Matrix) -> Result<OrbitSignature> {
    if !t.is_square() {
        return Err(Error::Dimension("signature of a non-square matrix".into()));
    }
    if t.det().is_zero() {
        return Err(Error::Singular);
    }
    let n = t.dim();
    let cp = t.char_poly();
    let c0 = cp.coeff(0);
    let unit = c0.is_one() || (-&c0).is_one();
    if !unit || (0..=n).any(|k| cp.coeff(k) != &c0 * &cp.coeff(n - k)) {
        return Err(Error::NotTranslation(format!("characteristic polynomial {cp} is not self-reciprocal")));
    }
    let one = G::one();
    let (mult_plus1, rest) = cp.strip_root(&one);
    let (mult_minus1, q) = rest.strip_root(&-&one);
    let pair_data = match q.degree() {
        Some(0) => PairData::None,
        Some(2) => PairData::One { s: -q.coeff(1) },
        Some(4) => PairData::Two { e1: -q.coeff(3), e2: &q.coeff(2) - &G::from(2) },
        _ => PairData::None,
    };
    let factors = invariant_factors(t);
    let diagonalizable = factors.last().map_or(true, UniPoly::is_squarefree);
    Ok(OrbitSignature {
        char_poly: cp,
        mult_plus1,
        mult_minus1,
        rank_profile_plus: (mult_plus1 > 0).then(|| rank_profile(t, &one)),
        rank_profile_minus: (mult_minus1 > 0).then(|| rank_profile(t, &-&one)),
        reciprocal_part: q,
        pair_data,
        diagonalizable,
        invariant_factors: factors,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    C11,
    C12,
    C13,
    C14,
    C15,
    C21,
    C22,
    C23,
    C24,
    C25,
    C26,
    C27,
    C28,
    Boundary,
}

impl CaseId {
    pub const ALL: [CaseId; 13] = [
        CaseId::C11,
        CaseId::C12,
        CaseId::C13,
        CaseId::C14,
        CaseId::C15,
        CaseId::C21,
        CaseId::C22,
        CaseId::C23,
        CaseId::C24,
        CaseId::C25,
        CaseId::C26,
        CaseId::C27,
        CaseId::C28,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::C11 => "1.1",
            CaseId::C12 => "1.2",
            CaseId::C13 => "1.3",
            CaseId::C14 => "1.4",
            CaseId::C15 => "1.5",
            CaseId::C21 => "2.1",
            CaseId::C22 => "2.2",
            CaseId::C23 => "2.3",
            CaseId::C24 => "2.4",
            CaseId::C25 => "2.5",
            CaseId::C26 => "2.6",
            CaseId::C27 => "2.7",
            CaseId::C28 => "2.8",
            CaseId::Boundary => "BOUNDARY",
        }
    }

    pub fn parse(s: &str) -> Option<CaseId> {
        CaseId::ALL.into_iter().chain([CaseId::Boundary]).find(|c| c.name() == s)
    }

    /// Rank of `Q(φ)` listed for the case; `minus_pair` selects the λ = −1
    /// variant of 1.5.
    pub fn listed_rank(self, minus_pair: bool) -> Option<usize> {
        Some(match self {
            CaseId::C11 | CaseId::C12 | CaseId::C13 => 4,
            CaseId::C14 => 0,
            CaseId::C15 => {
                if minus_pair {
                    2
                } else {
                    4
                }
            }
            CaseId::C21 => 3,
            CaseId::C22 => 2,
            CaseId::C23 | CaseId::C24 | CaseId::C25 => 4,
            CaseId::C26 => 3,
            CaseId::C27 => 1,
            CaseId::C28 => 3,
            CaseId::Boundary => return None,
        })
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CaseId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseLabel {
    pub case: CaseId,
    pub pair_data: PairData,
    /// Why a BOUNDARY label was produced.
    pub note: Option<String>,
}

impl CaseLabel {
    pub fn to_json(&self) -> Value {
        json!({ "case": self.case.name(), "pair_data": self.pair_data.to_json(), "note": self.note })
    }
}

/// Case from the Jordan data of `T(φ)` and the rank of `φ_S`.
pub fn classify_signature(sig: &OrbitSignature, rank: usize) -> CaseLabel {
    let profile = |p: &Option<Vec<usize>>| p.clone().unwrap_or_default();
    let plus = profile(&sig.rank_profile_plus);
    let minus = profile(&sig.rank_profile_minus);
    let residual = sig.reciprocal_part.degree().unwrap_or(0);
    let starts = |p: &[usize], s: &[usize]| p.len() >= s.len() && &p[..s.len()] == s;
    let (pattern, note) = match (sig.mult_plus1, sig.mult_minus1, sig.diagonalizable) {
        (4, 0, true) => (Some(CaseId::C13), None),
        (0, 4, true) => (Some(CaseId::C14), None),
        (0, 0, true) if sig.pair_data.repeated() => (Some(CaseId::C12), None),
        (0, 0, true) => (Some(CaseId::C11), None),
        (2, 0, true) | (2, 2, true) => (Some(CaseId::C15), None),
        (0, 2, true) => (None, Some("diag(λ, 1/λ, −1, −1): the 1.1 pattern at μ = −1, which the table lists with rank 4")),
        (0, 0, false) => (Some(CaseId::C23), None),
        (0, 4, false) if starts(&minus, &[3, 2, 1, 0]) => (Some(CaseId::C21), None),
        (0, 4, false) if starts(&minus, &[2, 0]) => (Some(CaseId::C22), None),
        (0, 4, false) if starts(&minus, &[1, 0]) => (Some(CaseId::C27), None),
        (4, 0, false) if starts(&plus, &[2, 0]) => (Some(CaseId::C24), None),
        (4, 0, false) if starts(&plus, &[2, 1, 0]) => (Some(CaseId::C25), None),
        (0, 2, false) if residual == 2 => (Some(CaseId::C26), None),
        (2, 2, false) if plus.first() == Some(&2) && minus.first() == Some(&3) => (Some(CaseId::C28), None),
        _ => (None, Some("Jordan pattern absent from the table")),
    };
    let minus_pair = sig.mult_minus1 == 2 && sig.mult_plus1 == 2;
    match pattern {
        Some(case) if case.listed_rank(minus_pair) == Some(rank) => {
            CaseLabel { case, pair_data: sig.pair_data.clone(), note: None }
        }
        Some(case) => CaseLabel {
            case: CaseId::Boundary,
            pair_data: sig.pair_data.clone(),
            note: Some(format!("pattern of {case} but rank {rank} differs from the listed rank")),
        },
        None => CaseLabel { case: CaseId::Boundary, pair_data: sig.pair_data.clone(), note: note.map(String::from) },
    }
}

pub fn classify(phi: &Isomorphism) -> Result<CaseLabel> {
    if phi.dim() != 4 {
        return Err(Error::Dimension(format!("classification needs dim 4, got {}", phi.dim())));
    }
    let sig = signature(&translation_of(phi))?;
    Ok(classify_signature(&sig, phi.sym_part().rank()))
}

/// GL(W)-equivalence via similarity of the translations.
pub fn equivalent(phi1: &Isomorphism, phi2: &Isomorphism) -> bool {
    phi1.dim() == phi2.dim()
        && invariant_factors(&translation_of(phi1)) == invariant_factors(&translation_of(phi2))
}

// ---- type-1 plane congruence matrices ----

/// Parameters `(a, b, c, d, e, f)` of a type-1 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type1Params {
    pub a: G,
    pub b: G,
    pub c: G,
    pub d: G,
    pub e: G,
    pub f: G,
}

impl Type1Params {
    pub fn new(v: [G; 6]) -> Self {
        let [a, b, c, d, e, f] = v;
        Type1Params { a, b, c, d, e, f }
    }

    pub fn as_array(&self) -> [G; 6] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone(), self.e.clone(), self.f.clone()]
    }

    pub fn matrix(&self) -> Matrix {
        let one = G::one();
        let z = G::zero();
        let Type1Params { a, b, c, d, e, f } = self;
        Matrix::from_rows(vec![
            vec![z.clone(), a.clone(), b.clone(), c + &one],
            vec![-a, z.clone(), d - &one, e.clone()],
            vec![-b, -(d + &one), z.clone(), f.clone()],
            vec![&one - c, -e, -f, z],
        ])
        .expect("4x4")
    }

    /// Read the parameters back, failing if `m` is not of type-1 shape.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::Shape("type-1 matrices are 4x4".into()));
        }
        let one = G::one();
        let p = Type1Params {
            a: m[(0, 1)].clone(),
            b: m[(0, 2)].clone(),
            c: &m[(0, 3)] - &one,
            d: &m[(1, 2)] + &one,
            e: m[(1, 3)].clone(),
            f: m[(2, 3)].clone(),
        };
        if p.matrix() != *m {
            return Err(Error::Shape("matrix is not antisymmetric plus the type-1 pattern".into()));
        }
        Ok(p)
    }
}

/// Element `g = [[α,0,u],[0,β,v],[0,0,γ]]` of the stabilizer of the fixed conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerElement {
    pub alpha: G,
    pub beta: G,
    pub gamma: G,
    pub u: G,
    pub v: G,
}

impl StabilizerElement {
    pub fn identity() -> Self {
        StabilizerElement { alpha: G::one(), beta: G::one(), gamma: G::one(), u: G::zero(), v: G::zero() }
    }

    pub fn matrix(&self) -> Matrix {
        let z = G::zero();
        Matrix::from_rows(vec![
            vec![self.alpha.clone(), z.clone(), self.u.clone()],
            vec![z.clone(), self.beta.clone(), self.v.clone()],
            vec![z.clone(), z, self.gamma.clone()],
        ])
        .expect("3x3")
    }
}

/// Action of the conic stabilizer on a type-1 matrix (with δ = 1).
pub fn gc_action(m: &Matrix, g: &StabilizerElement) -> Result<Matrix> {
    let p = Type1Params::from_matrix(m)?;
    let StabilizerElement { alpha: al, beta: be, gamma: ga, u, v } = g;
    if &(al * be) * ga != G::one() {
        return Err(Error::Constraint("αβγ = 1".into()));
    }
    let Type1Params { a, b, c, d, e, f } = &p;
    let ga2 = ga * ga;
    let alga = al * ga;
    let bega = be * ga;
    let albe = al * be;
    let a1 = &(al * &ga2) * a;
    let b1 = &(be * &ga2) * b;
    let c1 = &(c - &(&(&alga * a) * v)) - &(&(&bega * b) * u);
    let d1 = &(&(-&(&(&bega * b) * u)) + &(&(&alga * a) * v)) + d;
    let e1 = &(&(&(-&(&(&albe * c) * u)) - &(&(&albe * d) * u)) + &(&(&(al * al) * be) * e)) + &(&(be * b) * &(u * u));
    let f1 = &(&(&(&(&albe * be) * f) + &(&(al * a) * &(v * v))) - &(&(&albe * c) * v)) + &(&(&albe * d) * v);
    Ok(Type1Params::new([a1, b1, c1, d1, e1, f1]).matrix())
}

/// Report of the reduction to `a = b = 1, e = f = 0`.
#[derive(Clone, Debug)]
pub struct M1Report {
    pub normalized: Type1Params,
    pub applied: Vec<StabilizerElement>,
    /// `λ + 1/λ` recovered from `c = (1−λ)/(1+λ)`.
    pub s_lambda: G,
    /// `μ + 1/μ` recovered from `d = (μ−1)/(1+μ)`.
    pub s_mu: G,
    pub lambda_equals_mu: bool,
    /// `char_poly(T(φ)) = (x² − s_λx + 1)(x² − s_μx + 1)`.
    pub char_poly_matches: bool,
    pub label: CaseLabel,
}

fn quadratic_root(a: &G, b: &G, c: &G) -> Result<G> {
    // a·u² + b·u + c = 0, preferring u = 0 when c = 0
    if c.is_zero() {
        return Ok(G::zero());
    }
    if a.is_zero() {
        return Ok(-&(c / b));
    }
    let disc = &(b * b) - &(&(a * c) * &G::from(4));
    let r = disc.sqrt().ok_or_else(|| Error::Irrational(format!("square root of {disc}")))?;
    Ok(&(&r - b) / &(a * &G::from(2)))
}

fn s_from_mobius(c: &G) -> G {
    // λ = (1−c)/(1+c) gives λ + 1/λ = 2(1+c²)/(1−c²)
    let one = G::one();
    &(&(&one + &(c * c)) * &G::from(2)) / &(&one - &(c * c))
}

/// Reduce a matrix of the class `a ≠ 0, b ≠ 0` to `a = b = 1, e = f = 0`.
pub fn normal_form_m1(m: &Matrix) -> Result<(Matrix, M1Report)> {
    let p = Type1Params::from_matrix(m)?;
    if p.a.is_zero() || p.b.is_zero() {
        return Err(Error::NotInM1("a = 0 or b = 0".into()));
    }
    // translations: e₁ = b·u² − (c+d)·u + e and f₁ = a·v² − (c−d)·v + f
    let u = quadratic_root(&p.b, &-&(&p.c + &p.d), &p.e)?;
    let v = quadratic_root(&p.a, &-&(&p.c - &p.d), &p.f)?;
    let g1 = StabilizerElement { u, v, ..StabilizerElement::identity() };
    let m1 = gc_action(m, &g1)?;
    let p1 = Type1Params::from_matrix(&m1)?;
    // scaling: γ³ = 1/(ab), α = 1/(γ²a), β = 1/(γ²b)
    let ab = &p1.a * &p1.b;
    let gamma = ab.inv()?.cbrt().ok_or_else(|| Error::Irrational(format!("cube root of 1/({ab})")))?;
    let ga2 = &gamma * &gamma;
    let g2 = StabilizerElement {
        alpha: (&ga2 * &p1.a).inv()?,
        beta: (&ga2 * &p1.b).inv()?,
        gamma,
        u: G::zero(),
        v: G::zero(),
    };
    let m2 = gc_action(&m1, &g2)?;
    let n = Type1Params::from_matrix(&m2)?;
    let one = G::one();
    for (name, x) in [("c", &n.c), ("d", &n.d)] {
        if x == &one || x == &-&one {
            return Err(Error::Constraint(format!("{name} = ±1 makes M singular")));
        }
    }
    let s_lambda = s_from_mobius(&n.c);
    let s_mu = s_from_mobius(&n.d);
    let phi = Isomorphism::new(m2.inverse()?)?;
    let t = translation_of(&phi);
    let quad = |s: &G| UniPoly::new(vec![one.clone(), -s, one.clone()]);
    let char_poly_matches = t.char_poly() == quad(&s_lambda).mul(&quad(&s_mu));
    let label = classify(&phi)?;
    let report = M1Report {
        lambda_equals_mu: s_lambda == s_mu,
        normalized: n,
        applied: vec![g1, g2],
        s_lambda,
        s_mu,
        char_poly_matches,
        label,
    };
    Ok((m2, report))
}
