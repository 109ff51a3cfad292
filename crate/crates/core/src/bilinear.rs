//! Non-degenerate bilinear forms `φ : W → W*`, their translations, quadrics
//! and orthogonals.
//!
//! Pairing convention: `(u, v) = uᵀ·φ·v`, so `φ(v)` is the covector `φ·v`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::GaussianRational as G;
use crate::matrix::{dot, vec_proportional, Matrix};
use crate::poly::{HomPoly, Terms};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    matrix: Matrix,
}

impl Isomorphism {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension("isomorphism matrix must be square".into()));
        }
        if matrix.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(Isomorphism { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn sym_part(&self) -> Matrix {
        self.matrix.sym_part()
    }

    pub fn antisym_part(&self) -> Matrix {
        self.matrix.antisym_part()
    }

    pub fn transpose(&self) -> Isomorphism {
        Isomorphism { matrix: self.matrix.transpose() }
    }

    /// The right action `φ.g = ᵗg∘φ∘g`.
    pub fn act(&self, g: &Matrix) -> Result<Isomorphism> {
        Isomorphism::new(&(&g.transpose() * &self.matrix) * g)
    }

    pub fn to_json(&self) -> IsomorphismJson {
        IsomorphismJson { dim: self.dim(), matrix: self.matrix.clone() }
    }
}

/// JSON shape `{"dim": n+1, "matrix": [[…]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsomorphismJson {
    pub dim: usize,
    pub matrix: Matrix,
}

impl TryFrom<IsomorphismJson> for Isomorphism {
    type Error = Error;
    fn try_from(j: IsomorphismJson) -> Result<Self> {
        if j.matrix.rows() != j.dim || !j.matrix.is_square() {
            return Err(Error::Dimension(format!("declared dim {} but matrix is {}x{}", j.dim, j.matrix.rows(), j.matrix.cols())));
        }
        Isomorphism::new(j.matrix)
    }
}

/// `T(φ) = ᵗφ⁻¹·φ`.
pub fn translation_of(phi: &Isomorphism) -> Matrix {
    let inv_t = phi.matrix.transpose().inverse().expect("isomorphism is invertible");
    &inv_t * &phi.matrix
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    equation: HomPoly,
    gram: Matrix,
    rank: usize,
}

impl Quadric {
    pub fn from_gram(gram: Matrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Shape("Gram matrix must be symmetric".into()));
        }
        let n = gram.dim();
        let mut terms = Terms::new();
        for i in 0..n {
            for j in i..n {
                let c = if i == j { gram[(i, i)].clone() } else { &gram[(i, j)] + &gram[(j, i)] };
                if !c.is_zero() {
                    let mut e = vec![0; n];
                    e[i] += 1;
                    e[j] += 1;
                    terms.insert(e, c);
                }
            }
        }
        let equation = HomPoly::from_terms(n, 2, terms)?;
        let rank = gram.rank();
        Ok(Quadric { equation, gram, rank })
    }

    pub fn from_equation(equation: HomPoly) -> Result<Self> {
        if equation.degree() != 2 {
            return Err(Error::DegreeMismatch(format!("quadric of degree {}", equation.degree())));
        }
        let n = equation.nvars();
        let mut gram = Matrix::zeros(n, n);
        let half = G::from_ratio(1, 2);
        for (e, c) in equation.terms() {
            let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                gram[(i, i)] = c.clone();
            } else {
                gram[(i, j)] = c * &half;
                gram[(j, i)] = c * &half;
            }
        }
        let rank = gram.rank();
        Ok(Quadric { equation, gram, rank })
    }

    pub fn ambient_dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn equation(&self) -> &HomPoly {
        &self.equation
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn eval(&self, p: &[G]) -> G {
        self.equation.eval(p)
    }

    pub fn contains(&self, p: &[G]) -> bool {
        self.eval(p).is_zero()
    }

    /// Half the gradient, `gram·p`.
    pub fn polar(&self, p: &[G]) -> Vec<G> {
        self.gram.mul_vec(p)
    }

    pub fn is_smooth_at(&self, p: &[G]) -> bool {
        self.contains(p) && self.polar(p).iter().any(|c| !c.is_zero())
    }
}

/// `Q(φ)`, the quadric `x·φ(x) = 0`.
pub fn quadric_of(phi: &Isomorphism) -> Result<Quadric> {
    let s = phi.sym_part();
    if s.is_zero() {
        return Err(Error::NoQuadric);
    }
    Quadric::from_gram(s)
}

#[derive(Clone, Debug)]
pub struct LinearSubspace {
    ambient_dim: usize,
    generators: Vec<Vec<G>>,
}

impl LinearSubspace {
    /// Span of the given vectors; a reduced independent generating set is kept.
    pub fn span(ambient_dim: usize, vectors: &[Vec<G>]) -> Self {
        let nonzero: Vec<Vec<G>> = vectors.iter().filter(|v| v.iter().any(|c| !c.is_zero())).cloned().collect();
        if nonzero.is_empty() {
            return LinearSubspace { ambient_dim, generators: Vec::new() };
        }
        let m = Matrix::from_rows(nonzero).expect("rows of equal length");
        let (r, pivots) = m.rref();
        let generators = (0..pivots.len()).map(|i| r.row(i)).collect();
        LinearSubspace { ambient_dim, generators }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        LinearSubspace::span(ambient_dim, &Matrix::identity(ambient_dim).to_rows())
    }

    /// Kernel of the linear forms given as rows.
    pub fn solutions(ambient_dim: usize, forms: &[Vec<G>]) -> Self {
        let forms: Vec<Vec<G>> = forms.to_vec();
        if forms.is_empty() {
            return LinearSubspace::whole(ambient_dim);
        }
        let m = Matrix::from_rows(forms).expect("rows of equal length");
        LinearSubspace::span(ambient_dim, &m.nullspace())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<G>] {
        &self.generators
    }

    pub fn contains(&self, v: &[G]) -> bool {
        let mut rows = self.generators.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).expect("equal length").rank() == self.dim()
    }

    pub fn same_as(&self, o: &LinearSubspace) -> bool {
        self.dim() == o.dim() && o.generators.iter().all(|g| self.contains(g))
    }

    /// Equations (linear forms) cutting out the subspace.
    pub fn equations(&self) -> Vec<Vec<G>> {
        if self.generators.is_empty() {
            return Matrix::identity(self.ambient_dim).to_rows();
        }
        Matrix::from_rows(self.generators.clone()).expect("equal length").nullspace()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `{y : x·φ(y) = 0}`.
    Right,
    /// `{y : y·φ(x) = 0}`.
    Left,
}

pub fn perp(phi: &Isomorphism, x: &LinearSubspace, side: Side) -> LinearSubspace {
    let m = phi.matrix();
    let forms: Vec<Vec<G>> = x
        .generators()
        .iter()
        .map(|g| match side {
            Side::Right => m.transpose().mul_vec(g),
            Side::Left => m.mul_vec(g),
        })
        .collect();
    LinearSubspace::solutions(phi.dim(), &forms)
}

/// The four conditions tested at a smooth point of `Q(φ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub phi_p_proportional: bool,
    pub perps_equal: bool,
    pub translation_fixes_p: bool,
    pub tangent_is_perp: bool,
}

impl FixedPointReport {
    pub fn all_agree(&self) -> bool {
        let v = [self.phi_p_proportional, self.perps_equal, self.translation_fixes_p, self.tangent_is_perp];
        v.iter().all(|&b| b == v[0])
    }
}

pub fn smooth_fixed_point_check(phi: &Isomorphism, p: &[G]) -> Result<FixedPointReport> {
    let q = quadric_of(phi)?;
    if p.len() != phi.dim() {
        return Err(Error::Dimension("point dimension".into()));
    }
    if !q.contains(p) {
        return Err(Error::NotOnQuadric);
    }
    if !q.is_smooth_at(p) {
        return Err(Error::SingularPoint);
    }
    let m = phi.matrix();
    let phi_p = m.mul_vec(p);
    let tphi_p = m.transpose().mul_vec(p);
    let span_p = LinearSubspace::span(phi.dim(), &[p.to_vec()]);
    let right = perp(phi, &span_p, Side::Right);
    let left = perp(phi, &span_p, Side::Left);
    let tp = translation_of(phi).mul_vec(p);
    let tangent = LinearSubspace::solutions(phi.dim(), &[q.polar(p)]);
    Ok(FixedPointReport {
        phi_p_proportional: vec_proportional(&phi_p, &tphi_p),
        perps_equal: right.same_as(&left),
        translation_fixes_p: vec_proportional(&tp, p),
        tangent_is_perp: tangent.same_as(&right),
    })
}

/// `u·φ(v)`.
pub fn pairing(phi: &Isomorphism, u: &[G], v: &[G]) -> G {
    dot(u, &phi.matrix().mul_vec(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gq;

    fn case_11() -> Isomorphism {
        // Cas 1.1 with X = Y = 1, λ = 2, μ = 3
        let g = |n, d| gq(n, d);
        Isomorphism::new(
            Matrix::from_rows(vec![
                vec![g(0, 1), g(1, 1), g(0, 1), g(0, 1)],
                vec![g(2, 1), g(0, 1), g(0, 1), g(0, 1)],
                vec![g(0, 1), g(0, 1), g(0, 1), g(1, 1)],
                vec![g(0, 1), g(0, 1), g(3, 1), g(0, 1)],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn translation_of_case_11() {
        let t = translation_of(&case_11());
        assert_eq!(t, Matrix::diagonal(&[gq(2, 1), gq(1, 2), gq(3, 1), gq(1, 3)]));
        assert_eq!(quadric_of(&case_11()).unwrap().rank(), 4);
    }

    #[test]
    fn symmetric_and_antisymmetric() {
        let s = Isomorphism::new(Matrix::from_ints(&[&[1, 2], &[2, 3]])).unwrap();
        assert_eq!(translation_of(&s), Matrix::identity(2));
        let a = Isomorphism::new(Matrix::from_ints(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_eq!(translation_of(&a), -&Matrix::identity(2));
        assert!(matches!(quadric_of(&a), Err(Error::NoQuadric)));
    }

    #[test]
    fn perp_of_first_axis() {
        let phi = case_11();
        let x = LinearSubspace::span(4, &[vec![gq(1, 1), gq(0, 1), gq(0, 1), gq(0, 1)]]);
        let r = perp(&phi, &x, Side::Right);
        let e = |i: usize| (0..4).map(|k| gq((k == i) as i64, 1)).collect::<Vec<_>>();
        assert!(r.same_as(&LinearSubspace::span(4, &[e(0), e(2), e(3)])));
        let whole = LinearSubspace::whole(4);
        assert_eq!(perp(&phi, &whole, Side::Left).dim(), 0);
    }

    #[test]
    fn fixed_point_conditions_fail_together() {
        let p = [gq(1, 1), gq(0, 1), gq(1, 1), gq(0, 1)];
        let r = smooth_fixed_point_check(&case_11(), &p).unwrap();
        assert!(!r.phi_p_proportional && !r.perps_equal && !r.translation_fixes_p && !r.tangent_is_perp);
        let off = [gq(1, 1), "i".parse().unwrap(), gq(0, 1), gq(0, 1)];
        assert!(matches!(smooth_fixed_point_check(&case_11(), &off), Err(Error::NotOnQuadric)));
    }
}
