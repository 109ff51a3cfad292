//! Standard model of a normal congruence: `φ = diag(0_{n−m}, I_{m+1}) + A` on
//! `W` of dimension `n+1`, the point `O = (0,…,0,i,1)` on `Q(φ)`, and the
//! second intersection `η(Q)` of the line `OQ` with `Q(φ)`.
//!
//! In these coordinates `η(P) = E·p(P)` for the normal basis `p`, and the
//! congruence has matrix `B = Eᵀ·φ·E`.

use num_traits::{One, Zero};

use crate::congruence::{BasisKind, QuadraticCongruence};
use crate::error::{Error, Result};
use crate::field::GaussianRational as G;
use crate::map::{bilinear_forms, mat_forms};
use crate::matrix::{dot, Matrix};
use crate::poly::{sum, HomPoly};

/// `E` with `E_kk = −2i` for `k < n−1` and the block `[[−i, i], [1, 1]]` last.
pub fn e_matrix(n: usize) -> Matrix {
    let mut e = Matrix::zeros(n + 1, n + 1);
    for k in 0..n - 1 {
        e[(k, k)] = G::from_parts((0, 1), (-2, 1));
    }
    e[(n - 1, n - 1)] = -G::i();
    e[(n, n - 1)] = G::one();
    e[(n - 1, n)] = G::i();
    e[(n, n)] = G::one();
    e
}

pub fn phi_s(n: usize, m: usize) -> Matrix {
    Matrix::diagonal(&(0..=n).map(|k| if k >= n - m { G::one() } else { G::zero() }).collect::<Vec<_>>())
}

pub fn origin(n: usize) -> Vec<G> {
    let mut o = vec![G::zero(); n + 1];
    o[n - 1] = G::i();
    o[n] = G::one();
    o
}

/// `(x_k·x_{n−1} for k < n−1, x_{n−1}², x_{n−m}² + ⋯ + x_{n−2}²)`.
pub fn normal_basis(n: usize, m: usize) -> Vec<HomPoly> {
    let x = HomPoly::vars(n);
    let mut b: Vec<HomPoly> = (0..n).map(|k| x[k].mul_poly(&x[n - 1])).collect();
    b.push(sum(n, 2, (n - m..n - 1).map(|j| x[j].mul_poly(&x[j]))));
    b
}

pub fn detect_normal_basis(n: usize, forms: &[HomPoly]) -> Option<BasisKind> {
    (2..=n).find(|&m| normal_basis(n, m) == forms).map(|m| BasisKind::Normal { c_rank: m - 1 })
}

/// `η(Q) = (Q·φ(Q))·O − (Q·φ(O) + O·φ(Q))·Q`.
pub fn eta(phi: &Matrix, o: &[G], q: &[G]) -> Vec<G> {
    let qq = phi.bilinear(q, q);
    let s = &phi.bilinear(q, o) + &phi.bilinear(o, q);
    o.iter().zip(q).map(|(oi, qi)| &(&qq * oi) - &(&s * qi)).collect()
}

/// `η` on the affine chart `Q = (x_0, …, x_{n−1}, 0)`, as quadratic forms.
pub fn eta_forms(phi: &Matrix, o: &[G]) -> Vec<HomPoly> {
    let n = phi.dim() - 1;
    let mut q = HomPoly::vars(n);
    q.push(HomPoly::zero(n, 1));
    let qq = bilinear_forms(phi, &q, &q);
    let po = phi.mul_vec(o);
    let op = phi.transpose().mul_vec(o);
    let s = sum(n, 1, q.iter().enumerate().map(|(k, qk)| qk.scale(&(&po[k] + &op[k]))));
    o.iter().zip(&q).map(|(ok, qk)| &qq.scale(ok) - &s.mul_poly(qk)).collect()
}

/// `φ` split as `diag(0_{n−m}, I_{m+1}) + A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardModel {
    pub n: usize,
    pub m: usize,
    pub a: Matrix,
}

impl StandardModel {
    pub fn new(n: usize, m: usize, a: Matrix) -> Result<Self> {
        if n < 2 || !(2..=n).contains(&m) {
            return Err(Error::Shape(format!("need 2 <= m <= n, got n = {n}, m = {m}")));
        }
        if a.rows() != n + 1 || a.cols() != n + 1 || !a.is_antisymmetric() {
            return Err(Error::Shape("A must be antisymmetric of size n+1".into()));
        }
        Ok(StandardModel { n, m, a })
    }

    pub fn from_phi(phi: &Matrix, n: usize) -> Result<Self> {
        if phi.rows() != n + 1 || phi.cols() != n + 1 {
            return Err(Error::Shape(format!("expected a {}x{} matrix", n + 1, n + 1)));
        }
        let sym = phi.sym_part();
        let m = (2..=n)
            .find(|&m| sym == phi_s(n, m))
            .ok_or_else(|| Error::Shape("symmetric part is not diag(0, …, 0, 1, …, 1)".into()))?;
        StandardModel::new(n, m, phi.antisym_part())
    }

    pub fn phi(&self) -> Matrix {
        &phi_s(self.n, self.m) + &self.a
    }

    /// `B` from `A` through the coordinate relations.
    pub fn b_matrix(&self) -> Matrix {
        dictionary(self.n, self.m, &self.a)
    }
}

/// Entrywise relations between `A` and `B = Eᵀ(φ_S + A)E`:
/// `b_kj = −4α_kj − 4δ_kj[k ≥ n−m]`, `b_{k,n−1} = −2α_{k,n−1} − 2iα_{k,n}`,
/// `b_{k,n} = 2α_{k,n−1} − 2iα_{k,n}` for `k, j < n−1`,
/// `b_{n−1,n} = 2 − 2iα_{n−1,n}`, and the rest by the symmetry of `Eᵀφ_S E`.
pub fn dictionary(n: usize, m: usize, a: &Matrix) -> Matrix {
    let i = G::i();
    let g = |v: i64| G::from(v);
    let mut b = Matrix::zeros(n + 1, n + 1);
    for k in 0..n - 1 {
        for j in 0..n - 1 {
            let mut v = &g(-4) * &a[(k, j)];
            if k == j && k >= n - m {
                v -= &g(4);
            }
            b[(k, j)] = v;
        }
        let bk1 = &(&g(-2) * &a[(k, n - 1)]) - &(&(&g(2) * &i) * &a[(k, n)]);
        let bk2 = &(&g(2) * &a[(k, n - 1)]) - &(&(&g(2) * &i) * &a[(k, n)]);
        b[(n - 1, k)] = -&bk1;
        b[(n, k)] = -&bk2;
        b[(k, n - 1)] = bk1;
        b[(k, n)] = bk2;
    }
    let top = &g(2) - &(&(&g(2) * &i) * &a[(n - 1, n)]);
    b[(n, n - 1)] = &g(4) - &top;
    b[(n - 1, n)] = top;
    b
}

/// Inverse of the dictionary: `A = E⁻ᵀ·B·E⁻¹ − φ_S`.
pub fn extract_antisymmetric(n: usize, m: usize, b: &Matrix) -> Result<Matrix> {
    let phi = isomorphism_from_b(n, b)?;
    let a = &phi - &phi_s(n, m);
    if !a.is_antisymmetric() {
        return Err(Error::Shape("B is not in the image of the dictionary".into()));
    }
    Ok(a)
}

/// `E⁻ᵀ·B·E⁻¹`.
pub fn isomorphism_from_b(n: usize, b: &Matrix) -> Result<Matrix> {
    let ei = e_matrix(n).inverse()?;
    ei.transpose().checked_mul(b)?.checked_mul(&ei)
}

/// The congruence attached to `φ` by the model construction.
pub fn geometric_build(phi: &Matrix, n: usize) -> Result<QuadraticCongruence> {
    let model = StandardModel::from_phi(phi, n)?;
    if phi.det().is_zero() {
        return Err(Error::Singular);
    }
    QuadraticCongruence::new(n, BasisKind::Normal { c_rank: model.m - 1 }, normal_basis(n, model.m), model.b_matrix())
}

/// Associated isomorphism of a normal congruence, read in `W`.
pub fn associated_isomorphism(s: &QuadraticCongruence) -> Result<Matrix> {
    if !matches!(s.kind(), BasisKind::Normal { .. }) {
        return Err(Error::NotNormal("model coordinates need the normal basis".into()));
    }
    isomorphism_from_b(s.n(), s.phi_inv())
}

/// `(P, Q) ↦ η(Q)·φ·η(P)`: the equation of `σ'(P)` computed from `η`, `P` first.
pub fn sigma_prime_equation(phi: &Matrix) -> HomPoly {
    let n = phi.dim() - 1;
    let eta = eta_forms(phi, &origin(n));
    let tot = 2 * n;
    let ep: Vec<HomPoly> = eta.iter().map(|f| f.embed(tot, 0)).collect();
    let eq: Vec<HomPoly> = eta.iter().map(|f| f.embed(tot, n)).collect();
    bilinear_forms(phi, &eq, &ep)
}

/// Projection from `O` onto `P_{n−1}`: `w ↦ (w_k − w_n·O_k)_{k<n}`.
pub fn project_from_origin(w: &[HomPoly]) -> Vec<HomPoly> {
    let n = w.len() - 1;
    let o = origin(n);
    (0..n).map(|k| &w[k] - &w[n].scale(&o[k])).collect()
}

/// `T(σ)(P) = π(T(φ)⁻¹·η(P))`.
pub fn compositional_translation(s: &QuadraticCongruence) -> Result<Vec<HomPoly>> {
    let n = s.n();
    let phi = associated_isomorphism(s)?;
    let t_inv = phi.inverse()?.checked_mul(&phi.transpose())?;
    let eta = mat_forms(&e_matrix(n), s.basis());
    Ok(project_from_origin(&mat_forms(&t_inv, &eta)))
}

/// Linear form of `π(O^⊥)` with `O^⊥ = {y : O·φ·y = 0}`.
pub fn o_perp_form(phi: &Matrix) -> Vec<G> {
    let n = phi.dim() - 1;
    let o = origin(n);
    (0..n).map(|k| dot(&o, &phi.col(k))).collect()
}

/// Linear form of `π(T_O Q(φ))`.
pub fn tangent_form(phi: &Matrix) -> Vec<G> {
    o_perp_form(&phi.sym_part())
}
