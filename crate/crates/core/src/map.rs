//! Rational maps given by tuples of forms, and square matrices of forms.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::GaussianRational as G;
use crate::matrix::Matrix;
use crate::poly::{proportional, reduce_tuple, HomPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    coords: Vec<HomPoly>,
}

impl RationalMap {
    pub fn new(coords: Vec<HomPoly>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::Dimension("rational map with no coordinates".into()));
        };
        let n = first.nvars();
        let degree = coords.iter().find(|p| !p.is_zero()).map(HomPoly::degree).ok_or(Error::ZeroTuple)?;
        for p in &coords {
            if p.nvars() != n {
                return Err(Error::Dimension("coordinates in different rings".into()));
            }
            if !p.is_zero() && p.degree() != degree {
                return Err(Error::DegreeMismatch("coordinates of unequal degree".into()));
            }
        }
        Ok(RationalMap { coords })
    }

    pub fn identity(n: usize) -> Self {
        RationalMap { coords: HomPoly::vars(n) }
    }

    pub fn coords(&self) -> &[HomPoly] {
        &self.coords
    }

    pub fn nvars_in(&self) -> usize {
        self.coords[0].nvars()
    }

    pub fn target_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn degree(&self) -> u32 {
        self.coords.iter().find(|p| !p.is_zero()).map_or(0, HomPoly::degree)
    }

    /// Same map with the common factor of the coordinates removed.
    pub fn reduced(&self) -> RationalMap {
        RationalMap { coords: reduce_tuple(&self.coords) }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        let coords = self.coords.iter().map(|p| p.substitute(&inner.coords)).collect::<Result<Vec<_>>>()?;
        RationalMap::new(coords)
    }

    pub fn eval(&self, p: &[G]) -> Vec<G> {
        self.coords.iter().map(|c| c.eval(p)).collect()
    }

    pub fn proportional_to(&self, o: &RationalMap) -> bool {
        proportional(&self.coords, &o.coords)
    }

    pub fn to_json(&self) -> Value {
        json!(self.coords.iter().map(HomPoly::to_term_list).collect::<Vec<_>>())
    }
}

/// Square matrix whose entries are forms of one degree in the P-variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixOfForms {
    entries: Vec<Vec<HomPoly>>,
}

impl MatrixOfForms {
    pub fn new(entries: Vec<Vec<HomPoly>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix of forms must be square".into()));
        }
        let nv = entries[0][0].nvars();
        let degree = entries.iter().flatten().find(|p| !p.is_zero()).map(HomPoly::degree);
        for p in entries.iter().flatten() {
            if p.nvars() != nv {
                return Err(Error::Dimension("entries in different rings".into()));
            }
            if !p.is_zero() && Some(p.degree()) != degree {
                return Err(Error::DegreeMismatch("entries of unequal degree".into()));
            }
        }
        let m = MatrixOfForms { entries };
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    /// A constant matrix viewed as forms of degree 0.
    pub fn constant(m: &Matrix, nvars: usize) -> Result<Self> {
        MatrixOfForms::new(m.to_rows().into_iter().map(|r| r.into_iter().map(|c| HomPoly::constant(nvars, c)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<HomPoly>] {
        &self.entries
    }

    pub fn nvars(&self) -> usize {
        self.entries[0][0].nvars()
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().flatten().find(|p| !p.is_zero()).map_or(0, HomPoly::degree)
    }

    pub fn det(&self) -> HomPoly {
        det_forms(&self.entries)
    }

    /// `R(P)·v` with `P` in the first `nvars` variables and `v` in the next `dim`.
    pub fn apply_to_vector(&self) -> Vec<HomPoly> {
        let n = self.nvars();
        let total = n + self.dim();
        let deg = self.degree() + 1;
        self.entries
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(HomPoly::zero(total, deg), |acc, (j, e)| {
                    &acc + &e.embed(total, 0).mul_poly(&HomPoly::var(total, n + j))
                })
            })
            .collect()
    }

    pub fn eval(&self, p: &[G]) -> Matrix {
        Matrix::from_rows(self.entries.iter().map(|r| r.iter().map(|e| e.eval(p)).collect()).collect())
            .expect("square")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim(),
            "entries": self.entries.iter().map(|r| r.iter().map(HomPoly::to_term_list).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Determinant by cofactor expansion along the first row (small sizes only).
pub fn det_forms(m: &[Vec<HomPoly>]) -> HomPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let nv = m[0][0].nvars();
    let mut acc: Option<HomPoly> = None;
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<HomPoly>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let mut t = m[0][j].mul_poly(&det_forms(&minor));
        if j % 2 == 1 {
            t = -t;
        }
        acc = Some(match acc {
            Some(a) => &a + &t,
            None => t,
        });
    }
    acc.unwrap_or_else(|| {
        let deg = m.iter().flatten().find(|p| !p.is_zero()).map_or(0, HomPoly::degree) * n as u32;
        HomPoly::zero(nv, deg)
    })
}

/// `Σ_{jk} m_{jk}·u_j·v_k` for vectors of forms.
pub fn bilinear_forms(m: &Matrix, u: &[HomPoly], v: &[HomPoly]) -> HomPoly {
    let nv = u[0].nvars();
    let deg = u[0].degree() + v[0].degree();
    let mut acc = HomPoly::zero(nv, deg);
    for (j, uj) in u.iter().enumerate() {
        let mut inner = HomPoly::zero(nv, v[0].degree());
        for (k, vk) in v.iter().enumerate() {
            if !m[(j, k)].is_zero() {
                inner = &inner + &vk.scale(&m[(j, k)]);
            }
        }
        if !inner.is_zero() {
            acc = &acc + &uj.mul_poly(&inner);
        }
    }
    acc
}

/// Linear combinations `m·v` of a vector of forms.
pub fn mat_forms(m: &Matrix, v: &[HomPoly]) -> Vec<HomPoly> {
    let nv = v[0].nvars();
    let deg = v.iter().find(|p| !p.is_zero()).map_or(0, HomPoly::degree);
    (0..m.rows())
        .map(|i| {
            (0..m.cols()).fold(HomPoly::zero(nv, deg), |acc, j| {
                if m[(i, j)].is_zero() {
                    acc
                } else {
                    &acc + &v[j].scale(&m[(i, j)])
                }
            })
        })
        .collect()
}

pub fn unit_point(n: usize, i: usize) -> Vec<G> {
    (0..n).map(|k| if k == i { G::one() } else { G::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gq;

    #[test]
    fn determinant_of_forms() {
        let [x, y, z] = [HomPoly::var(3, 0), HomPoly::var(3, 1), HomPoly::var(3, 2)];
        let zero = HomPoly::zero(3, 1);
        let m = MatrixOfForms::new(vec![
            vec![x.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), y.clone(), x.clone()],
            vec![zero.clone(), z.clone(), y.clone()],
        ])
        .unwrap();
        assert_eq!(m.det(), &x.mul_poly(&y).mul_poly(&y) - &x.mul_poly(&x).mul_poly(&z));
    }

    #[test]
    fn composition_with_identity() {
        let [x, y] = [HomPoly::var(2, 0), HomPoly::var(2, 1)];
        let f = RationalMap::new(vec![x.mul_poly(&y), y.mul_poly(&y).scale(&gq(3, 1))]).unwrap();
        assert_eq!(f.compose(&RationalMap::identity(2)).unwrap(), f);
        assert_eq!(f.reduced().coords(), &[x.clone(), y.scale(&gq(3, 1))]);
    }
}
