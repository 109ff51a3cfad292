//! Univariate polynomials over Q(i), used for characteristic polynomials and
//! invariant factors.

use std::fmt;

use num_traits::{One, Zero};

use crate::field::GaussianRational as G;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<G>,
}

impl UniPoly {
    /// Coefficients lowest degree first; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<G>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: G) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(G::one())
    }

    pub fn x() -> Self {
        UniPoly::new(vec![G::zero(), G::one()])
    }

    /// `x − r`.
    pub fn linear(r: &G) -> Self {
        UniPoly::new(vec![-r, G::one()])
    }

    pub fn coeffs(&self) -> &[G] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> G {
        self.coeffs.get(k).cloned().unwrap_or_else(G::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> G {
        self.coeffs.last().cloned().unwrap_or_else(G::zero)
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![G::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &G) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        (0..k).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![G::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &(&c * dc);
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(&self.leading().inv().expect("nonzero"))
    }

    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &G::from(k as i64)).collect())
    }

    pub fn eval(&self, x: &G) -> G {
        self.coeffs.iter().rev().fold(G::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Largest `k` with `(x − r)^k` dividing `self`, and the cofactor.
    pub fn strip_root(&self, r: &G) -> (u32, UniPoly) {
        let lin = UniPoly::linear(r);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() && p.eval(r).is_zero() {
            p = p.divrem(&lin).0;
            k += 1;
        }
        (k, p)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let ct = c.to_text();
            let complex = !c.re.is_zero() && !c.im.is_zero();
            let ct = if complex { format!("({ct})") } else { ct };
            parts.push(match (k, ct.as_str()) {
                (0, _) => ct.clone(),
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{ct}*{mono}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gq;

    #[test]
    fn division_and_gcd() {
        let a = UniPoly::linear(&gq(1, 1)).mul(&UniPoly::linear(&gq(2, 1)));
        let b = UniPoly::linear(&gq(1, 1)).mul(&UniPoly::linear(&gq(-3, 1)));
        assert_eq!(a.gcd(&b), UniPoly::linear(&gq(1, 1)));
        let (q, r) = a.divrem(&UniPoly::linear(&gq(2, 1)));
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::linear(&gq(1, 1)));
    }

    #[test]
    fn squarefree_and_roots() {
        let p = UniPoly::linear(&gq(-1, 1)).pow(3).mul(&UniPoly::linear(&gq(2, 1)));
        assert!(!p.is_squarefree());
        let (k, rest) = p.strip_root(&gq(-1, 1));
        assert_eq!(k, 3);
        assert_eq!(rest, UniPoly::linear(&gq(2, 1)));
        assert_eq!(p.to_string(), "x^4 + x^3 - 3*x^2 - 5*x - 2");
    }
}
