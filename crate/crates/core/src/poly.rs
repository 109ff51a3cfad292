//! Sparse homogeneous polynomials over Q(i).
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors. All terms of a
//! homogeneous polynomial share a total degree, so the lexicographic order of
//! the keys is the graded-lex order and the last entry is the leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::GaussianRational as G;

pub type Terms = BTreeMap<Vec<u32>, G>;

#[derive(Clone)]
pub struct HomPoly {
    nvars: usize,
    degree: u32,
    terms: Terms,
}

/// One term in the JSON encoding.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exp: Vec<u32>,
    pub coef: G,
}

impl PartialEq for HomPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.terms == other.terms
            && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl Eq for HomPoly {}

impl HomPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomPoly { nvars, degree, terms: Terms::new() }
    }

    pub fn constant(nvars: usize, c: G) -> Self {
        HomPoly::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        HomPoly::constant(nvars, G::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        HomPoly::monomial(nvars, e, G::one())
    }

    /// All variables of an `nvars`-variable ring, in order.
    pub fn vars(nvars: usize) -> Vec<HomPoly> {
        (0..nvars).map(|i| HomPoly::var(nvars, i)).collect()
    }

    pub fn monomial(nvars: usize, exp: Vec<u32>, c: G) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must equal nvars");
        let degree = exp.iter().sum();
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        HomPoly { nvars, degree, terms }
    }

    /// Build from terms, checking homogeneity; zero coefficients are dropped.
    pub fn from_terms(nvars: usize, degree: u32, terms: impl IntoIterator<Item = (Vec<u32>, G)>) -> Result<Self> {
        let mut out = Terms::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension(format!("exponent {e:?} for {nvars} variables")));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::DegreeMismatch(format!("exponent {e:?} in a form of degree {degree}")));
            }
            accumulate(&mut out, e, &c);
        }
        Ok(HomPoly { nvars, degree, terms: out })
    }

    /// Parse the JSON term list; the number of variables is read from the exponents.
    pub fn from_term_list(list: &[PolyTerm], nvars: usize, degree: u32) -> Result<Self> {
        HomPoly::from_terms(nvars, degree, list.iter().map(|t| (t.exp.clone(), t.coef.clone())))
    }

    pub fn to_term_list(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| PolyTerm { exp: e.clone(), coef: c.clone() })
            .collect()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> G {
        self.terms.get(exp).cloned().unwrap_or_else(G::zero)
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &G)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    fn compatible(&self, o: &HomPoly, what: &str) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::Dimension(format!("{what}: {} vs {} variables", self.nvars, o.nvars)));
        }
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return Err(Error::DegreeMismatch(format!("{what}: degree {} vs {}", self.degree, o.degree)));
        }
        Ok(())
    }

    fn merged_degree(&self, o: &HomPoly) -> u32 {
        if self.is_zero() {
            o.degree
        } else {
            self.degree
        }
    }

    pub fn checked_add(&self, o: &HomPoly) -> Result<HomPoly> {
        self.compatible(o, "add")?;
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            accumulate(&mut terms, e.clone(), c);
        }
        Ok(HomPoly { nvars: self.nvars, degree: self.merged_degree(o), terms })
    }

    pub fn checked_sub(&self, o: &HomPoly) -> Result<HomPoly> {
        self.checked_add(&o.neg_ref())
    }

    fn neg_ref(&self) -> HomPoly {
        self.scale(&-G::one())
    }

    pub fn scale(&self, c: &G) -> HomPoly {
        if c.is_zero() {
            return HomPoly::zero(self.nvars, self.degree);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        HomPoly { nvars: self.nvars, degree: self.degree, terms }
    }

    pub fn mul_poly(&self, o: &HomPoly) -> HomPoly {
        assert_eq!(self.nvars, o.nvars, "mul: variable count mismatch");
        HomPoly { nvars: self.nvars, degree: self.degree + o.degree, terms: terms_mul(&self.terms, &o.terms) }
    }

    pub fn pow(&self, k: u32) -> HomPoly {
        let mut acc = HomPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul_poly(self);
        }
        acc
    }

    /// Substitute one form per variable; all forms must share a degree.
    pub fn substitute(&self, forms: &[HomPoly]) -> Result<HomPoly> {
        if forms.len() != self.nvars {
            return Err(Error::Dimension(format!("substitute: {} forms for {} variables", forms.len(), self.nvars)));
        }
        let Some(first) = forms.first() else {
            return Ok(self.clone());
        };
        let (m, d) = (first.nvars, first.degree);
        for f in forms {
            if f.nvars != m {
                return Err(Error::Dimension("substitute: forms in different rings".into()));
            }
            if f.degree != d && !f.is_zero() {
                return Err(Error::DegreeMismatch("substitute: forms of unequal degree".into()));
            }
        }
        let mut powers: Vec<Vec<HomPoly>> = Vec::with_capacity(self.nvars);
        for (i, f) in forms.iter().enumerate() {
            let top = self.degree_in(i);
            let mut p = vec![HomPoly::one(m)];
            for k in 1..=top {
                let next = p[k as usize - 1].mul_poly(f);
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = Terms::new();
        for (e, c) in &self.terms {
            let mut t = Terms::new();
            t.insert(vec![0; m], c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = terms_mul(&t, &powers[i][k as usize].terms);
                }
            }
            for (te, tc) in t {
                accumulate(&mut out, te, &tc);
            }
        }
        Ok(HomPoly { nvars: m, degree: self.degree * d, terms: out })
    }

    pub fn eval(&self, point: &[G]) -> G {
        assert_eq!(point.len(), self.nvars, "eval: point dimension");
        let mut acc = G::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Exact quotient; the error carries the remainder of the division.
    pub fn exact_div(&self, d: &HomPoly) -> Result<HomPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.nvars != d.nvars {
            return Err(Error::Dimension("exact_div: variable count mismatch".into()));
        }
        let (q, r) = terms_divide(&self.terms, &d.terms);
        if !r.is_empty() {
            let degree = self.degree;
            return Err(Error::InexactDivision(Box::new(HomPoly { nvars: self.nvars, degree, terms: r })));
        }
        let degree = self.degree.checked_sub(d.degree).ok_or_else(|| {
            Error::DegreeMismatch("exact_div: divisor of higher degree".into())
        })?;
        Ok(HomPoly { nvars: self.nvars, degree, terms: q })
    }

    pub fn divides(&self, p: &HomPoly) -> bool {
        p.exact_div(self).is_ok()
    }

    /// Scale so that the leading coefficient is 1.
    pub fn normalized(&self) -> HomPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, o: &HomPoly) -> HomPoly {
        assert_eq!(self.nvars, o.nvars, "gcd: variable count mismatch");
        let terms = gcd_terms(&self.terms, &o.terms, self.nvars);
        let degree = terms.keys().next().map(|e| e.iter().sum()).unwrap_or(0);
        HomPoly { nvars: self.nvars, degree, terms }
    }

    pub fn derivative(&self, var: usize) -> HomPoly {
        let mut out = Terms::new();
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut f = e.clone();
                f[var] -= 1;
                accumulate(&mut out, f, &(c * &G::from(e[var] as i64)));
            }
        }
        HomPoly { nvars: self.nvars, degree: self.degree.saturating_sub(1), terms: out }
    }

    /// Move into a ring of `nvars` variables, placing variable `i` at `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> HomPoly {
        assert!(offset + self.nvars <= nvars, "embed: target ring too small");
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; nvars];
                f[offset..offset + self.nvars].copy_from_slice(e);
                (f, c.clone())
            })
            .collect();
        HomPoly { nvars, degree: self.degree, terms }
    }

    /// Keep only variables `keep` (in that order), after setting the others to zero.
    pub fn restrict(&self, keep: &[usize]) -> HomPoly {
        let mut out = Terms::new();
        for (e, c) in &self.terms {
            let dropped: u32 = (0..self.nvars).filter(|i| !keep.contains(i)).map(|i| e[i]).sum();
            if dropped == 0 {
                accumulate(&mut out, keep.iter().map(|&i| e[i]).collect(), c);
            }
        }
        HomPoly { nvars: keep.len(), degree: self.degree, terms: out }
    }

    /// Largest degree in the variables `vars` over all terms.
    pub fn degree_in_vars(&self, vars: std::ops::Range<usize>) -> u32 {
        self.terms.keys().map(|e| e[vars.clone()].iter().sum()).max().unwrap_or(0)
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { names[i].to_string() } else { format!("{}^{}", names[i], p) })
                .collect();
            let ctext = c.to_text();
            let complex = !c.re.is_zero() && !c.im.is_zero();
            let (sign, mag) = if !complex && ctext.starts_with('-') {
                ("-", ctext[1..].to_string())
            } else if complex {
                ("+", format!("({ctext})"))
            } else {
                ("+", ctext)
            };
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            match (mono.is_empty(), mag.as_str()) {
                (true, m) => s.push_str(m),
                (false, "1") => s.push_str(&mono.join("*")),
                (false, m) => s.push_str(&format!("{m}*{}", mono.join("*"))),
            }
        }
        s
    }
}

pub fn default_names(nvars: usize) -> Vec<String> {
    match nvars {
        1..=3 => ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect(),
        6 => ["x", "y", "z", "X", "Y", "Z"].iter().map(|s| s.to_string()).collect(),
        _ => (1..=nvars).map(|i| format!("x{i}")).collect(),
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_string_with(&refs))
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly[{}; deg {}]({})", self.nvars, self.degree, self)
    }
}

impl Serialize for HomPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_term_list().serialize(s)
    }
}

// Operators panic on incompatible operands; `checked_add`/`checked_sub`
// return the error instead.
impl<'a> Add<&'a HomPoly> for &'a HomPoly {
    type Output = HomPoly;
    fn add(self, o: &'a HomPoly) -> HomPoly {
        self.checked_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a HomPoly> for &'a HomPoly {
    type Output = HomPoly;
    fn sub(self, o: &'a HomPoly) -> HomPoly {
        self.checked_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a HomPoly> for &'a HomPoly {
    type Output = HomPoly;
    fn mul(self, o: &'a HomPoly) -> HomPoly {
        self.mul_poly(o)
    }
}

impl Add for HomPoly {
    type Output = HomPoly;
    fn add(self, o: HomPoly) -> HomPoly {
        &self + &o
    }
}

impl Sub for HomPoly {
    type Output = HomPoly;
    fn sub(self, o: HomPoly) -> HomPoly {
        &self - &o
    }
}

impl Mul for HomPoly {
    type Output = HomPoly;
    fn mul(self, o: HomPoly) -> HomPoly {
        self.mul_poly(&o)
    }
}

impl Neg for &HomPoly {
    type Output = HomPoly;
    fn neg(self) -> HomPoly {
        self.neg_ref()
    }
}

impl Neg for HomPoly {
    type Output = HomPoly;
    fn neg(self) -> HomPoly {
        self.neg_ref()
    }
}

/// Linear form `Σ c_i x_i`.
pub fn linear_form(coeffs: &[G]) -> HomPoly {
    let n = coeffs.len();
    let terms = coeffs.iter().enumerate().map(|(i, c)| {
        let mut e = vec![0; n];
        e[i] = 1;
        (e, c.clone())
    });
    HomPoly::from_terms(n, 1, terms).expect("linear terms are homogeneous")
}

/// Coefficients of a linear form.
pub fn linear_coeffs(p: &HomPoly) -> Vec<G> {
    (0..p.nvars())
        .map(|i| {
            let mut e = vec![0; p.nvars()];
            e[i] = 1;
            p.coeff(&e)
        })
        .collect()
}

/// Sum of forms of a common degree; `nvars`/`degree` cover the empty case.
pub fn sum(nvars: usize, degree: u32, items: impl IntoIterator<Item = HomPoly>) -> HomPoly {
    items.into_iter().fold(HomPoly::zero(nvars, degree), |acc, p| &acc + &p)
}

/// Projective equality of tuples: `u_i·v_j = u_j·v_i` for all `i < j`.
pub fn proportional(u: &[HomPoly], v: &[HomPoly]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if u[i].mul_poly(&v[j]) != u[j].mul_poly(&v[i]) {
                return false;
            }
        }
    }
    // single-coordinate tuples, or zero against nonzero
    u.iter().all(|p| p.is_zero()) == v.iter().all(|p| p.is_zero())
}

/// Remove the gcd of all coordinates and normalize the first nonzero one.
pub fn reduce_tuple(coords: &[HomPoly]) -> Vec<HomPoly> {
    let Some(first) = coords.iter().find(|p| !p.is_zero()) else {
        return coords.to_vec();
    };
    let g = coords.iter().fold(first.clone(), |g, p| g.gcd(p));
    let reduced: Vec<HomPoly> = coords.iter().map(|p| p.exact_div(&g).expect("gcd divides")).collect();
    let lead = reduced
        .iter()
        .find_map(|p| p.leading().map(|(_, c)| c.clone()))
        .expect("nonzero tuple");
    let inv = lead.inv().expect("nonzero");
    reduced.iter().map(|p| p.scale(&inv)).collect()
}

// ---- term-map kernels, shared with the non-homogeneous gcd ----

fn accumulate(t: &mut Terms, e: Vec<u32>, c: &G) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&e) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                t.remove(&e);
            }
        }
        None => {
            t.insert(e, c.clone());
        }
    }
}

fn terms_mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            accumulate(&mut out, e, &(ca * cb));
        }
    }
    out
}

fn terms_sub(a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (e, c) in b {
        accumulate(&mut out, e.clone(), &-c);
    }
    out
}

fn terms_scale(a: &Terms, c: &G) -> Terms {
    a.iter().map(|(e, v)| (e.clone(), v * c)).collect()
}

/// Lex-order division of `a` by `b`: returns (quotient, remainder).
fn terms_divide(a: &Terms, b: &Terms) -> (Terms, Terms) {
    let (lb_e, lb_c) = b.iter().next_back().expect("nonzero divisor");
    let lb_inv = lb_c.inv().expect("nonzero");
    let mut p = a.clone();
    let mut q = Terms::new();
    let mut r = Terms::new();
    while let Some((e, c)) = p.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        if e.iter().zip(lb_e).all(|(x, y)| x >= y) {
            let qe: Vec<u32> = e.iter().zip(lb_e).map(|(x, y)| x - y).collect();
            let qc = &c * &lb_inv;
            let mut t = Terms::new();
            t.insert(qe.clone(), qc.clone());
            p = terms_sub(&p, &terms_mul(&t, b));
            accumulate(&mut q, qe, &qc);
        } else {
            p.remove(&e);
            accumulate(&mut r, e, &c);
        }
    }
    (q, r)
}

fn terms_exact(a: &Terms, b: &Terms) -> Terms {
    let (q, r) = terms_divide(a, b);
    debug_assert!(r.is_empty(), "exact division expected");
    q
}

fn terms_monic(a: &Terms) -> Terms {
    match a.iter().next_back() {
        Some((_, c)) => terms_scale(a, &c.inv().expect("nonzero")),
        None => Terms::new(),
    }
}

fn terms_one(nvars: usize) -> Terms {
    let mut t = Terms::new();
    t.insert(vec![0; nvars], G::one());
    t
}

fn deg_in(a: &Terms, v: usize) -> u32 {
    a.keys().map(|e| e[v]).max().unwrap_or(0)
}

/// Coefficient of `x_v^k`, as a polynomial free of `x_v`.
fn coeff_in(a: &Terms, v: usize, k: u32) -> Terms {
    a.iter()
        .filter(|(e, _)| e[v] == k)
        .map(|(e, c)| {
            let mut f = e.clone();
            f[v] = 0;
            (f, c.clone())
        })
        .collect()
}

fn shift_var(a: &Terms, v: usize, k: u32) -> Terms {
    a.iter()
        .map(|(e, c)| {
            let mut f = e.clone();
            f[v] += k;
            (f, c.clone())
        })
        .collect()
}

fn content_in(a: &Terms, v: usize, nvars: usize) -> Terms {
    let mut g = Terms::new();
    for k in 0..=deg_in(a, v) {
        let c = coeff_in(a, v, k);
        if !c.is_empty() {
            g = gcd_terms(&g, &c, nvars);
            if g.len() == 1 && g.keys().next().is_some_and(|e| e.iter().all(|&x| x == 0)) {
                break;
            }
        }
    }
    g
}

fn pseudo_rem(a: &Terms, b: &Terms, v: usize) -> Terms {
    let n = deg_in(b, v);
    let lb = coeff_in(b, v, n);
    let mut r = a.clone();
    while !r.is_empty() && deg_in(&r, v) >= n {
        let m = deg_in(&r, v);
        let lr = coeff_in(&r, v, m);
        r = terms_sub(&terms_mul(&lb, &r), &terms_mul(&shift_var(&lr, v, m - n), b));
        // keep coefficients small: r is only needed up to a unit
        r = terms_monic(&r);
    }
    r
}

/// Multivariate gcd by recursive primitive remainder sequences.
pub(crate) fn gcd_terms(a: &Terms, b: &Terms, nvars: usize) -> Terms {
    if a.is_empty() {
        return terms_monic(b);
    }
    if b.is_empty() {
        return terms_monic(a);
    }
    let Some(v) = (0..nvars).find(|&v| deg_in(a, v) > 0 || deg_in(b, v) > 0) else {
        return terms_one(nvars);
    };
    if deg_in(a, v) == 0 {
        return gcd_terms(a, &content_in(b, v, nvars), nvars);
    }
    if deg_in(b, v) == 0 {
        return gcd_terms(&content_in(a, v, nvars), b, nvars);
    }
    let ca = content_in(a, v, nvars);
    let cb = content_in(b, v, nvars);
    let gc = gcd_terms(&ca, &cb, nvars);
    let mut r0 = terms_exact(a, &ca);
    let mut r1 = terms_exact(b, &cb);
    if deg_in(&r0, v) < deg_in(&r1, v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let r = pseudo_rem(&r0, &r1, v);
        if r.is_empty() {
            break;
        }
        if deg_in(&r, v) == 0 {
            r1 = terms_one(nvars);
            break;
        }
        let cr = content_in(&r, v, nvars);
        r0 = r1;
        r1 = terms_exact(&r, &cr);
    }
    let cr1 = content_in(&r1, v, nvars);
    terms_monic(&terms_mul(&gc, &terms_exact(&r1, &cr1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gq;

    fn xyz() -> (HomPoly, HomPoly, HomPoly) {
        (HomPoly::var(3, 0), HomPoly::var(3, 1), HomPoly::var(3, 2))
    }

    #[test]
    fn substitution_expands() {
        let (x, y, z) = xyz();
        let xy = &x * &y;
        let s = xy.substitute(&[&x + &z, &y + &z, z.clone()]).unwrap();
        let expect = &(&(&xy + &(&x * &z)) + &(&y * &z)) + &(&z * &z);
        assert_eq!(s, expect);
        assert_eq!(s.degree(), 2);
    }

    #[test]
    fn exact_division_and_remainder() {
        let (x, _, z) = xyz();
        let num = &(&x * &x) - &(&z * &z);
        assert_eq!(num.exact_div(&(&x - &z)).unwrap(), &x + &z);
        match num.exact_div(&(&x - &(&z + &z))) {
            Err(Error::InexactDivision(r)) => assert!(!r.is_zero()),
            other => panic!("expected inexact division, got {other:?}"),
        }
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let (x, y, _) = xyz();
        assert!(matches!(x.checked_add(&(&x * &y)), Err(Error::DegreeMismatch(_))));
        assert_eq!(x.checked_add(&HomPoly::zero(3, 5)).unwrap(), x);
    }

    #[test]
    fn gcd_of_products() {
        let (x, y, z) = xyz();
        let a = &(&x + &y) * &(&x - &z);
        let b = &(&x + &y) * &(&y + &(&z * &HomPoly::constant(3, gq(3, 1))).scale(&gq(1, 1)));
        assert_eq!(a.gcd(&b), (&x + &y).normalized());
        let g = (&(&x * &y) * &z).gcd(&(&(&x * &x) * &z));
        assert_eq!(g, &x * &z);
        assert_eq!(x.gcd(&y), HomPoly::one(3));
    }

    #[test]
    fn proportional_tuples() {
        let (x, y, z) = xyz();
        let two = gq(2, 1);
        assert!(proportional(&[x.clone(), y.clone()], &[x.scale(&two), y.scale(&two)]));
        assert!(!proportional(&[x.clone(), y.clone()], &[y.clone(), x.clone()]));
        let u = [
            (&(&x * &z).scale(&gq(-4, 1))) + &(&y * &z).scale(&gq(8, 1)),
            (&y * &z).scale(&gq(-4, 1)),
            (&z * &z).scale(&gq(4, 1)),
        ];
        let v = [&(&x * &z) - &(&y * &z).scale(&two), &y * &z, -(&z * &z)];
        assert!(proportional(&u, &v));
    }

    #[test]
    fn reduce_removes_common_factor() {
        let (x, y, z) = xyz();
        let t = [&x * &z, &y * &z, (&z * &z).scale(&gq(-1, 1))];
        let r = reduce_tuple(&t);
        assert_eq!(r, vec![x.clone(), y.clone(), -z.clone()]);
    }

    #[test]
    fn display_is_graded_lex() {
        let (x, y, z) = xyz();
        let p = &(&(&x * &x).scale(&gq(3, 2)) - &(&y * &z)) + &(&z * &z).scale(&"1+i".parse().unwrap());
        assert_eq!(p.to_string(), "3/2*x^2 - y*z + (1+i)*z^2");
    }
}
