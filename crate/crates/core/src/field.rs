//! Exact arithmetic in Q(i), plus the quadratic extension Q(i)(√d) used by the
//! rank-n quadric normalizer.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Gaussian rational `re + im·i` with arbitrary precision parts.
///
/// Both parts are kept reduced with positive denominators by `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        GaussianRational::new(ratio(n, d), BigRational::zero())
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational::new(ratio(re.0, re.1), ratio(im.0, im.1))
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = GaussianRational::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root in Q(i), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        let n = rational_sqrt(&self.norm())?;
        let two = ratio(2, 1);
        let p2 = (&n + &self.re) / &two;
        let q2 = (&n - &self.re) / &two;
        let p = rational_sqrt(&p2)?;
        let q = rational_sqrt(&q2)?;
        let q = if p.is_zero() {
            q
        } else {
            &self.im / (&two * &p)
        };
        let w = GaussianRational::new(p, q);
        (&w * &w == *self).then_some(w)
    }

    /// Exact cube root in Q(i), if one exists. Cube roots of unity other than 1
    /// are not in Q(i), so the answer is unique.
    pub fn cbrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        let l = num_integer::lcm(self.re.denom().clone(), self.im.denom().clone());
        let l3 = &l * &l * &l;
        let a = (&self.re * BigRational::from_integer(l3.clone())).to_integer();
        let b = (&self.im * BigRational::from_integer(l3)).to_integer();
        let (p, q) = gaussian_integer_cbrt(&a, &b)?;
        let lq = BigRational::from_integer(l);
        Some(GaussianRational::new(
            BigRational::from_integer(p) / &lq,
            BigRational::from_integer(q) / &lq,
        ))
    }

    /// Canonical short text form: `3/2`, `-i`, `1/2+3/4i`.
    pub fn to_text(&self) -> String {
        fn part(r: &BigRational) -> String {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => part(&self.re),
            (true, false) => imag_text(&self.im, part),
            (false, false) => {
                let im = imag_text(&self.im, part);
                if im.starts_with('-') {
                    format!("{}{}", part(&self.re), im)
                } else {
                    format!("{}+{}", part(&self.re), im)
                }
            }
        }
    }
}

fn imag_text(im: &BigRational, part: fn(&BigRational) -> String) -> String {
    if im.is_one() {
        "i".into()
    } else if (-im).is_one() {
        "-i".into()
    } else {
        format!("{}i", part(im))
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n: BigInt = Roots::sqrt(r.numer());
    let d: BigInt = Roots::sqrt(r.denom());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// Cube root of the Gaussian integer `a + bi` inside Z[i].
fn gaussian_integer_cbrt(a: &BigInt, b: &BigInt) -> Option<(BigInt, BigInt)> {
    let norm = a * a + b * b;
    let n0: BigInt = Roots::cbrt(&norm);
    if &n0 * &n0 * &n0 != norm {
        return None;
    }
    // p = Re(w) solves 4p³ − 3·n0·p − a = 0 with |p| ≤ √n0.
    let f = |p: &BigInt| -> BigInt { BigInt::from(4) * p * p * p - BigInt::from(3) * &n0 * p - a };
    // monotone pieces split at the critical points ±√n0/2
    let s: BigInt = Roots::sqrt(&n0);
    let r: BigInt = &s + 1;
    let c: BigInt = &s / 2;
    let segments = [(-r.clone(), -&c - 1), (-c.clone(), c.clone()), (&c + 1, r)];
    let mut candidates = Vec::new();
    for (lo, hi) in segments {
        if let Some(p) = integer_root(&f, lo, hi) {
            candidates.push(p);
        }
    }
    for p in candidates {
        let q2 = &n0 - &p * &p;
        if q2.is_negative() {
            continue;
        }
        let q: BigInt = Roots::sqrt(&q2);
        if &q * &q != q2 {
            continue;
        }
        for q in [q.clone(), -q] {
            let w = GaussianRational::new(
                BigRational::from_integer(p.clone()),
                BigRational::from_integer(q),
            );
            let z = GaussianRational::new(
                BigRational::from_integer(a.clone()),
                BigRational::from_integer(b.clone()),
            );
            if w.pow(3) == z {
                return Some((p.clone(), w.im.to_integer()));
            }
        }
    }
    None
}

/// Integer root of a function monotone on `[lo, hi]`, by bisection.
fn integer_root(f: &dyn Fn(&BigInt) -> BigInt, mut lo: BigInt, mut hi: BigInt) -> Option<BigInt> {
    let flo = f(&lo);
    let fhi = f(&hi);
    if flo.is_zero() {
        return Some(lo);
    }
    if fhi.is_zero() {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    let increasing = flo.is_negative();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        let fm = f(&mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.is_negative() == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_ratio(n, 1)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        GaussianRational::real(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &'a GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, o)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &'a GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| GaussianRational::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| GaussianRational::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
// Panics on a zero divisor; use `checked_div` when the divisor is untrusted.
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero in Q(i)"));

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `p/q`, `p/q+r/si`, `r/si`, `i`, `-i`, `2+i`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussianRational::real(parse_rational(&s)?));
        };
        // split off the real part at the last sign that is not leading
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
        };
        let re = if re.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re)?
        };
        Ok(GaussianRational::new(re, im))
    }
}

fn rational_text(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GaussianRational", 2)?;
        st.serialize_field("re", &rational_text(&self.re))?;
        st.serialize_field("im", &rational_text(&self.im))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Parts { re: PartRepr, #[serde(default)] im: Option<PartRepr> },
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PartRepr {
    Text(String),
    Int(i64),
}

impl PartRepr {
    fn value(self) -> Result<BigRational> {
        match self {
            PartRepr::Text(t) => parse_rational(&t),
            PartRepr::Int(n) => Ok(BigRational::from_integer(n.into())),
        }
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(d)?;
        let v = match repr {
            ScalarRepr::Parts { re, im } => {
                let re = re.value();
                let im = im.map(PartRepr::value).transpose();
                match (re, im) {
                    (Ok(re), Ok(im)) => Ok(GaussianRational::new(re, im.unwrap_or_default())),
                    (Err(e), _) | (_, Err(e)) => Err(e),
                }
            }
            ScalarRepr::Text(t) => t.parse(),
            ScalarRepr::Int(n) => Ok(GaussianRational::from(n)),
        };
        v.map_err(D::Error::custom)
    }
}

/// Shorthand constructor used throughout the crate and its tests.
pub fn gq(n: i64, d: i64) -> GaussianRational {
    GaussianRational::from_ratio(n, d)
}

/// Element `p + q·√d` of Q(i)(√d) for a fixed radicand `d`.
///
/// The radicand is carried along so that products can reduce `√d·√d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Surd {
    pub rational: GaussianRational,
    pub radical: GaussianRational,
    pub radicand: GaussianRational,
}

impl Surd {
    pub fn new(rational: GaussianRational, radical: GaussianRational, radicand: GaussianRational) -> Self {
        Surd { rational, radical, radicand }
    }

    pub fn from_rational(r: GaussianRational, radicand: &GaussianRational) -> Self {
        Surd::new(r, GaussianRational::zero(), radicand.clone())
    }

    /// `√d` itself.
    pub fn root(radicand: &GaussianRational) -> Self {
        Surd::new(GaussianRational::zero(), GaussianRational::one(), radicand.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn add(&self, o: &Surd) -> Surd {
        Surd::new(&self.rational + &o.rational, &self.radical + &o.radical, self.radicand.clone())
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        let d = &self.radicand;
        Surd::new(
            &self.rational * &o.rational + &(&self.radical * &o.radical) * d,
            &self.rational * &o.radical + &self.radical * &o.rational,
            d.clone(),
        )
    }

    pub fn scale(&self, c: &GaussianRational) -> Surd {
        Surd::new(&self.rational * c, &self.radical * c, self.radicand.clone())
    }

    /// Collapse to Q(i) when the radicand is a perfect square there.
    pub fn to_rational(&self) -> Option<GaussianRational> {
        if self.radical.is_zero() {
            return Some(self.rational.clone());
        }
        let r = self.radicand.sqrt()?;
        Some(&self.rational + &(&self.radical * &r))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.radical.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "({})*sqrt({})", self.radical, self.radicand),
            (false, false) => write!(f, "{} + ({})*sqrt({})", self.rational, self.radical, self.radicand),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_product_and_sum() {
        assert_eq!(p("1+i") * p("1-i"), gq(2, 1));
        assert_eq!(p("1/2+1/3i") + p("1/2-1/3i"), gq(1, 1));
    }

    #[test]
    fn inverse_of_two_i() {
        let q = gq(1, 1).checked_div(&p("2i")).unwrap();
        assert_eq!(q, p("-1/2i"));
        assert_eq!(&q * &p("2i"), gq(1, 1));
        assert!(matches!(gq(1, 1).checked_div(&gq(0, 1)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn parse_and_print_roundtrip() {
        for s in ["0", "3/2", "-i", "i", "1/2+3/4i", "-5-2/3i", "7i"] {
            assert_eq!(p(s).to_text(), s);
        }
        assert_eq!(p("4/8"), gq(1, 2));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("x".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn json_encoding() {
        let v = p("1/2-3i");
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"re":"1/2","im":"-3/1"}"#);
        let back: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let t: GaussianRational = serde_json::from_str(r#""2+i""#).unwrap();
        assert_eq!(t, p("2+i"));
        let n: GaussianRational = serde_json::from_str("-4").unwrap();
        assert_eq!(n, gq(-4, 1));
    }

    #[test]
    fn square_roots() {
        assert_eq!(p("2i").sqrt().map(|w| &w * &w), Some(p("2i")));
        assert_eq!(p("-4").sqrt().map(|w| &w * &w), Some(p("-4")));
        assert_eq!(p("9/4").sqrt().map(|w| &w * &w), Some(p("9/4")));
        assert!(p("2").sqrt().is_none());
        assert!(p("i").sqrt().is_none());
    }

    #[test]
    fn cube_roots() {
        for s in ["8", "-27/8", "1", "2+11i", "8i", "-1/8i"] {
            let z = p(s);
            let w = z.cbrt().unwrap();
            assert_eq!(w.pow(3), z, "{s}");
        }
        assert!(p("2").cbrt().is_none());
        assert!(p("1/2i").cbrt().is_none());
    }

    #[test]
    fn surd_arithmetic() {
        let d = gq(5, 1);
        let r = Surd::root(&d);
        assert_eq!(r.mul(&r), Surd::from_rational(gq(5, 1), &d));
        let sq = Surd::root(&gq(4, 1));
        assert_eq!(sq.to_rational(), Some(gq(2, 1)));
    }
}
