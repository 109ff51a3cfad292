//! Small arithmetic expression language for catalog entries and JSON input.
//!
//! Accepts integers, `+ - * /`, `**` or `^` with a nonnegative integer
//! exponent, parentheses, the imaginary unit `i`, named parameters bound in an
//! environment, and (for polynomial input) named variables.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::GaussianRational as G;
use crate::poly::HomPoly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
    Pow,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < cs.len() {
        let c = cs[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let st = k;
            while k < cs.len() && cs[k].is_ascii_digit() {
                k += 1;
            }
            out.push(Tok::Num(cs[st..k].iter().collect()));
            // "7i" means 7*i
            if k < cs.len() && (cs[k].is_alphabetic() || cs[k] == '(') {
                out.push(Tok::Op('*'));
            }
        } else if c.is_alphabetic() || c == '_' {
            let st = k;
            while k < cs.len() && (cs[k].is_alphanumeric() || cs[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(cs[st..k].iter().collect()));
        } else if c == '*' && cs.get(k + 1) == Some(&'*') {
            out.push(Tok::Pow);
            k += 2;
        } else if c == '^' {
            out.push(Tok::Pow);
            k += 1;
        } else if "+-*/".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else if c == '(' {
            out.push(Tok::Open);
            k += 1;
        } else if c == ')' {
            out.push(Tok::Close);
            k += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    env: &'a HashMap<String, G>,
    vars: &'a [&'a str],
    src: &'a str,
}

impl Parser<'_> {
    fn nv(&self) -> usize {
        self.vars.len()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in {:?}", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<HomPoly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.checked_add(&t)? } else { acc.checked_sub(&t)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<HomPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.unary()?;
            acc = if c == '*' {
                acc.mul_poly(&t)
            } else {
                if t.degree() != 0 || t.is_zero() {
                    return Err(if t.is_zero() { Error::DivisionByZero } else { self.err("division by a non-constant") });
                }
                acc.scale(&t.coeff(&vec![0; self.nv()]).inv()?)
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<HomPoly> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<HomPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Pow) {
            self.pos += 1;
            let e = self.unary()?;
            if e.degree() != 0 {
                return Err(self.err("non-constant exponent"));
            }
            let c = e.coeff(&vec![0; self.nv()]);
            let k = (c.is_real() && c.re.is_integer()).then(|| c.re.to_integer().to_u32()).flatten();
            let k = k.ok_or_else(|| self.err("exponent must be a nonnegative integer"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<HomPoly> {
        let n = self.nv();
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                Ok(HomPoly::constant(n, s.parse::<G>()?))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(v) = self.env.get(&name) {
                    Ok(HomPoly::constant(n, v.clone()))
                } else if let Some(k) = self.vars.iter().position(|&v| v == name) {
                    Ok(HomPoly::var(n, k))
                } else if name == "i" {
                    Ok(HomPoly::constant(n, G::i()))
                } else {
                    Err(self.err(&format!("unknown name {name:?}")))
                }
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("unexpected end or token")),
        }
    }
}

/// Parse a form in the named variables, with parameters taken from `env`.
pub fn parse_poly(src: &str, vars: &[&str], env: &HashMap<String, G>) -> Result<HomPoly> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0, env, vars, src };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Evaluate a constant expression.
pub fn eval_scalar(src: &str, env: &HashMap<String, G>) -> Result<G> {
    let p = parse_poly(src, &[], env)?;
    Ok(if p.is_zero() { G::zero() } else { p.coeff(&[]) })
}

/// Evaluate a matrix written as rows separated by `;`, entries by whitespace.
pub fn eval_matrix(src: &str, env: &HashMap<String, G>) -> Result<Vec<Vec<G>>> {
    src.split(';')
        .map(|row| row.split_whitespace().map(|e| eval_scalar(e, env)).collect::<Result<Vec<_>>>())
        .collect()
}

pub fn env_of(pairs: &[(&str, G)]) -> HashMap<String, G> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}
