//! Seeded generators for small exact test data.

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::field::GaussianRational as G;
use crate::matrix::Matrix;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn small_rational<R: Rng>(rng: &mut R) -> G {
    G::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> G {
    loop {
        let g = small_rational(rng);
        if !g.is_zero() {
            return g;
        }
    }
}

/// A Gaussian rational whose imaginary part is zero about half the time.
pub fn small_gaussian<R: Rng>(rng: &mut R) -> G {
    let re = small_rational(rng);
    if rng.gen_bool(0.5) {
        re
    } else {
        &re + &(&small_rational(rng) * &G::i())
    }
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<G> {
    (0..n).map(|_| small_rational(rng)).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = small_rational(rng);
        }
    }
    m
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n);
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn random_antisymmetric<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = small_rational(rng);
            m[(j, i)] = -&v;
            m[(i, j)] = v;
        }
    }
    m
}
