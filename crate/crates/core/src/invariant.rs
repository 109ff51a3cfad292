//! Invariant factors of `xI − M` via a Smith normal form over Q(i)[x].
//!
//! Pivots are chosen by minimal degree; each elimination step is a Euclidean
//! division, so entries stay of degree at most `dim`.

use crate::field::GaussianRational as G;
use crate::matrix::Matrix;
use crate::unipoly::UniPoly;

/// Diagonal of the Smith form of `xI − M`, monic, including unit entries.
pub fn smith_diagonal(m: &Matrix) -> Vec<UniPoly> {
    let n = m.dim();
    let mut a: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -&m[(i, j)];
                    if i == j {
                        UniPoly::new(vec![c, G::from(1)])
                    } else {
                        UniPoly::constant(c)
                    }
                })
                .collect()
        })
        .collect();

    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].degree());
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, r) = a[i][k].divrem(&a[k][k]);
                for j in k..n {
                    let t = q.mul(&a[k][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].divrem(&a[k][k]);
                for row in a.iter_mut().skip(k) {
                    let t = q.mul(&row[k]);
                    row[j] = row[j].sub(&t);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (k + 1..n).find(|&i| (k + 1..n).any(|j| !a[i][j].divrem(&a[k][k]).1.is_zero()));
            match bad {
                Some(i) => {
                    for j in k..n {
                        let t = a[i][j].clone();
                        a[k][j] = a[k][j].add(&t);
                    }
                }
                None => break,
            }
        }
    }
    (0..n).map(|i| a[i][i].monic()).collect()
}

/// Nonconstant invariant factors `d₁ | d₂ | … | d_k` of `xI − M`.
pub fn invariant_factors(m: &Matrix) -> Vec<UniPoly> {
    smith_diagonal(m).into_iter().filter(|d| !d.is_constant()).collect()
}

/// Product of a list of polynomials.
pub fn product(ps: &[UniPoly]) -> UniPoly {
    ps.iter().fold(UniPoly::one(), |acc, p| acc.mul(p))
}

pub fn similar(a: &Matrix, b: &Matrix) -> bool {
    a.dim() == b.dim() && invariant_factors(a) == invariant_factors(b)
}

/// Whether the minimal polynomial (last invariant factor) is squarefree.
pub fn diagonalizable(m: &Matrix) -> bool {
    invariant_factors(m).last().map_or(true, UniPoly::is_squarefree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gq;

    fn jordan(blocks: &[(i64, usize)]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.1).sum();
        let mut m = Matrix::zeros(n, n);
        let mut o = 0;
        for &(l, s) in blocks {
            for i in 0..s {
                m[(o + i, o + i)] = gq(l, 1);
                if i + 1 < s {
                    m[(o + i, o + i + 1)] = gq(1, 1);
                }
            }
            o += s;
        }
        m
    }

    #[test]
    fn single_block() {
        let f = invariant_factors(&jordan(&[(-1, 4)]));
        assert_eq!(f, vec![UniPoly::linear(&gq(-1, 1)).pow(4)]);
    }

    #[test]
    fn two_equal_blocks() {
        let f = invariant_factors(&jordan(&[(-1, 2), (-1, 2)]));
        let sq = UniPoly::linear(&gq(-1, 1)).pow(2);
        assert_eq!(f, vec![sq.clone(), sq]);
    }

    #[test]
    fn distinct_eigenvalues_give_one_factor() {
        let m = Matrix::diagonal(&[gq(2, 1), gq(1, 2), gq(3, 1), gq(1, 3)]);
        let f = invariant_factors(&m);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0], m.char_poly());
        assert!(diagonalizable(&m));
        assert!(!diagonalizable(&jordan(&[(1, 2), (3, 2)])));
    }
}
