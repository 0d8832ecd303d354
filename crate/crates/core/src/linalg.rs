//! Dense exact linear algebra on small coefficient matrices.
//!
//! Used for the finite-dimensional quotient algebras; the sparse elimination
//! over monomials lives with the reduction operators.

use crate::scalar::Scalar;

/// Row-major dense matrix.
pub type Matrix<F> = Vec<Vec<F>>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref<F: Scalar>(rows: &[Vec<F>], ncols: usize) -> (Matrix<F>, Vec<usize>) {
    let mut m: Matrix<F> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::one() / m[r][col].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..ncols {
                    let sub = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{x : rows · x = 0}`.
pub fn null_space<F: Scalar>(rows: &[Vec<F>], ncols: usize) -> Matrix<F> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![F::zero(); ncols];
            x[fc] = F::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                x[pc] = -row[fc].clone();
            }
            x
        })
        .collect()
}

pub fn rank<F: Scalar>(rows: &[Vec<F>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `v · M` for a row vector `v`.
pub fn row_times<F: Scalar>(v: &[F], m: &Matrix<F>) -> Vec<F> {
    let ncols = m.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|j| v.iter().zip(m).fold(F::zero(), |acc, (x, row)| acc + x.clone() * row[j].clone()))
        .collect()
}
