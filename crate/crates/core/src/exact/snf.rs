//! Smith normal form over ℤ with unimodular transforms.
//!
//! `left · A · right = diag(d_1, …, d_r, 0, …)` with `d_i | d_{i+1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct SnfResult {
    /// Diagonal entries, length `min(rows, cols)`, nonnegative.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix `left · A · right` should equal.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    left: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.right.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_i += f · row_j
    fn add_row(&mut self, i: usize, j: usize, f: &BigInt) {
        for k in 0..self.a[0].len() {
            let d = &self.a[j][k] * f;
            self.a[i][k] += d;
        }
        for k in 0..self.left[0].len() {
            let d = &self.left[j][k] * f;
            self.left[i][k] += d;
        }
    }

    /// col_i += f · col_j
    fn add_col(&mut self, i: usize, j: usize, f: &BigInt) {
        for row in self.a.iter_mut() {
            let d = &row[j] * f;
            row[i] += d;
        }
        for row in self.right.iter_mut() {
            let d = &row[j] * f;
            row[i] += d;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in self.a[i].iter_mut() {
            *v = -&*v;
        }
        for v in self.left[i].iter_mut() {
            *v = -&*v;
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SnfResult> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.to_rows(),
        left: IntMatrix::identity(rows).to_rows(),
        right: IntMatrix::identity(cols).to_rows(),
    };
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = &w.a[i][j];
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&w.a[t][t])));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    let diagonal = (0..rows.min(cols)).map(|i| w.a[i][i].clone()).collect();
    Ok(SnfResult {
        diagonal,
        left: IntMatrix::from_rows(&w.left),
        right: IntMatrix::from_rows(&w.right),
    })
}

/// A ℤ-basis (as rows) of the subgroup of ℤ^k spanned by `vectors`.
pub fn span_basis(vectors: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let a = IntMatrix::from_rows(vectors);
    let snf = smith_normal_form(&a)?;
    // rowspace(A) = rowspace(D · right⁻¹)
    let right_inv = super::matrix::inverse_rational(&snf.right)?
        .to_integral()
        .expect("unimodular transform has an integral inverse");
    Ok((0..snf.rank())
        .map(|i| {
            right_inv
                .row(i)
                .iter()
                .map(|v| v * &snf.diagonal[i])
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::det_exact;

    fn check(m: &IntMatrix, expected: &[i64]) {
        let snf = smith_normal_form(m).unwrap();
        let want: Vec<BigInt> = expected.iter().map(|&v| v.into()).collect();
        assert_eq!(snf.diagonal, want);
        let prod = &(&snf.left * m) * &snf.right;
        assert_eq!(prod, snf.diagonal_matrix());
        assert_eq!(det_exact(&snf.left).unwrap().abs(), BigInt::one());
        assert_eq!(det_exact(&snf.right).unwrap().abs(), BigInt::one());
    }

    #[test]
    fn identity() {
        check(&IntMatrix::identity(3), &[1, 1, 1]);
    }

    #[test]
    fn a3_gram() {
        let a3 = IntMatrix::from_rows(&[vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]]);
        check(&a3, &[1, 1, 4]);
    }

    #[test]
    fn d4_gram() {
        let d4 = IntMatrix::from_rows(&[
            vec![-2, 1, 1, 1],
            vec![1, -2, 0, 0],
            vec![1, 0, -2, 0],
            vec![1, 0, 0, -2],
        ]);
        check(&d4, &[1, 1, 2, 2]);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) ~ diag(1, 6)
        check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]), &[1, 6]);
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check(&m, &[2, 6, 12]);
        let z = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        check(&z, &[1, 0]);
    }

    #[test]
    fn span_of_redundant_vectors() {
        let v = |a: &[i64]| a.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let basis = span_basis(&[v(&[2, 0]), v(&[0, 2]), v(&[1, 1])]).unwrap();
        assert_eq!(basis.len(), 2);
        let g = IntMatrix::from_rows(&basis);
        assert_eq!(det_exact(&g).unwrap().abs(), BigInt::from(2));
    }
}
