//! Characteristic polynomials by the Faddeev–LeVerrier recurrence.

use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::poly::IntPolynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Coefficients (lowest degree first) of `det(x·I − A)` for a square matrix
/// over any commutative ring in which the recurrence's divisions by
/// `1, …, n` are exact. They always are for the characteristic polynomial,
/// so a failed division signals corrupted input.
pub fn char_poly_generic<T: Ring>(a: &[Vec<T>]) -> Result<Vec<T>> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension(
            "characteristic polynomial of a non-square matrix".into(),
        ));
    }
    let mut coeffs = vec![T::ring_zero(); n + 1];
    coeffs[n] = T::ring_one();
    // m holds M_k; starts at M_0 = 0
    let mut m: Vec<Vec<T>> = vec![vec![T::ring_zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i].ring_add(&coeffs[n - k + 1]);
        }
        m = next;
        let am = mat_mul(a, &m);
        let trace = (0..n).fold(T::ring_zero(), |acc, i| acc.ring_add(&am[i][i]));
        let kk = BigInt::from(k);
        coeffs[n - k] = trace.ring_neg().div_exact_int(&kk).ok_or_else(|| {
            Error::Consistency(format!("inexact division by {k} in Faddeev–LeVerrier"))
        })?;
    }
    Ok(coeffs)
}

fn mat_mul<T: Ring>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    let mut out = vec![vec![T::ring_zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].ring_is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].ring_is_zero() {
                    out[i][j] = out[i][j].ring_add(&a[i][k].ring_mul(&b[k][j]));
                }
            }
        }
    }
    out
}

/// Exact characteristic polynomial `det(x·I − m)`, monic of degree `rows`.
pub fn char_poly_exact(m: &IntMatrix) -> Result<IntPolynomial> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(IntPolynomial::new(char_poly_generic(&m.to_rows())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix() {
        let p = char_poly_exact(&IntMatrix::zeros(2, 2)).unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn diagonal() {
        let p = char_poly_exact(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])).unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[6, -5, 1]));
    }

    #[test]
    fn companion_of_lehmer_like() {
        // companion matrix of x^3 - 2x + 5
        let c = IntMatrix::from_rows(&[vec![0, 0, -5], vec![1, 0, 2], vec![0, 1, 0]]);
        assert_eq!(
            char_poly_exact(&c).unwrap(),
            IntPolynomial::from_i64(&[5, -2, 0, 1])
        );
    }

    #[test]
    fn non_square() {
        assert!(matches!(
            char_poly_exact(&IntMatrix::zeros(2, 3)),
            Err(Error::Dimension(_))
        ));
    }
}
