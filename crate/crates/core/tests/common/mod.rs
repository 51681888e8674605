#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use k3_salem::exact::IntMatrix;

/// Laplace expansion along the first row. Exponential, so only for small
/// matrices.
pub fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => BigInt::from(m[0][0]),
        n => {
            let mut total = BigInt::zero();
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let term = BigInt::from(m[0][j]) * cofactor_det(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

pub fn to_matrix(m: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(m)
}

/// `t·I − M` for integer `t`.
pub fn shifted(m: &[Vec<i64>], t: i64) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &v)| if i == j { t - v } else { -v })
                .collect()
        })
        .collect()
}

/// Square matrices of size `1..=max` with entries in `[-9, 9]`.
pub fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
}

/// Matrices of size `size` and rank at most `rank`, as products of random
/// `size × rank` and `rank × size` factors.
pub fn low_rank_matrix(size: usize, rank: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (
        prop::collection::vec(prop::collection::vec(-3i64..=3, rank), size),
        prop::collection::vec(prop::collection::vec(-3i64..=3, size), rank),
    )
        .prop_map(move |(a, b)| {
            (0..size)
                .map(|i| {
                    (0..size)
                        .map(|j| (0..rank).map(|k| a[i][k] * b[k][j]).sum())
                        .collect()
                })
                .collect()
        })
}
