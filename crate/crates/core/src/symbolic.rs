//! The composite automorphism with `n` (where `p = 4n + 3`) as a formal
//! parameter: matrix entries as polynomials in `n`, and the identity
//! `μ(f*) = x¹¹·g(x + 1/x)` with the expected `g` checked in `ℤ[n][x]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{char_poly_exact, IntMatrix, IntPolynomial, RatPolynomial};
use crate::fibration::standard_fibrations;
use crate::ns::formal_ns_model;
use crate::salem::{compose_word, expand_reciprocal, Word};

/// Coefficients `c_0 … c_11` of `g` as polynomials in `n`, each listed as
/// `[1, n, n², n³]` weights.
pub const EXPECTED_G: [[i64; 4]; 12] = [
    [67, 88, 8, 0],
    [-574, -976, -392, -88],
    [-1464, -2854, -1474, -232],
    [2359, 4605, 2526, 534],
    [3062, 6196, 3415, 578],
    [-2245, -4587, -2749, -568],
    [-2253, -4681, -2689, -466],
    [770, 1600, 1014, 206],
    [670, 1426, 849, 148],
    [-91, -182, -120, -24],
    [-69, -150, -92, -16],
    [1, 0, 0, 0],
];

/// The coefficients of `g` as polynomials in `n`.
pub fn expected_g_in_n() -> Vec<RatPolynomial> {
    EXPECTED_G
        .iter()
        .map(|c| {
            RatPolynomial::new(
                c.iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect(),
            )
        })
        .collect()
}

/// `g` at a given `n`.
pub fn expected_g(n: u64) -> IntPolynomial {
    let n = BigInt::from(n);
    IntPolynomial::new(
        EXPECTED_G
            .iter()
            .map(|c| {
                c.iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, &v| acc * &n + BigInt::from(v))
            })
            .collect(),
    )
}

/// `x¹¹·g(x + 1/x)` at a given `n`.
pub fn expected_mu(n: u64) -> IntPolynomial {
    expand_reciprocal(&expected_g(n))
}

/// The unique polynomial of degree `< values.len()` through `(k, values[k])`,
/// by Newton forward differences.
pub fn interpolate_at_naturals(values: &[BigInt]) -> RatPolynomial {
    let mut diffs: Vec<BigInt> = values.to_vec();
    let mut newton = Vec::with_capacity(values.len());
    while !diffs.is_empty() {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // Σ Δ^k f(0) · C(n, k)
    let mut result = RatPolynomial::zero();
    let mut binom = RatPolynomial::constant(BigRational::from_integer(1.into()));
    for (k, d) in newton.iter().enumerate() {
        result = &result + &binom.scale(&BigRational::from_integer(d.clone()));
        let factor = RatPolynomial::new(vec![
            BigRational::new((-(k as i64)).into(), ((k + 1) as i64).into()),
            BigRational::new(1.into(), ((k + 1) as i64).into()),
        ]);
        binom = &binom * &factor;
    }
    result
}

/// A square matrix with entries in `ℚ[n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub entries: Vec<Vec<RatPolynomial>>,
}

impl PolyMatrix {
    /// Entrywise interpolation through `samples[k]` at `n = k`.
    pub fn interpolate(samples: &[IntMatrix]) -> Result<Self> {
        let first = samples
            .first()
            .ok_or_else(|| Error::InvalidInput("no samples to interpolate".into()))?;
        let (r, c) = (first.rows(), first.cols());
        if samples.iter().any(|m| m.rows() != r || m.cols() != c) {
            return Err(Error::Dimension("samples differ in shape".into()));
        }
        let entries = (0..r)
            .map(|i| {
                (0..c)
                    .map(|j| {
                        let vals: Vec<BigInt> =
                            samples.iter().map(|m| m.get(i, j).clone()).collect();
                        interpolate_at_naturals(&vals)
                    })
                    .collect()
            })
            .collect();
        Ok(PolyMatrix { entries })
    }

    pub fn max_degree(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .filter_map(RatPolynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// The integer matrix at `n`; errors if some entry is not integral there.
    pub fn eval(&self, n: u64) -> Result<IntMatrix> {
        let q = BigRational::from_integer(n.into());
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        let v = e.eval(&q);
                        v.is_integer().then(|| v.to_integer()).ok_or_else(|| {
                            Error::Consistency(format!("entry not integral at n = {n}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_rows(&rows))
    }

    pub fn transpose(&self) -> Self {
        let r = self.entries.len();
        let c = self.entries.first().map_or(0, Vec::len);
        PolyMatrix {
            entries: (0..c)
                .map(|j| (0..r).map(|i| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Self {
        let r = self.entries.len();
        let k = other.entries.len();
        let c = other.entries.first().map_or(0, Vec::len);
        let mut out = vec![vec![RatPolynomial::zero(); c]; r];
        for i in 0..r {
            for l in 0..k {
                let a = &self.entries[i][l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..c {
                    let b = &other.entries[l][j];
                    if !b.is_zero() {
                        out[i][j] = &out[i][j] + &(a * b);
                    }
                }
            }
        }
        PolyMatrix { entries: out }
    }
}

/// Outcome of the formal-`n` check.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SymbolicReport {
    pub word: Word,
    /// Values of `n` the matrices were interpolated from.
    pub interpolation_ns: Vec<u64>,
    /// Further values of `n` at which the interpolant was confirmed.
    pub confirmation_ns: Vec<u64>,
    pub entry_degree: usize,
    /// `Mᵀ·G·M = G` as an identity of matrices over `ℚ[n]`.
    pub isometry_identity: bool,
    /// Number of values `n = 0, 1, …` at which `μ` was compared with
    /// `x¹¹·g(x + 1/x)`. Both sides are reciprocal in `x`, so the
    /// coefficient of `x^(22−k)` has degree at most `min(k, 22−k)·d` in `n`
    /// for entry degree `d`; one more point than that makes the comparison
    /// an identity.
    pub mu_points: usize,
    pub mu_identity: bool,
}

impl SymbolicReport {
    pub fn passed(&self) -> bool {
        self.isometry_identity && self.mu_identity
    }
}

/// `f_*` for `word` on the formal model at `n`.
fn pushforward_at(word: &Word, n: u64) -> Result<IntMatrix> {
    let model = formal_ns_model(n)?;
    let fibs = standard_fibrations(&model)?;
    Ok(compose_word(word, &model, &fibs)?
        .inverse()?
        .matrix()
        .clone())
}

/// Interpolates `f_*` (same characteristic polynomial as `f*`, being
/// similar to its transpose inverse) from `interpolate` values of `n`,
/// confirms it at `confirm` further values, checks the isometry identity
/// over `ℚ[n]`, and compares `μ` with the expected polynomial at enough
/// points to make the comparison an identity in `n`.
pub fn symbolic_check(word: &Word, interpolate: usize, confirm: usize) -> Result<SymbolicReport> {
    let total = (interpolate + confirm) as u64;
    let samples = (0..total)
        .map(|n| pushforward_at(word, n))
        .collect::<Result<Vec<_>>>()?;
    let m = PolyMatrix::interpolate(&samples[..interpolate])?;
    for n in interpolate as u64..total {
        if m.eval(n)? != samples[n as usize] {
            return Err(Error::Consistency(format!(
                "entries of f_* are not polynomials of degree < {interpolate} in n (fails at n = {n})"
            )));
        }
    }
    let grams = (0..2)
        .map(|n| formal_ns_model(n).map(|x| x.gram().clone()))
        .collect::<Result<Vec<_>>>()?;
    let g = PolyMatrix::interpolate(&grams)?;
    for n in 2..4 {
        if g.eval(n)? != *formal_ns_model(n)?.gram() {
            return Err(Error::Consistency(
                "Gram entries are not linear in n".into(),
            ));
        }
    }
    let isometry_identity = m.transpose().mul(&g).mul(&m) == g;

    let degree = m.max_degree();
    let dim = m.entries.len();
    let mu_points = (dim / 2 * degree).max(EXPECTED_G[0].len() - 1) + 1;
    let mut mu_identity = true;
    for n in 0..mu_points as u64 {
        if char_poly_exact(&m.eval(n)?)? != expected_mu(n) {
            mu_identity = false;
            break;
        }
    }
    Ok(SymbolicReport {
        word: word.clone(),
        interpolation_ns: (0..interpolate as u64).collect(),
        confirmation_ns: (interpolate as u64..total).collect(),
        entry_degree: degree,
        isometry_identity,
        mu_points,
        mu_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn interpolation_recovers_cubic() {
        let f = |n: i64| 3 * n * n * n - 2 * n + 7;
        let vals: Vec<BigInt> = (0..6).map(|n| int(f(n))).collect();
        let p = interpolate_at_naturals(&vals);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(
            p.to_integral().unwrap(),
            IntPolynomial::from_i64(&[7, -2, 0, 3])
        );
    }

    #[test]
    fn expected_g_values() {
        assert_eq!(expected_g(0).coeff(0), int(67));
        assert_eq!(expected_g(1).coeff(0), int(163));
        assert_eq!(expected_g(0).degree(), Some(11));
        let mu = expected_mu(0);
        assert!(mu.is_reciprocal());
        assert_eq!(mu.coeff(21), int(-69));
    }
}
