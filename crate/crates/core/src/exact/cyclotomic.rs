use std::collections::BTreeMap;

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

pub fn divisors(k: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= k {
        if k.is_multiple_of(d) {
            small.push(d);
            if d != k / d {
                large.push(k / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient, by trial factorisation.
pub fn totient(mut k: u64) -> u64 {
    let mut result = k;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            while k.is_multiple_of(p) {
                k /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if k > 1 {
        result -= result / k;
    }
    result
}

/// The k-th cyclotomic polynomial Φ_k, from `x^k − 1 = ∏_{d|k} Φ_d`.
pub fn cyclotomic_poly(k: u64) -> Result<IntPolynomial> {
    if k == 0 {
        return Err(Error::InvalidInput(
            "cyclotomic index must be positive".into(),
        ));
    }
    let mut cache = BTreeMap::new();
    Ok(cyclotomic_cached(k, &mut cache))
}

pub(crate) fn cyclotomic_cached(k: u64, cache: &mut BTreeMap<u64, IntPolynomial>) -> IntPolynomial {
    if let Some(p) = cache.get(&k) {
        return p.clone();
    }
    let mut acc = IntPolynomial::x_pow_minus_one(k as usize);
    for d in divisors(k) {
        if d == k {
            continue;
        }
        let phi_d = cyclotomic_cached(d, cache);
        acc = acc
            .div_exact(&phi_d)
            .expect("Φ_d divides x^k − 1 for d | k");
    }
    cache.insert(k, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(
            cyclotomic_poly(1).unwrap(),
            IntPolynomial::from_i64(&[-1, 1])
        );
        assert_eq!(
            cyclotomic_poly(2).unwrap(),
            IntPolynomial::from_i64(&[1, 1])
        );
        assert_eq!(
            cyclotomic_poly(8).unwrap(),
            IntPolynomial::from_i64(&[1, 0, 0, 0, 1])
        );
        assert_eq!(
            cyclotomic_poly(12).unwrap(),
            IntPolynomial::from_i64(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn zero_index() {
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn degree_is_totient() {
        for k in 1..=60 {
            assert_eq!(
                cyclotomic_poly(k).unwrap().degree(),
                Some(totient(k) as usize),
                "k={k}"
            );
        }
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }
}
