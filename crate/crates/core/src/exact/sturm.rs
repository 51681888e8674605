//! Exact real-root counting with Sturm sequences over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPolynomial, RatPolynomial};
use crate::error::{Error, Result};

/// Sturm chain of the squarefree part of `p`. Each member is stored as a
/// primitive integer polynomial, a positive multiple of the rational one,
/// which leaves every sign unchanged.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPolynomial>,
}

fn primitive_positive_multiple(p: &RatPolynomial) -> IntPolynomial {
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return IntPolynomial::zero();
    }
    IntPolynomial::new(ints.into_iter().map(|c| c / &content).collect())
}

/// Sign of `p(t)`, from the integer `b^d·p(a/b)` with `b > 0`.
pub(crate) fn sign_at(p: &IntPolynomial, t: &BigRational) -> i8 {
    let (a, b) = (t.numer(), t.denom());
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    for c in p.coeffs().iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p = p.to_rational();
        let g = p.gcd(&p.derivative());
        let sqf = p.divrem(&g)?.0;
        let mut prev = primitive_positive_multiple(&sqf).to_rational();
        let mut cur = primitive_positive_multiple(&sqf.derivative()).to_rational();
        let mut chain = vec![primitive_positive_multiple(&prev)];
        while !cur.is_zero() {
            chain.push(primitive_positive_multiple(&cur));
            let r = prev.rem(&cur)?;
            prev = cur;
            cur = primitive_positive_multiple(&-&r).to_rational();
        }
        Ok(SturmSequence { chain })
    }

    /// Sign variations at `t`, zeros skipped.
    pub fn variations(&self, t: &BigRational) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|q| sign_at(q, t))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> Result<usize> {
        if a >= b {
            return Err(Error::InvalidInput(format!("empty interval ({a}, {b}]")));
        }
        Ok(self.variations(a) - self.variations(b))
    }

    pub fn squarefree_part(&self) -> &IntPolynomial {
        &self.chain[0]
    }
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> Result<usize> {
    SturmSequence::new(p)?.count(a, b)
}

/// `1 + max|c_i| / |lead|`: every complex root has modulus below this.
pub fn cauchy_bound(p: &IntPolynomial) -> Result<BigRational> {
    let lead = p.leading().ok_or(Error::ZeroPolynomial)?.abs();
    let deg = p.degree().unwrap_or(0);
    let max = p.coeffs()[..deg]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(BigInt::zero);
    Ok(BigRational::one() + BigRational::new(max, lead))
}

/// Shrinks `(lo, hi]`, assumed to contain exactly one root of `p`, until
/// its width is at most `width`. Returns the final bracket.
pub fn isolate_root(
    p: &IntPolynomial,
    mut lo: BigRational,
    mut hi: BigRational,
    width: &BigRational,
) -> Result<(BigRational, BigRational)> {
    let seq = SturmSequence::new(p)?;
    if seq.count(&lo, &hi)? != 1 {
        return Err(Error::InvalidInput(
            "bracket does not isolate exactly one root".into(),
        ));
    }
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        if seq.count(&lo, &mid)? == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sqrt_two() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &q(0), &q(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &q(-2), &q(2)).unwrap(), 2);
    }

    #[test]
    fn no_real_roots() {
        let p = IntPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(sturm_count(&p, &q(-10), &q(10)).unwrap(), 0);
    }

    #[test]
    fn half_open_endpoints() {
        // roots 1 and 2
        let p = IntPolynomial::from_i64(&[2, -3, 1]);
        assert_eq!(sturm_count(&p, &q(1), &q(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &q(0), &q(1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &q(0), &q(2)).unwrap(), 2);
    }

    #[test]
    fn repeated_roots_count_once() {
        // (x-1)^3 (x+2)
        let p = &IntPolynomial::from_i64(&[-1, 1]).pow(3) * &IntPolynomial::from_i64(&[2, 1]);
        assert_eq!(sturm_count(&p, &q(-5), &q(5)).unwrap(), 2);
    }

    #[test]
    fn empty_interval() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        assert!(sturm_count(&p, &q(1), &q(1)).is_err());
    }

    #[test]
    fn bisection_narrows_to_width() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        let w = BigRational::new(1.into(), 1_000_000.into());
        let (lo, hi) = isolate_root(&p, q(1), q(2), &w).unwrap();
        assert!(&hi - &lo <= w);
        assert!(&lo * &lo < q(2) && q(2) <= &hi * &hi);
    }
}
