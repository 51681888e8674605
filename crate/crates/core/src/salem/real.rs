//! Certified real intervals with rational endpoints: square roots and
//! natural logarithms bounded from both sides.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` known to contain a real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Digits after the decimal point used when printing intervals.
pub const DISPLAY_DIGITS: usize = 15;

impl CertifiedInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput("interval with lo > hi".into()));
        }
        Ok(CertifiedInterval { lo, hi })
    }

    pub fn point(q: BigRational) -> Self {
        CertifiedInterval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// True when this interval lies inside `[lo, hi]`.
    pub fn within(&self, lo: &BigRational, hi: &BigRational) -> bool {
        lo <= &self.lo && &self.hi <= hi
    }

    /// Decimal endpoints, rounded outward.
    pub fn to_decimal_strings(&self, digits: usize) -> [String; 2] {
        [
            decimal_string(&self.lo, digits, false),
            decimal_string(&self.hi, digits, true),
        ]
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        decimal_string(&mid, 17, false).parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for CertifiedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [lo, hi] = self.to_decimal_strings(DISPLAY_DIGITS);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Serialize for CertifiedInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings(DISPLAY_DIGITS).serialize(s)
    }
}

/// `q` written with `digits` decimals, rounded toward `+∞` when `up`,
/// toward `−∞` otherwise.
pub fn decimal_string(q: &BigRational, digits: usize, up: bool) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = q * BigRational::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = n.is_negative();
    let (int, frac) = n.abs().div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{frac:0>digits$}")
}

fn dyadic(n: BigInt, bits: u32) -> BigRational {
    BigRational::new(n, BigInt::one() << bits)
}

/// Rounds `q` down (or up) to a multiple of `2^-bits`.
pub fn round_dyadic(q: &BigRational, bits: u32, up: bool) -> BigRational {
    let scaled = q * BigRational::from_integer(BigInt::one() << bits);
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    dyadic(n, bits)
}

/// Lower and upper bounds on `√q` for `q ≥ 0`, within `2^-bits`.
pub fn sqrt_bounds(q: &BigRational, bits: u32) -> Result<(BigRational, BigRational)> {
    if q.is_negative() {
        return Err(Error::InvalidInput(
            "square root of a negative number".into(),
        ));
    }
    let four_k = BigRational::from_integer(BigInt::one() << (2 * bits));
    let scaled = q * four_k;
    let lo = scaled.floor().to_integer().sqrt();
    let hi_base = scaled.ceil().to_integer();
    let mut hi = hi_base.sqrt();
    if &hi * &hi != hi_base {
        hi += 1;
    }
    Ok((dyadic(lo, bits), dyadic(hi, bits)))
}

const ATANH_TERMS: u32 = 40;
const FIXED_BITS: u32 = 192;

fn div_round(a: &BigInt, b: &BigInt, up: bool) -> BigInt {
    if up {
        (a + b - 1u32) / b
    } else {
        a / b
    }
}

/// `atanh z` for `0 ≤ z ≤ 1/3` in fixed point with `FIXED_BITS` fractional
/// bits, every operation rounded down (or up, with the series tail added).
fn atanh_bound(z: &BigRational, up: bool) -> BigRational {
    let unit = BigInt::one() << FIXED_BITS;
    let zf = (z * BigRational::from_integer(unit.clone())).to_integer();
    let zf = if up { zf + 1u32 } else { zf };
    let z2 = div_round(&(&zf * &zf), &unit, up);
    let mut power = zf;
    let mut sum = BigInt::zero();
    for j in 0..ATANH_TERMS {
        sum += div_round(&power, &BigInt::from(2 * j + 1), up);
        power = div_round(&(&power * &z2), &unit, up);
    }
    if up {
        // tail ≤ z^(2N+1) / ((2N+1)(1 − z²)) and 1/(1 − z²) ≤ 9/8
        sum += div_round(
            &(&power * 9u32),
            &BigInt::from(8 * (2 * ATANH_TERMS + 1)),
            true,
        );
    }
    BigRational::new(sum, unit)
}

fn atanh_bounds(z: &BigRational) -> (BigRational, BigRational) {
    (atanh_bound(z, false), atanh_bound(z, true))
}

fn ln2_bounds() -> (BigRational, BigRational) {
    let two = BigRational::from_integer(2.into());
    let (lo, hi) = atanh_bounds(&BigRational::new(1.into(), 3.into()));
    (&two * lo, &two * hi)
}

/// Bounds on `ln x` for `x ≥ 1`.
fn ln_bounds(x: &BigRational) -> Result<(BigRational, BigRational)> {
    if *x < BigRational::one() {
        return Err(Error::InvalidInput("logarithm bound requires x ≥ 1".into()));
    }
    let two = BigRational::from_integer(2.into());
    let mut m = x.clone();
    let mut k: u64 = 0;
    while m >= two {
        m /= &two;
        k += 1;
    }
    let z = (&m - BigRational::one()) / (&m + BigRational::one());
    let (s_lo, s_hi) = atanh_bounds(&z);
    let (l2_lo, l2_hi) = ln2_bounds();
    let k = BigRational::from_integer(k.into());
    Ok((&k * l2_lo + &two * s_lo, &k * l2_hi + &two * s_hi))
}

const WORKING_BITS: u32 = 96;

/// Certified enclosure of `ln x` for every `x` in `iv`, where `iv ⊂ [1, ∞)`.
pub fn ln_interval(iv: &CertifiedInterval) -> Result<CertifiedInterval> {
    let lo = round_dyadic(&iv.lo, WORKING_BITS, false).max(BigRational::one());
    let hi = round_dyadic(&iv.hi, WORKING_BITS, true);
    let (lo, _) = ln_bounds(&lo)?;
    let (_, hi) = ln_bounds(&hi)?;
    CertifiedInterval::new(lo, hi)
}

/// The larger root `a = (λ + √(λ² − 4))/2` of `x² − λx + 1`, for every
/// `λ` in `lambda ⊂ [2, ∞)`. The map is increasing, so endpoints map to
/// endpoints.
pub fn larger_reciprocal_root(lambda: &CertifiedInterval) -> Result<CertifiedInterval> {
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    if lambda.lo < two {
        return Err(Error::InvalidInput("trace bound below 2".into()));
    }
    let (s_lo, _) = sqrt_bounds(&(&lambda.lo * &lambda.lo - &four), WORKING_BITS)?;
    let (_, s_hi) = sqrt_bounds(&(&lambda.hi * &lambda.hi - &four), WORKING_BITS)?;
    CertifiedInterval::new((&lambda.lo + s_lo) / &two, (&lambda.hi + s_hi) / &two)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn decimals_round_outward() {
        let third = rat(1, 3);
        assert_eq!(decimal_string(&third, 4, false), "0.3333");
        assert_eq!(decimal_string(&third, 4, true), "0.3334");
        assert_eq!(decimal_string(&-third.clone(), 4, false), "-0.3334");
        assert_eq!(decimal_string(&rat(5, 1), 2, true), "5.00");
        assert_eq!(decimal_string(&rat(-1, 200), 1, true), "0.0");
    }

    #[test]
    fn sqrt_two_bracket() {
        let (lo, hi) = sqrt_bounds(&rat(2, 1), 40).unwrap();
        assert!(&lo * &lo <= rat(2, 1) && rat(2, 1) <= &hi * &hi);
        assert!(&hi - &lo <= rat(1, 1 << 39));
        let (lo, hi) = sqrt_bounds(&rat(9, 4), 10).unwrap();
        assert_eq!((lo, hi), (rat(3, 2), rat(3, 2)));
    }

    #[test]
    fn logarithms() {
        let ln2 = ln_interval(&CertifiedInterval::point(rat(2, 1))).unwrap();
        assert!(ln2.within(
            &rat(693_147_180_559, 1_000_000_000_000),
            &rat(693_147_180_560, 1_000_000_000_000)
        ));
        let ln10 = ln_interval(&CertifiedInterval::point(rat(10, 1))).unwrap();
        assert!(ln10.within(
            &rat(2_302_585_092_994, 1_000_000_000_000),
            &rat(2_302_585_092_995, 1_000_000_000_000)
        ));
        let zero = ln_interval(&CertifiedInterval::point(rat(1, 1))).unwrap();
        assert!(zero.lo.is_zero());
        assert!(ln_interval(&CertifiedInterval::point(rat(1, 2))).is_err());
    }

    #[test]
    fn golden_ratio_squared() {
        let a = larger_reciprocal_root(&CertifiedInterval::point(rat(3, 1))).unwrap();
        assert!(a.within(
            &rat(26_180_339_887, 10_000_000_000),
            &rat(26_180_339_888, 10_000_000_000)
        ));
    }
}
