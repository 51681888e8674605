//! Coefficient rings for Weierstrass models: `F_{p²} = F_p[i]` with
//! `i² = −1`, and `ℚ[z]/(z⁴ + 1)` for characteristic-zero checks.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ns::check_inert_prime;

/// Commutative ring operations, with constants built from an existing
/// element so that contexts such as the modulus travel with the values.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, k: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn characteristic(&self) -> u64;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// `a + b·i` in `F_{p²}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadExtElement {
    pub a: u64,
    pub b: u64,
    #[serde(skip)]
    p: u64,
}

/// Largest prime accepted, so that products of residues fit in `u128` and
/// `p² − 1` fits in `u64`.
pub const MAX_FIELD_PRIME: u64 = 1 << 31;

impl QuadExtElement {
    /// `a + b·i` with `a, b` reduced mod `p`. `p` must be a prime `≡ 3 mod 4`.
    pub fn new(a: i64, b: i64, p: u64) -> Result<Self> {
        check_inert_prime(p)?;
        if p >= MAX_FIELD_PRIME {
            return Err(Error::Unsupported(format!("p = {p} is too large for F_p²")));
        }
        Ok(Self::raw(a, b, p))
    }

    fn raw(a: i64, b: i64, p: u64) -> Self {
        let r = |v: i64| v.rem_euclid(p as i64) as u64;
        QuadExtElement {
            a: r(a),
            b: r(b),
            p,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn i(p: u64) -> Result<Self> {
        Self::new(0, 1, p)
    }

    fn mulmod(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.p as u128) as u64
    }

    fn norm(&self) -> u64 {
        (self.mulmod(self.a, self.a) + self.mulmod(self.b, self.b)) % self.p
    }

    /// Multiplicative inverse, `None` for zero. Uses `(a+bi)(a−bi) = a²+b²`,
    /// which vanishes only at zero because `−1` is not a square mod `p`.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n == 0 {
            return None;
        }
        let mut inv = 1u64;
        let mut base = n;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                inv = self.mulmod(inv, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        Some(QuadExtElement {
            a: self.mulmod(self.a, inv),
            b: self.mulmod((self.p - self.b) % self.p, inv),
            p: self.p,
        })
    }

    /// Every element of `F_{p²}`, ordered by `b` then `a`.
    pub fn all(p: u64) -> impl Iterator<Item = QuadExtElement> {
        (0..p).flat_map(move |b| (0..p).map(move |a| QuadExtElement { a, b, p }))
    }
}

impl fmt::Display for QuadExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "i"),
            (0, b) => write!(f, "{b}i"),
            (a, 1) => write!(f, "{a}+i"),
            (a, b) => write!(f, "{a}+{b}i"),
        }
    }
}

impl Coeff for QuadExtElement {
    fn zero_like(&self) -> Self {
        QuadExtElement {
            a: 0,
            b: 0,
            p: self.p,
        }
    }

    fn one_like(&self) -> Self {
        QuadExtElement {
            a: 1,
            b: 0,
            p: self.p,
        }
    }

    fn from_int_like(&self, k: i64) -> Self {
        Self::raw(k, 0, self.p)
    }

    fn add(&self, o: &Self) -> Self {
        QuadExtElement {
            a: (self.a + o.a) % self.p,
            b: (self.b + o.b) % self.p,
            p: self.p,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        let ac = self.mulmod(self.a, o.a);
        let bd = self.mulmod(self.b, o.b);
        let ad = self.mulmod(self.a, o.b);
        let bc = self.mulmod(self.b, o.a);
        QuadExtElement {
            a: (ac + p - bd) % p,
            b: (ad + bc) % p,
            p,
        }
    }

    fn neg(&self) -> Self {
        QuadExtElement {
            a: (self.p - self.a) % self.p,
            b: (self.p - self.b) % self.p,
            p: self.p,
        }
    }

    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn characteristic(&self) -> u64 {
        self.p
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// The first generator of `F_{p²}^×` in the order of [`QuadExtElement::all`].
pub fn multiplicative_generator(p: u64) -> Result<QuadExtElement> {
    let order = p * p - 1;
    let factors = prime_factors(order);
    QuadExtElement::all(p)
        .filter(|g| !g.is_zero())
        .find(|g| factors.iter().all(|q| g.pow(order / q) != g.one_like()))
        .ok_or_else(|| Error::Consistency(format!("no generator of F_{p}^2 found")))
}

/// A primitive eighth root of unity `ζ = g^((p²−1)/8)`, so `ζ⁴ = −1`.
pub fn find_eighth_root(p: u64) -> Result<QuadExtElement> {
    QuadExtElement::new(0, 0, p)?;
    let g = multiplicative_generator(p)?;
    let zeta = g.pow((p * p - 1) / 8);
    if !zeta.pow(4).add(&zeta.one_like()).is_zero() {
        return Err(Error::Consistency(format!("ζ = {zeta} fails ζ⁴ = −1")));
    }
    Ok(zeta)
}

/// `c₀ + c₁z + c₂z² + c₃z³` in `ℚ[z]/(z⁴ + 1)`; `z` is a formal primitive
/// eighth root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicRational {
    pub c: [BigRational; 4],
}

impl CyclotomicRational {
    pub fn from_int(k: i64) -> Self {
        let mut c: [BigRational; 4] = Default::default();
        c[0] = BigRational::from_integer(k.into());
        CyclotomicRational { c }
    }

    pub fn z() -> Self {
        let mut c: [BigRational; 4] = Default::default();
        c[1] = BigRational::one();
        CyclotomicRational { c }
    }
}

impl fmt::Display for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl Coeff for CyclotomicRational {
    fn zero_like(&self) -> Self {
        Self::from_int(0)
    }

    fn one_like(&self) -> Self {
        Self::from_int(1)
    }

    fn from_int_like(&self, k: i64) -> Self {
        Self::from_int(k)
    }

    fn add(&self, o: &Self) -> Self {
        CyclotomicRational {
            c: std::array::from_fn(|k| &self.c[k] + &o.c[k]),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        CyclotomicRational {
            c: std::array::from_fn(|k| &self.c[k] - &o.c[k]),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut c: [BigRational; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                let prod = &self.c[i] * &o.c[j];
                if i + j < 4 {
                    c[i + j] += prod;
                } else {
                    c[i + j - 4] -= prod;
                }
            }
        }
        CyclotomicRational { c }
    }

    fn neg(&self) -> Self {
        CyclotomicRational {
            c: std::array::from_fn(|k| -&self.c[k]),
        }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    fn characteristic(&self) -> u64 {
        0
    }
}

impl From<BigInt> for CyclotomicRational {
    fn from(k: BigInt) -> Self {
        let mut c: [BigRational; 4] = Default::default();
        c[0] = BigRational::from_integer(k);
        CyclotomicRational { c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_plus_i_in_f9() {
        let z = QuadExtElement::new(1, 1, 3).unwrap();
        assert_eq!(z.pow(4), QuadExtElement::new(-1, 0, 3).unwrap());
    }

    #[test]
    fn eighth_roots() {
        for p in [3, 7, 11, 19, 23, 43] {
            let z = find_eighth_root(p).unwrap();
            assert_eq!(z.pow(4), z.from_int_like(-1));
        }
        assert!(matches!(find_eighth_root(5), Err(Error::Precondition(_))));
        assert!(find_eighth_root(9).is_err());
    }

    #[test]
    fn inverses_in_f49() {
        for x in QuadExtElement::all(7).filter(|x| !x.is_zero()) {
            assert_eq!(x.mul(&x.inverse().unwrap()), x.one_like());
        }
        assert!(QuadExtElement::new(0, 0, 7).unwrap().inverse().is_none());
    }

    #[test]
    fn formal_root() {
        let z = CyclotomicRational::z();
        assert_eq!(z.pow(4), CyclotomicRational::from_int(-1));
        assert_eq!(z.pow(8), CyclotomicRational::from_int(1));
    }
}
