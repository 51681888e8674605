//! Minimal commutative-ring interface used by the generic algorithms
//! (characteristic polynomials over ℤ, ℚ and ℚ[n]).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Ring: Clone + PartialEq + Debug {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn from_int(v: &BigInt) -> Self;
    /// Division by a nonzero integer, `None` unless it is exact in this ring.
    fn div_exact_int(&self, k: &BigInt) -> Option<Self>;
}

impl Ring for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn from_int(v: &BigInt) -> Self {
        v.clone()
    }
    fn div_exact_int(&self, k: &BigInt) -> Option<Self> {
        let (q, r) = self.div_rem(k);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Ring for BigRational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn from_int(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn div_exact_int(&self, k: &BigInt) -> Option<Self> {
        if Zero::is_zero(k) {
            return None;
        }
        Some(self / BigRational::from_integer(k.clone()))
    }
}
