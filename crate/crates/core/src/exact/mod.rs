//! Exact integer and rational linear algebra and polynomial arithmetic.
//! Nothing in here rounds.

mod charpoly;
mod cyclotomic;
mod matrix;
mod poly;
mod ring;
mod snf;
mod sturm;

pub use charpoly::{char_poly_exact, char_poly_generic};
pub(crate) use cyclotomic::cyclotomic_cached;
pub use cyclotomic::{cyclotomic_poly, divisors, totient};
pub use matrix::{
    det_exact, inverse_rational, parse_rational, rational_str, rational_to_string, solve_rational,
    IntMatrix, RationalMatrix,
};
pub use poly::{poly_divrem, IntPolynomial, RatPolynomial};
pub use ring::Ring;
pub use snf::{smith_normal_form, span_basis, SnfResult};
pub use sturm::{cauchy_bound, isolate_root, sturm_count, SturmSequence};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
