//! Salem certification of a lattice isometry: cyclotomic stripping, the
//! trace polynomial `g` with `μ = x^d·g(x + 1/x)`, Sturm root profiles and
//! certified bounds on the Salem number and the entropy.

mod real;
mod word;

pub use real::{
    decimal_string, larger_reciprocal_root, ln_interval, round_dyadic, sqrt_bounds,
    CertifiedInterval, DISPLAY_DIGITS,
};
pub use word::{compose_word, compose_word_cached, BaseSection, Letter, TranslationCache, Word};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{
    cauchy_bound, char_poly_exact, cyclotomic_cached, isolate_root, sturm_count, totient,
    IntPolynomial,
};
use crate::isometry::IsometryMatrix;

/// `x^(d−k)·(x² + 1)^k`, the image of `(x + 1/x)^k` after clearing `x^-d`.
fn reciprocal_basis(d: usize, k: usize) -> IntPolynomial {
    let x2p1 = IntPolynomial::from_i64(&[1, 0, 1]);
    &IntPolynomial::monomial(BigInt::one(), d - k) * &x2p1.pow(k as u32)
}

/// The unique `g` of degree `d` with `mu = x^d·g(x + 1/x)`.
pub fn symmetrize_reciprocal(mu: &IntPolynomial) -> Result<IntPolynomial> {
    let deg = mu.degree().ok_or(Error::ZeroPolynomial)?;
    if deg % 2 != 0 || !mu.is_reciprocal() {
        return Err(Error::InvalidInput(format!(
            "{mu} is not a reciprocal polynomial of even degree"
        )));
    }
    let d = deg / 2;
    let mut rest = mu.clone();
    let mut g = vec![BigInt::from(0); d + 1];
    for k in (0..=d).rev() {
        let c = rest.coeff(d + k);
        rest = &rest - &reciprocal_basis(d, k).scale(&c);
        g[k] = c;
    }
    if !rest.is_zero() {
        return Err(Error::Consistency(
            "reciprocal elimination left a remainder".into(),
        ));
    }
    Ok(IntPolynomial::new(g))
}

/// `x^d·g(x + 1/x)` for `d = deg g`; inverse of [`symmetrize_reciprocal`].
pub fn expand_reciprocal(g: &IntPolynomial) -> IntPolynomial {
    let Some(d) = g.degree() else {
        return IntPolynomial::zero();
    };
    (0..=d).fold(IntPolynomial::zero(), |acc, k| {
        &acc + &reciprocal_basis(d, k).scale(&g.coeff(k))
    })
}

/// Divides out every `Φ_k` with `φ(k) ≤ deg mu`, `k ≤ 2·deg²`, as often as
/// it divides. Returns the indices stripped (ascending, with repetition)
/// and what is left.
pub fn strip_cyclotomic_factors(mu: &IntPolynomial) -> Result<(Vec<u64>, IntPolynomial)> {
    let deg = mu.degree().ok_or(Error::ZeroPolynomial)? as u64;
    let mut cache = BTreeMap::new();
    let mut factors = Vec::new();
    let mut rest = mu.clone();
    for k in 1..=(2 * deg * deg).max(1) {
        if totient(k) > deg {
            continue;
        }
        if rest.degree().unwrap_or(0) < totient(k) as usize {
            continue;
        }
        let phi = cyclotomic_cached(k, &mut cache);
        while let Some(q) = rest.div_exact(&phi) {
            factors.push(k);
            rest = q;
        }
    }
    Ok((factors, rest))
}

/// Distinct real roots of the trace polynomial in `(−2, 2]` and above 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RootProfile {
    pub count_in: usize,
    #[serde(rename = "countAbove2")]
    pub count_above: usize,
}

/// How irreducibility of the Salem factor is established.
pub const PROOF_ROUTE: &str = "every cyclotomic factor with phi(k) <= deg mu was divided out; \
the remainder is then irreducible by the factorization theorem for isometries of a hyperbolic \
lattice, and its Salem root shape is confirmed by exact Sturm counts on the trace polynomial";

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SalemVerdict {
    pub is_salem22: bool,
    #[serde(serialize_with = "coeff_strings")]
    pub mu: IntPolynomial,
    pub cyclotomic_factors: Vec<u64>,
    #[serde(serialize_with = "opt_coeff_strings")]
    pub salem_factor: Option<IntPolynomial>,
    #[serde(rename = "g", serialize_with = "opt_coeff_strings")]
    pub trace_g: Option<IntPolynomial>,
    pub root_profile: Option<RootProfile>,
    /// Enclosure of the root `λ > 2` of `g`.
    pub trace_root: Option<CertifiedInterval>,
    pub salem_number: Option<CertifiedInterval>,
    pub entropy: Option<CertifiedInterval>,
    pub proof_route: Option<&'static str>,
    pub notes: Vec<String>,
}

impl SalemVerdict {
    pub fn salem_degree(&self) -> usize {
        self.salem_factor
            .as_ref()
            .and_then(IntPolynomial::degree)
            .unwrap_or(0)
    }

    pub fn has_positive_entropy(&self) -> bool {
        self.salem_factor.is_some()
    }
}

/// Coefficients in ascending order of degree, as decimal strings.
pub fn coeff_strings<S: Serializer>(
    p: &IntPolynomial,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<String> = p.coeffs().iter().map(BigInt::to_string).collect();
    v.serialize(s)
}

fn opt_coeff_strings<S: Serializer>(
    p: &Option<IntPolynomial>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => coeff_strings(p, s),
        None => s.serialize_none(),
    }
}

/// Bisection width for the trace root `λ`.
pub fn trace_root_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(12))
}

pub fn root_profile(g: &IntPolynomial) -> Result<RootProfile> {
    let two = BigRational::from_integer(2.into());
    let bound = cauchy_bound(g)?.max(two.clone());
    Ok(RootProfile {
        count_in: sturm_count(g, &-two.clone(), &two)?,
        count_above: sturm_count(g, &two, &bound)?,
    })
}

/// Encloses the unique root `λ > 2` of `g` to width 10⁻¹², then bounds
/// `a = (λ + √(λ² − 4))/2` and `log a`.
pub fn salem_bounds_from_trace(
    g: &IntPolynomial,
) -> Result<(CertifiedInterval, CertifiedInterval, CertifiedInterval)> {
    let two = BigRational::from_integer(2.into());
    let bound = cauchy_bound(g)?.max(two.clone());
    let (lo, hi) = isolate_root(g, two, bound, &trace_root_width())?;
    let lambda = CertifiedInterval::new(lo, hi)?;
    let a = larger_reciprocal_root(&lambda)?;
    let h = ln_interval(&a)?;
    Ok((lambda, a, h))
}

/// Verdict for a characteristic polynomial `mu` of a lattice isometry.
pub fn verdict_from_char_poly(mu: IntPolynomial) -> Result<SalemVerdict> {
    let (cyclotomic_factors, rest) = strip_cyclotomic_factors(&mu)?;
    let mut v = SalemVerdict {
        is_salem22: false,
        mu,
        cyclotomic_factors,
        salem_factor: None,
        trace_g: None,
        root_profile: None,
        trace_root: None,
        salem_number: None,
        entropy: None,
        proof_route: None,
        notes: Vec::new(),
    };
    let deg = rest.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(v);
    }
    let g = symmetrize_reciprocal(&rest).map_err(|_| {
        Error::Consistency(format!(
            "non-cyclotomic factor of degree {deg} is not reciprocal"
        ))
    })?;
    let profile = root_profile(&g)?;
    let d = deg / 2;
    if profile.count_above != 1 || profile.count_in + 1 != d {
        return Err(Error::Consistency(format!(
            "unclassified factor of degree {deg}: {} trace roots in (-2,2], {} above 2",
            profile.count_in, profile.count_above
        )));
    }
    let (lambda, a, h) = salem_bounds_from_trace(&g)?;
    if deg < 4 {
        v.notes.push(format!(
            "Salem factor has degree {deg}: a quadratic unit with no roots on the unit circle"
        ));
    }
    v.is_salem22 = deg == 22;
    v.salem_factor = Some(rest);
    v.trace_g = Some(g);
    v.root_profile = Some(profile);
    v.trace_root = Some(lambda);
    v.salem_number = Some(a);
    v.entropy = Some(h);
    v.proof_route = Some(PROOF_ROUTE);
    Ok(v)
}

pub fn salem_verdict(m: &IsometryMatrix) -> Result<SalemVerdict> {
    verdict_from_char_poly(char_poly_exact(m.matrix())?)
}

/// The Salem number and the entropy `log a` of a verdict with a Salem factor.
pub fn salem_number_and_entropy(
    v: &SalemVerdict,
) -> Result<(CertifiedInterval, CertifiedInterval)> {
    match (&v.salem_number, &v.entropy) {
        (Some(a), Some(h)) => Ok((a.clone(), h.clone())),
        _ => Err(Error::InvalidInput(
            "verdict has zero entropy: there is no Salem factor".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{cyclotomic_poly, rat};

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(
            symmetrize_reciprocal(&poly(&[1, -3, 1])).unwrap(),
            poly(&[-3, 1])
        );
        assert_eq!(
            symmetrize_reciprocal(&poly(&[1, 0, 0, 0, 1])).unwrap(),
            poly(&[-2, 0, 1])
        );
        assert!(symmetrize_reciprocal(&poly(&[6, -5, 1])).is_err());
        assert!(symmetrize_reciprocal(&poly(&[1, 1])).is_err());
        let lehmer = poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let g = symmetrize_reciprocal(&lehmer).unwrap();
        assert_eq!(expand_reciprocal(&g), lehmer);
    }

    #[test]
    fn strip_examples() {
        let p = &cyclotomic_poly(8).unwrap() * &cyclotomic_poly(12).unwrap();
        assert_eq!(
            strip_cyclotomic_factors(&p).unwrap(),
            (vec![8, 12], poly(&[1]))
        );
        assert_eq!(
            strip_cyclotomic_factors(&poly(&[-1, 1])).unwrap(),
            (vec![1], poly(&[1]))
        );
        let q = poly(&[1, -3, 1]);
        assert_eq!(strip_cyclotomic_factors(&q).unwrap(), (vec![], q.clone()));
    }

    #[test]
    fn identity_polynomial() {
        let mu = poly(&[-1, 1]).pow(22);
        let v = verdict_from_char_poly(mu).unwrap();
        assert!(!v.is_salem22);
        assert_eq!(v.cyclotomic_factors, vec![1; 22]);
        assert!(salem_number_and_entropy(&v).is_err());
    }

    #[test]
    fn quadratic_salem() {
        let v = verdict_from_char_poly(poly(&[1, -3, 1])).unwrap();
        assert!(!v.is_salem22);
        assert_eq!(v.notes.len(), 1);
        let (a, _) = salem_number_and_entropy(&v).unwrap();
        assert!(a.within(
            &rat(26_180_339_887, 10_000_000_000),
            &rat(26_180_339_888, 10_000_000_000)
        ));
    }

    #[test]
    fn lehmer_number() {
        let lehmer = poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let mu = &lehmer * &cyclotomic_poly(6).unwrap();
        let v = verdict_from_char_poly(mu).unwrap();
        assert_eq!(v.cyclotomic_factors, vec![6]);
        assert_eq!(v.salem_factor.as_ref(), Some(&lehmer));
        assert_eq!(
            v.root_profile,
            Some(RootProfile {
                count_in: 4,
                count_above: 1
            })
        );
        let (a, h) = salem_number_and_entropy(&v).unwrap();
        assert!(a.within(
            &rat(117_628_081, 100_000_000),
            &rat(117_628_082, 100_000_000)
        ));
        assert!(h.within(&rat(162_357, 1_000_000), &rat(162_358, 1_000_000)));
    }

    #[test]
    fn non_salem_remainder_is_rejected() {
        // (x² − 3x + 1)² has two roots above 1
        let q = poly(&[1, -3, 1]);
        assert!(matches!(
            verdict_from_char_poly(&q * &q),
            Err(Error::Consistency(_))
        ));
    }
}
