//! Kodaira fiber types and their classification for `y² = x³ + a(t)·x`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{rational_to_string, IntPolynomial, RatPolynomial};
use crate::lattice::RootKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// `I_n`; `I_0` is a smooth fiber.
    I(u32),
    II,
    III,
    IV,
    /// `I_n*`.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub fn euler_number(self) -> u32 {
        match self {
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Root lattice spanned by the components missing the zero section.
    pub fn root_lattice(self) -> Option<(RootKind, usize)> {
        match self {
            KodairaType::I(n) if n >= 2 => Some((RootKind::A, n as usize - 1)),
            KodairaType::III => Some((RootKind::A, 1)),
            KodairaType::IV => Some((RootKind::A, 2)),
            KodairaType::IStar(n) => Some((RootKind::D, n as usize + 4)),
            KodairaType::IVStar => Some((RootKind::E, 6)),
            KodairaType::IIIStar => Some((RootKind::E, 7)),
            KodairaType::IIStar => Some((RootKind::E, 8)),
            _ => None,
        }
    }

    pub fn component_count(self) -> usize {
        self.root_lattice().map_or(1, |(_, r)| r + 1)
    }

    pub fn is_reducible(self) -> bool {
        self.component_count() > 1
    }

    pub fn component_group(self) -> ComponentGroup {
        match self {
            KodairaType::I(n) => ComponentGroup::Cyclic(n.max(1)),
            KodairaType::II | KodairaType::IIStar => ComponentGroup::Cyclic(1),
            KodairaType::III | KodairaType::IIIStar => ComponentGroup::Cyclic(2),
            KodairaType::IV | KodairaType::IVStar => ComponentGroup::Cyclic(3),
            KodairaType::IStar(n) if n % 2 == 1 => ComponentGroup::Cyclic(4),
            KodairaType::IStar(_) => ComponentGroup::Klein,
        }
    }

    /// Kodaira type of a minimal model from `ord_v(c4)` and `ord_v(Δ)` in
    /// residue characteristic other than 2 and 3. `None` for `ord_c4` means
    /// `c4` vanishes identically. Returns `Ok(None)` for a smooth fiber.
    pub fn from_orders(ord_c4: Option<u32>, ord_disc: u32) -> Result<Option<KodairaType>> {
        let c4 = ord_c4.unwrap_or(u32::MAX);
        if c4 >= 4 && ord_disc >= 12 {
            return Err(Error::Unsupported(format!(
                "non-minimal model (ord c4 = {}, ord Δ = {ord_disc})",
                fmt_ord(ord_c4)
            )));
        }
        if ord_disc == 0 {
            return Ok(None);
        }
        if c4 == 0 {
            return Ok(Some(KodairaType::I(ord_disc)));
        }
        let t = match (ord_disc, c4) {
            (2, _) => KodairaType::II,
            (3, 1) => KodairaType::III,
            (4, c) if c >= 2 => KodairaType::IV,
            (6, c) if c >= 2 => KodairaType::IStar(0),
            (d, 2) if d > 6 => KodairaType::IStar(d - 6),
            (8, c) if c >= 3 => KodairaType::IVStar,
            (9, 3) => KodairaType::IIIStar,
            (10, c) if c >= 4 => KodairaType::IIStar,
            _ => {
                return Err(Error::Unsupported(format!(
                    "no Kodaira type with ord c4 = {}, ord Δ = {ord_disc}",
                    fmt_ord(ord_c4)
                )))
            }
        };
        Ok(Some(t))
    }

    /// The types this crate builds fibrations from.
    pub fn is_supported(self) -> bool {
        matches!(
            self,
            KodairaType::I(_)
                | KodairaType::III
                | KodairaType::IIIStar
                | KodairaType::IVStar
                | KodairaType::IStar(0)
        )
    }
}

fn fmt_ord(o: Option<u32>) -> String {
    o.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown Kodaira type {s:?}"));
        Ok(match s {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                match rest.strip_suffix('*') {
                    Some(k) => KodairaType::IStar(k.parse().map_err(|_| bad())?),
                    None => KodairaType::I(rest.parse().map_err(|_| bad())?),
                }
            }
        })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentGroup {
    Cyclic(u32),
    /// `(ℤ/2)²`
    Klein,
}

impl ComponentGroup {
    pub fn order(self) -> u32 {
        match self {
            ComponentGroup::Cyclic(n) => n,
            ComponentGroup::Klein => 4,
        }
    }
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentGroup::Cyclic(n) => write!(f, "Z/{n}"),
            ComponentGroup::Klein => write!(f, "(Z/2)^2"),
        }
    }
}

/// A point of the base ℙ¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Rational(BigRational),
    Infinity,
    /// Every root of this squarefree polynomial, which has no rational
    /// roots. All of these places carry the same fiber type.
    RootsOf(IntPolynomial),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Rational(q) => write!(f, "t={}", rational_to_string(q)),
            Place::Infinity => write!(f, "t=inf"),
            Place::RootsOf(p) => write!(f, "roots of {p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularFiber {
    pub place: Place,
    pub kodaira: KodairaType,
}

/// `(χ, ord_∞ a)` for `y² = x³ + a(t)·x` with `deg a ≤ 4χ`: the smallest
/// `χ` that makes the model at infinity integral.
pub fn euler_characteristic_and_order_at_infinity(a: &IntPolynomial) -> Result<(u32, u32)> {
    let d = a
        .degree()
        .ok_or_else(|| Error::InvalidInput("a(t) must be nonzero".into()))? as u32;
    let chi = d.div_ceil(4);
    Ok((chi, 4 * chi - d))
}

/// Singular fibers of `y² = x³ + a(t)·x` over ℚ, so `c4 = −48a` and
/// `Δ = −64a³`. Rational places come first in increasing order, then
/// places at irrational roots, then infinity.
pub fn classify_kodaira(a: &IntPolynomial) -> Result<Vec<SingularFiber>> {
    let (chi, ord_inf) = euler_characteristic_and_order_at_infinity(a)?;
    let mut out = Vec::new();
    let classify = |k: u32| -> Result<Option<KodairaType>> {
        let t = KodairaType::from_orders(Some(k), 3 * k)?;
        if let Some(t) = t {
            if !t.is_supported() {
                return Err(Error::Unsupported(format!("fiber type {t}")));
            }
        }
        Ok(t)
    };
    if chi == 0 {
        return Ok(out);
    }
    let (roots, rest) = rational_roots(a)?;
    for (r, k) in roots {
        if let Some(t) = classify(k)? {
            out.push(SingularFiber {
                place: Place::Rational(r),
                kodaira: t,
            });
        }
    }
    for (factor, k) in squarefree_decomposition(&rest) {
        if let Some(t) = classify(k)? {
            out.push(SingularFiber {
                place: Place::RootsOf(factor),
                kodaira: t,
            });
        }
    }
    if let Some(t) = classify(ord_inf)? {
        out.push(SingularFiber {
            place: Place::Infinity,
            kodaira: t,
        });
    }
    Ok(out)
}

/// Sum of the Euler numbers of the listed fibers, counting a `RootsOf`
/// place once per root.
pub fn euler_sum(fibers: &[SingularFiber]) -> u32 {
    fibers
        .iter()
        .map(|f| {
            let mult = match &f.place {
                Place::RootsOf(p) => p.degree().unwrap_or(0) as u32,
                _ => 1,
            };
            mult * f.kodaira.euler_number()
        })
        .sum()
}

/// Rational roots with multiplicity, sorted, plus the cofactor with no
/// rational roots.
fn rational_roots(a: &IntPolynomial) -> Result<(Vec<(BigRational, u32)>, IntPolynomial)> {
    let mut rest = a.clone();
    let mut roots = Vec::new();
    let zeros = rest.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        rest = IntPolynomial::new(rest.coeffs()[zeros..].to_vec());
        roots.push((BigRational::zero(), zeros as u32));
    }
    let mut candidates = Vec::new();
    if rest.degree().unwrap_or(0) > 0 {
        let c0 = rest.coeff(0);
        let lead = rest.leading().expect("nonzero").clone();
        for num in small_divisors(&c0)? {
            for den in small_divisors(&lead)? {
                for sign in [1, -1] {
                    candidates.push(BigRational::new(BigInt::from(sign) * &num, den.clone()));
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        let linear = IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()]);
        let mut k = 0;
        while let Some(q) = rest.div_exact(&linear) {
            rest = q;
            k += 1;
        }
        if k > 0 {
            roots.push((r, k));
        }
    }
    roots.sort_by(|x, y| x.0.cmp(&y.0));
    Ok((roots, rest))
}

fn small_divisors(v: &BigInt) -> Result<Vec<BigInt>> {
    const LIMIT: u64 = 1 << 40;
    let m = v.abs();
    let m: u64 = m
        .clone()
        .try_into()
        .ok()
        .filter(|&m| m <= LIMIT)
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "coefficient {v} too large for the rational root search"
            ))
        })?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Yun's algorithm: `a = c · ∏ s_k^k` with squarefree, pairwise coprime
/// primitive `s_k`. Constant factors are dropped.
fn squarefree_decomposition(a: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    let mut out = Vec::new();
    if a.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = a.to_rational();
    let b = f.gcd(&f.derivative());
    let mut c = f.divrem(&b).expect("gcd is nonzero").0;
    let mut d = &f.derivative().divrem(&b).expect("gcd is nonzero").0 - &c.derivative();
    let mut k = 1;
    while c.degree().unwrap_or(0) > 0 {
        let s = c.gcd(&d);
        if s.degree().unwrap_or(0) > 0 {
            out.push((primitive(&s), k));
        }
        c = c.divrem(&s).expect("gcd is nonzero").0;
        d = &d.divrem(&s).expect("gcd is nonzero").0 - &c.derivative();
        k += 1;
    }
    out
}

fn primitive(p: &RatPolynomial) -> IntPolynomial {
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut ints: Vec<BigInt> = ints.into_iter().map(|c| c / &g).collect();
    if ints.last().is_some_and(|c| c.is_negative()) {
        ints.iter_mut().for_each(|c| *c = -&*c);
    }
    IntPolynomial::new(ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_x() -> IntPolynomial {
        // t³(t−1)²
        let t = IntPolynomial::x();
        let t1 = IntPolynomial::from_i64(&[-1, 1]);
        &t.pow(3) * &t1.pow(2)
    }

    #[test]
    fn table() {
        use KodairaType::*;
        assert_eq!(KodairaType::from_orders(Some(1), 3).unwrap(), Some(III));
        assert_eq!(KodairaType::from_orders(Some(3), 9).unwrap(), Some(IIIStar));
        assert_eq!(
            KodairaType::from_orders(Some(2), 6).unwrap(),
            Some(IStar(0))
        );
        assert_eq!(KodairaType::from_orders(Some(0), 5).unwrap(), Some(I(5)));
        assert_eq!(
            KodairaType::from_orders(Some(2), 9).unwrap(),
            Some(IStar(3))
        );
        assert_eq!(KodairaType::from_orders(None, 8).unwrap(), Some(IVStar));
        assert_eq!(KodairaType::from_orders(Some(1), 0).unwrap(), None);
        assert!(KodairaType::from_orders(Some(4), 12).is_err());
        assert!(KodairaType::from_orders(Some(1), 5).is_err());
    }

    #[test]
    fn names_round_trip() {
        for t in [
            KodairaType::I(16),
            KodairaType::IStar(0),
            KodairaType::IIIStar,
            KodairaType::IV,
        ] {
            assert_eq!(t.to_string().parse::<KodairaType>().unwrap(), t);
        }
        assert!("V".parse::<KodairaType>().is_err());
    }

    #[test]
    fn isotrivial_k3() {
        let f = classify_kodaira(&poly_x()).unwrap();
        let types: Vec<String> = f
            .iter()
            .map(|s| format!("{}@{}", s.kodaira, s.place))
            .collect();
        assert_eq!(types, vec!["III*@t=0", "I0*@t=1", "III*@t=inf"]);
        assert_eq!(euler_sum(&f), 24);
    }

    #[test]
    fn rational_surface() {
        let t1 = IntPolynomial::from_i64(&[-1, 1]);
        let a = &IntPolynomial::x() * &t1.pow(2);
        let f = classify_kodaira(&a).unwrap();
        let types: Vec<String> = f
            .iter()
            .map(|s| format!("{}@{}", s.kodaira, s.place))
            .collect();
        assert_eq!(types, vec!["III@t=0", "I0*@t=1", "III@t=inf"]);
        assert_eq!(euler_sum(&f), 12);
    }

    #[test]
    fn constant_and_irrational() {
        assert!(classify_kodaira(&IntPolynomial::one()).unwrap().is_empty());
        // (t²+1)·t: III at the two roots of t²+1 and at 0, I0* at infinity
        let a = IntPolynomial::from_i64(&[0, 1, 0, 1]);
        let f = classify_kodaira(&a).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(
            f[1].place,
            Place::RootsOf(IntPolynomial::from_i64(&[1, 0, 1]))
        );
        assert_eq!(euler_sum(&f), 12);
        assert!(classify_kodaira(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn unsupported_type() {
        // ord 4 at zero would be non-minimal
        let a = IntPolynomial::monomial(BigInt::one(), 4);
        assert!(classify_kodaira(&(&a * &IntPolynomial::from_i64(&[1, 1]))).is_err());
    }
}
