//! Weierstrass models `y² = x³ + a(t)·x` over `F_{p²}` or `ℚ[z]/(z⁴+1)`,
//! their explicit sections, and the purely inseparable base change from
//! the rational surface `Y` to `X(p)`.

mod field;
mod poly;

pub use field::{
    find_eighth_root, multiplicative_generator, Coeff, CyclotomicRational, QuadExtElement,
    MAX_FIELD_PRIME,
};
pub use poly::PolyOverField;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibration::KodairaType;
use crate::ns::check_inert_prime;

/// `y² = x³ + a(t)·x`, minimal of Euler characteristic `chi`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassModel<K: Coeff> {
    pub a: PolyOverField<K>,
    pub characteristic: u64,
    pub chi: u32,
}

impl<K: Coeff> WeierstrassModel<K> {
    /// Characteristic 3 is accepted so that sections can be checked on
    /// `X(3)`; fiber classification refuses it.
    pub fn new(a: PolyOverField<K>) -> Result<Self> {
        let deg = a
            .degree()
            .ok_or_else(|| Error::InvalidInput("a(t) must be nonzero".into()))?;
        let characteristic = a.like().characteristic();
        if characteristic == 2 {
            return Err(Error::Unsupported("characteristic 2".into()));
        }
        let chi = (deg as u32).div_ceil(4).max(1);
        Ok(WeierstrassModel {
            a,
            characteristic,
            chi,
        })
    }

    /// `X: y² = x³ + t³(t−1)²x`.
    pub fn x_surface(like: &K) -> Result<Self> {
        let t = PolyOverField::t(like);
        let tm1 = PolyOverField::linear(&like.one_like());
        Self::new(t.pow(3).mul(&tm1.pow(2)))
    }

    /// `Y: y² = x³ + t(t−1)²x`.
    pub fn y_surface(like: &K) -> Result<Self> {
        let t = PolyOverField::t(like);
        let tm1 = PolyOverField::linear(&like.one_like());
        Self::new(t.mul(&tm1.pow(2)))
    }

    fn like(&self) -> &K {
        self.a.like()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalSection<K: Coeff> {
    pub x: PolyOverField<K>,
    pub y: PolyOverField<K>,
}

/// A point of the generic fiber: the zero section or an affine section.
#[derive(Clone, Debug, PartialEq)]
pub enum SectionPoint<K: Coeff> {
    Zero,
    Affine(RationalSection<K>),
}

/// Whether `y² − x³ − a·x` vanishes identically.
pub fn verify_section<K: Coeff>(m: &WeierstrassModel<K>, s: &RationalSection<K>) -> bool {
    s.y.pow(2).sub(&s.x.pow(3)).sub(&m.a.mul(&s.x)).is_zero()
}

pub fn verify_point<K: Coeff>(m: &WeierstrassModel<K>, s: &SectionPoint<K>) -> bool {
    match s {
        SectionPoint::Zero => true,
        SectionPoint::Affine(s) => verify_section(m, s),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Invariants<K: Coeff> {
    pub c4: PolyOverField<K>,
    pub discriminant: PolyOverField<K>,
    pub j: K,
}

/// `c4 = −48a`, `Δ = −64a³`, and `j = c4³/Δ = 1728`.
pub fn j_and_discriminant<K: Coeff>(m: &WeierstrassModel<K>) -> Result<Invariants<K>> {
    let like = m.like();
    let c4 = m.a.scale(&like.from_int_like(-48));
    let discriminant = m.a.pow(3).scale(&like.from_int_like(-64));
    let j = like.from_int_like(1728);
    if c4.pow(3) != discriminant.scale(&j) {
        return Err(Error::Consistency("c4³ ≠ 1728·Δ".into()));
    }
    Ok(Invariants {
        c4,
        discriminant,
        j,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocatedFiber {
    pub place: String,
    pub kodaira: KodairaType,
    pub ord_c4: u32,
    pub ord_disc: u32,
}

/// Kodaira types at `t = 0`, `t = 1` and `t = ∞` from the vanishing orders
/// of `c4` and `Δ`. Models whose discriminant vanishes elsewhere are
/// rejected.
pub fn classify_fibers<K: Coeff>(m: &WeierstrassModel<K>) -> Result<Vec<LocatedFiber>> {
    if matches!(m.characteristic, 2 | 3) {
        return Err(Error::Unsupported(format!(
            "fiber classification in characteristic {}",
            m.characteristic
        )));
    }
    let inv = j_and_discriminant(m)?;
    let like = m.like();
    let zero = like.zero_like();
    let one = like.one_like();
    let ord = |p: &PolyOverField<K>, c: &K| p.order_at(c).unwrap_or(0);
    let (d0, d1) = (ord(&inv.discriminant, &zero), ord(&inv.discriminant, &one));
    let deg_disc = inv.discriminant.degree().unwrap_or(0) as u32;
    if d0 + d1 != deg_disc {
        return Err(Error::Unsupported(
            "discriminant vanishes away from t = 0, 1, ∞".into(),
        ));
    }
    let deg_c4 = inv.c4.degree().unwrap_or(0) as u32;
    let places = [
        ("t=0", ord(&inv.c4, &zero), d0),
        ("t=1", ord(&inv.c4, &one), d1),
        ("t=inf", 4 * m.chi - deg_c4, 12 * m.chi - deg_disc),
    ];
    let mut out = Vec::new();
    for (place, ord_c4, ord_disc) in places {
        if let Some(kodaira) = KodairaType::from_orders(Some(ord_c4), ord_disc)? {
            out.push(LocatedFiber {
                place: place.into(),
                kodaira,
                ord_c4,
                ord_disc,
            });
        }
    }
    Ok(out)
}

fn t_pow<K: Coeff>(like: &K, k: u64) -> PolyOverField<K> {
    PolyOverField::t(like).pow(k)
}

fn tm1_pow<K: Coeff>(like: &K, k: u64) -> PolyOverField<K> {
    PolyOverField::linear(&like.one_like()).pow(k)
}

/// `P = (ζ²t^{2n+3}(t−1), ζ³t^{n+3}(t−1)^{2n+3})` on `X`.
pub fn section_p<K: Coeff>(zeta: &K, n: u64) -> RationalSection<K> {
    RationalSection {
        x: t_pow(zeta, 2 * n + 3)
            .mul(&tm1_pow(zeta, 1))
            .scale(&zeta.pow(2)),
        y: t_pow(zeta, n + 3)
            .mul(&tm1_pow(zeta, 2 * n + 3))
            .scale(&zeta.pow(3)),
    }
}

/// `R = (−ζ²t^{2n+3}(t−1), −ζt^{n+3}(t−1)^{2n+3})` on `X`.
pub fn section_r<K: Coeff>(zeta: &K, n: u64) -> RationalSection<K> {
    RationalSection {
        x: t_pow(zeta, 2 * n + 3)
            .mul(&tm1_pow(zeta, 1))
            .scale(&zeta.pow(2).neg()),
        y: t_pow(zeta, n + 3)
            .mul(&tm1_pow(zeta, 2 * n + 3))
            .scale(&zeta.neg()),
    }
}

/// `P′ = (ζ²t(t−1), ζ³t(t−1)²)` on `Y`.
pub fn section_p_prime<K: Coeff>(zeta: &K) -> RationalSection<K> {
    RationalSection {
        x: t_pow(zeta, 1).mul(&tm1_pow(zeta, 1)).scale(&zeta.pow(2)),
        y: t_pow(zeta, 1).mul(&tm1_pow(zeta, 2)).scale(&zeta.pow(3)),
    }
}

/// `R′ = (−ζ²t(t−1), −ζt(t−1)²)` on `Y`.
pub fn section_r_prime<K: Coeff>(zeta: &K) -> RationalSection<K> {
    RationalSection {
        x: t_pow(zeta, 1)
            .mul(&tm1_pow(zeta, 1))
            .scale(&zeta.pow(2).neg()),
        y: t_pow(zeta, 1).mul(&tm1_pow(zeta, 2)).scale(&zeta.neg()),
    }
}

/// Pulls a section of `Y` back to `X` along `t ↦ t^p`, followed by the
/// coordinate scaling `x ↦ x/(t^{2n}(t−1)^{4n+2})`, `y ↦ y/(t^{3n}(t−1)^{6n+3})`.
pub fn inseparable_pullback<K: Coeff>(
    s: &SectionPoint<K>,
    p: u64,
    n: u64,
) -> Result<SectionPoint<K>> {
    if p != 4 * n + 3 {
        return Err(Error::InvalidInput(format!(
            "p = {p} is not 4n+3 for n = {n}"
        )));
    }
    let SectionPoint::Affine(s) = s else {
        return Ok(SectionPoint::Zero);
    };
    let like = s.x.like().clone();
    if like.characteristic() != p {
        return Err(Error::InvalidInput(format!(
            "pullback along t ↦ t^{p} needs coefficients of characteristic {p}"
        )));
    }
    let y_model = WeierstrassModel::y_surface(&like)?;
    if !verify_section(&y_model, s) {
        return Err(Error::NotASection("input does not lie on Y".into()));
    }
    let p = p as usize;
    let dx = t_pow(&like, 2 * n).mul(&tm1_pow(&like, 4 * n + 2));
    let dy = t_pow(&like, 3 * n).mul(&tm1_pow(&like, 6 * n + 3));
    let not_divisible = || Error::Consistency("pullback coordinates are not polynomial".into());
    let x =
        s.x.substitute_power(p)
            .div_exact_monic(&dx)
            .ok_or_else(not_divisible)?;
    let y =
        s.y.substitute_power(p)
            .div_exact_monic(&dy)
            .ok_or_else(not_divisible)?;
    let out = RationalSection { x, y };
    if !verify_section(&WeierstrassModel::x_surface(&like)?, &out) {
        return Err(Error::Consistency(
            "pulled-back section does not lie on X".into(),
        ));
    }
    Ok(SectionPoint::Affine(out))
}

/// Section identities of `X(p)` and `Y` checked over `F_{p²}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionChecks {
    #[serde(serialize_with = "crate::ns::display_string")]
    pub p: u64,
    pub zeta: String,
    #[serde(rename = "P")]
    pub p_on_x: bool,
    #[serde(rename = "R")]
    pub r_on_x: bool,
    #[serde(rename = "P'")]
    pub p_prime_on_y: bool,
    #[serde(rename = "R'")]
    pub r_prime_on_y: bool,
    #[serde(rename = "pullbackConsistent")]
    pub pullback_consistent: bool,
}

impl SectionChecks {
    pub fn all_pass(&self) -> bool {
        self.p_on_x
            && self.r_on_x
            && self.p_prime_on_y
            && self.r_prime_on_y
            && self.pullback_consistent
    }
}

pub fn check_sections(p: u64) -> Result<SectionChecks> {
    check_inert_prime(p)?;
    let n = (p - 3) / 4;
    let zeta = find_eighth_root(p)?;
    let x = WeierstrassModel::x_surface(&zeta)?;
    let y = WeierstrassModel::y_surface(&zeta)?;
    let (sp, sr) = (section_p(&zeta, n), section_r(&zeta, n));
    let (spp, srp) = (section_p_prime(&zeta), section_r_prime(&zeta));
    let pulls_to = |s: &RationalSection<QuadExtElement>,
                    target: &RationalSection<QuadExtElement>| {
        matches!(
            inseparable_pullback(&SectionPoint::Affine(s.clone()), p, n),
            Ok(SectionPoint::Affine(ref t)) if t == target
        )
    };
    Ok(SectionChecks {
        p,
        zeta: zeta.to_string(),
        p_on_x: verify_section(&x, &sp),
        r_on_x: verify_section(&x, &sr),
        p_prime_on_y: verify_section(&y, &spp),
        r_prime_on_y: verify_section(&y, &srp),
        pullback_consistent: pulls_to(&spp, &sp) && pulls_to(&srp, &sr),
    })
}

/// `P′` and `R′` on `Y` over `ℚ[z]/(z⁴+1)`, independently of `p`.
pub fn verify_y_sections_symbolically() -> Result<(bool, bool)> {
    let z = CyclotomicRational::z();
    let y = WeierstrassModel::y_surface(&z)?;
    Ok((
        verify_section(&y, &section_p_prime(&z)),
        verify_section(&y, &section_r_prime(&z)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntPolynomial;
    use crate::fibration::{classify_kodaira, Place};

    fn symbolic_one() -> CyclotomicRational {
        CyclotomicRational::from_int(1)
    }

    #[test]
    fn sections_on_x() {
        for p in [3, 7, 11, 19, 23] {
            let c = check_sections(p).unwrap();
            assert!(c.all_pass(), "{c:?}");
        }
    }

    #[test]
    fn non_sections_fail() {
        let zeta = find_eighth_root(7).unwrap();
        let x = WeierstrassModel::x_surface(&zeta).unwrap();
        let bad = RationalSection {
            x: PolyOverField::zero(&zeta),
            y: PolyOverField::constant(zeta.one_like()),
        };
        assert!(!verify_section(&x, &bad));
        // P′ is not a section of X
        assert!(!verify_section(&x, &section_p_prime(&zeta)));
        assert!(inseparable_pullback(&SectionPoint::Affine(bad), 7, 1).is_err());
        assert_eq!(
            inseparable_pullback(&SectionPoint::<QuadExtElement>::Zero, 7, 1).unwrap(),
            SectionPoint::Zero
        );
    }

    #[test]
    fn symbolic_y_sections() {
        assert_eq!(verify_y_sections_symbolically().unwrap(), (true, true));
        // over ℚ the Frobenius identity fails, so P is not a section of X
        let z = CyclotomicRational::z();
        let x = WeierstrassModel::x_surface(&z).unwrap();
        assert!(!verify_section(&x, &section_p(&z, 1)));
    }

    #[test]
    fn discriminants() {
        let one = symbolic_one();
        let x = WeierstrassModel::x_surface(&one).unwrap();
        let y = WeierstrassModel::y_surface(&one).unwrap();
        let t = PolyOverField::t(&one);
        let tm1 = PolyOverField::linear(&one);
        let expect = |a: u64, b: u64| t.pow(a).mul(&tm1.pow(b)).scale(&one.from_int_like(-64));
        assert_eq!(j_and_discriminant(&x).unwrap().discriminant, expect(9, 6));
        assert_eq!(j_and_discriminant(&y).unwrap().discriminant, expect(3, 6));
        let constant = WeierstrassModel::new(PolyOverField::constant(one.clone())).unwrap();
        let inv = j_and_discriminant(&constant).unwrap();
        assert_eq!(
            inv.discriminant,
            PolyOverField::constant(one.from_int_like(-64))
        );
        assert_eq!(inv.j, one.from_int_like(1728));
    }

    #[test]
    fn fiber_types_match_integer_classifier() {
        use KodairaType::*;
        let one = symbolic_one();
        let types = |m: &WeierstrassModel<CyclotomicRational>| -> Vec<KodairaType> {
            classify_fibers(m)
                .unwrap()
                .into_iter()
                .map(|f| f.kodaira)
                .collect()
        };
        let x = WeierstrassModel::x_surface(&one).unwrap();
        let y = WeierstrassModel::y_surface(&one).unwrap();
        assert_eq!(types(&x), vec![IIIStar, IStar(0), IIIStar]);
        assert_eq!(types(&y), vec![III, IStar(0), III]);
        assert_eq!((x.chi, y.chi), (2, 1));

        let kinds = |a: &[i64]| -> Vec<(Place, KodairaType)> {
            classify_kodaira(&IntPolynomial::from_i64(a))
                .unwrap()
                .into_iter()
                .map(|f| (f.place, f.kodaira))
                .collect()
        };
        let ax = kinds(&[0, 0, 0, 1, -2, 1]);
        assert_eq!(ax.iter().map(|f| f.1).collect::<Vec<_>>().len(), 3);
        for (place, k) in ax {
            let expected = match place {
                Place::Infinity => IIIStar,
                Place::Rational(ref r) if r.numer() == &0.into() => IIIStar,
                _ => IStar(0),
            };
            assert_eq!(k, expected);
        }

        let f7 = QuadExtElement::new(1, 0, 7).unwrap();
        let x7 = WeierstrassModel::x_surface(&f7).unwrap();
        assert_eq!(
            types(&x),
            classify_fibers(&x7)
                .unwrap()
                .into_iter()
                .map(|f| f.kodaira)
                .collect::<Vec<_>>()
        );
        let x3 = WeierstrassModel::x_surface(&QuadExtElement::new(1, 0, 3).unwrap()).unwrap();
        assert!(classify_fibers(&x3).is_err());
    }
}
