//! Elliptic fibrations on a lattice of curve classes: singular fibers,
//! trivial lattice, sections, heights and translations.

mod ade;
mod fixture;
mod kodaira;
mod named;
mod translation;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub use ade::{
    classify_dynkin_shape, find_ade_configurations, induce_fibration, AdeConfig, AffineKind,
    DynkinShape,
};
pub use fixture::{rational_fixture, RationalFixture};
pub use kodaira::{
    classify_kodaira, euler_characteristic_and_order_at_infinity, euler_sum, ComponentGroup,
    KodairaType, Place, SingularFiber,
};
pub use named::{
    alternative_fibration, isotrivial_fibration, standard_fibrations, FibrationName,
    StandardFibrations,
};
pub use translation::{translation_isometry, Translation};

use crate::error::{Error, Result};
use crate::exact::{inverse_rational, IntMatrix};
use crate::lattice::{hyperbolic_plane, make_root_lattice, orthogonal_sum, IntegerLattice};
use crate::ns::DivisorClass;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub label: String,
    pub class: DivisorClass,
    pub multiplicity: u32,
}

impl Component {
    pub fn new(label: impl Into<String>, class: DivisorClass, multiplicity: u32) -> Self {
        Component {
            label: label.into(),
            class,
            multiplicity,
        }
    }
}

/// A reducible singular fiber as a list of curve classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KodairaFiber {
    pub kodaira: KodairaType,
    pub position: String,
    pub components: Vec<Component>,
    /// Index into `components` of the component met by the zero section.
    #[serde(rename = "zeroComponent")]
    pub zero_component: usize,
    /// For `I_n` with `n ≥ 2`, the position of each component along the
    /// cycle counted from the zero component.
    #[serde(skip)]
    cycle_position: Option<Vec<usize>>,
}

impl KodairaFiber {
    pub fn simple_components(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| self.components[i].multiplicity == 1)
            .collect()
    }

    pub fn nonzero_components(&self) -> impl Iterator<Item = (usize, &Component)> {
        self.components
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != self.zero_component)
    }

    pub fn component_group(&self) -> ComponentGroup {
        self.kodaira.component_group()
    }

    pub fn euler_number(&self) -> u32 {
        self.kodaira.euler_number()
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.components.iter().position(|c| c.label == label)
    }

    pub fn cycle_position(&self, i: usize) -> Option<usize> {
        self.cycle_position.as_ref().map(|p| p[i])
    }
}

/// An elliptic fibration: fiber class, zero section and reducible fibers,
/// inside a lattice with Gram matrix `gram`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationData {
    pub name: String,
    #[serde(skip)]
    gram: Arc<IntMatrix>,
    #[serde(rename = "fiberClass")]
    pub fiber_class: DivisorClass,
    #[serde(rename = "zeroSection")]
    pub zero_section: DivisorClass,
    #[serde(rename = "zeroLabel")]
    pub zero_label: String,
    pub fibers: Vec<KodairaFiber>,
    /// `χ(O)`: 2 for a K3 surface, 1 for a rational elliptic surface.
    #[serde(rename = "eulerCharacteristic")]
    pub chi: u32,
}

/// Input for one fiber of [`FibrationData::new`].
#[derive(Clone, Debug)]
pub struct FiberSpec {
    pub kodaira: KodairaType,
    pub position: String,
    pub components: Vec<Component>,
}

impl FibrationData {
    /// Checks `F² = 0`, `O·F = 1`, `O² = −χ`, that every fiber sums to `F`
    /// with its multiplicities, and that `O` meets exactly one component of
    /// each fiber, a simple one.
    pub fn new(
        name: impl Into<String>,
        gram: Arc<IntMatrix>,
        fiber_class: DivisorClass,
        zero_label: impl Into<String>,
        zero_section: DivisorClass,
        fibers: Vec<FiberSpec>,
        chi: u32,
    ) -> Result<Self> {
        let name = name.into();
        let dot = |a: &DivisorClass, b: &DivisorClass| -> Result<BigInt> {
            gram.bilinear(a.coords(), b.coords())
        };
        let bad = |msg: String| Err(Error::Consistency(format!("fibration {name}: {msg}")));
        if !dot(&fiber_class, &fiber_class)?.is_zero() {
            return bad("F² ≠ 0".into());
        }
        if !dot(&zero_section, &fiber_class)?.is_one() {
            return bad("O·F ≠ 1".into());
        }
        if dot(&zero_section, &zero_section)? != -BigInt::from(chi) {
            return bad(format!("O² ≠ −{chi}"));
        }
        let mut built = Vec::with_capacity(fibers.len());
        for spec in fibers {
            let sum = spec
                .components
                .iter()
                .fold(DivisorClass::zero(fiber_class.dim()), |acc, c| {
                    &acc + &c.class.scale_i64(c.multiplicity.into())
                });
            if sum != fiber_class {
                return bad(format!(
                    "components of the {} fiber at {} do not sum to F",
                    spec.kodaira, spec.position
                ));
            }
            if spec.components.len() != spec.kodaira.component_count() {
                return bad(format!(
                    "{} fiber at {} has {} components",
                    spec.kodaira,
                    spec.position,
                    spec.components.len()
                ));
            }
            let mut zero = None;
            for (i, c) in spec.components.iter().enumerate() {
                let v = dot(&c.class, &zero_section)?;
                if v.is_zero() {
                    continue;
                }
                if !v.is_one() || c.multiplicity != 1 || zero.is_some() {
                    return bad(format!(
                        "zero section meets the {} fiber at {} badly",
                        spec.kodaira, spec.position
                    ));
                }
                zero = Some(i);
            }
            let Some(zero_component) = zero else {
                return bad(format!(
                    "zero section misses the fiber at {}",
                    spec.position
                ));
            };
            let cycle_position = cycle_positions(&gram, &spec, zero_component)?;
            built.push(KodairaFiber {
                kodaira: spec.kodaira,
                position: spec.position,
                components: spec.components,
                zero_component,
                cycle_position,
            });
        }
        let f = FibrationData {
            name,
            gram,
            fiber_class,
            zero_section,
            zero_label: zero_label.into(),
            fibers: built,
            chi,
        };
        if f.euler_visible() > 12 * chi {
            return Err(Error::Consistency(format!(
                "fibration {}: fiber Euler numbers exceed {}",
                f.name,
                12 * chi
            )));
        }
        Ok(f)
    }

    pub fn gram(&self) -> &Arc<IntMatrix> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> BigInt {
        self.gram
            .bilinear(a.coords(), b.coords())
            .expect("class of the fibration's rank")
    }

    /// Sum of Euler numbers of the listed fibers.
    pub fn euler_visible(&self) -> u32 {
        self.fibers.iter().map(KodairaFiber::euler_number).sum()
    }

    /// The part of `12χ` carried by fibers not listed, necessarily
    /// irreducible ones.
    pub fn euler_residual(&self) -> u32 {
        12 * self.chi - self.euler_visible()
    }

    /// `O`, `F` and the components missing `O`: a basis of the trivial lattice.
    pub fn trivial_basis(&self) -> Vec<DivisorClass> {
        let mut out = vec![self.zero_section.clone(), self.fiber_class.clone()];
        for fiber in &self.fibers {
            out.extend(fiber.nonzero_components().map(|(_, c)| c.class.clone()));
        }
        out
    }

    pub fn trivial_gram(&self) -> IntMatrix {
        gram_of(&self.gram, &self.trivial_basis())
    }

    /// Validates the section invariants and records the components met.
    pub fn section(&self, class: DivisorClass) -> Result<SectionClass> {
        let fail = |msg: String| Err(Error::NotASection(format!("{class}: {msg}")));
        if !self.dot(&class, &self.fiber_class).is_one() {
            return fail("D·F ≠ 1".into());
        }
        let sq = self.dot(&class, &class);
        if sq != -BigInt::from(self.chi) {
            return fail(format!("D² = {sq}"));
        }
        let mut components = Vec::with_capacity(self.fibers.len());
        for fiber in &self.fibers {
            let mut met = None;
            for (i, c) in fiber.components.iter().enumerate() {
                let v = self.dot(&class, &c.class);
                if v.is_zero() {
                    continue;
                }
                if !v.is_one() || c.multiplicity != 1 || met.is_some() {
                    return fail(format!("meets the fiber at {} badly", fiber.position));
                }
                met = Some(i);
            }
            match met {
                Some(i) => components.push(i),
                None => return fail(format!("misses the fiber at {}", fiber.position)),
            }
        }
        Ok(SectionClass { class, components })
    }

    pub fn zero(&self) -> SectionClass {
        self.section(self.zero_section.clone())
            .expect("zero section satisfies the section invariants")
    }
}

impl fmt::Display for FibrationData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let types: Vec<String> = self.fibers.iter().map(|x| x.kodaira.to_string()).collect();
        write!(f, "{}: {}", self.name, types.join(" + "))?;
        if self.euler_residual() > 0 {
            write!(
                f,
                " (+ irreducible fibers of total Euler number {})",
                self.euler_residual()
            )?;
        }
        Ok(())
    }
}

pub(crate) fn gram_of(gram: &IntMatrix, classes: &[DivisorClass]) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = classes
        .iter()
        .map(|a| {
            classes
                .iter()
                .map(|b| gram.bilinear(a.coords(), b.coords()).expect("same rank"))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

fn cycle_positions(gram: &IntMatrix, spec: &FiberSpec, zero: usize) -> Result<Option<Vec<usize>>> {
    let n = match spec.kodaira {
        KodairaType::I(n) if n >= 2 => n as usize,
        KodairaType::III => 2,
        _ => return Ok(None),
    };
    if n == 2 {
        return Ok(Some(if zero == 0 { vec![0, 1] } else { vec![1, 0] }));
    }
    let adjacent = |a: usize, b: usize| {
        gram.bilinear(
            spec.components[a].class.coords(),
            spec.components[b].class.coords(),
        )
        .map(|v| v.is_one())
        .unwrap_or(false)
    };
    let mut order = vec![zero];
    let mut prev = usize::MAX;
    let mut cur = zero;
    while order.len() < n {
        let next = (0..n)
            .find(|&k| k != prev && k != cur && adjacent(cur, k) && !order.contains(&k))
            .ok_or_else(|| Error::Consistency(format!("I{n} fiber is not a cycle")))?;
        order.push(next);
        prev = cur;
        cur = next;
    }
    let mut pos = vec![0; n];
    for (i, &c) in order.iter().enumerate() {
        pos[c] = i;
    }
    Ok(Some(pos))
}

/// A section: a class with `S·F = 1`, `S² = −χ`, meeting every reducible
/// fiber in exactly one simple component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionClass {
    pub class: DivisorClass,
    /// For each fiber, the index of the component met.
    #[serde(rename = "componentChoices")]
    pub components: Vec<usize>,
}

/// `U ⊕ (root lattice of each reducible fiber)`.
pub fn trivial_lattice_of(f: &FibrationData) -> Result<IntegerLattice> {
    let mut l = hyperbolic_plane();
    for fiber in &f.fibers {
        if let Some((kind, rank)) = fiber.kodaira.root_lattice() {
            l = orthogonal_sum(&l, &make_root_lattice(kind, rank)?);
        }
    }
    Ok(l)
}

/// The section in the class of `d` modulo the trivial lattice: subtract
/// `(d·F − 1)·O`, correct fiber by fiber with fiber components, and finally
/// add the multiple of `F` that makes the self-intersection `−χ`.
pub fn reduce_to_section(d: &DivisorClass, f: &FibrationData) -> Result<SectionClass> {
    let k = f.dot(d, &f.fiber_class);
    if k < BigInt::one() {
        return Err(Error::InvalidInput(format!("D·F = {k} < 1 for D = {d}")));
    }
    let mut total = d - &f.zero_section.scale(&(k - 1));
    let base = total.clone();
    for fiber in &f.fibers {
        let nz: Vec<&Component> = fiber.nonzero_components().map(|(_, c)| c).collect();
        let classes: Vec<DivisorClass> = nz.iter().map(|c| c.class.clone()).collect();
        let inv = inverse_rational(&gram_of(&f.gram, &classes))?;
        let current: Vec<BigInt> = classes.iter().map(|c| f.dot(&base, c)).collect();
        let mut found: Option<Vec<BigInt>> = None;
        for s in fiber.simple_components() {
            let target: Vec<BigRational> = fiber
                .nonzero_components()
                .zip(&current)
                .map(|((i, _), cur)| {
                    let t = if i == s {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    };
                    BigRational::from_integer(t - cur)
                })
                .collect();
            let a = inv.mul_vec(&target)?;
            if a.iter().all(BigRational::is_integer) {
                if found.is_some() {
                    return Err(Error::Consistency(format!(
                        "two integral fibral corrections in the fiber at {}",
                        fiber.position
                    )));
                }
                found = Some(a.into_iter().map(|q| q.to_integer()).collect());
            }
        }
        let a = found.ok_or_else(|| {
            Error::NotASection(format!(
                "{d} has no integral correction in the fiber at {}",
                fiber.position
            ))
        })?;
        for (coef, c) in a.iter().zip(&classes) {
            total = &total + &c.scale(coef);
        }
    }
    let sq = f.dot(&total, &total);
    let two_y = -BigInt::from(f.chi) - sq;
    if !(&two_y % BigInt::from(2)).is_zero() {
        return Err(Error::NotASection(format!(
            "{d} reduces to a class of odd defect {two_y}"
        )));
    }
    total = &total + &f.fiber_class.scale(&(two_y / 2));
    f.section(total)
}

/// The section of `f` induced by a multisection `m` (`m·F ≥ 1`).
pub fn induced_section(m: &DivisorClass, f: &FibrationData) -> Result<SectionClass> {
    reduce_to_section(m, f)
}

/// Correction term of the height pairing at one fiber for sections meeting
/// components `i` and `j`.
pub fn local_contribution(fiber: &KodairaFiber, i: usize, j: usize) -> Result<BigRational> {
    let m = fiber.components.len();
    if i >= m || j >= m {
        return Err(Error::InvalidInput(format!(
            "component index out of range for the fiber at {}",
            fiber.position
        )));
    }
    if fiber.components[i].multiplicity != 1 || fiber.components[j].multiplicity != 1 {
        return Err(Error::InvalidInput("not a simple component".into()));
    }
    if i == fiber.zero_component || j == fiber.zero_component {
        return Ok(BigRational::zero());
    }
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let same = i == j;
    Ok(match fiber.kodaira {
        KodairaType::I(_) | KodairaType::III => {
            let n = fiber.components.len() as i64;
            let a = fiber.cycle_position(i).expect("cycle fiber") as i64;
            let b = fiber.cycle_position(j).expect("cycle fiber") as i64;
            let (lo, hi) = (a.min(b), a.max(b));
            q(lo * (n - hi), n)
        }
        KodairaType::IV => q(2, 3),
        KodairaType::IVStar => q(if same { 4 } else { 2 }, 3),
        KodairaType::IIIStar => q(3, 2),
        KodairaType::IStar(0) => q(if same { 2 } else { 1 }, 2),
        t => {
            return Err(Error::Unsupported(format!(
                "local contribution for fiber type {t}"
            )))
        }
    })
}

/// `⟨P,Q⟩ = χ + P·O + Q·O − P·Q − Σ c_v(P,Q)`.
pub fn height_pairing(
    p: &SectionClass,
    q: &SectionClass,
    f: &FibrationData,
) -> Result<BigRational> {
    let mut h = BigRational::from_integer(
        BigInt::from(f.chi) + f.dot(&p.class, &f.zero_section) + f.dot(&q.class, &f.zero_section)
            - f.dot(&p.class, &q.class),
    );
    for (k, fiber) in f.fibers.iter().enumerate() {
        h -= local_contribution(fiber, p.components[k], q.components[k])?;
    }
    Ok(h)
}

/// The same pairing computed as `−φ(P)·φ(Q)`, with `φ` the orthogonal
/// projection away from the trivial lattice tensored with ℚ.
pub fn height_by_projection(
    p: &SectionClass,
    q: &SectionClass,
    f: &FibrationData,
) -> Result<BigRational> {
    let basis = f.trivial_basis();
    let inv = inverse_rational(&gram_of(&f.gram, &basis))?;
    let tp: Vec<BigRational> = basis
        .iter()
        .map(|t| BigRational::from_integer(f.dot(t, &p.class)))
        .collect();
    let tq: Vec<BigRational> = basis
        .iter()
        .map(|t| BigRational::from_integer(f.dot(t, &q.class)))
        .collect();
    let w = inv.mul_vec(&tq)?;
    let correction: BigRational = tp.iter().zip(&w).map(|(a, b)| a * b).sum();
    Ok(correction - BigRational::from_integer(f.dot(&p.class, &q.class)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::det_exact;
    use crate::ns::{basis, build_ns_model};

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn induced_sections_of_the_alternative_fibrations() {
        let m = build_ns_model(7).unwrap();
        let fibs = standard_fibrations(&m).unwrap();
        for f in [&fibs.pi_prime, &fibs.pi_double_prime] {
            assert_eq!(
                induced_section(&f.zero_section, f).unwrap().class,
                f.zero_section
            );
            let p = induced_section(&m.unit(basis::P), f).unwrap();
            assert_eq!(f.dot(&p.class, &f.fiber_class), BigInt::one());
            assert_eq!(f.dot(&p.class, &p.class), BigInt::from(-2));
            // O is a component of the I16 and I12 fibers, not a multisection
            assert_eq!(f.dot(&m.unit(basis::O), &f.fiber_class), BigInt::zero());
            assert!(induced_section(&m.unit(basis::O), f).is_err());
        }
        let fiber = fibs.pi_prime.fiber_class.clone();
        assert!(matches!(
            induced_section(&fiber, &fibs.pi_prime),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn isotrivial_trivial_lattice() {
        let m = build_ns_model(3).unwrap();
        let pi = isotrivial_fibration(&m).unwrap();
        let l = trivial_lattice_of(&pi).unwrap();
        assert_eq!((l.rank(), l.det().clone()), (20, BigInt::from(-16)));
        assert_eq!(det_exact(&pi.trivial_gram()).unwrap(), BigInt::from(-16));
        assert_eq!(pi.euler_visible(), 24);
        let u = trivial_lattice_of(
            &FibrationData::new(
                "bare",
                pi.gram().clone(),
                pi.fiber_class.clone(),
                "O",
                pi.zero_section.clone(),
                vec![],
                2,
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(u.rank(), 2);
    }

    #[test]
    fn heights_on_x() {
        for p in [3u64, 7, 11] {
            let m = build_ns_model(p).unwrap();
            let n = m.n() as i64;
            let pi = isotrivial_fibration(&m).unwrap();
            let sp = pi.section(m.unit(basis::P)).unwrap();
            let sr = pi.section(m.unit(basis::R)).unwrap();
            assert_eq!(height_pairing(&sp, &sp, &pi).unwrap(), q(4 * n + 3, 2));
            assert_eq!(height_pairing(&sp, &sr, &pi).unwrap(), q(0, 1));
            assert_eq!(
                height_by_projection(&sp, &sp, &pi).unwrap(),
                q(4 * n + 3, 2)
            );
            let o = pi.zero();
            assert!(height_pairing(&o, &o, &pi).unwrap().is_zero());
        }
    }

    #[test]
    fn reduction_examples() {
        let m = build_ns_model(3).unwrap();
        let pi = isotrivial_fibration(&m).unwrap();
        let (o, p, r, qq) = (
            m.unit(basis::O),
            m.unit(basis::P),
            m.unit(basis::R),
            m.unit(basis::Q),
        );
        let pr = reduce_to_section(&(&(&p + &r) - &o), &pi).unwrap();
        assert_eq!(
            pr.class,
            DivisorClass::from_i64(&[
                1, 2, -2, 0, 0, 0, 0, 0, 0, 0, -3, -4, -5, -6, -3, -4, -2, -1, -2, 0, 1, 1
            ])
        );
        assert_eq!(reduce_to_section(&o, &pi).unwrap().class, o);
        assert_eq!(
            reduce_to_section(&(&qq.scale_i64(2) - &o), &pi)
                .unwrap()
                .class,
            o
        );
        assert!(reduce_to_section(&m.unit(basis::e(8)), &pi).is_err());
    }

    #[test]
    fn local_contribution_table() {
        let m = build_ns_model(3).unwrap();
        let pi = isotrivial_fibration(&m).unwrap();
        let e7 = &pi.fibers[0];
        let simple: Vec<usize> = e7
            .simple_components()
            .into_iter()
            .filter(|&i| i != e7.zero_component)
            .collect();
        assert_eq!(
            local_contribution(e7, simple[0], simple[0]).unwrap(),
            q(3, 2)
        );
        assert!(local_contribution(e7, e7.zero_component, simple[0])
            .unwrap()
            .is_zero());
        assert!(local_contribution(e7, 99, 0).is_err());
    }
}
