//! The rational elliptic surface `Y: y² = x³ + t(t−1)²x` as a lattice
//! fixture: fibers III, III, I0*, sections P′ and R′, and the 2-torsion
//! section Q.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Component, FiberSpec, FibrationData, KodairaType, SectionClass};
use crate::error::{Error, Result};
use crate::exact::{span_basis, IntMatrix};
use crate::lattice::IntegerLattice;
use crate::ns::DivisorClass;

const LABELS: [&str; 10] = ["O", "F", "a0", "a_inf", "c", "l1", "l2", "l3", "P'", "R'"];

const O: usize = 0;
const F: usize = 1;
const A0: usize = 2;
const AINF: usize = 3;
const C: usize = 4;
const L1: usize = 5;
const L2: usize = 6;
const L3: usize = 7;
const PP: usize = 8;
const RP: usize = 9;

#[derive(Clone, Debug)]
pub struct RationalFixture {
    pub gram: Arc<IntMatrix>,
    pub fibration: FibrationData,
    pub p: SectionClass,
    pub r: SectionClass,
    /// The 2-torsion section, which has half-integral coordinates here.
    pub torsion: Vec<BigRational>,
}

fn fixture_gram() -> IntMatrix {
    let mut g = IntMatrix::zeros(10, 10);
    for i in 0..10 {
        g.set(i, i, BigInt::from(-2));
    }
    for i in [O, PP, RP] {
        g.set(i, i, -BigInt::one());
    }
    g.set(F, F, BigInt::zero());
    let pairs = [
        (O, F),
        (F, PP),
        (F, RP),
        (C, L1),
        (C, L2),
        (C, L3),
        (PP, A0),
        (RP, A0),
        (PP, L1),
        (RP, L2),
    ];
    for (a, b) in pairs {
        g.set(a, b, BigInt::one());
        g.set(b, a, BigInt::one());
    }
    g
}

pub fn rational_fixture() -> Result<RationalFixture> {
    let gram = Arc::new(fixture_gram());
    let e = |i: usize| DivisorClass::unit(10, i);
    let f = e(F);
    let simple_pair = |label: &str, pos: &str, i: usize| FiberSpec {
        kodaira: KodairaType::III,
        position: pos.into(),
        components: vec![
            Component::new(format!("{label}_zero"), &f - &e(i), 1),
            Component::new(label, e(i), 1),
        ],
    };
    let l0 = &(&(&(&f - &e(C).scale_i64(2)) - &e(L1)) - &e(L2)) - &e(L3);
    let fibration = FibrationData::new(
        "Y",
        gram.clone(),
        f.clone(),
        "O",
        e(O),
        vec![
            simple_pair("a0", "t=0", A0),
            simple_pair("a_inf", "t=inf", AINF),
            FiberSpec {
                kodaira: KodairaType::IStar(0),
                position: "t=1".into(),
                components: vec![
                    Component::new("l0", l0, 1),
                    Component::new("l1", e(L1), 1),
                    Component::new("l2", e(L2), 1),
                    Component::new("l3", e(L3), 1),
                    Component::new("c", e(C), 2),
                ],
            },
        ],
        1,
    )?;
    let half = |n: i64| BigRational::new(n.into(), 2.into());
    let torsion = vec![
        half(2),
        half(2),
        half(-1),
        half(-1),
        half(-2),
        half(-1),
        half(-1),
        half(-2),
        half(0),
        half(0),
    ];
    Ok(RationalFixture {
        p: fibration.section(e(PP))?,
        r: fibration.section(e(RP))?,
        gram,
        fibration,
        torsion,
    })
}

impl RationalFixture {
    pub fn labels(&self) -> &'static [&'static str] {
        &LABELS
    }

    /// The lattice spanned by the ten basis classes.
    pub fn lattice(&self) -> IntegerLattice {
        IntegerLattice::new((*self.gram).clone()).expect("fixture form is nondegenerate")
    }

    /// The trivial lattice, `U ⊕ 2A1 ⊕ D4`, as spanned inside the fixture.
    pub fn trivial(&self) -> Result<IntegerLattice> {
        IntegerLattice::new(self.fibration.trivial_gram())
    }

    /// The trivial lattice together with the torsion section.
    pub fn trivial_with_torsion(&self) -> Result<IntegerLattice> {
        let mut vs: Vec<Vec<BigRational>> = self
            .fibration
            .trivial_basis()
            .iter()
            .map(to_rational)
            .collect();
        vs.push(self.torsion.clone());
        span_lattice(&self.gram, &vs)
    }

    /// The full Néron–Severi lattice: all ten classes and the torsion section.
    pub fn ns_lattice(&self) -> Result<IntegerLattice> {
        let mut vs: Vec<Vec<BigRational>> = (0..10)
            .map(|i| to_rational(&DivisorClass::unit(10, i)))
            .collect();
        vs.push(self.torsion.clone());
        span_lattice(&self.gram, &vs)
    }

    /// The torsion section as a class, checked against the section
    /// invariants through its pairings.
    pub fn torsion_pairings(&self) -> Vec<BigRational> {
        let g = self.gram.to_rational();
        g.mul_vec(&self.torsion).expect("rank 10")
    }
}

fn to_rational(d: &DivisorClass) -> Vec<BigRational> {
    d.coords()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

/// Gram matrix of the ℤ-span of rational vectors.
fn span_lattice(gram: &IntMatrix, vs: &[Vec<BigRational>]) -> Result<IntegerLattice> {
    let den = vs
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: Vec<Vec<BigInt>> = vs
        .iter()
        .map(|v| {
            v.iter()
                .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let b = span_basis(&scaled)?;
    let d2 = &den * &den;
    let mut rows = Vec::with_capacity(b.len());
    for u in &b {
        let mut row = Vec::with_capacity(b.len());
        for v in &b {
            let x = gram.bilinear(u, v)?;
            if !(&x % &d2).is_zero() {
                return Err(Error::NotInLattice("span is not integral".into()));
            }
            row.push(x / &d2);
        }
        rows.push(row);
    }
    IntegerLattice::new(IntMatrix::from_rows(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::{height_by_projection, height_pairing, trivial_lattice_of};
    use crate::lattice::index_relation_check;

    #[test]
    fn determinants() {
        let y = rational_fixture().unwrap();
        assert_eq!(y.lattice().det(), &BigInt::from(-4));
        assert_eq!(y.trivial().unwrap().det(), &BigInt::from(-16));
        assert_eq!(
            trivial_lattice_of(&y.fibration).unwrap().det(),
            &BigInt::from(-16)
        );
        assert_eq!(y.trivial_with_torsion().unwrap().det(), &BigInt::from(-4));
        let ns = y.ns_lattice().unwrap();
        assert_eq!(ns.det(), &BigInt::from(-1));
        assert!(index_relation_check(&y.lattice(), &ns, &BigInt::from(2)).unwrap());
        assert!(index_relation_check(
            &y.trivial().unwrap(),
            &y.trivial_with_torsion().unwrap(),
            &BigInt::from(2)
        )
        .unwrap());
        assert_eq!(y.fibration.euler_visible(), 12);
    }

    #[test]
    fn torsion_section_meets_simple_components() {
        let y = rational_fixture().unwrap();
        let pair = y.torsion_pairings();
        let q = |a: i64| BigRational::from_integer(a.into());
        assert_eq!(pair[F], q(1));
        assert_eq!(pair[A0], q(1));
        assert_eq!(pair[AINF], q(1));
        assert_eq!(pair[L3], q(1));
        assert_eq!(pair[C], q(0));
        let sq: BigRational = pair.iter().zip(&y.torsion).map(|(a, b)| a * b).sum();
        assert_eq!(sq, q(-1));
    }

    #[test]
    fn mordell_weil_lattice() {
        let y = rational_fixture().unwrap();
        let h = |a: &SectionClass, b: &SectionClass| height_pairing(a, b, &y.fibration).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(h(&y.p, &y.p), half);
        assert_eq!(h(&y.r, &y.r), half);
        assert!(h(&y.p, &y.r).is_zero());
        assert_eq!(
            height_by_projection(&y.p, &y.p, &y.fibration).unwrap(),
            half
        );
        assert!(height_by_projection(&y.p, &y.r, &y.fibration)
            .unwrap()
            .is_zero());
    }
}
