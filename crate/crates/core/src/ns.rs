//! The rank-22 Néron–Severi lattice of the supersingular K3 surface `X(p)`
//! for `p = 4n + 3`, in a fixed basis of curves, together with the table of
//! known (−2)-curves.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{det_exact, solve_rational, IntMatrix};
use crate::lattice::{discriminant_group, signature_of, IntegerLattice};

pub const RANK: usize = 22;

/// Basis positions (0-based) of the named classes.
pub mod basis {
    pub const O: usize = 0;
    pub const F: usize = 1;
    pub const Q: usize = 2;
    pub const P: usize = 20;
    pub const R: usize = 21;

    /// Position of `e_i` for the 1-based label `i`.
    pub const fn e(i: usize) -> usize {
        i - 1
    }
}

/// An integer coordinate vector in a fixed basis of NS.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass(Vec<BigInt>);

impl DivisorClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        DivisorClass(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        DivisorClass(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        DivisorClass(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> DivisorClass {
        DivisorClass(self.0.iter().map(|c| c * k).collect())
    }

    pub fn scale_i64(&self, k: i64) -> DivisorClass {
        self.scale(&BigInt::from(k))
    }

    /// `Σ kᵢ·vᵢ`. All classes must share a dimension.
    pub fn combination<'a>(
        dim: usize,
        terms: impl IntoIterator<Item = (BigInt, &'a DivisorClass)>,
    ) -> DivisorClass {
        terms
            .into_iter()
            .fold(Self::zero(dim), |acc, (k, v)| &acc + &v.scale(&k))
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.dim(), rhs.dim(), "divisor classes of different rank");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.dim(), rhs.dim(), "divisor classes of different rank");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::lattice::bigint_strings::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        crate::lattice::bigint_strings::deserialize(d).map(DivisorClass)
    }
}

/// Deterministic trial division, adequate for the primes this crate handles.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is a prime with `p ≡ 3 (mod 4)`, the primes inert in ℚ(i).
pub fn check_inert_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if p % 4 != 3 {
        return Err(Error::Precondition(format!(
            "p = {p} is not ≡ 3 mod 4, so p is not inert in Q(sqrt(-1)) (Legendre symbol (-1|p) = 1) and X(p) is not supersingular by this construction"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NSModel {
    p: u64,
    n: u64,
    labels: Vec<String>,
    gram: IntMatrix,
    sigma: u32,
}

fn basis_labels() -> Vec<String> {
    let mut labels = vec!["O".to_string(), "F".into(), "Q".into()];
    labels.extend((4..=20).map(|i| format!("e{i}")));
    labels.push("P".into());
    labels.push("R".into());
    labels
}

fn ns_gram(n: u64) -> IntMatrix {
    use basis::*;
    let n = BigInt::from(n);
    let mut g = IntMatrix::zeros(RANK, RANK);
    for i in 0..RANK {
        g.set(i, i, BigInt::from(-2));
    }
    g.set(F, F, BigInt::zero());
    let mut put = |a: usize, b: usize, v: BigInt| {
        g.set(a, b, v.clone());
        g.set(b, a, v);
    };
    let ones = [
        (O, F),
        (F, Q),
        (F, P),
        (F, R),
        (Q, e(4)),
        (Q, e(11)),
        (Q, e(19)),
        (e(4), e(5)),
        (e(5), e(6)),
        (e(6), e(7)),
        (e(7), e(8)),
        (e(7), e(9)),
        (e(9), e(10)),
        (e(11), e(12)),
        (e(12), e(13)),
        (e(13), e(14)),
        (e(14), e(15)),
        (e(14), e(16)),
        (e(16), e(17)),
        (e(18), e(19)),
        (e(18), e(20)),
        (e(4), P),
        (e(4), R),
        (e(20), P),
    ];
    for (a, b) in ones {
        put(a, b, BigInt::one());
    }
    for (a, b) in [(O, P), (O, R), (Q, P), (Q, R)] {
        put(a, b, n.clone());
    }
    put(P, R, &n * 2);
    g
}

/// Builds the model for a prime `p ≡ 3 (mod 4)`.
pub fn build_ns_model(p: u64) -> Result<NSModel> {
    check_inert_prime(p)?;
    formal_ns_model((p - 3) / 4)
}

/// The same lattice for any `n ≥ 0`, with `p = 4n + 3` not required to be
/// prime. Used to treat `n` as a formal parameter.
pub fn formal_ns_model(n: u64) -> Result<NSModel> {
    let p = n
        .checked_mul(4)
        .and_then(|m| m.checked_add(3))
        .ok_or_else(|| Error::InvalidInput(format!("n = {n} is too large")))?;
    let gram = ns_gram(n);
    let det = det_exact(&gram)?;
    let expected = -BigInt::from(p) * BigInt::from(p);
    if det != expected {
        return Err(Error::Consistency(format!(
            "det NS(X({p})) = {det}, expected {expected}"
        )));
    }
    Ok(NSModel {
        p,
        n,
        labels: basis_labels(),
        gram,
        sigma: 1,
    })
}

impl NSModel {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// The Artin invariant.
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn lattice(&self) -> IntegerLattice {
        IntegerLattice::new(self.gram.clone()).expect("model Gram is nondegenerate")
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self, i: usize) -> DivisorClass {
        DivisorClass::unit(RANK, i)
    }

    /// The basis vector with the given label, e.g. `"e8"` or `"P"`.
    pub fn basis_class(&self, label: &str) -> Result<DivisorClass> {
        self.index_of(label)
            .map(|i| self.unit(i))
            .ok_or_else(|| Error::InvalidInput(format!("no basis element named {label:?}")))
    }

    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> BigInt {
        self.gram
            .bilinear(a.coords(), b.coords())
            .expect("divisor class of rank 22")
    }

    /// Pairings of `d` with every basis element.
    pub fn pairings(&self, d: &DivisorClass) -> Vec<BigInt> {
        self.gram
            .mul_vec(d.coords())
            .expect("divisor class of rank 22")
    }
}

/// The unique class with the given pairings against the basis, if integral.
pub fn class_from_intersections(model: &NSModel, pairings: &[BigInt]) -> Result<DivisorClass> {
    if pairings.len() != RANK {
        return Err(Error::Dimension(format!(
            "{} pairings, expected {RANK}",
            pairings.len()
        )));
    }
    let v = solve_rational(&model.gram, pairings)?;
    if v.iter().any(|q| !q.is_integer()) {
        return Err(Error::NotInLattice(format!(
            "pairings {:?} determine a non-integral vector",
            pairings.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    Ok(DivisorClass::new(
        v.into_iter().map(|q| q.to_integer()).collect(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    FiberComponent,
    Section,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    pub label: String,
    pub class: DivisorClass,
    pub kind: CurveKind,
    #[serde(rename = "fiberId")]
    pub fiber_id: Option<String>,
    #[serde(rename = "multiplicityInFiber")]
    pub multiplicity: Option<u32>,
}

/// Labels of the fibers of the isotrivial fibration, by base point.
pub const FIBER_INF: &str = "t=inf";
pub const FIBER_ZERO: &str = "t=0";
pub const FIBER_ONE: &str = "t=1";

/// III* layout: the far simple end first, then the long arm toward the center,
/// center, the other arm ending in the near simple end, and the short arm.
/// The multiplicities follow the affine E7 marks.
const E7_MARKS: [u32; 8] = [1, 2, 3, 4, 3, 2, 1, 2];

/// All fiber components of the three reducible fibers, then `O, Q, P, R`.
pub fn curve_table(model: &NSModel) -> Result<Vec<CurveRecord>> {
    use basis::*;
    let e = |i: usize| model.unit(basis::e(i));
    let f = model.unit(F);
    let mut records = Vec::with_capacity(25);
    let mut fiber = |id: &str, comps: Vec<(String, DivisorClass, u32)>| {
        for (label, class, m) in comps {
            records.push(CurveRecord {
                label,
                class,
                kind: CurveKind::FiberComponent,
                fiber_id: Some(id.to_string()),
                multiplicity: Some(m),
            });
        }
    };

    for (id, chain, extra) in [
        (FIBER_INF, [10, 9, 7, 6, 5, 4], 8),
        (FIBER_ZERO, [17, 16, 14, 13, 12, 11], 15),
    ] {
        let mut visible: Vec<usize> = chain.to_vec();
        visible.push(extra);
        // the simple component off the basis is F minus the rest of the fiber
        let rest = visible
            .iter()
            .zip(&E7_MARKS[1..])
            .fold(DivisorClass::zero(RANK), |acc, (&i, &m)| {
                &acc + &e(i).scale_i64(m.into())
            });
        let hidden = &f - &rest;
        let hidden_label = if id == FIBER_INF { "c_inf" } else { "c_0" };
        let mut comps = vec![(hidden_label.to_string(), hidden, E7_MARKS[0])];
        comps.extend(
            visible
                .iter()
                .zip(&E7_MARKS[1..])
                .map(|(&i, &m)| (format!("e{i}"), e(i), m)),
        );
        fiber(id, comps);
    }

    let mut pv = vec![BigInt::zero(); RANK];
    pv[basis::e(18)] = BigInt::one();
    pv[O] = BigInt::one();
    let d3 = class_from_intersections(model, &pv)?;
    pv[O] = BigInt::zero();
    pv[R] = BigInt::one();
    let d4 = class_from_intersections(model, &pv)?;
    fiber(
        FIBER_ONE,
        vec![
            ("d3".into(), d3, 1),
            ("d4".into(), d4, 1),
            ("e19".into(), e(19), 1),
            ("e20".into(), e(20), 1),
            ("e18".into(), e(18), 2),
        ],
    );

    for (label, i) in [("O", O), ("Q", Q), ("P", P), ("R", R)] {
        records.push(CurveRecord {
            label: label.into(),
            class: model.unit(i),
            kind: CurveKind::Section,
            fiber_id: None,
            multiplicity: None,
        });
    }

    for r in &records {
        let sq = model.dot(&r.class, &r.class);
        if sq != BigInt::from(-2) {
            return Err(Error::Consistency(format!(
                "curve {} has self-intersection {sq}",
                r.label
            )));
        }
    }
    Ok(records)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveEdge {
    pub a: usize,
    pub b: usize,
    #[serde(serialize_with = "crate::ns::bigint_string")]
    pub weight: BigInt,
}

pub(crate) fn bigint_string<S: Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.to_string().serialize(s)
}

/// Serializes any displayable number as a decimal string.
pub(crate) fn display_string<T: std::fmt::Display, S: Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.to_string().serialize(s)
}

/// Dual graph of a set of curves: an edge for every positive pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveGraph {
    pub vertices: Vec<CurveRecord>,
    pub edges: Vec<CurveEdge>,
}

impl CurveGraph {
    pub fn new(model: &NSModel, vertices: Vec<CurveRecord>) -> Self {
        let mut edges = Vec::new();
        for a in 0..vertices.len() {
            for b in a + 1..vertices.len() {
                let w = model.dot(&vertices[a].class, &vertices[b].class);
                if w.is_positive() {
                    edges.push(CurveEdge { a, b, weight: w });
                }
            }
        }
        CurveGraph { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn weight(&self, a: usize, b: usize) -> BigInt {
        let (a, b) = (a.min(b), a.max(b));
        self.edges
            .iter()
            .find(|e| e.a == a && e.b == b)
            .map_or_else(BigInt::zero, |e| e.weight.clone())
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|e| match (e.a == v, e.b == v) {
                (true, _) => Some(e.b),
                (_, true) => Some(e.a),
                _ => None,
            })
            .collect()
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }
}

/// The fiber components of the isotrivial fibration together with the
/// sections `O` and `Q`. `P` and `R` are left out.
pub fn configuration_graph(model: &NSModel) -> Result<CurveGraph> {
    let vertices = curve_table(model)?
        .into_iter()
        .filter(|r| r.kind == CurveKind::FiberComponent || r.label == "O" || r.label == "Q")
        .collect();
    Ok(CurveGraph::new(model, vertices))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NsReport {
    pub p: u64,
    #[serde(serialize_with = "bigint_string")]
    pub det: BigInt,
    #[serde(rename = "detIsMinusPSquared")]
    pub det_ok: bool,
    pub symmetric: bool,
    #[serde(rename = "invariantFactors", with = "crate::lattice::bigint_strings")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(rename = "pElementary")]
    pub p_elementary: bool,
    pub signature: Option<(usize, usize)>,
    #[serde(rename = "signatureOk")]
    pub signature_ok: bool,
    /// Recovered from `det = −p^{2σ}`, when that shape holds.
    #[serde(rename = "artinInvariant")]
    pub sigma: Option<u32>,
}

impl NsReport {
    pub fn passed(&self) -> bool {
        self.det_ok
            && self.symmetric
            && self.p_elementary
            && self.signature_ok
            && self.sigma == Some(1)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.det_ok {
            out.push("determinant");
        }
        if !self.symmetric {
            out.push("symmetry");
        }
        if !self.p_elementary {
            out.push("p-elementary");
        }
        if !self.signature_ok {
            out.push("signature");
        }
        if self.sigma != Some(1) {
            out.push("Artin invariant");
        }
        out
    }
}

pub fn verify_ns_model(model: &NSModel) -> NsReport {
    verify_ns_gram(model.p, &model.gram)
}

/// The checks of [`verify_ns_model`] on an arbitrary Gram matrix, so that
/// tampered matrices can be examined too.
pub fn verify_ns_gram(p: u64, gram: &IntMatrix) -> NsReport {
    let pb = BigInt::from(p);
    let det = det_exact(gram).unwrap_or_else(|_| BigInt::zero());
    let symmetric = gram.is_symmetric();
    let sigma = artin_invariant(&det, &pb);
    let group = IntegerLattice::new(gram.clone())
        .ok()
        .and_then(|l| discriminant_group(&l).ok());
    let invariant_factors = group.map(|g| g.invariant_factors).unwrap_or_default();
    let p_elementary = !det.is_zero() && invariant_factors.iter().all(|d| *d == pb);
    let signature = if symmetric {
        signature_of(gram).ok()
    } else {
        None
    };
    NsReport {
        p,
        det_ok: det == -(&pb * &pb),
        det,
        symmetric,
        invariant_factors,
        p_elementary,
        signature_ok: signature == Some((1, gram.rows() - 1)),
        signature,
        sigma,
    }
}

fn artin_invariant(det: &BigInt, p: &BigInt) -> Option<u32> {
    if !det.is_negative() {
        return None;
    }
    let mut m = -det;
    let mut k = 0u32;
    while (&m % p).is_zero() {
        m /= p;
        k += 1;
    }
    (m.is_one() && k.is_multiple_of(2) && k > 0).then_some(k / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..40).filter(|&k| is_prime(k)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(build_ns_model(5), Err(Error::Precondition(_))));
        assert!(matches!(build_ns_model(15), Err(Error::InvalidInput(_))));
        assert!(build_ns_model(3).is_ok());
    }

    #[test]
    fn small_models() {
        let m = build_ns_model(7).unwrap();
        use basis::*;
        assert_eq!(m.n(), 1);
        assert_eq!(m.gram().get(O, P), &BigInt::from(1));
        assert_eq!(m.gram().get(P, R), &BigInt::from(2));
        assert_eq!(det_exact(m.gram()).unwrap(), BigInt::from(-49));
        assert!(verify_ns_model(&m).passed());
    }

    #[test]
    fn curve_table_shape() {
        let m = build_ns_model(3).unwrap();
        let t = curve_table(&m).unwrap();
        let comps = t
            .iter()
            .filter(|r| r.kind == CurveKind::FiberComponent)
            .count();
        assert_eq!(comps, 21);
        assert_eq!(t.len(), 25);
        assert_eq!(configuration_graph(&m).unwrap().len(), 23);
    }

    #[test]
    fn tampered_gram_fails() {
        let m = build_ns_model(11).unwrap();
        let mut g = m.gram().clone();
        g.set(0, 0, BigInt::from(-4));
        let r = verify_ns_gram(11, &g);
        assert!(!r.det_ok);
        assert!(!r.passed());
    }

    #[test]
    fn class_from_pairings() {
        let m = build_ns_model(7).unwrap();
        let o = m.unit(basis::O);
        assert_eq!(class_from_intersections(&m, &m.pairings(&o)).unwrap(), o);
        let mut bad = vec![BigInt::zero(); RANK];
        bad[basis::e(8)] = BigInt::one();
        assert!(matches!(
            class_from_intersections(&m, &bad),
            Err(Error::NotInLattice(_))
        ));
    }
}
