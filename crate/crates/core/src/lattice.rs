//! Integral lattices given by a Gram matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{det_exact, smith_normal_form, IntMatrix};

/// A nondegenerate integral lattice, stored as its Gram matrix in some basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct IntegerLattice {
    gram: IntMatrix,
    det: BigInt,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    rank: usize,
    gram: IntMatrix,
}

impl TryFrom<LatticeRepr> for IntegerLattice {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        if r.gram.rows() != r.rank {
            return Err(Error::Dimension(format!(
                "rank {} but a {}x{} Gram matrix",
                r.rank,
                r.gram.rows(),
                r.gram.cols()
            )));
        }
        IntegerLattice::new(r.gram)
    }
}

impl From<IntegerLattice> for LatticeRepr {
    fn from(l: IntegerLattice) -> Self {
        LatticeRepr {
            rank: l.rank(),
            gram: l.gram,
        }
    }
}

impl IntegerLattice {
    /// Validates symmetry and nondegeneracy. The rank-0 lattice is allowed
    /// and has determinant 1.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension(format!(
                "Gram matrix must be square, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
        }
        let det = det_exact(&gram)?;
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(IntegerLattice { gram, det })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn pairing(&self, u: &[BigInt], v: &[BigInt]) -> Result<BigInt> {
        self.gram.bilinear(u, v)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i).is_even())
    }
}

impl fmt::Display for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lattice of rank {} and determinant {}",
            self.rank(),
            self.det
        )
    }
}

/// Root lattice families. Nodes follow the Bourbaki numbering:
/// `A_n` is the chain 1..n; `D_n` is the chain 1..n-2 with n-1 and n both
/// attached to n-2; `E_n` is the chain 1,3,4,...,n with node 2 attached to 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootKind {
    A,
    D,
    E,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            RootKind::A => 'A',
            RootKind::D => 'D',
            RootKind::E => 'E',
        };
        write!(f, "{c}")
    }
}

/// Edges of the Dynkin diagram, 0-based.
pub fn dynkin_edges(kind: RootKind, rank: usize) -> Result<Vec<(usize, usize)>> {
    let chain = |len: usize| (1..len).map(|i| (i - 1, i)).collect::<Vec<_>>();
    match kind {
        RootKind::A if rank >= 1 => Ok(chain(rank)),
        RootKind::D if rank >= 4 => {
            let mut e = chain(rank - 1);
            e.push((rank - 3, rank - 1));
            Ok(e)
        }
        RootKind::E if (6..=8).contains(&rank) => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..rank - 1).map(|i| (i, i + 1)));
            Ok(e)
        }
        _ => Err(Error::InvalidInput(format!(
            "no root lattice of type {kind}{rank}"
        ))),
    }
}

/// Negative-definite root lattice: −2 on the diagonal, +1 on diagram edges.
pub fn make_root_lattice(kind: RootKind, rank: usize) -> Result<IntegerLattice> {
    let edges = dynkin_edges(kind, rank)?;
    let mut g = IntMatrix::zeros(rank, rank);
    for i in 0..rank {
        g.set(i, i, BigInt::from(-2));
    }
    for (i, j) in edges {
        g.set(i, j, BigInt::one());
        g.set(j, i, BigInt::one());
    }
    IntegerLattice::new(g)
}

pub fn hyperbolic_plane() -> IntegerLattice {
    IntegerLattice::new(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]))
        .expect("U is nondegenerate")
}

pub fn orthogonal_sum(a: &IntegerLattice, b: &IntegerLattice) -> IntegerLattice {
    IntegerLattice {
        gram: a.gram.direct_sum(&b.gram),
        det: &a.det * &b.det,
    }
}

/// `L*/L` recorded by its invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantGroup {
    #[serde(rename = "invariantFactors", with = "bigint_strings")]
    pub invariant_factors: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Minimal number of generators, written l(A_L) in the literature.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn discriminant_group(l: &IntegerLattice) -> Result<DiscriminantGroup> {
    let snf = smith_normal_form(&l.gram)?;
    let invariant_factors: Vec<BigInt> = snf.diagonal.into_iter().filter(|d| !d.is_one()).collect();
    let group = DiscriminantGroup { invariant_factors };
    if group.order() != l.det.abs() {
        return Err(Error::Consistency(format!(
            "discriminant group of order {} but |det| = {}",
            group.order(),
            l.det.abs()
        )));
    }
    Ok(group)
}

pub fn is_p_elementary(l: &IntegerLattice, p: u64) -> Result<bool> {
    let p = BigInt::from(p);
    Ok(discriminant_group(l)?
        .invariant_factors
        .iter()
        .all(|d| p.is_multiple_of(d)))
}

/// Whether `det(sub) = index² · det(sup)`, the necessary condition for `sub`
/// to embed in `sup` with the given index.
pub fn index_relation_check(
    sub: &IntegerLattice,
    sup: &IntegerLattice,
    index: &BigInt,
) -> Result<bool> {
    if sub.rank() != sup.rank() {
        return Err(Error::Dimension(format!(
            "index relation needs equal ranks, got {} and {}",
            sub.rank(),
            sup.rank()
        )));
    }
    Ok(sub.det == index * index * &sup.det)
}

/// `(positives, negatives)` of the form, by exact symmetric elimination.
pub fn signature(l: &IntegerLattice) -> Result<(usize, usize)> {
    signature_of(&l.gram)
}

pub(crate) fn signature_of(gram: &IntMatrix) -> Result<(usize, usize)> {
    let n = gram.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            gram.row(i)
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // replace e_k by e_k + e_j, whose square is 2·a_kj ≠ 0
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                return Err(Error::Degenerate);
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
        for row in a.iter_mut().skip(k + 1) {
            row[k] = BigRational::zero();
        }
    }
    Ok((pos, neg))
}

pub(crate) mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn root_lattice_determinants() {
        let cases = [
            (RootKind::A, 1, -2),
            (RootKind::A, 3, -4),
            (RootKind::D, 4, 4),
            (RootKind::D, 5, -4),
            (RootKind::E, 6, 3),
            (RootKind::E, 7, -2),
            (RootKind::E, 8, 1),
        ];
        for (k, r, d) in cases {
            let l = make_root_lattice(k, r).unwrap();
            assert_eq!(l.det(), &int(d), "{k}{r}");
            assert_eq!(signature(&l).unwrap(), (0, r));
        }
        assert!(make_root_lattice(RootKind::D, 3).is_err());
        assert!(make_root_lattice(RootKind::E, 9).is_err());
        assert!(make_root_lattice(RootKind::A, 0).is_err());
    }

    #[test]
    fn hyperbolic_plane_facts() {
        let u = hyperbolic_plane();
        assert_eq!(u.det(), &int(-1));
        assert_eq!(orthogonal_sum(&u, &u).det(), &int(1));
        assert!(discriminant_group(&u).unwrap().is_trivial());
        assert_eq!(signature(&u).unwrap(), (1, 1));
        assert!(is_p_elementary(&u, 5).unwrap());
    }

    #[test]
    fn trivial_lattices_of_the_two_surfaces() {
        let u = hyperbolic_plane();
        let e7 = make_root_lattice(RootKind::E, 7).unwrap();
        let d4 = make_root_lattice(RootKind::D, 4).unwrap();
        let a1 = make_root_lattice(RootKind::A, 1).unwrap();
        let x = orthogonal_sum(&orthogonal_sum(&orthogonal_sum(&u, &e7), &e7), &d4);
        assert_eq!((x.rank(), x.det().clone()), (20, int(-16)));
        let y = orthogonal_sum(&orthogonal_sum(&orthogonal_sum(&u, &a1), &a1), &d4);
        assert_eq!((y.rank(), y.det().clone()), (8, int(-16)));
        let empty = IntegerLattice::new(IntMatrix::zeros(0, 0)).unwrap();
        assert_eq!(orthogonal_sum(&x, &empty), x);
    }

    #[test]
    fn discriminant_groups() {
        let e7 = make_root_lattice(RootKind::E, 7).unwrap();
        assert_eq!(
            discriminant_group(&e7).unwrap().invariant_factors,
            vec![int(2)]
        );
        let d4 = make_root_lattice(RootKind::D, 4).unwrap();
        assert_eq!(
            discriminant_group(&d4).unwrap().invariant_factors,
            vec![int(2), int(2)]
        );
        let a3 = make_root_lattice(RootKind::A, 3).unwrap();
        assert!(!is_p_elementary(&a3, 3).unwrap());
        assert!(!is_p_elementary(&a3, 2).unwrap());
        assert!(is_p_elementary(&d4, 2).unwrap());
    }

    #[test]
    fn index_relation() {
        let g = |d: i64| {
            let mut m = IntMatrix::identity(8);
            m.set(0, 0, int(d));
            IntegerLattice::new(m).unwrap()
        };
        assert!(index_relation_check(&g(-16), &g(-4), &int(2)).unwrap());
        assert!(!index_relation_check(&g(-16), &g(-1), &int(2)).unwrap());
        assert!(index_relation_check(&g(-16), &g(-16), &int(1)).unwrap());
        let a1 = make_root_lattice(RootKind::A, 1).unwrap();
        assert!(index_relation_check(&a1, &g(-16), &int(1)).is_err());
    }

    #[test]
    fn signature_with_zero_diagonal() {
        let m = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -2]]);
        assert_eq!(signature_of(&m).unwrap(), (1, 2));
        let zero_first = IntMatrix::from_rows(&[vec![0, 0, 1], vec![0, -2, 0], vec![1, 0, 0]]);
        assert_eq!(signature_of(&zero_first).unwrap(), (1, 2));
    }

    #[test]
    fn rejects_bad_gram() {
        let asym = IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        assert!(IntegerLattice::new(asym).is_err());
        let degenerate = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(IntegerLattice::new(degenerate), Err(Error::Degenerate));
    }

    #[test]
    fn json_round_trip() {
        let l = make_root_lattice(RootKind::A, 2).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"rank":2,"gram":[["-2","1"],["1","-2"]]}"#);
        let back: IntegerLattice = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<IntegerLattice>(r#"{"rank":3,"gram":[["1"]]}"#).is_err());
    }
}
