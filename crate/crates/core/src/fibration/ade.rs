//! Extended Dynkin configurations of (−2)-curves and the elliptic pencils
//! they define.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{Component, FiberSpec, FibrationData, KodairaType};
use crate::error::{Error, Result};
use crate::lattice::RootKind;
use crate::ns::{CurveGraph, DivisorClass};

/// Affine root systems; the number is the rank of the finite part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineKind {
    A(usize),
    D(usize),
    E(usize),
}

impl AffineKind {
    pub fn kodaira(self) -> KodairaType {
        match self {
            AffineKind::A(n) => KodairaType::I(n as u32 + 1),
            AffineKind::D(n) => KodairaType::IStar(n as u32 - 4),
            AffineKind::E(6) => KodairaType::IVStar,
            AffineKind::E(7) => KodairaType::IIIStar,
            AffineKind::E(_) => KodairaType::IIStar,
        }
    }
}

impl fmt::Display for AffineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineKind::A(n) => write!(f, "~A{n}"),
            AffineKind::D(n) => write!(f, "~D{n}"),
            AffineKind::E(n) => write!(f, "~E{n}"),
        }
    }
}

impl Serialize for AffineKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynkinShape {
    Finite(RootKind, usize),
    Affine(AffineKind),
    Neither,
}

/// Shape of a connected graph given by its symmetric weight matrix
/// (intersection numbers between distinct curves).
pub fn classify_dynkin_shape(w: &[Vec<u32>]) -> DynkinShape {
    let k = w.len();
    if k == 1 {
        return DynkinShape::Finite(RootKind::A, 1);
    }
    let mut edges = 0;
    for i in 0..k {
        for j in i + 1..k {
            match w[i][j] {
                0 => {}
                1 => edges += 1,
                2 if k == 2 => return DynkinShape::Affine(AffineKind::A(1)),
                _ => return DynkinShape::Neither,
            }
        }
    }
    let deg: Vec<usize> = (0..k)
        .map(|i| (0..k).filter(|&j| w[i][j] > 0).count())
        .collect();
    if edges == k {
        return if deg.iter().all(|&d| d == 2) {
            DynkinShape::Affine(AffineKind::A(k - 1))
        } else {
            DynkinShape::Neither
        };
    }
    if edges != k - 1 {
        return DynkinShape::Neither;
    }
    let branch: Vec<usize> = (0..k).filter(|&i| deg[i] >= 3).collect();
    match branch.as_slice() {
        [] => DynkinShape::Finite(RootKind::A, k),
        [b] if deg[*b] == 4 => {
            if k == 5 {
                DynkinShape::Affine(AffineKind::D(4))
            } else {
                DynkinShape::Neither
            }
        }
        [b] if deg[*b] == 3 => {
            let mut arms: Vec<usize> = (0..k)
                .filter(|&j| w[*b][j] > 0)
                .map(|start| arm_length(w, *b, start))
                .collect();
            arms.sort_unstable();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => DynkinShape::Finite(RootKind::D, k),
                (1, 2, 2) => DynkinShape::Finite(RootKind::E, 6),
                (1, 2, 3) => DynkinShape::Finite(RootKind::E, 7),
                (1, 2, 4) => DynkinShape::Finite(RootKind::E, 8),
                (2, 2, 2) => DynkinShape::Affine(AffineKind::E(6)),
                (1, 3, 3) => DynkinShape::Affine(AffineKind::E(7)),
                (1, 2, 5) => DynkinShape::Affine(AffineKind::E(8)),
                _ => DynkinShape::Neither,
            }
        }
        [a, b] if deg[*a] == 3 && deg[*b] == 3 => {
            let leaves = |v: usize| (0..k).filter(|&j| w[v][j] > 0 && deg[j] == 1).count();
            if leaves(*a) == 2 && leaves(*b) == 2 {
                DynkinShape::Affine(AffineKind::D(k - 1))
            } else {
                DynkinShape::Neither
            }
        }
        _ => DynkinShape::Neither,
    }
}

fn arm_length(w: &[Vec<u32>], center: usize, start: usize) -> usize {
    let k = w.len();
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next: Vec<usize> = (0..k).filter(|&j| j != prev && w[cur][j] > 0).collect();
        match next.as_slice() {
            [n] => {
                prev = cur;
                cur = *n;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// An extended Dynkin configuration of curves with its fiber class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdeConfig {
    pub kind: AffineKind,
    /// Indices into the curve graph.
    pub vertices: Vec<usize>,
    pub labels: Vec<String>,
    pub marks: Vec<u32>,
    #[serde(rename = "fiberClass")]
    pub fiber_class: DivisorClass,
}

impl AdeConfig {
    pub fn kodaira(&self) -> KodairaType {
        self.kind.kodaira()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }
}

fn weights(g: &CurveGraph, vs: &[usize]) -> Vec<Vec<u32>> {
    vs.iter()
        .map(|&a| {
            vs.iter()
                .map(|&b| {
                    if a == b {
                        0
                    } else {
                        g.weight(a, b).to_u32().unwrap_or(u32::MAX)
                    }
                })
                .collect()
        })
        .collect()
}

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// All connected vertex sets whose dual graph is an extended Dynkin diagram,
/// sorted by size and then by vertex indices.
pub fn find_ade_configurations(g: &CurveGraph) -> Result<Vec<AdeConfig>> {
    let n = g.len();
    if n > 64 {
        return Err(Error::Unsupported(format!("curve graph with {n} vertices")));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut stack: Vec<u64> = Vec::new();
    let mut found = Vec::new();
    for v in 0..n {
        let m = 1u64 << v;
        seen.insert(m);
        stack.push(m);
    }
    while let Some(mask) = stack.pop() {
        let frontier = members(mask).iter().fold(0u64, |acc, &v| acc | adj[v]) & !mask;
        for u in members(frontier) {
            let next = mask | 1 << u;
            if !seen.insert(next) {
                continue;
            }
            let vs = members(next);
            match classify_dynkin_shape(&weights(g, &vs)) {
                DynkinShape::Finite(..) => stack.push(next),
                DynkinShape::Affine(kind) => found.push((kind, vs)),
                DynkinShape::Neither => {}
            }
        }
    }
    found.sort_by(|a, b| (a.1.len(), &a.1).cmp(&(b.1.len(), &b.1)));
    found
        .into_iter()
        .map(|(kind, vs)| config_from(g, kind, vs))
        .collect()
}

fn config_from(g: &CurveGraph, kind: AffineKind, vertices: Vec<usize>) -> Result<AdeConfig> {
    let marks = kernel_marks(&weights(g, &vertices))?;
    let dim = g.vertices[vertices[0]].class.dim();
    let fiber_class = vertices
        .iter()
        .zip(&marks)
        .fold(DivisorClass::zero(dim), |acc, (&v, &m)| {
            &acc + &g.vertices[v].class.scale_i64(m.into())
        });
    Ok(AdeConfig {
        kind,
        labels: vertices
            .iter()
            .map(|&v| g.vertices[v].label.clone())
            .collect(),
        vertices,
        marks,
        fiber_class,
    })
}

/// Primitive positive vector spanning the kernel of `−2·I + w`.
fn kernel_marks(w: &[Vec<u32>]) -> Result<Vec<u32>> {
    let k = w.len();
    let mut a: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let v = if i == j { -2 } else { i64::from(w[i][j]) };
                    BigRational::from_integer(BigInt::from(v))
                })
                .collect()
        })
        .collect();
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..k).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..k {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..k {
                    let d = &f * &a[row][c];
                    a[r][c] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    let [f] = free.as_slice() else {
        return Err(Error::Consistency(format!(
            "affine diagram with a {}-dimensional kernel",
            free.len()
        )));
    };
    let mut v = vec![BigRational::zero(); k];
    v[*f] = BigRational::one();
    for (r, &p) in pivots.iter().enumerate() {
        v[p] = -a[r][*f].clone();
    }
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if ints[0].is_negative() { -g } else { g };
    ints.iter()
        .map(|x| {
            (x / &sign)
                .to_u32()
                .filter(|&m| m > 0)
                .ok_or_else(|| Error::Consistency("affine diagram with a non-positive mark".into()))
        })
        .collect()
}

/// The highest root of a finite Dynkin configuration, as coefficients on
/// its vertices: start from one simple root and keep adding simple roots it
/// pairs positively with (negative definite convention).
fn highest_root(w: &[Vec<u32>]) -> Vec<i64> {
    let k = w.len();
    let pair = |theta: &[i64], i: usize| -> i64 {
        (0..k)
            .map(|j| theta[j] * if i == j { -2 } else { i64::from(w[i][j]) })
            .sum()
    };
    let mut theta = vec![0; k];
    theta[0] = 1;
    while let Some(i) = (0..k).find(|&i| pair(&theta, i) > 0) {
        theta[i] += 1;
    }
    theta
}

/// Turns an extended Dynkin configuration into an elliptic fibration with
/// fiber class `F′ = Σ mᵢCᵢ`. Other curves with `C·F′ = 0` form further
/// fibers; a finite Dynkin diagram among them is completed by one unseen
/// component `F′ − θ`, with `θ` its highest root. The zero section is the
/// curve named `zero_label`, or the first curve with `C·F′ = 1` if none is
/// given.
pub fn induce_fibration(
    name: &str,
    config: &AdeConfig,
    g: &CurveGraph,
    gram: std::sync::Arc<crate::exact::IntMatrix>,
    zero_label: Option<&str>,
    chi: u32,
) -> Result<FibrationData> {
    let f = &config.fiber_class;
    let dot = |a: &DivisorClass, b: &DivisorClass| -> BigInt {
        gram.bilinear(a.coords(), b.coords()).expect("same rank")
    };
    let degree = |v: usize| dot(&g.vertices[v].class, f);
    let zero = match zero_label {
        Some(label) => {
            let v = g
                .find(label)
                .ok_or_else(|| Error::InvalidInput(format!("no curve named {label:?}")))?;
            if !degree(v).is_one() {
                return Err(Error::Precondition(format!(
                    "{label} has degree {} on the pencil, not 1",
                    degree(v)
                )));
            }
            v
        }
        None => (0..g.len()).find(|&v| degree(v).is_one()).ok_or_else(|| {
            Error::Precondition(format!("pencil {} without known section", config.kind))
        })?,
    };

    let mut fibers = vec![FiberSpec {
        kodaira: config.kodaira(),
        position: "v1".into(),
        components: config
            .vertices
            .iter()
            .zip(&config.marks)
            .map(|(&v, &m)| {
                Component::new(g.vertices[v].label.clone(), g.vertices[v].class.clone(), m)
            })
            .collect(),
    }];

    let rest: Vec<usize> = (0..g.len())
        .filter(|v| !config.vertices.contains(v) && degree(*v).is_zero())
        .collect();
    let mut unvisited: Vec<usize> = rest.clone();
    while let Some(&start) = unvisited.first() {
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            for u in g.neighbors(comp[i]) {
                if rest.contains(&u) && !comp.contains(&u) {
                    comp.push(u);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        unvisited.retain(|v| !comp.contains(v));
        let w = weights(g, &comp);
        let position = format!("v{}", fibers.len() + 1);
        let (kodaira, components) = match classify_dynkin_shape(&w) {
            DynkinShape::Affine(kind) => {
                let marks = kernel_marks(&w)?;
                let cs = comp
                    .iter()
                    .zip(&marks)
                    .map(|(&v, &m)| {
                        Component::new(g.vertices[v].label.clone(), g.vertices[v].class.clone(), m)
                    })
                    .collect();
                (kind.kodaira(), cs)
            }
            DynkinShape::Finite(kind, rank) => {
                let theta = highest_root(&w);
                let theta_class = comp
                    .iter()
                    .zip(&theta)
                    .fold(DivisorClass::zero(f.dim()), |acc, (&v, &t)| {
                        &acc + &g.vertices[v].class.scale_i64(t)
                    });
                let hidden = f - &theta_class;
                if dot(&hidden, &hidden) != BigInt::from(-2) {
                    return Err(Error::Consistency(format!(
                        "completing {kind}{rank} in {name} gives a class of square {}",
                        dot(&hidden, &hidden)
                    )));
                }
                let mut cs: Vec<Component> = comp
                    .iter()
                    .zip(&theta)
                    .map(|(&v, &t)| {
                        Component::new(
                            g.vertices[v].label.clone(),
                            g.vertices[v].class.clone(),
                            t as u32,
                        )
                    })
                    .collect();
                cs.push(Component::new(
                    format!("{name}.hidden{}", fibers.len() + 1),
                    hidden,
                    1,
                ));
                let kodaira = match (kind, rank) {
                    (RootKind::A, r) => KodairaType::I(r as u32 + 1),
                    (RootKind::D, r) => KodairaType::IStar(r as u32 - 4),
                    (RootKind::E, 6) => KodairaType::IVStar,
                    (RootKind::E, 7) => KodairaType::IIIStar,
                    (RootKind::E, _) => KodairaType::IIStar,
                };
                (kodaira, cs)
            }
            DynkinShape::Neither => {
                return Err(Error::Consistency(format!(
                    "curves orthogonal to the fiber of {name} are not a Dynkin configuration"
                )))
            }
        };
        fibers.push(FiberSpec {
            kodaira,
            position,
            components,
        });
    }

    FibrationData::new(
        name,
        gram.clone(),
        f.clone(),
        g.vertices[zero].label.clone(),
        g.vertices[zero].class.clone(),
        fibers,
        chi,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(k: usize) -> Vec<Vec<u32>> {
        (0..k)
            .map(|i| (0..k).map(|j| u32::from(i.abs_diff(j) == 1)).collect())
            .collect()
    }

    fn tree(edges: &[(usize, usize)], k: usize) -> Vec<Vec<u32>> {
        let mut w = vec![vec![0; k]; k];
        for &(a, b) in edges {
            w[a][b] = 1;
            w[b][a] = 1;
        }
        w
    }

    #[test]
    fn shapes() {
        assert_eq!(
            classify_dynkin_shape(&path(4)),
            DynkinShape::Finite(RootKind::A, 4)
        );
        let mut cyc = path(5);
        cyc[0][4] = 1;
        cyc[4][0] = 1;
        assert_eq!(
            classify_dynkin_shape(&cyc),
            DynkinShape::Affine(AffineKind::A(4))
        );
        let d4 = tree(&[(0, 1), (0, 2), (0, 3), (0, 4)], 5);
        assert_eq!(
            classify_dynkin_shape(&d4),
            DynkinShape::Affine(AffineKind::D(4))
        );
        let e7 = tree(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)], 8);
        assert_eq!(
            classify_dynkin_shape(&e7),
            DynkinShape::Affine(AffineKind::E(7))
        );
        let e6 = tree(&[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)], 7);
        assert_eq!(
            classify_dynkin_shape(&e6),
            DynkinShape::Affine(AffineKind::E(6))
        );
        let d5 = tree(&[(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)], 6);
        assert_eq!(
            classify_dynkin_shape(&d5),
            DynkinShape::Affine(AffineKind::D(5))
        );
        let finite_e6 = tree(&[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)], 6);
        assert_eq!(
            classify_dynkin_shape(&finite_e6),
            DynkinShape::Finite(RootKind::E, 6)
        );
        assert_eq!(
            classify_dynkin_shape(&[vec![0, 2], vec![2, 0]]),
            DynkinShape::Affine(AffineKind::A(1))
        );
        assert_eq!(
            classify_dynkin_shape(&[vec![0, 3], vec![3, 0]]),
            DynkinShape::Neither
        );
    }

    #[test]
    fn marks_and_highest_roots() {
        let e7 = tree(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)], 8);
        assert_eq!(kernel_marks(&e7).unwrap(), vec![1, 2, 3, 4, 3, 2, 1, 2]);
        let d4 = tree(&[(0, 1), (0, 2), (0, 3), (0, 4)], 5);
        assert_eq!(kernel_marks(&d4).unwrap(), vec![2, 1, 1, 1, 1]);
        assert_eq!(highest_root(&path(3)), vec![1, 1, 1]);
        // E6 in Bourbaki order 1-3-4-5-6 with 2 on 4: highest root 1,2,2,3,2,1
        let e6 = tree(&[(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)], 6);
        assert_eq!(highest_root(&e6), vec![1, 2, 2, 3, 2, 1]);
    }
}
