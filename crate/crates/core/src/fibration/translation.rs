//! Translation by a section as an isometry of the lattice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::{
    gram_of, reduce_to_section, ComponentGroup, FibrationData, KodairaFiber, SectionClass,
};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, RationalMatrix};
use crate::isometry::IsometryMatrix;
use crate::ns::DivisorClass;

/// The translation `⊕S` with its action on classes in both directions.
#[derive(Clone, Debug, Serialize)]
pub struct Translation {
    pub section: SectionClass,
    /// `(⊕S)_*`, the pushforward, sending `O` to `S`.
    pub pushforward: IsometryMatrix,
    /// `(⊕S)^* = (⊕S)_*⁻¹`.
    pub pullback: IsometryMatrix,
}

/// Builds `(⊕S)_*` from its action on a spanning set: `O ↦ S`, `F ↦ F`,
/// fiber components permuted by the diagram automorphism that realises
/// translation by the component `S` meets, and further sections
/// `T ↦ T ⊕ S`. The result is checked to be integral and an isometry.
pub fn translation_isometry(s: &SectionClass, f: &FibrationData) -> Result<Translation> {
    let dim = f.dim();
    let mut basis = vec![f.zero_section.clone(), f.fiber_class.clone()];
    let mut images = vec![s.class.clone(), f.fiber_class.clone()];
    for (k, fiber) in f.fibers.iter().enumerate() {
        let perm = component_translation(f, fiber, s.components[k])?;
        for (i, c) in fiber.nonzero_components() {
            basis.push(c.class.clone());
            images.push(fiber.components[perm[i]].class.clone());
        }
    }
    let rank_of = |vs: &[DivisorClass]| -> usize {
        let cols: Vec<Vec<BigRational>> = vs
            .iter()
            .map(|v| {
                v.coords()
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect()
            })
            .collect();
        RationalMatrix::from_columns(&cols)
            .map(|m| m.rank())
            .unwrap_or(0)
    };
    let mut rank = rank_of(&basis);
    if rank != basis.len() {
        return Err(Error::Consistency(format!(
            "trivial lattice of {} is degenerate",
            f.name
        )));
    }
    let shift = &s.class - &f.zero_section;
    let candidates = (0..dim)
        .map(|i| DivisorClass::unit(dim, i))
        .chain((0..dim).map(|i| &DivisorClass::unit(dim, i) + &f.zero_section));
    for d in candidates {
        if rank == dim {
            break;
        }
        if f.dot(&d, &f.fiber_class) < BigInt::one() {
            continue;
        }
        let Ok(t) = reduce_to_section(&d, f) else {
            continue;
        };
        basis.push(t.class.clone());
        let r = rank_of(&basis);
        if r > rank {
            rank = r;
            images.push(reduce_to_section(&(&t.class + &shift), f)?.class);
        } else {
            basis.pop();
        }
    }
    if rank != dim {
        return Err(Error::Consistency(format!(
            "sections and fiber components of {} span only rank {rank}",
            f.name
        )));
    }
    let to_cols = |vs: &[DivisorClass]| -> Result<IntMatrix> {
        IntMatrix::from_columns(&vs.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>())
    };
    let b = to_cols(&basis)?.to_rational();
    let im = to_cols(&images)?.to_rational();
    let m = im
        .checked_mul(&b.inverse()?)?
        .to_integral()
        .ok_or_else(|| Error::Consistency("translation matrix is not integral".into()))?;
    let pushforward = IsometryMatrix::new(m, f.gram().clone())?;
    if pushforward.apply(f.fiber_class.coords())? != f.fiber_class.coords() {
        return Err(Error::Consistency(
            "translation moves the fiber class".into(),
        ));
    }
    let pullback = pushforward.inverse()?;
    Ok(Translation {
        section: s.clone(),
        pushforward,
        pullback,
    })
}

/// Permutation of the fiber's components induced by translating with a
/// section through component `target`: an automorphism of the dual graph
/// (with multiplicities) moving the zero component to `target`. Among such
/// automorphisms it is the one acting on the simple components as the
/// component group acts on itself.
fn component_translation(
    f: &FibrationData,
    fiber: &KodairaFiber,
    target: usize,
) -> Result<Vec<usize>> {
    let m = fiber.components.len();
    let z = fiber.zero_component;
    if target == z {
        return Ok((0..m).collect());
    }
    if let Some(shift) = fiber.cycle_position(target) {
        let mut by_pos = vec![0; m];
        for i in 0..m {
            by_pos[fiber.cycle_position(i).expect("cycle fiber")] = i;
        }
        return Ok((0..m)
            .map(|i| by_pos[(fiber.cycle_position(i).expect("cycle fiber") + shift) % m])
            .collect());
    }
    let classes: Vec<DivisorClass> = fiber.components.iter().map(|c| c.class.clone()).collect();
    let g = gram_of(f.gram(), &classes);
    let mults: Vec<u32> = fiber.components.iter().map(|c| c.multiplicity).collect();
    let mut all = Vec::new();
    let mut perm = Vec::with_capacity(m);
    let mut used = vec![false; m];
    automorphisms(&g, &mults, z, target, &mut perm, &mut used, &mut all);

    let simple = fiber.simple_components();
    let involutive = matches!(
        fiber.component_group(),
        ComponentGroup::Klein | ComponentGroup::Cyclic(2)
    );
    let candidates: Vec<Vec<usize>> = all
        .into_iter()
        .filter(|p| simple.iter().all(|&i| p[i] != i))
        .filter(|p| !involutive || (0..m).all(|i| p[p[i]] == i))
        .collect();
    match candidates.as_slice() {
        [p] => Ok(p.clone()),
        _ => Err(Error::Consistency(format!(
            "{} candidate component permutations for the {} fiber at {}",
            candidates.len(),
            fiber.kodaira,
            fiber.position
        ))),
    }
}

fn automorphisms(
    g: &IntMatrix,
    mults: &[u32],
    z: usize,
    target: usize,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let i = perm.len();
    let m = mults.len();
    if i == m {
        out.push(perm.clone());
        return;
    }
    for j in 0..m {
        if used[j] || mults[j] != mults[i] || (i == z && j != target) {
            continue;
        }
        if (0..i).any(|k| g.get(i, k) != g.get(j, perm[k])) {
            continue;
        }
        perm.push(j);
        used[j] = true;
        automorphisms(g, mults, z, target, perm, used, out);
        used[j] = false;
        perm.pop();
    }
}

impl Translation {
    pub fn is_identity(&self) -> bool {
        self.pushforward.is_identity()
    }
}
