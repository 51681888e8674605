//! Integer matrices preserving a Gram form.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{det_exact, inverse_rational, IntMatrix};

/// A matrix `M` with `MᵀGM = G`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryMatrix {
    matrix: IntMatrix,
    gram: Arc<IntMatrix>,
}

impl IsometryMatrix {
    /// Fails with a consistency error unless `MᵀGM = G`.
    pub fn new(matrix: IntMatrix, gram: Arc<IntMatrix>) -> Result<Self> {
        if matrix.rows() != gram.rows() || matrix.cols() != gram.cols() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix against a rank {} form",
                matrix.rows(),
                matrix.cols(),
                gram.rows()
            )));
        }
        let pulled = matrix
            .transpose()
            .checked_mul(&gram)?
            .checked_mul(&matrix)?;
        if pulled != *gram {
            return Err(Error::Consistency(
                "matrix does not preserve the intersection form".into(),
            ));
        }
        Ok(IsometryMatrix { matrix, gram })
    }

    pub fn identity(gram: Arc<IntMatrix>) -> Self {
        IsometryMatrix {
            matrix: IntMatrix::identity(gram.rows()),
            gram,
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn gram(&self) -> &Arc<IntMatrix> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    /// `self · other`, i.e. apply `other` first.
    pub fn compose(&self, other: &IsometryMatrix) -> Result<IsometryMatrix> {
        if self.gram != other.gram && *self.gram != *other.gram {
            return Err(Error::InvalidInput(
                "isometries of different lattices".into(),
            ));
        }
        IsometryMatrix::new(self.matrix.checked_mul(&other.matrix)?, self.gram.clone())
    }

    /// The inverse, which is integral because `det M = ±1`.
    pub fn inverse(&self) -> Result<IsometryMatrix> {
        let inv = inverse_rational(&self.matrix)?
            .to_integral()
            .ok_or_else(|| Error::Consistency("isometry with non-integral inverse".into()))?;
        IsometryMatrix::new(inv, self.gram.clone())
    }

    pub fn det(&self) -> Result<BigInt> {
        let d = det_exact(&self.matrix)?;
        if !d.abs().eq(&BigInt::from(1)) {
            return Err(Error::Consistency(format!("isometry with determinant {d}")));
        }
        Ok(d)
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.matrix.mul_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.rank())
    }
}

impl Serialize for IsometryMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Arc<IntMatrix> {
        Arc::new(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]))
    }

    #[test]
    fn swap_preserves_hyperbolic_plane() {
        let swap =
            IsometryMatrix::new(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]), u()).unwrap();
        assert!(swap.compose(&swap).unwrap().is_identity());
        assert_eq!(swap.det().unwrap(), BigInt::from(-1));
        assert_eq!(swap.inverse().unwrap(), swap);
    }

    #[test]
    fn rejects_non_isometry() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(matches!(
            IsometryMatrix::new(m, u()),
            Err(Error::Consistency(_))
        ));
    }
}
