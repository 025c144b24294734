//! Certificate-driven positivity checks for operator tuples: unitary power
//! dilations and subnormality, at matrix scale.

mod checks;
mod system;

pub use checks::{
    bram_system, certificate_to_coefficients, contraction_certificate, dilation_block_check, dilation_block_matrix,
    subnormal_block_check, subnormal_block_matrix, BlockCheck,
};
pub use system::OperatorCoefficientSystem;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::ZkIndex;
use crate::linalg::CMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("multi-index {alpha:?} mixes signs")]
    MixedSignMultiIndex { alpha: Vec<i64> },
    #[error("multi-index {alpha:?} has the wrong length for a {kappa}-tuple")]
    IndexDimension { alpha: Vec<i64>, kappa: usize },
    #[error("operator tuple must be non-empty with square matrices of one size")]
    InvalidTuple,
    #[error("block matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("entry ({row}, {col}) of the certificate is outside the analytic cone")]
    EntryOutsideCone { row: usize, col: usize },
    #[error("certificate rows have different lengths")]
    RaggedCertificate,
    #[error("block index {index} outside 1..={m}")]
    BlockIndex { index: usize, m: usize },
    #[error("exponent pair ({p}, {q}) has a negative entry")]
    NegativeExponent { p: i64, q: i64 },
    #[error("coordinate {r} outside 1..={kappa}")]
    Coordinate { r: usize, kappa: usize },
}

/// A tuple `(A_1, ..., A_κ)` of square matrices of a common size.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTuple {
    matrices: Vec<CMatrix>,
}

impl OperatorTuple {
    pub fn new(matrices: Vec<CMatrix>) -> Result<Self, OperatorError> {
        let d = matrices.first().map(|m| m.nrows()).ok_or(OperatorError::InvalidTuple)?;
        if matrices.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(OperatorError::InvalidTuple);
        }
        Ok(OperatorTuple { matrices })
    }

    pub fn single(a: CMatrix) -> Result<Self, OperatorError> {
        OperatorTuple::new(vec![a])
    }

    pub fn kappa(&self) -> usize {
        self.matrices.len()
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }
}

/// `A^{[α]}`: `A_1^{α_1} ⋯ A_κ^{α_κ}` on `Z+^κ`, and the same product of
/// adjoint powers `A_1^{*|α_1|} ⋯` on `Z-^κ`.
pub fn power_word(a: &OperatorTuple, alpha: &ZkIndex) -> Result<CMatrix, OperatorError> {
    if alpha.dim() != a.kappa() {
        return Err(OperatorError::IndexDimension { alpha: alpha.0.clone(), kappa: a.kappa() });
    }
    let adjoint = if alpha.is_nonnegative() {
        false
    } else if alpha.is_nonpositive() {
        true
    } else {
        return Err(OperatorError::MixedSignMultiIndex { alpha: alpha.0.clone() });
    };
    let mut out = CMatrix::identity(a.dim(), a.dim());
    for (m, &e) in a.matrices.iter().zip(&alpha.0) {
        let base = if adjoint { m.adjoint() } else { m.clone() };
        for _ in 0..e.unsigned_abs() {
            out *= &base;
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct TupleRepr {
    kappa: usize,
    dim: usize,
    matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

impl Serialize for OperatorTuple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TupleRepr {
            kappa: self.kappa(),
            dim: self.dim(),
            matrices: self
                .matrices
                .iter()
                .map(|m| m.row_iter().map(|r| r.iter().map(|c| [c.re, c.im]).collect()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = TupleRepr::deserialize(d)?;
        if repr.matrices.len() != repr.kappa {
            return Err(D::Error::custom(format!("expected {} matrices, found {}", repr.kappa, repr.matrices.len())));
        }
        let mut matrices = Vec::with_capacity(repr.kappa);
        for rows in repr.matrices {
            if rows.len() != repr.dim || rows.iter().any(|r| r.len() != repr.dim) {
                return Err(D::Error::custom(format!("matrix is not {0}x{0}", repr.dim)));
            }
            matrices.push(CMatrix::from_fn(repr.dim, repr.dim, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1])));
        }
        OperatorTuple::new(matrices).map_err(D::Error::custom)
    }
}
