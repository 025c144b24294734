//! Polynomials with involution over the concrete *-semigroups.

mod dyadic;
mod index;
mod point;
mod poly;
mod system;
mod transform;

pub use dyadic::{basis_tables, composition_tables, table_composition, DyadicGaussian, DyadicTable};
pub use index::{IndexClass, MonomialIndex, StarIndex, ZkIndex};
pub use point::{char_eval_nplus, common_root_order, is_determining_sample, separates_points_n, ExactPoint, Rotation};
pub use poly::{LaurentPoly, Poly, TrigPoly, PRUNE_REL};
pub use system::{symmetrize, CoefficientSystem};
pub use transform::{complex_to_real_moments, real_to_complex_moments, ExactSystem, GaussRational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("cannot evaluate z^{m} conj(z)^{n} at z = 0")]
    EvalAtZeroWithNegativePower { m: i64, n: i64 },
    #[error("point ({z}, {w}) is not a character of N+: {reason}")]
    InvalidCharacterPoint { z: num_complex::Complex64, w: num_complex::Complex64, reason: String },
    #[error("index ({m}, {n}) is not in N+ (m + n < 0)")]
    NotInNPlus { m: i64, n: i64 },
    #[error("{points} sample points cannot determine {monomials} monomials")]
    InsufficientSamplePoints { points: usize, monomials: usize },
    #[error("system is not symmetrizable: c{index:?} != conj(c{partner:?})")]
    NotSymmetrizable { index: MonomialIndex, partner: MonomialIndex },
    #[error("missing real moments {missing:?}")]
    MissingRealMoment { missing: Vec<MonomialIndex> },
    #[error("missing complex moments {missing:?}")]
    MissingComplexMoment { missing: Vec<MonomialIndex> },
    #[error("exponent vector of length {found} in a dimension-{expected} trigonometric polynomial")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("truncation and value keys differ")]
    TruncationMismatch,
}
