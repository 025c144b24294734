//! Sum-of-squares machinery: Gram certificates, a PSD-cone feasibility
//! search, univariate Fejér–Riesz factorization and negativity witnesses.

mod feasibility;
mod fejer_riesz;
mod gram;
mod witness;

pub use feasibility::{sos_feasibility, FeasibilityOptions, FeasibilityReport};
pub use fejer_riesz::{aberth_roots, fejer_riesz};
pub use gram::{expand_certificate, gram_to_squares, squares_to_gram, GramCertificate, SquareList};
pub use witness::sumk_witness;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::MonomialIndex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SosError {
    #[error("Gram matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    #[error("Gram matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    GramNotHermitian { asymmetry: f64 },
    #[error("Gram matrix is {rows}x{cols} for a basis of {basis} monomials")]
    GramShape { rows: usize, cols: usize, basis: usize },
    #[error("basis contains a repeated monomial")]
    DuplicateBasis,
    #[error("square {position} has support outside the square cone")]
    SquareOutsideCone { position: usize },
    #[error("target is not Hermitian")]
    TargetNotHermitian,
    #[error("basis cannot express target indices {uncovered:?}")]
    BasisCannotExpress { uncovered: Vec<MonomialIndex> },
    #[error("Fejér–Riesz factorization is univariate; got dimension {dim}")]
    UnsupportedDimension { dim: usize },
    #[error("polynomial is not real on the circle")]
    NotRealOnCircle,
    #[error("polynomial takes value {value:e} at {point} on the circle")]
    NotNonnegativeOnCircle { point: Complex64, value: f64 },
    #[error("negative constant {value}")]
    DegreeZeroNegative { value: f64 },
    #[error("root finder did not converge")]
    RootFindingFailed,
}
