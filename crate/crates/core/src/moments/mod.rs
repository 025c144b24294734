//! Truncated moment data, Riesz functionals and finite-section positivity
//! checks, together with measure moments, explicit measure constructions,
//! counterexample generators and difference-set tools.

mod construct;
mod data;
mod diffset;
mod generators;
mod kernel;
mod measure;

pub use construct::{
    havi_construct, havi_moments, havi_riesz, lambda2_condition_b, lambda2new_construct, stieltjes_diagonal,
    theta_split, ConditionB, HaviPair, StieltjesReport,
};
pub use data::{riesz_apply, MomentData};
pub use diffset::{difference_set, is_difference_set, quadrant_lambda, quadrant_target, DiffSetResult};
pub use generators::{
    annulus_truncation, gen_annulus, gen_dziury, gen_kael, gen_symmetry_break, pair_section, SymmetryBreak,
};
pub use kernel::{
    certificate_positivity_check, kernel_matrix, kernel_psd_check, CertificateCheck, KernelCheck, MinorWitness,
};
pub use measure::{measure_moments, torus_moments, Atom, AtomicMeasure, Measure, RadialDensityMeasure, Ray, RayMeasure, TorusAtom, TorusMeasure};

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{AlgebraError, MonomialIndex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MomentsError {
    #[error("polynomial support {missing:?} is outside the truncation")]
    SupportNotCovered { missing: Vec<Vec<i64>> },
    #[error("kernel entry ({s:?}, {t:?}) needs the missing moment {index:?}")]
    MissingKernelEntry { s: Vec<i64>, t: Vec<i64>, index: Vec<i64> },
    #[error("missing moment {index:?}")]
    MissingMoment { index: Vec<i64> },
    #[error("certificate produces indices {escaping:?} outside the truncation")]
    CertificateOutOfCone { escaping: Vec<Vec<i64>> },
    #[error("moment {index:?} is not summable for this measure")]
    NonSummableMoment { index: MonomialIndex },
    #[error("indices {indices:?} lie below the shift k = {k}")]
    SupportBelowShift { indices: Vec<MonomialIndex>, k: i64 },
    #[error("|θ| = {modulus} exceeds 1")]
    ModulusExceedsOne { modulus: f64 },
    #[error("|c_kl| = {value} exceeds the bound {bound}")]
    InequalityViolated { value: f64, bound: f64 },
    #[error("l - k = {gap} must be even")]
    OddGap { gap: i64 },
    #[error("truncation contains (0, 0)")]
    ZeroIndexPresent,
    #[error("parameters out of bounds: {reason}")]
    BoundsViolated { reason: String },
    #[error("atom {point} lies outside the region (|z^j - λ| = {distance})")]
    AtomOutsideRegion { point: Complex64, distance: f64 },
    #[error("invalid measure: {reason}")]
    InvalidMeasure { reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
