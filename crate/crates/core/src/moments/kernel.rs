use num_complex::Complex64;
use serde::Serialize;

use super::data::{riesz_apply, MomentData};
use super::MomentsError;
use crate::algebra::StarIndex;
use crate::linalg::{psd_verdict, CMatrix};
use crate::sos::SquareList;

/// The most negative 2×2 principal minor of a kernel section.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinorWitness {
    pub s: Vec<i64>,
    pub t: Vec<i64>,
    pub determinant: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelCheck {
    pub pass: bool,
    pub min_eigenvalue: f64,
    /// Eigenvalues at or above `-threshold` count as nonnegative.
    pub threshold: f64,
    pub minor: Option<MinorWitness>,
}

/// The section `K(s, t) = c_{s + t*}` for `s, t` in `section`.
///
/// Planar indices give `((m, n), (p, q)) ↦ (m + q, n + p)`; multi-indices
/// give the Toeplitz form `α - β`.
pub fn kernel_matrix<K: StarIndex>(data: &MomentData<K>, section: &[K]) -> Result<CMatrix, MomentsError> {
    let n = section.len();
    let mut k = CMatrix::zeros(n, n);
    for (r, s) in section.iter().enumerate() {
        for (c, t) in section.iter().enumerate() {
            let idx = s.combine(&t.star());
            k[(r, c)] = data.get(&idx).ok_or_else(|| MomentsError::MissingKernelEntry {
                s: s.coords(),
                t: t.coords(),
                index: idx.coords(),
            })?;
        }
    }
    Ok(k)
}

pub fn kernel_psd_check<K: StarIndex>(data: &MomentData<K>, section: &[K], tol: f64) -> Result<KernelCheck, MomentsError> {
    let k = kernel_matrix(data, section)?;
    let (pass, min_eigenvalue, threshold) = psd_verdict(&k, tol);
    let mut minor: Option<MinorWitness> = None;
    for a in 0..section.len() {
        for b in a + 1..section.len() {
            let det = (k[(a, a)] * k[(b, b)] - k[(a, b)] * k[(b, a)]).re;
            if det < 0.0 && minor.as_ref().is_none_or(|m| det < m.determinant) {
                minor = Some(MinorWitness { s: section[a].coords(), t: section[b].coords(), determinant: det });
            }
        }
    }
    Ok(KernelCheck { pass, min_eigenvalue, threshold, minor })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateCheck {
    pub pass: bool,
    pub value: Complex64,
}

/// Evaluates `Λ(Σ |q_j|²)`; passes when the value is real and `>= -tol`.
pub fn certificate_positivity_check<K: StarIndex>(
    data: &MomentData<K>,
    squares: &SquareList<K>,
    tol: f64,
) -> Result<CertificateCheck, MomentsError> {
    let p = squares.sum_of_squares();
    let escaping: Vec<Vec<i64>> = p.support().filter(|s| !data.system.contains(s)).map(StarIndex::coords).collect();
    if !escaping.is_empty() {
        return Err(MomentsError::CertificateOutOfCone { escaping });
    }
    let value = riesz_apply(data, &p)?;
    Ok(CertificateCheck { pass: value.re >= -tol && value.im.abs() <= tol, value })
}
