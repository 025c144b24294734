use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::system::OperatorCoefficientSystem;
use super::{power_word, OperatorError, OperatorTuple};
use crate::algebra::{MonomialIndex, Poly, StarIndex, ZkIndex};
use crate::linalg::{frobenius, max_asymmetry, psd_verdict, CMatrix};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockCheck {
    pub pass: bool,
    pub min_eigenvalue: f64,
    pub threshold: f64,
}

fn add_block(target: &mut CMatrix, d: usize, i: usize, j: usize, block: &CMatrix, c: Complex64) {
    let mut view = target.view_mut(((j - 1) * d, (i - 1) * d), (d, d));
    view += block * c;
}

/// `M` with block `(j, i) = Σ_α a_α^{i,j} A^{[α]}`.
pub fn dilation_block_matrix(a: &OperatorTuple, sys: &OperatorCoefficientSystem<ZkIndex>) -> Result<CMatrix, OperatorError> {
    let d = a.dim();
    let mut m = CMatrix::zeros(sys.m() * d, sys.m() * d);
    let mut words: BTreeMap<ZkIndex, CMatrix> = BTreeMap::new();
    for (alpha, i, j, c) in sys.iter() {
        if !words.contains_key(alpha) {
            words.insert(alpha.clone(), power_word(a, alpha)?);
        }
        add_block(&mut m, d, i, j, &words[alpha], c);
    }
    Ok(m)
}

/// `M` with block `(j, i) = Σ_{p,q} a_{p,q}^{i,j} S^{*q} S^p`.
pub fn subnormal_block_matrix(s: &CMatrix, sys: &OperatorCoefficientSystem<MonomialIndex>) -> Result<CMatrix, OperatorError> {
    let d = s.nrows();
    if s.ncols() != d {
        return Err(OperatorError::InvalidTuple);
    }
    let mut powers = vec![CMatrix::identity(d, d)];
    let mut m = CMatrix::zeros(sys.m() * d, sys.m() * d);
    for (pq, i, j, c) in sys.iter() {
        if pq.m < 0 || pq.n < 0 {
            return Err(OperatorError::NegativeExponent { p: pq.m, q: pq.n });
        }
        let need = pq.m.max(pq.n) as usize;
        while powers.len() <= need {
            let next = powers.last().unwrap() * s;
            powers.push(next);
        }
        let block = powers[pq.n as usize].adjoint() * &powers[pq.m as usize];
        add_block(&mut m, d, i, j, &block, c);
    }
    Ok(m)
}

fn verdict(m: &CMatrix, tol: f64) -> Result<BlockCheck, OperatorError> {
    let asymmetry = max_asymmetry(m);
    if asymmetry > tol * frobenius(m).max(1.0) {
        return Err(OperatorError::NotHermitian { asymmetry });
    }
    let (pass, min_eigenvalue, threshold) = psd_verdict(m, tol);
    Ok(BlockCheck { pass, min_eigenvalue, threshold })
}

/// PSD verdict for the dilation block matrix; a failure exhibits a
/// certificate that no unitary power dilation of `A` can satisfy.
pub fn dilation_block_check(
    a: &OperatorTuple,
    sys: &OperatorCoefficientSystem<ZkIndex>,
    tol: f64,
) -> Result<BlockCheck, OperatorError> {
    verdict(&dilation_block_matrix(a, sys)?, tol)
}

/// PSD verdict for the subnormality block matrix of `S`.
pub fn subnormal_block_check(
    s: &CMatrix,
    sys: &OperatorCoefficientSystem<MonomialIndex>,
    tol: f64,
) -> Result<BlockCheck, OperatorError> {
    verdict(&subnormal_block_matrix(s, sys)?, tol)
}

/// The two-block system whose dilation matrix is `[[I, A_r*], [A_r, I]]`.
pub fn contraction_certificate(kappa: usize, r: usize) -> Result<OperatorCoefficientSystem<ZkIndex>, OperatorError> {
    if r == 0 || r > kappa {
        return Err(OperatorError::Coordinate { r, kappa });
    }
    let mut e = vec![0; kappa];
    e[r - 1] = 1;
    let e = ZkIndex(e);
    let one = Complex64::new(1.0, 0.0);
    let mut sys = OperatorCoefficientSystem::new(2);
    sys.add(ZkIndex::zero(kappa), 1, 1, one)?;
    sys.add(ZkIndex::zero(kappa), 2, 2, one)?;
    sys.add(e.star(), 2, 1, one)?;
    sys.add(e, 1, 2, one)?;
    Ok(sys)
}

/// Coefficients of `Σ_l q_{i,l} conj(q_{j,l})` for an `m × k` matrix of
/// analytic polynomials.
pub fn certificate_to_coefficients<K: StarIndex>(q: &[Vec<Poly<K>>]) -> Result<OperatorCoefficientSystem<K>, OperatorError> {
    let cols = q.first().map_or(0, Vec::len);
    if q.iter().any(|row| row.len() != cols) {
        return Err(OperatorError::RaggedCertificate);
    }
    for (r, row) in q.iter().enumerate() {
        if let Some(c) = row.iter().position(|p| !p.in_square_cone()) {
            return Err(OperatorError::EntryOutsideCone { row: r + 1, col: c + 1 });
        }
    }
    let mut sys = OperatorCoefficientSystem::new(q.len());
    for (i, qi) in q.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            let entry: Poly<K> = qi.iter().zip(qj).map(|(a, b)| a * &b.involution()).sum();
            for (alpha, c) in entry.iter() {
                sys.add(alpha.clone(), i + 1, j + 1, *c)?;
            }
        }
    }
    Ok(sys)
}

/// `a_{p,q}^{i,j} = δ_{p,j-1} δ_{q,i-1}` for `i, j = 1..=n+1`.
pub fn bram_system(n: usize) -> OperatorCoefficientSystem<MonomialIndex> {
    let mut sys = OperatorCoefficientSystem::new(n + 1);
    for i in 1..=n + 1 {
        for j in 1..=n + 1 {
            sys.add(MonomialIndex::new(j as i64 - 1, i as i64 - 1), i, j, Complex64::new(1.0, 0.0))
                .expect("indices are within 1..=n+1");
        }
    }
    sys
}
