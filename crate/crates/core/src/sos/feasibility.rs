//! Search for a PSD Gram matrix that expands to a given Hermitian target.
//!
//! The affine set `{G : expand(G) = target}` and the PSD cone are
//! intersected with Dykstra's alternating projections. A negative value of
//! the target at some point of `C_*` rules out membership, so a sampled
//! minimisation runs first and short-circuits with a witness.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::gram::GramCertificate;
use super::SosError;
use crate::algebra::{LaurentPoly, MonomialIndex, StarIndex};
use crate::linalg::{frobenius, hermitian_eigen, project_psd, CMatrix};
use crate::PSD_TOL;

#[derive(Clone, Debug)]
pub struct FeasibilityOptions {
    pub max_iter: usize,
    /// Relative PSD tolerance; the threshold is `psd_tol * max(1, ‖G‖_F)`.
    pub psd_tol: f64,
    /// Number of sample points for the negativity search.
    pub witness_samples: usize,
    pub seed: u64,
}

impl Default for FeasibilityOptions {
    fn default() -> Self {
        FeasibilityOptions { max_iter: 5000, psd_tol: PSD_TOL, witness_samples: 2000, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FeasibilityReport {
    Certificate {
        certificate: GramCertificate<MonomialIndex>,
        min_eigenvalue: f64,
        residual: f64,
        iterations: usize,
    },
    Infeasible {
        point: Complex64,
        value: f64,
    },
    Unknown {
        iterations: usize,
        residual: f64,
        min_eigenvalue: f64,
    },
}

impl FeasibilityReport {
    pub fn verdict(&self) -> &'static str {
        match self {
            FeasibilityReport::Certificate { .. } => "certificate",
            FeasibilityReport::Infeasible { .. } => "infeasible",
            FeasibilityReport::Unknown { .. } => "unknown",
        }
    }
}

struct AffineConstraints {
    groups: Vec<(Vec<(usize, usize)>, Complex64)>,
}

impl AffineConstraints {
    fn new(target: &LaurentPoly, basis: &[MonomialIndex]) -> Result<Self, SosError> {
        let mut cells: BTreeMap<MonomialIndex, Vec<(usize, usize)>> = BTreeMap::new();
        for (k, bk) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                cells.entry(bk.combine(&bj.star())).or_default().push((k, j));
            }
        }
        let uncovered: Vec<MonomialIndex> = target.support().filter(|e| !cells.contains_key(e)).copied().collect();
        if !uncovered.is_empty() {
            return Err(SosError::BasisCannotExpress { uncovered });
        }
        let groups = cells.into_iter().map(|(e, cells)| (cells, target.coeff(&e))).collect();
        Ok(AffineConstraints { groups })
    }

    fn project(&self, x: &CMatrix) -> CMatrix {
        let mut out = x.clone();
        for (cells, t) in &self.groups {
            let sum: Complex64 = cells.iter().map(|&c| x[c]).sum();
            let delta = (t - sum) / cells.len() as f64;
            for &c in cells {
                out[c] += delta;
            }
        }
        out
    }

    fn residual(&self, x: &CMatrix) -> f64 {
        self.groups
            .iter()
            .map(|(cells, t)| (cells.iter().map(|&c| x[c]).sum::<Complex64>() - t).norm())
            .fold(0.0, f64::max)
    }
}

/// Minimises `Re target(z)` over `C_*`: a jittered log-radial grid followed
/// by pattern search from the best samples.
fn negativity_search(target: &LaurentPoly, samples: usize, seed: u64) -> (Complex64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radial = ((samples as f64).sqrt() * 0.9).ceil().max(1.0) as usize;
    let angular = samples.div_ceil(radial).max(1);
    let value = |u: f64, t: f64| target.eval_real(Complex64::from_polar(10f64.powf(u), t));

    let mut candidates: Vec<(f64, f64, f64)> = Vec::with_capacity(radial * angular);
    for a in 0..radial {
        for b in 0..angular {
            let u = -2.0 + 4.0 * (a as f64 + rng.gen::<f64>()) / radial as f64;
            let t = std::f64::consts::TAU * (b as f64 + rng.gen::<f64>()) / angular as f64;
            candidates.push((value(u, t), u, t));
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut best = candidates[0];
    for &(v0, u0, t0) in candidates.iter().take(8) {
        let (mut v, mut u, mut t) = (v0, u0, t0);
        let mut step = 0.1;
        while step > 1e-10 {
            let mut improved = false;
            for (du, dt) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                let (nu, nt) = ((u + du).clamp(-6.0, 6.0), t + dt);
                let nv = value(nu, nt);
                if nv < v {
                    (v, u, t) = (nv, nu, nt);
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if v < best.0 {
            best = (v, u, t);
        }
    }
    (Complex64::from_polar(10f64.powf(best.1), best.2), best.0)
}

/// Decides membership of `target` in the cone `{v* G v : G ⪰ 0}` over the
/// given basis, returning a certificate, a negativity witness, or an honest
/// `Unknown` when neither is found within `max_iter` sweeps.
pub fn sos_feasibility(
    target: &LaurentPoly,
    basis: &[MonomialIndex],
    opts: &FeasibilityOptions,
) -> Result<FeasibilityReport, SosError> {
    let scale = target.conorm().max(1.0);
    if !target.is_hermitian(1e-12 * scale) {
        return Err(SosError::TargetNotHermitian);
    }
    let constraints = AffineConstraints::new(target, basis)?;

    let (point, value) = negativity_search(target, opts.witness_samples, opts.seed);
    if value < -1e-9 * scale {
        return Ok(FeasibilityReport::Infeasible { point, value });
    }

    let n = basis.len();
    let threshold = |g: &CMatrix| opts.psd_tol * frobenius(g).max(1.0);
    let accept = |g: CMatrix, iterations: usize| -> Option<FeasibilityReport> {
        let min = hermitian_eigen(&g).min();
        if min >= -threshold(&g) {
            let residual = constraints.residual(&g);
            let certificate = GramCertificate::new(basis.to_vec(), crate::linalg::hermitian_part(&g)).ok()?;
            Some(FeasibilityReport::Certificate { certificate, min_eigenvalue: min, residual, iterations })
        } else {
            None
        }
    };

    let mut x = constraints.project(&CMatrix::zeros(n, n));
    if let Some(found) = accept(x.clone(), 0) {
        return Ok(found);
    }
    let mut p = CMatrix::zeros(n, n);
    let mut q = CMatrix::zeros(n, n);
    let mut residual = f64::INFINITY;
    let mut min_eigenvalue = f64::NEG_INFINITY;
    for it in 1..=opts.max_iter {
        let y = constraints.project(&(&x + &p));
        p = &x + &p - &y;
        let (projected, eig) = project_psd(&(&y + &q));
        q = &y + &q - &projected;
        x = projected;
        residual = constraints.residual(&x);
        min_eigenvalue = eig.min();
        if let Some(found) = accept(constraints.project(&x), it) {
            return Ok(found);
        }
    }
    Ok(FeasibilityReport::Unknown { iterations: opts.max_iter, residual, min_eigenvalue })
}
